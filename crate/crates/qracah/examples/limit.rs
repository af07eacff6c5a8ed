//! q -> 1: rescaled q-Racah polynomials approach the Racah family.

use qracah::params::RacahParams;
use qracah::polynomials::limit::{closed_form_deviation, limit_check};

fn main() -> qracah::Result<()> {
    let rp = RacahParams::truncated(2, 3, 0.4, 0.3, 0.15, 0.2)?;
    let steps = [1e-1, 5e-2, 2.5e-2, 1.25e-2];
    let report = limit_check(&rp, &steps, 3)?;
    for (w, d) in &report.deviations {
        let cells: Vec<String> = d.iter().map(|x| format!("{x:.3e}")).collect();
        println!("{:>6}  {}", w.to_string(), cells.join("  "));
    }
    println!("monotone: {}", report.monotone());

    let single = RacahParams::truncated(1, 3, 0.0, 0.3, 0.15, 0.2)?;
    for lambda in 1..=3 {
        let (dev, scale) = closed_form_deviation(lambda, &single, 1e-3)?;
        println!("n = 1, λ = {lambda}: {:.3e} relative at ε = 1e-3", dev / scale);
    }
    Ok(())
}
