//! Discrete weights, dual weights and norm ratios for config A.

use qracah::cfunctions::WeightTable;
use qracah::params::{ParamSet, RoleQuad};

fn main() -> qracah::Result<()> {
    let p = ParamSet::truncated_trig(0.3, RoleQuad::new(0.5, 0.4, 0.2, 0.1), 2, 4)?;
    println!("alpha = {:.15}, truncation residual {:.1e}", p.trig().unwrap().alpha, p.truncation_residual());
    println!("positivity domain: {}", p.in_positivity_domain()?);

    let table = WeightTable::build(&p)?;
    println!("{:>8} {:>22} {:>22} {:>22}", "weight", "delta", "dual delta", "norm ratio");
    for (i, w) in table.alcove.weights().iter().enumerate() {
        println!(
            "{:>8} {:>22.15e} {:>22.15e} {:>22.15e}",
            w.to_string(),
            table.delta[i].re,
            table.delta_hat[i].re,
            table.norm_ratio[i].re
        );
    }
    println!("<1,1> = {:.15e}", table.one_one.re);
    Ok(())
}
