//! The orthogonal kernel and the transform pair, on the self-dual config.

use num_complex::Complex64 as C;
use qracah::params::{ParamSet, RoleQuad};
use qracah::transform::{build_k, diagonalization_report, forward, inverse, round_trip_residual};
use qracah::System;

fn main() -> qracah::Result<()> {
    let p = ParamSet::truncated_trig(0.3, RoleQuad::new(0.7, 0.4, 0.2, 0.1), 2, 4)?;
    println!("self-dual: {}", p.is_self_dual());
    let sys = System::build(&p)?;

    let k = build_k(&sys);
    println!("|KᵀK - I|_F = {:.2e}", k.orthogonality_residual());
    println!("|K - Kᵀ|_F  = {:.2e}", k.asymmetry());

    let (fwd, inv) = (forward(&sys), inverse(&sys));
    println!("|𝒦̂𝒦 - I|_F = {:.2e}", round_trip_residual(&fwd, &inv));

    let mut f = vec![C::new(0.0, 0.0); sys.table.len()];
    f[0] = C::new(1.0, 0.0);
    let fhat = fwd.apply(&f)?;
    let back = inv.apply(&fhat)?;
    println!("indicator of ν = 0 -> {:?}", fhat.iter().take(4).map(|z| format!("{:.6}", z.re)).collect::<Vec<_>>());
    println!("round trip error {:.2e}", back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));

    for r in 1..=2 {
        let [a, b] = diagonalization_report(&sys, r)?;
        println!("D_{r}: {a:.2e} (primal), {b:.2e} (dual)");
    }
    Ok(())
}
