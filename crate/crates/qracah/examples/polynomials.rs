//! Two constructions of the same polynomial: Gram-Schmidt on the grid and
//! the spectral projector of the analytic operator.

use qracah::params::{ParamSet, RoleQuad};
use qracah::polynomials::macdonald::build_p_macdonald;
use qracah::weights::Weight;
use qracah::System;

fn main() -> qracah::Result<()> {
    let p = ParamSet::truncated_trig(0.3, RoleQuad::new(0.5, 0.4, 0.2, 0.1), 2, 4)?;
    let sys = System::build(&p)?;
    let lambda = Weight::new(vec![2, 1])?;
    let i = sys.table.alcove.index_of(&lambda).unwrap();

    let (mac, op) = build_p_macdonald(&lambda, &p, 1)?;
    println!("p_{lambda} (interpolation condition {:.2e}, {} attempt(s))", op.condition, op.attempts);
    for (mu, c) in sys.family.polys[i].terms() {
        println!("  m_{mu}: grid {:+.12e}{:+.12e}i  operator {:+.12e}{:+.12e}i", c.re, c.im, mac.coeff(mu).re, mac.coeff(mu).im);
    }

    // Outside the alcove the polynomial vanishes on the whole grid.
    let outside = Weight::new(vec![5, 0])?;
    let (q, _) = build_p_macdonald(&outside, &p, 2)?;
    let worst = sys.family.grid.iter().map(|z| q.eval(z).map(|v| v.norm())).collect::<qracah::Result<Vec<_>>>()?;
    println!("max |p_{outside}| on the grid: {:.2e}", worst.into_iter().fold(0.0, f64::max));
    println!("max |P(τ) - 1| = {:.2e}, duality residual {:.2e}", sys.origin_residual(), sys.duality_residual());
    Ok(())
}
