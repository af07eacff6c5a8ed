//! Difference operators on the grid: symmetry, the flip identity, and the
//! Pieri expansion of the renormalized family.

use qracah::operators::pieri::norm_recurrence_residual;
use qracah::operators::{boundary_vanishing, flip_residual, PieriContext};
use qracah::params::{ParamSet, RoleQuad};
use qracah::polynomials::inner_product;
use qracah::weights::Weight;
use qracah::System;

fn main() -> qracah::Result<()> {
    let p = ParamSet::truncated_trig(0.25, RoleQuad::new(0.6, 0.5, 0.3, 0.2), 3, 3)?;
    let sys = System::build(&p)?;

    let (worst, scale) = boundary_vanishing(&p)?;
    println!("coefficients leaving the alcove: {:.2e} relative", worst / scale);
    let (r, s) = flip_residual(&Weight::new(vec![1, 0, 0])?, 0, 1, &p)?;
    println!("flip identity at (1,0,0): {:.2e} relative", r.norm() / s);

    let ctx = PieriContext::new(&p);
    for r in 1..=3 {
        let m = ctx.coefficient_matrix_trig(r)?;
        let (res, scale) = ctx.residual(r, &m, &sys.big_p.values)?;
        println!("Pieri r = {r}: {:.2e}", res / scale);
    }

    let norms: Vec<_> = sys.big_p.values.iter().map(|v| inner_product(v, v, &sys.table.delta)).collect::<qracah::Result<_>>()?;
    println!("<P,P> Δ̂ = <1,1> across the alcove: {:.2e}", norm_recurrence_residual(&norms, &sys.table.delta_hat, sys.table.one_one));
    Ok(())
}
