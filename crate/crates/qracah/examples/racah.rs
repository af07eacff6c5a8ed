//! The Racah family on ρ + Λ_N and its orthogonal matrix.

use qracah::params::RacahParams;
use qracah::polynomials::racah::eigen_residual;
use qracah::transform::build_k_racah;
use qracah::RacahSystem;

fn main() -> qracah::Result<()> {
    let rp = RacahParams::truncated(2, 3, 0.4, 0.3, 0.15, 0.2)?;
    println!("g_b = {}", rp.by_role().b);
    let sys = RacahSystem::build(&rp)?;
    for (poly, norm) in sys.family.polys.iter().zip(&sys.family.norms).take(4) {
        let terms: Vec<String> = poly.terms().map(|(mu, c)| format!("{:+.6} m̃_{mu}", c.re)).collect();
        println!("p̃_{} = {}   <p̃,p̃> = {:.6e}", poly.leading(), terms.join(" "), norm.re);
    }
    println!("eigen residual {:.2e}", eigen_residual(&sys.family, &rp)?);
    // Some weights are negative here, so the square roots are complex.
    println!("|K̃ᵀK̃ - I|_F = {:.2e}", build_k_racah(&sys).orthogonality_residual());
    println!("duality residual {:.2e}", sys.duality_residual());
    Ok(())
}
