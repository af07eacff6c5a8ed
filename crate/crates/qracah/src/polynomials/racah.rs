//! The Racah family on the grid `ρ + Λ_N`.

use num_complex::Complex64 as C;

use super::{Basis, Family};
use crate::cfunctions::WeightTable;
use crate::operators::racah::{apply_racah_d, racah_eigenvalue};
use crate::params::RacahParams;
use crate::Result;

/// Gram-Schmidt in the even-square monomials against the Racah weights.
pub fn build_racah_family(rp: &RacahParams, table: &WeightTable) -> Result<Family> {
    rp.require_truncated()?;
    let grid = table.alcove.weights().iter().map(|nu| rp.grid_point(nu)).collect();
    Family::from_grid(table.alcove.clone(), grid, Basis::EvenSquare, &table.delta)
}

/// Largest `|D̃ p̃_λ - Ẽ_λ p̃_λ|` over the grid, relative to
/// `max(|Ẽ_λ|, 1) ‖p̃_λ‖_∞`.
pub fn eigen_residual(family: &Family, rp: &RacahParams) -> Result<f64> {
    let mut worst = 0.0f64;
    for (lambda, values) in family.alcove.weights().iter().zip(&family.values) {
        let e = racah_eigenvalue(lambda, rp);
        let applied = apply_racah_d(values, rp)?;
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max) * e.abs().max(1.0);
        let res = applied.iter().zip(values).map(|(a, v)| (a - v * e).norm()).fold(0.0, f64::max);
        worst = worst.max(res / scale);
    }
    Ok(worst)
}

/// `P̃_λ = Ĉ₊^R(λ) p̃_λ` on the grid.
pub fn renormalized_values(family: &Family, chat_plus: &[C]) -> Vec<Vec<C>> {
    family.values.iter().zip(chat_plus).map(|(v, s)| v.iter().map(|x| x * s).collect()).collect()
}
