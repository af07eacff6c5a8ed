//! The `q -> 1` degeneration, checked numerically.
//!
//! With `q = e^{-ε}`, `t = q^g`, `t_r = q^{g_r}`, the rescaled polynomials
//! `(1-q)^{-2|λ|} p_λ(q^x)` tend to the Racah family at `x ∈ ρ + Λ_N`.
//! On the grid this is computed by Gram-Schmidt in the basis
//! `Σ_{S_n} ∏_j ((z_j + z_j^{-1} - 2)/(1-q)²)^{μ_j}`, which is unitriangular
//! against `m_μ` and carries the rescaling exactly.

use std::collections::BTreeMap;

use num_complex::Complex64 as C;

use super::orthogonalize;
use super::racah::build_racah_family;
use crate::cfunctions::{delta, WeightTable};
use crate::params::RacahParams;
use crate::special::{f43_monic_wilson, phi43_monic_aw};
use crate::weights::{permutation_orbit, Alcove, Weight};
use crate::{Error, GridFunction, Result};

/// Deviations per weight and step size.
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub epsilons: Vec<f64>,
    /// `deviations[λ][k]`: max over the grid of `|scaled - p̃_λ|`, relative
    /// to `max |p̃_λ|`, at `epsilons[k]`.
    pub deviations: BTreeMap<Weight, Vec<f64>>,
}

impl LimitReport {
    /// True when every sequence is non-increasing and strictly decreasing
    /// wherever it is nonzero.
    pub fn monotone(&self) -> bool {
        self.deviations.values().all(|d| d.windows(2).all(|w| w[1] < w[0] || (w[0] == 0.0 && w[1] == 0.0)))
    }

    pub fn worst_at(&self, k: usize) -> f64 {
        self.deviations.values().map(|d| d[k]).fold(0.0, f64::max)
    }
}

fn scaled_values(rp: &RacahParams, alcove: &Alcove, eps: f64) -> Result<Vec<GridFunction>> {
    let p = rp.lift(C::new(-eps, 0.0))?;
    let q = p.q();
    let weights: Vec<C> = alcove.weights().iter().map(|nu| delta(nu, &p)).collect::<Result<_>>()?;
    let grid: Vec<Vec<C>> = alcove.weights().iter().map(|nu| p.grid_point(nu)).collect();
    let scale = (C::new(1.0, 0.0) - q).powi(2);
    let basis: Vec<GridFunction> = alcove
        .weights()
        .iter()
        .map(|mu| {
            let orbit = permutation_orbit(mu);
            grid.iter()
                .map(|z| {
                    let y: Vec<C> = z.iter().map(|x| (x + x.inv() - 2.0) / scale).collect();
                    orbit.iter().map(|v| y.iter().zip(v).map(|(b, &e)| b.powu(e)).product::<C>()).sum()
                })
                .collect()
        })
        .collect();
    Ok(orthogonalize(alcove, basis, &weights)?.values)
}

/// Compares the rescaled q-family against the Racah family for every
/// `λ` with `|λ| <= max_size` at each step size.
pub fn limit_check(rp: &RacahParams, epsilons: &[f64], max_size: u32) -> Result<LimitReport> {
    let table = WeightTable::build_racah(rp)?;
    let racah = build_racah_family(rp, &table)?;
    let alcove = &table.alcove;
    let mut deviations: BTreeMap<Weight, Vec<f64>> = BTreeMap::new();
    for &eps in epsilons {
        if eps <= 0.0 {
            return Err(Error::InvalidInput(format!("step size {eps} must be positive")));
        }
        let scaled = scaled_values(rp, alcove, eps)?;
        for ((lambda, a), b) in alcove.weights().iter().zip(&scaled).zip(&racah.values) {
            if lambda.size() > max_size {
                continue;
            }
            let top = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let dev = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / top;
            deviations.entry(lambda.clone()).or_default().push(dev);
        }
    }
    Ok(LimitReport { epsilons: epsilons.to_vec(), deviations })
}

/// One-variable comparison of the rescaled Askey-Wilson closed form with
/// the Wilson closed form on `g_a + ν`. Returns `(deviation, scale)`.
pub fn closed_form_deviation(lambda: u32, rp: &RacahParams, eps: f64) -> Result<(f64, f64)> {
    if rp.rank() != 1 {
        return Err(Error::InvalidInput("the closed-form route needs n = 1".into()));
    }
    let p = rp.lift(C::new(-eps, 0.0))?;
    let q = p.q();
    let rescale = (C::new(1.0, 0.0) - q).powi(-2 * lambda as i32);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for nu in 0..=rp.level() {
        let x = rp.by_role().a + f64::from(nu);
        let z = (C::new(-eps, 0.0) * x).exp();
        let lifted = rescale * phi43_monic_aw(lambda, z, &p)?;
        let wilson = f43_monic_wilson(lambda, C::new(x, 0.0), rp)?;
        worst = worst.max((lifted - wilson).norm());
        scale = scale.max(wilson.norm());
    }
    Ok((worst, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_no_deviation() {
        let rp = RacahParams::truncated(2, 3, 0.4, 0.3, 0.15, 0.2).unwrap();
        let report = limit_check(&rp, &[0.1, 0.05], 1).unwrap();
        assert_eq!(report.deviations[&Weight::zero(2)], vec![0.0, 0.0]);
        assert!(report.monotone());
    }

    #[test]
    fn closed_forms_converge() {
        let rp = RacahParams::truncated(1, 3, 0.0, 0.3, 0.15, 0.2).unwrap();
        let (coarse, _) = closed_form_deviation(1, &rp, 0.1).unwrap();
        let (fine, scale) = closed_form_deviation(1, &rp, 1e-3).unwrap();
        assert!(fine < coarse);
        assert!(fine < 1e-2 * scale);
    }
}
