//! Construction through the analytic operator: interpolate its matrix on
//! the dominated span, then apply the spectral projector onto `λ`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{eval_monomial, Basis, SymPoly};
use crate::linalg::{condition_number, max_abs, solve, CMatrix};
use crate::operators::{eigenvalue, v_coeff};
use crate::params::ParamSet;
use crate::weights::{dominated, dominated_span, Weight};
use crate::{Error, Result};

const MAX_ATTEMPTS: usize = 20;
const MAX_CONDITION: f64 = 1e8;
const MARGIN: f64 = 1e-3;

/// Matrix of the analytic operator on `span{m_μ : μ ≤ λ}`.
#[derive(Clone, Debug)]
pub struct SpanOperator {
    pub span: Vec<Weight>,
    /// `matrix[(κ, μ)]` is the coefficient of `m_κ` in `D m_μ`.
    pub matrix: CMatrix,
    pub condition: f64,
    pub attempts: usize,
}

impl SpanOperator {
    /// Largest `|E_μ - matrix[(μ, μ)]| / max(|E_μ|, 1)`.
    pub fn diagonal_residual(&self, p: &ParamSet) -> f64 {
        self.span
            .iter()
            .enumerate()
            .map(|(i, mu)| {
                let e = eigenvalue(mu, p);
                (self.matrix[(i, i)] - e).norm() / e.norm().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry at `(κ, μ)` with `κ` not dominated by `μ`, relative to
    /// the largest entry.
    pub fn triangularity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (m, mu) in self.span.iter().enumerate() {
            for (k, kappa) in self.span.iter().enumerate() {
                if !dominated(kappa, mu) {
                    worst = worst.max(self.matrix[(k, m)].norm());
                }
            }
        }
        worst / max_abs(&self.matrix).max(f64::MIN_POSITIVE)
    }
}

/// `(D f)(z) = Σ_{j,ε} V_{εj}(z) (f(T_{j,q}^ε z) - f(z))` for `f = m_μ`.
pub fn apply_analytic_d(mu: &Weight, z: &[C], p: &ParamSet) -> Result<C> {
    let q = p.q();
    let base = eval_monomial(mu, z)?;
    let mut total = C::new(0.0, 0.0);
    for j in 0..z.len() {
        for eps in [1, -1] {
            let mut shifted = z.to_vec();
            shifted[j] *= q.powi(eps);
            total += v_coeff(eps, j, z, p)? * (eval_monomial(mu, &shifted)? - base);
        }
    }
    Ok(total)
}

fn near(a: C, b: C) -> bool {
    (a - b).norm() < MARGIN
}

fn acceptable(z: &[C], q: C) -> bool {
    let one = C::new(1.0, 0.0);
    for (j, &zj) in z.iter().enumerate() {
        let sq = zj * zj;
        if near(sq, one) || near(sq * q, one) || near(sq, q) {
            return false;
        }
        for &zk in &z[j + 1..] {
            if near(zj * zk, one) || near(zj / zk, one) {
                return false;
            }
        }
    }
    true
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize, q: C) -> Vec<C> {
    loop {
        let z: Vec<C> =
            (0..n).map(|_| C::from_polar(rng.random_range(0.6..1.4), rng.random_range(0.0..TAU))).collect();
        if acceptable(&z, q) {
            return z;
        }
    }
}

/// Interpolates the operator matrix on the span dominated by `λ` from
/// values at random sample points.
pub fn operator_matrix_on_span(lambda: &Weight, p: &ParamSet, seed: u64) -> Result<SpanOperator> {
    if lambda.len() != p.rank() {
        return Err(Error::InvalidInput(format!("{lambda} has the wrong rank")));
    }
    let span = dominated_span(lambda);
    let d = span.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = f64::INFINITY;
    for attempt in 1..=MAX_ATTEMPTS {
        let points: Vec<Vec<C>> = (0..d).map(|_| sample_point(&mut rng, p.rank(), p.q())).collect();
        let a = CMatrix::from_fn(d, d, |i, k| eval_monomial(&span[k], &points[i]).unwrap_or_default());
        let condition = condition_number(&a);
        last = condition;
        if condition >= MAX_CONDITION {
            continue;
        }
        let mut b = CMatrix::zeros(d, d);
        for (i, z) in points.iter().enumerate() {
            for (k, mu) in span.iter().enumerate() {
                b[(i, k)] = apply_analytic_d(mu, z, p)?;
            }
        }
        let matrix = solve(&a, &b)?;
        return Ok(SpanOperator { span, matrix, condition, attempts: attempt });
    }
    Err(Error::DegenerateSampling { attempts: MAX_ATTEMPTS, condition: last })
}

/// `p_λ = ∏_{μ<λ} (D - E_μ)/(E_λ - E_μ) m_λ`.
pub fn build_p_macdonald(lambda: &Weight, p: &ParamSet, seed: u64) -> Result<(SymPoly, SpanOperator)> {
    let op = operator_matrix_on_span(lambda, p, seed)?;
    let d = op.span.len();
    let top = op.span.iter().position(|mu| mu == lambda).expect("λ lies in its own span");
    let e_lambda = eigenvalue(lambda, p);
    let mut v = CMatrix::zeros(d, 1);
    v[(top, 0)] = C::new(1.0, 0.0);
    for mu in op.span.iter().filter(|mu| *mu != lambda) {
        let e_mu = eigenvalue(mu, p);
        let gap = e_lambda - e_mu;
        if gap.norm() <= 1e-12 * e_lambda.norm().max(e_mu.norm()).max(1.0) {
            return Err(Error::NonGeneric(format!("eigenvalues of {lambda} and {mu} coincide")));
        }
        v = (&op.matrix * &v - v * e_mu) / gap;
    }
    let coeffs: BTreeMap<Weight, C> = op.span.iter().cloned().zip(v.iter().copied()).collect();
    Ok((SymPoly::from_coeffs(Basis::Laurent, lambda.clone(), coeffs)?, op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{RoleQuad, Roles, TrigSource};
    use std::f64::consts::PI;

    fn config_a() -> ParamSet {
        let src = TrigSource { alpha: PI / 5.2, coupling: 0.3, exponents: RoleQuad::new(0.5, 0.4, 0.2, 0.1) };
        ParamSet::from_trig(src, 2, 4, Roles::default()).unwrap()
    }

    #[test]
    fn zero_weight_gives_zero_matrix() {
        let op = operator_matrix_on_span(&Weight::zero(2), &config_a(), 7).unwrap();
        assert_eq!(op.span.len(), 1);
        assert!(op.matrix[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn recovered_diagonal_is_the_eigenvalue() {
        let p = config_a();
        let op = operator_matrix_on_span(&Weight::new(vec![2, 1]).unwrap(), &p, 3).unwrap();
        assert!(op.diagonal_residual(&p) < 1e-9);
        assert!(op.triangularity_residual() < 1e-8);
    }

    #[test]
    fn sampling_is_reproducible() {
        let p = config_a();
        let lam = Weight::new(vec![1, 1]).unwrap();
        let a = build_p_macdonald(&lam, &p, 11).unwrap().0;
        let b = build_p_macdonald(&lam, &p, 11).unwrap().0;
        assert_eq!(a, b);
    }
}
