//! Pieri coefficients on the dual grid and the norm recurrence.
//!
//! The dual kernels carry a `t^{-1/2}` per `v̂` factor. Every coefficient
//! contains an even number of them, so the factors are collected and applied
//! as an integer power of `t`.

use itertools::Itertools;
use num_complex::Complex64 as C;

use super::guarded_ratio;
use super::trig::{dr_matrix, shift_of, sign_patterns, signed_subsets};
use crate::linalg::CMatrix;
use crate::params::{DualView, ParamSet};
use crate::weights::{Alcove, Weight};
use crate::{Error, GridFunction, Result};

const ONE: C = C { re: 1.0, im: 0.0 };

/// Pieri data for one parameter set.
#[derive(Clone, Debug)]
pub struct PieriContext {
    params: ParamSet,
    view: DualView,
    alcove: Alcove,
}

/// `ζ_j = τ̂_j q^{λ_j}` and its powers, built from rational combinations.
struct DualPoint<'a> {
    view: &'a DualView,
    q: C,
    lambda: Vec<i32>,
}

impl DualPoint<'_> {
    /// `ζ_j^{e_j} ζ_k^{e_k}`.
    fn pair(&self, j: usize, ej: i32, k: usize, ek: i32) -> C {
        let base = match (ej > 0, ek > 0) {
            (true, true) => self.view.origin_products[j][k],
            (false, false) => self.view.origin_products[j][k].inv(),
            (true, false) => self.view.origin_ratios[j][k],
            (false, true) => self.view.origin_ratios[k][j],
        };
        base * self.q.powi(ej * self.lambda[j] + ek * self.lambda[k])
    }

    /// `ζ_j^{2e}`.
    fn square(&self, j: usize, e: i32) -> C {
        self.view.origin_squares[j].powi(e) * self.q.powi(2 * e * self.lambda[j])
    }

    /// `t̂_r ζ_j^{e}` for role `r`.
    fn boundary(&self, role: usize, j: usize, e: i32) -> C {
        if e > 0 {
            self.view.boundary_times_origin[role][j] * self.q.powi(self.lambda[j])
        } else {
            self.q / self.view.shifted_origin_over_boundary[role][j] * self.q.powi(-self.lambda[j])
        }
    }
}

/// Accumulates a product of `v̂` and `ŵ` factors.
struct Coefficient<'a> {
    ctx: &'a PieriContext,
    value: C,
    half_powers: i32,
}

impl<'a> Coefficient<'a> {
    fn new(ctx: &'a PieriContext) -> Self {
        Coefficient { ctx, value: ONE, half_powers: 0 }
    }

    fn v_hat(&mut self, zeta: C) -> Result<()> {
        let t = self.ctx.params.t();
        self.value *= guarded_ratio(&[ONE - t * zeta], &[ONE - zeta], "dual v kernel")?;
        self.half_powers += 1;
        Ok(())
    }

    fn w_hat(&mut self, pt: &DualPoint, j: usize, e: i32) -> Result<()> {
        let q = self.ctx.params.q();
        let num: Vec<C> = (0..4).map(|r| ONE - pt.boundary(r, j, e)).collect();
        let sq = pt.square(j, e);
        let den = [ONE - sq, ONE - q * sq];
        self.value *= guarded_ratio(&num, &den, "dual w kernel")? / self.ctx.params.by_role().a;
        Ok(())
    }

    fn finish(self) -> C {
        debug_assert!(self.half_powers % 2 == 0);
        self.value * self.ctx.params.t().powi(-self.half_powers / 2)
    }
}

impl PieriContext {
    pub fn new(p: &ParamSet) -> Self {
        PieriContext { params: p.clone(), view: p.dual_view(), alcove: Alcove::new(p.rank(), p.level()) }
    }

    pub fn alcove(&self) -> &Alcove {
        &self.alcove
    }

    fn point(&self, lambda: &Weight) -> DualPoint<'_> {
        DualPoint { view: &self.view, q: self.params.q(), lambda: lambda.parts().iter().map(|&x| x as i32).collect() }
    }

    /// `V̂_{εJ,K}(τ̂ q^λ)`.
    pub fn shift_coefficient(&self, lambda: &Weight, signed: &[(usize, i32)], rest: &[usize]) -> Result<C> {
        let pt = self.point(lambda);
        let q = self.params.q();
        let mut c = Coefficient::new(self);
        for (a, &(j, ej)) in signed.iter().enumerate() {
            c.w_hat(&pt, j, ej)?;
            for &(k, ek) in &signed[a + 1..] {
                let z = pt.pair(j, ej, k, ek);
                c.v_hat(z)?;
                c.v_hat(q * z)?;
            }
            for &k in rest {
                c.v_hat(pt.pair(j, ej, k, 1))?;
                c.v_hat(pt.pair(j, ej, k, -1))?;
            }
        }
        Ok(c.finish())
    }

    /// `Û_{K,p}(τ̂ q^λ)`, with `Û_{K,0} = 1`.
    pub fn stay_coefficient(&self, lambda: &Weight, set: &[usize], p: usize) -> Result<C> {
        if p == 0 {
            return Ok(ONE);
        }
        let pt = self.point(lambda);
        let q = self.params.q();
        let mut total = C::new(0.0, 0.0);
        for chosen in set.iter().copied().combinations(p) {
            let rest: Vec<usize> = set.iter().copied().filter(|k| !chosen.contains(k)).collect();
            for signs in sign_patterns(p) {
                let mut c = Coefficient::new(self);
                for (a, &l) in chosen.iter().enumerate() {
                    let el = signs[a];
                    c.w_hat(&pt, l, el)?;
                    for (b, &k) in chosen.iter().enumerate().skip(a + 1) {
                        c.v_hat(pt.pair(l, el, k, signs[b]))?;
                        c.v_hat(pt.pair(l, -el, k, -signs[b]) / q)?;
                    }
                    for &k in &rest {
                        c.v_hat(pt.pair(l, el, k, 1))?;
                        c.v_hat(pt.pair(l, el, k, -1))?;
                    }
                }
                total += c.finish();
            }
        }
        Ok(if p % 2 == 0 { total } else { -total })
    }

    /// Pieri coefficients from the rational dual kernels:
    /// `E_r P_λ = Σ_λ' M[λ][λ'] P_λ'` on the grid.
    pub fn coefficient_matrix(&self, r: usize) -> Result<CMatrix> {
        let n = self.params.rank();
        if r == 0 || r > n {
            return Err(Error::InvalidInput(format!("Pieri index r = {r} must lie in 1..={n}")));
        }
        let mut m = CMatrix::zeros(self.alcove.len(), self.alcove.len());
        for (i, lambda) in self.alcove.weights().iter().enumerate() {
            for (signed, rest) in signed_subsets(n, r) {
                let Some(k) = self.alcove.shift_index(lambda, &shift_of(n, &signed)) else { continue };
                let v = self.shift_coefficient(lambda, &signed, &rest)?;
                if v.norm() == 0.0 {
                    continue;
                }
                m[(i, k)] += self.stay_coefficient(lambda, &rest, r - signed.len())? * v;
            }
        }
        Ok(m)
    }

    /// The same coefficients from the trigonometric kernels of the dual
    /// parameters.
    pub fn coefficient_matrix_trig(&self, r: usize) -> Result<CMatrix> {
        let src = self
            .params
            .trig()
            .ok_or_else(|| Error::Unsupported("trigonometric Pieri coefficients need a trig source".into()))?;
        dr_matrix(r, &src.dual(), self.params.rank(), self.params.level())
    }

    /// `E_r(z; τ)`.
    pub fn generator(&self, r: usize, z: &[C]) -> C {
        let n = z.len();
        let tau = &self.view.origin;
        let at: Vec<C> = z.iter().map(|x| x + x.inv()).collect();
        let origin: Vec<C> = tau.iter().map(|x| x + x.inv()).collect();
        let mut total = C::new(0.0, 0.0);
        for size in 0..=r.min(n) {
            let m = r - size;
            let tail: C = if m == 0 {
                ONE
            } else {
                (r - 1..n).combinations_with_replacement(m).map(|ls| ls.iter().map(|&l| origin[l]).product::<C>()).sum()
            };
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for set in (0..n).combinations(size) {
                total += set.iter().map(|&j| at[j]).product::<C>() * tail * sign;
            }
        }
        total
    }

    /// `max_{λ,ν} |E_r(τq^ν) P_λ(τq^ν) - Σ_λ' M[λ][λ'] P_λ'(τq^ν)|` and the
    /// largest term magnitude.
    pub fn residual(&self, r: usize, coeffs: &CMatrix, values: &[GridFunction]) -> Result<(f64, f64)> {
        let (mut worst, mut scale) = (0.0f64, 0.0f64);
        let generators: Vec<C> =
            self.alcove.weights().iter().map(|nu| self.generator(r, &self.params.grid_point(nu))).collect();
        for (i, row) in values.iter().enumerate() {
            for (v, &e) in generators.iter().enumerate() {
                let lhs = e * row[v];
                let mut rhs = C::new(0.0, 0.0);
                for k in 0..values.len() {
                    let term = coeffs[(i, k)] * values[k][v];
                    scale = scale.max(term.norm());
                    rhs += term;
                }
                scale = scale.max(lhs.norm());
                worst = worst.max((lhs - rhs).norm());
            }
        }
        Ok((worst, scale))
    }

    fn raise_pair(&self, lambda: &Weight, r: usize) -> Result<(Weight, C, C)> {
        let n = self.params.rank();
        let raised = lambda.add(&Weight::fundamental(n, r));
        let rest: Vec<usize> = (r..n).collect();
        let up: Vec<(usize, i32)> = (0..r).map(|j| (j, 1)).collect();
        let down: Vec<(usize, i32)> = (0..r).map(|j| (j, -1)).collect();
        let v_up = self.shift_coefficient(lambda, &up, &rest)?;
        let v_down = self.shift_coefficient(&raised, &down, &rest)?;
        Ok((raised, v_up, v_down))
    }

    /// Relative residuals of
    /// `Ĉ₊(λ)/Ĉ₊(λ+ω_r) = V̂_{+}(τ̂q^λ)` and
    /// `Ĉ₋(λ+ω_r)/Ĉ₋(λ) = V̂_{-}(τ̂q^{λ+ω_r})`.
    pub fn raise_residuals(&self, lambda: &Weight, r: usize, chat_plus: &[C], chat_minus: &[C]) -> Result<[f64; 2]> {
        let (raised, v_up, v_down) = self.raise_pair(lambda, r)?;
        let (i, k) = self.indices(lambda, &raised)?;
        let plus = chat_plus[i] / chat_plus[k];
        let minus = chat_minus[k] / chat_minus[i];
        Ok([(plus - v_up).norm() / plus.norm(), (minus - v_down).norm() / minus.norm()])
    }

    /// Relative residual of
    /// `V̂_{+}(τ̂q^λ) ⟨P_{λ+ω},P_{λ+ω}⟩ = V̂_{-}(τ̂q^{λ+ω}) ⟨P_λ,P_λ⟩`.
    pub fn raised_norm_residual(&self, lambda: &Weight, r: usize, norms: &[C]) -> Result<f64> {
        let (raised, v_up, v_down) = self.raise_pair(lambda, r)?;
        let (i, k) = self.indices(lambda, &raised)?;
        let lhs = v_up * norms[k];
        let rhs = v_down * norms[i];
        Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()))
    }

    fn indices(&self, lambda: &Weight, raised: &Weight) -> Result<(usize, usize)> {
        let i = self.alcove.index_of(lambda).ok_or_else(|| Error::InvalidInput(format!("{lambda} not in the alcove")))?;
        let k = self.alcove.index_of(raised).ok_or_else(|| Error::InvalidInput(format!("{raised} not in the alcove")))?;
        Ok((i, k))
    }
}

/// `max_λ |⟨P_λ,P_λ⟩ Δ̂(λ) - ⟨1,1⟩| / |⟨1,1⟩|`.
pub fn norm_recurrence_residual(norms: &[C], delta_hat: &[C], one_one: C) -> f64 {
    norms.iter().zip(delta_hat).map(|(n, d)| (n * d - one_one).norm() / one_one.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{RoleQuad, Roles, TrigSource};
    use crate::system::System;
    use std::f64::consts::PI;

    fn params(alpha: f64, g: f64, e: [f64; 4], n: usize, big_n: u32) -> ParamSet {
        let src = TrigSource { alpha, coupling: g, exponents: RoleQuad::from_array(e) };
        ParamSet::from_trig(src, n, big_n, Roles::default()).unwrap()
    }

    #[test]
    fn first_generator_is_a_shifted_sum() {
        let p = params(PI / 5.2, 0.3, [0.5, 0.4, 0.2, 0.1], 2, 4);
        let ctx = PieriContext::new(&p);
        let z = [C::new(0.8, 0.3), C::new(-0.4, 1.1)];
        let tau = p.origin();
        let expect: C = z.iter().map(|x| x + x.inv()).sum::<C>() - tau.iter().map(|x| x + x.inv()).sum::<C>();
        assert!((ctx.generator(1, &z) - expect).norm() < 1e-14);
    }

    #[test]
    fn rational_and_trig_coefficients_agree() {
        let p = params(PI / 5.4, 0.3, [0.7, 0.4, 0.2, 0.1], 2, 4);
        let ctx = PieriContext::new(&p);
        for r in 1..=2 {
            let a = ctx.coefficient_matrix(r).unwrap();
            let b = ctx.coefficient_matrix_trig(r).unwrap();
            let scale = crate::linalg::max_abs(&b);
            assert!(crate::linalg::max_abs(&(a - b)) < 1e-10 * scale, "r={r}");
        }
    }

    #[test]
    fn pieri_and_norms_on_config_a() {
        let p = params(PI / 5.2, 0.3, [0.5, 0.4, 0.2, 0.1], 2, 4);
        let sys = System::build(&p).unwrap();
        let ctx = PieriContext::new(&p);
        for r in 1..=2 {
            let m = ctx.coefficient_matrix_trig(r).unwrap();
            let (res, scale) = ctx.residual(r, &m, &sys.big_p.values).unwrap();
            assert!(res < 1e-9 * scale, "r={r}: {res} vs {scale}");
        }
        let norms: Vec<C> = sys
            .big_p
            .values
            .iter()
            .map(|v| crate::polynomials::inner_product(v, v, &sys.table.delta).unwrap())
            .collect();
        assert!(norm_recurrence_residual(&norms, &sys.table.delta_hat, sys.table.one_one) < 1e-9);
        let lam = Weight::new(vec![1, 0]).unwrap();
        for r in 1..=2 {
            assert!(ctx.raised_norm_residual(&lam, r, &norms).unwrap() < 1e-9);
            let [plus, minus] =
                ctx.raise_residuals(&lam, r, &sys.table.chat_plus, &sys.table.chat_minus).unwrap();
            assert!(plus < 1e-10 && minus < 1e-10, "r={r}: {plus} {minus}");
        }
    }
}
