//! Trigonometric kernels on the log-grid and the commuting family `D_r`.

use itertools::Itertools;
use num_complex::Complex64 as C;

use crate::linalg::CMatrix;
use crate::params::{LinearForm, RoleQuad, TrigSource};
use crate::special::POLE_EPS;
use crate::weights::{Alcove, Weight};
use crate::{Error, Result};

/// The kernels `v` and `w` for one trig source.
///
/// Arguments are [`LinearForm`]s. A sine (cosine) factor whose argument is
/// an even (odd) multiple of the period `π/α` vanishes identically on the
/// truncated grid and is returned as an exact zero, which settles the
/// removable `0/0` cases that arise when an exponent equals `1/2`.
#[derive(Clone, Debug)]
pub struct TrigKernels {
    alpha: f64,
    coupling: f64,
    exponents: RoleQuad<f64>,
    period: LinearForm,
    n: usize,
}

impl TrigKernels {
    pub fn new(source: &TrigSource, n: usize, big_n: u32) -> Self {
        TrigKernels {
            alpha: source.alpha,
            coupling: source.coupling,
            exponents: source.exponents,
            period: LinearForm::period(n, big_n),
            n,
        }
    }

    fn sin(&self, xi: LinearForm) -> f64 {
        match xi.multiple_of(&self.period) {
            Some(k) if k % 2 == 0 => 0.0,
            _ => (self.alpha * xi.eval(self.coupling, &self.exponents) / 2.0).sin(),
        }
    }

    fn cos(&self, xi: LinearForm) -> f64 {
        match xi.multiple_of(&self.period) {
            Some(k) if k % 2 != 0 => 0.0,
            _ => (self.alpha * xi.eval(self.coupling, &self.exponents) / 2.0).cos(),
        }
    }

    fn ratio(num: &[f64], den: &[f64]) -> Result<f64> {
        if num.iter().any(|&x| x == 0.0) {
            return Ok(0.0);
        }
        if den.iter().any(|x| x.abs() < POLE_EPS) {
            return Err(Error::pole("trigonometric kernel"));
        }
        Ok(num.iter().product::<f64>() / den.iter().product::<f64>())
    }

    /// `v(ξ) = sin_α(g+ξ)/sin_α(ξ)`.
    pub fn v(&self, xi: LinearForm) -> Result<f64> {
        Self::ratio(&[self.sin(LinearForm::coupling(1) + xi)], &[self.sin(xi)])
    }

    /// The four-factor boundary kernel `w(ξ)`.
    pub fn w(&self, xi: LinearForm) -> Result<f64> {
        let h = LinearForm::halves(1);
        let num = [
            self.sin(LinearForm::role(0, 1) + xi),
            self.cos(LinearForm::role(1, 1) + xi),
            self.sin(LinearForm::role(2, 1) + h + xi),
            self.cos(LinearForm::role(3, 1) + h + xi),
        ];
        let den = [self.sin(xi), self.cos(xi), self.sin(h + xi), self.cos(h + xi)];
        Self::ratio(&num, &den)
    }

    /// Grid coordinates `ρ + ν`.
    pub fn grid(&self, nu: &Weight) -> Vec<LinearForm> {
        nu.parts().iter().enumerate().map(|(j, &k)| LinearForm::grid(self.n, j, k as i32)).collect()
    }

    /// `V_{εJ,K}(x)`.
    pub fn shift_coefficient(&self, x: &[LinearForm], signed: &[(usize, i32)], rest: &[usize]) -> Result<f64> {
        let mut acc = 1.0;
        for (a, &(j, ej)) in signed.iter().enumerate() {
            let xj = x[j] * ej;
            acc *= self.w(xj)?;
            for &(k, ek) in &signed[a + 1..] {
                let y = xj + x[k] * ek;
                acc *= self.v(y)? * self.v(y + LinearForm::integer(1))?;
            }
            for &k in rest {
                acc *= self.v(xj + x[k])? * self.v(xj - x[k])?;
            }
            if acc == 0.0 {
                return Ok(0.0);
            }
        }
        Ok(acc)
    }

    /// `U_{K,p}(x)`, with `U_{K,0} = 1`.
    pub fn stay_coefficient(&self, x: &[LinearForm], set: &[usize], p: usize) -> Result<f64> {
        if p == 0 {
            return Ok(1.0);
        }
        let mut total = 0.0;
        for chosen in set.iter().copied().combinations(p) {
            let rest: Vec<usize> = set.iter().copied().filter(|k| !chosen.contains(k)).collect();
            for signs in sign_patterns(p) {
                let mut acc = 1.0;
                for (a, &l) in chosen.iter().enumerate() {
                    let xl = x[l] * signs[a];
                    acc *= self.w(xl)?;
                    for (b, &k) in chosen.iter().enumerate().skip(a + 1) {
                        let y = xl + x[k] * signs[b];
                        acc *= self.v(y)? * self.v(-y - LinearForm::integer(1))?;
                    }
                    for &k in &rest {
                        acc *= self.v(xl + x[k])? * self.v(xl - x[k])?;
                    }
                }
                total += acc;
            }
        }
        Ok(if p % 2 == 0 { total } else { -total })
    }
}

pub(crate) fn sign_patterns(p: usize) -> impl Iterator<Item = Vec<i32>> {
    (0u32..(1 << p)).map(move |mask| (0..p).map(|b| if mask & (1 << b) != 0 { -1 } else { 1 }).collect())
}

/// All `(J, ε)` with `|J| ≤ r`, as signed index lists, and the complement.
pub(crate) fn signed_subsets(n: usize, r: usize) -> Vec<(Vec<(usize, i32)>, Vec<usize>)> {
    let mut out = Vec::new();
    for size in 0..=r.min(n) {
        for set in (0..n).combinations(size) {
            let rest: Vec<usize> = (0..n).filter(|k| !set.contains(k)).collect();
            for signs in sign_patterns(size) {
                out.push((set.iter().copied().zip(signs).collect(), rest.clone()));
            }
        }
    }
    out
}

pub(crate) fn shift_of(n: usize, signed: &[(usize, i32)]) -> Vec<i32> {
    let mut d = vec![0; n];
    for &(j, e) in signed {
        d[j] += e;
    }
    d
}

/// Matrix of `D_r` on grid functions: `(D_r f)(ν) = Σ_ν' M[ν][ν'] f(ν')`.
pub fn dr_matrix(r: usize, source: &TrigSource, n: usize, big_n: u32) -> Result<CMatrix> {
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!("operator index r = {r} must lie in 1..={n}")));
    }
    let kernels = TrigKernels::new(source, n, big_n);
    let alcove = Alcove::new(n, big_n);
    let subsets = signed_subsets(n, r);
    let mut m = CMatrix::zeros(alcove.len(), alcove.len());
    for (i, nu) in alcove.weights().iter().enumerate() {
        let x = kernels.grid(nu);
        for (signed, rest) in &subsets {
            let Some(k) = alcove.shift_index(nu, &shift_of(n, signed)) else { continue };
            let v = kernels.shift_coefficient(&x, signed, rest)?;
            if v == 0.0 {
                continue;
            }
            let u = kernels.stay_coefficient(&x, rest, r - signed.len())?;
            m[(i, k)] += C::new(u * v, 0.0);
        }
    }
    Ok(m)
}

/// Applies `D_r` to a grid function.
pub fn apply_dr(r: usize, f: &[C], source: &TrigSource, n: usize, big_n: u32) -> Result<Vec<C>> {
    let m = dr_matrix(r, source, n, big_n)?;
    if f.len() != m.ncols() {
        return Err(Error::InvalidInput(format!("grid function has {} values, alcove has {}", f.len(), m.ncols())));
    }
    Ok((0..m.nrows()).map(|i| (0..m.ncols()).map(|k| m[(i, k)] * f[k]).sum()).collect())
}

/// `E_{r,ν}` on the log-grid with origin `rho`.
pub fn e_multiplier(r: usize, nu: &Weight, rho: &[f64], alpha: f64) -> f64 {
    let n = rho.len();
    let cos_at: Vec<f64> = (0..n).map(|j| (alpha * (rho[j] + f64::from(nu.parts()[j]))).cos()).collect();
    let cos_origin: Vec<f64> = rho.iter().map(|x| (alpha * x).cos()).collect();
    let mut total = 0.0;
    for size in 0..=r.min(n) {
        let m = r - size;
        let tail: f64 = if m == 0 {
            1.0
        } else {
            (r - 1..n).combinations_with_replacement(m).map(|ls| ls.iter().map(|&l| cos_origin[l]).product::<f64>()).sum()
        };
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for set in (0..n).combinations(size) {
            total += sign * set.iter().map(|&j| cos_at[j]).product::<f64>() * tail;
        }
    }
    total * f64::powi(2.0, r as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn source_a() -> TrigSource {
        TrigSource { alpha: PI / 5.2, coupling: 0.3, exponents: RoleQuad::new(0.5, 0.4, 0.2, 0.1) }
    }

    #[test]
    fn first_multiplier_telescopes() {
        let src = source_a();
        let rho = src.log_origin(2);
        assert!(e_multiplier(1, &Weight::zero(2), &rho, src.alpha).abs() < 1e-15);
        let nu = Weight::new(vec![3, 1]).unwrap();
        let direct: f64 = (0..2)
            .map(|j| 2.0 * ((src.alpha * (rho[j] + f64::from(nu.parts()[j]))).cos() - (src.alpha * rho[j]).cos()))
            .sum();
        assert!((e_multiplier(1, &nu, &rho, src.alpha) - direct).abs() < 1e-14);
    }

    #[test]
    fn removable_zero_at_half_exponent() {
        // g_a = 1/2 makes both numerator and denominator of w(-x_n) vanish at ν_n = 0.
        let k = TrigKernels::new(&source_a(), 2, 4);
        let x = k.grid(&Weight::zero(2));
        assert_eq!(k.w(-x[1]).unwrap(), 0.0);
    }

    #[test]
    fn stay_coefficient_convention() {
        let k = TrigKernels::new(&source_a(), 2, 4);
        let x = k.grid(&Weight::new(vec![2, 1]).unwrap());
        assert_eq!(k.stay_coefficient(&x, &[0, 1], 0).unwrap(), 1.0);
    }

    #[test]
    fn constants_are_eigenfunctions() {
        let src = source_a();
        for r in 1..=2 {
            let m = dr_matrix(r, &src, 2, 4).unwrap();
            let rho_hat = src.dual().log_origin(2);
            let shift = e_multiplier(r, &Weight::zero(2), &rho_hat, src.alpha);
            for i in 0..m.nrows() {
                let row: C = (0..m.ncols()).map(|k| m[(i, k)]).sum();
                assert!((row.re - shift).abs() < 1e-11, "r={r} row {i}: {row} vs {shift}");
            }
        }
    }
}
