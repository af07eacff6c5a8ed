//! Shifted factorials and the one-variable terminating series.

use num_complex::Complex64 as C;

use crate::params::{ParamSet, RacahParams};
use crate::{Error, Result};

/// Factors with modulus below this are treated as exact zeros of a
/// denominator.
pub const POLE_EPS: f64 = 1e-13;

/// `(a; q)_m = (1 - a)(1 - aq)...(1 - aq^{m-1})`.
pub fn qpoch(a: C, q: C, m: u32) -> C {
    let mut acc = C::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..m {
        acc *= C::new(1.0, 0.0) - x;
        x *= q;
    }
    acc
}

/// `(a)_m = a(a+1)...(a+m-1)`.
pub fn poch(a: C, m: u32) -> C {
    (0..m).fold(C::new(1.0, 0.0), |acc, k| acc * (a + f64::from(k)))
}

/// `sin(alpha a/2) sin(alpha (a+1)/2) ... ` with `m` factors.
pub fn trig_poch_sin(a: f64, alpha: f64, m: u32) -> f64 {
    (0..m).map(|k| (alpha * (a + f64::from(k)) / 2.0).sin()).product()
}

/// Cosine analogue of [`trig_poch_sin`].
pub fn trig_poch_cos(a: f64, alpha: f64, m: u32) -> f64 {
    (0..m).map(|k| (alpha * (a + f64::from(k)) / 2.0).cos()).product()
}

/// `qpoch` for a denominator: errors when a factor vanishes.
pub(crate) fn qpoch_den(a: C, q: C, m: u32, context: &str) -> Result<C> {
    let mut acc = C::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..m {
        let f = C::new(1.0, 0.0) - x;
        if f.norm() < POLE_EPS {
            return Err(Error::pole(context));
        }
        acc *= f;
        x *= q;
    }
    Ok(acc)
}

pub(crate) fn poch_den(a: C, m: u32, context: &str) -> Result<C> {
    let mut acc = C::new(1.0, 0.0);
    for k in 0..m {
        let f = a + f64::from(k);
        if f.norm() < POLE_EPS {
            return Err(Error::pole(context));
        }
        acc *= f;
    }
    Ok(acc)
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: C,
    carry: C,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: C) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.carry.im);
    }

    pub fn value(&self) -> C {
        self.sum + self.carry
    }
}

fn neumaier(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}

/// Monic one-variable Askey-Wilson polynomial of degree `lambda` at `z`.
///
/// The role-a parameter occupies the distinguished slot of the ₄φ₃, so the
/// grid `t_a q^ν` of a truncated set is where the polynomial is orthogonal.
/// Each term carries its own share of the prefactor, which keeps the
/// truncated factor `(t_a t_b; q)` out of every denominator.
pub fn phi43_monic_aw(lambda: u32, z: C, p: &ParamSet) -> Result<C> {
    if p.rank() != 1 {
        return Err(Error::InvalidInput("the one-variable series needs n = 1".into()));
    }
    let q = p.q();
    let t = p.by_role();
    let all = t.a * t.b * t.c * t.d;
    let top = all * q.powi(lambda as i32 - 1);
    let norm = t.a.powu(lambda) * qpoch_den(top, q, lambda, "Askey-Wilson normalization")?;
    if norm.norm() < POLE_EPS {
        return Err(Error::pole("Askey-Wilson normalization"));
    }
    let mut sum = CompensatedSum::new();
    let mut series = C::new(1.0, 0.0);
    let one = C::new(1.0, 0.0);
    for k in 0..=lambda {
        if k > 0 {
            let j = k - 1;
            let qj = q.powu(j);
            let num = (one - q.powi(-(lambda as i32)) * qj)
                * (one - top * qj)
                * (one - t.a * z * qj)
                * (one - t.a / z * qj);
            let den = one - q * qj;
            if den.norm() < POLE_EPS {
                return Err(Error::pole("(q; q)_k in the Askey-Wilson series"));
            }
            series *= num * q / den;
        }
        let qk = q.powu(k);
        let head = qpoch(t.a * t.b * qk, q, lambda - k)
            * qpoch(t.a * t.c * qk, q, lambda - k)
            * qpoch(t.a * t.d * qk, q, lambda - k);
        sum.add(head * series);
    }
    Ok(sum.value() / norm)
}

/// Monic one-variable Wilson polynomial of degree `lambda` at `x`.
pub fn f43_monic_wilson(lambda: u32, x: C, rp: &RacahParams) -> Result<C> {
    if rp.rank() != 1 {
        return Err(Error::InvalidInput("the one-variable series needs n = 1".into()));
    }
    let g = rp.by_role().map(|v| C::new(v, 0.0));
    let total = g.a + g.b + g.c + g.d;
    let top = total + f64::from(lambda) - 1.0;
    let norm = poch_den(top, lambda, "Wilson normalization")?;
    let mut sum = CompensatedSum::new();
    let mut series = C::new(1.0, 0.0);
    for k in 0..=lambda {
        if k > 0 {
            let j = f64::from(k - 1);
            let num = (j - f64::from(lambda)) * (top + j) * (g.a + x + j) * (g.a - x + j);
            series *= num / (j + 1.0);
        }
        let kf = f64::from(k);
        let head = poch(g.a + g.b + kf, lambda - k)
            * poch(g.a + g.c + kf, lambda - k)
            * poch(g.a + g.d + kf, lambda - k);
        sum.add(head * series);
    }
    Ok(sum.value() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(c(0.3, 0.1), c(0.7, 0.2), 0), c(1.0, 0.0));
        assert!((qpoch(c(0.5, 0.0), c(0.5, 0.0), 2) - c(0.375, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn poch_examples() {
        assert_eq!(poch(c(2.5, 0.0), 0), c(1.0, 0.0));
        assert_eq!(poch(c(1.0, 0.0), 4), c(24.0, 0.0));
    }

    #[test]
    fn trig_poch_factors_unit_circle_pochhammer() {
        // 1 - e^{iαξ} = -2i e^{iαξ/2} sin(αξ/2)
        let alpha = 0.61;
        for &xi in &[0.13, 1.7, -2.2] {
            let lhs = c(1.0, 0.0) - C::from_polar(1.0, alpha * xi);
            let rhs = c(0.0, -2.0) * C::from_polar(1.0, alpha * xi / 2.0) * trig_poch_sin(xi, alpha, 1);
            assert!((lhs - rhs).norm() < 1e-15);
        }
        assert_eq!(trig_poch_cos(0.4, 1.0, 0), 1.0);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::new();
        for x in [1e16, 1.0, -1e16, 1.0] {
            s.add(c(x, -x));
        }
        assert_eq!(s.value(), c(2.0, -2.0));
    }
}
