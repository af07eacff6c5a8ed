//! Difference-operator coefficients, the discretized operators, and the
//! identities that make them symmetric.

use num_complex::Complex64 as C;

use crate::cfunctions::{c_pair, delta_unclamped};
use crate::params::ParamSet;
use crate::special::POLE_EPS;
use crate::weights::{Alcove, Weight};
use crate::{Error, GridFunction, Result};

pub mod pieri;
pub mod racah;
pub mod trig;

pub use pieri::PieriContext;
pub use trig::TrigKernels;

const ONE: C = C { re: 1.0, im: 0.0 };

/// Product of `(num, den)` factor pairs. A factor below [`POLE_EPS`] in the
/// denominator is accepted only when some numerator factor also vanishes,
/// in which case the value is zero.
pub(crate) fn guarded_ratio(num: &[C], den: &[C], context: &str) -> Result<C> {
    let num_zero = num.iter().any(|f| f.norm() < POLE_EPS);
    let den_zero = den.iter().any(|f| f.norm() < POLE_EPS);
    match (num_zero, den_zero) {
        (true, true) => Ok(C::new(0.0, 0.0)),
        (false, true) => Err(Error::pole(context)),
        _ => Ok(num.iter().product::<C>() / den.iter().product::<C>()),
    }
}

/// The coefficient `V_{εj}(z)` of the analytic operator; `j` is zero-based.
pub fn v_coeff(eps: i32, j: usize, z: &[C], p: &ParamSet) -> Result<C> {
    let (q, t) = (p.q(), p.t());
    let zj = if eps > 0 { z[j] } else { z[j].inv() };
    let mut num: Vec<C> = p.slots().iter().map(|tr| ONE - tr * zj).collect();
    let mut den = vec![ONE - zj * zj, ONE - q * zj * zj];
    for (k, &zk) in z.iter().enumerate() {
        if k != j {
            num.push(ONE - t * zj * zk);
            num.push(ONE - t * zj / zk);
            den.push(ONE - zj * zk);
            den.push(ONE - zj / zk);
        }
    }
    guarded_ratio(&num, &den, "V coefficient on a singular locus")
}

/// `E_{λ,λ}`, the eigenvalue of the analytic operator on `p_λ`.
pub fn eigenvalue(lambda: &Weight, p: &ParamSet) -> C {
    let n = lambda.len();
    let (q, t) = (p.q(), p.t());
    let hat_sq = p.slots().iter().product::<C>() / q;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            hat_sq * t.powu((2 * n - j - 2) as u32) * (q.powu(l) - 1.0) + t.powu(j as u32) * (q.powi(-(l as i32)) - 1.0)
        })
        .sum()
}

fn unit_shift(n: usize, j: usize, eps: i32) -> Vec<i32> {
    let mut d = vec![0; n];
    d[j] = eps;
    d
}

/// Rational form of the discretized second-order operator, on grid
/// functions in alcove order. Shifts leaving the alcove are dropped.
pub fn apply_d(f: &[C], p: &ParamSet) -> Result<GridFunction> {
    let alcove = Alcove::new(p.rank(), p.level());
    if f.len() != alcove.len() {
        return Err(Error::InvalidInput(format!("grid function has {} values, alcove has {}", f.len(), alcove.len())));
    }
    let n = p.rank();
    alcove
        .weights()
        .iter()
        .enumerate()
        .map(|(i, nu)| {
            let z = p.grid_point(nu);
            let mut acc = C::new(0.0, 0.0);
            for j in 0..n {
                for eps in [1, -1] {
                    if let Some(k) = alcove.shift_index(nu, &unit_shift(n, j, eps)) {
                        acc += v_coeff(eps, j, &z, p)? * (f[k] - f[i]);
                    }
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `Δ(ν+εe_j) V_{-εj}(τq^{ν+εe_j}) - Δ(ν) V_{εj}(τq^ν)`, with the larger of
/// the two terms as scale.
pub fn flip_residual(nu: &Weight, j: usize, eps: i32, p: &ParamSet) -> Result<(C, f64)> {
    let n = nu.len();
    let moved = nu
        .shifted(&unit_shift(n, j, eps))
        .ok_or_else(|| Error::InvalidInput(format!("{nu} shifted by e_{} leaves the cone", j + 1)))?;
    let lhs = delta_unclamped(&moved, p)? * v_coeff(-eps, j, &p.grid_point(&moved), p)?;
    let rhs = delta_unclamped(nu, p)? * v_coeff(eps, j, &p.grid_point(nu), p)?;
    Ok((lhs - rhs, lhs.norm().max(rhs.norm())))
}

/// The intermediate factor linking consecutive c-function values.
pub(crate) fn link_factor(nu: &Weight, j: usize, p: &ParamSet) -> Result<C> {
    let n = nu.len();
    let (q, t) = (p.q(), p.t());
    let tau = p.origin();
    let v = nu.parts();
    let mut acc = t.powi(j as i32 + 1 - n as i32) / p.dual_root();
    let mut num = Vec::new();
    let mut den = Vec::new();
    for k in 0..j {
        let a = tau[k] / tau[j] * q.powi(v[k] as i32 - v[j] as i32);
        let b = tau[j] / tau[k] * q.powi(v[j] as i32 - v[k] as i32 - 1);
        num.extend([ONE - a, ONE - b]);
        den.extend([ONE - t * a, ONE - t * b]);
    }
    acc *= guarded_ratio(&num, &den, "link factor")?;
    Ok(acc)
}

/// Residuals of the two c-function difference equations at `(ν, j)`,
/// each relative to its left-hand side. `None` when the shift leaves the
/// cone.
pub fn c_function_shift_residuals(nu: &Weight, j: usize, p: &ParamSet) -> Result<[Option<f64>; 2]> {
    let n = nu.len();
    let (plus, minus) = c_pair(nu, p)?;
    let down = match nu.shifted(&unit_shift(n, j, -1)) {
        Some(lower) => {
            let (lp, _) = c_pair(&lower, p)?;
            let lhs = lp / plus;
            let rhs = v_coeff(1, j, &p.grid_point(&lower), p)? * link_factor(nu, j, p)?;
            Some((lhs - rhs).norm() / lhs.norm())
        }
        None => None,
    };
    let up = match nu.shifted(&unit_shift(n, j, 1)) {
        Some(upper) if c_pair(&upper, p).is_ok() => {
            let (_, um) = c_pair(&upper, p)?;
            let lhs = um / minus;
            let rhs = v_coeff(-1, j, &p.grid_point(&upper), p)? * link_factor(&upper, j, p)?;
            Some((lhs - rhs).norm() / lhs.norm())
        }
        _ => None,
    };
    Ok([down, up])
}

/// Largest `|V_{εj}(τq^ν)|` over boundary shifts leaving the alcove, and
/// the largest coefficient magnitude over the whole grid as scale.
pub fn boundary_vanishing(p: &ParamSet) -> Result<(f64, f64)> {
    let alcove = Alcove::new(p.rank(), p.level());
    let n = p.rank();
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for nu in alcove.weights() {
        let z = p.grid_point(nu);
        for j in 0..n {
            for eps in [1, -1] {
                let v = v_coeff(eps, j, &z, p)?.norm();
                scale = scale.max(v);
                if alcove.shift_index(nu, &unit_shift(n, j, eps)).is_none() {
                    worst = worst.max(v);
                }
            }
        }
    }
    Ok((worst, scale))
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

    fn generic() -> ParamSet {
        let src = TrigSource { alpha: PI / 5.37, coupling: 0.33, exponents: RoleQuad::new(0.61, 0.43, 0.27, -0.11) };
        ParamSet::from_trig(src, 2, 4, Roles::default()).unwrap()
    }

    #[test]
    fn boundary_coefficients_vanish() {
        for p in [config_a(), generic()] {
            let (worst, scale) = boundary_vanishing(&p).unwrap();
            assert!(worst < 1e-12 * scale, "{worst} vs {scale}");
        }
    }

    #[test]
    fn specific_vanishing_points() {
        let p = generic();
        let top = Weight::new(vec![4, 1]).unwrap();
        assert!(v_coeff(1, 0, &p.grid_point(&top), &p).unwrap().norm() < 1e-13);
        let zero = Weight::zero(2);
        assert_eq!(v_coeff(-1, 1, &p.grid_point(&zero), &p).unwrap(), C::new(0.0, 0.0));
        let equal = Weight::new(vec![2, 2]).unwrap();
        assert!(v_coeff(1, 1, &p.grid_point(&equal), &p).unwrap().norm() < 1e-13);
    }

    #[test]
    fn flip_identity_on_adjacent_pairs() {
        let p = generic();
        for nu in Alcove::new(2, 4).weights() {
            for j in 0..2 {
                if nu.shifted(&unit_shift(2, j, 1)).is_some_and(|m| m.in_alcove(4)) {
                    let (r, s) = flip_residual(nu, j, 1, &p).unwrap();
                    assert!(r.norm() <= 1e-12 * s.max(1e-300), "{nu} {j}: {r} vs {s}");
                }
            }
        }
    }

    #[test]
    fn c_function_shifts_use_link_factor() {
        let p = generic();
        for nu in Alcove::new(2, 3).weights() {
            for j in 0..2 {
                for r in c_function_shift_residuals(nu, j, &p).unwrap().into_iter().flatten() {
                    assert!(r < 1e-12, "{nu} {j}: {r}");
                }
            }
        }
    }

    #[test]
    fn constants_are_annihilated() {
        let p = config_a();
        let ones = vec![ONE; 15];
        let d = apply_d(&ones, &p).unwrap();
        assert!(d.iter().all(|x| x.norm() == 0.0));
        assert_eq!(eigenvalue(&Weight::zero(2), &p), C::new(0.0, 0.0));
    }
}
