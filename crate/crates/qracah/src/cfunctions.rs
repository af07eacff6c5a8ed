//! c-functions, discrete weights, Plancherel weights and norm ratios.

use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::params::{ParamSet, RacahParams};
use crate::special::{trig_poch_cos, trig_poch_sin, POLE_EPS};
use crate::weights::{Alcove, Weight};
use crate::{Error, Result};

const ONE: C = C { re: 1.0, im: 0.0 };

/// A running product that remembers its smallest factor.
#[derive(Clone, Copy, Debug)]
struct Tracked {
    value: C,
    smallest: f64,
}

impl Tracked {
    fn one() -> Self {
        Tracked { value: ONE, smallest: f64::INFINITY }
    }

    fn factor(&mut self, f: C) {
        self.value *= f;
        self.smallest = self.smallest.min(f.norm());
    }

    fn qpoch(&mut self, a: C, q: C, m: u32) {
        let mut x = a;
        for _ in 0..m {
            self.factor(ONE - x);
            x *= q;
        }
    }

    fn poch(&mut self, a: f64, m: u32) {
        for k in 0..m {
            self.factor(C::new(a + f64::from(k), 0.0));
        }
    }

    fn vanishes(&self) -> bool {
        self.smallest < POLE_EPS
    }
}

/// Numerator and denominator of `C₊` and `C₋`, without the `c₀` prefactor.
struct CParts {
    plus_num: Tracked,
    plus_den: Tracked,
    minus_num: Tracked,
    minus_den: Tracked,
}

fn c_parts(nu: &Weight, p: &ParamSet) -> CParts {
    let n = p.rank();
    let (q, t) = (p.q(), p.t());
    let tau = p.origin();
    let boundary = p.by_role().to_array();
    let nu = nu.parts();
    let mut parts = CParts {
        plus_num: Tracked::one(),
        plus_den: Tracked::one(),
        minus_num: Tracked::one(),
        minus_den: Tracked::one(),
    };
    for j in 0..n {
        for k in j + 1..n {
            let s = nu[j] + nu[k];
            let d = nu[j] - nu[k];
            let prod = tau[j] * tau[k];
            let ratio = tau[j] / tau[k];
            parts.plus_num.qpoch(prod, q, s);
            parts.plus_num.qpoch(ratio, q, d);
            parts.plus_den.qpoch(t * prod, q, s);
            parts.plus_den.qpoch(t * ratio, q, d);
            parts.minus_num.qpoch(q * prod / t, q, s);
            parts.minus_num.qpoch(q * ratio / t, q, d);
            parts.minus_den.qpoch(q * prod, q, s);
            parts.minus_den.qpoch(q * ratio, q, d);
        }
        let sq = tau[j] * tau[j];
        parts.plus_num.qpoch(sq, q, 2 * nu[j]);
        parts.minus_den.qpoch(q * sq, q, 2 * nu[j]);
        for &tr in &boundary {
            parts.plus_den.qpoch(tr * tau[j], q, nu[j]);
            parts.minus_num.qpoch(q * tau[j] / tr, q, nu[j]);
        }
    }
    parts
}

/// `c₀(ν) = ∏_j τ̂_j^{ν_j}`, using the stored root for `t̂_a`.
pub fn c0(nu: &Weight, p: &ParamSet) -> C {
    let n = p.rank();
    nu.parts()
        .iter()
        .enumerate()
        .map(|(j, &k)| (p.t().powu((n - 1 - j) as u32) * p.dual_root()).powu(k))
        .product()
}

/// `c₀(ν)²`, rational in the parameters.
fn c0_squared(nu: &Weight, p: &ParamSet) -> C {
    let squares = p.dual_view().origin_squares;
    nu.parts().iter().zip(squares).map(|(&k, s)| s.powu(k)).product()
}

/// `(C₊(ν), C₋(ν))` from the q-shifted factorial formulas.
pub fn c_pair(nu: &Weight, p: &ParamSet) -> Result<(C, C)> {
    let parts = c_parts(nu, p);
    if parts.plus_den.vanishes() {
        return Err(Error::pole(format!("C+ denominator at {nu}")));
    }
    if parts.minus_den.vanishes() {
        return Err(Error::pole(format!("C- denominator at {nu}")));
    }
    let c0 = c0(nu, p);
    Ok((
        c0 * parts.plus_num.value / parts.plus_den.value,
        c0 * parts.minus_num.value / parts.minus_den.value,
    ))
}

pub fn c_plus(nu: &Weight, p: &ParamSet) -> Result<C> {
    c_pair(nu, p).map(|(plus, _)| plus)
}

pub fn c_minus(nu: &Weight, p: &ParamSet) -> Result<C> {
    c_pair(nu, p).map(|(_, minus)| minus)
}

/// `1/(C₊C₋)` written as a product, so that a vanishing factor of the
/// `C₊` denominator gives a (numerically) vanishing weight instead of a pole.
pub fn delta_unclamped(nu: &Weight, p: &ParamSet) -> Result<C> {
    let parts = c_parts(nu, p);
    if parts.plus_num.vanishes() || parts.minus_num.vanishes() {
        return Err(Error::pole(format!("weight at {nu}")));
    }
    Ok(parts.plus_den.value * parts.minus_den.value
        / (parts.plus_num.value * parts.minus_num.value * c0_squared(nu, p)))
}

/// The discrete weight `Δ(ν)`; exactly zero where `C₊` has a pole.
pub fn delta(nu: &Weight, p: &ParamSet) -> Result<C> {
    let parts = c_parts(nu, p);
    if parts.plus_den.vanishes() {
        return Ok(C::new(0.0, 0.0));
    }
    delta_unclamped(nu, p)
}

/// `(C₊(ν), C₋(ν))` from the trigonometric Pochhammer formulas.
pub fn c_pair_trig(nu: &Weight, p: &ParamSet) -> Result<(f64, f64)> {
    let src = p.trig().ok_or_else(|| Error::Unsupported("trigonometric c-functions need a trig source".into()))?;
    let alpha = src.alpha;
    let g = src.coupling;
    let e = src.exponents;
    let rho = src.log_origin(p.rank());
    let nu = nu.parts();
    let sin = |a: f64, m: u32| trig_poch_sin(a, alpha, m);
    let cos = |a: f64, m: u32| trig_poch_cos(a, alpha, m);
    let (mut plus_num, mut plus_den, mut minus_num, mut minus_den) = (1.0, 1.0, 1.0, 1.0);
    for j in 0..rho.len() {
        for k in j + 1..rho.len() {
            let (s, d) = (nu[j] + nu[k], nu[j] - nu[k]);
            let (sum, diff) = (rho[j] + rho[k], rho[j] - rho[k]);
            plus_num *= sin(sum, s) * sin(diff, d);
            plus_den *= sin(g + sum, s) * sin(g + diff, d);
            minus_num *= sin(1.0 - g + sum, s) * sin(1.0 - g + diff, d);
            minus_den *= sin(1.0 + sum, s) * sin(1.0 + diff, d);
        }
        let (r, m) = (rho[j], nu[j]);
        plus_num *= sin(r, m) * sin(0.5 + r, m) * cos(r, m) * cos(0.5 + r, m);
        plus_den *= sin(e.a + r, m) * sin(e.c + 0.5 + r, m) * cos(e.b + r, m) * cos(e.d + 0.5 + r, m);
        minus_num *= sin(1.0 - e.a + r, m) * sin(0.5 - e.c + r, m) * cos(1.0 - e.b + r, m) * cos(0.5 - e.d + r, m);
        minus_den *= sin(1.0 + r, m) * sin(0.5 + r, m) * cos(1.0 + r, m) * cos(0.5 + r, m);
    }
    if plus_den.abs() < POLE_EPS || minus_den.abs() < POLE_EPS {
        return Err(Error::pole("trigonometric c-function denominator"));
    }
    Ok((plus_num / plus_den, minus_num / minus_den))
}

/// Per-weight tables for a parameter set and its dual.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub alcove: Alcove,
    pub c_plus: Vec<C>,
    pub c_minus: Vec<C>,
    pub delta: Vec<C>,
    pub chat_plus: Vec<C>,
    pub chat_minus: Vec<C>,
    pub delta_hat: Vec<C>,
    pub norm_ratio: Vec<C>,
    pub one_one: C,
}

impl WeightTable {
    pub fn build(p: &ParamSet) -> Result<Self> {
        let alcove = Alcove::new(p.rank(), p.level());
        let dual = p.dual();
        let primal = side(&alcove, p)?;
        let hat = side(&alcove, &dual)?;
        Ok(Self::assemble(alcove, primal, hat))
    }

    pub fn build_racah(rp: &RacahParams) -> Result<Self> {
        let alcove = Alcove::new(rp.rank(), rp.level());
        let dual = rp.dual();
        let primal = racah_side(&alcove, rp)?;
        let hat = racah_side(&alcove, &dual)?;
        Ok(Self::assemble(alcove, primal, hat))
    }

    fn assemble(alcove: Alcove, primal: Side, hat: Side) -> Self {
        let one_one = primal.delta.iter().sum();
        let norm_ratio = hat.c_minus.iter().zip(&hat.c_plus).map(|(m, p)| m / p).collect();
        WeightTable {
            alcove,
            c_plus: primal.c_plus,
            c_minus: primal.c_minus,
            delta: primal.delta,
            chat_plus: hat.c_plus,
            chat_minus: hat.c_minus,
            delta_hat: hat.delta,
            norm_ratio,
            one_one,
        }
    }

    pub fn len(&self) -> usize {
        self.alcove.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcove.is_empty()
    }

    /// The same tables with primal and dual sides exchanged.
    pub fn swapped(&self) -> WeightTable {
        let one_one = self.delta_hat.iter().sum();
        WeightTable {
            alcove: self.alcove.clone(),
            c_plus: self.chat_plus.clone(),
            c_minus: self.chat_minus.clone(),
            delta: self.delta_hat.clone(),
            chat_plus: self.c_plus.clone(),
            chat_minus: self.c_minus.clone(),
            delta_hat: self.delta.clone(),
            norm_ratio: self.c_minus.iter().zip(&self.c_plus).map(|(m, p)| m / p).collect(),
            one_one,
        }
    }
}

struct Side {
    c_plus: Vec<C>,
    c_minus: Vec<C>,
    delta: Vec<C>,
}

fn side(alcove: &Alcove, p: &ParamSet) -> Result<Side> {
    let rows: Vec<(C, C, C)> = alcove
        .weights()
        .par_iter()
        .map(|nu| {
            let (plus, minus) = c_pair(nu, p)?;
            Ok((plus, minus, delta(nu, p)?))
        })
        .collect::<Result<_>>()?;
    Ok(unzip3(rows))
}

fn unzip3(rows: Vec<(C, C, C)>) -> Side {
    let mut side = Side { c_plus: Vec::new(), c_minus: Vec::new(), delta: Vec::new() };
    for (a, b, c) in rows {
        side.c_plus.push(a);
        side.c_minus.push(b);
        side.delta.push(c);
    }
    side
}

/// `(C₊^R(ν), C₋^R(ν))` on the grid `ρ + ν`.
pub fn racah_c_pair(nu: &Weight, rp: &RacahParams) -> Result<(f64, f64)> {
    let g = rp.coupling();
    let rho = rp.log_origin();
    let boundary = rp.by_role().to_array();
    let nu = nu.parts();
    let (mut plus_num, mut plus_den, mut minus_num, mut minus_den) =
        (Tracked::one(), Tracked::one(), Tracked::one(), Tracked::one());
    for j in 0..rho.len() {
        for k in j + 1..rho.len() {
            let (s, d) = (nu[j] + nu[k], nu[j] - nu[k]);
            let (sum, diff) = (rho[j] + rho[k], rho[j] - rho[k]);
            plus_num.poch(sum, s);
            plus_num.poch(diff, d);
            plus_den.poch(g + sum, s);
            plus_den.poch(g + diff, d);
            minus_num.poch(1.0 - g + sum, s);
            minus_num.poch(1.0 - g + diff, d);
            minus_den.poch(1.0 + sum, s);
            minus_den.poch(1.0 + diff, d);
        }
        plus_num.poch(2.0 * rho[j], 2 * nu[j]);
        minus_den.poch(1.0 + 2.0 * rho[j], 2 * nu[j]);
        for &gr in &boundary {
            plus_den.poch(gr + rho[j], nu[j]);
            minus_num.poch(1.0 - gr + rho[j], nu[j]);
        }
    }
    if plus_den.vanishes() || minus_den.vanishes() {
        return Err(Error::pole(format!("Racah c-function denominator at {}", Weight::new(nu.to_vec())?)));
    }
    Ok((plus_num.value.re / plus_den.value.re, minus_num.value.re / minus_den.value.re))
}

fn racah_side(alcove: &Alcove, rp: &RacahParams) -> Result<Side> {
    let rows: Vec<(C, C, C)> = alcove
        .weights()
        .iter()
        .map(|nu| {
            let (plus, minus) = racah_c_pair(nu, rp)?;
            if plus == 0.0 || minus == 0.0 {
                return Err(Error::pole(format!("Racah weight at {nu}")));
            }
            Ok((C::new(plus, 0.0), C::new(minus, 0.0), C::new(1.0 / (plus * minus), 0.0)))
        })
        .collect::<Result<_>>()?;
    Ok(unzip3(rows))
}

/// One-variable product formulas.
pub mod closed_form {
    use super::*;
    use crate::special::{poch, qpoch};

    fn require_rank_one(n: usize) -> Result<()> {
        if n != 1 {
            return Err(Error::InvalidInput("one-variable formula needs n = 1".into()));
        }
        Ok(())
    }

    /// `Δ(ν)` for `n = 1`.
    pub fn weight(nu: u32, p: &ParamSet) -> Result<C> {
        require_rank_one(p.rank())?;
        let q = p.q();
        let all = p.slots().iter().product::<C>();
        let ta = p.by_role().a;
        let mut num = (ONE - ta * ta * q.powu(2 * nu)) / ((all / q).powu(nu) * (ONE - ta * ta));
        for tr in p.slots() {
            num *= qpoch(tr * ta, q, nu) / qpoch(q * ta / tr, q, nu);
        }
        Ok(num)
    }

    /// `⟨p_λ,p_λ⟩/⟨1,1⟩` for `n = 1`.
    pub fn norm_ratio(lambda: u32, p: &ParamSet) -> Result<C> {
        require_rank_one(p.rank())?;
        let q = p.q();
        let s = p.slots();
        let all = s.iter().product::<C>();
        let mut num = qpoch(q, q, lambda);
        for r in 0..4 {
            for u in r + 1..4 {
                num *= qpoch(s[r] * s[u], q, lambda);
            }
        }
        Ok(num / (qpoch(all * q.powi(lambda as i32 - 1), q, lambda) * qpoch(all, q, 2 * lambda)))
    }

    /// `⟨1,1⟩` for `n = 1` as a product.
    pub fn one_one(p: &ParamSet) -> Result<C> {
        require_rank_one(p.rank())?;
        let (q, big_n) = (p.q(), p.level());
        let r = p.by_role();
        Ok(qpoch(r.a * r.a * q, q, big_n) * qpoch(q / (r.c * r.d), q, big_n)
            / (qpoch(r.a * q / r.c, q, big_n) * qpoch(r.a * q / r.d, q, big_n)))
    }

    /// `Δ^R(ν)` for `n = 1`.
    pub fn racah_weight(nu: u32, rp: &RacahParams) -> Result<f64> {
        require_rank_one(rp.rank())?;
        let ga = rp.by_role().a;
        let mut w = 1.0 + f64::from(nu) / ga;
        for gr in rp.by_role().to_array() {
            w *= poch(C::new(gr + ga, 0.0), nu).re / poch(C::new(1.0 - gr + ga, 0.0), nu).re;
        }
        Ok(w)
    }

    /// `⟨p̃_λ,p̃_λ⟩^R/⟨1,1⟩^R` for `n = 1`.
    pub fn racah_norm_ratio(lambda: u32, rp: &RacahParams) -> Result<f64> {
        require_rank_one(rp.rank())?;
        let g = rp.by_role().to_array();
        let total: f64 = g.iter().sum();
        let pc = |a: f64, m: u32| poch(C::new(a, 0.0), m).re;
        let mut num = pc(1.0, lambda);
        for r in 0..4 {
            for s in r + 1..4 {
                num *= pc(g[r] + g[s], lambda);
            }
        }
        Ok(num / (pc(total + f64::from(lambda) - 1.0, lambda) * pc(total, 2 * lambda)))
    }

    /// `⟨1,1⟩^R` for `n = 1` as a product.
    pub fn racah_one_one(rp: &RacahParams) -> Result<f64> {
        require_rank_one(rp.rank())?;
        let g = rp.by_role();
        let m = rp.level();
        let pc = |a: f64| poch(C::new(a, 0.0), m).re;
        Ok(pc(1.0 + 2.0 * g.a) * pc(1.0 - g.c - g.d) / (pc(1.0 + g.a - g.c) * pc(1.0 + g.a - g.d)))
    }
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

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn zero_weight_is_one() {
        let p = config_a();
        let (plus, minus) = c_pair(&Weight::zero(2), &p).unwrap();
        assert_eq!((plus, minus), (ONE, ONE));
        assert_eq!(delta(&Weight::zero(2), &p).unwrap(), ONE);
    }

    #[test]
    fn trig_path_matches_q_path() {
        let p = config_a();
        for nu in crate::weights::enumerate_alcove(2, 4) {
            let (plus, minus) = c_pair(&nu, &p).unwrap();
            let (tp, tm) = c_pair_trig(&nu, &p).unwrap();
            assert!(rel(plus, C::new(tp, 0.0)) < 1e-12, "{nu}");
            assert!(rel(minus, C::new(tm, 0.0)) < 1e-12, "{nu}");
        }
    }

    #[test]
    fn weight_vanishes_outside_alcove() {
        let p = config_a();
        let out = Weight::new(vec![5, 2]).unwrap();
        assert_eq!(delta(&out, &p).unwrap(), C::new(0.0, 0.0));
        assert!(c_plus(&out, &p).is_err());
        // Numerator and denominator can both vanish here; either way no finite nonzero weight.
        assert!(delta_unclamped(&out, &p).map_or(true, |d| d.norm() < 1e-12));
    }

    #[test]
    fn one_variable_c_minus_at_one() {
        let src = TrigSource { alpha: PI / 6.3, coupling: 0.0, exponents: RoleQuad::new(0.7, 0.6, 0.3, -0.2) };
        let p = ParamSet::from_trig(src, 1, 5, Roles::default()).unwrap();
        let q = p.q();
        let ta = p.by_role().a;
        let mut expect = c0(&Weight::new(vec![1]).unwrap(), &p);
        for tr in p.slots() {
            expect *= ONE - q * ta / tr;
        }
        expect /= (ONE - q * ta * ta) * (ONE - q * q * ta * ta);
        assert!(rel(c_minus(&Weight::new(vec![1]).unwrap(), &p).unwrap(), expect) < 1e-14);
    }

    #[test]
    fn table_is_positive_in_domain() {
        let t = WeightTable::build(&config_a()).unwrap();
        assert_eq!(t.len(), 15);
        for v in t.delta.iter().chain(&t.delta_hat).chain(&t.norm_ratio) {
            assert!(v.re > 0.0 && v.im.abs() < 1e-12 * v.norm());
        }
        assert!(rel(t.delta_hat[0], ONE) < 1e-15);
    }

    #[test]
    fn racah_one_variable_products() {
        let rp = RacahParams::truncated(1, 4, 0.0, 0.3, 0.15, 0.2).unwrap();
        let t = WeightTable::build_racah(&rp).unwrap();
        for (i, nu) in t.alcove.weights().iter().enumerate() {
            let w = closed_form::racah_weight(nu.parts()[0], &rp).unwrap();
            assert!((t.delta[i].re - w).abs() < 1e-12 * w.abs());
        }
        let one = closed_form::racah_one_one(&rp).unwrap();
        assert!((t.one_one.re - one).abs() < 1e-11 * one.abs());
    }
}
