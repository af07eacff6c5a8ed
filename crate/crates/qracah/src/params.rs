//! Parameter sets, the truncation condition, the trigonometric
//! parametrization and dual parameters.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C;

use crate::weights::Weight;
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Four values labelled by role rather than by slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoleQuad<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Copy> RoleQuad<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        RoleQuad { a, b, c, d }
    }

    pub fn to_array(self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(v: [T; 4]) -> Self {
        RoleQuad { a: v[0], b: v[1], c: v[2], d: v[3] }
    }

    pub fn map<U: Copy>(self, f: impl Fn(T) -> U) -> RoleQuad<U> {
        RoleQuad { a: f(self.a), b: f(self.b), c: f(self.c), d: f(self.d) }
    }
}

/// Which of the four slots `t_0..t_3` play the roles a, b, c, d.
///
/// Only a and b are chosen; c and d take the remaining slots in increasing
/// order. The polynomials are symmetric in the four slots, but the grid and
/// the weights are not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Roles {
    slots: [usize; 4],
}

impl Roles {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a > 3 || b > 3 || a == b {
            return Err(Error::InvalidInput(format!("roles need distinct slots in 0..4, got a={a}, b={b}")));
        }
        let mut rest = (0..4).filter(|&s| s != a && s != b);
        let c = rest.next().unwrap();
        let d = rest.next().unwrap();
        Ok(Roles { slots: [a, b, c, d] })
    }

    /// Slot of each role, in role order a, b, c, d.
    pub fn slots(&self) -> [usize; 4] {
        self.slots
    }

    pub fn pick<T: Copy>(&self, by_slot: &[T; 4]) -> RoleQuad<T> {
        RoleQuad::from_array(self.slots.map(|s| by_slot[s]))
    }

    pub fn place<T: Copy + Default>(&self, by_role: RoleQuad<T>) -> [T; 4] {
        let mut out = [T::default(); 4];
        for (role, v) in by_role.to_array().into_iter().enumerate() {
            out[self.slots[role]] = v;
        }
        out
    }
}

impl Default for Roles {
    fn default() -> Self {
        Roles { slots: [0, 1, 2, 3] }
    }
}

/// Real exponents of the trigonometric parametrization
/// `q = e^{iα}`, `t = e^{iαg}`, `t_a = e^{iαg_a}`, `t_b = -e^{iαg_b}`,
/// `t_c = e^{iα(g_c+1/2)}`, `t_d = -e^{iα(g_d+1/2)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigSource {
    pub alpha: f64,
    pub coupling: f64,
    pub exponents: RoleQuad<f64>,
}

/// `(1/2) H g` with `H` the symmetric ±1 matrix; an involution.
pub(crate) fn half_hadamard(g: RoleQuad<f64>) -> RoleQuad<f64> {
    RoleQuad {
        a: 0.5 * (g.a + g.b + g.c + g.d),
        b: 0.5 * (g.a + g.b - g.c - g.d),
        c: 0.5 * (g.a - g.b + g.c - g.d),
        d: 0.5 * (g.a - g.b - g.c + g.d),
    }
}

impl TrigSource {
    pub fn dual(&self) -> TrigSource {
        TrigSource { exponents: half_hadamard(self.exponents), ..*self }
    }

    /// `(n-1)g + g_a + g_b + N`; equals `π/α` under truncation.
    pub fn period(&self, n: usize, big_n: u32) -> f64 {
        (n as f64 - 1.0) * self.coupling + self.exponents.a + self.exponents.b + f64::from(big_n)
    }

    /// `ρ_j = (n-j)g + g_a`.
    pub fn log_origin(&self, n: usize) -> Vec<f64> {
        (0..n).map(|j| (n - 1 - j) as f64 * self.coupling + self.exponents.a).collect()
    }

    pub fn is_self_dual(&self, tol: f64) -> bool {
        let e = self.exponents;
        (e.a - e.b - e.c - e.d).abs() <= tol
    }

    fn slot_values(&self) -> RoleQuad<C> {
        let e = self.exponents;
        let u = |x: f64| C::from_polar(1.0, self.alpha * x);
        RoleQuad { a: u(e.a), b: -u(e.b), c: u(e.c + 0.5), d: -u(e.d + 0.5) }
    }
}

/// Integer combination of `g, g_a, g_b, g_c, g_d` and `1/2`.
///
/// Kernel arguments are built from these so that factors which vanish
/// identically on the truncated grid are recognized exactly, independent of
/// accidental coincidences (such as `g_b = 1/2`) that make a denominator
/// vanish at the same point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct LinearForm([i32; 6]);

impl LinearForm {
    pub const ZERO: LinearForm = LinearForm([0; 6]);

    pub fn coupling(k: i32) -> Self {
        LinearForm([k, 0, 0, 0, 0, 0])
    }

    /// `k` times the exponent of role `role` (0 = a, .., 3 = d).
    pub fn role(role: usize, k: i32) -> Self {
        let mut c = [0; 6];
        c[1 + role] = k;
        LinearForm(c)
    }

    pub fn halves(k: i32) -> Self {
        LinearForm([0, 0, 0, 0, 0, k])
    }

    pub fn integer(k: i32) -> Self {
        Self::halves(2 * k)
    }

    /// Grid coordinate `ρ_j + ν_j`, `j` zero-based.
    pub fn grid(n: usize, j: usize, nu_j: i32) -> Self {
        Self::coupling((n - 1 - j) as i32) + Self::role(0, 1) + Self::integer(nu_j)
    }

    /// `(n-1)g + g_a + g_b + N`.
    pub fn period(n: usize, big_n: u32) -> Self {
        Self::coupling(n as i32 - 1) + Self::role(0, 1) + Self::role(1, 1) + Self::integer(big_n as i32)
    }

    pub fn eval(&self, coupling: f64, e: &RoleQuad<f64>) -> f64 {
        let c = self.0;
        f64::from(c[0]) * coupling
            + f64::from(c[1]) * e.a
            + f64::from(c[2]) * e.b
            + f64::from(c[3]) * e.c
            + f64::from(c[4]) * e.d
            + 0.5 * f64::from(c[5])
    }

    /// `Some(k)` when `self == k * period` identically.
    pub fn multiple_of(&self, period: &LinearForm) -> Option<i32> {
        let anchor = period.0[1];
        debug_assert!(anchor == 1, "period must have unit role-a coefficient");
        let k = self.0[1];
        (*period * k == *self).then_some(k)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, o: LinearForm) -> LinearForm {
        LinearForm(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, o: LinearForm) -> LinearForm {
        LinearForm(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm(self.0.map(|x| -x))
    }
}

impl Mul<i32> for LinearForm {
    type Output = LinearForm;
    fn mul(self, k: i32) -> LinearForm {
        LinearForm(self.0.map(|x| x * k))
    }
}

/// The base `q`, the coupling `t`, four boundary parameters and the
/// alcove size.
#[derive(Clone, Debug)]
pub struct ParamSet {
    n: usize,
    big_n: u32,
    q: C,
    t: C,
    slots: [C; 4],
    roles: Roles,
    trig: Option<TrigSource>,
    // The one square root needed anywhere: (t0 t1 t2 t3 / q)^{1/2}. Fixed by
    // the trig source when there is one, principal otherwise.
    dual_root: C,
    tolerance: f64,
}

impl ParamSet {
    pub fn generic(n: usize, big_n: u32, q: C, t: C, slots: [C; 4], roles: Roles) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be positive".into()));
        }
        if slots.iter().chain([&q, &t]).any(|z| !z.is_finite() || z.norm() == 0.0) {
            return Err(Error::InvalidInput("parameters must be finite and nonzero".into()));
        }
        let dual_root = (slots.iter().product::<C>() / q).sqrt();
        Ok(ParamSet { n, big_n, q, t, slots, roles, trig: None, dual_root, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn from_trig(source: TrigSource, n: usize, big_n: u32, roles: Roles) -> Result<Self> {
        if !(source.alpha > 0.0) {
            return Err(Error::InvalidInput(format!("alpha must be positive, got {}", source.alpha)));
        }
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be positive".into()));
        }
        let q = C::from_polar(1.0, source.alpha);
        let t = C::from_polar(1.0, source.alpha * source.coupling);
        let slots = roles.place(source.slot_values());
        let dual_root = C::from_polar(1.0, source.alpha * half_hadamard(source.exponents).a);
        Ok(ParamSet { n, big_n, q, t, slots, roles, trig: Some(source), dual_root, tolerance: DEFAULT_TOLERANCE })
    }

    /// Trig parameters with `α` fixed by `(n-1)g + g_a + g_b + N = π/α`.
    pub fn truncated_trig(coupling: f64, exponents: RoleQuad<f64>, n: usize, big_n: u32) -> Result<Self> {
        let mut source = TrigSource { alpha: 1.0, coupling, exponents };
        let period = source.period(n, big_n);
        if !(period > 0.0) {
            return Err(Error::InvalidInput(format!("(n-1)g + g_a + g_b + N = {period} must be positive")));
        }
        source.alpha = PI / period;
        Self::from_trig(source, n, big_n, Roles::default())
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.big_n
    }

    pub fn q(&self) -> C {
        self.q
    }

    pub fn t(&self) -> C {
        self.t
    }

    pub fn slots(&self) -> [C; 4] {
        self.slots
    }

    pub fn roles(&self) -> Roles {
        self.roles
    }

    pub fn by_role(&self) -> RoleQuad<C> {
        self.roles.pick(&self.slots)
    }

    pub fn trig(&self) -> Option<&TrigSource> {
        self.trig.as_ref()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The chosen value of `(t_0 t_1 t_2 t_3 / q)^{1/2}`.
    pub fn dual_root(&self) -> C {
        self.dual_root
    }

    /// `|t_a t_b t^{n-1} q^N - 1|`.
    pub fn truncation_residual(&self) -> f64 {
        let r = self.by_role();
        (r.a * r.b * self.t.powu(self.n as u32 - 1) * self.q.powu(self.big_n) - 1.0).norm()
    }

    pub fn require_truncated(&self) -> Result<()> {
        let res = self.truncation_residual();
        if res > self.tolerance {
            return Err(Error::InvalidInput(format!(
                "truncation residual {res:.3e} exceeds tolerance {:.1e}",
                self.tolerance
            )));
        }
        Ok(())
    }

    /// `τ_j = t^{n-j} t_a`.
    pub fn origin(&self) -> Vec<C> {
        let ta = self.by_role().a;
        (0..self.n).map(|j| self.t.powu((self.n - 1 - j) as u32) * ta).collect()
    }

    /// `ρ_j` when a trig source exists.
    pub fn log_origin(&self) -> Option<Vec<f64>> {
        self.trig.map(|s| s.log_origin(self.n))
    }

    /// `τ q^ν`.
    pub fn grid_point(&self, nu: &Weight) -> Vec<C> {
        self.origin().into_iter().zip(nu.parts()).map(|(o, &k)| o * self.q.powu(k)).collect()
    }

    /// Positivity domain of the trig parametrization.
    pub fn in_positivity_domain(&self) -> Result<bool> {
        let s = self.trig.ok_or_else(|| Error::Unsupported("positivity domain needs a trig source".into()))?;
        Ok(positivity_predicate(&s, self.n, self.big_n, self.tolerance))
    }

    pub fn is_self_dual(&self) -> bool {
        let r = self.by_role();
        (r.a * self.q - r.b * r.c * r.d).norm() <= self.tolerance * (r.a * self.q).norm().max(1.0)
    }

    pub fn dual_view(&self) -> DualView {
        DualView::new(self)
    }

    /// The dual parameter set, whose grid is `τ̂ q^λ`.
    ///
    /// Built from the chosen root, so that every dual product agrees with the
    /// rational combinations in [`DualView`] and the dual of the dual gives
    /// back `self`.
    pub fn dual(&self) -> ParamSet {
        if let Some(s) = self.trig {
            let mut out = ParamSet::from_trig(s.dual(), self.n, self.big_n, self.roles)
                .expect("dual of a valid trig source is valid");
            out.tolerance = self.tolerance;
            return out;
        }
        let r = self.by_role();
        let root = self.dual_root;
        let q = self.q;
        let hat = RoleQuad {
            a: root,
            b: root * q / (r.c * r.d),
            c: root * q / (r.b * r.d),
            d: root * q / (r.b * r.c),
        };
        ParamSet {
            n: self.n,
            big_n: self.big_n,
            q,
            t: self.t,
            slots: self.roles.place(hat),
            roles: self.roles,
            trig: None,
            dual_root: r.a,
            tolerance: self.tolerance,
        }
    }

    /// Stable text form, used to fingerprint reports.
    pub fn canonical(&self) -> String {
        let z = |c: C| format!("{:.17e},{:.17e}", c.re, c.im);
        let mut s = format!(
            "n={};N={};q={};t={};slots={}|{}|{}|{};roles={:?}",
            self.n,
            self.big_n,
            z(self.q),
            z(self.t),
            z(self.slots[0]),
            z(self.slots[1]),
            z(self.slots[2]),
            z(self.slots[3]),
            self.roles.slots
        );
        if let Some(t) = self.trig {
            s.push_str(&format!(
                ";alpha={:.17e};g={:.17e};e={:?}",
                t.alpha,
                t.coupling,
                t.exponents.to_array()
            ));
        }
        s
    }
}

pub(crate) fn positivity_predicate(s: &TrigSource, n: usize, big_n: u32, tol: f64) -> bool {
    let e = s.exponents;
    let bound = PI / s.alpha;
    s.alpha > 0.0
        && s.coupling >= 0.0
        && (0.0..bound).contains(&e.a)
        && (0.0..bound).contains(&e.b)
        && e.c.abs() <= e.a
        && e.d.abs() <= e.b
        && (s.period(n, big_n) - bound).abs() <= tol * bound.max(1.0)
}

/// Dual-parameter combinations, each computed as a rational expression in
/// the original parameters.
#[derive(Clone, Debug)]
pub struct DualView {
    /// `τ_j`.
    pub origin: Vec<C>,
    /// `τ̂_j τ̂_k`.
    pub origin_products: Vec<Vec<C>>,
    /// `τ̂_j / τ̂_k`.
    pub origin_ratios: Vec<Vec<C>>,
    /// `τ̂_j²`.
    pub origin_squares: Vec<C>,
    /// `t̂_a t̂_r` per role.
    pub pair_products: RoleQuad<C>,
    /// `t̂_a / t̂_r` per role.
    pub pair_ratios: RoleQuad<C>,
    /// `t̂_r τ̂_j`, indexed `[role][j]`.
    pub boundary_times_origin: [Vec<C>; 4],
    /// `q τ̂_j / t̂_r`, indexed `[role][j]`.
    pub shifted_origin_over_boundary: [Vec<C>; 4],
    pub trig: Option<TrigSource>,
    pub log_origin: Option<Vec<f64>>,
}

impl DualView {
    pub fn new(p: &ParamSet) -> Self {
        let n = p.n;
        let (q, t) = (p.q, p.t);
        let r = p.by_role();
        let hat_sq = r.a * r.b * r.c * r.d / q;
        let pair_products = RoleQuad { a: hat_sq, b: r.a * r.b, c: r.a * r.c, d: r.a * r.d };
        let pair_ratios = RoleQuad { a: C::new(1.0, 0.0), b: r.c * r.d / q, c: r.b * r.d / q, d: r.b * r.c / q };
        let tp = |k: i32| t.powi(k);
        let e = |j: usize| (n - 1 - j) as i32;
        let origin_products = (0..n).map(|j| (0..n).map(|k| tp(e(j) + e(k)) * hat_sq).collect()).collect();
        let origin_ratios = (0..n).map(|j| (0..n).map(|k| tp(e(j) - e(k))).collect()).collect();
        let origin_squares = (0..n).map(|j| tp(2 * e(j)) * hat_sq).collect();
        let prods = pair_products.to_array();
        let ratios = pair_ratios.to_array();
        let boundary_times_origin = std::array::from_fn(|role| (0..n).map(|j| tp(e(j)) * prods[role]).collect());
        let shifted_origin_over_boundary =
            std::array::from_fn(|role| (0..n).map(|j| q * tp(e(j)) * ratios[role]).collect());
        let trig = p.trig.map(|s| s.dual());
        DualView {
            origin: p.origin(),
            origin_products,
            origin_ratios,
            origin_squares,
            pair_products,
            pair_ratios,
            boundary_times_origin,
            shifted_origin_over_boundary,
            log_origin: trig.map(|s| s.log_origin(n)),
            trig,
        }
    }
}

/// Parameters of the Racah (`q -> 1`) theory: `t = q^g`, `t_r = q^{g_r}`.
#[derive(Clone, Debug)]
pub struct RacahParams {
    n: usize,
    big_n: u32,
    coupling: f64,
    exponents: RoleQuad<f64>,
    tolerance: f64,
}

impl RacahParams {
    pub fn new(n: usize, big_n: u32, coupling: f64, exponents: RoleQuad<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be positive".into()));
        }
        Ok(RacahParams { n, big_n, coupling, exponents, tolerance: DEFAULT_TOLERANCE })
    }

    /// Fixes `g_b` from `(n-1)g + g_a + g_b + N = 0`.
    pub fn truncated(n: usize, big_n: u32, coupling: f64, a: f64, c: f64, d: f64) -> Result<Self> {
        let b = -a - f64::from(big_n) - (n as f64 - 1.0) * coupling;
        Self::new(n, big_n, coupling, RoleQuad { a, b, c, d })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.big_n
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn by_role(&self) -> RoleQuad<f64> {
        self.exponents
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn truncation_residual(&self) -> f64 {
        ((self.n as f64 - 1.0) * self.coupling + self.exponents.a + self.exponents.b + f64::from(self.big_n)).abs()
    }

    pub fn require_truncated(&self) -> Result<()> {
        let res = self.truncation_residual();
        if res > self.tolerance {
            return Err(Error::InvalidInput(format!("Racah truncation residual {res:.3e} exceeds tolerance")));
        }
        Ok(())
    }

    /// `ρ_j = (n-j)g + g_a`.
    pub fn log_origin(&self) -> Vec<f64> {
        (0..self.n).map(|j| (self.n - 1 - j) as f64 * self.coupling + self.exponents.a).collect()
    }

    /// `ρ̂_j = (n-j)g + (g_0+g_1+g_2+g_3-1)/2`.
    pub fn dual_log_origin(&self) -> Vec<f64> {
        self.dual().log_origin()
    }

    /// `ĝ = (1/2) H g + (1/2)(-1, 1, 1, 1)`; an involution.
    pub fn dual(&self) -> RacahParams {
        let h = half_hadamard(self.exponents);
        RacahParams {
            exponents: RoleQuad { a: h.a - 0.5, b: h.b + 0.5, c: h.c + 0.5, d: h.d + 0.5 },
            ..self.clone()
        }
    }

    /// `ρ + ν`.
    pub fn grid_point(&self, nu: &Weight) -> Vec<C> {
        self.log_origin().into_iter().zip(nu.parts()).map(|(r, &k)| C::new(r + f64::from(k), 0.0)).collect()
    }

    /// The q-parameters with `q = e^{s}`, `t = q^g`, `t_r = q^{g_r}`.
    pub fn lift(&self, log_q: C) -> Result<ParamSet> {
        let q = log_q.exp();
        let pw = |x: f64| (log_q * x).exp();
        let slots = Roles::default().place(self.exponents.map(pw));
        ParamSet::generic(self.n, self.big_n, q, pw(self.coupling), slots, Roles::default())
            .map(|p| p.with_tolerance(self.tolerance.max(1e-10)))
    }

    pub fn canonical(&self) -> String {
        format!(
            "racah;n={};N={};g={:.17e};e={:?}",
            self.n,
            self.big_n,
            self.coupling,
            self.exponents.to_array()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_a() -> ParamSet {
        let src = TrigSource { alpha: PI / 5.2, coupling: 0.3, exponents: RoleQuad::new(0.5, 0.4, 0.2, 0.1) };
        ParamSet::from_trig(src, 2, 4, Roles::default()).unwrap()
    }

    #[test]
    fn trig_construction_truncates() {
        let p = config_a();
        assert!((p.q().norm() - 1.0).abs() < 1e-15);
        assert!(p.truncation_residual() < 1e-14);
        assert!(p.in_positivity_domain().unwrap());
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        let src = TrigSource { alpha: 0.0, coupling: 0.3, exponents: RoleQuad::new(0.5, 0.4, 0.2, 0.1) };
        assert!(ParamSet::from_trig(src, 2, 4, Roles::default()).is_err());
    }

    #[test]
    fn positivity_domain_edges() {
        let p = config_a();
        let mut s = *p.trig().unwrap();
        s.exponents.c = s.exponents.a + 0.1;
        assert!(!positivity_predicate(&s, 2, 4, 1e-12));
        let mut s = *p.trig().unwrap();
        s.alpha = PI / 5.7;
        assert!(!positivity_predicate(&s, 2, 4, 1e-12));
        let dual = p.trig().unwrap().dual();
        assert!(positivity_predicate(&dual, 2, 4, 1e-12));
    }

    #[test]
    fn dual_pairs_are_rational() {
        let p = config_a();
        let v = p.dual_view();
        let r = p.by_role();
        assert!((v.pair_products.b - r.a * r.b).norm() < 1e-15);
        let d = p.dual().by_role();
        assert!((d.a * d.b - r.a * r.b).norm() < 1e-14);
        assert!((d.a * d.c - v.pair_products.c).norm() < 1e-14);
        assert!((d.a / d.d - v.pair_ratios.d).norm() < 1e-14);
        assert!(p.dual().truncation_residual() < 1e-13);
    }

    #[test]
    fn generic_dual_is_an_involution() {
        let slots = [C::new(0.3, 0.2), C::new(-0.5, 0.1), C::new(0.7, -0.4), C::new(0.2, 0.9)];
        let p = ParamSet::generic(2, 3, C::new(0.6, 0.3), C::new(0.8, -0.1), slots, Roles::new(2, 0).unwrap())
            .unwrap();
        let back = p.dual().dual();
        for (x, y) in back.slots().iter().zip(p.slots()) {
            assert!((x - y).norm() < 1e-14);
        }
        assert!((back.dual_root() - p.dual_root()).norm() < 1e-14);
    }

    #[test]
    fn trig_dual_is_an_involution() {
        let s = config_a().trig().copied().unwrap();
        let back = s.dual().dual();
        for (x, y) in back.exponents.to_array().iter().zip(s.exponents.to_array()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn racah_dual_is_an_involution() {
        let rp = RacahParams::truncated(2, 3, 0.4, 0.3, 0.15, 0.2).unwrap();
        assert!(rp.truncation_residual() < 1e-15);
        let back = rp.dual().dual();
        for (x, y) in back.by_role().to_array().iter().zip(rp.by_role().to_array()) {
            assert!((x - y).abs() < 1e-15);
        }
        let one = RacahParams::truncated(1, 4, 0.0, 0.3, 0.1, 0.2).unwrap();
        assert_eq!(one.log_origin(), vec![0.3]);
    }

    #[test]
    fn linear_form_period_detection() {
        let n = 2;
        let period = LinearForm::period(n, 4);
        // b-exponent plus the top grid coordinate at ν₁ = N
        let arg = LinearForm::role(1, 1) + LinearForm::grid(n, 0, 4);
        assert_eq!(arg.multiple_of(&period), Some(1));
        assert_eq!(LinearForm::halves(1).multiple_of(&period), None);
        assert_eq!(LinearForm::ZERO.multiple_of(&period), Some(0));
    }

    #[test]
    fn roles_fill_remaining_slots() {
        let r = Roles::new(2, 0).unwrap();
        assert_eq!(r.slots(), [2, 0, 1, 3]);
        assert!(Roles::new(1, 1).is_err());
    }
}
