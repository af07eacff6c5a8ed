//! Named residual checks run by `verify`.

use std::sync::OnceLock;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Model, RunConfig};
use super::report::SuiteResult;
use crate::cfunctions::closed_form;
use crate::operators::{apply_d, boundary_vanishing, flip_residual, PieriContext};
use crate::params::{ParamSet, RacahParams};
use crate::polynomials::limit::{closed_form_deviation, limit_check};
use crate::polynomials::macdonald::{build_p_macdonald, SpanOperator};
use crate::polynomials::racah::eigen_residual;
use crate::polynomials::{eval_monomial, inner_product, Family, SymPoly};
use crate::special::phi43_monic_aw;
use crate::system::{RacahSystem, System};
use crate::transform::{build_k, build_k_racah, diagonalization_report, forward, inverse, round_trip_residual};
use crate::weights::Weight;
use crate::{Error, Result};

/// Suites for q-parameter sets, with default tolerances.
pub const Q_SUITES: &[(&str, f64)] = &[
    ("closed-form-weights", 1e-13),
    ("closed-forms", 1e-11),
    ("gram", 1e-9),
    ("norms", 1e-9),
    ("evaluation", 1e-10),
    ("duality", 1e-9),
    ("dual-invariance", 1e-12),
    ("orthogonal", 1e-8),
    ("round-trip", 1e-9),
    ("diagonalization", 1e-7),
    ("symmetric-kernel", 1e-9),
    ("involution", 1e-8),
    ("flip", 1e-12),
    ("vanishing", 1e-12),
    ("symmetry", 1e-11),
    ("pieri", 1e-9),
    ("norm-recurrence", 1e-9),
    ("macdonald", 1e-8),
    ("interpolation", 1e-9),
    ("triangularity", 1e-8),
    ("exterior", 1e-7),
    ("positivity", 1e-12),
];

/// Suites for Racah parameter sets.
pub const RACAH_SUITES: &[(&str, f64)] = &[
    ("racah-closed-forms", 1e-11),
    ("racah-gram", 1e-9),
    ("racah-norms", 1e-9),
    ("racah-evaluation", 1e-10),
    ("racah-duality", 1e-9),
    ("racah-orthogonal", 1e-8),
    ("racah-eigen", 1e-9),
    ("limit", 1e-2),
];

const LIMIT_STEPS: [f64; 3] = [1e-1, 5e-2, 2.5e-2];
const LIMIT_FINE_STEP: f64 = 1e-3;
const SYMMETRY_PAIRS: usize = 20;

fn not_applicable(why: &str) -> Error {
    Error::Unsupported(format!("suite not applicable: {why}"))
}

type Shared<T> = OnceLock<std::result::Result<T, String>>;

fn shared<T>(cell: &Shared<T>, build: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(|| build().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::NonGeneric(e.clone()))
}

/// Lazily built state shared by the suites of one run.
pub struct SuiteContext<'a> {
    config: &'a RunConfig,
    system: Shared<System>,
    racah: Shared<RacahSystem>,
    macdonald: Shared<Vec<(SymPoly, SpanOperator)>>,
}

impl<'a> SuiteContext<'a> {
    pub fn new(config: &'a RunConfig) -> Self {
        SuiteContext { config, system: OnceLock::new(), racah: OnceLock::new(), macdonald: OnceLock::new() }
    }

    fn params(&self) -> Result<&ParamSet> {
        match &self.config.model {
            Model::Q(p) => Ok(p),
            Model::Racah(_) => Err(not_applicable("needs q-parameters")),
        }
    }

    fn racah_params(&self) -> Result<&RacahParams> {
        match &self.config.model {
            Model::Racah(rp) => Ok(rp),
            Model::Q(_) => Err(not_applicable("needs Racah parameters")),
        }
    }

    pub fn system(&self) -> Result<&System> {
        let p = self.params()?;
        shared(&self.system, || System::build(p))
    }

    pub fn racah_system(&self) -> Result<&RacahSystem> {
        let rp = self.racah_params()?;
        shared(&self.racah, || RacahSystem::build(rp))
    }

    fn macdonald(&self) -> Result<&Vec<(SymPoly, SpanOperator)>> {
        let p = self.params()?;
        let seed = self.config.seed;
        shared(&self.macdonald, || {
            let alcove = crate::weights::Alcove::new(p.rank(), p.level());
            alcove.weights().iter().enumerate().map(|(i, l)| build_p_macdonald(l, p, seed.wrapping_add(i as u64))).collect()
        })
    }

    /// Suites applicable to the configured model.
    pub fn default_suites(&self) -> Vec<&'static str> {
        match &self.config.model {
            Model::Racah(rp) => RACAH_SUITES
                .iter()
                .map(|s| s.0)
                .filter(|s| rp.rank() == 1 || *s != "racah-closed-forms")
                .collect(),
            Model::Q(p) => Q_SUITES
                .iter()
                .map(|s| s.0)
                .filter(|s| match *s {
                    "closed-form-weights" | "closed-forms" => p.rank() == 1,
                    "diagonalization" => p.trig().is_some(),
                    "symmetric-kernel" | "involution" => p.is_self_dual(),
                    "pieri" => p.trig().is_some() || p.is_self_dual(),
                    "positivity" => p.trig().is_some(),
                    _ => true,
                })
                .collect(),
        }
    }

    pub fn run(&self, name: &str) -> Result<SuiteResult> {
        let default = Q_SUITES
            .iter()
            .chain(RACAH_SUITES)
            .find(|s| s.0 == name)
            .map(|s| s.1)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {name:?}")))?;
        let tolerance = self.config.tolerance.unwrap_or(default);
        let (max_residual, error) = match self.residual(name) {
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        Ok(SuiteResult { suite: name.to_string(), max_residual, tolerance, error })
    }

    fn residual(&self, name: &str) -> Result<f64> {
        match name {
            "closed-form-weights" => self.closed_form_weights(),
            "closed-forms" => self.closed_forms(),
            "gram" => Ok(gram_residual(&self.system()?.family, &self.system()?.table.delta)?),
            "norms" => {
                let s = self.system()?;
                norms_residual(&s.family, &s.table.norm_ratio, s.table.one_one)
            }
            "evaluation" => Ok(self.system()?.origin_residual()),
            "duality" => Ok(self.system()?.duality_residual()),
            "dual-invariance" => {
                let t = &self.system()?.table;
                let dual: C = t.delta_hat.iter().sum();
                Ok((dual - t.one_one).norm() / t.one_one.norm())
            }
            "orthogonal" => Ok(build_k(self.system()?).orthogonality_residual()),
            "round-trip" => {
                let s = self.system()?;
                Ok(round_trip_residual(&forward(s), &inverse(s)))
            }
            "diagonalization" => {
                let s = self.system()?;
                let mut worst = 0.0f64;
                for r in 1..=s.params.rank() {
                    worst = worst.max(diagonalization_report(s, r)?.into_iter().fold(0.0, f64::max));
                }
                Ok(worst)
            }
            "symmetric-kernel" => {
                self.require_self_dual()?;
                Ok(build_k(self.system()?).asymmetry())
            }
            "involution" => {
                self.require_self_dual()?;
                let fwd = forward(self.system()?);
                Ok(round_trip_residual(&fwd, &fwd))
            }
            "flip" => self.flip(),
            "vanishing" => {
                let (worst, scale) = boundary_vanishing(self.params()?)?;
                Ok(worst / scale)
            }
            "symmetry" => self.symmetry(),
            "pieri" => self.pieri(),
            "norm-recurrence" => self.norm_recurrence(),
            "macdonald" => self.macdonald_agreement(),
            "interpolation" => {
                let p = self.params()?;
                Ok(self.macdonald()?.iter().map(|(_, op)| op.diagonal_residual(p)).fold(0.0, f64::max))
            }
            "triangularity" => Ok(self.macdonald()?.iter().map(|(_, op)| op.triangularity_residual()).fold(0.0, f64::max)),
            "exterior" => self.exterior(),
            "positivity" => self.positivity(),
            "racah-closed-forms" => self.racah_closed_forms(),
            "racah-gram" => {
                let s = self.racah_system()?;
                gram_residual(&s.family, &s.table.delta)
            }
            "racah-norms" => {
                let s = self.racah_system()?;
                Ok(relative_norms_residual(&s.family, &s.table.norm_ratio, s.table.one_one))
            }
            "racah-evaluation" => {
                Ok(self.racah_system()?.big_p.iter().map(|v| (v[0] - 1.0).norm()).fold(0.0, f64::max))
            }
            "racah-duality" => {
                let s = self.racah_system()?;
                let top = s.big_p.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
                Ok(s.duality_residual() / top)
            }
            "racah-orthogonal" => Ok(build_k_racah(self.racah_system()?).orthogonality_residual()),
            "racah-eigen" => eigen_residual(&self.racah_system()?.family, self.racah_params()?),
            "limit" => self.limit(),
            other => Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        }
    }

    fn require_self_dual(&self) -> Result<()> {
        if self.params()?.is_self_dual() {
            Ok(())
        } else {
            Err(not_applicable("parameters are not self-dual"))
        }
    }

    fn closed_form_weights(&self) -> Result<f64> {
        let p = self.params()?;
        if p.rank() != 1 {
            return Err(not_applicable("closed forms need n = 1"));
        }
        let t = &self.system()?.table;
        let mut worst = 0.0f64;
        for (nu, d) in t.alcove.weights().iter().zip(&t.delta) {
            let c = closed_form::weight(nu.parts()[0], p)?;
            worst = worst.max((c - d).norm() / c.norm());
        }
        Ok(worst)
    }

    fn closed_forms(&self) -> Result<f64> {
        let p = self.params()?;
        if p.rank() != 1 {
            return Err(not_applicable("closed forms need n = 1"));
        }
        let t = &self.system()?.table;
        let mut worst = 0.0f64;
        for (nu, r) in t.alcove.weights().iter().zip(&t.norm_ratio) {
            let c = closed_form::norm_ratio(nu.parts()[0], p)?;
            worst = worst.max((c - r).norm() / c.norm());
        }
        let one = closed_form::one_one(p)?;
        Ok(worst.max((one - t.one_one).norm() / one.norm()))
    }

    fn racah_closed_forms(&self) -> Result<f64> {
        let rp = self.racah_params()?;
        if rp.rank() != 1 {
            return Err(not_applicable("closed forms need n = 1"));
        }
        let t = &self.racah_system()?.table;
        let mut worst = 0.0f64;
        for (i, nu) in t.alcove.weights().iter().enumerate() {
            let k = nu.parts()[0];
            let w = closed_form::racah_weight(k, rp)?;
            let r = closed_form::racah_norm_ratio(k, rp)?;
            worst = worst.max((t.delta[i].re - w).abs() / w.abs()).max((t.norm_ratio[i].re - r).abs() / r.abs());
        }
        let one = closed_form::racah_one_one(rp)?;
        Ok(worst.max((t.one_one.re - one).abs() / one.abs()))
    }

    fn flip(&self) -> Result<f64> {
        let p = self.params()?;
        let alcove = &self.system()?.table.alcove;
        let n = p.rank();
        let mut worst = 0.0f64;
        for nu in alcove.weights() {
            for j in 0..n {
                let mut d = vec![0; n];
                d[j] = 1;
                if alcove.shift_index(nu, &d).is_some() {
                    let (r, scale) = flip_residual(nu, j, 1, p)?;
                    if scale > 0.0 {
                        worst = worst.max(r.norm() / scale);
                    }
                }
            }
        }
        Ok(worst)
    }

    fn symmetry(&self) -> Result<f64> {
        let p = self.params()?;
        let delta = &self.system()?.table.delta;
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let mut random = |len: usize| -> Vec<C> {
            (0..len).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
        };
        let mut worst = 0.0f64;
        for _ in 0..SYMMETRY_PAIRS {
            let (f, g) = (random(delta.len()), random(delta.len()));
            let (df, dg) = (apply_d(&f, p)?, apply_d(&g, p)?);
            let lhs = inner_product(&df, &g, delta)?;
            let rhs = inner_product(&f, &dg, delta)?;
            let scale: f64 = df
                .iter()
                .zip(&g)
                .zip(delta)
                .map(|((a, b), w)| (a * b * w).norm())
                .chain(f.iter().zip(&dg).zip(delta).map(|((a, b), w)| (a * b * w).norm()))
                .sum();
            worst = worst.max((lhs - rhs).norm() / scale);
        }
        Ok(worst)
    }

    fn pieri(&self) -> Result<f64> {
        let p = self.params()?;
        let s = self.system()?;
        let ctx = PieriContext::new(p);
        let rational = p.is_self_dual();
        if !rational && p.trig().is_none() {
            return Err(not_applicable("rational Pieri coefficients are checked only for self-dual parameters"));
        }
        let mut worst = 0.0f64;
        for r in 1..=p.rank() {
            let m = if rational { ctx.coefficient_matrix(r)? } else { ctx.coefficient_matrix_trig(r)? };
            let (res, scale) = ctx.residual(r, &m, &s.big_p.values)?;
            worst = worst.max(res / scale);
        }
        Ok(worst)
    }

    fn norm_recurrence(&self) -> Result<f64> {
        let p = self.params()?;
        let s = self.system()?;
        let norms: Vec<C> =
            s.big_p.values.iter().map(|v| inner_product(v, v, &s.table.delta)).collect::<Result<_>>()?;
        let mut worst =
            crate::operators::pieri::norm_recurrence_residual(&norms, &s.table.delta_hat, s.table.one_one);
        let ctx = PieriContext::new(p);
        let n = p.rank();
        for lambda in s.table.alcove.weights() {
            for r in 1..=n {
                if lambda.add(&Weight::fundamental(n, r)).in_alcove(p.level()) {
                    worst = worst.max(ctx.raised_norm_residual(lambda, r, &norms)?);
                    let [a, b] = ctx.raise_residuals(lambda, r, &s.table.chat_plus, &s.table.chat_minus)?;
                    worst = worst.max(a).max(b);
                }
            }
        }
        Ok(worst)
    }

    fn macdonald_agreement(&self) -> Result<f64> {
        let s = self.system()?;
        let mut worst = 0.0f64;
        for ((poly, _), gs) in self.macdonald()?.iter().zip(&s.family.polys) {
            let top = gs.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
            for (mu, c) in poly.terms() {
                worst = worst.max((c - gs.coeff(mu)).norm() / top);
            }
            for (mu, c) in gs.terms() {
                worst = worst.max((c - poly.coeff(mu)).norm() / top);
            }
        }
        Ok(worst)
    }

    fn exterior(&self) -> Result<f64> {
        let p = self.params()?;
        let n = p.rank();
        let grid = crate::polynomials::grid_points(p);
        let mut parts = vec![0; n];
        parts[0] = p.level() + 1;
        let lambda = Weight::new(parts)?;
        if n == 1 {
            let mut worst = 0.0f64;
            let mut scale = 0.0f64;
            for z in &grid {
                worst = worst.max(phi43_monic_aw(p.level() + 1, z[0], p)?.norm());
                scale = scale.max(eval_monomial(&lambda, z)?.norm());
            }
            return Ok(worst / scale);
        }
        let (poly, _) = build_p_macdonald(&lambda, p, self.config.seed)?;
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for z in &grid {
            worst = worst.max(poly.eval(z)?.norm());
            let mut terms = 0.0;
            for (mu, c) in poly.terms() {
                terms += (c * eval_monomial(mu, z)?).norm();
            }
            scale = scale.max(terms);
        }
        Ok(worst / scale)
    }

    fn positivity(&self) -> Result<f64> {
        let p = self.params()?;
        let inside = p.in_positivity_domain()?;
        if inside != p.dual().in_positivity_domain()? {
            return Err(Error::NonGeneric("positivity predicate changes under duality".into()));
        }
        if !inside {
            return Err(not_applicable("parameters lie outside the positivity domain"));
        }
        let t = &self.system()?.table;
        let mut worst = 0.0f64;
        for z in t.delta.iter().chain(&t.delta_hat).chain(&t.norm_ratio) {
            if z.re <= 0.0 {
                return Ok(f64::INFINITY);
            }
            worst = worst.max(z.im.abs() / z.norm());
        }
        Ok(worst)
    }

    fn limit(&self) -> Result<f64> {
        let rp = self.racah_params()?;
        let report = limit_check(rp, &LIMIT_STEPS, 3)?;
        if !report.monotone() {
            return Err(Error::NonGeneric("limit deviations are not monotone".into()));
        }
        let e = rp.by_role();
        let single = RacahParams::truncated(1, rp.level(), rp.coupling(), e.a, e.c, e.d)?;
        let mut worst = 0.0f64;
        for lambda in 1..=rp.level().min(3) {
            let (dev, scale) = closed_form_deviation(lambda, &single, LIMIT_FINE_STEP)?;
            worst = worst.max(dev / scale);
        }
        Ok(worst)
    }
}

/// Largest off-diagonal Gram entry over the largest diagonal entry.
pub fn gram_residual(family: &Family, delta: &[C]) -> Result<f64> {
    let gram = family.gram(delta)?;
    let diag = (0..gram.len()).map(|i| gram[i][i].norm()).fold(0.0, f64::max);
    let mut off = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if i != k {
                off = off.max(x.norm());
            }
        }
    }
    Ok(off / diag)
}

/// `max_λ |⟨p_λ,p_λ⟩ - 𝒩(λ)⟨1,1⟩| / |⟨1,1⟩|`.
pub fn norms_residual(family: &Family, norm_ratio: &[C], one_one: C) -> Result<f64> {
    Ok(family
        .norms
        .iter()
        .zip(norm_ratio)
        .map(|(nrm, r)| (nrm - r * one_one).norm() / one_one.norm())
        .fold(0.0, f64::max))
}

/// `max_λ |⟨p_λ,p_λ⟩ - 𝒩(λ)⟨1,1⟩| / |𝒩(λ)⟨1,1⟩|`. Racah norms are not
/// bounded by `⟨1,1⟩`, so each is measured against its own prediction.
pub fn relative_norms_residual(family: &Family, norm_ratio: &[C], one_one: C) -> f64 {
    family
        .norms
        .iter()
        .zip(norm_ratio)
        .map(|(nrm, r)| (nrm - r * one_one).norm() / (r * one_one).norm())
        .fold(0.0, f64::max)
}

/// Runs the requested suites (or every applicable one), in order.
pub fn run_suites(config: &RunConfig, requested: &[String]) -> Result<Vec<SuiteResult>> {
    let ctx = SuiteContext::new(config);
    let names: Vec<String> = if requested.is_empty() {
        ctx.default_suites().into_iter().map(String::from).collect()
    } else {
        requested.to_vec()
    };
    names.iter().map(|n| ctx.run(n)).collect()
}
