//! Flat `key = value` run configuration.
//!
//! ```text
//! # config A
//! kind = trig
//! n = 2
//! N = 4
//! g = 0.3
//! ga = 0.5
//! gb = 0.4
//! gc = 0.2
//! gd = 0.1
//! ```
//!
//! `kind = trig` fixes `α = π / ((n-1)g + g_a + g_b + N)`; an explicit
//! `alpha` (a number or `pi/x`) must agree with it. `kind = racah` takes
//! `g`, `ga`, `gc`, `gd` and derives `gb` unless given. `kind = generic`
//! takes complex `q`, `t`, `t0`..`t3` as `re,im` and optional `role_a`,
//! `role_b` slot indices. Optional keys: `seed`, `tol` (overrides every
//! suite tolerance), `truncation_tol`, `precision`, `suites`, `lambda`,
//! `input`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64 as C;

use crate::params::{ParamSet, RacahParams, RoleQuad, Roles, TrigSource};
use crate::weights::Weight;
use crate::{Error, Result};

/// Parameters of one run.
#[derive(Clone, Debug)]
pub enum Model {
    Q(ParamSet),
    Racah(RacahParams),
}

impl Model {
    pub fn canonical(&self) -> String {
        match self {
            Model::Q(p) => p.canonical(),
            Model::Racah(rp) => rp.canonical(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Model::Q(p) => p.rank(),
            Model::Racah(rp) => rp.rank(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: Model,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub suites: Vec<String>,
    pub lambda: Option<Weight>,
    pub input: Option<String>,
    pub precision: String,
}

pub const DEFAULT_SEED: u64 = 20240917;

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config { line: i + 1, message: format!("expected key = value, got {line:?}") })?;
            let key = k.trim().to_string();
            if map.insert(key.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(Error::Config { line: i + 1, message: format!("duplicate key {key}") });
            }
        }
        Ok(Entries { map })
    }

    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.map.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn bad(line: usize, key: &str, v: &str) -> Error {
        Error::Config { line, message: format!("cannot parse {key} = {v:?}") }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Self::bad(line, key, v)),
        }
    }

    fn need<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| Error::Config { line: 0, message: format!("missing key {key}") })
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => parse_real(v).map(Some).ok_or_else(|| Self::bad(line, key, v)),
        }
    }

    fn need_real(&self, key: &str) -> Result<f64> {
        self.real(key)?.ok_or_else(|| Error::Config { line: 0, message: format!("missing key {key}") })
    }

    fn complex(&self, key: &str) -> Result<C> {
        let (line, v) = self.raw(key).ok_or_else(|| Error::Config { line: 0, message: format!("missing key {key}") })?;
        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
        let re = parts.first().and_then(|x| parse_real(x));
        let im = match parts.get(1) {
            Some(x) => parse_real(x),
            None => Some(0.0),
        };
        match (re, im, parts.len() <= 2) {
            (Some(re), Some(im), true) => Ok(C::new(re, im)),
            _ => Err(Self::bad(line, key, v)),
        }
    }

    fn list(&self, key: &str) -> Vec<String> {
        self.raw(key)
            .map(|(_, v)| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .unwrap_or_default()
    }
}

/// A decimal number or `pi/x`, `pi*x`, `pi`.
fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("pi") {
        let rest = rest.trim();
        if rest.is_empty() {
            return Some(PI);
        }
        if let Some(d) = rest.strip_prefix('/') {
            return d.trim().parse::<f64>().ok().map(|d| PI / d);
        }
        if let Some(m) = rest.strip_prefix('*') {
            return m.trim().parse::<f64>().ok().map(|m| PI * m);
        }
        return None;
    }
    s.parse().ok()
}

fn parse_weight(s: &str) -> Result<Weight> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidInput(format!("cannot parse weight {s:?}")))?;
    Weight::new(parts)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let e = Entries::parse(text)?;
        let kind: String = e.get("kind")?.unwrap_or_else(|| "trig".to_string());
        let n: usize = e.need("n")?;
        let big_n: u32 = e.need("N")?;
        let tol_key: Option<f64> = e.real("truncation_tol")?;
        let model = match kind.as_str() {
            "trig" => {
                let g = e.need_real("g")?;
                let ex = RoleQuad::new(e.need_real("ga")?, e.need_real("gb")?, e.need_real("gc")?, e.need_real("gd")?);
                let p = ParamSet::truncated_trig(g, ex, n, big_n)?;
                if let Some(alpha) = e.real("alpha")? {
                    let fixed = p.trig().map_or(alpha, |s| s.alpha);
                    if (alpha - fixed).abs() > 1e-12 * fixed {
                        return Err(Error::InvalidInput(format!(
                            "alpha = {alpha} violates truncation, which requires {fixed}"
                        )));
                    }
                }
                let roles = Roles::new(e.get("role_a")?.unwrap_or(0), e.get("role_b")?.unwrap_or(1))?;
                let source = TrigSource { alpha: p.trig().map_or(0.0, |s| s.alpha), coupling: g, exponents: ex };
                Model::Q(ParamSet::from_trig(source, n, big_n, roles)?)
            }
            "generic" => {
                let roles = Roles::new(e.get("role_a")?.unwrap_or(0), e.get("role_b")?.unwrap_or(1))?;
                let slots = [e.complex("t0")?, e.complex("t1")?, e.complex("t2")?, e.complex("t3")?];
                Model::Q(ParamSet::generic(n, big_n, e.complex("q")?, e.complex("t")?, slots, roles)?)
            }
            "racah" => {
                let g = e.need_real("g")?;
                let (a, c, d) = (e.need_real("ga")?, e.need_real("gc")?, e.need_real("gd")?);
                let rp = match e.real("gb")? {
                    Some(b) => RacahParams::new(n, big_n, g, RoleQuad::new(a, b, c, d))?,
                    None => RacahParams::truncated(n, big_n, g, a, c, d)?,
                };
                Model::Racah(rp)
            }
            other => return Err(Error::InvalidInput(format!("unknown kind {other:?}"))),
        };
        let model = match (model, tol_key) {
            (Model::Q(p), Some(t)) => Model::Q(p.with_tolerance(t)),
            (Model::Racah(rp), Some(t)) => Model::Racah(rp.with_tolerance(t)),
            (m, None) => m,
        };
        let lambda = match e.raw("lambda") {
            Some((_, v)) => Some(parse_weight(v)?),
            None => None,
        };
        Ok(RunConfig {
            model,
            seed: e.get("seed")?.unwrap_or(DEFAULT_SEED),
            tolerance: e.real("tol")?,
            precision: e.get("precision")?.unwrap_or_else(|| "double".to_string()),
            suites: e.list("suites"),
            lambda,
            input: e.raw("input").map(|(_, v)| v.to_string()),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "kind = trig\nn = 2\nN = 4\ng = 0.3\nga = 0.5\ngb = 0.4\ngc = 0.2\ngd = 0.1\nalpha = pi/5.2\n";

    #[test]
    fn parses_config_a() {
        let c = RunConfig::parse(A).unwrap();
        let Model::Q(p) = c.model else { panic!("expected q model") };
        assert!((p.trig().unwrap().alpha - PI / 5.2).abs() < 1e-15);
        assert_eq!(c.seed, DEFAULT_SEED);
    }

    #[test]
    fn rejects_inconsistent_alpha() {
        let bad = A.replace("pi/5.2", "pi/5.3");
        assert!(RunConfig::parse(&bad).is_err());
    }

    #[test]
    fn reports_line_numbers() {
        match RunConfig::parse("n = 2\nN: 4\n") {
            Err(Error::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn racah_derives_gb() {
        let c = RunConfig::parse("kind = racah\nn = 2\nN = 3\ng = 0.4\nga = 0.3\ngc = 0.15\ngd = 0.2\n").unwrap();
        let Model::Racah(rp) = c.model else { panic!("expected racah model") };
        assert!((rp.by_role().b + 3.7).abs() < 1e-14);
    }
}
