//! Subcommand bodies. Each writes its artifacts under the output directory
//! and returns a short summary for stdout.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::config::{Model, RunConfig};
use super::report::{complex, csv_float, matrix_csv, num, params_hash, write_json};
use super::suites::{gram_residual, run_suites};
use crate::linalg::from_rows;
use crate::polynomials::limit::limit_check;
use crate::polynomials::macdonald::build_p_macdonald;
use crate::polynomials::SymPoly;
use crate::system::{RacahSystem, System};
use crate::transform::{build_k, build_k_racah, forward, inverse};
use crate::weights::Weight;
use crate::{Error, GridFunction, Result};

fn q_system(config: &RunConfig) -> Result<System> {
    match &config.model {
        Model::Q(p) => System::build(p),
        Model::Racah(_) => Err(Error::InvalidInput("this command needs q-parameters; use `racah` for kind = racah".into())),
    }
}

fn racah_system(config: &RunConfig) -> Result<RacahSystem> {
    match &config.model {
        Model::Racah(rp) => RacahSystem::build(rp),
        Model::Q(_) => Err(Error::InvalidInput("this command needs kind = racah".into())),
    }
}

fn weight_json(w: &Weight) -> Value {
    Value::Array(w.parts().iter().map(|&x| Value::from(x)).collect())
}

fn header(config: &RunConfig) -> Value {
    json!({ "params": config.model.canonical(), "params_hash": params_hash(&config.model.canonical()) })
}

fn grid_csv(grid: &[Vec<C>], weights: &[Weight]) -> String {
    let mut out = String::new();
    for (w, z) in weights.iter().zip(grid) {
        let coords: Vec<String> = z.iter().map(|x| format!("{},{}", csv_float(x.re), csv_float(x.im))).collect();
        let label: Vec<String> = w.parts().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{},{}", label.join(" "), coords.join(","));
    }
    out
}

fn values_csv(values: &[GridFunction], weights: &[Weight]) -> String {
    let mut out = String::new();
    for (w, row) in weights.iter().zip(values) {
        let label: Vec<String> = w.parts().iter().map(u32::to_string).collect();
        let cells: Vec<String> = row.iter().map(|x| format!("{},{}", csv_float(x.re), csv_float(x.im))).collect();
        let _ = writeln!(out, "{},{}", label.join(" "), cells.join(","));
    }
    out
}

fn poly_json(p: &SymPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(mu, c)| json!({ "weight": weight_json(mu), "coeff": complex(*c) })).collect();
    json!({ "leading": weight_json(p.leading()), "terms": terms })
}

pub fn weights(config: &RunConfig, out: &Path) -> Result<String> {
    let (table, grid) = match &config.model {
        Model::Q(p) => (crate::cfunctions::WeightTable::build(p)?, crate::polynomials::grid_points(p)),
        Model::Racah(rp) => {
            let t = crate::cfunctions::WeightTable::build_racah(rp)?;
            let g = t.alcove.weights().iter().map(|nu| rp.grid_point(nu)).collect();
            (t, g)
        }
    };
    let rows: Vec<Value> = table
        .alcove
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            json!({
                "weight": weight_json(w),
                "delta": complex(table.delta[i]),
                "delta_hat": complex(table.delta_hat[i]),
                "norm_ratio": complex(table.norm_ratio[i]),
            })
        })
        .collect();
    let mut doc = header(config);
    doc["one_one"] = complex(table.one_one);
    doc["rows"] = Value::Array(rows);
    write_json(&out.join("weights.json"), &doc)?;
    std::fs::write(out.join("grid.csv"), grid_csv(&grid, table.alcove.weights()))?;
    Ok(format!("{} weights, <1,1> = {}", table.len(), table.one_one))
}

pub fn poly(config: &RunConfig, out: &Path) -> Result<String> {
    let sys = q_system(config)?;
    let weights = sys.table.alcove.weights();
    let mut doc = header(config);
    let mut summary = String::new();
    let polys: Vec<Value> = match &config.lambda {
        Some(lambda) if sys.table.alcove.index_of(lambda).is_none() => {
            let (p, op) = build_p_macdonald(lambda, &sys.params, config.seed)?;
            summary = format!("{lambda} lies outside the alcove; built through the operator (condition {:.3e})", op.condition);
            vec![poly_json(&p)]
        }
        Some(lambda) => {
            let i = sys.table.alcove.index_of(lambda).unwrap_or_default();
            vec![poly_json(&sys.family.polys[i])]
        }
        None => sys.family.polys.iter().map(poly_json).collect(),
    };
    doc["polynomials"] = Value::Array(polys);
    doc["renormalizing_factors"] = Value::Array(sys.table.chat_plus.iter().map(|c| complex(*c)).collect());
    write_json(&out.join("polynomials.json"), &doc)?;
    std::fs::write(out.join("values.csv"), values_csv(&sys.big_p.values, weights))?;
    if summary.is_empty() {
        summary = format!("{} polynomials, max |P(τ) - 1| = {:.3e}", sys.family.len(), sys.origin_residual());
    }
    Ok(summary)
}

pub fn gram(config: &RunConfig, out: &Path) -> Result<String> {
    let (family, delta) = match &config.model {
        Model::Q(_) => {
            let s = q_system(config)?;
            (s.family, s.table.delta)
        }
        Model::Racah(_) => {
            let s = racah_system(config)?;
            (s.family, s.table.delta)
        }
    };
    let g = family.gram(&delta)?;
    std::fs::write(out.join("gram.csv"), matrix_csv(&from_rows(&g)))?;
    let off = gram_residual(&family, &delta)?;
    let mut doc = header(config);
    doc["max_offdiag_over_diag"] = num(off);
    write_json(&out.join("gram.json"), &doc)?;
    Ok(format!("max off-diagonal / max diagonal = {off:.3e}"))
}

pub fn norms(config: &RunConfig, out: &Path) -> Result<String> {
    let (family, table) = match &config.model {
        Model::Q(_) => {
            let s = q_system(config)?;
            (s.family, s.table)
        }
        Model::Racah(_) => {
            let s = racah_system(config)?;
            (s.family, s.table)
        }
    };
    let mut worst = 0.0f64;
    let rows: Vec<Value> = table
        .alcove
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let predicted = table.norm_ratio[i] * table.one_one;
            let res = (family.norms[i] - predicted).norm() / table.one_one.norm();
            worst = worst.max(res);
            json!({
                "weight": weight_json(w),
                "norm": complex(family.norms[i]),
                "predicted": complex(predicted),
                "residual": num(res),
            })
        })
        .collect();
    let mut doc = header(config);
    doc["one_one"] = complex(table.one_one);
    doc["rows"] = Value::Array(rows);
    write_json(&out.join("norms.json"), &doc)?;
    Ok(format!("max |<p,p> - N<1,1>| / |<1,1>| = {worst:.3e}"))
}

fn input_function(config: &RunConfig, len: usize) -> Result<GridFunction> {
    let input = config.input.as_deref().unwrap_or("indicator:0");
    if input == "ones" {
        return Ok(vec![C::new(1.0, 0.0); len]);
    }
    if input == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        return Ok((0..len).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect());
    }
    if let Some(k) = input.strip_prefix("indicator:") {
        let k: usize = k.trim().parse().map_err(|_| Error::InvalidInput(format!("bad input {input:?}")))?;
        if k >= len {
            return Err(Error::InvalidInput(format!("indicator index {k} outside 0..{len}")));
        }
        let mut f = vec![C::new(0.0, 0.0); len];
        f[k] = C::new(1.0, 0.0);
        return Ok(f);
    }
    Err(Error::InvalidInput(format!("input must be ones, random or indicator:K, got {input:?}")))
}

pub fn transform(config: &RunConfig, out: &Path) -> Result<String> {
    let sys = q_system(config)?;
    let (fwd, inv, k) = (forward(&sys), inverse(&sys), build_k(&sys));
    let f = input_function(config, sys.table.len())?;
    let fhat = fwd.apply(&f)?;
    let back = inv.apply(&fhat)?;
    let err = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    std::fs::write(out.join("kernel_orthogonal.csv"), matrix_csv(&k.matrix))?;
    std::fs::write(out.join("kernel_forward.csv"), matrix_csv(&fwd.matrix))?;
    std::fs::write(out.join("kernel_inverse.csv"), matrix_csv(&inv.matrix))?;
    let mut doc = header(config);
    doc["input"] = Value::Array(f.iter().map(|x| complex(*x)).collect());
    doc["transformed"] = Value::Array(fhat.iter().map(|x| complex(*x)).collect());
    doc["round_trip_error"] = num(err);
    doc["orthogonality_residual"] = num(k.orthogonality_residual());
    write_json(&out.join("transform.json"), &doc)?;
    Ok(format!("round-trip error {err:.3e}, |KᵀK - I|_F = {:.3e}", k.orthogonality_residual()))
}

pub fn racah(config: &RunConfig, out: &Path) -> Result<String> {
    let sys = racah_system(config)?;
    let weights = sys.table.alcove.weights();
    let k = build_k_racah(&sys);
    let mut doc = header(config);
    doc["polynomials"] = Value::Array(sys.family.polys.iter().map(poly_json).collect());
    doc["one_one"] = complex(sys.table.one_one);
    doc["orthogonality_residual"] = num(k.orthogonality_residual());
    doc["duality_residual"] = num(sys.duality_residual());
    write_json(&out.join("racah.json"), &doc)?;
    std::fs::write(out.join("racah_values.csv"), values_csv(&sys.big_p, weights))?;
    std::fs::write(out.join("racah_kernel.csv"), matrix_csv(&k.matrix))?;
    Ok(format!("{} polynomials, |K̃ᵀK̃ - I|_F = {:.3e}", sys.family.len(), k.orthogonality_residual()))
}

pub fn limit(config: &RunConfig, out: &Path) -> Result<String> {
    let Model::Racah(rp) = &config.model else {
        return Err(Error::InvalidInput("limit needs kind = racah".into()));
    };
    let steps = [1e-1, 5e-2, 2.5e-2];
    let report = limit_check(rp, &steps, 3)?;
    let rows: Vec<Value> = report
        .deviations
        .iter()
        .map(|(w, d)| json!({ "weight": weight_json(w), "deviations": d.iter().map(|x| num(*x)).collect::<Vec<_>>() }))
        .collect();
    let mut doc = header(config);
    doc["epsilons"] = Value::Array(steps.iter().map(|x| num(*x)).collect());
    doc["rows"] = Value::Array(rows);
    doc["monotone"] = Value::Bool(report.monotone());
    write_json(&out.join("limit.json"), &doc)?;
    Ok(format!("monotone: {}, worst deviation at the finest step {:.3e}", report.monotone(), report.worst_at(steps.len() - 1)))
}

/// Runs suites, writes `report.json`, and returns whether all passed.
pub fn verify(config: &RunConfig, suites: &[String], out: &Path) -> Result<(bool, String)> {
    let requested: Vec<String> = if suites.is_empty() { config.suites.clone() } else { suites.to_vec() };
    let results = run_suites(config, &requested)?;
    let hash = params_hash(&config.model.canonical());
    let doc = Value::Array(results.iter().map(|r| r.to_json(&hash)).collect());
    write_json(&out.join("report.json"), &doc)?;
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(
            text,
            "{:<22} {}  residual {:.3e}  tol {:.1e}{}",
            r.suite,
            if r.pass() { "PASS" } else { "FAIL" },
            r.max_residual,
            r.tolerance,
            r.error.as_ref().map(|e| format!("  ({e})")).unwrap_or_default()
        );
    }
    Ok((results.iter().all(|r| r.pass()), text))
}
