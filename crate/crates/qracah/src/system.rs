//! Weight tables and both polynomial families, assembled once.

use num_complex::Complex64 as C;

use crate::cfunctions::WeightTable;
use crate::params::{ParamSet, RacahParams};
use crate::polynomials::racah::{build_racah_family, renormalized_values};
use crate::polynomials::{build_all_gram_schmidt, renormalize, Family, Renormalized};
use crate::Result;

/// Everything derived from one truncated q-parameter set.
#[derive(Clone, Debug)]
pub struct System {
    pub params: ParamSet,
    pub dual_params: ParamSet,
    pub table: WeightTable,
    pub family: Family,
    pub dual_family: Family,
    /// `P_λ = Ĉ₊(λ) p_λ`.
    pub big_p: Renormalized,
    /// `P̂_ν = C₊(ν) p̂_ν`.
    pub big_p_hat: Renormalized,
}

impl System {
    pub fn build(p: &ParamSet) -> Result<Self> {
        p.require_truncated()?;
        let dual_params = p.dual();
        let table = WeightTable::build(p)?;
        let swapped = table.swapped();
        let (family, dual_family) = rayon::join(
            || build_all_gram_schmidt(p, &table),
            || build_all_gram_schmidt(&dual_params, &swapped),
        );
        let (family, dual_family) = (family?, dual_family?);
        let big_p = renormalize(&family, &table.chat_plus);
        let big_p_hat = renormalize(&dual_family, &table.c_plus);
        Ok(System { params: p.clone(), dual_params, table, family, dual_family, big_p, big_p_hat })
    }

    /// `max_{μ,ν} |P_μ(τq^ν) - P̂_ν(τ̂q^μ)|`.
    pub fn duality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (m, row) in self.big_p.values.iter().enumerate() {
            for (v, x) in row.iter().enumerate() {
                worst = worst.max((x - self.big_p_hat.values[v][m]).norm());
            }
        }
        worst
    }

    /// `max_λ |P_λ(τ) - 1|`.
    pub fn origin_residual(&self) -> f64 {
        self.big_p.at_origin.iter().map(|x| (x - 1.0).norm()).fold(0.0, f64::max)
    }
}

/// Everything derived from one truncated Racah parameter set.
#[derive(Clone, Debug)]
pub struct RacahSystem {
    pub params: RacahParams,
    pub dual_params: RacahParams,
    pub table: WeightTable,
    pub family: Family,
    pub dual_family: Family,
    pub big_p: Vec<Vec<C>>,
    pub big_p_hat: Vec<Vec<C>>,
}

impl RacahSystem {
    pub fn build(rp: &RacahParams) -> Result<Self> {
        rp.require_truncated()?;
        let dual_params = rp.dual();
        let table = WeightTable::build_racah(rp)?;
        let swapped = table.swapped();
        let family = build_racah_family(rp, &table)?;
        let dual_family = build_racah_family(&dual_params, &swapped)?;
        let big_p = renormalized_values(&family, &table.chat_plus);
        let big_p_hat = renormalized_values(&dual_family, &table.c_plus);
        Ok(RacahSystem { params: rp.clone(), dual_params, table, family, dual_family, big_p, big_p_hat })
    }

    pub fn duality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (m, row) in self.big_p.iter().enumerate() {
            for (v, x) in row.iter().enumerate() {
                worst = worst.max((x - self.big_p_hat[v][m]).norm());
            }
        }
        worst
    }
}
