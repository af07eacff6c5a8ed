//! Symmetric polynomials in the monomial basis, grid Gram-Schmidt, and
//! the normalized family.

use std::collections::BTreeMap;

use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::cfunctions::WeightTable;
use crate::params::ParamSet;
use crate::special::CompensatedSum;
use crate::weights::{dominated, orbit, permutation_orbit, Alcove, Weight};
use crate::{Error, GridFunction, Result};

pub mod limit;
pub mod macdonald;
pub mod racah;

/// Which symmetrized monomials a [`SymPoly`] is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Signed-permutation orbit sums of Laurent monomials `z^μ`.
    Laurent,
    /// Permutation orbit sums of `x^{2μ}`.
    EvenSquare,
}

/// A finite expansion `Σ_μ c_μ m_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    basis: Basis,
    leading: Weight,
    coeffs: BTreeMap<Weight, C>,
}

impl SymPoly {
    pub fn monomial(basis: Basis, lambda: Weight) -> Self {
        let coeffs = BTreeMap::from([(lambda.clone(), C::new(1.0, 0.0))]);
        SymPoly { basis, leading: lambda, coeffs }
    }

    /// Checks that every key is dominated by `leading` and that the leading
    /// coefficient is present.
    pub fn from_coeffs(basis: Basis, leading: Weight, coeffs: BTreeMap<Weight, C>) -> Result<Self> {
        if !coeffs.contains_key(&leading) {
            return Err(Error::InvalidInput(format!("missing leading coefficient at {leading}")));
        }
        if let Some(bad) = coeffs.keys().find(|mu| !dominated(mu, &leading)) {
            return Err(Error::InvalidInput(format!("{bad} is not dominated by {leading}")));
        }
        Ok(SymPoly { basis, leading, coeffs })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn leading(&self) -> &Weight {
        &self.leading
    }

    pub fn coeff(&self, mu: &Weight) -> C {
        self.coeffs.get(mu).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.coeffs.iter()
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        (self.coeff(&self.leading) - 1.0).norm() <= tol
    }

    pub fn scaled(&self, s: C) -> SymPoly {
        SymPoly {
            basis: self.basis,
            leading: self.leading.clone(),
            coeffs: self.coeffs.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn eval(&self, z: &[C]) -> Result<C> {
        let mut sum = CompensatedSum::new();
        for (mu, c) in &self.coeffs {
            let m = match self.basis {
                Basis::Laurent => eval_monomial(mu, z)?,
                Basis::EvenSquare => eval_even_monomial(mu, z)?,
            };
            sum.add(c * m);
        }
        Ok(sum.value())
    }
}

fn check_point(lambda: &Weight, z: &[C]) -> Result<()> {
    if z.len() != lambda.len() {
        return Err(Error::InvalidInput(format!("point has {} coordinates, weight has {}", z.len(), lambda.len())));
    }
    Ok(())
}

/// `m_λ(z) = Σ_{μ ∈ W(λ)} z^μ`.
pub fn eval_monomial(lambda: &Weight, z: &[C]) -> Result<C> {
    check_point(lambda, z)?;
    if z.iter().any(|x| x.norm() == 0.0) {
        return Err(Error::InvalidInput("Laurent monomials need nonzero coordinates".into()));
    }
    let mut sum = CompensatedSum::new();
    for v in orbit(lambda) {
        sum.add(z.iter().zip(&v).map(|(x, &e)| x.powi(e)).product());
    }
    Ok(sum.value())
}

/// `m̃_λ(x) = Σ_{μ ∈ S_n(λ)} x^{2μ}`.
pub fn eval_even_monomial(lambda: &Weight, x: &[C]) -> Result<C> {
    check_point(lambda, x)?;
    let mut sum = CompensatedSum::new();
    for v in permutation_orbit(lambda) {
        sum.add(x.iter().zip(&v).map(|(x, &e)| x.powu(2 * e)).product());
    }
    Ok(sum.value())
}

/// `τ q^ν` for every alcove weight, in alcove order.
pub fn grid_points(p: &ParamSet) -> Vec<Vec<C>> {
    Alcove::new(p.rank(), p.level()).weights().iter().map(|nu| p.grid_point(nu)).collect()
}

fn check_lengths(f: &[C], g: &[C], delta: &[C]) -> Result<()> {
    if f.len() != delta.len() || g.len() != delta.len() {
        return Err(Error::InvalidInput(format!(
            "grid functions of lengths {} and {} against {} weights",
            f.len(),
            g.len(),
            delta.len()
        )));
    }
    Ok(())
}

/// `Σ_ν f(ν) g(ν) Δ(ν)`, without conjugation.
pub fn inner_product(f: &[C], g: &[C], delta: &[C]) -> Result<C> {
    check_lengths(f, g, delta)?;
    let mut sum = CompensatedSum::new();
    for ((a, b), d) in f.iter().zip(g).zip(delta) {
        sum.add(a * b * d);
    }
    Ok(sum.value())
}

/// `Σ_ν f(ν) conj(g(ν)) Δ(ν)`.
pub fn sesquilinear(f: &[C], g: &[C], delta: &[C]) -> Result<C> {
    let conj: Vec<C> = g.iter().map(C::conj).collect();
    inner_product(f, &conj, delta)
}

/// Output of a grid Gram-Schmidt run.
pub(crate) struct Orthogonalized {
    /// Coefficients in the input basis, indexed like the alcove.
    pub coeffs: Vec<Vec<C>>,
    pub values: Vec<GridFunction>,
    pub norms: Vec<C>,
    pub max_dropped: f64,
}

/// Modified Gram-Schmidt in total order. Projections onto incomparable
/// weights are measured and dropped.
pub(crate) fn orthogonalize(alcove: &Alcove, basis_values: Vec<GridFunction>, delta: &[C]) -> Result<Orthogonalized> {
    let d = alcove.len();
    let mut out = Orthogonalized { coeffs: Vec::with_capacity(d), values: Vec::with_capacity(d), norms: Vec::new(), max_dropped: 0.0 };
    for (i, (lambda, mut v)) in alcove.weights().iter().zip(basis_values).enumerate() {
        let mut coeff = vec![C::new(0.0, 0.0); d];
        coeff[i] = C::new(1.0, 0.0);
        for (k, mu) in alcove.weights()[..i].iter().enumerate() {
            let pm = &out.values[k];
            let proj = inner_product(&v, pm, delta)?;
            if !dominated(mu, lambda) {
                let scale: f64 = v.iter().zip(pm).zip(delta).map(|((a, b), w)| (a * b * w).norm()).sum();
                out.max_dropped = out.max_dropped.max(proj.norm() / scale.max(f64::MIN_POSITIVE));
                continue;
            }
            let c = proj / out.norms[k];
            for (x, y) in v.iter_mut().zip(pm) {
                *x -= c * y;
            }
            for (x, y) in coeff.iter_mut().zip(&out.coeffs[k]) {
                *x -= c * y;
            }
        }
        let norm = inner_product(&v, &v, delta)?;
        let scale: f64 = v.iter().zip(delta).map(|(a, w)| (a * a * w).norm()).sum();
        if norm.norm() <= 1e-13 * scale {
            return Err(Error::NonGeneric(format!("vanishing norm at {lambda}")));
        }
        out.coeffs.push(coeff);
        out.values.push(v);
        out.norms.push(norm);
    }
    Ok(out)
}

fn to_polys(alcove: &Alcove, basis: Basis, coeffs: &[Vec<C>]) -> Result<Vec<SymPoly>> {
    alcove
        .weights()
        .iter()
        .zip(coeffs)
        .map(|(lambda, c)| {
            let map = alcove
                .weights()
                .iter()
                .zip(c)
                .filter(|(mu, x)| dominated(mu, lambda) && x.norm() != 0.0)
                .map(|(mu, x)| (mu.clone(), *x))
                .collect();
            SymPoly::from_coeffs(basis, lambda.clone(), map)
        })
        .collect()
}

/// Monic orthogonal polynomials over an alcove, with their grid values.
#[derive(Clone, Debug)]
pub struct Family {
    pub alcove: Alcove,
    pub grid: Vec<Vec<C>>,
    pub polys: Vec<SymPoly>,
    /// `values[λ][ν] = p_λ(grid ν)`.
    pub values: Vec<GridFunction>,
    /// `⟨p_λ, p_λ⟩`.
    pub norms: Vec<C>,
    /// Largest relative projection onto an incomparable weight.
    pub max_dropped: f64,
}

impl Family {
    pub(crate) fn from_grid(alcove: Alcove, grid: Vec<Vec<C>>, basis: Basis, delta: &[C]) -> Result<Self> {
        let basis_values: Vec<GridFunction> = alcove
            .weights()
            .par_iter()
            .map(|lambda| {
                grid.iter()
                    .map(|z| match basis {
                        Basis::Laurent => eval_monomial(lambda, z),
                        Basis::EvenSquare => eval_even_monomial(lambda, z),
                    })
                    .collect::<Result<Vec<C>>>()
            })
            .collect::<Result<_>>()?;
        let o = orthogonalize(&alcove, basis_values, delta)?;
        let polys = to_polys(&alcove, basis, &o.coeffs)?;
        Ok(Family { alcove, grid, polys, values: o.values, norms: o.norms, max_dropped: o.max_dropped })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Gram matrix under the bilinear form.
    pub fn gram(&self, delta: &[C]) -> Result<Vec<Vec<C>>> {
        self.values
            .iter()
            .map(|f| self.values.iter().map(|g| inner_product(f, g, delta)).collect())
            .collect()
    }
}

/// Gram-Schmidt on the grid `τ q^ν` against `Δ`.
pub fn build_all_gram_schmidt(p: &ParamSet, table: &WeightTable) -> Result<Family> {
    Family::from_grid(table.alcove.clone(), grid_points(p), Basis::Laurent, &table.delta)
}

/// `P_λ = Ĉ₊(λ) p_λ` with grid values.
#[derive(Clone, Debug)]
pub struct Renormalized {
    pub polys: Vec<SymPoly>,
    pub values: Vec<GridFunction>,
    /// `P_λ` at the first grid point (`ν = 0`).
    pub at_origin: Vec<C>,
}

pub fn renormalize(family: &Family, chat_plus: &[C]) -> Renormalized {
    let polys: Vec<SymPoly> = family.polys.iter().zip(chat_plus).map(|(p, s)| p.scaled(*s)).collect();
    let values: Vec<GridFunction> =
        family.values.iter().zip(chat_plus).map(|(v, s)| v.iter().map(|x| x * s).collect()).collect();
    let at_origin = values.iter().map(|v| v[0]).collect();
    Renormalized { polys, values, at_origin }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[u32]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn monomial_examples() {
        let z = [C::new(0.7, 0.2), C::new(-1.1, 0.4)];
        assert_eq!(eval_monomial(&w(&[0, 0]), &z).unwrap(), C::new(1.0, 0.0));
        let m10 = eval_monomial(&w(&[1, 0]), &z).unwrap();
        let expect = z[0] + z[0].inv() + z[1] + z[1].inv();
        assert!((m10 - expect).norm() < 1e-15);
        let one = [C::new(1.3, -0.2)];
        let m3 = eval_monomial(&w(&[3]), &one).unwrap();
        assert!((m3 - one[0].powi(3) - one[0].powi(-3)).norm() < 1e-14);
        assert!(eval_monomial(&w(&[1]), &[C::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn even_monomial_example() {
        let x = [C::new(0.5, 0.0), C::new(2.0, 0.0)];
        let m = eval_even_monomial(&w(&[1, 0]), &x).unwrap();
        assert!((m - C::new(4.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inner_products() {
        let f = vec![C::new(1.0, 1.0), C::new(2.0, 0.0)];
        let d = vec![C::new(0.5, 0.0), C::new(0.25, 0.0)];
        assert_eq!(inner_product(&f, &f, &d).unwrap(), C::new(1.0, 1.0));
        assert_eq!(sesquilinear(&f, &f, &d).unwrap(), C::new(2.0, 0.0));
        assert!(inner_product(&f, &f[..1], &d).is_err());
    }

    #[test]
    fn rejects_undominated_terms() {
        let coeffs = BTreeMap::from([(w(&[2, 0]), C::new(1.0, 0.0)), (w(&[1, 1]), C::new(0.5, 0.0))]);
        assert!(SymPoly::from_coeffs(Basis::Laurent, w(&[1, 1]), coeffs).is_err());
    }
}
