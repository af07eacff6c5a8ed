//! The finite transform defined by the renormalized polynomials, its
//! inverse, and the orthogonal matrices behind them.

use num_complex::Complex64 as C;
use rayon::prelude::*;

use crate::linalg::{frobenius, max_abs, CMatrix};
use crate::operators::trig::{dr_matrix, e_multiplier};
use crate::system::{RacahSystem, System};
use crate::weights::Weight;
use crate::{Error, GridFunction, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `K_{μν} = P_μ(ν) Δ̂(μ)^{1/2} Δ(ν)^{1/2} / ⟨1,1⟩^{1/2}`.
    Orthogonal,
    /// `𝒦(μ, ν) = P_μ(ν) Δ(ν) / ⟨1,1⟩^{1/2}`, grid to dual grid.
    Forward,
    /// `𝒦̂(ν, μ) = P̂_ν(μ) Δ̂(μ) / ⟨1,1⟩^{1/2}`, dual grid to grid.
    Inverse,
    /// The orthogonal matrix of the Racah theory.
    RacahOrthogonal,
}

/// A square kernel in alcove order on both sides.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    pub kind: KernelKind,
    pub matrix: CMatrix,
}

impl KernelMatrix {
    pub fn apply(&self, f: &[C]) -> Result<GridFunction> {
        if f.len() != self.matrix.ncols() {
            return Err(Error::InvalidInput(format!(
                "grid function has {} values, kernel has {} columns",
                f.len(),
                self.matrix.ncols()
            )));
        }
        Ok((0..self.matrix.nrows())
            .into_par_iter()
            .map(|i| (0..self.matrix.ncols()).map(|k| self.matrix[(i, k)] * f[k]).sum())
            .collect())
    }

    /// `‖MᵀM - I‖_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let d = self.matrix.nrows();
        frobenius(&(self.matrix.transpose() * &self.matrix - CMatrix::identity(d, d)))
    }

    /// `‖M - Mᵀ‖_F`.
    pub fn asymmetry(&self) -> f64 {
        frobenius(&(&self.matrix - self.matrix.transpose()))
    }

    /// Largest imaginary part relative to the largest entry.
    pub fn imaginary_ratio(&self) -> f64 {
        self.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / max_abs(&self.matrix)
    }
}

fn orthogonal(values: &[GridFunction], delta_rows: &[C], delta_cols: &[C], one_one: C, kind: KernelKind) -> KernelMatrix {
    let d = values.len();
    let root = one_one.sqrt();
    let rows: Vec<C> = delta_rows.iter().map(|x| x.sqrt()).collect();
    let cols: Vec<C> = delta_cols.iter().map(|x| x.sqrt()).collect();
    KernelMatrix { kind, matrix: CMatrix::from_fn(d, d, |m, v| values[m][v] * rows[m] * cols[v] / root) }
}

pub fn build_k(sys: &System) -> KernelMatrix {
    let t = &sys.table;
    orthogonal(&sys.big_p.values, &t.delta_hat, &t.delta, t.one_one, KernelKind::Orthogonal)
}

/// `K` assembled from the dual family; equals `Kᵀ` by duality.
pub fn build_k_dual(sys: &System) -> KernelMatrix {
    let t = &sys.table;
    orthogonal(&sys.big_p_hat.values, &t.delta, &t.delta_hat, t.one_one, KernelKind::Orthogonal)
}

pub fn forward(sys: &System) -> KernelMatrix {
    let t = &sys.table;
    let root = t.one_one.sqrt();
    let d = t.len();
    KernelMatrix {
        kind: KernelKind::Forward,
        matrix: CMatrix::from_fn(d, d, |m, v| sys.big_p.values[m][v] * t.delta[v] / root),
    }
}

pub fn inverse(sys: &System) -> KernelMatrix {
    let t = &sys.table;
    let root = t.one_one.sqrt();
    let d = t.len();
    KernelMatrix {
        kind: KernelKind::Inverse,
        matrix: CMatrix::from_fn(d, d, |v, m| sys.big_p_hat.values[v][m] * t.delta_hat[m] / root),
    }
}

/// `‖𝒦̂𝒦 - I‖_F`.
pub fn round_trip_residual(fwd: &KernelMatrix, inv: &KernelMatrix) -> f64 {
    let d = fwd.matrix.nrows();
    frobenius(&(&inv.matrix * &fwd.matrix - CMatrix::identity(d, d)))
}

/// Residuals of `𝒦 D_r 𝒦̂ = diag(Ê_r)` and `𝒦̂ D̂_r 𝒦 = diag(E_r)`,
/// each as the largest entry of the difference over `max(1, max |E|)`.
pub fn diagonalization_report(sys: &System, r: usize) -> Result<[f64; 2]> {
    let p = &sys.params;
    let src = p
        .trig()
        .ok_or_else(|| Error::Unsupported("diagonalization needs the trigonometric operators".into()))?;
    let (n, big_n) = (p.rank(), p.level());
    let (fwd, inv) = (forward(sys), inverse(sys));
    let primal = dr_matrix(r, src, n, big_n)?;
    let dual = dr_matrix(r, &src.dual(), n, big_n)?;
    let rho = src.log_origin(n);
    let rho_hat = src.dual().log_origin(n);
    let weights: &[Weight] = sys.table.alcove.weights();
    let residual = |m: CMatrix, origin: &[f64]| {
        let diag: Vec<f64> = weights.iter().map(|w| e_multiplier(r, w, origin, src.alpha)).collect();
        let top = diag.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let target = CMatrix::from_fn(m.nrows(), m.ncols(), |i, k| if i == k { C::new(diag[i], 0.0) } else { C::default() });
        max_abs(&(m - target)) / top
    };
    Ok([
        residual(&fwd.matrix * &primal * &inv.matrix, &rho_hat),
        residual(&inv.matrix * &dual * &fwd.matrix, &rho),
    ])
}

pub fn build_k_racah(sys: &RacahSystem) -> KernelMatrix {
    let t = &sys.table;
    orthogonal(&sys.big_p, &t.delta_hat, &t.delta, t.one_one, KernelKind::RacahOrthogonal)
}
