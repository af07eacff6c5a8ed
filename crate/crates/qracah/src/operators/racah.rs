//! The second-order difference operator of the Racah theory on `ρ + Λ_N`.

use num_complex::Complex64 as C;

use crate::params::RacahParams;
use crate::special::POLE_EPS;
use crate::weights::{Alcove, Weight};
use crate::{Error, GridFunction, Result};

/// `Ṽ_{εj}(x)`.
pub fn racah_v_coeff(eps: i32, j: usize, x: &[f64], rp: &RacahParams) -> Result<f64> {
    let g = rp.coupling();
    let xj = f64::from(eps) * x[j];
    let mut num: Vec<f64> = rp.by_role().to_array().iter().map(|gr| gr + xj).collect();
    let mut den = vec![2.0 * xj, 1.0 + 2.0 * xj];
    for (k, &xk) in x.iter().enumerate() {
        if k != j {
            num.extend([g + xj + xk, g + xj - xk]);
            den.extend([xj + xk, xj - xk]);
        }
    }
    let num_zero = num.iter().any(|f| f.abs() < POLE_EPS);
    if den.iter().any(|f| f.abs() < POLE_EPS) {
        return if num_zero { Ok(0.0) } else { Err(Error::pole("Racah operator coefficient")) };
    }
    Ok(num.iter().product::<f64>() / den.iter().product::<f64>())
}

/// `Ẽ_λ = Σ_j ((λ_j + ρ̂_j)² - ρ̂_j²)`.
pub fn racah_eigenvalue(lambda: &Weight, rp: &RacahParams) -> f64 {
    let rho_hat = rp.dual_log_origin();
    lambda.parts().iter().zip(&rho_hat).map(|(&l, r)| (f64::from(l) + r).powi(2) - r * r).sum()
}

/// Applies the restricted operator to a grid function in alcove order.
pub fn apply_racah_d(f: &[C], rp: &RacahParams) -> Result<GridFunction> {
    let n = rp.rank();
    let alcove = Alcove::new(n, rp.level());
    if f.len() != alcove.len() {
        return Err(Error::InvalidInput(format!("grid function has {} values, alcove has {}", f.len(), alcove.len())));
    }
    let rho = rp.log_origin();
    alcove
        .weights()
        .iter()
        .enumerate()
        .map(|(i, nu)| {
            let x: Vec<f64> = rho.iter().zip(nu.parts()).map(|(r, &k)| r + f64::from(k)).collect();
            let mut acc = C::new(0.0, 0.0);
            for j in 0..n {
                for eps in [1, -1] {
                    let mut d = vec![0; n];
                    d[j] = eps;
                    if let Some(k) = alcove.shift_index(nu, &d) {
                        acc += racah_v_coeff(eps, j, &x, rp)? * (f[k] - f[i]);
                    }
                }
            }
            Ok(acc)
        })
        .collect()
}
