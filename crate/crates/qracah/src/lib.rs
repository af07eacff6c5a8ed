//! Multivariable q-Racah polynomials.
//!
//! Koornwinder polynomials restricted to the finite grid cut out by the
//! truncation condition `t_a t_b t^{n-1} q^N = 1`, together with their
//! discrete weights, norms, the orthogonal transform they define, the
//! commuting difference operators it diagonalizes, and the `q -> 1`
//! Racah degeneration.
//!
//! The usual entry points are [`params::ParamSet`] (or
//! [`params::RacahParams`]) and then [`System::build`] /
//! [`RacahSystem::build`], which assemble weight tables and both
//! polynomial families once.

pub mod cfunctions;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod params;
pub mod polynomials;
pub mod special;
pub mod system;
pub mod transform;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use system::{RacahSystem, System};

/// A grid function: one value per alcove weight, in alcove order.
pub type GridFunction = Vec<Complex64>;
