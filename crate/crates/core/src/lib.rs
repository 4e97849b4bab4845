//! Spin tomograms, tomographic Shannon and Renyi entropies, and checkers for
//! the entropic inequalities they satisfy, including the Fourier-transform
//! uncertainty relations for finite-dimensional (qudit) states.
//!
//! A state `ρ` rotated by a unitary `u` yields the tomogram
//! `w(m, u) = <m| u^dagger ρ u |m>`, an ordinary probability vector. Its
//! entropies are functions on the unitary group whose minimum is the
//! corresponding quantum entropy of `ρ`.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what the validation
//! tolerances are calibrated for.
//!
//! ```
//! use tomo_entropy::{entropy, linalg, tomography};
//!
//! let rho = linalg::DensityMatrix::<f64>::diagonal(&[1.0, 0.0]).unwrap();
//! let f = linalg::qft_matrix(2).unwrap();
//! let w = tomography::tomogram(&rho, &f).unwrap();
//! assert!((entropy::shannon(&w).value - 2f64.ln()).abs() < 1e-12);
//! ```

// `!(x <= tol)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy;
pub mod error;
pub mod inequalities;
pub mod json;
pub mod linalg;
pub mod optimize;
pub mod rng;
pub mod scalar;
pub mod states;
mod subsystems;
pub mod tomography;

pub use error::{Error, Result};
pub use scalar::{Complex, Real};

pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type DensityMatrix64 = linalg::DensityMatrix<f64>;
pub type UnitaryMatrix64 = linalg::UnitaryMatrix<f64>;
pub type Spectrum64 = linalg::Spectrum<f64>;
pub type Tomogram64 = tomography::Tomogram<f64>;
pub type RenyiOrder64 = entropy::RenyiOrder<f64>;
pub type EntropyValue64 = entropy::EntropyValue<f64>;

pub type ComplexMatrix32 = linalg::ComplexMatrix<f32>;
pub type DensityMatrix32 = linalg::DensityMatrix<f32>;
pub type UnitaryMatrix32 = linalg::UnitaryMatrix<f32>;
pub type Tomogram32 = tomography::Tomogram<f32>;
