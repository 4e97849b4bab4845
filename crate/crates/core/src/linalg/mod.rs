//! Dense complex linear algebra: density and unitary matrices, QFT, Haar
//! sampling, Hermitian eigendecomposition, tensor products, partial traces.

mod density;
mod eigen;
mod io;
mod matrix;
mod qr;
mod unitary;

pub use density::{flat_simplex, DensityMatrix};
pub use eigen::{eig_hermitian, eig_hermitian_matrix, Spectrum};
pub use io::MatrixFile;
pub use matrix::{inner, vec_norm, ComplexMatrix};
pub use qr::{qr_decompose, qr_phase_fixed};
pub use unitary::{ginibre, haar_unitary, qft_matrix, UnitaryMatrix};

/// `A ⊗ B`.
pub fn kron<T: crate::Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a.kron(b)
}
