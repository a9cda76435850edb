//! Dense complex matrices, Hermitian eigendecomposition and PSD square roots.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eig, psd_sqrt, EigenDecomposition};
pub use matrix::{Complex, ComplexMatrix};
