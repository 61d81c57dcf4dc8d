//! Exact rationals, sparse multivariate polynomials and sparse matrices.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{add_entry, axpy, scale_vec, Echelon, KernelImage, Matrix, SparseVec};
pub use poly::{spectral_name, Exps, MPoly};
pub use scalar::{frac, parse_scalar, q, Coeff, Scalar};
