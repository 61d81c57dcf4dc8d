//! Exact computations with KLR algebras (type A) and VV algebras (type B):
//! normal forms, graded modules, convolution products and R-matrices.

pub mod error;
pub mod exactlin;

pub use error::{Error, Result};
pub mod quiver;
pub mod weyl;
pub mod algebra;
pub mod modrep;
pub mod rmatrix;
pub mod criteria;
