//! Heads of products, reality of simple modules and mutation sequences.

use super::{convolve, renormalized_rmatrix, RMatrixResult};
use crate::algebra::Engine;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar};
use crate::modrep::{composition_structure, find_isomorphism, hom_space_all, GradedModule, Quotient, Subspace, Submodule};

/// `M ⋄ N`: the image of `r_{M,N}`, realised as `M∘N / ker r_{M,N}`.
#[derive(Clone, Debug)]
pub struct HeadProduct {
    pub r: RMatrixResult,
    pub kernel: Submodule,
    pub image: Submodule,
    pub head: Quotient,
}

impl HeadProduct {
    pub fn module(&self) -> &GradedModule {
        &self.head.module
    }
}

pub fn head_product(engine: &Engine, m: &GradedModule, n: &GradedModule) -> Result<HeadProduct> {
    let r = renormalized_rmatrix(engine, m, n)?;
    let mat = &r.map.matrix;
    let src = &r.source.module;
    let dst = &r.target.module;
    let kernel = Submodule::new(src, Subspace::from_vectors(src.dim(), mat.kernel()))?;
    let image = Submodule::new(dst, Subspace::from_vectors(dst.dim(), mat.columns()))?;
    let head = Quotient::new(src, &kernel.space)?;
    Ok(HeadProduct { r, kernel, image, head })
}

/// The three equivalent characterisations of a real simple module.
#[derive(Clone, Debug)]
pub struct RealReport {
    pub square_simple: bool,
    pub r_scalar: bool,
    pub end_dim: usize,
}

impl RealReport {
    pub fn real(&self) -> bool {
        self.square_simple
    }
}

fn is_scalar(m: &Matrix<Scalar>) -> bool {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return false;
    }
    let c = m.get(0, 0);
    c != Scalar::from_integer(0.into()) && *m == Matrix::scalar_identity(n, &c)
}

/// Runs all three criteria; disagreement is reported as an internal failure.
pub fn is_real(engine: &Engine, m: &GradedModule) -> Result<RealReport> {
    let mm = convolve(engine, m, m)?;
    let square_simple = composition_structure(&mm.module)?.is_simple;
    let r_scalar = is_scalar(&renormalized_rmatrix(engine, m, m)?.map.matrix);
    let end_dim = hom_space_all(&mm.module, &mm.module).iter().map(|(_, b)| b.len()).sum();
    let rep = RealReport { square_simple, r_scalar, end_dim };
    if square_simple != r_scalar || r_scalar != (end_dim == 1) {
        return Err(Error::Internal(format!("reality criteria disagree: {rep:?}")));
    }
    Ok(rep)
}

/// Checks `0 → ker r_{M0,L} → M0∘L → im r_{M0,L} → 0` against expected terms.
#[derive(Clone, Debug)]
pub struct MutationReport {
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Shift of the isomorphism `ker r ≅ Mker`, if one exists.
    pub kernel_iso: Option<i64>,
    /// Shift of the isomorphism `im r ≅ Mim`, if one exists.
    pub image_iso: Option<i64>,
    pub exact: bool,
}

impl MutationReport {
    pub fn ok(&self) -> bool {
        self.kernel_iso.is_some() && self.image_iso.is_some() && self.exact
    }
}

pub fn mutation_ses_check(engine: &Engine, m0: &GradedModule, l: &GradedModule, mker: &GradedModule, mim: &GradedModule) -> Result<MutationReport> {
    let h = head_product(engine, m0, l)?;
    let mat = &h.r.map.matrix;
    let src_dim = h.r.source.module.dim();
    let exact = mat.mul(&h.kernel.space.inclusion()).is_zero() && h.kernel.dim() + h.image.dim() == src_dim;
    let iso = |a: &GradedModule, b: &GradedModule| {
        if a.dim() == 0 && b.dim() == 0 {
            Some(0)
        } else if a.algebra() != b.algebra() {
            None
        } else {
            find_isomorphism(a, b).map(|f| f.shift)
        }
    };
    Ok(MutationReport {
        kernel_dim: h.kernel.dim(),
        image_dim: h.image.dim(),
        kernel_iso: iso(&h.kernel.module, mker),
        image_iso: iso(&h.image.module, mim),
        exact,
    })
}
