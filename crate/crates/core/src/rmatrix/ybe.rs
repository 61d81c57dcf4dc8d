//! Associators and the Yang–Baxter / triangle identities on triple products.

use super::{block_swap, convolve, convolve_many, renormalized_rmatrix};
use crate::algebra::Engine;
use crate::error::{Error, Result};
use crate::exactlin::{Coeff, Matrix};
use crate::modrep::{spectral_twist, unit_vector, ConvModule, GradedModule};

/// The identification of a nested product with the flat triple product:
/// `σ_w ⊗ (u ⊗ σ_{w2}(v ⊗ t)) ↦ σ_w σ_{w2'} (u ⊗ v ⊗ t)` where `w2'` is `w2`
/// moved onto the strands of the inner product. `inner_on_left` selects
/// `(X)∘F` instead of `F∘(X)` for the inner product `X`.
pub fn associator<R: Coeff>(outer: &ConvModule<R>, inner: &ConvModule<R>, inner_on_left: bool, flat: &ConvModule<R>) -> Result<Matrix<R>> {
    let res_idx = inner.module.positive_indices();
    let x_pos = if inner_on_left { 0 } else { 1 };
    if outer.factor_dims.len() != 2 || outer.factor_dims[x_pos] != res_idx.len() {
        return Err(Error::Invalid("associator: outer product does not contain the inner one".into()));
    }
    let off = if inner_on_left { 0 } else { outer.blocks[0] };
    let mut cols = Vec::with_capacity(outer.module.dim());
    for idx in 0..outer.module.dim() {
        let (r, flat_inner) = outer.split_index(idx);
        let parts = outer.inner_parts(flat_inner);
        let (r2, inner2) = inner.split_index(res_idx[parts[x_pos]]);
        let nested = inner.inner_parts(inner2);
        let mut all = Vec::with_capacity(nested.len() + 1);
        if inner_on_left {
            all.extend(nested);
            all.push(parts[1]);
        } else {
            all.push(parts[0]);
            all.extend(nested);
        }
        let mut word = outer.table.words[r].clone();
        for &k in &inner.table.words[r2] {
            if k == 0 {
                return Err(Error::Internal("restricted basis vector with a signed coset representative".into()));
            }
            word.push(k + off);
        }
        let v0 = unit_vector(flat.index(0, flat.inner_index(&all)));
        cols.push(flat.module.apply_word(&word, &v0));
    }
    Ok(Matrix::from_columns(flat.module.dim(), &cols))
}

/// Outcome of [`ybe_check`].
#[derive(Clone, Debug)]
pub struct YbeReport {
    /// Whether the spectral R-matrices were used.
    pub spectral: bool,
    /// Vanishing orders for `(L,M)`, `(L,N)`, `(M,N)`.
    pub s: [u32; 3],
    pub ybe: bool,
    /// `R_{L,M∘N} = (R_{L,N} ∘ 1)(1 ∘ R_{L,M})` through the associators.
    pub triangle_left: bool,
    /// `R_{L∘M,N} = (R_{L,N} ∘ 1)(1 ∘ R_{M,N})` through the associators.
    pub triangle_right: bool,
}

impl YbeReport {
    pub fn ok(&self) -> bool {
        self.ybe && self.triangle_left && self.triangle_right
    }
}

fn identities<R: Coeff>(engine: &Engine, l: &GradedModule<R>, m: &GradedModule<R>, n: &GradedModule<R>) -> Result<(bool, bool, bool)> {
    let p = |a: &GradedModule<R>, b: &GradedModule<R>, c: &GradedModule<R>| convolve_many(engine, &[a, b, c]);
    let lmn = p(l, m, n)?;
    let mln = p(m, l, n)?;
    let mnl = p(m, n, l)?;
    let nml = p(n, m, l)?;
    let lnm = p(l, n, m)?;
    let nlm = p(n, l, m)?;
    let r_lm_0 = block_swap(&lmn, &mln, 0)?;
    let r_ln_1 = block_swap(&mln, &mnl, 1)?;
    let r_mn_0 = block_swap(&mnl, &nml, 0)?;
    let r_mn_1 = block_swap(&lmn, &lnm, 1)?;
    let r_ln_0 = block_swap(&lnm, &nlm, 0)?;
    let r_lm_1 = block_swap(&nlm, &nml, 1)?;
    let lhs = r_mn_0.mul(&r_ln_1).mul(&r_lm_0);
    let rhs = r_lm_1.mul(&r_ln_0).mul(&r_mn_1);
    let ybe = lhs == rhs;

    let x = convolve(engine, m, n)?;
    let l_x = convolve(engine, l, &x.module)?;
    let x_l = convolve(engine, &x.module, l)?;
    let a1 = associator(&l_x, &x, false, &lmn)?;
    let a2 = associator(&x_l, &x, true, &mnl)?;
    let r = block_swap(&l_x, &x_l, 0)?;
    let tri1 = a2.mul(&r) == r_ln_1.mul(&r_lm_0).mul(&a1);

    let y = convolve(engine, l, m)?;
    let y_n = convolve(engine, &y.module, n)?;
    let n_y = convolve(engine, n, &y.module)?;
    let a3 = associator(&y_n, &y, true, &lmn)?;
    let a4 = associator(&n_y, &y, false, &nlm)?;
    let r = block_swap(&y_n, &n_y, 0)?;
    let tri2 = a4.mul(&r) == r_ln_0.mul(&r_mn_1).mul(&a3);
    Ok((ybe, tri1, tri2))
}

fn order(engine: &Engine, a: &GradedModule, b: &GradedModule) -> Result<u32> {
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(0);
    }
    Ok(renormalized_rmatrix(engine, a, b)?.s)
}

/// Checks the Yang–Baxter equation and both triangle identities exactly.
/// When every pairwise vanishing order is 0 the R-matrices themselves are
/// used; otherwise the spectral R-matrices over `ℚ[z,z',z'']`.
pub fn ybe_check(engine: &Engine, l: &GradedModule, m: &GradedModule, n: &GradedModule) -> Result<YbeReport> {
    let s = [order(engine, l, m)?, order(engine, l, n)?, order(engine, m, n)?];
    let spectral = s.iter().any(|&x| x > 0);
    let (ybe, triangle_left, triangle_right) = if spectral {
        let lz = spectral_twist(engine, l, 0)?;
        let mz = spectral_twist(engine, m, 1)?;
        let nz = spectral_twist(engine, n, 2)?;
        identities(engine, &lz, &mz, &nz)?
    } else {
        identities(engine, l, m, n)?
    };
    Ok(YbeReport { spectral, s, ybe, triangle_left, triangle_right })
}
