//! Convolution products, R-matrices, spectral renormalization, Yang–Baxter
//! checks and the head/socle machinery built on them.

mod analysis;
mod ybe;

use crate::algebra::{AlgebraId, AlgebraKind, Engine};
use crate::error::{Error, Result};
use crate::exactlin::{Coeff, MPoly, Matrix, Scalar};
use crate::modrep::{
    is_module_map, map_degree, restrict, spectral_twist, ConvModule, Embedding, GradedModule, Inducer, ModuleMap,
    TableKind,
};
use crate::quiver::{OrbitConfig, Weight};
use crate::weyl::w_shuffle;

pub use analysis::{head_product, is_real, mutation_ses_check, HeadProduct, MutationReport, RealReport};
pub use ybe::{associator, ybe_check, YbeReport};

fn same_cfg<R: Coeff>(factors: &[&GradedModule<R>]) -> Result<OrbitConfig> {
    let cfg = *factors.first().ok_or_else(|| Error::Invalid("empty product".into()))?.cfg();
    if factors.iter().any(|f| f.cfg() != &cfg) {
        return Err(Error::AlgebraMismatch("factors use different orbit configurations".into()));
    }
    Ok(cfg)
}

/// `M_1 ∘ ⋯ ∘ M_k = W e ⊗ (Res M_1 ⊗ ⋯ ⊗ Res M_k)` over `W^B / (S_{m_1} × ⋯)`.
pub fn convolve_many<R: Coeff>(engine: &Engine, factors: &[&GradedModule<R>]) -> Result<ConvModule<R>> {
    let cfg = same_cfg(factors)?;
    let mut pos = Weight::new();
    let mut res = Vec::with_capacity(factors.len());
    for f in factors {
        if !f.algebra().is_vv() {
            return Err(Error::Invalid(format!("VV convolution expects VV modules, got {}", f.algebra().render())));
        }
        pos = pos.sum(&f.algebra().positive_weight());
        res.push(restrict(f)?);
    }
    let big = AlgebraId::vv_from_positive(cfg, &pos)?;
    Inducer::new(engine, &big, TableKind::VvYoung, Embedding::Parabolic, res)?.build()
}

pub fn convolve<R: Coeff>(engine: &Engine, m: &GradedModule<R>, n: &GradedModule<R>) -> Result<ConvModule<R>> {
    convolve_many(engine, &[m, n])
}

/// `P_1 ∘ ⋯ ∘ P_k` for KLR modules over the shuffles `S_{m_1,…,m_k}`.
pub fn convolve_klr_many<R: Coeff>(engine: &Engine, factors: &[&GradedModule<R>]) -> Result<ConvModule<R>> {
    let cfg = same_cfg(factors)?;
    let mut w = Weight::new();
    for f in factors {
        if f.algebra().is_vv() {
            return Err(Error::Invalid(format!("KLR convolution expects KLR modules, got {}", f.algebra().render())));
        }
        w = w.sum(&f.algebra().weight);
    }
    let big = AlgebraId::klr(cfg, &w);
    Inducer::new(engine, &big, TableKind::KlrYoung, Embedding::Parabolic, factors.iter().map(|f| (*f).clone()).collect())?.build()
}

pub fn convolve_klr<R: Coeff>(engine: &Engine, p: &GradedModule<R>, q: &GradedModule<R>) -> Result<ConvModule<R>> {
    convolve_klr_many(engine, &[p, q])
}

/// Supports (including θ-images) of the two weights must be disjoint and
/// have no arrows between them.
fn check_naive_supports(cfg: &OrbitConfig, a: &AlgebraId, b: &AlgebraId) -> Result<()> {
    let sa = a.weight.support();
    let sb = b.weight.support();
    let overlap = sa.iter().any(|x| sb.iter().any(|y| cfg.same(*x, *y)));
    let adjacent = sa.iter().any(|x| sb.iter().any(|y| cfg.adjacent(*x, *y)));
    if overlap || adjacent {
        let why = if overlap { "the supports intersect" } else { "the supports are joined by an arrow" };
        return Err(Error::Unsupported(format!(
            "naive product {} ∘ {}: {why}. W_β ⊗ W_γ → W_{{β+γ}} is then not an algebra map: \
             for β = λ+λ^{{-1}}, γ = p²λ+p^{{-2}}λ^{{-1}} one has \
             σ1πσ1 e(λ,p²λ) · σ1πσ1 e(λ,p^{{-2}}λ^{{-1}}) = -(x1+x2) e(λ,p^{{-2}}λ^{{-1}}) instead of 0",
            a.render(),
            b.render()
        )));
    }
    Ok(())
}

/// `W e(β,γ) ⊗_{W_β ⊗ W_γ} (M ⊗ N)` for disjoint, non-adjacent supports.
pub fn naive_convolve(engine: &Engine, m: &GradedModule, n: &GradedModule) -> Result<ConvModule> {
    let cfg = same_cfg(&[m, n])?;
    if !m.algebra().is_vv() || !n.algebra().is_vv() {
        return Err(Error::Invalid("naive product expects VV modules".into()));
    }
    check_naive_supports(&cfg, m.algebra(), n.algebra())?;
    let big = AlgebraId { kind: AlgebraKind::Vv, weight: m.algebra().weight.sum(&n.algebra().weight), cfg };
    big.validate()?;
    Inducer::new(engine, &big, TableKind::VvQuasi, Embedding::QuasiParabolic, vec![m.clone(), n.clone()])?.build()
}

/// `σ_w ⊗ (⋯ u_p ⊗ u_{p+1} ⋯) ↦ σ_w φ_{w'} (⋯ u_{p+1} ⊗ u_p ⋯)`, where `w'`
/// shuffles the block now at position `p` of `dst` past the next one.
pub fn block_swap<R: Coeff>(src: &ConvModule<R>, dst: &ConvModule<R>, p: usize) -> Result<Matrix<R>> {
    let k = src.blocks.len();
    let mut want = src.blocks.clone();
    want.swap(p, p + 1);
    let mut want_dims = src.factor_dims.clone();
    want_dims.swap(p, p + 1);
    if p + 1 >= k || dst.blocks != want || dst.factor_dims != want_dims {
        return Err(Error::Invalid("block swap between incompatible products".into()));
    }
    let total: usize = src.blocks.iter().sum();
    let off: usize = dst.blocks[..p].iter().sum();
    let shuffle = w_shuffle(dst.blocks[p], dst.blocks[p + 1]);
    let phi_word = shuffle.shifted(off, total).reduced_word();
    let mut cols = Vec::with_capacity(src.module.dim());
    for idx in 0..src.module.dim() {
        let (r, inner) = src.split_index(idx);
        let mut parts = src.inner_parts(inner);
        parts.swap(p, p + 1);
        let v0 = crate::modrep::unit_vector(dst.index(0, dst.inner_index(&parts)));
        let v = dst.module.apply_phi_word(&phi_word, &v0);
        cols.push(dst.module.apply_word(&src.table.words[r], &v));
    }
    Ok(Matrix::from_columns(dst.module.dim(), &cols))
}

/// `−(β⁺,γ⁺) + 2[β⁺,γ⁺]`, the degree of `φ_{w[n,m]}` on `e(γ⁺β⁺)`.
pub fn phi_shift(a: &AlgebraId, b: &AlgebraId) -> i64 {
    let (pa, pb) = (a.positive_weight(), b.positive_weight());
    -a.cfg.bilinear_weights(&pa, &pb) + 2 * a.cfg.delta_weights(&pa, &pb)
}

/// An R-matrix together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct RMatrixResult<R: Coeff = Scalar> {
    pub map: ModuleMap<R>,
    /// Vanishing order of `(z'−z)`; 0 for unnormalized maps.
    pub s: u32,
    /// Shift carried by the map: `−(β,γ)+2[β,γ]`, plus `2s` when renormalized.
    pub declared_shift: i64,
    /// Common degree of the nonzero entries, if the map is nonzero.
    pub measured_degree: Option<i64>,
    pub source: ConvModule<R>,
    pub target: ConvModule<R>,
    /// `R_{M_z,N_{z'}}` for renormalized maps.
    pub spectral: Option<Matrix<MPoly>>,
}

fn certified<R: Coeff>(src: &ConvModule<R>, dst: &ConvModule<R>, mat: &Matrix<R>) -> Result<()> {
    if !is_module_map(&src.module, &dst.module, mat) {
        return Err(Error::Internal("R-matrix does not intertwine the generator actions".into()));
    }
    Ok(())
}

/// `R_{M,N}: M∘N → N∘M` for VV modules (generic coefficients).
pub fn rmatrix_generic<R: Coeff>(engine: &Engine, m: &GradedModule<R>, n: &GradedModule<R>) -> Result<RMatrixResult<R>> {
    let src = convolve(engine, m, n)?;
    let dst = convolve(engine, n, m)?;
    let mat = block_swap(&src, &dst, 0)?;
    certified(&src, &dst, &mat)?;
    let shift = phi_shift(m.algebra(), n.algebra());
    let measured = map_degree(&src.module, &dst.module, &mat);
    Ok(RMatrixResult { map: ModuleMap { matrix: mat, shift }, s: 0, declared_shift: shift, measured_degree: measured, source: src, target: dst, spectral: None })
}

pub fn rmatrix(engine: &Engine, m: &GradedModule, n: &GradedModule) -> Result<RMatrixResult> {
    rmatrix_generic(engine, m, n)
}

/// `R_{P,Q}: P∘Q → Q∘P` for KLR modules.
pub fn rmatrix_klr(engine: &Engine, p: &GradedModule, q: &GradedModule) -> Result<RMatrixResult> {
    let src = convolve_klr(engine, p, q)?;
    let dst = convolve_klr(engine, q, p)?;
    let mat = block_swap(&src, &dst, 0)?;
    certified(&src, &dst, &mat)?;
    let shift = phi_shift(p.algebra(), q.algebra());
    let measured = map_degree(&src.module, &dst.module, &mat);
    Ok(RMatrixResult { map: ModuleMap { matrix: mat, shift }, s: 0, declared_shift: shift, measured_degree: measured, source: src, target: dst, spectral: None })
}

/// `(z'−z)`-adic valuation of the whole matrix and the renormalized value at 0.
pub fn renormalize(spec: &Matrix<MPoly>, hi: usize, lo: usize) -> Option<(u32, Matrix<Scalar>)> {
    let facs: Vec<(usize, usize, u32, MPoly)> = spec
        .entries()
        .map(|(r, c, p)| {
            let (k, rest) = p.factor_linear_power(hi, lo);
            (r, c, k, rest)
        })
        .collect();
    let s = facs.iter().map(|f| f.2).min()?;
    let mut out = Matrix::zeros(spec.nrows(), spec.ncols());
    for (r, c, k, rest) in facs {
        if k == s {
            out.set(r, c, rest.constant_term());
        }
    }
    Some((s, out))
}

/// `r_{M,N} = ((z'−z)^{−s} R_{M_z,N_{z'}})|_{z=z'=0}` with `z` on `M`.
pub fn renormalized_rmatrix(engine: &Engine, m: &GradedModule, n: &GradedModule) -> Result<RMatrixResult> {
    if m.dim() == 0 || n.dim() == 0 {
        return Err(Error::ZeroSpectral("renormalization needs nonzero modules".into()));
    }
    let mz = spectral_twist(engine, m, 0)?;
    let nz = spectral_twist(engine, n, 1)?;
    let spec_src = convolve(engine, &mz, &nz)?;
    let spec_dst = convolve(engine, &nz, &mz)?;
    let spec = block_swap(&spec_src, &spec_dst, 0)?;
    let (s, mat) = renormalize(&spec, 1, 0)
        .ok_or_else(|| Error::ZeroSpectral(format!("R_{{M_z,N_z'}} vanishes identically for {} and {}", m.algebra().render(), n.algebra().render())))?;
    let src = convolve(engine, m, n)?;
    let dst = convolve(engine, n, m)?;
    certified(&src, &dst, &mat)?;
    let declared = phi_shift(m.algebra(), n.algebra()) + 2 * s as i64;
    let measured = map_degree(&src.module, &dst.module, &mat);
    Ok(RMatrixResult {
        map: ModuleMap { matrix: mat, shift: declared },
        s,
        declared_shift: declared,
        measured_degree: measured,
        source: src,
        target: dst,
        spectral: Some(spec),
    })
}

/// The canonical map `M ⊗_naive N → M∘N` for induced `M = Ind M'`, `N = Ind N'`:
/// `σ_w ⊗ (σ_a m' ⊗ σ_b n') ↦ σ_w σ_a σ'_b (m' ⊗ n')` with `σ'_b` the
/// quasi-parabolic image of `σ_b`.
pub fn naive_to_conv(naive: &ConvModule, m: &ConvModule, n: &ConvModule, conv: &ConvModule) -> Result<Matrix<Scalar>> {
    if m.factor_dims.len() != 1 || n.factor_dims.len() != 1 || conv.factor_dims != vec![m.inner_dim(), n.inner_dim()] {
        return Err(Error::Invalid("naive_to_conv expects induced factors".into()));
    }
    let off = m.blocks[0];
    let mut cols = Vec::with_capacity(naive.module.dim());
    for idx in 0..naive.module.dim() {
        let (r, inner) = naive.split_index(idx);
        let parts = naive.inner_parts(inner);
        let (a, i) = m.split_index(parts[0]);
        let (b, j) = n.split_index(parts[1]);
        let mut word = naive.table.words[r].clone();
        word.extend(m.table.words[a].iter());
        for &k in &n.table.words[b] {
            if k == 0 {
                word.extend((1..=off).rev());
                word.push(0);
                word.extend(1..=off);
            } else {
                word.push(k + off);
            }
        }
        let v0 = crate::modrep::unit_vector(conv.index(0, conv.inner_index(&[i, j])));
        cols.push(conv.module.apply_word(&word, &v0));
    }
    Ok(Matrix::from_columns(conv.module.dim(), &cols))
}

/// Positions in a VV product of the basis vectors of its restriction, listed
/// in the order of the KLR product of the restrictions.
pub fn klr_positions(vv: &ConvModule, klr: &ConvModule) -> Result<Vec<usize>> {
    if vv.factor_dims != klr.factor_dims {
        return Err(Error::Invalid("products of different factors".into()));
    }
    let mut out = Vec::with_capacity(klr.module.dim());
    for idx in 0..klr.module.dim() {
        let (r, inner) = klr.split_index(idx);
        let rep = &klr.table.reps[r];
        let pos = vv.table.position(rep).ok_or_else(|| Error::Internal(format!("{rep:?} is not a VV coset representative")))?;
        out.push(vv.index(pos, inner));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
