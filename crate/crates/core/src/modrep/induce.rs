//! Induction along parabolic and quasi-parabolic embeddings.
//!
//! A vector `σ_u x^a e(j) ⊗ n` with `u = w'·y` (`w'` a minimal coset
//! representative, `y` in the subgroup) is rewritten as `σ_{w'} ⊗ E(y,a,j)·n`
//! minus the strictly shorter terms of `σ_{w'}·E(y,a,j) - σ_u x^a e(j)`, where
//! `E` is the image of the subgroup element under the embedding.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use parking_lot::Mutex;

use super::{add_shifted, GradedModule};
use crate::algebra::{Algebra, AlgebraId, Element, Engine, Key};
use crate::error::{Error, Result};
use crate::exactlin::{Coeff, Matrix, Scalar, SparseVec};
use crate::quiver::VSeq;
use crate::weyl::{all_elements_a, all_elements_b, offsets, quasi_parabolic_subgroup, young_subgroup, CosetTable, SignedPerm};

/// Which coset table a product is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// `S_M / (S_{m_1} × ⋯)`.
    KlrYoung,
    /// `W^B_M / (S_{m_1} × ⋯)`.
    VvYoung,
    /// `W^B_M / (W^B_{m_1} × ⋯)`.
    VvQuasi,
}

/// How the factor algebras sit inside the big one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// KLR factors, blocks of strands side by side.
    Parabolic,
    /// VV factors; the `π` of a block at offset `o` goes to `σ_o ⋯ σ_1 π σ_1 ⋯ σ_o`.
    QuasiParabolic,
}

type TableCache = Mutex<HashMap<(TableKind, Vec<usize>), Arc<CosetTable>>>;

/// Cached coset table for the given block sizes.
pub fn coset_table(kind: TableKind, blocks: &[usize]) -> Arc<CosetTable> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind, blocks.to_vec());
    if let Some(t) = cache.lock().get(&key) {
        return t.clone();
    }
    let total: usize = blocks.iter().sum();
    let table = match kind {
        TableKind::KlrYoung => CosetTable::build(total, &all_elements_a(total), &young_subgroup(blocks)),
        TableKind::VvYoung => CosetTable::build(total, &all_elements_b(total), &young_subgroup(blocks)),
        TableKind::VvQuasi => CosetTable::build(total, &all_elements_b(total), &quasi_parabolic_subgroup(blocks)),
    };
    let table = Arc::new(table);
    cache.lock().entry(key).or_insert(table).clone()
}

/// The part of a block-preserving signed permutation acting on one block.
pub(crate) fn block_part(y: &SignedPerm, off: usize, size: usize) -> SignedPerm {
    let img = (0..size)
        .map(|a| {
            let x = y.images()[off + a];
            x.signum() * (x.abs() - off as i8)
        })
        .collect();
    SignedPerm::from_images(img)
}

/// An induced module together with the bookkeeping of its basis
/// `σ_w ⊗ (n_1 ⊗ ⋯ ⊗ n_k)`, indexed `coset · inner_dim + inner`.
#[derive(Clone, Debug)]
pub struct ConvModule<R: Coeff = Scalar> {
    pub module: GradedModule<R>,
    pub table: Arc<CosetTable>,
    pub embedding: Embedding,
    pub blocks: Vec<usize>,
    pub factor_dims: Vec<usize>,
}

impl<R: Coeff> ConvModule<R> {
    pub fn inner_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// Flat index of a tuple of factor basis indices (first factor slowest).
    pub fn inner_index(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.factor_dims).fold(0, |acc, (i, d)| acc * d + i)
    }

    pub fn inner_parts(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factor_dims.len()];
        for f in (0..self.factor_dims.len()).rev() {
            out[f] = flat % self.factor_dims[f];
            flat /= self.factor_dims[f];
        }
        out
    }

    pub fn index(&self, coset: usize, inner: usize) -> usize {
        coset * self.inner_dim() + inner
    }

    /// `(coset position, inner flat index)` of a basis vector.
    pub fn split_index(&self, idx: usize) -> (usize, usize) {
        (idx / self.inner_dim(), idx % self.inner_dim())
    }

    /// Text such as `σ[1,0]·(0 ⊗ 1)` for a basis vector.
    pub fn basis_name(&self, idx: usize) -> String {
        let (r, n) = self.split_index(idx);
        let parts: Vec<String> = self.inner_parts(n).iter().map(|p| p.to_string()).collect();
        let w = &self.table.words[r];
        let head = if w.is_empty() { "e".to_string() } else { crate::weyl::word_text(w) };
        format!("{head}·({})", parts.join(" ⊗ "))
    }
}

type Decomp = Rc<Vec<(usize, Key, Scalar)>>;

/// Straightening engine for one induced module.
pub struct Inducer<R: Coeff> {
    big: Arc<Algebra>,
    table: Arc<CosetTable>,
    embedding: Embedding,
    blocks: Vec<usize>,
    offs: Vec<usize>,
    factors: Vec<GradedModule<R>>,
    factor_algs: Vec<Arc<Algebra>>,
    factor_dims: Vec<usize>,
    inner_labels: Vec<VSeq>,
    inner_degrees: Vec<i64>,
    memo: HashMap<Key, Decomp>,
}

impl<R: Coeff> Inducer<R> {
    pub fn new(engine: &Engine, big: &AlgebraId, kind: TableKind, embedding: Embedding, factors: Vec<GradedModule<R>>) -> Result<Self> {
        let bigalg = engine.algebra(big)?;
        let blocks: Vec<usize> = factors.iter().map(|f| f.algebra().strands()).collect();
        if blocks.iter().sum::<usize>() != big.strands() {
            return Err(Error::AlgebraMismatch(format!("factor strands {blocks:?} do not add up to {}", big.strands())));
        }
        for f in &factors {
            if f.cfg() != &big.cfg {
                return Err(Error::AlgebraMismatch("factors use different orbit configurations".into()));
            }
            let want_vv = embedding == Embedding::QuasiParabolic;
            if f.algebra().is_vv() != want_vv {
                return Err(Error::AlgebraMismatch(format!("factor over {} does not fit this embedding", f.algebra().render())));
            }
        }
        let factor_algs = factors.iter().map(|f| engine.algebra(f.algebra())).collect::<Result<Vec<_>>>()?;
        let factor_dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
        let mut inner_labels = vec![VSeq(vec![])];
        let mut inner_degrees = vec![0i64];
        for f in &factors {
            let mut nl = Vec::new();
            let mut nd = Vec::new();
            for (l, d) in inner_labels.iter().zip(&inner_degrees) {
                for j in 0..f.dim() {
                    nl.push(l.concat(&f.labels()[j]));
                    nd.push(d + f.degrees()[j]);
                }
            }
            inner_labels = nl;
            inner_degrees = nd;
        }
        if let Some(l) = inner_labels.iter().find(|l| !bigalg.has_idempotent(l)) {
            return Err(Error::AlgebraMismatch(format!("e{l} is not an idempotent of {}", big.render())));
        }
        Ok(Self {
            big: bigalg,
            table: coset_table(kind, &blocks),
            embedding,
            offs: offsets(&blocks),
            blocks,
            factors,
            factor_algs,
            factor_dims,
            inner_labels,
            inner_degrees,
            memo: HashMap::new(),
        })
    }

    fn inner_dim(&self) -> usize {
        self.inner_labels.len()
    }

    /// The big-algebra element `E(y, a, j)` for a subgroup key.
    fn embed(&self, sub: &Key) -> Element {
        match self.embedding {
            Embedding::Parabolic => Element::single(sub.clone(), Scalar::one()),
            Embedding::QuasiParabolic => {
                let mut word = Vec::new();
                for (f, &o) in self.offs.iter().enumerate() {
                    let y = block_part(&sub.w, o, self.blocks[f]);
                    for &k in self.factor_algs[f].word(&y).iter() {
                        if k == 0 {
                            word.extend((1..=o).rev());
                            word.push(0);
                            word.extend(1..=o);
                        } else {
                            word.push(k + o);
                        }
                    }
                }
                let base = self.big.basis(SignedPerm::identity(self.big.strands()), sub.exps.clone(), sub.idem.clone());
                self.big.left_mul_word(&word, &base)
            }
        }
    }

    /// Writes `σ_u x^a e(j)` as `Σ c · σ_{rep} E(sub)` modulo the module relations.
    fn decompose(&mut self, key: &Key) -> Result<Decomp> {
        if let Some(d) = self.memo.get(key) {
            return Ok(d.clone());
        }
        let (r, h) = self
            .table
            .split(&key.w)
            .ok_or_else(|| Error::Internal(format!("{:?} is not in the coset table", key.w)))?;
        let sub = Key { w: h.clone(), exps: key.exps.clone(), idem: key.idem.clone() };
        let p = self.big.left_mul_word(&self.table.words[r], &self.embed(&sub));
        if p.coeff(key) != Scalar::one() {
            return Err(Error::Unsupported(format!(
                "σ_{:?}·E(sub) does not have leading term {} (got {})",
                self.table.words[r],
                self.big.render(&Element::single(key.clone(), Scalar::one())),
                self.big.render(&p)
            )));
        }
        let len = key.w.length();
        let mut acc: BTreeMap<(usize, Key), Scalar> = BTreeMap::new();
        acc.insert((r, sub), Scalar::one());
        for (t, c) in p.terms() {
            if t == key {
                continue;
            }
            if t.w.length() >= len {
                return Err(Error::Unsupported(format!(
                    "straightening σ_{:?}·E(sub) left the non-shorter term {}",
                    self.table.words[r],
                    self.big.render(&Element::single(t.clone(), c.clone()))
                )));
            }
            for (r2, s2, c2) in self.decompose(t)?.iter() {
                let e = acc.entry((*r2, s2.clone())).or_insert_with(Scalar::nil);
                *e -= c * c2;
            }
        }
        let out: Decomp = Rc::new(acc.into_iter().filter(|(_, c)| !c.is_nil()).map(|((r, s), c)| (r, s, c)).collect());
        self.memo.insert(key.clone(), out.clone());
        Ok(out)
    }

    /// Action of a subgroup key on the inner tensor basis vector `n`.
    #[allow(clippy::needless_range_loop)]
    fn inner_act(&self, sub: &Key, n: usize) -> SparseVec<R> {
        if self.inner_labels[n] != sub.idem {
            return SparseVec::new();
        }
        let k = self.factors.len();
        let mut parts = vec![0; k];
        let mut rest = n;
        for f in (0..k).rev() {
            parts[f] = rest % self.factor_dims[f];
            rest /= self.factor_dims[f];
        }
        let mut acc: SparseVec<R> = SparseVec::from([(0usize, R::unit())]);
        for f in 0..k {
            let (o, b) = (self.offs[f], self.blocks[f]);
            let y = block_part(&sub.w, o, b);
            let word = self.factor_algs[f].word(&y);
            let idem = VSeq(sub.idem.0[o..o + b].to_vec());
            let v = self.factors[f].apply_key_word(&word, &sub.exps[o..o + b], &idem, &super::unit_vector(parts[f]));
            if v.is_empty() {
                return SparseVec::new();
            }
            let d = self.factor_dims[f];
            let mut next = SparseVec::new();
            for (i, x) in &acc {
                for (j, y) in &v {
                    next.insert(i * d + j, x.times(y));
                }
            }
            acc = next;
        }
        acc
    }

    /// Builds the induced module.
    pub fn build(mut self) -> Result<ConvModule<R>> {
        let m = self.big.strands();
        let nd = self.inner_dim();
        let nreps = self.table.len();
        let cfg = *self.big.cfg();
        let mut labels = Vec::with_capacity(nreps * nd);
        let mut degrees = Vec::with_capacity(nreps * nd);
        for r in 0..nreps {
            let rep = &self.table.reps[r];
            for n in 0..nd {
                let j = &self.inner_labels[n];
                labels.push(rep.act_seq(&cfg, j));
                let key = Key { w: rep.clone(), exps: vec![0; m], idem: j.clone() };
                degrees.push(self.big.key_degree(&key) + self.inner_degrees[n]);
            }
        }
        let mut actions = BTreeMap::new();
        let mut act_memo: HashMap<(Key, usize), SparseVec<R>> = HashMap::new();
        for g in self.big.generators() {
            let mut cols = Vec::with_capacity(nreps * nd);
            for r in 0..nreps {
                for n in 0..nd {
                    let key = Key { w: self.table.reps[r].clone(), exps: vec![0; m], idem: self.inner_labels[n].clone() };
                    let elem = self.big.gen_left(g, &key);
                    let mut col = SparseVec::new();
                    for (t, c) in elem.terms() {
                        for (r2, sub, c2) in self.decompose(t)?.iter() {
                            let memo_key = (sub.clone(), n);
                            if !act_memo.contains_key(&memo_key) {
                                let v = self.inner_act(sub, n);
                                act_memo.insert(memo_key.clone(), v);
                            }
                            let v = &act_memo[&memo_key];
                            add_shifted(&mut col, &R::from_scalar(&(c * c2)), v, r2 * nd);
                        }
                    }
                    cols.push(col);
                }
            }
            actions.insert(g, Matrix::from_columns(nreps * nd, &cols));
        }
        let module = GradedModule::new(self.big.id().clone(), labels, degrees, actions)?;
        Ok(ConvModule { module, table: self.table, embedding: self.embedding, blocks: self.blocks, factor_dims: self.factor_dims })
    }
}

/// `W_ν e ⊗_{R_{ν⁺}} N` for a KLR module `N` over positive vertices.
pub fn induce<R: Coeff>(engine: &Engine, n: &GradedModule<R>) -> Result<ConvModule<R>> {
    if n.algebra().is_vv() {
        return Err(Error::Invalid(format!("induction expects a KLR module, got {}", n.algebra().render())));
    }
    if n.algebra().weight.iter().any(|(v, _)| !v.is_positive()) {
        return Err(Error::Invalid("induction expects a weight on the λ branch".into()));
    }
    let big = AlgebraId::vv_from_positive(*n.cfg(), &n.algebra().weight)?;
    Inducer::new(engine, &big, TableKind::VvYoung, Embedding::Parabolic, vec![n.clone()])?.build()
}
