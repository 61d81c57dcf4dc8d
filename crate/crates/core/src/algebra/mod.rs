//! KLR algebras `R_ν̃` and VV algebras `W_ν` in the basis
//! `σ_w x_1^{n_1} ⋯ x_m^{n_m} e(i)`, with multiplication by straightening.

mod element;
mod relations;

use std::cell::Cell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::One;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{q, MPoly, Scalar};
use crate::quiver::{klr_sequences, theta_sequences, OrbitConfig, ThetaWeight, VSeq, Vertex, Weight};
use crate::weyl::SignedPerm;

pub use element::{Element, Key};
pub use relations::{check_defining_relations, relation_instances, Relation, RelationReport, Sym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(rename = "KLR")]
    Klr,
    #[serde(rename = "VV")]
    Vv,
}

/// Identifies `R_ν̃` (KLR) or `W_ν` (VV) over a fixed orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraId {
    pub kind: AlgebraKind,
    pub weight: Weight,
    pub cfg: OrbitConfig,
}

impl AlgebraId {
    pub fn vv(cfg: OrbitConfig, nu: &ThetaWeight) -> Self {
        Self { kind: AlgebraKind::Vv, weight: nu.weight().clone(), cfg }
    }

    pub fn klr(cfg: OrbitConfig, nu: &Weight) -> Self {
        Self { kind: AlgebraKind::Klr, weight: Weight::from_pairs(&cfg, &nu.iter().collect::<Vec<_>>()), cfg }
    }

    /// The VV algebra whose positive part is the given KLR weight.
    pub fn vv_from_positive(cfg: OrbitConfig, pos: &Weight) -> Result<Self> {
        Ok(Self::vv(cfg, &ThetaWeight::from_positive(&cfg, pos)?))
    }

    pub fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if self.kind == AlgebraKind::Vv {
            ThetaWeight::new(&self.cfg, self.weight.clone())?;
        }
        Ok(())
    }

    pub fn strands(&self) -> usize {
        match self.kind {
            AlgebraKind::Klr => self.weight.height() as usize,
            AlgebraKind::Vv => (self.weight.height() / 2) as usize,
        }
    }

    pub fn is_vv(&self) -> bool {
        self.kind == AlgebraKind::Vv
    }

    /// Weight over the `λ` branch: `ν⁺` for VV, the weight itself for KLR.
    pub fn positive_weight(&self) -> Weight {
        match self.kind {
            AlgebraKind::Klr => self.weight.clone(),
            AlgebraKind::Vv => self.weight.positive_part(),
        }
    }

    /// The KLR algebra `R_{ν⁺}` that a VV algebra restricts to.
    pub fn restricted(&self) -> AlgebraId {
        AlgebraId::klr(self.cfg, &self.positive_weight())
    }

    pub fn idempotents(&self) -> Vec<VSeq> {
        match self.kind {
            AlgebraKind::Klr => klr_sequences(&self.weight),
            AlgebraKind::Vv => {
                theta_sequences(&self.cfg, &ThetaWeight::new(&self.cfg, self.weight.clone()).expect("θ-symmetric"))
            }
        }
    }

    pub fn render(&self) -> String {
        let k = match self.kind {
            AlgebraKind::Klr => "R",
            AlgebraKind::Vv => "W",
        };
        format!("{k}[{}]", self.weight.render())
    }
}

/// Generators acting by left multiplication: `S(0) = π`, `S(k) = σ_k`, `X(l) = x_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S(usize),
    X(usize),
}

/// Deliberate corruption of one rewrite rule, used to check that the test
/// harnesses notice a wrong relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationTweak {
    /// Flips the sign of the correction term in `x_k σ_k e(i) = σ_k x_{k+1} e(i) - e(i)`.
    FlipXSigmaSign,
}

/// Homogeneity of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

const DEPTH_BUDGET: usize = 20_000;

thread_local! {
    static DEPTH: Cell<usize> = const { Cell::new(0) };
}

struct DepthGuard;

impl DepthGuard {
    fn enter() -> Self {
        DEPTH.with(|d| {
            let v = d.get() + 1;
            assert!(v <= DEPTH_BUDGET, "internal consistency failure: straightening exceeded its step budget");
            d.set(v);
        });
        DepthGuard
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        DEPTH.with(|d| d.set(d.get() - 1));
    }
}

/// `Q_{i,j}(x_a, x_b)` as a polynomial in the `x` variables (index `l-1` for `x_l`).
pub fn q_poly(cfg: &OrbitConfig, i: Vertex, j: Vertex, a: usize, b: usize) -> MPoly {
    if cfg.same(i, j) {
        return MPoly::zero();
    }
    let ij = cfg.arrow_count(i, j);
    let ji = cfg.arrow_count(j, i);
    let sign = if ij % 2 == 1 { -1 } else { 1 };
    MPoly::diff(a - 1, b - 1).pow(ij + ji).scale(&q(sign))
}

/// A KLR or VV algebra with a memoized straightening engine.
pub struct Algebra {
    id: AlgebraId,
    m: usize,
    idems: Vec<VSeq>,
    idem_set: HashSet<VSeq>,
    special_q: Option<Vertex>,
    tweak: Option<RelationTweak>,
    words: Mutex<HashMap<SignedPerm, Arc<Vec<usize>>>>,
    cache: Mutex<HashMap<(Gen, Key), Element>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({})", self.id.render())
    }
}

impl Algebra {
    pub fn new(id: AlgebraId) -> Result<Self> {
        Self::build(id, None, None)
    }

    pub fn with_tweak(id: AlgebraId, tweak: Option<RelationTweak>) -> Result<Self> {
        Self::build(id, None, tweak)
    }

    /// Treats `q` (and `q^{-1} = θ(q)`) as a vertex of the orbit so that the
    /// `q`-dependent branches of the π relations can be exercised.
    pub fn with_special_q(id: AlgebraId, q: Vertex) -> Result<Self> {
        Self::build(id, Some(q), None)
    }

    fn build(id: AlgebraId, special_q: Option<Vertex>, tweak: Option<RelationTweak>) -> Result<Self> {
        id.validate()?;
        let idems = id.idempotents();
        let idem_set = idems.iter().cloned().collect();
        Ok(Self {
            m: id.strands(),
            id,
            idems,
            idem_set,
            special_q,
            tweak,
            words: Mutex::new(HashMap::new()),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn id(&self) -> &AlgebraId {
        &self.id
    }

    pub fn cfg(&self) -> &OrbitConfig {
        &self.id.cfg
    }

    pub fn strands(&self) -> usize {
        self.m
    }

    pub fn is_vv(&self) -> bool {
        self.id.is_vv()
    }

    pub fn idempotents(&self) -> &[VSeq] {
        &self.idems
    }

    pub fn has_idempotent(&self, i: &VSeq) -> bool {
        self.idem_set.contains(i)
    }

    /// Generators available in this algebra: π (VV only), σ_1..σ_{m-1}, x_1..x_m.
    pub fn generators(&self) -> Vec<Gen> {
        let mut g = Vec::new();
        if self.is_vv() && self.m > 0 {
            g.push(Gen::S(0));
        }
        g.extend((1..self.m).map(Gen::S));
        g.extend((1..=self.m).map(Gen::X));
        g
    }

    /// Cached lex-minimal reduced word.
    pub fn word(&self, w: &SignedPerm) -> Arc<Vec<usize>> {
        if let Some(x) = self.words.lock().get(w) {
            return x.clone();
        }
        let word = Arc::new(w.reduced_word());
        self.words.lock().insert(w.clone(), word.clone());
        word
    }

    pub(crate) fn is_q(&self, v: Vertex) -> i32 {
        match self.special_q {
            Some(q) if self.cfg().same(v, q) => 1,
            Some(q) if self.cfg().same(v, q.theta()) => -1,
            _ => 0,
        }
    }

    pub fn act_seq(&self, k: usize, i: &VSeq) -> VSeq {
        i.act(self.cfg(), k)
    }

    pub fn left_idem(&self, key: &Key) -> VSeq {
        key.w.act_seq(self.cfg(), &key.idem)
    }

    fn same(&self, a: Vertex, b: Vertex) -> bool {
        self.cfg().same(a, b)
    }

    // ---- constructors ----

    pub fn basis(&self, w: SignedPerm, exps: Vec<u16>, idem: VSeq) -> Element {
        Element::single(Key { w, exps, idem }, Scalar::one())
    }

    fn key_elem(&self, key: &Key) -> Element {
        Element::single(key.clone(), Scalar::one())
    }

    pub fn e(&self, i: &VSeq) -> Element {
        self.basis(SignedPerm::identity(self.m), vec![0; self.m], i.clone())
    }

    pub fn one(&self) -> Element {
        let mut out = Element::zero();
        for i in &self.idems {
            out.add_assign(&self.e(i));
        }
        out
    }

    /// The generator as an algebra element (summed over all idempotents).
    pub fn gen_elem(&self, g: Gen) -> Element {
        self.left_mul_gen(g, &self.one())
    }

    // ---- degrees ----

    /// Degree of the generator `g` on the idempotent `i` (to its right).
    pub fn gen_degree(&self, g: Gen, i: &VSeq) -> i64 {
        match g {
            Gen::X(_) => 2,
            Gen::S(0) => (self.is_q(i.at(1)) != 0) as i64,
            Gen::S(k) => -self.cfg().bilinear(i.at(k), i.at(k + 1)),
        }
    }

    pub fn key_degree(&self, key: &Key) -> i64 {
        let mut d: i64 = key.exps.iter().map(|&n| 2 * n as i64).sum();
        let mut seq = key.idem.clone();
        for &k in self.word(&key.w).iter().rev() {
            d += self.gen_degree(Gen::S(k), &seq);
            seq = self.act_seq(k, &seq);
        }
        d
    }

    pub fn degree(&self, a: &Element) -> Degree {
        let mut ds = a.terms().map(|(k, _)| self.key_degree(k));
        match ds.next() {
            None => Degree::Zero,
            Some(d) => {
                if ds.all(|x| x == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Inhomogeneous
                }
            }
        }
    }

    /// `Σ_{a<b, w(a)>w(b)} (-(i_a,i_b) + 2[i_a,i_b])`.
    pub fn deg_phi(&self, w: &SignedPerm, i: &VSeq) -> i64 {
        let c = self.cfg();
        let img = w.images();
        let mut d = 0;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] > img[b] {
                    d += -c.bilinear(i.0[a], i.0[b]) + 2 * c.delta(i.0[a], i.0[b]);
                }
            }
        }
        d
    }

    // ---- straightening ----

    pub fn left_mul_gen(&self, g: Gen, a: &Element) -> Element {
        let mut out = Element::zero();
        for (k, c) in a.terms() {
            out.add_scaled(&self.gen_left(g, k), c);
        }
        out
    }

    /// `σ_{word[0]} ⋯ σ_{word[r-1]} · a`.
    pub fn left_mul_word(&self, word: &[usize], a: &Element) -> Element {
        let mut cur = a.clone();
        for &k in word.iter().rev() {
            cur = self.left_mul_gen(Gen::S(k), &cur);
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    /// `x^exps · a`.
    pub fn left_mul_monomial(&self, exps: &[u16], a: &Element) -> Element {
        let mut cur = a.clone();
        for (l, &n) in exps.iter().enumerate() {
            for _ in 0..n {
                cur = self.left_mul_gen(Gen::X(l + 1), &cur);
            }
        }
        cur
    }

    /// `p(x) · a` for a polynomial in the `x` variables (variable `l-1` is `x_l`).
    pub fn left_mul_poly(&self, p: &MPoly, a: &Element) -> Element {
        let mut out = Element::zero();
        for (e, c) in p.terms() {
            let mut exps = vec![0u16; self.m];
            for (v, &n) in e.iter().enumerate() {
                assert!(v < self.m, "polynomial variable out of range");
                exps[v] = n;
            }
            out.add_scaled(&self.left_mul_monomial(&exps, a), c);
        }
        out
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut out = Element::zero();
        for (kb, cb) in b.terms() {
            let lb = self.left_idem(kb);
            let base = self.key_elem(kb);
            for (ka, ca) in a.terms() {
                if ka.idem != lb {
                    continue;
                }
                let t = self.left_mul_monomial(&ka.exps, &base);
                let t = self.left_mul_word(&self.word(&ka.w), &t);
                out.add_scaled(&t, &(ca * cb));
            }
        }
        Ok(out)
    }

    fn check_member(&self, a: &Element) -> Result<()> {
        for (k, _) in a.terms() {
            if k.w.rank() != self.m || k.exps.len() != self.m || !self.has_idempotent(&k.idem) {
                return Err(Error::AlgebraMismatch(format!(
                    "term {} does not belong to {}",
                    k.render(&self.word(&k.w)),
                    self.id.render()
                )));
            }
            if !self.is_vv() && !k.w.is_unsigned() {
                return Err(Error::AlgebraMismatch("π does not exist in a KLR algebra".into()));
            }
        }
        Ok(())
    }

    /// Left multiplication of a generator on a basis element, memoized.
    pub fn gen_left(&self, g: Gen, key: &Key) -> Element {
        let ck = (g, key.clone());
        if let Some(x) = self.cache.lock().get(&ck) {
            return x.clone();
        }
        let _guard = DepthGuard::enter();
        let out = match g {
            Gen::X(l) => self.x_left(l, key),
            Gen::S(k) => self.s_left(k, key),
        };
        self.cache.lock().insert(ck, out.clone());
        out
    }

    fn x_left(&self, l: usize, key: &Key) -> Element {
        assert!(l >= 1 && l <= self.m, "x_{l} out of range");
        if key.w.is_identity() {
            let mut exps = key.exps.clone();
            exps[l - 1] += 1;
            return self.basis(key.w.clone(), exps, key.idem.clone());
        }
        let word = self.word(&key.w);
        let a = word[0];
        let rest_w = SignedPerm::generator(self.m, a).compose(&key.w);
        let rest = Key { w: rest_w, exps: key.exps.clone(), idem: key.idem.clone() };
        if a == 0 {
            let inner = self.gen_left(Gen::X(l), &rest);
            let moved = self.left_mul_gen(Gen::S(0), &inner);
            return if l == 1 { moved.scaled(&-Scalar::one()) } else { moved };
        }
        // x_l σ_a e(i') = σ_a x_{s_a(l)} e(i') + correction
        let la = if l == a {
            a + 1
        } else if l == a + 1 {
            a
        } else {
            l
        };
        let inner = self.gen_left(Gen::X(la), &rest);
        let mut out = self.left_mul_gen(Gen::S(a), &inner);
        let ip = self.left_idem(&rest);
        if self.same(ip.at(a), ip.at(a + 1)) {
            let mut sign = if l == a {
                -1
            } else if l == a + 1 {
                1
            } else {
                0
            };
            if self.tweak == Some(RelationTweak::FlipXSigmaSign) {
                sign = -sign;
            }
            if sign != 0 {
                out.add_scaled(&self.key_elem(&rest), &q(sign));
            }
        }
        out
    }

    fn s_left(&self, k: usize, key: &Key) -> Element {
        assert!(k < self.m, "σ_{k} out of range");
        assert!(k > 0 || self.is_vv(), "π does not exist in a KLR algebra");
        let g = SignedPerm::generator(self.m, k);
        let sw = g.compose(&key.w);
        if sw.length() > key.w.length() {
            let mut u = vec![k];
            u.extend_from_slice(&self.word(&key.w));
            let t = self.word(&sw);
            let mut out = self.basis(sw, key.exps.clone(), key.idem.clone());
            out.add_assign(&self.rewrite(&[], &u, &t, key));
            return out;
        }
        // σ_w = σ_k σ_{s_k w} + C, so σ_k σ_w = σ_k^2 σ_{s_k w} + σ_k C
        let mut t = vec![k];
        t.extend_from_slice(&self.word(&sw));
        let c = self.rewrite(&[], &self.word(&key.w), &t, key);
        let low = Key { w: sw, exps: key.exps.clone(), idem: key.idem.clone() };
        let i2 = self.left_idem(&low);
        let low_e = self.key_elem(&low);
        let mut out = if k == 0 {
            match self.is_q(i2.at(1)) {
                0 => low_e,
                s => self.gen_left(Gen::X(1), &low).scaled(&q(s as i64)),
            }
        } else {
            let qp = q_poly(self.cfg(), i2.at(k), i2.at(k + 1), k + 1, k);
            self.left_mul_poly(&qp, &low_e)
        };
        out.add_assign(&self.left_mul_gen(Gen::S(k), &c));
        out
    }

    /// Returns `C` with `σ_{prefix·u} x^P e(j) = σ_{prefix·t} x^P e(j) + C`,
    /// where `u`, `t` are reduced words of the same element and the base key
    /// supplies `P` and `j`.
    fn rewrite(&self, prefix: &[usize], u: &[usize], t: &[usize], base: &Key) -> Element {
        if u == t {
            return Element::zero();
        }
        if u[0] == t[0] {
            let mut p = prefix.to_vec();
            p.push(u[0]);
            return self.rewrite(&p, &u[1..], &t[1..], base);
        }
        let (a, b) = (t[0], u[0]);
        let mab = braid_order(a, b);
        let elem = SignedPerm::from_word(self.m, u);
        let delta = SignedPerm::from_word(self.m, &alternating(a, b, mab));
        let v = delta.inverse().compose(&elem);
        let rv = self.word(&v);
        let mut zb = alternating(b, a, mab);
        zb.extend_from_slice(&rv);
        let mut za = alternating(a, b, mab);
        za.extend_from_slice(&rv);
        let mut out = self.rewrite(prefix, u, &zb, base);
        out.add_assign(&self.braid_correction(prefix, &alternating(b, a, mab), &v, base));
        out.add_assign(&self.rewrite(prefix, &za, t, base));
        out
    }

    /// Correction `σ_prefix (σ_lhs - σ_rhs) σ_v x^P e(j)` for a braid move.
    fn braid_correction(&self, prefix: &[usize], lhs: &[usize], v: &SignedPerm, base: &Key) -> Element {
        let low = Key { w: v.clone(), exps: base.exps.clone(), idem: base.idem.clone() };
        let i = self.left_idem(&low);
        let inner = match lhs.len() {
            2 => return Element::zero(),
            3 => {
                let k = *lhs.iter().min().expect("nonempty");
                if !self.same(i.at(k), i.at(k + 2)) {
                    return Element::zero();
                }
                let q1 = q_poly(self.cfg(), i.at(k), i.at(k + 1), k + 1, k);
                let q2 = q_poly(self.cfg(), i.at(k), i.at(k + 1), k + 1, k + 2);
                let d = q1.sub(&q2).div_linear_diff(k - 1, k + 1).unwrap_or_else(|| {
                    panic!("internal consistency failure: braid defect not divisible at {i}")
                });
                // σ_{k+1}σ_kσ_{k+1} - σ_kσ_{k+1}σ_k = D
                let sign = if lhs[0] == k + 1 { 1 } else { -1 };
                self.left_mul_poly(&d, &self.key_elem(&low)).scaled(&q(sign))
            }
            4 => {
                let s = self.is_q(i.at(1));
                if s == 0 || !self.same(i.at(1), i.at(2).theta()) {
                    return Element::zero();
                }
                // (σ_1π)^2 - (πσ_1)^2 = ±σ_1
                let sign = if lhs[0] == 1 { s } else { -s };
                self.gen_left(Gen::S(1), &low).scaled(&q(sign as i64))
            }
            _ => unreachable!("braid order"),
        };
        if inner.is_zero() {
            return inner;
        }
        self.left_mul_word(prefix, &inner)
    }

    // ---- intertwiners ----

    /// `φ_k · a`, with `φ_0 = π`.
    pub fn phi_left(&self, k: usize, a: &Element) -> Element {
        if k == 0 {
            return self.left_mul_gen(Gen::S(0), a);
        }
        let mut out = Element::zero();
        for (key, c) in a.terms() {
            let i = self.left_idem(key);
            let t = if self.same(i.at(k), i.at(k + 1)) {
                let sx = self.left_mul_gen(Gen::S(k), &self.gen_left(Gen::X(k), key));
                let xs = self.left_mul_gen(Gen::X(k), &self.gen_left(Gen::S(k), key));
                sx.sub(&xs)
            } else {
                self.gen_left(Gen::S(k), key)
            };
            out.add_scaled(&t, c);
        }
        out
    }

    /// `φ_{word[0]} ⋯ φ_{word[r-1]} · a`.
    pub fn phi_word_left(&self, word: &[usize], a: &Element) -> Element {
        let mut cur = a.clone();
        for &k in word.iter().rev() {
            cur = self.phi_left(k, &cur);
        }
        cur
    }

    /// The intertwiner `φ_k = Σ_i φ_k e(i)`.
    pub fn intertwiner(&self, k: usize) -> Element {
        self.phi_left(k, &self.one())
    }

    /// `φ_w` along the fixed reduced word of `w`.
    pub fn phi_word(&self, w: &SignedPerm) -> Element {
        self.phi_word_left(&self.word(w), &self.one())
    }

    pub fn render(&self, a: &Element) -> String {
        a.render(&|w| self.word(w).to_vec())
    }
}

/// Shared registry of algebras, so that memoized straightening is reused
/// across every module built over the same `AlgebraId`.
#[derive(Default)]
pub struct Engine {
    tweak: Option<RelationTweak>,
    algebras: Mutex<HashMap<AlgebraId, Arc<Algebra>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// An engine whose algebras all carry the given relation corruption.
    pub fn with_tweak(tweak: RelationTweak) -> Self {
        Self { tweak: Some(tweak), algebras: Mutex::new(HashMap::new()) }
    }

    pub fn tweak(&self) -> Option<RelationTweak> {
        self.tweak
    }

    pub fn algebra(&self, id: &AlgebraId) -> Result<Arc<Algebra>> {
        if let Some(a) = self.algebras.lock().get(id) {
            return Ok(a.clone());
        }
        let a = Arc::new(Algebra::with_tweak(id.clone(), self.tweak)?);
        Ok(self.algebras.lock().entry(id.clone()).or_insert(a).clone())
    }
}

pub(crate) fn braid_order(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi - lo >= 2 {
        2
    } else if lo == 0 {
        4
    } else {
        3
    }
}

pub(crate) fn alternating(a: usize, b: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

#[cfg(test)]
mod tests;
