//! Finite-dimensional graded modules given by generator-action matrices.

mod hom;
mod induce;
mod json;
mod structure;
mod sub;

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::algebra::{relation_instances, AlgebraId, Engine, Gen, Key, Sym};
use crate::error::{Error, Result};
use crate::exactlin::{add_entry, axpy, Coeff, MPoly, Matrix, Scalar, SparseVec};
use crate::quiver::{OrbitConfig, VSeq, Weight};

pub use hom::{find_isomorphism, hom_space, hom_space_all, is_module_map, map_degree, ModuleMap};
pub use induce::{coset_table, induce, ConvModule, Embedding, Inducer, TableKind};
pub use json::{module_from_json, module_to_json};
pub use structure::{composition_structure, enveloping_algebra, radical, CompositionStructure};
pub use sub::{spin, spin_many, Quotient, Subspace, Submodule};

/// A graded module: labelled, graded basis plus one matrix per generator.
/// Matrices act on column vectors; the `e(i)` act as the label projections.
#[derive(Clone)]
pub struct GradedModule<R: Coeff = Scalar> {
    alg: AlgebraId,
    labels: Vec<VSeq>,
    degrees: Vec<i64>,
    actions: BTreeMap<Gen, Matrix<R>>,
    cols: BTreeMap<Gen, Vec<SparseVec<R>>>,
}

impl<R: Coeff> std::fmt::Debug for GradedModule<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule({}, dim {})", self.alg.render(), self.dim())
    }
}

/// Outcome of [`verify_module`].
#[derive(Clone, Debug, Default)]
pub struct ModuleReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn gen_name(g: Gen) -> String {
    match g {
        Gen::S(0) => "pi".into(),
        Gen::S(k) => format!("sigma{k}"),
        Gen::X(l) => format!("x{l}"),
    }
}

pub fn parse_gen_name(s: &str) -> Option<Gen> {
    if s == "pi" {
        return Some(Gen::S(0));
    }
    if let Some(k) = s.strip_prefix("sigma") {
        return k.parse().ok().filter(|&k| k > 0).map(Gen::S);
    }
    s.strip_prefix('x').and_then(|l| l.parse().ok()).filter(|&l| l > 0).map(Gen::X)
}

/// Generators of the algebra in a fixed order (π, σ_1, …, x_1, …).
pub fn generators_of(alg: &AlgebraId) -> Vec<Gen> {
    let m = alg.strands();
    let mut g = Vec::new();
    if alg.is_vv() && m > 0 {
        g.push(Gen::S(0));
    }
    g.extend((1..m).map(Gen::S));
    g.extend((1..=m).map(Gen::X));
    g
}

fn columns_of<R: Coeff>(m: &Matrix<R>) -> Vec<SparseVec<R>> {
    let mut cols = vec![SparseVec::new(); m.ncols()];
    for (i, j, x) in m.entries() {
        cols[j].insert(i, x.clone());
    }
    cols
}

pub fn unit_vector<R: Coeff>(i: usize) -> SparseVec<R> {
    SparseVec::from([(i, R::unit())])
}

impl<R: Coeff> GradedModule<R> {
    /// Assembles a module; shapes are checked, relations are not (see [`verify_module`]).
    pub fn new(alg: AlgebraId, labels: Vec<VSeq>, degrees: Vec<i64>, mut actions: BTreeMap<Gen, Matrix<R>>) -> Result<Self> {
        let d = labels.len();
        if degrees.len() != d {
            return Err(Error::Invalid(format!("{} labels but {} degrees", d, degrees.len())));
        }
        let gens = generators_of(&alg);
        for g in &gens {
            let m = actions.entry(*g).or_insert_with(|| Matrix::zeros(d, d));
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::Invalid(format!("{} matrix is {}x{}, expected {d}x{d}", gen_name(*g), m.nrows(), m.ncols())));
            }
        }
        if let Some(g) = actions.keys().find(|g| !gens.contains(g)) {
            return Err(Error::Invalid(format!("{} is not a generator of {}", gen_name(*g), alg.render())));
        }
        let cols = actions.iter().map(|(g, m)| (*g, columns_of(m))).collect();
        Ok(Self { alg, labels, degrees, actions, cols })
    }

    pub fn zero(alg: AlgebraId) -> Self {
        Self::new(alg, vec![], vec![], BTreeMap::new()).expect("empty module")
    }

    pub fn algebra(&self) -> &AlgebraId {
        &self.alg
    }

    pub fn cfg(&self) -> &OrbitConfig {
        &self.alg.cfg
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VSeq] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn actions(&self) -> &BTreeMap<Gen, Matrix<R>> {
        &self.actions
    }

    pub fn action(&self, g: Gen) -> &Matrix<R> {
        &self.actions[&g]
    }

    pub fn generators(&self) -> Vec<Gen> {
        self.actions.keys().copied().collect()
    }

    /// Image of the `j`-th basis vector under `g`.
    pub fn gen_column(&self, g: Gen, j: usize) -> &SparseVec<R> {
        &self.cols[&g][j]
    }

    pub fn apply_gen(&self, g: Gen, v: &SparseVec<R>) -> SparseVec<R> {
        let cols = &self.cols[&g];
        let mut out = SparseVec::new();
        for (j, c) in v {
            axpy(&mut out, c, &cols[*j]);
        }
        out
    }

    /// `e(i) v`.
    pub fn project(&self, i: &VSeq, v: &SparseVec<R>) -> SparseVec<R> {
        v.iter().filter(|(j, _)| &self.labels[**j] == i).map(|(j, c)| (*j, c.clone())).collect()
    }

    pub fn apply_sym(&self, s: &Sym, v: &SparseVec<R>) -> SparseVec<R> {
        match s {
            Sym::G(g) => self.apply_gen(*g, v),
            Sym::E(i) => self.project(i, v),
        }
    }

    /// `σ_{word} x^exps e(idem) · v`.
    pub fn apply_key_word(&self, word: &[usize], exps: &[u16], idem: &VSeq, v: &SparseVec<R>) -> SparseVec<R> {
        let mut cur = self.project(idem, v);
        for (l, &n) in exps.iter().enumerate() {
            for _ in 0..n {
                cur = self.apply_gen(Gen::X(l + 1), &cur);
            }
        }
        for &k in word.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.apply_gen(Gen::S(k), &cur);
        }
        cur
    }

    /// `σ_{word[0]} ⋯ σ_{word[r-1]} · v`.
    pub fn apply_word(&self, word: &[usize], v: &SparseVec<R>) -> SparseVec<R> {
        let mut cur = v.clone();
        for &k in word.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.apply_gen(Gen::S(k), &cur);
        }
        cur
    }

    pub fn apply_key(&self, key: &Key, v: &SparseVec<R>) -> SparseVec<R> {
        self.apply_key_word(&key.w.reduced_word(), &key.exps, &key.idem, v)
    }

    /// Applies the intertwiner `φ_k` (`φ_0 = π`).
    pub fn apply_phi(&self, k: usize, v: &SparseVec<R>) -> SparseVec<R> {
        if k == 0 {
            return self.apply_gen(Gen::S(0), v);
        }
        let cfg = self.alg.cfg;
        let mut same = SparseVec::new();
        let mut other = SparseVec::new();
        for (j, c) in v {
            let i = &self.labels[*j];
            if cfg.same(i.at(k), i.at(k + 1)) {
                same.insert(*j, c.clone());
            } else {
                other.insert(*j, c.clone());
            }
        }
        let mut out = self.apply_gen(Gen::S(k), &other);
        if !same.is_empty() {
            let sx = self.apply_gen(Gen::S(k), &self.apply_gen(Gen::X(k), &same));
            let xs = self.apply_gen(Gen::X(k), &self.apply_gen(Gen::S(k), &same));
            axpy(&mut out, &R::unit(), &sx);
            axpy(&mut out, &R::unit().negated(), &xs);
        }
        out
    }

    /// `φ_{word[0]} ⋯ φ_{word[r-1]} · v`.
    pub fn apply_phi_word(&self, word: &[usize], v: &SparseVec<R>) -> SparseVec<R> {
        let mut cur = v.clone();
        for &k in word.iter().rev() {
            cur = self.apply_phi(k, &cur);
        }
        cur
    }

    /// Basis vectors whose label lies in the `λ` branch.
    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.labels[j].is_positive()).collect()
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> GradedModule<S> {
        let actions = self.actions.iter().map(|(g, m)| (*g, m.map(&f))).collect();
        GradedModule::new(self.alg.clone(), self.labels.clone(), self.degrees.clone(), actions).expect("same shapes")
    }

    /// Shifts every degree by `d`.
    pub fn shifted(&self, d: i64) -> Self {
        let mut out = self.clone();
        for x in &mut out.degrees {
            *x += d;
        }
        out
    }

    /// Keeps the given basis vectors, which must span a submodule.
    fn select(&self, alg: AlgebraId, idx: &[usize]) -> Self {
        let gens = generators_of(&alg);
        let actions = gens.iter().map(|g| (*g, self.actions[g].select(idx, idx))).collect();
        let labels = idx.iter().map(|&j| self.labels[j].clone()).collect();
        let degrees = idx.iter().map(|&j| self.degrees[j]).collect();
        GradedModule::new(alg, labels, degrees, actions).expect("restricted shapes")
    }

    /// Graded character: multiplicity of each (label, degree).
    pub fn character(&self) -> BTreeMap<(VSeq, i64), usize> {
        let mut out = BTreeMap::new();
        for (l, d) in self.labels.iter().zip(&self.degrees) {
            *out.entry((l.clone(), *d)).or_insert(0) += 1;
        }
        out
    }
}

impl GradedModule<MPoly> {
    /// Sets every spectral variable to zero.
    pub fn evaluate_zero(&self) -> GradedModule<Scalar> {
        self.map_coeffs(|p| p.constant_term())
    }
}

impl GradedModule<Scalar> {
    pub fn to_mpoly(&self) -> GradedModule<MPoly> {
        self.map_coeffs(|s| MPoly::constant(s.clone()))
    }
}

/// The unit object: the one-dimensional module over `W_0 = k`.
pub fn unit_module(cfg: OrbitConfig) -> GradedModule {
    let alg = AlgebraId::vv(cfg, &crate::quiver::ThetaWeight::new(&cfg, Weight::new()).expect("zero weight"));
    GradedModule::new(alg, vec![VSeq(vec![])], vec![0], BTreeMap::new()).expect("unit module")
}

/// Checks labels, homogeneity and every defining relation as matrix identities.
pub fn verify_module<R: Coeff>(engine: &Engine, m: &GradedModule<R>) -> ModuleReport {
    let mut rep = ModuleReport::default();
    let alg = match engine.algebra(&m.alg) {
        Ok(a) => a,
        Err(e) => {
            rep.failures.push(format!("algebra: {e}"));
            return rep;
        }
    };
    let present: Vec<VSeq> = {
        let mut seen = HashSet::new();
        m.labels.iter().filter(|l| seen.insert((*l).clone())).cloned().collect()
    };
    for (j, l) in m.labels.iter().enumerate() {
        if !alg.has_idempotent(l) {
            rep.failures.push(format!("basis vector {j}: label {l} is not an idempotent of {}", m.alg.render()));
        }
    }
    if !rep.ok() {
        return rep;
    }
    for (g, mat) in &m.actions {
        for (r, c, x) in mat.entries() {
            rep.checked += 1;
            let want = match g {
                Gen::X(_) => m.labels[c].clone(),
                Gen::S(k) => alg.act_seq(*k, &m.labels[c]),
            };
            if m.labels[r] != want {
                rep.failures.push(format!("{} maps e{} to e{} (expected e{want})", gen_name(*g), m.labels[c], m.labels[r]));
                continue;
            }
            let gd = alg.gen_degree(*g, &m.labels[c]);
            match x.var_degree() {
                Some(e) if m.degrees[r] + 2 * e as i64 == m.degrees[c] + gd => {}
                _ => rep.failures.push(format!(
                    "{} entry ({r},{c}) = {x} breaks homogeneity: degrees {} -> {}, generator degree {gd}",
                    gen_name(*g),
                    m.degrees[c],
                    m.degrees[r]
                )),
            }
        }
    }
    for i in &present {
        let basis: Vec<usize> = (0..m.dim()).filter(|&j| &m.labels[j] == i).collect();
        for rel in relation_instances(&alg, i) {
            if rel.terms.iter().all(|(_, w)| w.iter().all(|s| matches!(s, Sym::E(_)))) {
                continue;
            }
            for &j in &basis {
                rep.checked += 1;
                let v = unit_vector::<R>(j);
                let mut out = SparseVec::new();
                for (c, word) in &rel.terms {
                    let mut cur = v.clone();
                    for s in word.iter().rev() {
                        cur = m.apply_sym(s, &cur);
                    }
                    axpy(&mut out, &R::from_scalar(c), &cur);
                }
                if !out.is_empty() {
                    rep.failures.push(format!("relation {} fails on basis vector {j}", rel.name));
                }
            }
        }
    }
    rep
}

/// The simple `R_ν̃`-module attached to a sequence of pairwise distinct vertices:
/// basis indexed by the orbit of `i` under swaps of non-adjacent neighbours.
pub fn point_module_klr(cfg: OrbitConfig, i: &VSeq) -> Result<GradedModule> {
    let m = i.len();
    for a in 0..m {
        for b in a + 1..m {
            if cfg.same(i.0[a], i.0[b]) {
                return Err(Error::Invalid(format!("point modules need pairwise distinct vertices, got {i}")));
            }
        }
    }
    let i = VSeq(i.iter().map(|v| cfg.normalize(*v)).collect());
    let mut orbit = vec![i.clone()];
    let mut queue = VecDeque::from([i.clone()]);
    while let Some(j) = queue.pop_front() {
        for k in 1..m {
            if !cfg.adjacent(j.at(k), j.at(k + 1)) {
                let t = j.act(&cfg, k);
                if !orbit.contains(&t) {
                    orbit.push(t.clone());
                    queue.push_back(t);
                }
            }
        }
    }
    let alg = AlgebraId::klr(cfg, &Weight::of_sequence(&i));
    let d = orbit.len();
    let mut actions = BTreeMap::new();
    for k in 1..m {
        let mut s = Matrix::zeros(d, d);
        for (c, j) in orbit.iter().enumerate() {
            if !cfg.adjacent(j.at(k), j.at(k + 1)) {
                let r = orbit.iter().position(|t| *t == j.act(&cfg, k)).expect("orbit closed");
                s.set(r, c, Scalar::unit());
            }
        }
        actions.insert(Gen::S(k), s);
    }
    GradedModule::new(alg, orbit, vec![0; d], actions)
}

/// `Res M = eM` for the Morita idempotent `e = Σ_{i ∈ I^{ν⁺}} e(i)`, with the
/// positions of the kept basis vectors.
pub fn restrict_with_indices<R: Coeff>(m: &GradedModule<R>) -> Result<(GradedModule<R>, Vec<usize>)> {
    if !m.alg.is_vv() {
        return Err(Error::Invalid(format!("restriction expects a VV module, got {}", m.alg.render())));
    }
    let idx = m.positive_indices();
    Ok((m.select(m.alg.restricted(), &idx), idx))
}

pub fn restrict<R: Coeff>(m: &GradedModule<R>) -> Result<GradedModule<R>> {
    restrict_with_indices(m).map(|x| x.0)
}

/// `ψ_z` on a KLR module: `x_l ↦ x_l + z_var`.
pub fn spectral_twist_klr(m: &GradedModule<Scalar>, var: usize) -> Result<GradedModule<MPoly>> {
    if m.alg.is_vv() {
        return Err(Error::Invalid("twist VV modules through their restriction".into()));
    }
    let mut out = m.to_mpoly();
    let z = MPoly::var(var);
    for l in 1..=m.alg.strands() {
        let mut x = out.actions[&Gen::X(l)].clone();
        for j in 0..m.dim() {
            let cur = x.get(j, j);
            x.set(j, j, cur.plus(&z));
        }
        out.actions.insert(Gen::X(l), x);
    }
    out.cols = out.actions.iter().map(|(g, m)| (*g, columns_of(m))).collect();
    Ok(out)
}

/// `M_z = Ind(Res(M)_z)` for a VV module; for a KLR module, `M_z` directly.
pub fn spectral_twist(engine: &Engine, m: &GradedModule<Scalar>, var: usize) -> Result<GradedModule<MPoly>> {
    if m.alg.is_vv() {
        let r = spectral_twist_klr(&restrict(m)?, var)?;
        Ok(induce(engine, &r)?.module)
    } else {
        spectral_twist_klr(m, var)
    }
}

/// Sum of `c · v` into `out` at an index offset.
pub(crate) fn add_shifted<R: Coeff>(out: &mut SparseVec<R>, c: &R, v: &SparseVec<R>, offset: usize) {
    for (j, x) in v {
        add_entry(out, j + offset, &c.times(x));
    }
}

#[cfg(test)]
mod tests;
