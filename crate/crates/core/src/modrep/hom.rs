//! Homogeneous module maps: intertwiner equations and isomorphism search.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GradedModule;
use crate::exactlin::{add_entry, q, Coeff, Matrix, Scalar, SparseVec};

/// A homogeneous module map with its degree shift.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<R: Coeff = Scalar> {
    pub matrix: Matrix<R>,
    pub shift: i64,
}

/// `F A^src_g = A^tgt_g F` for every generator.
pub fn is_module_map<R: Coeff>(src: &GradedModule<R>, tgt: &GradedModule<R>, f: &Matrix<R>) -> bool {
    if src.algebra() != tgt.algebra() || f.nrows() != tgt.dim() || f.ncols() != src.dim() {
        return false;
    }
    src.generators().into_iter().all(|g| f.mul(src.action(g)) == tgt.action(g).mul(f))
}

/// Degree of a nonzero map whose entries all raise degree by the same amount.
pub fn map_degree<R: Coeff>(src: &GradedModule<R>, tgt: &GradedModule<R>, f: &Matrix<R>) -> Option<i64> {
    let mut shifts = f.entries().map(|(r, c, x)| tgt.degrees()[r] + 2 * x.var_degree().unwrap_or(0) as i64 - src.degrees()[c]);
    let first = shifts.next()?;
    shifts.all(|s| s == first).then_some(first)
}

/// Basis of the space of module maps `src → tgt` raising degree by `d`.
pub fn hom_space(src: &GradedModule, tgt: &GradedModule, d: i64) -> Vec<Matrix<Scalar>> {
    if src.algebra() != tgt.algebra() {
        return vec![];
    }
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for r in 0..tgt.dim() {
        for c in 0..src.dim() {
            if tgt.labels()[r] == src.labels()[c] && tgt.degrees()[r] == src.degrees()[c] + d {
                unknowns.push((r, c));
            }
        }
    }
    if unknowns.is_empty() {
        return vec![];
    }
    let mut eq_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut rows: Vec<SparseVec<Scalar>> = Vec::new();
    let mut add = |key: (usize, usize, usize), u: usize, x: &Scalar| {
        let n = eq_index.len();
        let e = *eq_index.entry(key).or_insert(n);
        if e == rows.len() {
            rows.push(SparseVec::new());
        }
        add_entry(&mut rows[e], u, x);
    };
    for (gi, g) in src.generators().into_iter().enumerate() {
        let as_ = src.action(g);
        for (u, &(k, c)) in unknowns.iter().enumerate() {
            // (A^tgt F)_{rc} picks up A^tgt_{rk} F_{kc}
            for (r, x) in tgt.gen_column(g, k) {
                add((gi, *r, c), u, x);
            }
            // (F A^src)_{kc'} picks up F_{kc} A^src_{cc'}
            for (c2, x) in as_.row(c) {
                add((gi, k, *c2), u, &-x.clone());
            }
        }
    }
    let system = Matrix::from_rows(unknowns.len(), rows);
    system
        .kernel()
        .into_iter()
        .map(|v| {
            let mut f = Matrix::zeros(tgt.dim(), src.dim());
            for (u, x) in v {
                let (r, c) = unknowns[u];
                f.set(r, c, x);
            }
            f
        })
        .collect()
}

/// Candidate shifts `d` with some label-compatible pair of degrees differing by `d`.
fn candidate_shifts(src: &GradedModule, tgt: &GradedModule) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for r in 0..tgt.dim() {
        for c in 0..src.dim() {
            if tgt.labels()[r] == src.labels()[c] {
                out.insert(tgt.degrees()[r] - src.degrees()[c]);
            }
        }
    }
    out
}

/// Module maps of every degree, grouped by shift.
pub fn hom_space_all(src: &GradedModule, tgt: &GradedModule) -> Vec<(i64, Vec<Matrix<Scalar>>)> {
    candidate_shifts(src, tgt)
        .into_iter()
        .map(|d| (d, hom_space(src, tgt, d)))
        .filter(|(_, b)| !b.is_empty())
        .collect()
}

/// A homogeneous isomorphism `src → tgt` of some degree, if one exists.
/// Searches the basis of each graded hom space and then seeded random combinations.
pub fn find_isomorphism(src: &GradedModule, tgt: &GradedModule) -> Option<ModuleMap> {
    if src.algebra() != tgt.algebra() || src.dim() != tgt.dim() {
        return None;
    }
    if src.dim() == 0 {
        return Some(ModuleMap { matrix: Matrix::zeros(0, 0), shift: 0 });
    }
    let tchar = tgt.character();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for d in candidate_shifts(src, tgt) {
        if src.shifted(d).character() != tchar {
            continue;
        }
        let basis = hom_space(src, tgt, d);
        if basis.is_empty() {
            continue;
        }
        for f in &basis {
            if f.is_invertible() {
                return Some(ModuleMap { matrix: f.clone(), shift: d });
            }
        }
        for _ in 0..24 {
            let mut f = Matrix::zeros(tgt.dim(), src.dim());
            for b in &basis {
                let c: i64 = rng.gen_range(-6..=6);
                f = f.add(&b.scale(&q(c)));
            }
            if f.is_invertible() {
                return Some(ModuleMap { matrix: f, shift: d });
            }
        }
    }
    None
}
