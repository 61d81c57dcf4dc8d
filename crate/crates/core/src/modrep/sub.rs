//! Subspaces, submodules and quotients of graded modules over ℚ.

use std::collections::{BTreeMap, VecDeque};

use super::GradedModule;
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, Matrix, Scalar, SparseVec};
use crate::quiver::VSeq;

/// A subspace of `ℚ^n` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    ech: Echelon,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, ech: Echelon::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(super::unit_vector))
    }

    pub fn from_vectors(ambient: usize, vecs: impl IntoIterator<Item = SparseVec<Scalar>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vecs {
            s.ech.insert(&v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    /// Basis vectors ordered by pivot position.
    pub fn basis(&self) -> Vec<SparseVec<Scalar>> {
        self.ech.basis()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.ech.pivot_columns()
    }

    pub fn contains(&self, v: &SparseVec<Scalar>) -> bool {
        self.ech.contains(v)
    }

    pub fn reduce(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.ech.reduce(v)
    }

    pub fn insert(&mut self, v: &SparseVec<Scalar>) -> bool {
        self.ech.insert(v)
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis().iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, o: &Subspace) -> bool {
        self.dim() == o.dim() && self.contains_space(o)
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in o.basis() {
            s.insert(&v);
        }
        s
    }

    /// Coordinates of a vector of the subspace in the pivot-ordered basis.
    pub fn coords(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.pivots().iter().enumerate().filter_map(|(k, p)| v.get(p).map(|c| (k, c.clone()))).collect()
    }

    /// True if every basis vector lives in a single (label, degree) block.
    pub fn is_graded<R: crate::exactlin::Coeff>(&self, m: &GradedModule<R>) -> bool {
        self.basis().iter().all(|v| {
            let mut it = v.keys().map(|&j| (&m.labels()[j], m.degrees()[j]));
            let first = it.next();
            it.all(|b| Some(b) == first)
        })
    }

    /// Inclusion as an `ambient × dim` matrix.
    pub fn inclusion(&self) -> Matrix<Scalar> {
        Matrix::from_columns(self.ambient, &self.basis())
    }
}

/// Closure of a set of vectors under all generators and label projections.
fn closure(m: &GradedModule, vecs: &[SparseVec<Scalar>]) -> Subspace {
    let mut space = Subspace::zero(m.dim());
    let mut queue = VecDeque::new();
    for v in vecs {
        let mut parts: BTreeMap<&VSeq, SparseVec<Scalar>> = BTreeMap::new();
        for (j, c) in v {
            parts.entry(&m.labels()[*j]).or_default().insert(*j, c.clone());
        }
        for p in parts.into_values() {
            if space.insert(&p) {
                queue.push_back(p);
            }
        }
    }
    let gens = m.generators();
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w = m.apply_gen(*g, &v);
            if !w.is_empty() && space.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    space
}

/// A submodule with its own module structure on the pivot-ordered basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub space: Subspace,
    pub module: GradedModule,
}

impl Submodule {
    /// Builds the submodule structure on an invariant, graded subspace.
    pub fn new(m: &GradedModule, space: Subspace) -> Result<Self> {
        if !space.is_graded(m) {
            return Err(Error::Invalid("subspace is not spanned by homogeneous vectors".into()));
        }
        let basis = space.basis();
        let piv = space.pivots();
        let mut actions = BTreeMap::new();
        for g in m.generators() {
            let mut cols = Vec::with_capacity(basis.len());
            for b in &basis {
                let u = m.apply_gen(g, b);
                if !space.reduce(&u).is_empty() {
                    return Err(Error::Invalid("subspace is not stable under the generators".into()));
                }
                cols.push(space.coords(&u));
            }
            actions.insert(g, Matrix::from_columns(basis.len(), &cols));
        }
        let labels = piv.iter().map(|&p| m.labels()[p].clone()).collect();
        let degrees = piv.iter().map(|&p| m.degrees()[p]).collect();
        let module = GradedModule::new(m.algebra().clone(), labels, degrees, actions)?;
        Ok(Self { space, module })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Expresses a vector given in submodule coordinates in ambient coordinates.
    pub fn to_ambient(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let basis = self.space.basis();
        let mut out = SparseVec::new();
        for (k, c) in v {
            crate::exactlin::axpy(&mut out, c, &basis[*k]);
        }
        out
    }
}

/// `M / U` on the basis of non-pivot coordinates of `U`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: GradedModule,
    pub complement: Vec<usize>,
    pub projection: Matrix<Scalar>,
}

impl Quotient {
    pub fn new(m: &GradedModule, space: &Subspace) -> Result<Self> {
        if !space.is_graded(m) {
            return Err(Error::Invalid("subspace is not spanned by homogeneous vectors".into()));
        }
        let piv: std::collections::BTreeSet<usize> = space.pivots().into_iter().collect();
        let complement: Vec<usize> = (0..m.dim()).filter(|j| !piv.contains(j)).collect();
        let pos: BTreeMap<usize, usize> = complement.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let to_q = |v: &SparseVec<Scalar>| -> SparseVec<Scalar> {
            space.reduce(v).into_iter().map(|(j, c)| (pos[&j], c)).collect()
        };
        let mut actions = BTreeMap::new();
        for g in m.generators() {
            let cols: Vec<SparseVec<Scalar>> = complement.iter().map(|&j| to_q(m.gen_column(g, j))).collect();
            actions.insert(g, Matrix::from_columns(complement.len(), &cols));
        }
        let pcols: Vec<SparseVec<Scalar>> = (0..m.dim()).map(|j| to_q(&super::unit_vector(j))).collect();
        let projection = Matrix::from_columns(complement.len(), &pcols);
        let labels = complement.iter().map(|&j| m.labels()[j].clone()).collect();
        let degrees = complement.iter().map(|&j| m.degrees()[j]).collect();
        let module = GradedModule::new(m.algebra().clone(), labels, degrees, actions)?;
        Ok(Self { module, complement, projection })
    }

    /// Preimage in `M` of a subspace of the quotient.
    pub fn preimage(&self, kernel: &Subspace, sub: &Subspace) -> Subspace {
        let lifted = sub.basis().into_iter().map(|v| v.into_iter().map(|(k, c)| (self.complement[k], c)).collect::<SparseVec<Scalar>>());
        let mut out = kernel.clone();
        for v in lifted {
            out.insert(&v);
        }
        out
    }
}

/// The submodule generated by `v`: the smallest subspace containing `v`
/// stable under every generator and every `e(i)`.
pub fn spin(m: &GradedModule, v: &SparseVec<Scalar>) -> Result<Submodule> {
    spin_many(m, std::slice::from_ref(v))
}

pub fn spin_many(m: &GradedModule, vecs: &[SparseVec<Scalar>]) -> Result<Submodule> {
    let space = closure(m, vecs);
    Submodule::new(m, space).map_err(|_| Error::Invalid("spin of an inhomogeneous vector is not a graded submodule".into()))
}
