use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{Coeff, Scalar};

/// Sparse vector: index to nonzero entry.
pub type SparseVec<R> = BTreeMap<usize, R>;

/// `v += c * w`, dropping entries that cancel.
pub fn axpy<R: Coeff>(v: &mut SparseVec<R>, c: &R, w: &SparseVec<R>) {
    if c.is_nil() {
        return;
    }
    for (i, x) in w {
        add_entry(v, *i, &c.times(x));
    }
}

pub fn add_entry<R: Coeff>(v: &mut SparseVec<R>, i: usize, x: &R) {
    if x.is_nil() {
        return;
    }
    let remove = match v.get_mut(&i) {
        Some(y) => {
            *y = y.plus(x);
            y.is_nil()
        }
        None => {
            v.insert(i, x.clone());
            false
        }
    };
    if remove {
        v.remove(&i);
    }
}

pub fn scale_vec<R: Coeff>(v: &SparseVec<R>, c: &R) -> SparseVec<R> {
    let mut out = SparseVec::new();
    if c.is_nil() {
        return out;
    }
    for (i, x) in v {
        let y = x.times(c);
        if !y.is_nil() {
            out.insert(*i, y);
        }
    }
    out
}

/// Sparse row-major matrix with entries in a coefficient ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<R>>,
}

impl<R: Coeff> Matrix<R> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, R::unit());
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &R) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_nil() {
            for i in 0..n {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<R>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix from its columns given as sparse vectors.
    pub fn from_columns(nrows: usize, cols: &[SparseVec<R>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                assert!(*i < nrows);
                m.rows[*i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec<R>>) -> Self {
        assert!(rows.iter().all(|r| r.keys().all(|&j| j < ncols)));
        Self { nrows: rows.len(), ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        self.rows[i].get(&j).cloned().unwrap_or_else(R::nil)
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&R> {
        self.rows[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if x.is_nil() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &R) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        add_entry(&mut self.rows[i], j, x);
    }

    pub fn row(&self, i: usize) -> &SparseVec<R> {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> SparseVec<R> {
        let mut out = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(x) = r.get(&j) {
                out.insert(i, x.clone());
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<SparseVec<R>> {
        let mut out = vec![SparseVec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                out[*j].insert(i, x.clone());
            }
        }
        out
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r.get(&i).is_some_and(|x| *x == R::unit()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch in product");
        let mut out = Self::zeros(self.nrows, o.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, a) in r {
                axpy(&mut acc, a, &o.rows[*k]);
            }
            out.rows[i] = acc;
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &SparseVec<R>) -> SparseVec<R> {
        let mut out = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = R::nil();
            for (j, x) in v {
                if let Some(a) = r.get(j) {
                    acc = acc.plus(&a.times(x));
                }
            }
            if !acc.is_nil() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (i, r) in o.rows.iter().enumerate() {
            axpy(&mut out.rows[i], &R::unit(), r);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| scale_vec(r, c)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                out.rows[*j].insert(i, x.clone());
            }
        }
        out
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        let mut out = Matrix::<S>::zeros(self.nrows, self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                let y = f(x);
                if !y.is_nil() {
                    out.rows[i].insert(*j, y);
                }
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (j, x) in &self.rows[i] {
                if let Some(&b) = pos.get(j) {
                    out.rows[a].insert(b, x.clone());
                }
            }
        }
        out
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(rows[i], cols[j])` of `self`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Self {
        self.select(rows, cols)
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Aligned text rendering, one row per line.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> =
            (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j).to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for r in cells {
            let line: Vec<String> = r.iter().map(|s| format!("{:>width$}", s)).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl<R: Coeff> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.nrows, self.ncols)?;
        f.write_str(&self.render())
    }
}

/// Row-echelon basis of a subspace of `Scalar^n`, kept in reduced form:
/// every stored vector has leading entry 1 at its pivot and zeros at all other pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec<Scalar>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn basis(&self) -> Vec<SparseVec<Scalar>> {
        self.pivots.values().cloned().collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut r = v.clone();
        for (p, row) in &self.pivots {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec<Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: &SparseVec<Scalar>) -> bool {
        let mut r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = <Scalar as One>::one() / lead;
        r = scale_vec(&r, &inv);
        for row in self.pivots.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.pivots.insert(p, r);
        true
    }

    pub fn pivot_row(&self, p: usize) -> Option<&SparseVec<Scalar>> {
        self.pivots.get(&p)
    }
}

/// Kernel basis, image basis (pivot columns of the input) and rank.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Vec<SparseVec<Scalar>>,
    pub image: Vec<SparseVec<Scalar>>,
    pub rank: usize,
}

impl Matrix<Scalar> {
    /// Reduced row echelon form of the row space.
    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().dim()
    }

    pub fn kernel(&self) -> Vec<SparseVec<Scalar>> {
        let e = self.row_echelon();
        let pivots: Vec<usize> = e.pivot_columns();
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|c| !e.pivots.contains_key(c)) {
            let mut v = SparseVec::new();
            v.insert(f, <Scalar as One>::one());
            for &p in &pivots {
                if let Some(c) = e.pivots[&p].get(&f) {
                    v.insert(p, -c);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn kernel_image_rank(&self) -> KernelImage {
        let e = self.row_echelon();
        let image = e.pivot_columns().iter().map(|&c| self.column(c)).collect();
        KernelImage { kernel: self.kernel(), image, rank: e.dim() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut e = Echelon::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut aug = r.clone();
            aug.insert(n + i, <Scalar as One>::one());
            e.insert(&aug);
        }
        if e.pivot_columns() != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (p, row) in &e.pivots {
            for (j, x) in row.range(n..) {
                inv.rows[*p].insert(j - n, x.clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows == self.ncols && self.rank() == self.nrows
    }

    /// Solves `self * x = b` for one solution, if any.
    pub fn solve(&self, b: &SparseVec<Scalar>) -> Option<SparseVec<Scalar>> {
        let n = self.ncols;
        let mut e = Echelon::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut aug = r.clone();
            if let Some(x) = b.get(&i) {
                aug.insert(n, x.clone());
            }
            e.insert(&aug);
        }
        if e.pivots.contains_key(&n) {
            return None;
        }
        let mut x = SparseVec::new();
        for (p, row) in &e.pivots {
            if let Some(c) = row.get(&n) {
                x.insert(*p, c.clone());
            }
        }
        Some(x)
    }
}

pub fn is_zero_scalar(s: &Scalar) -> bool {
    Zero::is_zero(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::q;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn identity_and_zero() {
        let i = Matrix::<Scalar>::identity(8);
        let k = i.kernel_image_rank();
        assert_eq!(k.rank, 8);
        assert!(k.kernel.is_empty());
        let z = Matrix::<Scalar>::zeros(5, 5);
        let k = z.kernel_image_rank();
        assert_eq!(k.rank, 0);
        assert_eq!(k.kernel.len(), 5);
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel_image_rank();
        assert_eq!(k.rank, 2);
        assert_eq!(k.kernel.len(), 2);
        for v in &k.kernel {
            assert!(a.apply(v).is_empty());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_system() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b: SparseVec<Scalar> = [(0, q(3)), (1, q(1))].into_iter().collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
    }
}
