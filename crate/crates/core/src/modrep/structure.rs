//! Radical, socle, head and composition series.
//!
//! The Jacobson radical of the enveloping matrix algebra `A` is the kernel of
//! the trace form `(a, b) ↦ tr(ab)` on `A` (characteristic 0). VV modules are
//! analysed through their restriction and lifted back by spinning.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hom::hom_space;
use super::sub::{spin_many, Quotient, Subspace, Submodule};
use super::{restrict_with_indices, GradedModule};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, Echelon, Matrix, Scalar, SparseVec};

fn flatten(m: &Matrix<Scalar>) -> SparseVec<Scalar> {
    let d = m.ncols();
    m.entries().map(|(r, c, x)| (r * d + c, x.clone())).collect()
}

fn unflatten(d: usize, v: &SparseVec<Scalar>) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(d, d);
    for (k, x) in v {
        m.set(k / d, k % d, x.clone());
    }
    m
}

/// Basis of the matrix algebra generated by the actions and the `e(i)` projections.
pub fn enveloping_algebra(m: &GradedModule) -> Vec<Matrix<Scalar>> {
    let d = m.dim();
    if d == 0 {
        return vec![];
    }
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    let id = Matrix::identity(d);
    ech.insert(&flatten(&id));
    out.push(id);
    let mut gens: Vec<Matrix<Scalar>> = m.generators().into_iter().map(|g| m.action(g).clone()).collect();
    let labels: std::collections::BTreeSet<_> = m.labels().iter().collect();
    for l in labels {
        let mut e = Matrix::zeros(d, d);
        for j in (0..d).filter(|&j| &m.labels()[j] == l) {
            e.set(j, j, Scalar::one());
        }
        gens.push(e);
    }
    let mut k = 0;
    while k < out.len() {
        for g in &gens {
            let p = g.mul(&out[k]);
            if ech.insert(&flatten(&p)) {
                out.push(p);
            }
        }
        k += 1;
    }
    out
}

fn trace_of_product(a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Scalar {
    let mut t = Scalar::zero();
    for (i, j, x) in a.entries() {
        if let Some(y) = b.entry(j, i) {
            t += x * y;
        }
    }
    t
}

/// Basis of the Jacobson radical of the enveloping algebra.
pub fn radical(alg: &[Matrix<Scalar>]) -> Vec<Matrix<Scalar>> {
    let n = alg.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace_of_product(&alg[i], &alg[j]);
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.kernel()
        .into_iter()
        .map(|v| {
            let d = alg[0].nrows();
            let mut acc = SparseVec::new();
            for (i, c) in v {
                axpy(&mut acc, &c, &flatten(&alg[i]));
            }
            unflatten(d, &acc)
        })
        .collect()
}

/// Socle, radical, head and a composition series of a module.
#[derive(Clone, Debug)]
pub struct CompositionStructure {
    pub is_simple: bool,
    pub socle: Submodule,
    pub radical: Submodule,
    pub head: Quotient,
    /// `M_1 ⊂ M_2 ⊂ ⋯ ⊂ M_k = M`, each quotient simple.
    pub series: Vec<Subspace>,
    /// `M_i / M_{i-1}`.
    pub factors: Vec<GradedModule>,
}

impl CompositionStructure {
    pub fn length(&self) -> usize {
        self.series.len()
    }
}

struct Local {
    is_simple: bool,
    socle: Subspace,
    radical: Subspace,
    series: Vec<Subspace>,
}

fn image_of(d: usize, maps: &[Matrix<Scalar>]) -> Subspace {
    Subspace::from_vectors(d, maps.iter().flat_map(|r| r.columns()))
}

fn common_kernel(d: usize, maps: &[Matrix<Scalar>]) -> Subspace {
    if maps.is_empty() {
        return Subspace::full(d);
    }
    let rows: Vec<SparseVec<Scalar>> = maps.iter().flat_map(|r| (0..r.nrows()).map(move |i| r.row(i).clone())).collect();
    Subspace::from_vectors(d, Matrix::from_rows(d, rows).kernel())
}

/// Minimal polynomial coefficients `c_0 … c_k` (monic, `c_k = 1`).
fn minimal_polynomial(f: &Matrix<Scalar>) -> Vec<Scalar> {
    let d = f.nrows();
    let mut powers = vec![flatten(&Matrix::identity(d))];
    let mut cur = Matrix::identity(d);
    loop {
        cur = f.mul(&cur);
        let target = flatten(&cur);
        let sys = Matrix::from_columns(d * d, &powers);
        if let Some(sol) = sys.solve(&target) {
            let mut c: Vec<Scalar> = (0..powers.len()).map(|i| -sol.get(&i).cloned().unwrap_or_else(Scalar::zero)).collect();
            c.push(Scalar::one());
            return c;
        }
        powers.push(target);
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            out.push(n / k);
        }
        k += 1;
    }
    out
}

/// A rational root of a polynomial (coefficients low to high), if any.
fn rational_root(c: &[Scalar]) -> Option<Scalar> {
    let lcm = c.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = c.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|x| !x.is_zero())?;
    if low > 0 {
        return Some(Scalar::zero());
    }
    let a0 = ints[0].abs().to_u64()?;
    let an = ints.last()?.abs().to_u64()?;
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return None;
    }
    let eval = |x: &Scalar| c.iter().rev().fold(Scalar::zero(), |acc, a| acc * x + a);
    for p in divisors(a0) {
        for qd in divisors(an) {
            for s in [1i64, -1] {
                let x = Scalar::new((p as i64 * s).into(), (qd as i64).into());
                if eval(&x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// A proper nonzero submodule of a semisimple, non-simple module, cut out as
/// an eigenspace of a degree-0 endomorphism.
fn split_semisimple(m: &GradedModule) -> Result<Subspace> {
    let d = m.dim();
    let ends = hom_space(m, m, 0);
    let id = Matrix::identity(d);
    let mut candidates: Vec<Matrix<Scalar>> = ends.clone();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            candidates.push(ends[i].add(&ends[j]));
        }
    }
    for f in candidates {
        let c0 = f.get(0, 0);
        if f == id.scale(&c0) {
            continue;
        }
        if let Some(c) = rational_root(&minimal_polynomial(&f)) {
            let k = f.sub(&id.scale(&c)).kernel();
            if !k.is_empty() && k.len() < d {
                return Ok(Subspace::from_vectors(d, k));
            }
        }
    }
    Err(Error::NonSplit(format!("no rational eigenspace among {} degree-0 endomorphisms", ends.len())))
}

fn series_of(m: &GradedModule) -> Result<Vec<Subspace>> {
    let d = m.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let alg = enveloping_algebra(m);
    if alg.len() == d * d {
        return Ok(vec![Subspace::full(d)]);
    }
    let rad = radical(&alg);
    let u = if rad.is_empty() { split_semisimple(m)? } else { image_of(d, &rad) };
    let sub = Submodule::new(m, u.clone())?;
    let mut out: Vec<Subspace> = series_of(&sub.module)?
        .into_iter()
        .map(|s| Subspace::from_vectors(d, s.basis().iter().map(|v| sub.to_ambient(v))))
        .collect();
    let quo = Quotient::new(m, &u)?;
    for s in series_of(&quo.module)? {
        out.push(quo.preimage(&u, &s));
    }
    Ok(out)
}

fn analyse(m: &GradedModule) -> Result<Local> {
    let d = m.dim();
    if d == 0 {
        return Ok(Local { is_simple: false, socle: Subspace::zero(0), radical: Subspace::zero(0), series: vec![] });
    }
    let alg = enveloping_algebra(m);
    let rad = radical(&alg);
    Ok(Local {
        is_simple: alg.len() == d * d,
        socle: common_kernel(d, &rad),
        radical: image_of(d, &rad),
        series: series_of(m)?,
    })
}

fn lift(m: &GradedModule, idx: &[usize], s: &Subspace) -> Result<Subspace> {
    let vecs: Vec<SparseVec<Scalar>> = s.basis().into_iter().map(|v| v.into_iter().map(|(j, c)| (idx[j], c)).collect()).collect();
    Ok(spin_many(m, &vecs)?.space)
}

/// Simplicity, socle, head and composition series of a module over ℚ.
pub fn composition_structure(m: &GradedModule) -> Result<CompositionStructure> {
    let (local, spaces) = if m.algebra().is_vv() {
        let (r, idx) = restrict_with_indices(m)?;
        let local = analyse(&r)?;
        let socle = lift(m, &idx, &local.socle)?;
        let radical = lift(m, &idx, &local.radical)?;
        let series = local.series.iter().map(|s| lift(m, &idx, s)).collect::<Result<Vec<_>>>()?;
        (local.is_simple, (socle, radical, series))
    } else {
        let local = analyse(m)?;
        (local.is_simple, (local.socle, local.radical, local.series))
    };
    let (socle, radical, series) = spaces;
    let mut factors = Vec::with_capacity(series.len());
    let mut prev = Subspace::zero(m.dim());
    for s in &series {
        let sub = Submodule::new(m, s.clone())?;
        let inner = Subspace::from_vectors(sub.dim(), prev.basis().iter().map(|v| s.coords(v)));
        factors.push(Quotient::new(&sub.module, &inner)?.module);
        prev = s.clone();
    }
    if factors.iter().map(|f| f.dim()).sum::<usize>() != m.dim() {
        return Err(Error::Internal("composition factors do not add up to the module".into()));
    }
    let head = Quotient::new(m, &radical)?;
    Ok(CompositionStructure {
        is_simple: local,
        socle: Submodule::new(m, socle)?,
        radical: Submodule::new(m, radical)?,
        head,
        series,
        factors,
    })
}
