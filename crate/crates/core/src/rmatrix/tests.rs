use super::*;
use crate::exactlin::q;
use crate::modrep::{induce, point_module_klr, verify_module, Subspace};
use crate::quiver::{VSeq, Vertex};

fn inf() -> OrbitConfig {
    OrbitConfig::infinite()
}

fn seq(ls: &[i64]) -> VSeq {
    VSeq(ls.iter().map(|&l| Vertex::plus(l)).collect())
}

fn point(ls: &[i64]) -> GradedModule {
    point_module_klr(inf(), &seq(ls)).unwrap()
}

fn ind(e: &Engine, ls: &[i64]) -> GradedModule {
    induce(e, &point(ls)).unwrap().module
}

#[test]
fn klr_rmatrix_swaps_distant_points() {
    let e = Engine::new();
    let r = rmatrix_klr(&e, &point(&[0]), &point(&[4])).unwrap();
    assert_eq!(r.map.matrix.to_dense(), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    assert_eq!(r.declared_shift, 0);
    assert_eq!(r.measured_degree, Some(0));
}

#[test]
fn vv_rmatrix_of_distant_points_is_a_permutation() {
    let e = Engine::new();
    let (m, n) = (ind(&e, &[0]), ind(&e, &[4]));
    let r = rmatrix(&e, &m, &n).unwrap();
    assert_eq!(r.source.module.dim(), 8);
    let d = r.map.matrix.to_dense();
    for row in &d {
        assert_eq!(row.iter().filter(|x| **x == q(1)).count(), 1);
        assert_eq!(row.iter().filter(|x| **x != q(0)).count(), 1);
    }
    let back = rmatrix(&e, &n, &m).unwrap();
    assert!(back.map.matrix.mul(&r.map.matrix).is_identity());
    assert!(verify_module(&e, &r.source.module).ok());
}

#[test]
fn arrows_force_renormalization() {
    let e = Engine::new();
    let (m, n) = (ind(&e, &[0, 2]), ind(&e, &[0]));
    let r = rmatrix(&e, &m, &n).unwrap();
    assert!(r.map.matrix.is_zero());
    let rn = renormalized_rmatrix(&e, &m, &n).unwrap();
    assert_eq!(rn.s, 1);
    assert!(!rn.map.matrix.is_zero());
    assert_eq!(rn.declared_shift, 3);
    assert_eq!(rn.measured_degree, Some(-1));
}

#[test]
fn adjacent_points_have_rank_four() {
    let e = Engine::new();
    let (m, n) = (ind(&e, &[0]), ind(&e, &[2]));
    let r = renormalized_rmatrix(&e, &m, &n).unwrap();
    assert_eq!(r.s, 0);
    assert_eq!(r.map.matrix.rank(), 4);
    let words = &r.source.table.words;
    let ker: Vec<usize> = [vec![1], vec![0, 1], vec![1, 0, 1], vec![0, 1, 0, 1]]
        .iter()
        .map(|w| words.iter().position(|x| x == w).unwrap())
        .collect();
    let expected = Subspace::from_vectors(8, ker.iter().map(|&i| crate::modrep::unit_vector(i)));
    let got = Subspace::from_vectors(8, r.map.matrix.kernel());
    assert!(got.same_as(&expected));
    let h = head_product(&e, &m, &n).unwrap();
    assert_eq!(h.module().dim(), 4);
    assert!(crate::modrep::composition_structure(h.module()).unwrap().is_simple);
}

#[test]
fn square_of_a_point_module_is_real() {
    let e = Engine::new();
    for ls in [&[0][..], &[2], &[0, 4]] {
        let m = ind(&e, ls);
        let rep = is_real(&e, &m).unwrap();
        assert!(rep.real() && rep.r_scalar && rep.end_dim == 1, "{ls:?}: {rep:?}");
    }
}

#[test]
fn naive_product_matches_convolution() {
    let e = Engine::new();
    let mp = induce(&e, &point(&[0])).unwrap();
    let np = induce(&e, &point(&[4])).unwrap();
    let naive = naive_convolve(&e, &mp.module, &np.module).unwrap();
    let conv = convolve(&e, &mp.module, &np.module).unwrap();
    assert_eq!(naive.module.dim(), 8);
    assert!(verify_module(&e, &naive.module).ok());
    let f = naive_to_conv(&naive, &mp, &np, &conv).unwrap();
    assert!(is_module_map(&naive.module, &conv.module, &f));
    assert!(f.is_invertible());
    let err = naive_convolve(&e, &ind(&e, &[0]), &ind(&e, &[2])).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn products_have_expected_dimensions() {
    let e = Engine::new();
    let (a, b, c) = (ind(&e, &[0]), ind(&e, &[2]), ind(&e, &[4]));
    let p = convolve(&e, &a, &b).unwrap();
    assert_eq!(p.module.dim(), 8);
    let t = convolve_many(&e, &[&a, &b, &c]).unwrap();
    assert_eq!(t.module.dim(), 48);
    let r = verify_module(&e, &t.module);
    assert!(r.ok(), "{:?}", &r.failures[..r.failures.len().min(3)]);
    let klr = convolve_klr(&e, &point(&[0]), &point(&[2])).unwrap();
    let pos = klr_positions(&p, &klr).unwrap();
    let res = restrict(&p.module).unwrap();
    assert_eq!(pos.len(), res.dim());
}

#[test]
fn unit_module_is_neutral() {
    let e = Engine::new();
    let u = crate::modrep::unit_module(inf());
    let m = ind(&e, &[0]);
    let p = convolve(&e, &u, &m).unwrap();
    assert!(crate::modrep::find_isomorphism(&p.module, &m).is_some());
    let r = rmatrix(&e, &u, &m).unwrap();
    assert!(r.map.matrix.is_identity());
}

#[test]
fn yang_baxter_plain_and_spectral() {
    let e = Engine::new();
    let (a, b, c) = (ind(&e, &[0]), ind(&e, &[4]), ind(&e, &[8]));
    let rep = ybe_check(&e, &a, &b, &c).unwrap();
    assert!(!rep.spectral && rep.ok(), "{rep:?}");
    let (a, b, c) = (ind(&e, &[0]), ind(&e, &[2]), ind(&e, &[0]));
    let rep = ybe_check(&e, &a, &b, &c).unwrap();
    assert!(rep.ok(), "{rep:?}");
}

#[test]
fn zero_spectral_is_an_error() {
    let e = Engine::new();
    let z = GradedModule::<Scalar>::zero(ind(&e, &[0]).algebra().clone());
    assert!(matches!(renormalized_rmatrix(&e, &z, &ind(&e, &[2])), Err(Error::ZeroSpectral(_))));
}
