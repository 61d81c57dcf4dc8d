use super::*;
use crate::quiver::Sign;

fn inf() -> OrbitConfig {
    OrbitConfig::infinite()
}

fn v(l: i64) -> Vertex {
    Vertex::plus(l)
}

fn vb(l: i64) -> Vertex {
    Vertex::minus(l)
}

fn seq(vs: &[Vertex]) -> VSeq {
    VSeq(vs.to_vec())
}

fn vv(pos: &[i64]) -> Algebra {
    let mut w = Weight::new();
    for &l in pos {
        w.add(v(l), 1);
    }
    Algebra::new(AlgebraId::vv_from_positive(inf(), &w).unwrap()).unwrap()
}

fn klr(pos: &[i64]) -> Algebra {
    let mut w = Weight::new();
    for &l in pos {
        w.add(v(l), 1);
    }
    Algebra::new(AlgebraId::klr(inf(), &w)).unwrap()
}

fn word_elem(alg: &Algebra, word: &[usize], i: &VSeq) -> Element {
    alg.left_mul_word(word, &alg.e(i))
}

#[test]
fn pi_squared_is_identity() {
    let a = vv(&[0]);
    for i in a.idempotents().to_vec() {
        let pp = alg_mul(&a, &a.gen_elem(Gen::S(0)), &a.left_mul_gen(Gen::S(0), &a.e(&i)));
        assert_eq!(pp, a.e(&i));
    }
}

fn alg_mul(a: &Algebra, x: &Element, y: &Element) -> Element {
    a.multiply(x, y).unwrap()
}

#[test]
fn sigma_squared_gives_q() {
    let a = klr(&[0, 2]);
    let i = seq(&[v(0), v(2)]);
    let s = a.gen_elem(Gen::S(1));
    let got = alg_mul(&a, &s, &alg_mul(&a, &s, &a.e(&i)));
    // Q_{λ,p²λ}(x2,x1) = x2 - x1 since the only arrow is p²λ → λ
    let want = a.left_mul_poly(&MPoly::diff(1, 0), &a.e(&i));
    assert_eq!(got, want);
    assert_eq!(a.render(&got), "x2·e(0,2) - x1·e(0,2)");
}

#[test]
fn orthogonal_idempotents() {
    let a = klr(&[0, 2]);
    let i = seq(&[v(0), v(2)]);
    let j = seq(&[v(2), v(0)]);
    assert!(alg_mul(&a, &a.e(&i), &a.e(&j)).is_zero());
    assert_eq!(alg_mul(&a, &a.e(&i), &a.e(&i)), a.e(&i));
}

#[test]
fn generator_degrees() {
    let a = vv(&[0, 2]);
    let i = seq(&[v(0), v(2)]);
    assert_eq!(a.degree(&a.left_mul_gen(Gen::X(1), &a.e(&i))), Degree::Homogeneous(2));
    assert_eq!(a.degree(&a.left_mul_gen(Gen::S(0), &a.e(&i))), Degree::Homogeneous(0));
    assert_eq!(a.degree(&a.left_mul_gen(Gen::S(1), &a.e(&i))), Degree::Homogeneous(1));
    let b = vv(&[0, 0]);
    let ii = seq(&[v(0), v(0)]);
    assert_eq!(b.degree(&b.left_mul_gen(Gen::S(1), &b.e(&ii))), Degree::Homogeneous(-2));
}

#[test]
fn intertwiner_cases() {
    let a = klr(&[0, 2]);
    let i = seq(&[v(0), v(2)]);
    assert_eq!(a.phi_left(1, &a.e(&i)), a.left_mul_gen(Gen::S(1), &a.e(&i)));

    let b = klr(&[0, 0]);
    let ii = seq(&[v(0), v(0)]);
    let e = b.e(&ii);
    let s = b.gen_elem(Gen::S(1));
    let x1 = b.gen_elem(Gen::X(1));
    let want = alg_mul(&b, &s, &alg_mul(&b, &x1, &e)).sub(&alg_mul(&b, &x1, &alg_mul(&b, &s, &e)));
    assert_eq!(b.phi_left(1, &e), want);
    assert_eq!(b.phi_left(1, &b.phi_left(1, &e)), e);
}

#[test]
fn deg_phi_examples() {
    let a = klr(&[0, 4]);
    let w = crate::weyl::w_shuffle(1, 1);
    assert_eq!(a.deg_phi(&w, &seq(&[v(0), v(4)])), 0);
    let b = klr(&[0, 0]);
    // -(i,i) + 2[i,i] = -2 + 2
    assert_eq!(b.deg_phi(&w, &seq(&[v(0), v(0)])), 0);
    assert_eq!(b.deg_phi(&SignedPerm::identity(2), &seq(&[v(0), v(0)])), 0);
    assert_eq!(b.degree(&b.phi_left(1, &b.e(&seq(&[v(0), v(0)])))), Degree::Homogeneous(0));
}

#[test]
fn naive_product_failure_computation() {
    // σ1πσ1 e(λ,p²λ) · σ1πσ1 e(λ,p^{-2}λ^{-1}) = -(x1+x2) e(λ,p^{-2}λ^{-1})
    let a = vv(&[0, 2]);
    let i = seq(&[v(0), v(2)]);
    let j = seq(&[v(0), vb(-2)]);
    let left = word_elem(&a, &[1, 0, 1], &i);
    let right = word_elem(&a, &[1, 0, 1], &j);
    let got = alg_mul(&a, &left, &right);
    let want = a.left_mul_poly(&MPoly::var(0).add(&MPoly::var(1)), &a.e(&j)).scaled(&q(-1));
    assert_eq!(got, want);
}

#[test]
fn relations_hold_small_algebras() {
    for pos in [&[0][..], &[0, 2], &[0, 0], &[0, 4], &[0, 2, 4], &[0, 0, 2], &[0, 2, 0]] {
        let a = vv(pos);
        let r = check_defining_relations(&a, 1);
        assert!(r.ok(), "{:?}: {:?}", pos, &r.failures[..r.failures.len().min(3)]);
        let k = klr(pos);
        let r = check_defining_relations(&k, 1);
        assert!(r.ok(), "{:?}: {:?}", pos, &r.failures[..r.failures.len().min(3)]);
    }
}

#[test]
fn special_q_branches() {
    // with 0 playing the role of q: π² e(i) = ±x1 e(i), (σ1π)² - (πσ1)² = ±σ1 on e(q, q^{-1})
    let mut w = Weight::new();
    w.add(v(0), 2);
    let id = AlgebraId::vv_from_positive(inf(), &w).unwrap();
    let a = Algebra::with_special_q(id, v(0)).unwrap();
    let i = seq(&[v(0), v(0)]);
    let pp = a.left_mul_word(&[0, 0], &a.e(&i));
    assert_eq!(pp, a.left_mul_gen(Gen::X(1), &a.e(&i)));
    let ib = seq(&[vb(0), v(0)]);
    let pp = a.left_mul_word(&[0, 0], &a.e(&ib));
    assert_eq!(pp, a.left_mul_gen(Gen::X(1), &a.e(&ib)).scaled(&q(-1)));
    let iq = seq(&[v(0), vb(0)]);
    let lhs = a.left_mul_word(&[1, 0, 1, 0], &a.e(&iq)).sub(&a.left_mul_word(&[0, 1, 0, 1], &a.e(&iq)));
    assert_eq!(lhs, a.left_mul_gen(Gen::S(1), &a.e(&iq)));
    assert_eq!(a.degree(&a.left_mul_gen(Gen::S(0), &a.e(&i))), Degree::Homogeneous(1));
}

#[test]
fn mixed_algebra_is_rejected() {
    let a = vv(&[0]);
    let b = vv(&[2]);
    let x = b.e(&seq(&[v(2)]));
    assert!(a.multiply(&a.one(), &x).is_err());
    let k = klr(&[0]);
    assert!(k.multiply(&k.one(), &a.gen_elem(Gen::S(0))).is_err());
}

#[test]
fn tweak_breaks_relations() {
    let mut w = Weight::new();
    w.add(v(0), 2);
    let a = Algebra::with_tweak(AlgebraId::klr(inf(), &w), Some(RelationTweak::FlipXSigmaSign)).unwrap();
    assert!(!check_defining_relations(&a, 0).ok());
}

#[test]
fn signs_of_vertices() {
    assert_eq!(vb(0).sign, Sign::Minus);
}
