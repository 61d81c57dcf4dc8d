use hecke_core::algebra::{AlgebraId, Element, Engine, Gen};
use hecke_core::exactlin::{frac, q, MPoly, Matrix, Scalar};
use hecke_core::modrep::{induce, point_module_klr, restrict, find_isomorphism};
use hecke_core::quiver::{OrbitConfig, VSeq, Vertex, Weight};
use hecke_core::weyl::{all_elements_b, SignedPerm};
use proptest::prelude::*;

fn weight(cfg: &OrbitConfig, ls: &[i64]) -> Weight {
    let mut w = Weight::new();
    for &l in ls {
        w.add(cfg.normalize(Vertex::plus(l)), 1);
    }
    w
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=3), cols), rows)
        .prop_map(|d| Matrix::from_dense(&d.into_iter().map(|r| r.into_iter().map(|(n, k)| frac(n, k)).collect()).collect::<Vec<_>>()))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0u16..3, 0u16..3, 0u16..2, -4i64..=4), 0..5).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, (a, b, c, k)| acc.add(&MPoly::monomial(&[a, b, c], q(k))))
    })
}

/// A random element `Σ c · σ_w x^a e(i)` of a fixed algebra, chosen by indices.
fn element(engine: &Engine, id: &AlgebraId, picks: &[(usize, usize, usize, i64)]) -> Element {
    let alg = engine.algebra(id).unwrap();
    let m = alg.strands();
    let perms: Vec<SignedPerm> = all_elements_b(m).into_iter().filter(|w| alg.is_vv() || w.is_unsigned()).collect();
    let idems = alg.idempotents().to_vec();
    let mut out = Element::zero();
    for &(w, a, i, c) in picks {
        let exps: Vec<u16> = (0..m).map(|k| ((a >> k) & 1) as u16).collect();
        out.add_scaled(&alg.basis(perms[w % perms.len()].clone(), exps, idems[i % idems.len()].clone()), &q(c));
    }
    out
}

fn picks() -> impl Strategy<Value = Vec<(usize, usize, usize, i64)>> {
    prop::collection::vec((0usize..1000, 0usize..8, 0usize..100, -3i64..=3), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in dense(4, 5)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), 5);
        for v in &k {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn inverse_when_invertible(m in dense(3, 3)) {
        if let Some(inv) = m.inverse() {
            prop_assert!(m.mul(&inv).is_identity());
            prop_assert!(inv.mul(&m).is_identity());
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn matrix_product_is_associative(a in dense(2, 3), b in dense(3, 3), c in dense(3, 2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn linear_factor_roundtrip(a in poly(), k in 0u32..3) {
        prop_assume!(!a.is_zero());
        let (s, rest) = a.factor_linear_power(1, 0);
        prop_assert_eq!(rest.mul(&MPoly::diff(1, 0).pow(s)), a.clone());
        let b = a.mul(&MPoly::diff(1, 0).pow(k));
        prop_assert_eq!(b.factor_linear_power(1, 0).0, s + k);
    }

    #[test]
    fn signed_permutations_form_a_group(i in 0usize..384, j in 0usize..384) {
        let all = all_elements_b(4);
        let (u, v) = (&all[i % all.len()], &all[j % all.len()]);
        prop_assert!(u.compose(&u.inverse()).is_identity());
        let uv = u.compose(v);
        prop_assert_eq!(SignedPerm::from_word(4, &uv.reduced_word()), uv.clone());
        prop_assert_eq!(uv.reduced_word().len(), uv.length());
        prop_assert!(uv.length() <= u.length() + v.length());
    }

    #[test]
    fn multiplication_is_associative(a in picks(), b in picks(), c in picks(), which in 0usize..3) {
        let engine = Engine::new();
        let cfg = OrbitConfig::infinite();
        let id = match which {
            0 => AlgebraId::vv_from_positive(cfg, &weight(&cfg, &[0, 2])).unwrap(),
            1 => AlgebraId::vv_from_positive(cfg, &weight(&cfg, &[0, 0])).unwrap(),
            _ => AlgebraId::klr(cfg, &weight(&cfg, &[0, 2, 2])),
        };
        let alg = engine.algebra(&id).unwrap();
        let (x, y, z) = (element(&engine, &id, &a), element(&engine, &id, &b), element(&engine, &id, &c));
        let l = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn one_is_neutral(a in picks()) {
        let engine = Engine::new();
        let cfg = OrbitConfig::new(3).unwrap();
        let id = AlgebraId::vv_from_positive(cfg, &weight(&cfg, &[0, 2])).unwrap();
        let alg = engine.algebra(&id).unwrap();
        let x = element(&engine, &id, &a);
        prop_assert_eq!(alg.multiply(&alg.one(), &x).unwrap(), x.clone());
        prop_assert_eq!(alg.multiply(&x, &alg.one()).unwrap(), x);
    }

    #[test]
    fn x_commutes_with_x(a in picks(), k in 1usize..=2, l in 1usize..=2) {
        let engine = Engine::new();
        let cfg = OrbitConfig::infinite();
        let id = AlgebraId::vv_from_positive(cfg, &weight(&cfg, &[0, 4])).unwrap();
        let alg = engine.algebra(&id).unwrap();
        let x = element(&engine, &id, &a);
        let kl = alg.left_mul_gen(Gen::X(k), &alg.left_mul_gen(Gen::X(l), &x));
        let lk = alg.left_mul_gen(Gen::X(l), &alg.left_mul_gen(Gen::X(k), &x));
        prop_assert_eq!(kl, lk);
    }

    #[test]
    fn morita_round_trip(ls in prop::collection::vec(prop::sample::select(vec![0i64, 2, 4, 6]), 1..=3)) {
        let s = VSeq(ls.iter().map(|&l| Vertex::plus(l)).collect());
        if let Ok(l) = point_module_klr(OrbitConfig::infinite(), &s) {
            let engine = Engine::new();
            let i = induce(&engine, &l).unwrap();
            prop_assert_eq!(i.module.dim(), (1 << ls.len()) * l.dim());
            prop_assert!(find_isomorphism(&restrict(&i.module).unwrap(), &l).is_some());
        }
    }
}
