use super::*;
use crate::exactlin::q;
use crate::quiver::Vertex;

fn inf() -> OrbitConfig {
    OrbitConfig::infinite()
}

fn seq(ls: &[i64]) -> VSeq {
    VSeq(ls.iter().map(|&l| Vertex::plus(l)).collect())
}

fn ind(engine: &Engine, ls: &[i64]) -> ConvModule {
    induce(engine, &point_module_klr(inf(), &seq(ls)).unwrap()).unwrap()
}

#[test]
fn point_modules() {
    let e = Engine::new();
    let a = point_module_klr(inf(), &seq(&[0])).unwrap();
    assert_eq!(a.dim(), 1);
    let b = point_module_klr(inf(), &seq(&[0, 2])).unwrap();
    assert_eq!(b.dim(), 1);
    assert!(b.action(Gen::S(1)).is_zero());
    let c = point_module_klr(inf(), &seq(&[0, 4])).unwrap();
    assert_eq!(c.labels(), &[seq(&[0, 4]), seq(&[4, 0])]);
    assert_eq!(c.degrees(), &[0, 0]);
    for m in [&a, &b, &c] {
        let r = verify_module(&e, m);
        assert!(r.ok(), "{:?}", r.failures);
    }
    assert!(point_module_klr(inf(), &seq(&[0, 0])).is_err());
}

#[test]
fn induced_point_modules() {
    let e = Engine::new();
    let l0 = ind(&e, &[0]);
    assert_eq!(l0.module.dim(), 2);
    assert_eq!(l0.table.words, vec![vec![], vec![0]]);
    assert!(l0.module.action(Gen::X(1)).is_zero());
    assert_eq!(l0.module.action(Gen::S(0)).to_dense(), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    assert!(verify_module(&e, &l0.module).ok());
    let l02 = ind(&e, &[0, 2]);
    assert_eq!(l02.module.dim(), 4);
    assert_eq!(l02.table.words, vec![vec![], vec![0], vec![1, 0], vec![0, 1, 0]]);
    let r = verify_module(&e, &l02.module);
    assert!(r.ok(), "{:?}", r.failures);
    for ls in [&[0, 4][..], &[0, 2, 4], &[0, 4, 8]] {
        let m = ind(&e, ls);
        let n = point_module_klr(inf(), &seq(ls)).unwrap();
        assert_eq!(m.module.dim(), (1 << ls.len()) * n.dim());
        let r = verify_module(&e, &m.module);
        assert!(r.ok(), "{ls:?}: {:?}", &r.failures[..r.failures.len().min(3)]);
        let back = restrict(&m.module).unwrap();
        assert!(find_isomorphism(&back, &n).is_some());
    }
}

#[test]
fn forced_failures_are_reported() {
    let e = Engine::new();
    let l0 = ind(&e, &[0]).module;
    let mut acts = l0.actions().clone();
    acts.insert(Gen::S(0), l0.action(Gen::S(0)).scale(&q(2)));
    let bad = GradedModule::new(l0.algebra().clone(), l0.labels().to_vec(), l0.degrees().to_vec(), acts).unwrap();
    let r = verify_module(&e, &bad);
    assert!(r.failures.iter().any(|f| f.contains("π²")), "{:?}", r.failures);
    let n = point_module_klr(inf(), &seq(&[0, 4])).unwrap();
    let bad = GradedModule::new(n.algebra().clone(), n.labels().to_vec(), vec![0, 1], n.actions().clone()).unwrap();
    assert!(verify_module(&e, &bad).failures.iter().any(|f| f.contains("homogeneity")));
}

#[test]
fn zero_and_unit() {
    let e = Engine::new();
    let z = GradedModule::<Scalar>::zero(AlgebraId::klr(inf(), &Weight::of_sequence(&seq(&[0]))));
    let iz = induce(&e, &z).unwrap();
    assert_eq!(iz.module.dim(), 0);
    assert_eq!(restrict(&iz.module).unwrap().dim(), 0);
    let u = unit_module(inf());
    assert!(verify_module(&e, &u).ok());
    assert_eq!(restrict(&u).unwrap().dim(), 1);
}

#[test]
fn spin_and_structure() {
    let e = Engine::new();
    let l0 = ind(&e, &[0]).module;
    let s = spin(&l0, &unit_vector(0)).unwrap();
    assert_eq!(s.dim(), 2);
    assert_eq!(spin(&l0, &SparseVec::new()).unwrap().dim(), 0);
    let cs = composition_structure(&l0).unwrap();
    assert!(cs.is_simple);
    assert_eq!(cs.length(), 1);
    let n = point_module_klr(inf(), &seq(&[0, 4])).unwrap();
    assert!(composition_structure(&n).unwrap().is_simple);
}

#[test]
fn spectral_twist_shifts_x() {
    let e = Engine::new();
    let l0 = ind(&e, &[0]).module;
    let t = spectral_twist(&e, &l0, 0).unwrap();
    assert_eq!(t.evaluate_zero().actions(), l0.actions());
    let r = restrict(&t).unwrap();
    assert_eq!(r.action(Gen::X(1)).get(0, 0), MPoly::var(0));
    let rep = verify_module(&e, &t);
    assert!(rep.ok(), "{:?}", rep.failures);
}

#[test]
fn json_roundtrip() {
    let e = Engine::new();
    let m = ind(&e, &[0, 2]).module;
    let v = module_to_json(&m);
    let back = module_from_json(&e, &v).unwrap();
    assert_eq!(back.actions(), m.actions());
    assert_eq!(back.labels(), m.labels());
}
