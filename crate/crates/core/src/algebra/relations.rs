use std::collections::{BTreeSet, HashMap};

use num_traits::One;

use super::{q_poly, Algebra, Element, Gen};
use crate::exactlin::{q, MPoly, Scalar};
use crate::quiver::VSeq;
use crate::weyl::SignedPerm;

/// Outcome of evaluating every relation instance.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A letter in a relation word: a generator or an idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    G(Gen),
    E(VSeq),
}

/// `Σ c · (s_1 ⋯ s_r)`, understood as multiplied on the right by `e(i)` for
/// the idempotent it was generated for; it must vanish.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Scalar, Vec<Sym>)>,
}

type Formal = Vec<(Scalar, Vec<Sym>)>;

fn prod(syms: Vec<Sym>) -> Formal {
    vec![(Scalar::one(), syms)]
}

fn minus(mut a: Formal, b: Formal) -> Formal {
    for (c, t) in b {
        a.push((-c, t));
    }
    a
}

fn g(x: Gen) -> Sym {
    Sym::G(x)
}

/// Expands a polynomial in the `x` variables (index `l-1` is `x_l`) into words.
fn poly_words(p: &MPoly) -> Formal {
    p.terms()
        .map(|(e, c)| {
            let mut w = Vec::new();
            for (v, &n) in e.iter().enumerate() {
                for _ in 0..n {
                    w.push(g(Gen::X(v + 1)));
                }
            }
            (c.clone(), w)
        })
        .collect()
}

/// Every defining relation on `e(i)`: idempotent relations, the KLR relations
/// and, for VV algebras, the π relations.
pub fn relation_instances(alg: &Algebra, i: &VSeq) -> Vec<Relation> {
    let m = alg.strands();
    let cfg = *alg.cfg();
    let mut rels: Vec<(String, Formal)> = Vec::new();
    for j in alg.idempotents() {
        let rhs = if j == i { prod(vec![Sym::E(i.clone())]) } else { vec![] };
        rels.push((format!("e{j}e{i} = δ e{i}"), minus(prod(vec![Sym::E(j.clone()), Sym::E(i.clone())]), rhs)));
    }
    let all: Formal = alg.idempotents().iter().map(|j| (Scalar::one(), vec![Sym::E(j.clone())])).collect();
    rels.push(("Σ e(j) = 1".into(), minus(all, prod(vec![]))));
    for l in 1..=m {
        rels.push((
            format!("x{l} e{i} = e{i} x{l}"),
            minus(prod(vec![g(Gen::X(l))]), prod(vec![Sym::E(i.clone()), g(Gen::X(l))])),
        ));
        for s in l + 1..=m {
            rels.push((
                format!("x{l}x{s} = x{s}x{l}"),
                minus(prod(vec![g(Gen::X(l)), g(Gen::X(s))]), prod(vec![g(Gen::X(s)), g(Gen::X(l))])),
            ));
        }
    }
    for k in 1..m {
        let sk = g(Gen::S(k));
        rels.push((
            format!("σ{k} e{i} = e(s{k}·i) σ{k}"),
            minus(prod(vec![sk.clone()]), prod(vec![Sym::E(i.act(&cfg, k)), sk.clone()])),
        ));
        let qp = q_poly(&cfg, i.at(k), i.at(k + 1), k + 1, k);
        rels.push((format!("σ{k}² e{i} = Q(x{},x{k})", k + 1), minus(prod(vec![sk.clone(), sk.clone()]), poly_words(&qp))));
        for j in k + 2..m {
            let sj = g(Gen::S(j));
            rels.push((format!("σ{j}σ{k} = σ{k}σ{j}"), minus(prod(vec![sj.clone(), sk.clone()]), prod(vec![sk.clone(), sj]))));
        }
        if k + 2 <= m {
            let sk1 = g(Gen::S(k + 1));
            let lhs = minus(prod(vec![sk1.clone(), sk.clone(), sk1.clone()]), prod(vec![sk.clone(), sk1.clone(), sk.clone()]));
            let rhs = if cfg.same(i.at(k), i.at(k + 2)) {
                let q1 = q_poly(&cfg, i.at(k), i.at(k + 1), k + 1, k);
                let q2 = q_poly(&cfg, i.at(k), i.at(k + 1), k + 1, k + 2);
                poly_words(&q1.sub(&q2).div_linear_diff(k - 1, k + 1).expect("exact divided difference"))
            } else {
                vec![]
            };
            rels.push((format!("braid defect σ{k} on e{i}"), minus(lhs, rhs)));
        }
        for l in 1..=m {
            let sl = SignedPerm::generator(m, k).act_on_index(l as i32) as usize;
            let lhs = minus(prod(vec![sk.clone(), g(Gen::X(l))]), prod(vec![g(Gen::X(sl)), sk.clone()]));
            let c = match (cfg.same(i.at(k), i.at(k + 1)), l) {
                (true, l) if l == k => -1,
                (true, l) if l == k + 1 => 1,
                _ => 0,
            };
            let rhs = if c == 0 { vec![] } else { vec![(q(c), vec![])] };
            rels.push((format!("(σ{k}x{l} - x{sl}σ{k}) e{i}"), minus(lhs, rhs)));
        }
    }
    if alg.is_vv() && m > 0 {
        let pi = g(Gen::S(0));
        rels.push((
            format!("π e{i} = e(θ₁i) π"),
            minus(prod(vec![pi.clone()]), prod(vec![Sym::E(i.act(&cfg, 0)), pi.clone()])),
        ));
        for l in 1..=m {
            let x = g(Gen::X(l));
            let sign = if l == 1 { -1 } else { 1 };
            rels.push((
                format!("π x{l} = {}x{l} π", if l == 1 { "-" } else { "" }),
                minus(prod(vec![pi.clone(), x.clone()]), vec![(q(sign), vec![x, pi.clone()])]),
            ));
        }
        for k in 2..m {
            let sk = g(Gen::S(k));
            rels.push((format!("π σ{k} = σ{k} π"), minus(prod(vec![pi.clone(), sk.clone()]), prod(vec![sk, pi.clone()]))));
        }
        let pi2 = match alg.is_q(i.at(1)) {
            0 => prod(vec![]),
            s => vec![(q(s as i64), vec![g(Gen::X(1))])],
        };
        rels.push((format!("π² e{i}"), minus(prod(vec![pi.clone(), pi.clone()]), pi2)));
        if m >= 2 {
            let s1 = g(Gen::S(1));
            let lhs = minus(
                prod(vec![s1.clone(), pi.clone(), s1.clone(), pi.clone()]),
                prod(vec![pi.clone(), s1.clone(), pi.clone(), s1.clone()]),
            );
            let s = alg.is_q(i.at(1));
            let rhs = if s != 0 && cfg.same(i.at(1), i.at(2).theta()) { vec![(q(s as i64), vec![s1])] } else { vec![] };
            rels.push((format!("(σ1π)² - (πσ1)² on e{i}"), minus(lhs, rhs)));
        }
    }
    rels.into_iter().map(|(name, terms)| Relation { name, terms }).collect()
}

struct SymCache<'a> {
    alg: &'a Algebra,
    elems: HashMap<Sym, Element>,
}

impl SymCache<'_> {
    fn get(&mut self, s: &Sym) -> &Element {
        let alg = self.alg;
        self.elems.entry(s.clone()).or_insert_with(|| match s {
            Sym::G(x) => alg.gen_elem(*x),
            Sym::E(j) => alg.e(j),
        })
    }
}

/// Keeps only the terms of `a` whose right idempotent is in `idems`.
fn restrict_right(alg: &Algebra, a: &Element, idems: &BTreeSet<VSeq>) -> (Element, BTreeSet<VSeq>) {
    let mut out = Element::zero();
    let mut left = BTreeSet::new();
    for (k, c) in a.terms() {
        if idems.contains(&k.idem) {
            left.insert(alg.left_idem(k));
            out.add_term(k.clone(), c.clone());
        }
    }
    (out, left)
}

/// `((s_1 s_2) ⋯ s_r) · b`, multiplying the letters among themselves first.
fn eval_left_fold(cache: &mut SymCache, f: &Formal, b: &Element) -> Element {
    let alg = cache.alg;
    let mut out = Element::zero();
    let start: BTreeSet<VSeq> = b.terms().map(|(k, _)| alg.left_idem(k)).collect();
    for (c, syms) in f {
        let mut cur = start.clone();
        let mut restricted = Vec::with_capacity(syms.len());
        for s in syms.iter().rev() {
            let (r, left) = restrict_right(alg, cache.get(s), &cur);
            restricted.push(r);
            cur = left;
        }
        let mut acc: Option<Element> = None;
        for a in restricted.iter().rev() {
            acc = Some(match acc {
                None => a.clone(),
                Some(x) => alg.multiply(&x, a).expect("same algebra"),
            });
        }
        let t = match acc {
            None => b.clone(),
            Some(x) => alg.multiply(&x, b).expect("same algebra"),
        };
        out.add_scaled(&t, c);
    }
    out
}

/// `s_1 · (s_2 · ( ⋯ (s_r · b)))`.
fn eval_right_fold(cache: &mut SymCache, f: &Formal, b: &Element) -> Element {
    let alg = cache.alg;
    let mut out = Element::zero();
    for (c, syms) in f {
        let mut acc = b.clone();
        for s in syms.iter().rev() {
            acc = alg.multiply(cache.get(s), &acc).expect("same algebra");
        }
        out.add_scaled(&acc, c);
    }
    out
}

fn monomials(m: usize, max_degree: u32) -> Vec<Vec<u16>> {
    let mut out = vec![vec![0u16; m]];
    let mut frontier = out.clone();
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &frontier {
            let last = e.iter().rposition(|&n| n > 0).unwrap_or(0);
            for l in last..m {
                let mut f = e.clone();
                f[l] += 1;
                next.push(f);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Evaluates every defining relation, multiplied on the right by
/// `x^a e(i)` for all idempotents `i` and monomials of degree ≤ `max_degree`,
/// in both association orders.
pub fn check_defining_relations(alg: &Algebra, max_degree: u32) -> RelationReport {
    let m = alg.strands();
    let mut report = RelationReport::default();
    let mut cache = SymCache { alg, elems: HashMap::new() };
    for i in alg.idempotents() {
        let rels = relation_instances(alg, i);
        for exps in monomials(m, max_degree) {
            let b = alg.basis(SignedPerm::identity(m), exps.clone(), i.clone());
            for rel in &rels {
                report.checked += 1;
                let l = eval_left_fold(&mut cache, &rel.terms, &b);
                let r = eval_right_fold(&mut cache, &rel.terms, &b);
                if !l.is_zero() || !r.is_zero() {
                    report.failures.push(format!(
                        "{} at x^{exps:?}: left fold {} / right fold {}",
                        rel.name,
                        alg.render(&l),
                        alg.render(&r)
                    ));
                }
            }
        }
    }
    report
}
