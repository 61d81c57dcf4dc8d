use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::exactlin::Scalar;
use crate::quiver::VSeq;
use crate::weyl::{word_text, SignedPerm};

/// Basis element `σ_w x^exps e(idem)`; `idem` is the idempotent on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub w: SignedPerm,
    pub exps: Vec<u16>,
    pub idem: VSeq,
}

impl Key {
    pub fn poly_degree(&self) -> u32 {
        self.exps.iter().map(|&n| n as u32).sum()
    }

    /// `σ[0,1]·x1^2·e(0,2̄)`-style text for a given word of `w`.
    pub fn render(&self, word: &[usize]) -> String {
        let mut parts = Vec::new();
        if !word.is_empty() {
            parts.push(word_text(word));
        }
        for (l, &n) in self.exps.iter().enumerate() {
            match n {
                0 => {}
                1 => parts.push(format!("x{}", l + 1)),
                _ => parts.push(format!("x{}^{}", l + 1, n)),
            }
        }
        parts.push(format!("e{}", self.idem));
        parts.join("·")
    }
}

/// Finite linear combination of basis elements with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Key, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: Key, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(k, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &Key) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                x.is_zero()
            }
            None => {
                self.terms.insert(k.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &Element) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Element, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(o, &-Scalar::one());
        out
    }

    /// Canonical text: terms ordered by (length, word, exponents, idempotent).
    pub fn render(&self, word_of: &dyn Fn(&SignedPerm) -> Vec<usize>) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut items: Vec<(usize, Vec<usize>, &Key, &Scalar)> =
            self.terms.iter().map(|(k, c)| (k.w.length(), word_of(&k.w), k, c)).collect();
        items.sort_by(|a, b| (a.0, &a.1, &a.2.exps, &a.2.idem).cmp(&(b.0, &b.1, &b.2.exps, &b.2.idem)));
        let mut out = String::new();
        for (n, (_, word, k, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if !a.is_one() {
                out.push_str(&format!("{a}·"));
            }
            out.push_str(&k.render(&word));
        }
        out
    }
}
