use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::scalar::{q, Coeff, Scalar};

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
pub type Exps = SmallVec<[u16; 4]>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_of(e: &Exps, v: usize) -> u16 {
    e.get(v).copied().unwrap_or(0)
}

fn with_exp(e: &Exps, v: usize, k: u16) -> Exps {
    let mut out = e.clone();
    if out.len() <= v {
        out.resize(v + 1, 0);
    }
    out[v] = k;
    trim(out)
}

/// Sparse multivariate polynomial over the rationals with variables indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exps, Scalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Exps::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(&with_exp(&Exps::new(), v, 1), q(1))
    }

    pub fn monomial(e: &[u16], c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(e.iter().copied().collect()), c);
        p
    }

    /// `var(a) - var(b)`.
    pub fn diff(a: usize, b: usize) -> Self {
        Self::var(a).sub(&Self::var(b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let remove = match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                x.is_zero()
            }
            None => {
                self.terms.insert(e.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Exps = (0..n).map(|i| exp_of(e1, i) + exp_of(e2, i)).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::int(1);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Replaces variable `v` by the polynomial `by`.
    pub fn substitute(&self, v: usize, by: &MPoly) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            let k = exp_of(e, v);
            let rest = Self::monomial(&with_exp(e, v, 0), c.clone());
            r = r.add(&rest.mul(&by.pow(k as u32)));
        }
        r
    }

    /// Sets every variable in `vars` to zero.
    pub fn eval_zero(&self, vars: &[usize]) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if vars.iter().all(|&v| exp_of(e, v) == 0) {
                r.add_term(e.clone(), c.clone());
            }
        }
        r
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Exps::new()).cloned().unwrap_or_else(<Scalar as Zero>::zero)
    }

    pub fn total_degree(e: &Exps) -> u32 {
        e.iter().map(|&k| k as u32).sum()
    }

    /// Common total degree of all terms, or `None` if inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Self::total_degree);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|x| x == d).then_some(d),
        }
    }

    /// Coefficients of the powers of variable `v`, each free of `v`.
    fn coefficients_in(&self, v: usize) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = Vec::new();
        for (e, c) in &self.terms {
            let k = exp_of(e, v) as usize;
            if out.len() <= k {
                out.resize(k + 1, MPoly::zero());
            }
            out[k].add_term(with_exp(e, v, 0), c.clone());
        }
        out
    }

    /// Exact quotient by `var(hi) - var(lo)`, or `None` if it does not divide.
    pub fn div_linear_diff(&self, hi: usize, lo: usize) -> Option<MPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let c = self.coefficients_in(hi);
        let t = Self::var(lo);
        let n = c.len() - 1;
        if n == 0 {
            return None;
        }
        // synthetic division in var(hi) by (var(hi) - t)
        let mut qs = vec![MPoly::zero(); n];
        qs[n - 1] = c[n].clone();
        for k in (1..n).rev() {
            qs[k - 1] = c[k].add(&t.mul(&qs[k]));
        }
        let rem = c[0].add(&t.mul(&qs[0]));
        if !rem.is_zero() {
            return None;
        }
        let hv = Self::var(hi);
        let mut quot = Self::zero();
        let mut power = Self::int(1);
        for qk in &qs {
            quot = quot.add(&qk.mul(&power));
            power = power.mul(&hv);
        }
        Some(quot)
    }

    /// Writes `self = (var(hi) - var(lo))^s * rest` with `rest` not divisible
    /// by the linear form. The zero polynomial gives `(0, 0)`.
    pub fn factor_linear_power(&self, hi: usize, lo: usize) -> (u32, MPoly) {
        let mut s = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (0, cur);
        }
        while let Some(next) = cur.div_linear_diff(hi, lo) {
            cur = next;
            s += 1;
        }
        (s, cur)
    }

    /// Renders with a caller-chosen name for each variable, terms in
    /// decreasing exponent order.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { name(v) } else { format!("{}^{}", name(v), k) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Default names for the spectral variables: z, z', z'', then z3, z4, ...
pub fn spectral_name(v: usize) -> String {
    match v {
        0 => "z".into(),
        1 => "z'".into(),
        2 => "z''".into(),
        n => format!("z{n}"),
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&spectral_name))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Coeff for MPoly {
    fn nil() -> Self {
        MPoly::zero()
    }
    fn unit() -> Self {
        MPoly::int(1)
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_scalar(s: &Scalar) -> Self {
        MPoly::constant(s.clone())
    }
    fn var_degree(&self) -> Option<u32> {
        self.homogeneous_degree()
    }
    fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(<Scalar as Zero>::zero()),
            1 => self.terms.get(&Exps::new()).cloned(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let p = x(0).sub(&x(1)).mul(&x(0).add(&x(1)));
        let want = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(p, want);
        assert_eq!(p.render(&|v| format!("x{}", v + 1)), "x1^2 - x2^2");
    }

    #[test]
    fn evaluation_at_zero_kills_spectral_factor() {
        let p = x(1).sub(&x(0)).mul(&MPoly::int(3));
        assert!(p.eval_zero(&[0, 1]).is_zero());
    }

    #[test]
    fn factor_examples() {
        let l = MPoly::diff(1, 0);
        let c = MPoly::int(5);
        assert_eq!(l.mul(&c).factor_linear_power(1, 0), (1, c.clone()));
        assert_eq!(c.factor_linear_power(1, 0), (0, c.clone()));
        let zp1 = x(0).add(&MPoly::int(1));
        let p = l.mul(&l).mul(&zp1);
        assert_eq!(p.factor_linear_power(1, 0), (2, zp1));
        assert_eq!(MPoly::zero().factor_linear_power(1, 0), (0, MPoly::zero()));
    }

    #[test]
    fn substitution() {
        // (z + x) with x := z' gives z + z'
        let p = x(0).add(&x(2));
        assert_eq!(p.substitute(2, &x(1)), x(0).add(&x(1)));
    }

    #[test]
    fn rendering_is_signed_and_ordered() {
        let p = MPoly::int(-1).add(&x(1).mul(&MPoly::int(2))).sub(&x(0));
        assert_eq!(p.to_string(), "-z + 2*z' - 1");
    }
}
