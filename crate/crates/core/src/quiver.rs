//! The orbit `I = {p^{2n} λ^{±1}}`, its quiver with involution θ, the two
//! bilinear forms, and θ-symmetric dimension vectors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The vertex `p^{2n} λ^{±1}`. Printed as `2n` on the `λ` branch and as a
/// barred `2n` on the `λ^{-1}` branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub sign: Sign,
    pub n: i64,
}

impl Vertex {
    pub fn new(sign: Sign, n: i64) -> Self {
        Self { sign, n }
    }

    /// The vertex printed as `label` (an even integer) on the `λ` branch.
    pub fn plus(label: i64) -> Self {
        assert!(label % 2 == 0, "vertex labels are even");
        Self { sign: Sign::Plus, n: label / 2 }
    }

    /// The vertex printed as barred `label` on the `λ^{-1}` branch.
    pub fn minus(label: i64) -> Self {
        assert!(label % 2 == 0, "vertex labels are even");
        Self { sign: Sign::Minus, n: label / 2 }
    }

    /// The exponent of `p`, i.e. the printed number.
    pub fn label(&self) -> i64 {
        2 * self.n
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    /// `θ(i) = i^{-1}`.
    pub fn theta(self) -> Self {
        Self { sign: self.sign.flip(), n: -self.n }
    }

    /// ASCII form used on the command line: `2`, `~2`.
    pub fn ascii(&self) -> String {
        match self.sign {
            Sign::Plus => self.label().to_string(),
            Sign::Minus => format!("~{}", self.label()),
        }
    }

    /// Parses `2`, `-4`, `~2` or the barred form `2̄`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, body) = if let Some(rest) = s.strip_prefix('~') {
            (Sign::Minus, rest.to_string())
        } else if s.ends_with('\u{304}') || s.ends_with('\u{305}') {
            (Sign::Minus, s.chars().filter(|c| *c != '\u{304}' && *c != '\u{305}').collect())
        } else {
            (Sign::Plus, s.to_string())
        };
        let label: i64 = body.parse().map_err(|_| Error::Parse(format!("bad vertex {s:?}")))?;
        if label % 2 != 0 {
            return Err(Error::Parse(format!("vertex label {label} is odd; labels are exponents 2n")));
        }
        Ok(Self { sign, n: label / 2 })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.label()),
            Sign::Minus => write!(f, "{}\u{304}", self.label()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    sign: Sign,
    k: i64,
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VertexJson { sign: self.sign, k: self.label() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = VertexJson::deserialize(d)?;
        if v.k % 2 != 0 {
            return Err(serde::de::Error::custom(format!("vertex exponent {} is odd", v.k)));
        }
        Ok(Vertex { sign: v.sign, n: v.k / 2 })
    }
}

/// Orbit data: `cyclic_order = 0` is the infinite orbit, `r > 0` means `p^2`
/// has order `r` so each branch is a cycle of length `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct OrbitConfig {
    pub cyclic_order: u32,
}

impl OrbitConfig {
    pub fn new(cyclic_order: u32) -> Result<Self> {
        if cyclic_order == 1 || cyclic_order == 2 {
            return Err(Error::Invalid(format!(
                "cyclic order {cyclic_order} makes p^2 = 1 or puts ±p in the orbit"
            )));
        }
        Ok(Self { cyclic_order })
    }

    pub fn infinite() -> Self {
        Self { cyclic_order: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.cyclic_order).map(|_| ())
    }

    /// Reduces the exponent into `0..r` for cyclic orbits.
    pub fn normalize(&self, v: Vertex) -> Vertex {
        match self.cyclic_order {
            0 => v,
            r => Vertex { sign: v.sign, n: v.n.rem_euclid(r as i64) },
        }
    }

    pub fn same(&self, a: Vertex, b: Vertex) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    /// Number of arrows `i → j`: one exactly when `i = p^2 j`.
    pub fn arrow_count(&self, i: Vertex, j: Vertex) -> u32 {
        if i.sign != j.sign {
            return 0;
        }
        let d = i.n - j.n - 1;
        let hit = match self.cyclic_order {
            0 => d == 0,
            r => d.rem_euclid(r as i64) == 0,
        };
        hit as u32
    }

    pub fn adjacent(&self, i: Vertex, j: Vertex) -> bool {
        self.arrow_count(i, j) + self.arrow_count(j, i) > 0
    }

    /// `(i, j)`: 2 on the diagonal, minus the number of arrows otherwise.
    pub fn bilinear(&self, i: Vertex, j: Vertex) -> i64 {
        if self.same(i, j) {
            2
        } else {
            -((self.arrow_count(i, j) + self.arrow_count(j, i)) as i64)
        }
    }

    /// `[i, j] = δ_{ij}`.
    pub fn delta(&self, i: Vertex, j: Vertex) -> i64 {
        self.same(i, j) as i64
    }

    pub fn bilinear_weights(&self, a: &Weight, b: &Weight) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                s += self.bilinear(i, j) * (x as i64) * (y as i64);
            }
        }
        s
    }

    pub fn delta_weights(&self, a: &Weight, b: &Weight) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                s += self.delta(i, j) * (x as i64) * (y as i64);
            }
        }
        s
    }
}

/// Finitely supported multiplicity function on vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(BTreeMap<Vertex, u32>);

impl Weight {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(cfg: &OrbitConfig, pairs: &[(Vertex, u32)]) -> Self {
        let mut w = Self::new();
        for &(v, m) in pairs {
            w.add(cfg.normalize(v), m);
        }
        w
    }

    pub fn add(&mut self, v: Vertex, m: u32) {
        if m > 0 {
            *self.0.entry(v).or_insert(0) += m;
        }
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.0.iter().map(|(v, m)| (*v, *m))
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.0.keys().copied().collect()
    }

    pub fn height(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self, o: &Weight) -> Weight {
        let mut w = self.clone();
        for (v, m) in o.iter() {
            w.add(v, m);
        }
        w
    }

    pub fn is_theta_symmetric(&self) -> bool {
        self.iter().all(|(v, m)| self.get(v.theta()) == m)
    }

    pub fn is_positive(&self) -> bool {
        self.0.keys().all(|v| v.is_positive())
    }

    /// The part supported on the `λ` branch.
    pub fn positive_part(&self) -> Weight {
        Weight(self.0.iter().filter(|(v, _)| v.is_positive()).map(|(v, m)| (*v, *m)).collect())
    }

    /// `ν + θ(ν)` for a weight on the `λ` branch.
    pub fn theta_double(&self, cfg: &OrbitConfig) -> Weight {
        let mut w = self.clone();
        for (v, m) in self.iter() {
            w.add(cfg.normalize(v.theta()), m);
        }
        w
    }

    /// Weight of a sequence for the KLR algebra: the multiset of its entries.
    pub fn of_sequence(s: &VSeq) -> Weight {
        let mut w = Weight::new();
        for &v in s.iter() {
            w.add(v, 1);
        }
        w
    }

    /// θ-symmetric weight of a sequence: `Σ i_k + Σ θ(i_k)`.
    pub fn theta_of_sequence(cfg: &OrbitConfig, s: &VSeq) -> Weight {
        let mut w = Weight::new();
        for &v in s.iter() {
            w.add(v, 1);
            w.add(cfg.normalize(v.theta()), 1);
        }
        w
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.iter().map(|(v, m)| if m == 1 { v.to_string() } else { format!("{m}·{v}") }).collect();
        parts.join("+")
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(Vertex, u32)> = self.iter().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(Vertex, u32)>::deserialize(d)?;
        let mut w = Weight::new();
        for (v, m) in pairs {
            w.add(v, m);
        }
        Ok(w)
    }
}

/// A θ-symmetric dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaWeight(Weight);

impl ThetaWeight {
    pub fn new(cfg: &OrbitConfig, w: Weight) -> Result<Self> {
        let w = Weight::from_pairs(cfg, &w.iter().collect::<Vec<_>>());
        for (v, m) in w.iter() {
            if w.get(cfg.normalize(v.theta())) != m {
                return Err(Error::Invalid(format!(
                    "weight {} is not θ-symmetric at {v}: {m} vs {}",
                    w.render(),
                    w.get(cfg.normalize(v.theta()))
                )));
            }
        }
        Ok(Self(w))
    }

    /// `ν⁺ + θ(ν⁺)` for a weight on the `λ` branch.
    pub fn from_positive(cfg: &OrbitConfig, pos: &Weight) -> Result<Self> {
        if !pos.is_positive() {
            return Err(Error::Invalid(format!("{} has support off the λ branch", pos.render())));
        }
        Self::new(cfg, pos.theta_double(cfg))
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }

    /// Number of strands `m = |ν| / 2`.
    pub fn strands(&self) -> usize {
        (self.0.height() / 2) as usize
    }

    pub fn positive_part(&self) -> Weight {
        self.0.positive_part()
    }
}

/// A sequence of vertices `(i_1, ..., i_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VSeq(pub Vec<Vertex>);

impl VSeq {
    pub fn new(v: Vec<Vertex>) -> Self {
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.0.iter()
    }

    /// Entry at 1-based position `k`.
    pub fn at(&self, k: usize) -> Vertex {
        self.0[k - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|v| v.is_positive())
    }

    /// `s_k · i` for `k ≥ 1` (swap), `s_0 · i` applies θ to the first entry.
    pub fn act(&self, cfg: &OrbitConfig, k: usize) -> VSeq {
        let mut v = self.0.clone();
        if k == 0 {
            v[0] = cfg.normalize(v[0].theta());
        } else {
            v.swap(k - 1, k);
        }
        VSeq(v)
    }

    pub fn concat(&self, o: &VSeq) -> VSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        VSeq(v)
    }

    pub fn ascii(&self) -> String {
        self.0.iter().map(|v| v.ascii()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for VSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Distinct arrangements of a multiset, in lexicographic order.
fn arrangements(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut used = vec![false; sorted.len()];
    let mut cur = Vec::with_capacity(sorted.len());
    fn rec(s: &[Vertex], used: &mut [bool], cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i]);
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut cur, &mut out);
    out
}

fn multiset(w: &Weight) -> Vec<Vertex> {
    w.iter().flat_map(|(v, m)| std::iter::repeat_n(v, m as usize)).collect()
}

/// `I^ν` for a KLR weight: all distinct orderings of the multiset.
pub fn klr_sequences(w: &Weight) -> Vec<VSeq> {
    arrangements(&multiset(w)).into_iter().map(VSeq).collect()
}

/// `ᶿI^ν`: every sequence whose entries together with their θ-images give `ν`.
pub fn theta_sequences(cfg: &OrbitConfig, nu: &ThetaWeight) -> Vec<VSeq> {
    let pos = multiset(&nu.positive_part());
    let m = pos.len();
    let mut out = Vec::new();
    for arr in arrangements(&pos) {
        for mask in 0..(1u32 << m) {
            let s: Vec<Vertex> = arr
                .iter()
                .enumerate()
                .map(|(k, &v)| if mask >> k & 1 == 1 { cfg.normalize(v.theta()) } else { v })
                .collect();
            out.push(VSeq(s));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inf() -> OrbitConfig {
        OrbitConfig::infinite()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(Vertex::plus(0).theta(), Vertex::minus(0));
        assert_eq!(Vertex::plus(2).theta(), Vertex::minus(-2));
        assert_eq!(Vertex::minus(-2).theta(), Vertex::plus(2));
    }

    #[test]
    fn arrows_follow_p_squared() {
        let c = inf();
        assert_eq!(c.arrow_count(Vertex::plus(2), Vertex::plus(0)), 1);
        assert_eq!(c.arrow_count(Vertex::plus(0), Vertex::plus(2)), 0);
        // λ^{-1} → p^{-2}λ^{-1} on the lower branch
        assert_eq!(c.arrow_count(Vertex::minus(0), Vertex::minus(-2)), 1);
        assert_eq!(c.arrow_count(Vertex::minus(-2), Vertex::minus(0)), 0);
    }

    #[test]
    fn forms() {
        let c = inf();
        assert_eq!(c.bilinear(Vertex::plus(0), Vertex::plus(2)), -1);
        assert_eq!(c.bilinear(Vertex::plus(0), Vertex::plus(0)), 2);
        assert_eq!(c.bilinear(Vertex::plus(0), Vertex::plus(4)), 0);
        assert_eq!(c.delta(Vertex::plus(0), Vertex::plus(0)), 1);
    }

    #[test]
    fn cyclic_orbit_wraps() {
        let c = OrbitConfig::new(3).unwrap();
        assert_eq!(c.arrow_count(Vertex::plus(0), Vertex::plus(4)), 1);
        assert_eq!(c.normalize(Vertex::plus(6)), Vertex::plus(0));
        assert!(OrbitConfig::new(1).is_err());
        assert!(OrbitConfig::new(2).is_err());
    }

    #[test]
    fn sequence_counts() {
        let c = inf();
        let mut p = Weight::new();
        p.add(Vertex::plus(0), 1);
        let nu = ThetaWeight::from_positive(&c, &p).unwrap();
        assert_eq!(theta_sequences(&c, &nu), vec![VSeq(vec![Vertex::plus(0)]), VSeq(vec![Vertex::minus(0)])]);
        assert_eq!(klr_sequences(&nu.positive_part()), vec![VSeq(vec![Vertex::plus(0)])]);
        p.add(Vertex::plus(2), 1);
        let nu = ThetaWeight::from_positive(&c, &p).unwrap();
        assert_eq!(theta_sequences(&c, &nu).len(), 8);
    }

    #[test]
    fn asymmetric_weight_rejected() {
        let c = inf();
        let mut w = Weight::new();
        w.add(Vertex::plus(0), 1);
        assert!(ThetaWeight::new(&c, w).is_err());
    }

    #[test]
    fn vertex_text_roundtrip() {
        for s in ["0", "2", "-4", "~2", "~-6"] {
            assert_eq!(Vertex::parse(s).unwrap().ascii(), s);
        }
        assert_eq!(Vertex::parse("2\u{304}").unwrap(), Vertex::minus(2));
        assert!(Vertex::parse("3").is_err());
        let j = serde_json::to_string(&Vertex::minus(-2)).unwrap();
        assert_eq!(j, r#"{"sign":"-","k":-2}"#);
        assert_eq!(serde_json::from_str::<Vertex>(&j).unwrap(), Vertex::minus(-2));
    }
}
