//! Symmetric groups and type B Weyl groups as signed permutations.
//!
//! `s_0` negates 1 and `s_k` (k ≥ 1) swaps k and k+1. Words are read as
//! products, so the word `[a, b]` is the element `s_a s_b`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::quiver::{OrbitConfig, VSeq};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(m: usize) -> Self {
        Self { img: (1..=m as i8).collect() }
    }

    pub fn from_images(img: Vec<i8>) -> Self {
        let m = img.len() as i8;
        let mut seen = vec![false; img.len()];
        for &x in &img {
            assert!(x != 0 && x.abs() <= m, "image out of range");
            assert!(!seen[(x.abs() - 1) as usize], "not a bijection");
            seen[(x.abs() - 1) as usize] = true;
        }
        Self { img }
    }

    pub fn generator(m: usize, k: usize) -> Self {
        let mut w = Self::identity(m);
        if k == 0 {
            w.img[0] = -1;
        } else {
            assert!(k < m, "generator s_{k} out of range for rank {m}");
            w.img.swap(k - 1, k);
        }
        w
    }

    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(m);
        for &k in word {
            w = w.compose(&Self::generator(m, k));
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[i8] {
        &self.img
    }

    /// `w(k)` for a signed index, with `w(-k) = -w(k)`.
    pub fn act_on_index(&self, k: i32) -> i32 {
        assert!(k != 0 && k.unsigned_abs() as usize <= self.rank(), "index out of range");
        let x = self.img[k.unsigned_abs() as usize - 1] as i32;
        if k > 0 {
            x
        } else {
            -x
        }
    }

    /// `(self ∘ o)(k) = self(o(k))`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.rank(), o.rank());
        Self { img: o.img.iter().map(|&k| self.act_on_index(k as i32) as i8).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0i8; self.rank()];
        for (a, &x) in self.img.iter().enumerate() {
            let s = if x > 0 { 1 } else { -1 };
            img[x.unsigned_abs() as usize - 1] = s * (a as i8 + 1);
        }
        Self { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(a, &x)| x == a as i8 + 1)
    }

    /// True when no sign changes occur, i.e. the element lies in `S_m`.
    pub fn is_unsigned(&self) -> bool {
        self.img.iter().all(|&x| x > 0)
    }

    /// Coxeter length in `W^B_m` (which agrees with the `S_m` length on unsigned elements).
    pub fn length(&self) -> usize {
        let w = &self.img;
        let mut l = 0;
        for a in 0..w.len() {
            if w[a] < 0 {
                l += 1;
            }
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    l += 1;
                }
                if w[a] + w[b] < 0 {
                    l += 1;
                }
            }
        }
        l
    }

    /// `ℓ(s_k w) < ℓ(w)`.
    pub fn has_left_descent(&self, k: usize) -> bool {
        Self::generator(self.rank(), k).compose(self).length() < self.length()
    }

    pub fn has_right_descent(&self, k: usize) -> bool {
        self.compose(&Self::generator(self.rank(), k)).length() < self.length()
    }

    /// The lexicographically smallest reduced word (`s_0 < s_1 < ...`).
    pub fn reduced_word(&self) -> Vec<usize> {
        let m = self.rank();
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while !w.is_identity() {
            let k = (0..m).find(|&k| w.has_left_descent(k)).expect("nonidentity element has a descent");
            word.push(k);
            w = Self::generator(m, k).compose(&w);
        }
        word
    }

    /// Action on vertex sequences: `σ_w e(i) = e(w·i) σ_w`. Entry `a` moves to
    /// position `|w(a)|` and is replaced by its θ-image when `w(a) < 0`.
    pub fn act_seq(&self, cfg: &OrbitConfig, i: &VSeq) -> VSeq {
        assert_eq!(i.len(), self.rank());
        let mut out = i.0.clone();
        for (a, &x) in self.img.iter().enumerate() {
            let v = i.0[a];
            out[x.unsigned_abs() as usize - 1] = if x > 0 { v } else { cfg.normalize(v.theta()) };
        }
        VSeq(out)
    }

    /// Embeds into a larger rank, acting on positions `offset+1 ..= offset+rank`.
    /// Only meaningful for unsigned elements or `offset = 0`.
    pub fn shifted(&self, offset: usize, total: usize) -> Self {
        let mut img: Vec<i8> = (1..=total as i8).collect();
        for (a, &x) in self.img.iter().enumerate() {
            let s = if x > 0 { 1 } else { -1 };
            img[offset + a] = s * (x.abs() + offset as i8);
        }
        Self::from_images(img)
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.img)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        write!(f, "s{:?}", w)
    }
}

/// Renders a word as `σ[0,1]`-style text.
pub fn word_text(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|k| k.to_string()).collect();
    format!("σ[{}]", parts.join(","))
}

fn closure(m: usize, gens: &[usize]) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(m);
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let gs: Vec<SignedPerm> = gens.iter().map(|&k| SignedPerm::generator(m, k)).collect();
    while let Some(w) = queue.pop_front() {
        for g in &gs {
            let x = w.compose(g);
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    let mut all: Vec<(usize, Vec<usize>, SignedPerm)> =
        seen.into_iter().map(|w| (w.length(), w.reduced_word(), w)).collect();
    all.sort();
    all.into_iter().map(|(_, _, w)| w).collect()
}

/// All of `W^B_m`, sorted by (length, reduced word).
pub fn all_elements_b(m: usize) -> Vec<SignedPerm> {
    closure(m, &(0..m).collect::<Vec<_>>())
}

/// All of `S_m`, sorted by (length, reduced word).
pub fn all_elements_a(m: usize) -> Vec<SignedPerm> {
    closure(m, &(1..m).collect::<Vec<_>>())
}

/// Minimal length left coset representatives `w` of `G / H`, each stored with
/// its reduced word and sorted by (length, reduced word).
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub rank: usize,
    pub reps: Vec<SignedPerm>,
    pub words: Vec<Vec<usize>>,
    index: HashMap<SignedPerm, usize>,
    split: HashMap<SignedPerm, (usize, SignedPerm)>,
}

impl CosetTable {
    /// Builds the table from the full group and subgroup element lists.
    /// Panics if some coset has two elements of minimal length.
    pub fn build(rank: usize, group: &[SignedPerm], subgroup: &[SignedPerm]) -> Self {
        let mut sorted: Vec<(usize, Vec<usize>, SignedPerm)> =
            group.iter().map(|w| (w.length(), w.reduced_word(), w.clone())).collect();
        sorted.sort();
        let mut split: HashMap<SignedPerm, (usize, SignedPerm)> = HashMap::new();
        let mut reps = Vec::new();
        let mut words = Vec::new();
        for (len, word, x) in sorted {
            if split.contains_key(&x) {
                continue;
            }
            for h in subgroup {
                let y = x.compose(h);
                if y != x {
                    assert!(y.length() > len, "coset of {x:?} has no unique minimal element");
                }
                split.insert(y, (reps.len(), h.clone()));
            }
            reps.push(x);
            words.push(word);
        }
        let index = reps.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self { rank, reps, words, index, split }
    }

    /// Writes `u = rep · h` with `rep` a representative and `h` in the subgroup;
    /// returns the representative's position and `h`.
    pub fn split(&self, u: &SignedPerm) -> Option<(usize, &SignedPerm)> {
        self.split.get(u).map(|(i, h)| (*i, h))
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn position(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Block sizes to block offsets.
pub fn offsets(blocks: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        out.push(acc);
        acc += b;
    }
    out
}

fn block_of(offs: &[usize], blocks: &[usize], pos: usize) -> usize {
    (0..blocks.len()).find(|&f| pos > offs[f] && pos <= offs[f] + blocks[f]).expect("position in some block")
}

/// `S_{m_1} × ... × S_{m_k}` inside `W^B_M` (or `S_M`): unsigned elements preserving every block.
pub fn young_subgroup(blocks: &[usize]) -> Vec<SignedPerm> {
    let total: usize = blocks.iter().sum();
    let offs = offsets(blocks);
    let gens: Vec<usize> = (0..blocks.len()).flat_map(|f| (offs[f] + 1..offs[f] + blocks[f]).collect::<Vec<_>>()).collect();
    let out = closure(total, &gens);
    debug_assert!(out.iter().all(|w| {
        w.images().iter().enumerate().all(|(a, &x)| x > 0 && block_of(&offs, blocks, a + 1) == block_of(&offs, blocks, x as usize))
    }));
    out
}

/// `W^B_{m_1} × ... × W^B_{m_k}` inside `W^B_M`: signed elements preserving every block in absolute value.
pub fn quasi_parabolic_subgroup(blocks: &[usize]) -> Vec<SignedPerm> {
    let total: usize = blocks.iter().sum();
    let offs = offsets(blocks);
    all_elements_b(total)
        .into_iter()
        .filter(|w| {
            w.images()
                .iter()
                .enumerate()
                .all(|(a, &x)| block_of(&offs, blocks, a + 1) == block_of(&offs, blocks, x.unsigned_abs() as usize))
        })
        .collect()
}

/// `D(W^B_{m+n} / (S_m × S_n))`.
pub fn min_coset_reps_b(m: usize, n: usize) -> CosetTable {
    CosetTable::build(m + n, &all_elements_b(m + n), &young_subgroup(&[m, n]))
}

/// `S_{m,n}`: minimal left coset representatives of `S_m × S_n` in `S_{m+n}`.
pub fn min_coset_reps_a(m: usize, n: usize) -> CosetTable {
    CosetTable::build(m + n, &all_elements_a(m + n), &young_subgroup(&[m, n]))
}

/// `D(W^B_{m+n} / (W^B_m × W^B_n))`.
pub fn min_coset_reps_b_quasi(m: usize, n: usize) -> CosetTable {
    CosetTable::build(m + n, &all_elements_b(m + n), &quasi_parabolic_subgroup(&[m, n]))
}

/// `w[m,n]`: `k ↦ k+n` for `k ≤ m`, `k ↦ k-m` otherwise.
pub fn w_shuffle(m: usize, n: usize) -> SignedPerm {
    let img = (1..=m + n).map(|k| if k <= m { (k + n) as i8 } else { (k - m) as i8 }).collect();
    SignedPerm::from_images(img)
}

/// The reduced word `Π_{j=1}^{m} (s_{n+j-1} ⋯ s_j)` of `w[m,n]`.
pub fn w_shuffle_word(m: usize, n: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(m * n);
    for j in 1..=m {
        for k in (j..n + j).rev() {
            word.push(k);
        }
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfs_lengths(m: usize) -> HashMap<SignedPerm, usize> {
        let id = SignedPerm::identity(m);
        let mut dist = HashMap::from([(id.clone(), 0)]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for k in 0..m {
                let x = w.compose(&SignedPerm::generator(m, k));
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    #[test]
    fn group_orders() {
        let fact = [1, 1, 2, 6, 24];
        for (m, f) in fact.into_iter().enumerate() {
            assert_eq!(all_elements_b(m).len(), (1 << m) * f);
            assert_eq!(all_elements_a(m).len(), f);
        }
    }

    #[test]
    fn length_formula_matches_bfs_and_words_roundtrip() {
        for m in 1..=4 {
            for (w, d) in bfs_lengths(m) {
                assert_eq!(w.length(), d, "{w:?}");
                let word = w.reduced_word();
                assert_eq!(word.len(), d);
                assert_eq!(SignedPerm::from_word(m, &word), w);
            }
        }
    }

    #[test]
    fn reduced_word_is_lex_minimal() {
        // brute force: all reduced words of elements of W^B_3
        let m = 3;
        let lengths = bfs_lengths(m);
        let maxl = *lengths.values().max().unwrap();
        let mut best: HashMap<SignedPerm, Vec<usize>> = HashMap::new();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..maxl {
            let mut next = Vec::new();
            for w in &words {
                for k in 0..m {
                    let mut x = w.clone();
                    x.push(k);
                    if SignedPerm::from_word(m, &x).length() == x.len() {
                        next.push(x);
                    }
                }
            }
            for w in &next {
                let e = SignedPerm::from_word(m, w);
                let b = best.entry(e).or_insert_with(|| w.clone());
                if w < b {
                    *b = w.clone();
                }
            }
            words = next;
        }
        for (w, b) in best {
            assert_eq!(w.reduced_word(), b);
        }
    }

    #[test]
    fn small_examples() {
        assert!(SignedPerm::identity(3).reduced_word().is_empty());
        assert_eq!(SignedPerm::from_word(2, &[1, 0]).reduced_word().len(), 2);
        let longest = SignedPerm::from_images(vec![-1, -2]);
        assert_eq!(longest.reduced_word().len(), 4);
        let s0 = SignedPerm::generator(2, 0);
        let s1 = SignedPerm::generator(2, 1);
        assert_eq!(s0.act_on_index(1), -1);
        assert_eq!(s1.act_on_index(1), 2);
        assert_eq!(s0.act_on_index(2), 2);
    }

    #[test]
    fn coset_table_sizes() {
        assert_eq!(min_coset_reps_b(1, 1).len(), 8);
        assert_eq!(min_coset_reps_b(2, 1).len(), 24);
        let t = min_coset_reps_b(1, 0);
        assert_eq!(t.words, vec![vec![], vec![0]]);
        let a = min_coset_reps_a(1, 1);
        assert_eq!(a.words, vec![vec![], vec![1]]);
        assert_eq!(min_coset_reps_a(2, 0).len(), 1);
        assert_eq!(min_coset_reps_a(2, 2).len(), 6);
        assert_eq!(min_coset_reps_b_quasi(1, 1).len(), 2);
        let binom = |n: usize, k: usize| (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
        for m in 0..=3 {
            for n in 0..=(3 - m) {
                assert_eq!(min_coset_reps_b(m, n).len(), (1 << (m + n)) * binom(m + n, m));
                assert_eq!(min_coset_reps_a(m, n).len(), binom(m + n, m));
            }
        }
    }

    #[test]
    fn coset_reps_are_right_minimal() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let t = min_coset_reps_b(m, n);
            let gens: Vec<usize> = (1..m).chain(m + 1..m + n).collect();
            for w in &t.reps {
                for &k in &gens {
                    assert!(!w.has_right_descent(k));
                }
            }
        }
    }

    #[test]
    fn shuffle_words() {
        assert_eq!(w_shuffle_word(1, 1), vec![1]);
        assert_eq!(w_shuffle_word(1, 2), vec![2, 1]);
        assert_eq!(w_shuffle_word(2, 1), vec![1, 2]);
        assert!(w_shuffle(3, 0).is_identity());
        for m in 0..=3 {
            for n in 0..=(4 - m) {
                let w = w_shuffle(m, n);
                assert_eq!(SignedPerm::from_word(m + n, &w_shuffle_word(m, n)), w);
                assert_eq!(w.length(), m * n);
            }
        }
    }

    #[test]
    fn shuffle_is_longest_right_coset_rep() {
        for m in 0..=3 {
            for n in 0..=(4 - m) {
                // minimal right coset reps of S_m × S_n: no left descents in the subgroup generators
                let gens: Vec<usize> = (1..m).chain(m + 1..m + n).collect();
                let right_min: Vec<SignedPerm> = all_elements_a(m + n)
                    .into_iter()
                    .filter(|w| gens.iter().all(|&k| !w.has_left_descent(k)))
                    .collect();
                let longest = right_min.iter().max_by_key(|w| w.length()).unwrap();
                assert_eq!(right_min.iter().filter(|w| w.length() == longest.length()).count(), 1);
                assert_eq!(*longest, w_shuffle(n, m));
            }
        }
    }
}
