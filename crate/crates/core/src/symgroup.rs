//! The symmetric group `S_n` as a Coxeter group with simple reflections
//! `s_0, …, s_{n-2}` (0-based; `s_i` exchanges `i` and `i + 1`).
//!
//! Permutations are stored in 0-based one-line notation: `w.images()[k]` is
//! `w(k)`. They are printed 1-based. Composition is "apply the right factor
//! first": `(u * v)(k) = u(v(k))`. Hence `s_i * w` exchanges the *values*
//! `i, i+1` of `w`, while `w * s_i` exchanges the *positions* `i, i+1`.

use std::fmt;
use std::ops::{Mul, Range};

use crate::error::{usage, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The simple reflection `s_i` of `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "simple reflection s_{i} does not exist in S_{n}");
        let mut w = Self::identity(n);
        w.0.swap(i, i + 1);
        w
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(usage!("not a permutation of 0..{n}: {images:?}"));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(usage!("one-line notation is 1-based: {images:?}"));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯` in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &i in word.iter().rev() {
            w = w.left_mul_simple(i);
        }
        w
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| k == x)
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x] = k;
        }
        Permutation(inv)
    }

    /// Position of the value `v`, i.e. `w^{-1}(v)`.
    pub fn position_of(&self, v: usize) -> usize {
        self.0.iter().position(|&x| x == v).expect("value out of range")
    }

    /// `s_i * self`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let images = self
            .0
            .iter()
            .map(|&x| match x {
                x if x == i => i + 1,
                x if x == i + 1 => i,
                x => x,
            })
            .collect();
        Permutation(images)
    }

    /// `self * s_i`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.0.swap(i, i + 1);
        w
    }

    /// `l(s_i w) < l(w)`: the value `i + 1` sits before `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.position_of(i + 1) < self.position_of(i)
    }

    /// `l(w s_i) < l(w)`: `w(i) > w(i + 1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i] > self.0[i + 1]
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1)).filter(|&i| self.has_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1)).filter(|&i| self.has_right_descent(i)).collect()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "permutations of different degree");
        Permutation(rhs.0.iter().map(|&k| self.0[k]).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Number of inversions.
pub fn length(w: &Permutation) -> usize {
    let v = w.images();
    (0..v.len()).map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count()).sum()
}

/// A reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`. Rule: peel
/// off the smallest right descent repeatedly, so the word ends with it.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut w = w.clone();
    let mut word = Vec::new();
    while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.has_right_descent(i)) {
        word.push(i);
        w = w.right_mul_simple(i);
    }
    word.reverse();
    word
}

/// All of `S_n`, ordered by length and then lexicographically; the
/// identity comes first.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation(cur.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.sort_by_cached_key(|w| (length(w), w.clone()));
    out
}

/// An ordered list of positive parts; the blocks of consecutive positions
/// define the parabolic subgroup `S_{e_1} × ⋯ × S_{e_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(usage!("composition parts must be positive: {parts:?}"));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&e| {
                let r = start..start + e;
                start += e;
                r
            })
            .collect()
    }

    /// Index of the block containing `position`.
    pub fn block_of(&self, position: usize) -> usize {
        self.blocks().iter().position(|r| r.contains(&position)).expect("position outside composition")
    }

    /// Whether `s_t` lies in the parabolic subgroup.
    pub fn contains_simple(&self, t: usize) -> bool {
        self.block_of(t) == self.block_of(t + 1)
    }
}

/// Minimal length in its left coset `x W_c`: increasing on every block.
pub fn is_min_coset_rep(x: &Permutation, c: &Composition) -> bool {
    x.n() == c.n() && c.blocks().into_iter().all(|r| x.images()[r].windows(2).all(|p| p[0] < p[1]))
}

/// Minimal-length representatives of `S_n / W_c`, ordered by length then
/// lexicographically.
pub fn min_coset_reps(n: usize, c: &Composition) -> Result<Vec<Permutation>> {
    if c.n() != n {
        return Err(usage!("composition {:?} does not sum to {n}", c.parts()));
    }
    // Distribute the values 0..n among the blocks; each block is filled in
    // increasing order.
    fn rec(c: &[usize], block: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if block == c.len() {
            out.push(Permutation(cur.clone()));
            return;
        }
        fn choose(
            c: &[usize],
            block: usize,
            left: usize,
            min: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Permutation>,
        ) {
            if left == 0 {
                rec(c, block + 1, used, cur, out);
                return;
            }
            for x in min..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    choose(c, block, left - 1, x + 1, used, cur, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        choose(c, block, c[block], 0, used, cur, out);
    }
    let mut out = Vec::new();
    rec(c.parts(), 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    out.sort_by_cached_key(|w| (length(w), w.clone()));
    Ok(out)
}

/// Unique factorization `w = x * u` with `x` a minimal coset representative
/// and `u` in the parabolic subgroup.
pub fn coset_factor(w: &Permutation, c: &Composition) -> (Permutation, Permutation) {
    let mut x = w.clone();
    for r in c.blocks() {
        x.0[r].sort_unstable();
    }
    let u = &x.inverse() * w;
    (x, u)
}

/// What happens to a minimal coset representative under left
/// multiplication by a simple reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeodharStep {
    /// `s x` is a minimal representative and `l(s x) = l(x) + 1`.
    LongerRep(Permutation),
    /// `s x` is a minimal representative and `l(s x) = l(x) - 1`.
    ShorterRep(Permutation),
    /// `s x = x s_t` with `s_t` in the parabolic subgroup.
    StaysInParabolic(usize),
}

pub fn deodhar_step(s: usize, x: &Permutation, c: &Composition) -> Result<DeodharStep> {
    if s + 1 >= x.n() {
        return Err(usage!("no simple reflection s_{s} in S_{}", x.n()));
    }
    if !is_min_coset_rep(x, c) {
        return Err(usage!("{x} is not a minimal coset representative for {:?}", c.parts()));
    }
    let (p, p1) = (x.position_of(s), x.position_of(s + 1));
    if c.block_of(p) == c.block_of(p1) {
        // increasing inside the block, so the two values sit side by side
        debug_assert_eq!(p + 1, p1);
        return Ok(DeodharStep::StaysInParabolic(p));
    }
    let y = x.left_mul_simple(s);
    Ok(if p < p1 { DeodharStep::LongerRep(y) } else { DeodharStep::ShorterRep(y) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(length(&Permutation::identity(4)), 0);
        assert_eq!(length(&Permutation::from_one_line(&[3, 2, 1]).unwrap()), 3);
        assert_eq!(length(&Permutation::simple(4, 0)), 1);
    }

    #[test]
    fn composition_convention() {
        let s0 = Permutation::simple(3, 0);
        let s1 = Permutation::simple(3, 1);
        // (s0 * s1)(2) = s0(s1(2)) = s0(1) = 0
        assert_eq!((&s0 * &s1).apply(2), 0);
        assert_eq!(s1.left_mul_simple(0), &s0 * &s1);
        assert_eq!(s0.right_mul_simple(1), &s0 * &s1);
        assert_eq!(Permutation::from_word(3, &[0, 1]), &s0 * &s1);
    }

    #[test]
    fn reduced_words_multiply_back() {
        for n in 0..=5 {
            for w in all_permutations(n) {
                let word = reduced_word(&w);
                assert_eq!(word.len(), length(&w));
                assert_eq!(Permutation::from_word(n, &word), w);
            }
        }
        assert!(reduced_word(&Permutation::identity(3)).is_empty());
    }

    #[test]
    fn descents_match_lengths() {
        for w in all_permutations(4) {
            for i in 0..3 {
                let l = length(&w);
                let left = length(&w.left_mul_simple(i));
                let right = length(&w.right_mul_simple(i));
                assert_eq!(left + 1 == l, w.has_left_descent(i));
                assert_eq!(right + 1 == l, w.has_right_descent(i));
                assert!(left == l + 1 || left + 1 == l);
            }
        }
    }

    #[test]
    fn coset_reps_small() {
        assert_eq!(min_coset_reps(3, &comp(&[3])).unwrap(), vec![Permutation::identity(3)]);
        assert_eq!(min_coset_reps(3, &comp(&[1, 1, 1])).unwrap(), all_permutations(3));
        assert_eq!(min_coset_reps(3, &comp(&[2, 1])).unwrap().len(), 3);
        assert!(min_coset_reps(4, &comp(&[2, 1])).is_err());
        assert!(Composition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn deodhar_at_identity() {
        let c = comp(&[2, 1]);
        let id = Permutation::identity(3);
        assert_eq!(deodhar_step(0, &id, &c).unwrap(), DeodharStep::StaysInParabolic(0));
        assert_eq!(deodhar_step(1, &id, &c).unwrap(), DeodharStep::LongerRep(Permutation::simple(3, 1)));
        let not_min = Permutation::simple(3, 0);
        assert!(deodhar_step(1, &not_min, &c).is_err());
    }
}
