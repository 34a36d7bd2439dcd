//! Permutations of `{0, ..., n-1}` with the combinatorics needed for
//! parabolic induction: descents, reduced words, and minimal-length coset
//! representatives for a two-block parabolic subgroup.

use std::fmt;

use itertools::Itertools;

/// `map[i]` is the image of `i`. Composition is function composition:
/// `(u * v)(x) = u(v(x))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n).collect() }
    }

    pub fn from_images(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm { map })
    }

    /// The adjacent transposition `s_{k+1}` swapping `k` and `k+1`
    /// (0-based `k < n-1`).
    pub fn adjacent_transposition(n: usize, k: usize) -> Self {
        assert!(k + 1 < n);
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(k, k + 1);
        Perm { map }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            map: (0..self.n()).map(|i| self.map[other.map[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.n()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn num_inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.map[i] > self.map[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Smallest `k` with `s_{k+1} * self` shorter than `self`, i.e. with
    /// `self^{-1}(k) > self^{-1}(k+1)`.
    pub fn left_descent(&self) -> Option<usize> {
        let inv = self.inverse();
        (0..self.n().saturating_sub(1)).find(|&k| inv.map[k] > inv.map[k + 1])
    }

    /// A reduced word `[k_1, ..., k_l]` with
    /// `self = s_{k_1+1} * s_{k_2+1} * ... * s_{k_l+1}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.num_inversions());
        while let Some(k) = w.left_descent() {
            word.push(k);
            w = Perm::adjacent_transposition(self.n(), k).compose(&w);
        }
        debug_assert!(w.is_identity());
        word
    }

    /// The longest element `w_0`, reversing `0..n`.
    pub fn longest(n: usize) -> Perm {
        Perm { map: (0..n).rev().collect() }
    }

    /// One-line notation, 1-based, e.g. `[2,1,3]`.
    pub fn one_line(&self) -> String {
        format!("[{}]", self.map.iter().map(|v| v + 1).join(","))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

/// Is `w` increasing on `0..m1` and on `m1..n`? These are the minimal-length
/// representatives of the left cosets `w * (S_{m1} x S_{n-m1})`.
pub fn is_min_coset_rep(w: &Perm, m1: usize) -> bool {
    let inc = |range: std::ops::Range<usize>| {
        range.clone().zip(range.skip(1)).all(|(i, j)| w.apply(i) < w.apply(j))
    };
    inc(0..m1) && inc(m1..w.n())
}

/// All minimal coset representatives for `S_n / (S_{m1} x S_{n-m1})`, in a
/// fixed deterministic order. There are `binomial(n, m1)` of them.
pub fn min_coset_reps(n: usize, m1: usize) -> Vec<Perm> {
    assert!(m1 <= n);
    (0..n)
        .combinations(m1)
        .map(|first_block| {
            let mut used = vec![false; n];
            for &v in &first_block {
                used[v] = true;
            }
            let mut map = first_block;
            map.extend((0..n).filter(|&v| !used[v]));
            Perm { map }
        })
        .collect()
}

/// Factors `w = d * p` with `d` a minimal coset representative and `p`
/// block-diagonal; returns `(d, p1, p2)` with `p1` acting on `0..m1` and
/// `p2` on the complement (re-indexed from 0).
pub fn coset_factorize(w: &Perm, m1: usize) -> (Perm, Perm, Perm) {
    let n = w.n();
    let mut first: Vec<usize> = (0..m1).map(|i| w.apply(i)).collect();
    let mut second: Vec<usize> = (m1..n).map(|i| w.apply(i)).collect();
    first.sort_unstable();
    second.sort_unstable();
    let mut d_map = first;
    d_map.extend(second);
    let d = Perm { map: d_map };
    let p = d.inverse().compose(w);
    debug_assert!(p.map.iter().take(m1).all(|&v| v < m1));
    let p1 = Perm { map: p.map[..m1].to_vec() };
    let p2 = Perm {
        map: p.map[m1..].iter().map(|&v| v - m1).collect(),
    };
    (d, p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let s1 = Perm::adjacent_transposition(3, 0);
        let s2 = Perm::adjacent_transposition(3, 1);
        let w = s1.compose(&s2);
        assert_eq!(w.images(), &[1, 2, 0]);
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.apply(0), 1);
    }

    #[test]
    fn braid_relation() {
        let s1 = Perm::adjacent_transposition(3, 0);
        let s2 = Perm::adjacent_transposition(3, 1);
        assert_eq!(
            s1.compose(&s2).compose(&s1),
            s2.compose(&s1).compose(&s2)
        );
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in min_coset_reps(4, 2) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.num_inversions());
            let mut prod = Perm::identity(4);
            for &k in &word {
                prod = prod.compose(&Perm::adjacent_transposition(4, k));
            }
            assert_eq!(prod, w);
        }
        let w0 = Perm::longest(4);
        assert_eq!(w0.reduced_word().len(), 6);
    }

    #[test]
    fn coset_reps_count_and_shape() {
        let reps = min_coset_reps(4, 2);
        assert_eq!(reps.len(), 6);
        for r in &reps {
            assert!(is_min_coset_rep(r, 2));
        }
        assert_eq!(min_coset_reps(3, 0), vec![Perm::identity(3)]);
        assert_eq!(min_coset_reps(3, 3), vec![Perm::identity(3)]);
    }

    #[test]
    fn factorization_recovers_w() {
        for map in (0..4).permutations(4) {
            let w = Perm::from_images(map).unwrap();
            let (d, p1, p2) = coset_factorize(&w, 2);
            assert!(is_min_coset_rep(&d, 2));
            let mut p_map: Vec<usize> = p1.images().to_vec();
            p_map.extend(p2.images().iter().map(|&v| v + 2));
            let p = Perm::from_images(p_map).unwrap();
            assert_eq!(d.compose(&p), w);
            assert_eq!(
                d.num_inversions() + p.num_inversions(),
                w.num_inversions(),
                "length must be additive across the factorization"
            );
        }
    }

    #[test]
    fn left_descent_matches_definition() {
        let w = Perm::from_images(vec![2, 0, 1]).unwrap();
        // w^{-1} = [1, 2, 0]; w^{-1}(1) > w^{-1}(2) so the descent is k = 1.
        assert_eq!(w.left_descent(), Some(1));
        assert_eq!(Perm::identity(3).left_descent(), None);
    }
}
