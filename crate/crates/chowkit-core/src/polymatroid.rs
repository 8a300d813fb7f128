//! Submodular functions and polymatroids on `2^[l]`.
//!
//! Tables are indexed by bitmask: `delta[I]` with bit `i` set iff `i ∈ I`.
//! A polymatroid is stored with its ambient box `n`; its point set is
//! `{α ≤ n : Σ_{i∈I} α_i ≤ δ(I) for all I}` and its bases are the points
//! of weight `δ([l])`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{usage, Result};
use crate::rng::RandomGrid;

/// Set-function axioms: `δ(∅) = 0`, monotone, submodular.
pub fn is_submodular(delta: &[i64]) -> bool {
    let size = delta.len();
    if size == 0 || !size.is_power_of_two() || delta[0] != 0 {
        return false;
    }
    for i in 0..size {
        for j in 0..size {
            if i & j == i && delta[i] > delta[j] {
                return false;
            }
            if delta[i] + delta[j] < delta[i | j] + delta[i & j] {
                return false;
            }
        }
    }
    true
}

/// A polymatroid given by a submodular table and an ambient box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polymatroid {
    n: Vec<usize>,
    delta: Vec<i64>,
}

fn box_sum(n: &[usize], mask: usize) -> i64 {
    (0..n.len()).filter(|i| mask >> i & 1 == 1).map(|i| n[i] as i64).sum()
}

impl Polymatroid {
    /// Validates the table (size `2^l`, submodular) and the box condition
    /// `δ(I) ≤ Σ_{i∈I} n_i`.
    pub fn new(n: Vec<usize>, delta: Vec<i64>) -> Result<Self> {
        let l = n.len();
        if delta.len() != 1 << l {
            return Err(usage!("a table over {l} blocks needs {} entries, got {}", 1usize << l, delta.len()));
        }
        if !is_submodular(&delta) {
            return Err(usage!("the table is not a monotone submodular function with δ(∅) = 0"));
        }
        for (mask, &d) in delta.iter().enumerate() {
            if d > box_sum(&n, mask) {
                return Err(usage!("box condition violated at subset {mask:#b}"));
            }
        }
        Ok(Polymatroid { n, delta })
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }
    pub fn delta(&self) -> &[i64] {
        &self.delta
    }
    pub fn l(&self) -> usize {
        self.n.len()
    }
    fn full(&self) -> usize {
        (1 << self.l()) - 1
    }
    /// `δ([l])`.
    pub fn rank(&self) -> i64 {
        self.delta[self.full()]
    }

    /// `δ*(I) = δ([l] \ I) - δ([l]) + Σ_{i∈I} n_i`.
    pub fn dual(&self) -> Polymatroid {
        let full = self.full();
        let delta = (0..=full).map(|m| self.delta[full & !m] - self.rank() + box_sum(&self.n, m)).collect();
        Polymatroid { n: self.n.clone(), delta }
    }

    /// `δ'(I) = min(δ(I), δ([l]) - 1)`.
    pub fn truncate(&self) -> Result<Polymatroid> {
        if self.rank() < 1 {
            return Err(usage!("cannot truncate a polymatroid of rank 0"));
        }
        let cap = self.rank() - 1;
        Ok(Polymatroid { n: self.n.clone(), delta: self.delta.iter().map(|&d| d.min(cap)).collect() })
    }

    /// Dual of the truncation of the dual.
    pub fn elongate(&self) -> Result<Polymatroid> {
        Ok(self.dual().truncate()?.dual())
    }

    pub fn member(&self, alpha: &[usize]) -> bool {
        alpha.len() == self.l()
            && alpha.iter().zip(&self.n).all(|(a, n)| a <= n)
            && (1..=self.full()).all(|m| {
                let s: i64 = (0..self.l()).filter(|i| m >> i & 1 == 1).map(|i| alpha[i] as i64).sum();
                s <= self.delta[m]
            })
    }

    /// Every point of the polymatroid (lexicographic order).
    pub fn points(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        let mut alpha = vec![0usize; self.l()];
        loop {
            if self.member(&alpha) {
                out.insert(alpha.clone());
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == self.l() {
                    return out;
                }
                if alpha[i] < self.n[i] {
                    alpha[i] += 1;
                    break;
                }
                alpha[i] = 0;
                i += 1;
            }
        }
    }

    /// Points of weight `δ([l])`.
    pub fn bases(&self) -> BTreeSet<Vec<usize>> {
        let r = self.rank();
        self.points().into_iter().filter(|a| a.iter().sum::<usize>() as i64 == r).collect()
    }
}

/// Random monotone submodular table with `δ({i}) ≤ n_i`: a sum of two
/// truncated modular functions `I ↦ min(Σ_{i∈I} w_i, c)`.
pub fn random_submodular(n: &[usize], grid: &mut RandomGrid) -> Vec<i64> {
    let l = n.len();
    let split: Vec<(i64, i64)> = n
        .iter()
        .map(|&ni| {
            let a = grid.range(0, ni as i64);
            let b = grid.range(0, ni as i64 - a);
            (a, b)
        })
        .collect();
    let total: i64 = n.iter().map(|&x| x as i64).sum();
    let c1 = grid.range(0, total);
    let c2 = grid.range(0, total);
    (0..1usize << l)
        .map(|m| {
            let (mut s1, mut s2) = (0, 0);
            for (i, &(a, b)) in split.iter().enumerate() {
                if m >> i & 1 == 1 {
                    s1 += a;
                    s2 += b;
                }
            }
            s1.min(c1) + s2.min(c2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Polymatroid {
        Polymatroid::new(vec![3, 3], vec![0, 2, 2, 4]).unwrap()
    }

    #[test]
    fn axioms() {
        assert!(is_submodular(&[0, 1, 1, 2, 1, 2, 2, 2]));
        // δ({1}) = 0, δ({2}) = 1, δ({1,2}) = 2 breaks submodularity
        assert!(!is_submodular(&[0, 0, 1, 2]));
    }

    #[test]
    fn dual_of_a_single_block() {
        let p = Polymatroid::new(vec![3], vec![0, 2]).unwrap();
        assert_eq!(p.dual().delta(), &[0, 1]);
        assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn figure_formats() {
        let p = fig1();
        let b: Vec<Vec<usize>> = p.bases().into_iter().collect();
        assert_eq!(b, vec![vec![2, 2]]);
        let t = p.truncate().unwrap();
        let tb: Vec<Vec<usize>> = t.bases().into_iter().collect();
        assert_eq!(tb, vec![vec![1, 2], vec![2, 1]]);
        let e: Vec<Vec<usize>> = t.elongate().unwrap().bases().into_iter().collect();
        assert_eq!(e, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn random_tables_are_polymatroids() {
        let mut g = RandomGrid::new(3, 10, 3);
        for _ in 0..50 {
            let n = vec![g.range(0, 4) as usize, g.range(0, 4) as usize, g.range(0, 4) as usize];
            assert!(Polymatroid::new(n.clone(), random_submodular(&n, &mut g)).is_ok());
        }
    }
}
