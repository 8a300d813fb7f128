//! Exact rational simplex for the cell-location problems of mixed
//! subdivisions.
//!
//! Solves `min c·x` subject to `A x = b(ε)`, `x ≥ 0`, where the right-hand
//! side is symbolically perturbed: `b(ε) = B[.,0] + Σ_j ε^j B[.,j]` for an
//! infinitesimal `ε > 0`. Right-hand sides are therefore vectors compared
//! lexicographically, which makes every basic solution of a generic
//! perturbation nondegenerate; entering variables follow Bland's rule.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Unique optimal basis (sorted column indices of `A`).
    Optimal(Vec<usize>),
    /// Optimal, but some nonbasic reduced cost is zero (non-unique optimum).
    Tie,
    Infeasible,
    Unbounded,
}

fn lex_cmp(a: &[Q], b: &[Q]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn lex_sign(a: &[Q]) -> Ordering {
    for x in a {
        if !x.is_zero() {
            return if x.is_positive() { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

struct Tableau {
    t: Vec<Vec<Q>>,   // m rows × total columns
    rhs: Vec<Vec<Q>>, // m rows × perturbation width
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x /= &p;
        }
        for x in self.rhs[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (x, y) in self.t[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in self.rhs[i].iter_mut().zip(&prhs) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Q], allowed: usize) -> Vec<Q> {
        (0..allowed)
            .map(|j| {
                let mut z = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.t[r][j].is_zero() {
                        z -= &cost[b] * &self.t[r][j];
                    }
                }
                z
            })
            .collect()
    }

    /// Runs the simplex loop over columns `< allowed`; `false` if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let entering = (0..allowed).find(|&j| !self.basis.contains(&j) && rc[j].is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Vec<Q>)> = None;
            for r in 0..self.t.len() {
                if !self.t[r][c].is_positive() {
                    continue;
                }
                let ratio: Vec<Q> = self.rhs[r].iter().map(|x| x / &self.t[r][c]).collect();
                let better = match &best {
                    None => true,
                    Some((br, bv)) => match lex_cmp(&ratio, bv) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[r] < self.basis[*br],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Solves the perturbed LP. `a` is `m × n`, `b` is `m × w` (column 0 is the
/// unperturbed right-hand side), `cost` has length `n`.
pub fn solve(a: &[Vec<BigInt>], b: &[Vec<BigInt>], cost: &[BigInt]) -> LpOutcome {
    let m = a.len();
    let n = cost.len();
    let w = b.first().map(|r| r.len()).unwrap_or(1);
    let mut t = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Q> = a[i].iter().map(|x| Q::from_integer(x.clone())).collect();
        let mut rr: Vec<Q> = b[i].iter().map(|x| Q::from_integer(x.clone())).collect();
        // make the right-hand side lexicographically nonnegative
        if lex_sign(&rr) == Ordering::Less {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            for x in rr.iter_mut() {
                *x = -x.clone();
            }
        }
        row.extend((0..m).map(|j| if j == i { Q::one() } else { Q::zero() }));
        t.push(row);
        rhs.push(rr);
    }
    let mut tab = Tableau { t, rhs, basis: (n..n + m).collect() };
    // phase 1: minimize the sum of artificial variables
    let mut c1 = vec![Q::zero(); n + m];
    for x in c1.iter_mut().skip(n) {
        *x = Q::one();
    }
    if !tab.optimize(&c1, n + m) {
        return LpOutcome::Infeasible;
    }
    let mut obj = vec![Q::zero(); w];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv >= n {
            for (o, x) in obj.iter_mut().zip(&tab.rhs[r]) {
                *o += x;
            }
        }
    }
    if lex_sign(&obj) != Ordering::Equal {
        return LpOutcome::Infeasible;
    }
    // drive remaining (zero-level) artificials out of the basis
    let mut r = 0;
    while r < tab.basis.len() {
        if tab.basis[r] >= n {
            if let Some(c) = (0..n).find(|&j| !tab.t[r][j].is_zero() && !tab.basis.contains(&j)) {
                tab.pivot(r, c);
            } else {
                // redundant constraint
                tab.t.remove(r);
                tab.rhs.remove(r);
                tab.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    let mut c2: Vec<Q> = cost.iter().map(|x| Q::from_integer(x.clone())).collect();
    c2.extend((0..m).map(|_| Q::zero()));
    if !tab.optimize(&c2, n) {
        return LpOutcome::Unbounded;
    }
    let rc = tab.reduced_costs(&c2, n);
    if (0..n).any(|j| !tab.basis.contains(&j) && rc[j].is_zero()) {
        return LpOutcome::Tie;
    }
    let mut basis = tab.basis.clone();
    basis.sort_unstable();
    LpOutcome::Optimal(basis)
}
