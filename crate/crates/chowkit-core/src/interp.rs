//! Sparse-free dense interpolation over parameter blocks.
//!
//! A polynomial is recovered from black-box integer evaluations when a
//! total-degree cap is known for each group of variables. Groups flagged as
//! homogeneous are dehomogenized (first variable set to 1) and rehomogenized
//! afterwards. Within a group the nodes form a simplex grid
//! `{o_v + k_v : Σ k_v ≤ D}` with random offsets `o_v`, and the recursion is
//! Newton's: along each variable the coefficients of the falling-factorial
//! basis `(x-o)(x-o-1)...(x-o-j+1)` are the finite differences `Δ^j / j!`,
//! which are exact integers for integer polynomials.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{indeterminate, internal, usage, Result};
use crate::poly::{MPoly, VarTable};
use crate::rng::RandomGrid;

/// A set of variables with a total-degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpGroup {
    pub vars: Vec<usize>,
    pub degree: u32,
    /// The target is homogeneous of exactly `degree` in these variables.
    pub homogeneous: bool,
}

/// Outcome of one black-box evaluation.
pub enum Sample {
    Value(BigInt),
    /// The point is degenerate for the evaluation scheme; choose others.
    Degenerate,
}

/// Number of evaluation points the interpolation will request.
pub fn point_count(groups: &[InterpGroup]) -> u128 {
    groups
        .iter()
        .map(|g| {
            let k = if g.homogeneous { g.vars.len().saturating_sub(1) } else { g.vars.len() };
            binom(g.degree as u128 + k as u128, k as u128)
        })
        .product()
}

fn binom(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

struct Ctx<'a, F> {
    nvars: usize,
    free: Vec<(usize, usize)>,
    offsets: Vec<i64>,
    fixed_one: Vec<usize>,
    eval: &'a mut F,
    cache: BTreeMap<Vec<u32>, BigInt>,
}

enum Fail {
    Degenerate,
    Err(crate::Error),
}

impl<F: FnMut(&[BigInt]) -> Result<Sample>> Ctx<'_, F> {
    fn value(&mut self, idx: &[u32]) -> core::result::Result<BigInt, Fail> {
        if let Some(v) = self.cache.get(idx) {
            return Ok(v.clone());
        }
        let mut point = vec![BigInt::zero(); self.nvars];
        for &v in &self.fixed_one {
            point[v] = BigInt::one();
        }
        for (k, &(v, _)) in self.free.iter().enumerate() {
            point[v] = BigInt::from(self.offsets[k] + idx[k] as i64);
        }
        match (self.eval)(&point) {
            Ok(Sample::Value(x)) => {
                self.cache.insert(idx.to_vec(), x.clone());
                Ok(x)
            }
            Ok(Sample::Degenerate) => Err(Fail::Degenerate),
            Err(e) => Err(Fail::Err(e)),
        }
    }

    /// Interpolates `Σ_t c_t F(prefix_t, ·) / denom` over the free variables
    /// from `depth` on; `combo` holds the prefixes (grid indices) with
    /// integer weights.
    fn interp(
        &mut self,
        vars: &Arc<VarTable>,
        depth: usize,
        combo: &[(Vec<u32>, BigInt)],
        denom: &BigInt,
        budgets: &mut [u32],
    ) -> core::result::Result<MPoly, Fail> {
        if depth == self.free.len() {
            let mut acc = BigInt::zero();
            for (idx, c) in combo {
                acc += c * self.value(idx)?;
            }
            let (q, r) = acc.div_rem(denom);
            if !r.is_zero() {
                return Err(Fail::Err(internal!("inexact finite difference: degree caps too small")));
            }
            return Ok(MPoly::constant(vars, q));
        }
        let (v, g) = self.free[depth];
        let d = budgets[g];
        let mut result = MPoly::zero(vars);
        // basis polynomial (x - o)(x - o - 1)...(x - o - j + 1)
        let x = MPoly::var(vars, v);
        let mut basis = MPoly::one(vars);
        let mut fact = BigInt::one();
        for j in 0..=d {
            if j > 0 {
                fact *= BigInt::from(j);
            }
            // Δ^j along this variable: Σ_a (-1)^{j-a} C(j,a) F(a, ·)
            let mut next: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(combo.len() * (j as usize + 1));
            let mut binom = BigInt::one();
            for a in 0..=j {
                if a > 0 {
                    binom = binom * BigInt::from(j - a + 1) / BigInt::from(a);
                }
                let w = if (j - a) % 2 == 0 { binom.clone() } else { -binom.clone() };
                for (idx, c) in combo {
                    let mut i2 = idx.clone();
                    i2.push(a);
                    next.push((i2, c * &w));
                }
            }
            budgets[g] = d - j;
            let gj = self.interp(vars, depth + 1, &next, &(denom * &fact), budgets);
            budgets[g] = d;
            let gj = gj?;
            if !gj.is_zero() {
                result = &result + &(&basis * &gj);
            }
            let shift = MPoly::constant(vars, BigInt::from(self.offsets[depth] + j as i64));
            basis = &basis * &(&x - &shift);
        }
        Ok(result)
    }
}

/// Recovers the polynomial over `vars` whose values are reported by `eval`.
///
/// Every variable must belong to exactly one group. Degenerate samples
/// trigger a restart with fresh offsets (bounded by `grid.retries()`
/// restarts beyond the first). The result is checked at `verify` fresh
/// random points.
pub fn interpolate<F>(
    vars: &Arc<VarTable>,
    groups: &[InterpGroup],
    grid: &mut RandomGrid,
    verify: usize,
    mut eval: F,
) -> Result<MPoly>
where
    F: FnMut(&[BigInt]) -> Result<Sample>,
{
    let n = vars.nvars();
    let mut seen = vec![false; n];
    for g in groups {
        for &v in &g.vars {
            if v >= n || seen[v] {
                return Err(usage!("interpolation groups do not partition the variables"));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(usage!("interpolation groups do not cover the variables"));
    }
    let mut free = Vec::new();
    let mut fixed_one = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let mut vs = g.vars.iter();
        if g.homogeneous {
            if let Some(&v0) = vs.next() {
                fixed_one.push(v0);
            }
        }
        for &v in vs {
            free.push((v, gi));
        }
    }
    let attempts = grid.retries() + 3;
    for _ in 0..attempts {
        let offsets: Vec<i64> = free.iter().map(|_| grid.range(1, 96)).collect();
        let mut ctx = Ctx { nvars: n, free: free.clone(), offsets, fixed_one: fixed_one.clone(), eval: &mut eval, cache: BTreeMap::new() };
        let mut budgets: Vec<u32> = groups.iter().map(|g| g.degree).collect();
        let affine = match ctx.interp(vars, 0, &[(Vec::new(), BigInt::one())], &BigInt::one(), &mut budgets) {
            Ok(p) => p,
            Err(Fail::Degenerate) => continue,
            Err(Fail::Err(e)) => return Err(e),
        };
        let result = homogenize(&affine, groups);
        // verification at fresh points (all coordinates random, nonzero)
        let mut checked = 0;
        let mut tries = 0;
        while checked < verify {
            tries += 1;
            if tries > 8 * (verify + 1) {
                return Err(indeterminate!("could not find non-degenerate verification points"));
            }
            let point: Vec<BigInt> = (0..n).map(|_| BigInt::from(grid.range(2, 200))).collect();
            match eval(&point)? {
                Sample::Value(x) => {
                    if result.eval(&point) != x {
                        return Err(internal!("interpolated polynomial failed verification"));
                    }
                    checked += 1;
                }
                Sample::Degenerate => continue,
            }
        }
        return Ok(result);
    }
    Err(indeterminate!("evaluation points kept hitting degenerate specializations"))
}

fn homogenize(p: &MPoly, groups: &[InterpGroup]) -> MPoly {
    if !groups.iter().any(|g| g.homogeneous && !g.vars.is_empty()) {
        return p.clone();
    }
    let mut out = MPoly::zero(p.vars());
    for (e, c) in p.terms() {
        let mut f = e.to_vec();
        for g in groups.iter().filter(|g| g.homogeneous && !g.vars.is_empty()) {
            let s: u32 = g.vars[1..].iter().map(|&v| e[v]).sum();
            f[g.vars[0]] = g.degree - s;
        }
        out.add_term(&f, c.clone());
    }
    out
}
