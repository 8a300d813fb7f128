//! Multiprojective varieties: supports, multidegrees, hypersurface formats
//! and multigraded Chow forms.
//!
//! A *format* `α ∈ ℕ^l` describes a product linear subspace
//! `L_1 × ... × L_l` with `dim L_i = α_i`. Formats are computed from the
//! table `I ↦ dim π_I(V)` of projection dimensions (indexed by bitmask).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::chow::{binomial, embed};
use crate::dimension::{equalize_blocks, multi_dim_leq, projection_dim_table, random_linear_forms, slice_blocks};
use crate::error::{precondition, usage, Result};
use crate::poly::{MPoly, VarTable};
use crate::resultant::{multi_bezout_bounds, resultant_multihomogeneous_factored, MultiResSystem};
use crate::rng::{RandomGrid, GRID_CAP};
use crate::upoly;

/// `V(f_1, ..., f_k)` in `P^{n_1} × ... × P^{n_l}`; every block of the
/// polynomials' table is a factor.
#[derive(Debug, Clone)]
pub struct MultiprojVariety {
    polys: Vec<MPoly>,
    dim: Option<usize>,
}

impl MultiprojVariety {
    pub fn new(polys: Vec<MPoly>) -> Result<Self> {
        let Some(first) = polys.first() else { return Err(usage!("a variety needs at least one polynomial")) };
        let vars = first.vars().clone();
        for f in &polys {
            if **f.vars() != *vars {
                return Err(usage!("polynomials over different variable tables"));
            }
            if !f.is_multihomogeneous() {
                return Err(usage!("polynomial `{f}` is not multihomogeneous"));
            }
        }
        Ok(MultiprojVariety { polys, dim: None })
    }
    pub fn with_dim(mut self, r: usize) -> Self {
        self.dim = Some(r);
        self
    }
    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }
    pub fn vars(&self) -> &Arc<VarTable> {
        self.polys[0].vars()
    }
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }
    /// Block dimensions `n = (n_1, ..., n_l)`.
    pub fn n(&self) -> Vec<usize> {
        block_dims(self.vars())
    }
}

fn block_dims(vars: &VarTable) -> Vec<usize> {
    vars.blocks().iter().map(|b| b.len() - 1).collect()
}

fn subset_sum(v: &[usize], mask: usize) -> usize {
    (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).sum()
}

/// Checks the table shape and returns `(l, codim)`.
fn check_table(n: &[usize], table: &[usize]) -> Result<(usize, usize)> {
    let l = n.len();
    if table.len() != 1 << l {
        return Err(usage!("a dimension table over {l} blocks needs {} entries, got {}", 1usize << l, table.len()));
    }
    let full = (1 << l) - 1;
    for mask in 1..=full {
        if table[mask] > subset_sum(n, mask) {
            return Err(usage!("dim π_I(V) = {} exceeds the ambient dimension at subset {mask:#b}", table[mask]));
        }
    }
    Ok((l, n.iter().sum::<usize>() - table[full]))
}

/// Formats `α ≤ n` with `|α| = s` (lexicographic order).
fn formats_of_size(n: &[usize], s: usize) -> BTreeSet<Vec<usize>> {
    crate::dimension::compositions(s, n).into_iter().collect()
}

/// `Σ_{i∈I} (n_i - α_i) ≤ table[I] + slack` for every nonempty `I`.
fn satisfies(n: &[usize], table: &[usize], alpha: &[usize], slack: usize) -> bool {
    (1..table.len()).all(|mask| subset_sum(n, mask) - subset_sum(alpha, mask) <= table[mask] + slack)
}

/// The support: formats `β ≤ n` with `|β| = codim V` and
/// `Σ_{i∈I} (n_i - β_i) ≤ dim π_I(V)` for every nonempty `I`.
pub fn support(n: &[usize], table: &[usize]) -> Result<BTreeSet<Vec<usize>>> {
    let (_, codim) = check_table(n, table)?;
    Ok(formats_of_size(n, codim).into_iter().filter(|b| satisfies(n, table, b, 0)).collect())
}

/// Formats `α` with `|α| = codim V - 1` for which the incidence variety of
/// format-`α` subspaces meeting `V` is a hypersurface:
/// `Σ_{i∈I} (n_i - α_i) - 1 ≤ dim π_I(V)` for every nonempty `I`.
pub fn chow_hypersurface_formats(n: &[usize], table: &[usize]) -> Result<BTreeSet<Vec<usize>>> {
    let (_, codim) = check_table(n, table)?;
    if codim == 0 {
        return Ok(BTreeSet::new());
    }
    Ok(formats_of_size(n, codim - 1).into_iter().filter(|a| satisfies(n, table, a, 1)).collect())
}

/// Formats `α` with `|α| = codim V` whose non-transversal subspaces form a
/// hypersurface: outside the support `Σ_{i∈I} (n_i - α_i) ≤ dim π_I(V) + 1`
/// for every nonempty `I`; inside it, `mdeg(V, α) ≠ 1`.
pub fn hurwitz_hypersurface_formats<F>(n: &[usize], table: &[usize], mut mdeg: F) -> Result<BTreeSet<Vec<usize>>>
where
    F: FnMut(&[usize]) -> Result<u128>,
{
    let (_, codim) = check_table(n, table)?;
    let mut out = BTreeSet::new();
    for a in formats_of_size(n, codim) {
        let keep = if satisfies(n, table, &a, 0) { mdeg(&a)? != 1 } else { satisfies(n, table, &a, 1) };
        if keep {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Projection-dimension table of `V` (Monte Carlo) followed by [`support`].
pub fn support_of(v: &MultiprojVariety, grid: &mut RandomGrid) -> Result<BTreeSet<Vec<usize>>> {
    let table = projection_dim_table(v, grid)?;
    support(&v.n(), &table)
}

/// Raises every equation to the componentwise largest multidegree.
pub fn multi_degree_equalize(v: &MultiprojVariety) -> Result<MultiprojVariety> {
    let blocks: Vec<usize> = (0..v.vars().nblocks()).collect();
    let out = MultiprojVariety::new(equalize_blocks(v.polys(), &blocks))?;
    Ok(match v.dim() {
        Some(r) => out.with_dim(r),
        None => out,
    })
}

fn check_format(n: &[usize], alpha: &[usize]) -> Result<()> {
    if alpha.len() != n.len() {
        return Err(usage!("format has {} entries but there are {} blocks", alpha.len(), n.len()));
    }
    if alpha.iter().zip(n).any(|(a, n)| a > n) {
        return Err(usage!("format {alpha:?} exceeds the block dimensions {n:?}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// multidegrees

/// `mdeg(V, α)`: the number of points of `V` on a generic subspace of format
/// `α`, counted as the degree in `m` of the square-free part of the
/// resultant of the sliced equations and a pencil `m_0 A + m_1 B`.
///
/// Two independent slices must agree; when they do not, a third decides
/// (the most frequent value, else the largest).
pub fn multidegree(v: &MultiprojVariety, alpha: &[usize], grid: &mut RandomGrid) -> Result<u128> {
    let n = v.n();
    check_format(&n, alpha)?;
    let codim: usize = alpha.iter().sum();
    if let Some(r) = v.dim() {
        if r + codim != n.iter().sum::<usize>() {
            return Err(usage!("format {alpha:?} does not have size codim V = {}", n.iter().sum::<usize>() - r));
        }
    }
    if codim == 0 {
        return Err(usage!("formats of size 0 carry no intersection count"));
    }
    if v.polys().len() < codim {
        return Err(usage!("{} equations cannot cut out a variety of codimension {codim}", v.polys().len()));
    }
    let mut counts: Vec<u128> = Vec::new();
    for _ in 0..3 {
        counts.push(count_slice_points(v, alpha, grid)?);
        if counts.len() == 2 && counts[0] == counts[1] {
            return Ok(counts[0]);
        }
    }
    let c = if counts[2] == counts[0] || counts[2] == counts[1] { counts[2] } else { *counts.iter().max().unwrap() };
    Ok(c)
}

fn count_slice_points(v: &MultiprojVariety, alpha: &[usize], grid: &mut RandomGrid) -> Result<u128> {
    let n = v.n();
    let l = n.len();
    let codim: usize = alpha.iter().sum();
    let cuts: Vec<usize> = n.iter().zip(alpha).map(|(n, a)| n - a).collect();
    let (sliced_table, sliced) = slice_blocks(v.polys(), &cuts, grid)?;
    // P^0 factors are single points with coordinate 1
    let values: Vec<Option<BigInt>> =
        (0..sliced_table.nvars()).map(|x| (alpha[sliced_table.block_of(x)] == 0).then(BigInt::one)).collect();
    let kept: Vec<usize> = (0..l).filter(|&b| alpha[b] > 0).collect();
    let (restricted, map) = sliced_table.restrict(&kept);
    let mut names: Vec<String> = restricted.names().to_vec();
    let mut blocks: Vec<Vec<usize>> = restricted.blocks().to_vec();
    let m0 = names.len();
    names.extend([String::from("m0"), String::from("m1")]);
    blocks.push(vec![m0, m0 + 1]);
    let table = VarTable::new(names, blocks)?;
    let mut polys = Vec::new();
    for f in &sliced {
        let g = f.specialize(&values).remap(&table, &map)?;
        if g.is_zero() {
            return Err(usage!("V meets subspaces of format {alpha:?} in positive dimension"));
        }
        if g.is_constant() {
            return Err(usage!("format {alpha:?} is not in the support: generic subspaces miss V"));
        }
        polys.push(g);
    }
    let elim: Vec<usize> = (0..kept.len()).collect();
    let product = |grid: &mut RandomGrid| {
        elim.iter().fold(MPoly::one(&table), |acc, &b| &acc * &random_linear_forms(&table, b, 1, grid)[0])
    };
    let (a, b) = (product(grid), product(grid));
    let pencil = &(&MPoly::var(&table, m0) * &a) + &(&MPoly::var(&table, m0 + 1) * &b);
    let m_block = kept.len();
    let systems: Vec<Vec<MPoly>> = if polys.len() == codim {
        vec![polys]
    } else {
        let eq = equalize_blocks(&polys, &elim);
        (0..2)
            .map(|_| {
                (0..codim)
                    .map(|_| eq.iter().fold(MPoly::zero(&table), |acc, g| &acc + &g.scale(&BigInt::from(grid.symmetric()))))
                    .collect()
            })
            .collect()
    };
    let mut acc: Option<MPoly> = None;
    for mut sys_polys in systems {
        sys_polys.push(pencil.clone());
        let sys = MultiResSystem::with_params(sys_polys, elim.clone(), vec![m_block])?;
        let base = resultant_multihomogeneous_factored(&sys, grid)?.base;
        if base.is_zero() {
            return Err(usage!("V meets subspaces of format {alpha:?} in positive dimension"));
        }
        acc = Some(match acc {
            None => base,
            Some(g) => g.gcd(&base)?,
        });
    }
    let res = acc.expect("at least one system").square_free_part()?;
    // the resultant lives over the parameter table, whose only block is m
    let d = res.block_degree(0) as u128;
    if d == 0 {
        return Err(usage!("format {alpha:?} is not in the support: generic subspaces miss V"));
    }
    Ok(d)
}

/// `mdeg(V, β)` for every `β` of the support.
pub fn multidegrees(v: &MultiprojVariety, table: &[usize], grid: &mut RandomGrid) -> Result<BTreeMap<Vec<usize>, u128>> {
    let mut out = BTreeMap::new();
    for b in support(&v.n(), table)? {
        let m = multidegree(v, &b, grid)?;
        out.insert(b, m);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// multigraded Chow forms

/// A multigraded Chow form over the `u`-blocks `u_{i,j}` (block `i`, form
/// `j < n_i - α_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiChowForm {
    pub poly: MPoly,
    pub format: Vec<usize>,
    /// degree in each `u`-block
    pub degrees: Vec<u32>,
    pub bitsize: u64,
}

impl MultiChowForm {
    fn new(poly: MPoly, format: Vec<usize>) -> Self {
        let degrees = (0..poly.vars().nblocks()).map(|b| poly.block_degree(b)).collect();
        let bitsize = poly.bitsize();
        MultiChowForm { poly, format, degrees, bitsize }
    }
}

/// Table `[x_1, ..., x_l, u_{1,0}, ...]` with `n_i - α_i` generic linear
/// forms in block `i`; the `u`-blocks are returned as their own table too.
fn with_multi_u_blocks(x: &Arc<VarTable>, alpha: &[usize]) -> Result<(Arc<VarTable>, Vec<MPoly>)> {
    let mut names: Vec<String> = x.names().to_vec();
    let mut blocks: Vec<Vec<usize>> = x.blocks().to_vec();
    let mut owners = Vec::new();
    for (i, xb) in x.blocks().iter().enumerate() {
        let n = xb.len() - 1;
        for j in 0..n - alpha[i] {
            let start = names.len();
            names.extend((0..=n).map(|k| format!("u{i}_{j}_{k}")));
            blocks.push((start..names.len()).collect());
            owners.push(i);
        }
    }
    let table = VarTable::new(names, blocks)?;
    let l = x.nblocks();
    let forms = owners
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let xs = table.block(i);
            let us = table.block(l + k);
            xs.iter().zip(us).fold(MPoly::zero(&table), |acc, (&xv, &uv)| &acc + &(&MPoly::var(&table, uv) * &MPoly::var(&table, xv)))
        })
        .collect();
    Ok((table, forms))
}

/// Chow form of format `α` (`|α| = codim V - 1`) of a complete intersection
/// cut out by exactly `codim V` equations.
pub fn multi_chow_form_ci(v: &MultiprojVariety, alpha: &[usize], grid: &mut RandomGrid) -> Result<MultiChowForm> {
    let n = v.n();
    check_format(&n, alpha)?;
    let codim = alpha.iter().sum::<usize>() + 1;
    if v.polys().len() != codim {
        return Err(usage!("format {alpha:?} needs a complete intersection of {codim} equations"));
    }
    let l = n.len();
    let (table, forms) = with_multi_u_blocks(v.vars(), alpha)?;
    let mut polys = embed(v.polys(), &table)?;
    polys.extend(forms);
    let params: Vec<usize> = (l..table.nblocks()).collect();
    let sys = MultiResSystem::with_params(polys, (0..l).collect(), params)?;
    let base = resultant_multihomogeneous_factored(&sys, grid)?.base;
    if base.is_zero() {
        return Err(precondition!("the equations do not cut out a variety of codimension {codim}"));
    }
    if base.is_constant() {
        return Err(usage!("format {alpha:?} does not give a Chow hypersurface"));
    }
    Ok(MultiChowForm::new(base.square_free_part()?.normalize(), alpha.to_vec()))
}

/// Grid size `N (|n|-r) |d|^{|n|-r} + m + 1` for the random combinations,
/// capped at [`GRID_CAP`].
pub fn multi_lambda_grid_bound(n_total: usize, r: usize, d: u32, m: usize) -> u64 {
    let c = (n_total - r) as u64;
    let big_n = (m as u64).div_ceil(c);
    let pow = (d as u64).checked_pow(c as u32).unwrap_or(u64::MAX);
    big_n.saturating_mul(c).saturating_mul(pow).saturating_add(m as u64 + 1).min(GRID_CAP)
}

/// `N = ⌈m/(|n|-r)⌉` random combination matrices whose complete
/// intersections have dimension `≤ r` and which stack to rank `m`. The
/// equations must share one multidegree.
pub fn multi_generic_lc(v: &MultiprojVariety, r: usize, grid: &mut RandomGrid) -> Result<Vec<crate::chow::LambdaMatrix>> {
    let n_total: usize = v.n().iter().sum();
    let m = v.polys().len();
    if r >= n_total {
        return Err(usage!("dimension {r} is not below the ambient dimension {n_total}"));
    }
    let mdeg = v.polys()[0].mdeg();
    if v.polys().iter().any(|f| f.mdeg() != mdeg) {
        return Err(usage!("generic combinations need equations of equal multidegree (use multi_degree_equalize)"));
    }
    let d = v.polys()[0].total_degree();
    let c = n_total - r;
    let big_n = m.div_ceil(c);
    let mut sampler = grid.with_bound(multi_lambda_grid_bound(n_total, r, d, m));
    let budget = 4 * grid.retries();
    for _ in 0..budget {
        let mut out = Vec::with_capacity(big_n);
        for _ in 0..big_n {
            let mut found = None;
            for _ in 0..budget {
                let rows: Vec<Vec<BigInt>> =
                    (0..c).map(|_| (0..m).map(|_| BigInt::from(sampler.grid())).collect()).collect();
                let lam = crate::chow::LambdaMatrix { rows, seed: grid.seed() };
                let combos = lam.apply(v.polys());
                if combos.iter().any(|f| f.is_zero()) {
                    continue;
                }
                if multi_dim_leq(&MultiprojVariety::new(combos)?, r, grid)? {
                    found = Some(lam);
                    break;
                }
            }
            out.push(found.ok_or_else(|| precondition!("no combination of dimension {r} found; is dim V = {r}?"))?);
        }
        let xi: Vec<Vec<BigInt>> = out.iter().flat_map(|l| l.rows.iter().cloned()).collect();
        if upoly::rank(xi) == m {
            return Ok(out);
        }
    }
    Err(precondition!("could not find full-rank combinations within the retry budget"))
}

/// Chow form of format `α` of a variety of dimension `r`.
pub fn multi_chow_form(v: &MultiprojVariety, r: usize, alpha: &[usize], grid: &mut RandomGrid) -> Result<MultiChowForm> {
    let n = v.n();
    check_format(&n, alpha)?;
    let n_total: usize = n.iter().sum();
    if r >= n_total {
        return Err(usage!("dimension {r} is not below the ambient dimension {n_total}"));
    }
    let codim = n_total - r;
    if alpha.iter().sum::<usize>() + 1 != codim {
        return Err(usage!("format {alpha:?} must have size codim V - 1 = {}", codim - 1));
    }
    let k = v.polys().len();
    if k == codim {
        return multi_chow_form_ci(v, alpha, grid);
    }
    if k < codim {
        return Err(precondition!("{k} equations cannot cut out a variety of codimension {codim}"));
    }
    let eq = multi_degree_equalize(v)?;
    let lambdas = multi_generic_lc(&eq, r, grid)?;
    let mut acc: Option<MPoly> = None;
    for lam in &lambdas {
        let w = MultiprojVariety::new(lam.apply(eq.polys()))?;
        let f = multi_chow_form_ci(&w, alpha, grid)?.poly;
        acc = Some(match acc {
            None => f,
            Some(g) => g.gcd(&f)?,
        });
    }
    let poly = acc.ok_or_else(|| usage!("no equations"))?.normalize();
    if poly.is_constant() {
        return Err(precondition!("the Chow forms of the combinations share no factor"));
    }
    Ok(MultiChowForm::new(poly, alpha.to_vec()))
}

/// Size and degree bounds for a multigraded Chow form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiBounds {
    /// total degree bound `B_r = d^{|n|-r} Σ_i C(|n|-r; α_1, ..., α_i + 1, ..., α_l)`
    pub total_degree: u128,
    /// number of `u`-variables `A = Σ (n_i - α_i)(n_i + 1)`
    pub u_vars: usize,
    /// multihomogeneous Bézout degree of each `u`-block
    pub block_degrees: Vec<u128>,
}

fn multinomial(parts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &p in parts {
        total += p as u128;
        acc = acc.saturating_mul(binomial(total, p as u128));
    }
    acc
}

/// Bounds for format `α` of a variety with block dimensions `n`, dimension
/// `r` and equations of multidegrees `degrees`; `d` is the largest total
/// degree.
pub fn multi_bounds(n: &[usize], degrees: &[Vec<u32>], r: usize, alpha: &[usize]) -> Result<MultiBounds> {
    check_format(n, alpha)?;
    let n_total: usize = n.iter().sum();
    let codim = n_total.checked_sub(r).ok_or_else(|| usage!("dimension {r} exceeds the ambient dimension"))?;
    if alpha.iter().sum::<usize>() + 1 != codim {
        return Err(usage!("format {alpha:?} must have size codim V - 1 = {}", codim.saturating_sub(1)));
    }
    let d = degrees.iter().map(|m| m.iter().sum::<u32>()).max().unwrap_or(1) as u128;
    let sum: u128 = (0..alpha.len())
        .map(|i| {
            let mut parts = alpha.to_vec();
            parts[i] += 1;
            multinomial(&parts)
        })
        .sum();
    let total_degree = d.saturating_pow(codim as u32).saturating_mul(sum);
    let u_vars = n.iter().zip(alpha).map(|(n, a)| (n - a) * (n + 1)).sum();
    // the eliminated system: equations followed by one linear form per u-block
    let mut sys_degrees: Vec<Vec<u32>> = degrees.to_vec();
    for (i, (&ni, &ai)) in n.iter().zip(alpha).enumerate() {
        for _ in 0..ni - ai {
            let mut e = vec![0u32; n.len()];
            e[i] = 1;
            sys_degrees.push(e);
        }
    }
    let all = multi_bezout_bounds(&sys_degrees, n);
    let block_degrees = all[degrees.len()..].to_vec();
    Ok(MultiBounds { total_degree, u_vars, block_degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn bilinear() -> MultiprojVariety {
        let t = VarTable::from_blocks(&[vec!["x0", "x1"], vec!["y0", "y1"]]).unwrap();
        let v = |i| MPoly::var(&t, i);
        MultiprojVariety::new(vec![&(&v(0) * &v(2)) + &(&v(1) * &v(3))]).unwrap()
    }

    #[test]
    fn figure_one_formats() {
        let n = [3, 3];
        let table = [0, 1, 1, 2];
        let s: Vec<_> = support(&n, &table).unwrap().into_iter().collect();
        assert_eq!(s, vec![vec![2, 2]]);
        let c: Vec<_> = chow_hypersurface_formats(&n, &table).unwrap().into_iter().collect();
        assert_eq!(c, vec![vec![1, 2], vec![2, 1]]);
        let h: Vec<_> = hurwitz_hypersurface_formats(&n, &table, |_| Ok(4)).unwrap().into_iter().collect();
        assert_eq!(h, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn bilinear_support_and_degrees() {
        let v = bilinear();
        let s: Vec<_> = support(&v.n(), &[0, 1, 1, 1]).unwrap().into_iter().collect();
        assert_eq!(s, vec![vec![0, 1], vec![1, 0]]);
        let mut g = RandomGrid::new(5, 100, 3);
        assert_eq!(multidegree(&v, &[1, 0], &mut g).unwrap(), 1);
        assert_eq!(multidegree(&v, &[0, 1], &mut g).unwrap(), 1);
        // both blocks kept: |α| = 2 ≠ codim
        assert!(multidegree(&v.clone().with_dim(1), &[1, 1], &mut g).is_err());
    }

    #[test]
    fn bilinear_chow_form_is_the_equation_in_u() {
        let mut g = RandomGrid::new(1, 100, 3);
        let cf = multi_chow_form_ci(&bilinear(), &[0, 0], &mut g).unwrap();
        assert_eq!(cf.poly.to_string(), "u0_0_0*u1_0_0 + u0_0_1*u1_0_1");
        assert_eq!(cf.degrees, vec![1, 1]);
    }

    #[test]
    fn bounds_collapse_to_the_projective_case() {
        // conic in P^2, r = 1: d^{n-r} Σ C(1; 0+1) = 2
        let b = multi_bounds(&[2], &[vec![2]], 1, &[0]).unwrap();
        assert_eq!(b.total_degree, 2);
        assert_eq!(b.u_vars, 6);
        assert_eq!(b.block_degrees, vec![2, 2]);
    }

    #[test]
    fn equalize_multiplies_by_the_missing_block() {
        let t = VarTable::from_blocks(&[vec!["x0", "x1"], vec!["y0", "y1"]]).unwrap();
        let v = |i| MPoly::var(&t, i);
        let w = MultiprojVariety::new(vec![&v(0) * &v(2), v(1)]).unwrap();
        let e = multi_degree_equalize(&w).unwrap();
        let s: Vec<String> = e.polys().iter().map(|f| f.to_string()).collect();
        assert_eq!(s, vec!["x0*y0", "x1*y0", "x1*y1"]);
    }
}
