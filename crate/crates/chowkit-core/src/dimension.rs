//! Monte Carlo geometric predicates built on resultants: emptiness of
//! (multi)projective zero sets, dimension bounds, and dimensions of
//! coordinate-block projections.
//!
//! Emptiness is one-sided: a nonzero resultant of random combinations is a
//! certificate that the zero set is empty, while a vanishing resultant is
//! accepted as evidence of a zero only after every trial of the retry budget
//! agrees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{usage, Result};
use crate::multiproj::MultiprojVariety;
use crate::poly::{MPoly, VarTable};
use crate::resultant::{resultant_multihomogeneous_factored, MultiResSystem};
use crate::rng::RandomGrid;

/// `V(f_1, ..., f_m)` in `P^n`; the polynomials live over a one-block table.
#[derive(Debug, Clone)]
pub struct ProjectiveVariety {
    polys: Vec<MPoly>,
    dim: Option<usize>,
}

impl ProjectiveVariety {
    pub fn new(polys: Vec<MPoly>) -> Result<Self> {
        let Some(first) = polys.first() else { return Err(usage!("a variety needs at least one polynomial")) };
        let vars = first.vars().clone();
        if vars.nblocks() != 1 {
            return Err(usage!("projective varieties live over a single block of variables"));
        }
        for f in &polys {
            if **f.vars() != *vars {
                return Err(usage!("polynomials over different variable tables"));
            }
            if !f.is_homogeneous_in_block(0) {
                return Err(usage!("polynomial `{f}` is not homogeneous"));
            }
        }
        Ok(ProjectiveVariety { polys, dim: None })
    }

    /// Records a known dimension.
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
    /// Ambient dimension `n`.
    pub fn ambient(&self) -> usize {
        self.vars().nvars() - 1
    }
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }
    pub fn codim(&self) -> Option<usize> {
        self.dim.map(|r| self.ambient() - r)
    }
    /// Largest degree of a defining polynomial.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(|f| f.total_degree()).max().unwrap_or(0)
    }
}

/// Raises every polynomial to the componentwise largest multidegree over
/// `blocks` by multiplying with `x_{b,j}^{D_b - deg_b f}` for every choice of
/// one variable per deficient block. The common zero set is unchanged.
pub fn equalize_blocks(polys: &[MPoly], blocks: &[usize]) -> Vec<MPoly> {
    let target: Vec<u32> = blocks.iter().map(|&b| polys.iter().map(|f| f.block_degree(b)).max().unwrap_or(0)).collect();
    let mut out = Vec::new();
    for f in polys {
        if f.is_zero() {
            continue;
        }
        let mut acc = vec![f.clone()];
        for (k, &b) in blocks.iter().enumerate() {
            let gap = target[k] - f.block_degree(b);
            if gap == 0 {
                continue;
            }
            let vars = f.vars().block(b).to_vec();
            let mut next = Vec::with_capacity(acc.len() * vars.len());
            for g in &acc {
                for &v in &vars {
                    let mut e = vec![0u32; f.nvars()];
                    e[v] = gap;
                    next.push(g.mul_monomial(&e));
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

/// Connected groups of (blocks, polynomials) under "polynomial involves
/// block"; polynomials involving no block are returned separately.
fn components(polys: &[MPoly], blocks: &[usize]) -> (Vec<(Vec<usize>, Vec<usize>)>, Vec<usize>) {
    let nb = blocks.len();
    let mut parent: Vec<usize> = (0..nb).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let used: Vec<Vec<usize>> =
        polys.iter().map(|f| (0..nb).filter(|&i| f.block_degree(blocks[i]) > 0).collect()).collect();
    for u in &used {
        for w in u.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut comps: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut constants = Vec::new();
    for (k, u) in used.iter().enumerate() {
        match u.first() {
            Some(&i) => {
                let r = find(&mut parent, i);
                comps.entry(r).or_default().1.push(k);
            }
            None => constants.push(k),
        }
    }
    for i in 0..nb {
        let r = find(&mut parent, i);
        if let Some(c) = comps.get_mut(&r) {
            c.0.push(blocks[i]);
        }
    }
    (comps.into_values().collect(), constants)
}

/// Whether the polynomials (multihomogeneous in every block of their table)
/// have a common zero in the product of projective spaces.
pub fn system_has_zero(polys: &[MPoly], grid: &mut RandomGrid) -> Result<bool> {
    let Some(first) = polys.first() else { return Ok(true) };
    let vars = first.vars().clone();
    for f in polys {
        if !f.is_multihomogeneous() {
            return Err(usage!("polynomial `{f}` is not multihomogeneous"));
        }
    }
    // P^0 factors: their single point has coordinate 1
    let values: Vec<Option<BigInt>> =
        (0..vars.nvars()).map(|v| (vars.block(vars.block_of(v)).len() == 1).then(BigInt::one)).collect();
    let polys: Vec<MPoly> = polys.iter().map(|f| f.specialize(&values)).filter(|f| !f.is_zero()).collect();
    let blocks: Vec<usize> = (0..vars.nblocks()).filter(|&b| vars.block(b).len() > 1).collect();
    let (comps, constants) = components(&polys, &blocks);
    if !constants.is_empty() {
        return Ok(false);
    }
    for (cblocks, cpolys) in comps {
        let dim: usize = cblocks.iter().map(|&b| vars.block(b).len() - 1).sum();
        let k = cpolys.len();
        if k == 1 || (cblocks.len() == 1 && k <= dim) {
            continue;
        }
        let members: Vec<MPoly> = cpolys.iter().map(|&i| polys[i].clone()).collect();
        if !component_has_zero(&members, &cblocks, dim, grid)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn component_has_zero(polys: &[MPoly], blocks: &[usize], dim: usize, grid: &mut RandomGrid) -> Result<bool> {
    let eq = equalize_blocks(polys, blocks);
    for _ in 0..grid.retries() {
        let combos: Vec<MPoly> = (0..=dim)
            .map(|_| eq.iter().fold(MPoly::zero(eq[0].vars()), |acc, g| &acc + &g.scale(&BigInt::from(grid.symmetric()))))
            .collect();
        if combos.iter().any(|c| c.is_zero()) {
            continue;
        }
        let sys = MultiResSystem::with_params(combos, blocks.to_vec(), Vec::new())?;
        let r = resultant_multihomogeneous_factored(&sys, grid)?;
        if !r.base.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One-sided Monte Carlo test for a common projective zero.
pub fn has_projective_zero(v: &ProjectiveVariety, grid: &mut RandomGrid) -> Result<bool> {
    system_has_zero(&v.polys, grid)
}

/// `count` random integer linear forms in the variables of `block`.
pub fn random_linear_forms(vars: &Arc<VarTable>, block: usize, count: usize, grid: &mut RandomGrid) -> Vec<MPoly> {
    (0..count)
        .map(|_| {
            vars.block(block)
                .iter()
                .fold(MPoly::zero(vars), |acc, &x| &acc + &MPoly::var(vars, x).scale(&BigInt::from(grid.symmetric())))
        })
        .collect()
}

/// `dim V ≤ r`: a generic linear subspace of codimension `r+1` misses `V`.
pub fn dim_leq(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<bool> {
    if r >= v.ambient() {
        return Ok(true);
    }
    let mut polys = v.polys.clone();
    polys.extend(random_linear_forms(v.vars(), 0, r + 1, grid));
    Ok(!system_has_zero(&polys, grid)?)
}

/// Dimension of `V`, or `None` when `V` is empty.
pub fn projective_dimension(v: &ProjectiveVariety, grid: &mut RandomGrid) -> Result<Option<usize>> {
    if !has_projective_zero(v, grid)? {
        return Ok(None);
    }
    for r in 0..v.ambient() {
        if dim_leq(v, r, grid)? {
            return Ok(Some(r));
        }
    }
    Ok(Some(v.ambient()))
}

// ---------------------------------------------------------------------------
// multiprojective slicing

/// Restricts the polynomials to a random product-linear subspace: block `i`
/// is cut by `cuts[i]` generic hyperplanes, realised as the image of a random
/// integer matrix `x_i = B_i t_i` with `t_i` in `P^{n_i - cuts[i]}`.
pub fn slice_blocks(polys: &[MPoly], cuts: &[usize], grid: &mut RandomGrid) -> Result<(Arc<VarTable>, Vec<MPoly>)> {
    let vars = polys.first().ok_or_else(|| usage!("nothing to slice"))?.vars().clone();
    if cuts.len() != vars.nblocks() {
        return Err(usage!("need one cut count per block"));
    }
    let mut names: Vec<String> = Vec::new();
    let mut blocks = Vec::new();
    for (b, &c) in cuts.iter().enumerate() {
        let n = vars.block(b).len() - 1;
        if c > n {
            return Err(usage!("cannot cut P^{n} by {c} hyperplanes"));
        }
        let start = names.len();
        for k in 0..=(n - c) {
            names.push(format!("t{b}_{k}"));
        }
        blocks.push((start..names.len()).collect());
    }
    let table = VarTable::new(names, blocks)?;
    let mut images = vec![MPoly::zero(&table); vars.nvars()];
    for (b, &c) in cuts.iter().enumerate() {
        let tb = table.block(b).to_vec();
        for &x in vars.block(b) {
            images[x] = if c == 0 {
                // uncut blocks keep their coordinates
                let k = vars.block(b).iter().position(|&y| y == x).unwrap();
                MPoly::var(&table, tb[k])
            } else {
                tb.iter().fold(MPoly::zero(&table), |acc, &t| &acc + &MPoly::var(&table, t).scale(&BigInt::from(grid.symmetric())))
            };
        }
    }
    let out = polys.iter().map(|f| f.compose(&table, &images)).collect();
    Ok((table, out))
}

/// Compositions `c` of `s` with `c_i ≤ caps[i]` (lexicographically
/// decreasing).
pub fn compositions(s: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(s: usize, caps: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == caps.len() {
            if s == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let rest: usize = caps[prefix.len() + 1..].iter().sum();
        let hi = caps[prefix.len()].min(s);
        for c in (0..=hi).rev() {
            if s - c > rest {
                break;
            }
            prefix.push(c);
            rec(s - c, caps, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, caps, &mut Vec::new(), &mut out);
    out
}

/// Whether `V` meets a generic product-linear subspace cut by `cuts[i]`
/// hyperplanes in block `i`.
pub fn meets_generic_slice(polys: &[MPoly], cuts: &[usize], grid: &mut RandomGrid) -> Result<bool> {
    let (_, sliced) = slice_blocks(polys, cuts, grid)?;
    system_has_zero(&sliced, grid)
}

/// Dimension of the projection of `V` onto the blocks in `subset`
/// (projective dimension; `None` when `V` is empty).
///
/// `dim π_I(V) ≥ s` iff for some split `c` of `s` over the blocks of `I`,
/// `V` meets the pull-back of a generic subspace cut by `c_i` hyperplanes in
/// block `i`.
pub fn dim_projection(v: &MultiprojVariety, subset: &[usize], grid: &mut RandomGrid) -> Result<Option<usize>> {
    let vars = v.vars();
    let l = vars.nblocks();
    if subset.is_empty() || subset.iter().any(|&i| i >= l) {
        return Err(usage!("projection needs a nonempty set of block indices"));
    }
    if !system_has_zero(v.polys(), grid)? {
        return Ok(None);
    }
    let caps: Vec<usize> = (0..l).map(|b| if subset.contains(&b) { vars.block(b).len() - 1 } else { 0 }).collect();
    let top: usize = caps.iter().sum();
    let mut dim = 0;
    for s in 1..=top {
        let mut hit = false;
        for c in compositions(s, &caps) {
            if meets_generic_slice(v.polys(), &c, grid)? {
                hit = true;
                break;
            }
        }
        if !hit {
            break;
        }
        dim = s;
    }
    Ok(Some(dim))
}

/// `dim π_I(V)` for every nonempty `I`, indexed by bitmask (entry 0 is 0).
pub fn projection_dim_table(v: &MultiprojVariety, grid: &mut RandomGrid) -> Result<Vec<usize>> {
    let l = v.vars().nblocks();
    let mut table = vec![0usize; 1 << l];
    for mask in 1..(1usize << l) {
        let subset: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
        table[mask] = dim_projection(v, &subset, grid)?.ok_or_else(|| usage!("the variety is empty"))?;
    }
    Ok(table)
}

/// `dim V ≤ r` for a multiprojective variety: every split of `r+1` generic
/// hyperplanes over the blocks misses `V`.
pub fn multi_dim_leq(v: &MultiprojVariety, r: usize, grid: &mut RandomGrid) -> Result<bool> {
    let caps: Vec<usize> = v.vars().blocks().iter().map(|b| b.len() - 1).collect();
    if r >= caps.iter().sum() {
        return Ok(true);
    }
    for c in compositions(r + 1, &caps) {
        if meets_generic_slice(v.polys(), &c, grid)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Arc<VarTable> {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        VarTable::single_block(&names)
    }

    #[test]
    fn unit_ideal_and_coordinate_points() {
        let v = p(2);
        let x: Vec<MPoly> = (0..3).map(|i| MPoly::var(&v, i)).collect();
        let mut g = RandomGrid::new(1, 50, 3);
        let unit = ProjectiveVariety::new(x.clone()).unwrap();
        assert!(!has_projective_zero(&unit, &mut g).unwrap());
        let pts = ProjectiveVariety::new(vec![&x[0] * &x[1], &x[0] * &x[2], &x[1] * &x[2]]).unwrap();
        assert!(has_projective_zero(&pts, &mut g).unwrap());
    }

    #[test]
    fn hyperplane_and_point_dimensions() {
        let v = p(2);
        let x: Vec<MPoly> = (0..3).map(|i| MPoly::var(&v, i)).collect();
        let mut g = RandomGrid::new(2, 50, 3);
        let h = ProjectiveVariety::new(vec![x[0].clone()]).unwrap();
        assert!(dim_leq(&h, 1, &mut g).unwrap());
        assert!(!dim_leq(&h, 0, &mut g).unwrap());
        let pt = ProjectiveVariety::new(vec![x[0].clone(), x[1].clone()]).unwrap();
        assert!(dim_leq(&pt, 0, &mut g).unwrap());
        assert_eq!(projective_dimension(&pt, &mut g).unwrap(), Some(0));
    }

    #[test]
    fn compositions_respect_caps() {
        assert_eq!(compositions(2, &[1, 2]), vec![vec![1, 1], vec![0, 2]]);
        assert!(compositions(4, &[1, 2]).is_empty());
    }
}
