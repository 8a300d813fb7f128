//! Chow forms of projective varieties.
//!
//! For a complete intersection `V = V(f_1, ..., f_{n-r})` of dimension `r`,
//! the Chow form is the square-free part of the resultant eliminating `x`
//! from `f_1, ..., f_{n-r}, U_0, ..., U_r` with `U_i = Σ_j u_ij x_j`; the
//! GCP perturbs only the `f_i`, so excess components cannot annihilate it.
//! Varieties cut out by more equations are written as intersections of
//! complete intersections `V(Λ^i f)` for random integer matrices `Λ^i`, and
//! the Chow form is the gcd of theirs.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::dimension::{dim_leq, equalize_blocks, ProjectiveVariety};
use crate::error::{precondition, usage, Result};
use crate::poly::{MPoly, VarTable};
use crate::resultant::{bezout_bounds, gcp_resultant, MacaulaySystem};
use crate::rng::{RandomGrid, GRID_CAP};
use crate::upoly;

/// How a Chow form was assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    CompleteIntersection,
    /// gcd of the Chow forms of this many complete intersections
    GcdOf(usize),
}

/// A Chow form over the `u`-blocks `u_0, ..., u_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowForm {
    pub poly: MPoly,
    /// degree in each `u`-block
    pub degrees: Vec<u32>,
    pub bitsize: u64,
    pub provenance: Provenance,
}

impl ChowForm {
    fn new(poly: MPoly, provenance: Provenance) -> Self {
        let degrees = (0..poly.vars().nblocks()).map(|b| poly.block_degree(b)).collect();
        let bitsize = poly.bitsize();
        ChowForm { poly, degrees, bitsize, provenance }
    }
}

/// An integer matrix combining the defining equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    pub rows: Vec<Vec<BigInt>>,
    pub seed: u64,
}

impl LambdaMatrix {
    /// The combined polynomials `Λ f`.
    pub fn apply(&self, polys: &[MPoly]) -> Vec<MPoly> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(polys).fold(MPoly::zero(polys[0].vars()), |acc, (c, f)| &acc + &f.scale(c)))
            .collect()
    }
}

/// Names `u{i}{j}` of the `i`-th `u`-block (with a separator when indices
/// need more than one digit).
pub fn u_block_names(prefix: &str, i: usize, n: usize) -> Vec<String> {
    (0..=n)
        .map(|j| if n < 10 && i < 10 { format!("{prefix}{i}{j}") } else { format!("{prefix}{i}_{j}") })
        .collect()
}

/// Table `[x, u_{first}, ..., u_{first+count-1}]` over the variables of `x`
/// (a single-block table), with the generic linear forms `U_i`.
pub(crate) fn with_u_blocks(x: &Arc<VarTable>, first: usize, count: usize) -> Result<(Arc<VarTable>, Vec<MPoly>)> {
    let n = x.nvars() - 1;
    let mut names: Vec<String> = x.names().to_vec();
    let mut blocks = vec![(0..=n).collect::<Vec<_>>()];
    for i in first..first + count {
        let start = names.len();
        names.extend(u_block_names("u", i, n));
        blocks.push((start..names.len()).collect());
    }
    let table = VarTable::new(names, blocks)?;
    let forms = (0..count)
        .map(|k| {
            (0..=n).fold(MPoly::zero(&table), |acc, j| &acc + &(&MPoly::var(&table, (k + 1) * (n + 1) + j) * &MPoly::var(&table, j)))
        })
        .collect();
    Ok((table, forms))
}

/// Embeds polynomials over the `x` table into a table whose first block is
/// `x`.
pub(crate) fn embed(polys: &[MPoly], table: &Arc<VarTable>) -> Result<Vec<MPoly>> {
    let map: Vec<Option<usize>> = (0..polys[0].nvars()).map(Some).collect();
    polys.iter().map(|f| f.remap(table, &map)).collect()
}

/// Raises all equations to the largest degree `d` by replacing `f` with
/// `x_j^{d - deg f} f` for every `j`.
pub fn degree_equalize(v: &ProjectiveVariety) -> Result<ProjectiveVariety> {
    let eq = equalize_blocks(v.polys(), &[0]);
    let out = ProjectiveVariety::new(eq)?;
    Ok(match v.dim() {
        Some(r) => out.with_dim(r),
        None => out,
    })
}

/// Chow form of a complete intersection of dimension `r` cut out by exactly
/// `n - r` equations.
pub fn chow_form_ci(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<ChowForm> {
    let n = v.ambient();
    if r >= n {
        return Err(usage!("dimension {r} is not below the ambient dimension {n}"));
    }
    if v.polys().len() != n - r {
        return Err(usage!("a complete intersection of dimension {r} in P^{n} needs {} equations", n - r));
    }
    if v.polys().iter().any(|f| f.total_degree() == 0) {
        return Err(usage!("equations must have positive degree"));
    }
    let (table, forms) = with_u_blocks(v.vars(), 0, r + 1)?;
    let mut polys = embed(v.polys(), &table)?;
    polys.extend(forms);
    let sys = MacaulaySystem::new(polys, 0)?;
    let perturb: Vec<usize> = (0..n - r).collect();
    let res = gcp_resultant(&sys, &perturb, grid)?;
    let cf = res.square_free_part()?;
    if (0..cf.vars().nblocks()).any(|b| cf.block_degree(b) == 0) {
        return Err(precondition!("not a complete intersection of expected dimension {r}"));
    }
    Ok(ChowForm::new(cf, Provenance::CompleteIntersection))
}

/// Grid size `N (n-r) d^{n-r-1} + m + 1` for the random combinations,
/// capped at [`GRID_CAP`].
pub fn lambda_grid_bound(n: usize, r: usize, d: u32, m: usize) -> u64 {
    let c = (n - r) as u64;
    let big_n = (m as u64).div_ceil(c);
    let pow = (d as u64).checked_pow((c - 1) as u32).unwrap_or(u64::MAX);
    big_n.saturating_mul(c).saturating_mul(pow).saturating_add(m as u64 + 1).min(GRID_CAP)
}

/// `N = ⌈m/(n-r)⌉` random `(n-r) × m` matrices with entries in the grid such
/// that each `V(Λ^i f)` has dimension `≤ r` and the stacked matrix has rank
/// `m`. The equations must share one degree.
pub fn generic_lc(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<Vec<LambdaMatrix>> {
    let n = v.ambient();
    let m = v.polys().len();
    if r >= n {
        return Err(usage!("dimension {r} is not below the ambient dimension {n}"));
    }
    let d = v.max_degree();
    if v.polys().iter().any(|f| f.total_degree() != d) {
        return Err(usage!("generic combinations need equations of equal degree (use degree_equalize)"));
    }
    let c = n - r;
    let big_n = m.div_ceil(c);
    let mut sampler = grid.with_bound(lambda_grid_bound(n, r, d, m));
    let budget = 4 * grid.retries();
    for _ in 0..budget {
        let mut out = Vec::with_capacity(big_n);
        for _ in 0..big_n {
            let mut found = None;
            for _ in 0..budget {
                let rows: Vec<Vec<BigInt>> =
                    (0..c).map(|_| (0..m).map(|_| BigInt::from(sampler.grid())).collect()).collect();
                let lam = LambdaMatrix { rows, seed: grid.seed() };
                let w = ProjectiveVariety::new(lam.apply(v.polys()))?;
                if dim_leq(&w, r, grid)? {
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

/// Chow form of a pure `r`-dimensional variety.
pub fn chow_form(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<ChowForm> {
    let n = v.ambient();
    if r >= n {
        return Err(usage!("dimension {r} is not below the ambient dimension {n}"));
    }
    if v.polys().len() == n - r {
        return chow_form_ci(v, r, grid);
    }
    if v.polys().len() < n - r {
        return Err(precondition!("{} equations cannot cut out a variety of codimension {}", v.polys().len(), n - r));
    }
    let eq = degree_equalize(v)?;
    let lambdas = generic_lc(&eq, r, grid)?;
    let mut acc: Option<MPoly> = None;
    for lam in &lambdas {
        let w = ProjectiveVariety::new(lam.apply(eq.polys()))?;
        let f = chow_form_ci(&w, r, grid)?.poly;
        acc = Some(match acc {
            None => f,
            Some(g) => g.gcd(&f)?,
        });
    }
    let poly = acc.ok_or_else(|| usage!("no equations"))?.normalize();
    Ok(ChowForm::new(poly, Provenance::GcdOf(lambdas.len())))
}

/// Degree and size bounds for the Chow form computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowBounds {
    /// per-block degree bound `d^{n-r}`
    pub degree_bound: u128,
    /// Macaulay matrix dimension `C((n-r)(d-1)+1+n, n)`
    pub macaulay_dim: u128,
    /// Bézout bounds `M_k` of the eliminated system
    pub bezout: Vec<u128>,
}

/// Bounds for a variety of dimension `r` whose equations have degree at most
/// `d = max deg f_i`.
pub fn chow_bounds(v: &ProjectiveVariety, r: usize) -> ChowBounds {
    chow_bounds_for(v.ambient(), v.max_degree(), r)
}

/// [`chow_bounds`] from the numbers `n`, `d`, `r`.
pub fn chow_bounds_for(n: usize, d: u32, r: usize) -> ChowBounds {
    let c = n.saturating_sub(r);
    let degree_bound = (d as u128).saturating_pow(c as u32);
    let top = (c as u128) * (d.max(1) as u128 - 1) + 1 + n as u128;
    let macaulay_dim = binomial(top, n as u128);
    let mut degs = vec![d; c];
    degs.extend(vec![1; r + 1]);
    ChowBounds { degree_bound, macaulay_dim, bezout: bezout_bounds(&degs) }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Value of the Chow form at the plane spanned by the rows of `plane`
/// (`u_i = plane[i]`).
pub fn evaluate_on_plane(cf: &ChowForm, plane: &[Vec<i64>]) -> BigInt {
    let point: Vec<BigInt> = plane.iter().flat_map(|row| row.iter().map(|&x| BigInt::from(x))).collect();
    cf.poly.eval(&point)
}

/// `F(g·u)`: substitutes `u_i ↦ Σ_j g_ij u_j` blockwise in a polynomial
/// whose blocks are the `u_i` (all of one size).
pub fn act_on_blocks(f: &MPoly, g: &[Vec<i64>]) -> MPoly {
    let vars = f.vars();
    let k = vars.nblocks();
    let w = vars.block(0).len();
    let mut images = vec![MPoly::zero(vars); vars.nvars()];
    for i in 0..k {
        for c in 0..w {
            images[vars.block(i)[c]] = (0..k).fold(MPoly::zero(vars), |acc, j| {
                if g[i][j] == 0 {
                    acc
                } else {
                    &acc + &MPoly::var(vars, vars.block(j)[c]).scale(&BigInt::from(g[i][j]))
                }
            });
        }
    }
    f.compose(vars, &images)
}

/// Whether every `k×k` minor of the plane matrix vanishes (rank-deficient
/// planes are zeros of every Chow form).
pub fn plane_is_degenerate(plane: &[Vec<i64>]) -> bool {
    let rows: Vec<Vec<BigInt>> = plane.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    upoly::rank(rows) < plane.len()
}
