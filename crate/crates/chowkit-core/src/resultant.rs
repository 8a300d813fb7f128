//! Resultants of square homogeneous and multihomogeneous systems.
//!
//! Every resultant here is a quotient of two determinants: the Macaulay
//! matrix over its extraneous minor for dense systems, and the Canny–Emiris
//! matrix over its non-mixed principal minor for multihomogeneous systems.
//! When the coefficients depend on parameters the quotient is evaluated at
//! integer parameter points and the result is recovered by interpolation
//! ([`crate::interp`]) with per-block degree caps derived from Bézout counts.
//!
//! Canny's generalized characteristic polynomial (GCP) perturbs selected
//! equations `f_i ↦ f_i + s·x_i^{d_i}`; the perturbed resultant `R̂(s)` is
//! computed pointwise as a univariate quotient and its lowest nonzero
//! `s`-coefficient (or its `s^0` coefficient) is interpolated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{indeterminate, internal, precondition, usage, Error, Result};
use crate::interp::{self, InterpGroup, Sample};
use crate::lp::{self, LpOutcome};
use crate::poly::{MPoly, VarTable};
use crate::polydet::{self, PolyMatrix};
use crate::rng::RandomGrid;
use crate::upoly;

/// Largest lifting value used for mixed subdivisions.
pub const LIFT_MAX: i64 = 1 << 16;
/// Number of fresh liftings tried before giving up.
pub const LIFT_RETRIES: usize = 8;

// ---------------------------------------------------------------------------
// systems

/// `n+1` polynomials homogeneous in the variables of `elim_block`, with
/// coefficients in the variables of `param_blocks`.
#[derive(Debug, Clone)]
pub struct MacaulaySystem {
    polys: Vec<MPoly>,
    elim_block: usize,
    param_blocks: Vec<usize>,
    degrees: Vec<u32>,
}

impl MacaulaySystem {
    /// Eliminates `elim_block`; every other block is a parameter block.
    pub fn new(polys: Vec<MPoly>, elim_block: usize) -> Result<Self> {
        let l = polys.first().map(|p| p.vars().nblocks()).unwrap_or(0);
        let params = (0..l).filter(|&b| b != elim_block).collect();
        Self::with_params(polys, elim_block, params)
    }

    /// Eliminates `elim_block` with explicitly listed parameter blocks (other
    /// blocks must not occur).
    pub fn with_params(polys: Vec<MPoly>, elim_block: usize, param_blocks: Vec<usize>) -> Result<Self> {
        let Some(first) = polys.first() else { return Err(usage!("empty system")) };
        let vars = first.vars().clone();
        if elim_block >= vars.nblocks() {
            return Err(usage!("no block {elim_block}"));
        }
        let elim = vars.block(elim_block).to_vec();
        if polys.len() != elim.len() {
            return Err(usage!("a Macaulay system needs {} polynomials, got {}", elim.len(), polys.len()));
        }
        let mut degrees = Vec::new();
        for f in &polys {
            if **f.vars() != *vars {
                return Err(usage!("polynomials over different variable tables"));
            }
            match f.homogeneous_degree_in(&elim) {
                Some(d) if d >= 1 && !f.is_zero() => degrees.push(d),
                Some(_) => return Err(usage!("degenerate system: a polynomial has degree 0")),
                None => return Err(usage!("polynomial `{f}` is not homogeneous in the eliminated block")),
            }
        }
        Ok(MacaulaySystem { polys, elim_block, param_blocks, degrees })
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
    pub fn vars(&self) -> &Arc<VarTable> {
        self.polys[0].vars()
    }

    /// Output table (parameter blocks) and variable map into it.
    pub fn param_table(&self) -> (Arc<VarTable>, Vec<Option<usize>>) {
        self.vars().restrict(&self.param_blocks)
    }

    /// Critical degree `t = Σ(d_i - 1) + 1`.
    pub fn critical_degree(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum::<u32>() + 1
    }
}

/// `Σ n_i + 1` polynomials multihomogeneous in the blocks `elim_blocks`.
#[derive(Debug, Clone)]
pub struct MultiResSystem {
    polys: Vec<MPoly>,
    elim_blocks: Vec<usize>,
    param_blocks: Vec<usize>,
    degrees: Vec<Vec<u32>>,
}

impl MultiResSystem {
    pub fn new(polys: Vec<MPoly>, elim_blocks: Vec<usize>) -> Result<Self> {
        let l = polys.first().map(|p| p.vars().nblocks()).unwrap_or(0);
        let params = (0..l).filter(|b| !elim_blocks.contains(b)).collect();
        Self::with_params(polys, elim_blocks, params)
    }

    pub fn with_params(polys: Vec<MPoly>, elim_blocks: Vec<usize>, param_blocks: Vec<usize>) -> Result<Self> {
        let Some(first) = polys.first() else { return Err(usage!("empty system")) };
        let vars = first.vars().clone();
        let dim: usize = elim_blocks.iter().map(|&b| vars.block(b).len() - 1).sum();
        if polys.len() != dim + 1 {
            return Err(usage!("a multihomogeneous system needs {} polynomials, got {}", dim + 1, polys.len()));
        }
        let mut degrees = Vec::new();
        for f in &polys {
            if **f.vars() != *vars || f.is_zero() {
                return Err(usage!("polynomials must be nonzero over one table"));
            }
            let mut d = Vec::new();
            for &b in &elim_blocks {
                match f.homogeneous_degree_in(vars.block(b)) {
                    Some(x) => d.push(x),
                    None => return Err(usage!("polynomial `{f}` is not multihomogeneous")),
                }
            }
            degrees.push(d);
        }
        Ok(MultiResSystem { polys, elim_blocks, param_blocks, degrees })
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }
    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.degrees
    }
    pub fn vars(&self) -> &Arc<VarTable> {
        self.polys[0].vars()
    }
    pub fn param_table(&self) -> (Arc<VarTable>, Vec<Option<usize>>) {
        self.vars().restrict(&self.param_blocks)
    }
    /// `n_i` for each eliminated block.
    pub fn block_dims(&self) -> Vec<usize> {
        self.elim_blocks.iter().map(|&b| self.vars().block(b).len() - 1).collect()
    }
}

// ---------------------------------------------------------------------------
// Bézout counts

/// Dense Bézout bounds `M_k = Π_{j≠k} d_j`.
pub fn bezout_bounds(degrees: &[u32]) -> Vec<u128> {
    (0..degrees.len())
        .map(|k| degrees.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &d)| d as u128).product())
        .collect()
}

/// Multihomogeneous Bézout number of a square system: the coefficient of
/// `Π t_i^{n_i}` in `Π_k (Σ_i d_{ki} t_i)`.
pub fn multihomogeneous_bezout(degrees: &[Vec<u32>], dims: &[usize]) -> u128 {
    let mut acc: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
    acc.insert(vec![0; dims.len()], 1);
    for d in degrees {
        let mut next: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
        for (e, c) in &acc {
            for i in 0..dims.len() {
                if d[i] == 0 || e[i] >= dims[i] {
                    continue;
                }
                let mut f = e.clone();
                f[i] += 1;
                *next.entry(f).or_insert(0) += c * d[i] as u128;
            }
        }
        acc = next;
    }
    acc.get(&dims.to_vec()).copied().unwrap_or(0)
}

/// Multihomogeneous Bézout bounds `M_k` (root count of all equations but the
/// k-th).
pub fn multi_bezout_bounds(degrees: &[Vec<u32>], dims: &[usize]) -> Vec<u128> {
    (0..degrees.len())
        .map(|k| {
            let others: Vec<Vec<u32>> =
                degrees.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, d)| d.clone()).collect();
            multihomogeneous_bezout(&others, dims)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// coefficient splitting

/// Terms of `f` grouped by their exponents in `elim` (in that order), with
/// coefficients re-expressed over the output table.
fn split_poly(f: &MPoly, elim: &[usize], out: &Arc<VarTable>, map: &[Option<usize>]) -> Result<Vec<(Vec<u32>, MPoly)>> {
    let mut groups: BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
    let is_elim: Vec<bool> = (0..f.nvars()).map(|v| elim.contains(&v)).collect();
    for (e, c) in f.terms() {
        let xe: Vec<u32> = elim.iter().map(|&v| e[v]).collect();
        let mut pe = vec![0u32; out.nvars()];
        for (v, &ev) in e.iter().enumerate() {
            if ev == 0 || is_elim[v] {
                continue;
            }
            match map[v] {
                Some(w) => pe[w] = ev,
                None => return Err(usage!("variable `{}` is neither eliminated nor a parameter", f.vars().name(v))),
            }
        }
        groups.entry(xe).or_default().push((pe, c.clone()));
    }
    Ok(groups.into_iter().map(|(xe, ts)| (xe, MPoly::from_terms(out, ts))).collect())
}

// ---------------------------------------------------------------------------
// the evaluation engine shared by the dense and sparse constructions

#[derive(Debug, Clone)]
struct Row {
    poly: usize,
    /// (column, term index of `poly`)
    entries: Vec<(usize, usize)>,
    /// (column, weight) of the `s`-perturbation
    pert: Vec<(usize, BigInt)>,
}

#[derive(Debug, Clone)]
struct Engine {
    out: Arc<VarTable>,
    coeffs: Vec<Vec<MPoly>>,
    rows: Vec<Row>,
    minor: Vec<usize>,
    bezout: Vec<u128>,
    perturbed: Vec<bool>,
}

enum Hat {
    /// Coefficients of `R̂(s)` (a single entry when only `s^0` was needed).
    Series(Vec<BigInt>),
    Degenerate,
    /// The minor did not divide the determinant (bad construction).
    Inexact,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    /// Plain quotient, no perturbation allowed to matter.
    Plain,
    /// Lowest nonzero coefficient of `R̂(s)`.
    Lowest,
    /// The `s^0` coefficient of `R̂(s)`, i.e. the resultant itself.
    AtZero,
}

impl Engine {
    fn size(&self) -> usize {
        self.rows.len()
    }

    fn matrices(&self, point: &[BigInt]) -> (Vec<Vec<BigInt>>, Vec<Vec<(usize, BigInt)>>) {
        let vals: Vec<Vec<BigInt>> = self.coeffs.iter().map(|cs| cs.iter().map(|c| c.eval(point)).collect()).collect();
        let n = self.size();
        let mut a = vec![vec![BigInt::zero(); n]; n];
        let mut p = vec![Vec::new(); n];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, t) in &row.entries {
                a[r][c] += &vals[row.poly][t];
            }
            p[r] = row.pert.clone();
        }
        (a, p)
    }

    fn has_pert(&self) -> bool {
        self.rows.iter().any(|r| !r.pert.is_empty())
    }

    fn eval_hat(&self, point: &[BigInt], only_zero: bool) -> Hat {
        let (a, p) = self.matrices(point);
        let sub = |m: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            self.minor.iter().map(|&i| self.minor.iter().map(|&j| m[i][j].clone()).collect()).collect()
        };
        if !self.has_pert() || only_zero {
            let d0 = upoly::bareiss_det(sub(&a));
            if !d0.is_zero() {
                let d = upoly::bareiss_det(a.clone());
                let (q, r) = d.div_rem(&d0);
                if !r.is_zero() {
                    return Hat::Inexact;
                }
                return Hat::Series(vec![q]);
            }
            if !self.has_pert() {
                return Hat::Degenerate;
            }
        }
        // full univariate quotient in s
        let n = self.size();
        let mut entries: Vec<Vec<BigInt>> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(vec![a[i][j].clone(), BigInt::zero()]);
            }
        }
        for (i, pr) in p.iter().enumerate() {
            for (j, w) in pr {
                entries[i * n + j][1] += w;
            }
        }
        for e in entries.iter_mut() {
            upoly::trim(e);
        }
        let pert_rows = p.iter().filter(|r| !r.is_empty()).count();
        let m = self.minor.len();
        let mut sub_entries = Vec::with_capacity(m * m);
        for &i in &self.minor {
            for &j in &self.minor {
                sub_entries.push(entries[i * n + j].clone());
            }
        }
        let sub_pert = self.minor.iter().filter(|&&i| !p[i].is_empty()).count();
        let (Ok(det), Ok(det0)) = (
            polydet::det_dense_univariate(&entries, n, pert_rows),
            polydet::det_dense_univariate(&sub_entries, m, sub_pert),
        ) else {
            return Hat::Inexact;
        };
        if det0.is_empty() {
            return Hat::Degenerate;
        }
        match upoly::div_exact(&det, &det0) {
            Some(q) => Hat::Series(q),
            None => Hat::Inexact,
        }
    }

    /// Per-block interpolation groups from Bézout counts and the degree
    /// structure of the coefficients (see module docs).
    fn groups(&self, k0: usize) -> Result<Vec<InterpGroup>> {
        let mut groups = Vec::new();
        for b in 0..self.out.nblocks() {
            let vars = self.out.block(b).to_vec();
            let mut safe = true;
            let mut exact: u128 = 0;
            let mut cap: u128 = 0;
            let mut e_pert: Option<u32> = None;
            for (k, cs) in self.coeffs.iter().enumerate() {
                let mut ek: Option<u32> = None;
                let mut maxk = 0u32;
                for c in cs.iter().filter(|c| !c.is_zero()) {
                    match c.homogeneous_degree_in(&vars) {
                        Some(d) => {
                            if ek.is_some_and(|x| x != d) {
                                safe = false;
                            }
                            ek = Some(d);
                        }
                        None => safe = false,
                    }
                    maxk = maxk.max(c.block_degree(b));
                }
                let ek = ek.unwrap_or(0);
                cap += self.bezout[k] * maxk as u128;
                exact += self.bezout[k] * ek as u128;
                if self.perturbed[k] && self.rows.iter().any(|r| r.poly == k && !r.pert.is_empty()) {
                    if e_pert.is_some_and(|x| x != ek) {
                        safe = false;
                    }
                    e_pert = Some(ek);
                }
            }
            let (degree, homogeneous) = if safe {
                let drop = k0 as u128 * e_pert.unwrap_or(0) as u128;
                if drop > exact {
                    return Err(internal!("inconsistent homogeneity bookkeeping"));
                }
                (exact - drop, true)
            } else {
                (cap, false)
            };
            let degree = u32::try_from(degree).map_err(|_| precondition!("parameter degree too large"))?;
            groups.push(InterpGroup { vars, degree, homogeneous });
        }
        Ok(groups)
    }

    fn random_point(&self, grid: &mut RandomGrid) -> Vec<BigInt> {
        (0..self.out.nvars()).map(|_| BigInt::from(grid.range(-1000, 1000))).collect()
    }

    /// Interpolates the requested coefficient of `R̂` over the parameters.
    fn solve(&self, mode: Mode, grid: &mut RandomGrid) -> Result<MPoly> {
        let np = self.out.nvars();
        let k0 = match mode {
            Mode::Plain | Mode::AtZero => 0,
            Mode::Lowest => {
                let mut best: Option<usize> = None;
                let mut found = 0;
                let mut tries = 0;
                while found < 3 && tries < 24 {
                    tries += 1;
                    let pt = self.random_point(grid);
                    match self.eval_hat(&pt, false) {
                        Hat::Series(s) => {
                            found += 1;
                            if let Some(k) = s.iter().position(|c| !c.is_zero()) {
                                best = Some(best.map_or(k, |b: usize| b.min(k)));
                            }
                        }
                        Hat::Degenerate => {}
                        Hat::Inexact => return Err(internal!("inexact determinant quotient")),
                    }
                    if np == 0 && found > 0 {
                        break;
                    }
                }
                if found == 0 {
                    return Err(indeterminate!("extraneous minor vanished at every sample point"));
                }
                best.ok_or_else(|| internal!("perturbed resultant vanishes identically"))?
            }
        };
        let pick = |h: Hat| -> Result<Sample> {
            match h {
                Hat::Series(s) => Ok(Sample::Value(s.get(k0).cloned().unwrap_or_default())),
                Hat::Degenerate => Ok(Sample::Degenerate),
                Hat::Inexact => Err(internal!("inexact determinant quotient")),
            }
        };
        let only_zero = k0 == 0;
        if np == 0 {
            for _ in 0..2 {
                match pick(self.eval_hat(&[], only_zero))? {
                    Sample::Value(v) => return Ok(MPoly::constant(&self.out, v)),
                    Sample::Degenerate => {
                        if mode == Mode::Plain {
                            return Err(precondition!("det M0 vanishes; use the perturbed resultant"));
                        }
                    }
                }
            }
            return Err(indeterminate!("perturbed minor vanished"));
        }
        if mode == Mode::Plain {
            // refuse identically vanishing minors up front
            let ok = (0..4).any(|_| {
                let pt = self.random_point(grid);
                !matches!(self.eval_hat(&pt, true), Hat::Degenerate)
            });
            if !ok {
                return Err(precondition!("det M0 vanishes identically; use the perturbed resultant"));
            }
        }
        let groups = self.groups(k0)?;
        interp::interpolate(&self.out, &groups, grid, 2, |pt| pick(self.eval_hat(pt, only_zero)))
    }
}

// ---------------------------------------------------------------------------
// dense Macaulay construction

/// Exponent vectors of degree `t` in `k` variables, descending lex order.
fn monomials(k: usize, t: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == k {
            prefix.push(t);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=t).rev() {
            prefix.push(a);
            rec(k, t - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(k, t, &mut Vec::new(), &mut out);
    out
}

fn dense_engine(sys: &MacaulaySystem, perturb: &[usize]) -> Result<Engine> {
    let (out, map) = sys.param_table();
    let elim = sys.vars().block(sys.elim_block).to_vec();
    let n1 = elim.len();
    let split: Vec<Vec<(Vec<u32>, MPoly)>> =
        sys.polys.iter().map(|f| split_poly(f, &elim, &out, &map)).collect::<Result<_>>()?;
    let t = sys.critical_degree();
    let cols = monomials(n1, t);
    let index: BTreeMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let d = &sys.degrees;
    let mut rows = Vec::with_capacity(cols.len());
    let mut minor = Vec::new();
    for (r, alpha) in cols.iter().enumerate() {
        let i = (0..n1).find(|&i| alpha[i] >= d[i]).expect("critical degree guarantees a divisor");
        let divisible = (0..n1).filter(|&j| alpha[j] >= d[j]).count();
        if divisible > 1 {
            minor.push(r);
        }
        let mut shift = alpha.clone();
        shift[i] -= d[i];
        let entries = split[i]
            .iter()
            .enumerate()
            .map(|(ti, (xe, _))| {
                let m: Vec<u32> = shift.iter().zip(xe).map(|(a, b)| a + b).collect();
                (index[&m], ti)
            })
            .collect();
        let mut pert = Vec::new();
        if perturb.contains(&i) {
            let p = i % n1;
            let mut m = shift.clone();
            m[p] += d[i];
            pert.push((index[&m], BigInt::one()));
        }
        rows.push(Row { poly: i, entries, pert });
    }
    let degs = sys.degrees.clone();
    Ok(Engine {
        out,
        coeffs: split.into_iter().map(|s| s.into_iter().map(|(_, c)| c).collect()).collect(),
        rows,
        minor,
        bezout: bezout_bounds(&degs),
        perturbed: (0..n1).map(|i| perturb.contains(&i)).collect(),
    })
}

/// The Macaulay matrix `M` at the critical degree and its extraneous
/// submatrix `M₀` (rows/columns of non-reduced monomials), with entries over
/// the parameter table.
pub fn macaulay_matrix(sys: &MacaulaySystem) -> Result<(PolyMatrix, PolyMatrix)> {
    let e = dense_engine(sys, &[])?;
    let n = e.size();
    let mut m = vec![vec![MPoly::zero(&e.out); n]; n];
    for (r, row) in e.rows.iter().enumerate() {
        for &(c, t) in &row.entries {
            m[r][c] = &m[r][c] + &e.coeffs[row.poly][t];
        }
    }
    let m0: Vec<Vec<MPoly>> = e.minor.iter().map(|&i| e.minor.iter().map(|&j| m[i][j].clone()).collect()).collect();
    Ok((PolyMatrix::new(&e.out, m)?, PolyMatrix::new(&e.out, m0)?))
}

/// `det M / det M₀` over the parameters. Fails with a precondition error
/// when `det M₀` vanishes identically (use [`gcp_resultant`]).
pub fn resultant_dense(sys: &MacaulaySystem, grid: &mut RandomGrid) -> Result<MPoly> {
    dense_engine(sys, &[])?.solve(Mode::Plain, grid)
}

/// Lowest nonzero `s`-coefficient of the resultant of the system with the
/// polynomials listed in `perturb` replaced by `f_i + s·x_i^{d_i}`.
pub fn gcp_resultant(sys: &MacaulaySystem, perturb: &[usize], grid: &mut RandomGrid) -> Result<MPoly> {
    dense_engine(sys, perturb)?.solve(Mode::Lowest, grid)
}

/// The resultant itself (the `s^0` coefficient of the GCP), robust to
/// vanishing extraneous minors. Polynomials without parameters are perturbed
/// (all of them if every polynomial carries parameters).
pub fn resultant_exact(sys: &MacaulaySystem, grid: &mut RandomGrid) -> Result<MPoly> {
    let perturb = default_perturbation(&sys.polys, &sys.param_blocks);
    dense_engine(sys, &perturb)?.solve(Mode::AtZero, grid)
}

fn default_perturbation(polys: &[MPoly], params: &[usize]) -> Vec<usize> {
    let has_params = |f: &MPoly| params.iter().any(|&b| f.block_degree(b) > 0);
    let plain: Vec<usize> = (0..polys.len()).filter(|&i| !has_params(&polys[i])).collect();
    if plain.is_empty() {
        (0..polys.len()).collect()
    } else {
        plain
    }
}

// ---------------------------------------------------------------------------
// Canny–Emiris construction for multihomogeneous systems

struct Lattice {
    /// eliminated variables, block by block
    elim: Vec<usize>,
    /// per eliminated block: (offset into `elim`, n_i)
    blocks: Vec<(usize, usize)>,
    dim: usize,
}

impl Lattice {
    fn affine(&self, xe: &[u32]) -> Vec<i64> {
        let mut p = Vec::with_capacity(self.dim);
        for &(off, n) in &self.blocks {
            for j in 1..=n {
                p.push(xe[off + j] as i64);
            }
        }
        p
    }
}

/// Lattice points `a` of a product of simplices `Π {a ≥ lo, |a| ≤ hi_i}`.
fn simplex_product(dims: &[usize], lo: i64, hi: &[i64]) -> Vec<Vec<i64>> {
    let mut acc: Vec<Vec<i64>> = vec![Vec::new()];
    for (i, &n) in dims.iter().enumerate() {
        let mut part: Vec<Vec<i64>> = Vec::new();
        fn rec(n: usize, lo: i64, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            let mut a = lo;
            while a <= budget {
                prefix.push(a);
                rec(n, lo, budget - a, prefix, out);
                prefix.pop();
                a += 1;
            }
        }
        rec(n, lo, hi[i], &mut Vec::new(), &mut part);
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for a in &acc {
            for b in &part {
                let mut c = a.clone();
                c.extend_from_slice(b);
                next.push(c);
            }
        }
        acc = next;
    }
    acc
}

fn ce_engine(sys: &MultiResSystem, perturb: &[usize], rng: &mut RandomGrid) -> Result<Option<Engine>> {
    let (out, map) = sys.param_table();
    let vars = sys.vars();
    let mut elim = Vec::new();
    let mut blocks = Vec::new();
    for &b in &sys.elim_blocks {
        let vs = vars.block(b);
        blocks.push((elim.len(), vs.len() - 1));
        elim.extend_from_slice(vs);
    }
    let dims: Vec<usize> = blocks.iter().map(|b| b.1).collect();
    let lat = Lattice { elim: elim.clone(), blocks, dim: dims.iter().sum() };
    let split: Vec<Vec<(Vec<u32>, MPoly)>> =
        sys.polys.iter().map(|f| split_poly(f, &lat.elim, &out, &map)).collect::<Result<_>>()?;
    let npolys = sys.polys.len();
    // full supports and liftings
    let supports: Vec<Vec<Vec<i64>>> = sys
        .degrees
        .iter()
        .map(|d| simplex_product(&dims, 0, &d.iter().map(|&x| x as i64).collect::<Vec<_>>()))
        .collect();
    let lifts: Vec<Vec<i64>> = supports.iter().map(|s| s.iter().map(|_| rng.range(1, LIFT_MAX)).collect()).collect();
    let total: Vec<i64> = (0..dims.len()).map(|i| sys.degrees.iter().map(|d| d[i] as i64).sum()).collect();
    let points = simplex_product(&dims, 1, &total);
    let index: BTreeMap<Vec<i64>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // LP data: columns (k, a) ↦ (a; e_k)
    let nrows = lat.dim + npolys;
    let mut cols: Vec<(usize, usize)> = Vec::new();
    let mut a_mat = vec![Vec::new(); nrows];
    let mut cost = Vec::new();
    for (k, sup) in supports.iter().enumerate() {
        for (ai, a) in sup.iter().enumerate() {
            cols.push((k, ai));
            for j in 0..lat.dim {
                a_mat[j].push(BigInt::from(a[j]));
            }
            for kk in 0..npolys {
                a_mat[lat.dim + kk].push(BigInt::from((kk == k) as i64));
            }
            cost.push(BigInt::from(lifts[k][ai]));
        }
    }
    // random perturbation polynomials g_k on the full supports
    let gcoef: Vec<Vec<BigInt>> = supports.iter().map(|s| s.iter().map(|_| BigInt::from(rng.range(-64, 64))).collect()).collect();
    let mut rows = Vec::with_capacity(points.len());
    let mut minor = Vec::new();
    for (r, p) in points.iter().enumerate() {
        let mut b = vec![vec![BigInt::zero(); lat.dim + 1]; nrows];
        for j in 0..lat.dim {
            b[j][0] = BigInt::from(p[j]);
            b[j][1 + j] = BigInt::from(-1);
        }
        for kk in 0..npolys {
            b[lat.dim + kk][0] = BigInt::one();
        }
        let basis = match lp::solve(&a_mat, &b, &cost) {
            LpOutcome::Optimal(basis) => basis,
            _ => return Ok(None),
        };
        let mut cell: Vec<Vec<usize>> = vec![Vec::new(); npolys];
        for c in basis {
            let (k, ai) = cols[c];
            cell[k].push(ai);
        }
        let vertices: Vec<usize> = (0..npolys).filter(|&k| cell[k].len() == 1).collect();
        let Some(&i) = vertices.last() else { return Ok(None) };
        if vertices.len() > 1 {
            minor.push(r);
        }
        let a = &supports[i][cell[i][0]];
        let shift: Vec<i64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
        let mut entries = Vec::new();
        for (ti, (xe, _)) in split[i].iter().enumerate() {
            let q: Vec<i64> = shift.iter().zip(lat.affine(xe)).map(|(x, y)| x + y).collect();
            match index.get(&q) {
                Some(&c) => entries.push((c, ti)),
                None => return Ok(None),
            }
        }
        let mut pert = Vec::new();
        if perturb.contains(&i) {
            for (bi, bpt) in supports[i].iter().enumerate() {
                let q: Vec<i64> = shift.iter().zip(bpt).map(|(x, y)| x + y).collect();
                match index.get(&q) {
                    Some(&c) => pert.push((c, gcoef[i][bi].clone())),
                    None => return Ok(None),
                }
            }
        }
        rows.push(Row { poly: i, entries, pert });
    }
    Ok(Some(Engine {
        out,
        coeffs: split.into_iter().map(|s| s.into_iter().map(|(_, c)| c).collect()).collect(),
        rows,
        minor,
        bezout: multi_bezout_bounds(&sys.degrees, &dims),
        perturbed: (0..npolys).map(|i| perturb.contains(&i)).collect(),
    }))
}

fn ce_resultant(sys: &MultiResSystem, grid: &mut RandomGrid) -> Result<MPoly> {
    let perturb = default_perturbation(&sys.polys, &sys.param_blocks);
    let mut last = None;
    for _ in 0..LIFT_RETRIES {
        let mut sub = grid.fork(0xCE);
        let Some(engine) = ce_engine(sys, &perturb, &mut sub)? else { continue };
        match engine.solve(Mode::AtZero, &mut sub) {
            Ok(p) => return Ok(p),
            Err(e @ Error::Internal(_)) | Err(e @ Error::Indeterminate(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| indeterminate!("no generic lifting found in {LIFT_RETRIES} attempts")))
}

/// A multihomogeneous resultant factored along the connected components of
/// the block-interaction graph: `Res = base^exponent`.
#[derive(Debug, Clone)]
pub struct FactoredResultant {
    pub base: MPoly,
    pub exponent: u128,
}

/// Resultant of a multihomogeneous system, split into independent blocks
/// when possible (see [`FactoredResultant`]).
pub fn resultant_multihomogeneous_factored(sys: &MultiResSystem, grid: &mut RandomGrid) -> Result<FactoredResultant> {
    let vars = sys.vars().clone();
    let nb = sys.elim_blocks.len();
    let dims = sys.block_dims();
    for (f, d) in sys.polys.iter().zip(&sys.degrees) {
        if d.iter().all(|&x| x == 0) {
            return Err(usage!("polynomial `{f}` is constant in the eliminated variables"));
        }
    }
    // union-find over eliminated blocks
    let mut parent: Vec<usize> = (0..nb).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for d in &sys.degrees {
        let used: Vec<usize> = (0..nb).filter(|&i| d[i] > 0).collect();
        for w in used.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut comps: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for i in 0..nb {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().0.push(i);
    }
    for (k, d) in sys.degrees.iter().enumerate() {
        let i = (0..nb).find(|&i| d[i] > 0).unwrap();
        let r = find(&mut parent, i);
        comps.get_mut(&r).unwrap().1.push(k);
    }
    let mut essential = None;
    let mut exponent: u128 = 1;
    for (blocks, polys) in comps.values() {
        let cdim: usize = blocks.iter().map(|&i| dims[i]).sum();
        if polys.len() == cdim + 1 {
            if essential.is_some() {
                return Err(precondition!("more than one overdetermined block group"));
            }
            essential = Some((blocks.clone(), polys.clone()));
        } else if polys.len() == cdim {
            let degs: Vec<Vec<u32>> = polys.iter().map(|&k| blocks.iter().map(|&i| sys.degrees[k][i]).collect()).collect();
            let bdims: Vec<usize> = blocks.iter().map(|&i| dims[i]).collect();
            exponent = exponent.saturating_mul(multihomogeneous_bezout(&degs, &bdims));
        } else {
            return Err(precondition!("non-essential system: a block group has the wrong number of equations"));
        }
    }
    let (blocks, polys) = essential.ok_or_else(|| internal!("no overdetermined block group"))?;
    let sub_polys: Vec<MPoly> = polys.iter().map(|&k| sys.polys[k].clone()).collect();
    let elim: Vec<usize> = blocks.iter().map(|&i| sys.elim_blocks[i]).collect();
    let base = if elim.len() == 1 {
        let ms = MacaulaySystem::with_params(sub_polys, elim[0], sys.param_blocks.clone())?;
        resultant_exact(&ms, grid)?
    } else {
        let ms = MultiResSystem::with_params(sub_polys, elim, sys.param_blocks.clone())?;
        ce_resultant(&ms, grid)?
    };
    let _ = vars;
    Ok(FactoredResultant { base, exponent })
}

/// The multihomogeneous resultant (up to sign and integer content).
pub fn resultant_multihomogeneous(sys: &MultiResSystem, grid: &mut RandomGrid) -> Result<MPoly> {
    let f = resultant_multihomogeneous_factored(sys, grid)?;
    let e = u32::try_from(f.exponent).map_err(|_| precondition!("resultant exponent too large"))?;
    Ok(f.base.pow(e))
}

/// Resultant of a multihomogeneous system evaluated through the
/// Canny–Emiris matrix only (no block splitting); used for cross-checks.
pub fn resultant_canny_emiris(sys: &MultiResSystem, grid: &mut RandomGrid) -> Result<MPoly> {
    ce_resultant(sys, grid)
}

/// Set of rows of the extraneous minor (exposed for diagnostics/tests).
pub fn macaulay_reduced_rows(sys: &MacaulaySystem) -> Result<BTreeSet<usize>> {
    let e = dense_engine(sys, &[])?;
    let minor: BTreeSet<usize> = e.minor.iter().copied().collect();
    Ok((0..e.size()).filter(|r| !minor.contains(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn forms(names: &[&str]) -> Arc<VarTable> {
        VarTable::single_block(names)
    }

    #[test]
    fn linear_forms_give_determinant() {
        let v = forms(&["x0", "x1", "x2"]);
        let x: Vec<MPoly> = (0..3).map(|i| MPoly::var(&v, i)).collect();
        let c = |k: i64| MPoly::from_int(&v, k);
        let f0 = &(&x[0] * &c(2)) + &x[1];
        let f1 = &(&x[1] * &c(3)) - &x[2];
        let f2 = &(&x[0] + &x[1]) + &x[2];
        let sys = MacaulaySystem::new(vec![f0, f1, f2], 0).unwrap();
        let (m, m0) = macaulay_matrix(&sys).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m0.dim(), 0);
        let mut g = RandomGrid::new(1, 100, 3);
        let r = resultant_dense(&sys, &mut g).unwrap();
        // det [[2,1,0],[0,3,-1],[1,1,1]] = 2*4 - 1*(1) = 7
        assert_eq!(r.constant_term().magnitude().to_string(), "7");
    }

    #[test]
    fn shared_root_gives_zero() {
        let v = forms(&["x0", "x1"]);
        let f = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        let sys = MacaulaySystem::new(vec![f.clone(), f], 0).unwrap();
        let mut g = RandomGrid::new(1, 100, 3);
        assert!(resultant_dense(&sys, &mut g).unwrap().is_zero());
    }

    #[test]
    fn ternary_quadrics_matrix_size() {
        let v = forms(&["x0", "x1", "x2"]);
        let q: Vec<MPoly> = (0..3).map(|i| &MPoly::var(&v, i).pow(2) + &MPoly::var(&v, (i + 1) % 3).pow(2)).collect();
        let sys = MacaulaySystem::new(q, 0).unwrap();
        let (m, _) = macaulay_matrix(&sys).unwrap();
        assert_eq!(m.dim(), 15);
    }

    #[test]
    fn bezout_counts() {
        assert_eq!(bezout_bounds(&[2, 2, 1, 1])[1], 2);
        assert_eq!(bezout_bounds(&[1, 1, 1]), vec![1, 1, 1]);
        // two (1,1)-forms on P1 x P1: 2 roots
        assert_eq!(multihomogeneous_bezout(&[vec![1, 1], vec![1, 1]], &[1, 1]), 2);
    }

    #[test]
    fn gcp_of_squares_is_one() {
        let v = forms(&["x0", "x1"]);
        let sys = MacaulaySystem::new(vec![MPoly::var(&v, 0).pow(2), MPoly::var(&v, 1).pow(2)], 0).unwrap();
        let mut g = RandomGrid::new(1, 100, 3);
        let r = gcp_resultant(&sys, &[0, 1], &mut g).unwrap();
        assert_eq!(r.normalize().to_string(), "1");
    }
}
