//! Hurwitz forms of complete intersections.
//!
//! `R₁` eliminates `x` from `f_1, ..., f_{n-r}, U_1, ..., U_r, M` with a
//! generic linear form `M = Σ m_j x_j`; for fixed `u` it is the product of
//! `M` over the intersection points of `V` with the plane `U = 0`. Its
//! discriminant in `m` vanishes where two of those points collide. The
//! discriminant is computed as the GCP of the partials `∂R₁/∂m_j`; the GCP's
//! lowest coefficient carries frame-dependent extra factors, which are
//! removed by taking the gcd with the same computation in a random unimodular
//! `m`-frame.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chow::{embed, with_u_blocks};
use crate::dimension::ProjectiveVariety;
use crate::error::{internal, precondition, usage, Result};
use crate::poly::{MPoly, VarTable};
use crate::resultant::{gcp_resultant, MacaulaySystem};
use crate::rng::RandomGrid;

/// A Hurwitz form over the blocks `u_1, ..., u_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzForm {
    pub poly: MPoly,
    pub degrees: Vec<u32>,
    pub bitsize: u64,
}

/// `R₁(u_1, ..., u_r, m)`; the output table has blocks `[u_1, ..., u_r, m]`.
pub fn u_resultant(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<MPoly> {
    let n = v.ambient();
    if r == 0 || r >= n {
        return Err(usage!("Hurwitz forms need 0 < r < n (got r = {r}, n = {n})"));
    }
    if v.polys().len() != n - r {
        return Err(usage!("Hurwitz forms need a complete intersection ({} equations)", n - r));
    }
    let degree: u64 = v.polys().iter().map(|f| f.total_degree() as u64).product();
    if degree < 2 {
        return Err(precondition!("Hurwitz forms need deg V >= 2 (a linear space has none)"));
    }
    let (ut, forms) = with_u_blocks(v.vars(), 1, r)?;
    let mut names: Vec<String> = ut.names().to_vec();
    let mut blocks: Vec<Vec<usize>> = ut.blocks().to_vec();
    let start = names.len();
    names.extend((0..=n).map(|j| format!("m{j}")));
    blocks.push((start..names.len()).collect());
    let table = VarTable::new(names, blocks)?;
    let map: Vec<Option<usize>> = (0..ut.nvars()).map(Some).collect();
    let mut polys = embed(v.polys(), &table)?;
    for u in &forms {
        polys.push(u.remap(&table, &map)?);
    }
    polys.push((0..=n).fold(MPoly::zero(&table), |acc, j| &acc + &(&MPoly::var(&table, start + j) * &MPoly::var(&table, j))));
    let sys = MacaulaySystem::new(polys, 0)?;
    let perturb: Vec<usize> = (0..n - r).collect();
    gcp_resultant(&sys, &perturb, grid)
}

/// GCP of `∂R₁/∂m_j` eliminating the block `m_block`, all partials
/// perturbed.
pub fn discriminant_via_partials(r1: &MPoly, m_block: usize, grid: &mut RandomGrid) -> Result<MPoly> {
    let ms = r1.vars().block(m_block).to_vec();
    let d = r1.homogeneous_degree_in(&ms).ok_or_else(|| usage!("R1 is not homogeneous in the m-block"))?;
    if d < 2 {
        return Err(usage!("R1 must have degree at least 2 in m (got {d})"));
    }
    let partials: Vec<MPoly> = ms.iter().map(|&v| r1.derivative(v)).collect();
    if partials.iter().any(|p| p.is_zero()) {
        return Err(precondition!("R1 does not involve every m-variable"));
    }
    let sys = MacaulaySystem::new(partials, m_block)?;
    let all: Vec<usize> = (0..ms.len()).collect();
    gcp_resultant(&sys, &all, grid)
}

/// Random unimodular integer matrix (product of elementary operations).
pub fn random_unimodular(k: usize, grid: &mut RandomGrid) -> Vec<Vec<i64>> {
    let mut g: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
    if k < 2 {
        return g;
    }
    for _ in 0..3 * k {
        let i = grid.range(0, k as i64 - 1) as usize;
        let mut j = grid.range(0, k as i64 - 2) as usize;
        if j >= i {
            j += 1;
        }
        let c = grid.range(-2, 2);
        for col in 0..k {
            g[i][col] += c * g[j][col];
        }
    }
    g
}

/// `R₁(u, G m)`.
fn change_frame(r1: &MPoly, m_block: usize, g: &[Vec<i64>]) -> MPoly {
    let vars = r1.vars();
    let ms = vars.block(m_block);
    let mut images: Vec<MPoly> = (0..vars.nvars()).map(|v| MPoly::var(vars, v)).collect();
    for (j, &mj) in ms.iter().enumerate() {
        images[mj] = ms.iter().enumerate().fold(MPoly::zero(vars), |acc, (k, &mk)| {
            &acc + &MPoly::var(vars, mk).scale(&BigInt::from(g[j][k]))
        });
    }
    r1.compose(vars, &images)
}

/// Hurwitz form of a complete intersection of dimension `r` and degree at
/// least 2.
pub fn hurwitz_form(v: &ProjectiveVariety, r: usize, grid: &mut RandomGrid) -> Result<HurwitzForm> {
    let r1 = u_resultant(v, r, grid)?;
    let m_block = r1.vars().nblocks() - 1;
    let a = discriminant_via_partials(&r1, m_block, grid)?;
    let g = random_unimodular(v.ambient() + 1, grid);
    let b = discriminant_via_partials(&change_frame(&r1, m_block, &g), m_block, grid)?;
    let h = a.gcd(&b)?.square_free_part()?;
    // drop the (now absent) m-block from the table
    let (ut, map) = h.vars().restrict(&(0..m_block).collect::<Vec<_>>());
    let h = h.remap(&ut, &map)?.normalize();
    if h.is_constant() {
        return Err(internal!("the discriminant factor cancelled"));
    }
    // transversal planes must not be zeros
    verify_transversal(&h, grid)?;
    let degrees = (0..ut.nblocks()).map(|b| h.block_degree(b)).collect();
    let bitsize = h.bitsize();
    Ok(HurwitzForm { poly: h, degrees, bitsize })
}

/// Per-block degree bound `D (n+1) (D-1)^n` for a complete intersection of
/// degree `D` in `P^n`: the Hurwitz form divides the `m`-discriminant of
/// `R₁`, which has degree `(n+1)(D-1)^n` in the coefficients of `R₁`, each
/// of degree `D` in every `u`-block.
pub fn hurwitz_degree_bound(n: usize, degree: u128) -> u128 {
    degree
        .saturating_mul(n as u128 + 1)
        .saturating_mul(degree.saturating_sub(1).saturating_pow(n as u32))
}

fn verify_transversal(h: &MPoly, grid: &mut RandomGrid) -> Result<()> {
    let mut misses = 0;
    for _ in 0..3 {
        let point: Vec<BigInt> = (0..h.nvars()).map(|_| BigInt::from(grid.range(-1000, 1000))).collect();
        if h.eval(&point).is_zero() {
            misses += 1;
        }
    }
    if misses >= 2 {
        return Err(internal!("Hurwitz form vanishes on random planes"));
    }
    Ok(())
}
