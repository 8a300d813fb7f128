//! Determinants of matrices whose entries are multivariate polynomials.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{precondition, usage, Result};
use crate::poly::{MPoly, VarTable};
use crate::upoly;

/// Square matrix of polynomials over one variable table (row-major).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Arc<VarTable>,
    dim: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(vars: &Arc<VarTable>, rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(usage!("matrix is not square"));
            }
            for e in row {
                if **e.vars() != **vars {
                    return Err(usage!("matrix entries over different variable tables"));
                }
                entries.push(e.with_vars(vars));
            }
        }
        Ok(PolyMatrix { vars: vars.clone(), dim, entries })
    }

    pub fn identity(vars: &Arc<VarTable>, dim: usize) -> Self {
        let mut entries = vec![MPoly::zero(vars); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = MPoly::one(vars);
        }
        PolyMatrix { vars: vars.clone(), dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }
    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.dim + j]
    }

    /// Evaluates every entry at an integer point.
    pub fn eval(&self, point: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j).eval(point)).collect()).collect()
    }

    /// Largest total degree of an entry.
    pub fn max_entry_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    /// Largest partial degree of an entry in each variable.
    pub fn max_partial_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.vars.nvars()];
        for e in &self.entries {
            for (v, x) in e.mdeg().partial.into_iter().enumerate() {
                d[v] = d[v].max(x);
            }
        }
        d
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{}{}", if j > 0 { ", " } else { "" }, self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Largest dimension accepted by [`det_cofactor`].
pub const COFACTOR_MAX_DIM: usize = 6;

/// Laplace expansion along the first row (test oracle).
pub fn det_cofactor(m: &PolyMatrix) -> Result<MPoly> {
    if m.dim > COFACTOR_MAX_DIM {
        return Err(usage!("cofactor expansion limited to dimension {COFACTOR_MAX_DIM}"));
    }
    let rows: Vec<usize> = (0..m.dim).collect();
    let cols: Vec<usize> = (0..m.dim).collect();
    Ok(laplace(m, &rows, &cols))
}

fn laplace(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> MPoly {
    if rows.is_empty() {
        return MPoly::one(&m.vars);
    }
    let r = rows[0];
    let mut acc = MPoly::zero(&m.vars);
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(r, c);
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = e * &laplace(m, &rows[1..], &sub_cols);
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn univariate_entries(m: &PolyMatrix) -> Vec<Vec<BigInt>> {
    m.entries
        .iter()
        .map(|e| {
            let mut v = vec![BigInt::zero(); e.degree_in(0) as usize + 1];
            for (ex, c) in e.terms() {
                v[ex[0] as usize] += c;
            }
            upoly::trim(&mut v);
            v
        })
        .collect()
}

/// Determinant of a matrix of dense univariate polynomials, given a degree
/// cap: evaluation at `cap + 1` points `0, ±1, ±2, ...`, Bareiss per point,
/// Newton interpolation, and one verification point.
pub fn det_dense_univariate(entries: &[Vec<BigInt>], dim: usize, cap: usize) -> Result<Vec<BigInt>> {
    let at = |x: &BigInt| -> BigInt {
        let mat: Vec<Vec<BigInt>> =
            (0..dim).map(|i| (0..dim).map(|j| upoly::eval(&entries[i * dim + j], x)).collect()).collect();
        upoly::bareiss_det(mat)
    };
    let xs: Vec<BigInt> = (0..=cap).map(upoly::symmetric_point).collect();
    let ys: Vec<BigInt> = xs.iter().map(&at).collect();
    let det = upoly::interpolate(&xs, &ys).ok_or_else(|| precondition!("determinant degree cap {cap} too small"))?;
    let probe = upoly::symmetric_point(cap + 1);
    if upoly::eval(&det, &probe) != at(&probe) {
        return Err(precondition!("determinant degree cap {cap} too small (verification failed)"));
    }
    Ok(det)
}

/// Determinant of a matrix over a single variable with degree cap `d`.
pub fn det_univariate_interp(m: &PolyMatrix, d: usize) -> Result<MPoly> {
    if m.vars.nvars() != 1 {
        return Err(usage!("univariate determinant needs a one-variable table"));
    }
    let entries = univariate_entries(m);
    let det = det_dense_univariate(&entries, m.dim, d)?;
    Ok(MPoly::from_terms(&m.vars, det.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c))))
}

/// Determinant by Kronecker packing: entries are packed to univariate
/// polynomials with radices `D_i + 1` from the caps, the packed determinant
/// is computed by evaluation/interpolation, and then unpacked. The caps must
/// dominate the determinant's partial degrees; violations are detected by
/// the unpack range check or by a final evaluation at a random point.
pub fn det_kronecker(m: &PolyMatrix, caps: &[u32]) -> Result<MPoly> {
    let nv = m.vars.nvars();
    if caps.len() != nv {
        return Err(usage!("need one degree cap per variable"));
    }
    let mut radix = Vec::with_capacity(nv);
    let mut acc: u64 = 1;
    for &c in caps {
        radix.push(acc);
        acc = acc
            .checked_mul(c as u64 + 1)
            .filter(|&a| a <= crate::poly::MAX_EXP as u64)
            .ok_or_else(|| precondition!("Kronecker radix product too large"))?;
    }
    // pack by direct substitution y_v -> z^{radix_v} (a ring homomorphism)
    let packed: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .map(|e| {
            let deg = e.terms().map(|(ex, _)| pack(ex, &radix)).max().unwrap_or(0);
            let mut v = vec![BigInt::zero(); deg as usize + 1];
            for (ex, c) in e.terms() {
                v[pack(ex, &radix) as usize] += c;
            }
            upoly::trim(&mut v);
            v
        })
        .collect();
    let max_entry = packed.iter().map(|v| v.len().saturating_sub(1)).max().unwrap_or(0);
    let cap = m.dim * max_entry;
    let det = det_dense_univariate(&packed, m.dim, cap)?;
    let z = VarTable::single_block(&["z"]);
    let detp = MPoly::from_terms(&z, det.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c)));
    let out = detp.kronecker_unpack(caps, &m.vars)?;
    // fresh-point verification guards against caps below the true degrees
    let point: Vec<BigInt> = (0..nv).map(|v| BigInt::from(3 + 2 * v as i64)).collect();
    if out.eval(&point) != upoly::bareiss_det(m.eval(&point)) {
        return Err(precondition!("degree caps do not dominate the determinant"));
    }
    Ok(out)
}

fn pack(ex: &[u32], radix: &[u64]) -> u64 {
    ex.iter().zip(radix).map(|(&e, &r)| e as u64 * r).sum()
}

/// Hadamard-type bound on the bitsize of an integer determinant with entries
/// of bitsize at most `tau`: `m·tau + m·⌈lg m⌉`.
pub fn hadamard_bitsize_bound(m: usize, tau: u64) -> u64 {
    let lg = if m <= 1 { 0 } else { (usize::BITS - (m - 1).leading_zeros()) as u64 };
    m as u64 * tau + m as u64 * lg
}

/// `true` iff the absolute value of `x` fits in `bits` bits.
pub fn fits_bits(x: &BigInt, bits: u64) -> bool {
    x.abs().bits() <= bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_determinants() {
        let v = VarTable::single_block(&["x"]);
        let x = MPoly::var(&v, 0);
        let one = MPoly::one(&v);
        let m = PolyMatrix::new(&v, vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]]).unwrap();
        assert_eq!(det_cofactor(&m).unwrap().to_string(), "x^2 - 1");
        assert_eq!(det_kronecker(&m, &[2]).unwrap().to_string(), "x^2 - 1");
        assert_eq!(det_univariate_interp(&m, 2).unwrap().to_string(), "x^2 - 1");
        assert_eq!(det_cofactor(&PolyMatrix::identity(&v, 3)).unwrap(), one);
        let z = MPoly::zero(&v);
        let d = PolyMatrix::new(&v, vec![vec![x.clone(), z.clone()], vec![z, x.clone()]]).unwrap();
        assert_eq!(det_univariate_interp(&d, 2).unwrap().to_string(), "x^2");
        assert!(det_univariate_interp(&d, 1).is_err());
    }
}
