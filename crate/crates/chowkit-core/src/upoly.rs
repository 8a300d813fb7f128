//! Dense univariate integer polynomials (`v[k]` is the coefficient of `z^k`)
//! and integer matrix kernels shared by the determinant and resultant code.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Removes trailing zero coefficients.
pub fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a` in `Z[z]`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = degree(b)?;
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let da = r.len() - 1;
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &r[k + db];
        if c.is_zero() {
            continue;
        }
        let (t, rem) = c.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[k + j] -= &t * bj;
        }
        q[k] = t;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut c = content(&v);
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    v.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
pub fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("pseudo-division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for j in 0..=db {
            r[dr - db + j] -= &lr * &b[j];
        }
        trim(&mut r);
    }
    r
}

/// Primitive GCD over `Z[z]` (primitive PRS), positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some_and(|d| d > 0) {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
        if y.is_empty() {
            return x;
        }
    }
    if y.is_empty() {
        x
    } else {
        vec![BigInt::one()]
    }
}

/// The sequence 0, 1, -1, 2, -2, ... used for evaluation points.
pub fn symmetric_point(k: usize) -> BigInt {
    let h = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        BigInt::from(h)
    } else {
        BigInt::from(-h)
    }
}

/// Interpolates the unique polynomial of degree `< xs.len()` through the
/// integer data, assuming it has integer coefficients. Uses Newton's form,
/// whose coefficients are integers in that case; returns `None` if some
/// division is inexact (i.e. no integer polynomial fits).
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut c: Vec<BigInt> = Vec::with_capacity(n);
    for k in 0..n {
        // value of the current Newton polynomial at x_k, and basis product
        let mut acc = BigInt::zero();
        let mut w = BigInt::one();
        for (i, ci) in c.iter().enumerate() {
            acc += ci * &w;
            w *= &xs[k] - &xs[i];
        }
        let diff = &ys[k] - acc;
        if w.is_zero() {
            return None;
        }
        let (q, r) = diff.div_rem(&w);
        if !r.is_zero() {
            return None;
        }
        c.push(q);
    }
    // expand the Newton form in the monomial basis (Horner from the top)
    let mut out: Vec<BigInt> = Vec::new();
    for k in (0..n).rev() {
        // out = out * (z - x_k) + c_k
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] += o;
            next[i] -= o * &xs[k];
        }
        next[0] += &c[k];
        out = next;
    }
    trim(&mut out);
    Some(out)
}

/// Fraction-free Bareiss determinant of a square integer matrix (consumed).
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = &pivot_row[k];
        for row in bottom.iter_mut() {
            let f = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * p - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix over `Q` (fraction-free elimination).
pub fn rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                row[j] = &row[j] * &pivot[c] - &f * &pivot[j];
            }
            let g = content(row);
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn interpolation_recovers_integer_polynomials() {
        let p = v(&[3, -1, 0, 7, 2]);
        let xs: Vec<BigInt> = (0..5).map(symmetric_point).collect();
        let ys: Vec<BigInt> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys).unwrap(), p);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = mul(&v(&[-1, 1]), &v(&[2, 1]));
        let b = mul(&v(&[-1, 1]), &v(&[3, 1]));
        assert_eq!(gcd(&a, &b), v(&[-1, 1]));
        assert_eq!(div_exact(&a, &v(&[2, 1])).unwrap(), v(&[-1, 1]));
        assert!(div_exact(&a, &v(&[5, 1])).is_none());
    }

    #[test]
    fn bareiss_matches_small_cases() {
        let m = vec![v(&[2, 1, 0]), v(&[1, 3, 1]), v(&[0, 1, 4])];
        assert_eq!(bareiss_det(m), BigInt::from(18));
        let m = vec![v(&[0, 1]), v(&[1, 0])];
        assert_eq!(bareiss_det(m), BigInt::from(-1));
        assert_eq!(rank(vec![v(&[1, 2]), v(&[2, 4])]), 1);
    }
}
