//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Variables are named and partitioned into ordered blocks ([`VarTable`]).
//! Terms are kept in a `BTreeMap` keyed by a *sort key*
//! `[total degree, block degrees..., exponents...]`, so the natural key order
//! is the canonical graded order (total degree, then block degrees in block
//! order, then exponents lexicographically by variable index). The leading
//! term is the largest key.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, usage, Result};
use crate::upoly;

/// Largest exponent accepted anywhere (degrees beyond are rejected).
pub const MAX_EXP: u32 = (1 << 31) - 1;

/// `⌈lg max(δ, 2)⌉`: the logarithmic factor of the bitsize bounds (the
/// floor at 2 keeps the bounds meaningful for linear and constant inputs).
pub fn lg_degree(delta: u32) -> u64 {
    let d = delta.max(2) as u64;
    (64 - (d - 1).leading_zeros()) as u64
}

/// Coefficient bitsize bound `τ₁ + τ₂ + 2ν·lg δ` for a product of
/// polynomials in `ν` variables of total degree at most `δ`.
pub fn mul_bitsize_bound(tau1: u64, tau2: u64, nu: usize, delta: u32) -> u64 {
    tau1 + tau2 + 2 * nu as u64 * lg_degree(delta)
}

/// Coefficient bitsize bound `mτ + 12νm·lg δ` for the `m`-th power of a
/// polynomial in `ν` variables of total degree at most `δ`.
pub fn pow_bitsize_bound(tau: u64, m: u32, nu: usize, delta: u32) -> u64 {
    m as u64 * tau + 12 * nu as u64 * m as u64 * lg_degree(delta)
}

/// Variable names plus an ordered partition of the variables into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VarTable {
    /// Builds a table; `blocks` must partition `0..names.len()`.
    pub fn new(names: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(usage!("empty variable name"));
            }
            if names[..i].contains(a) {
                return Err(usage!("duplicate variable name `{a}`"));
            }
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, blk) in blocks.iter().enumerate() {
            if blk.is_empty() {
                return Err(usage!("empty variable block"));
            }
            for &v in blk {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(usage!("blocks do not partition the variables"));
                }
                block_of[v] = b;
            }
        }
        if block_of.iter().any(|&b| b == usize::MAX) {
            return Err(usage!("some variable belongs to no block"));
        }
        Ok(Arc::new(VarTable { names, blocks, block_of }))
    }

    /// One block holding every variable (the projective case).
    pub fn single_block<S: ToString>(names: &[S]) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        let blocks = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
        Self::new(names, blocks).expect("valid single-block table")
    }

    /// Consecutive blocks given as lists of names.
    pub fn from_blocks<S: ToString>(blocks: &[Vec<S>]) -> Result<Arc<Self>> {
        let mut names = Vec::new();
        let mut idx = Vec::new();
        for blk in blocks {
            let start = names.len();
            names.extend(blk.iter().map(|s| s.to_string()));
            idx.push((start..names.len()).collect());
        }
        Self::new(names, idx)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn nblocks(&self) -> usize {
        self.blocks.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Table made of the listed blocks (in the given order) and the map from
    /// old variable indices to new ones.
    pub fn restrict(&self, blocks: &[usize]) -> (Arc<VarTable>, Vec<Option<usize>>) {
        let mut names = Vec::new();
        let mut idx = Vec::new();
        let mut map = vec![None; self.nvars()];
        for &b in blocks {
            let start = names.len();
            for &v in &self.blocks[b] {
                map[v] = Some(names.len());
                names.push(self.names[v].clone());
            }
            idx.push((start..names.len()).collect());
        }
        (VarTable::new(names, idx).expect("restriction of a valid table"), map)
    }

    fn key(&self, exps: &[u32]) -> Vec<u32> {
        let l = self.blocks.len();
        let mut key = vec![0u32; 1 + l + exps.len()];
        let mut total: u64 = 0;
        for (v, &e) in exps.iter().enumerate() {
            total += e as u64;
            key[1 + self.block_of[v]] += e;
            key[1 + l + v] = e;
        }
        assert!(total <= MAX_EXP as u64, "degree overflow");
        key[0] = total as u32;
        key
    }

    fn offset(&self) -> usize {
        1 + self.blocks.len()
    }
}

/// Degree data of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    /// Largest exponent of each variable.
    pub partial: Vec<u32>,
    /// Largest block-summed exponent of each block.
    pub blocks: Vec<u32>,
    /// Total degree.
    pub total: u32,
}

/// Sparse polynomial with integer coefficients over a shared [`VarTable`].
#[derive(Clone)]
pub struct MPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) && self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

fn check_same(a: &MPoly, b: &MPoly) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomials over different variable tables"
    );
}

impl MPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: BigInt) -> Self {
        let exps = vec![0; vars.nvars()];
        Self::monomial(vars, &exps, c)
    }

    pub fn from_int(vars: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(vars, BigInt::from(c))
    }

    pub fn var(vars: &Arc<VarTable>, v: usize) -> Self {
        let mut exps = vec![0; vars.nvars()];
        exps[v] = 1;
        Self::monomial(vars, &exps, BigInt::one())
    }

    pub fn monomial(vars: &Arc<VarTable>, exps: &[u32], c: BigInt) -> Self {
        assert_eq!(exps.len(), vars.nvars(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vars.key(exps), c);
        }
        p
    }

    /// Sums the given terms (duplicates are merged, zeros dropped).
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, BigInt)>>(vars: &Arc<VarTable>, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.nvars(), "exponent vector length");
            let k = vars.key(&e);
            p.add_key(k, c);
        }
        p
    }

    fn add_key(&mut self, key: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: &[u32], c: BigInt) {
        let k = self.vars.key(exps);
        self.add_key(k, c);
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.nvars()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &BigInt)> + '_ {
        let off = self.vars.offset();
        self.terms.iter().map(move |(k, c)| (&k[off..], c))
    }

    /// Terms in descending canonical order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&[u32], &BigInt)> + '_ {
        self.terms().rev()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|k| k[0] == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.terms.iter().next().filter(|(k, _)| k[0] == 0).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&[u32], &BigInt)> {
        self.terms_desc().next()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Moves the polynomial to an equal table (cheap pointer swap).
    pub fn with_vars(mut self, vars: &Arc<VarTable>) -> Self {
        assert!(*self.vars == **vars, "tables differ");
        self.vars = vars.clone();
        self
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in self.terms() {
            let s: Vec<u32> = e.iter().zip(exps).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect();
            p.terms.insert(self.vars.key(&s), c.clone());
        }
        p
    }

    pub fn pow(&self, m: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                result = &result * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        result
    }

    // ----- degrees -----------------------------------------------------

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k[0]).max().unwrap_or(0)
    }

    /// Block-summed degree of block `b`.
    pub fn block_degree(&self, b: usize) -> u32 {
        self.terms.keys().map(|k| k[1 + b]).max().unwrap_or(0)
    }

    /// Smallest block-summed degree of block `b` over all terms.
    pub fn block_min_degree(&self, b: usize) -> u32 {
        self.terms.keys().map(|k| k[1 + b]).min().unwrap_or(0)
    }

    pub fn mdeg(&self) -> DegreeProfile {
        let n = self.nvars();
        let l = self.vars.nblocks();
        let mut d = DegreeProfile { partial: vec![0; n], blocks: vec![0; l], total: 0 };
        for k in self.terms.keys() {
            d.total = d.total.max(k[0]);
            for b in 0..l {
                d.blocks[b] = d.blocks[b].max(k[1 + b]);
            }
            for v in 0..n {
                d.partial[v] = d.partial[v].max(k[1 + l + v]);
            }
        }
        d
    }

    /// True iff all terms have the same per-block degree vector.
    pub fn is_multihomogeneous(&self) -> bool {
        let l = self.vars.nblocks();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return true };
        it.all(|k| k[1..1 + l] == first[1..1 + l])
    }

    /// True iff all terms have the same degree in block `b`.
    pub fn is_homogeneous_in_block(&self, b: usize) -> bool {
        self.block_degree(b) == self.block_min_degree(b)
    }

    /// Degree in the variables `vs` of every term, if it is the same for all
    /// terms (the zero polynomial gives `Some(0)`).
    pub fn homogeneous_degree_in(&self, vs: &[usize]) -> Option<u32> {
        let mut d = None;
        for (e, _) in self.terms() {
            let s: u32 = vs.iter().map(|&v| e[v]).sum();
            match d {
                None => d = Some(s),
                Some(x) if x != s => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }

    /// Largest bit length of a coefficient (0 for the zero polynomial).
    pub fn bitsize(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let d = self.mdeg();
        (0..self.nvars()).filter(|&v| d.partial[v] > 0).collect()
    }

    // ----- content and normalization ------------------------------------

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by an integer that divides every coefficient.
    pub fn div_int(&self, c: &BigInt) -> Self {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, x)| (k.clone(), x / c)).collect() }
    }

    /// Primitive part with positive leading coefficient (zero stays zero).
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_int(&c)
    }

    // ----- calculus and evaluation --------------------------------------

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in self.terms() {
            if e[v] == 0 {
                continue;
            }
            let mut f = e.to_vec();
            f[v] -= 1;
            p.terms.insert(self.vars.key(&f), c * BigInt::from(e[v]));
        }
        p
    }

    /// Evaluates at an integer point (one value per variable).
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars());
        let d = self.mdeg();
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&d.partial)
            .map(|(x, &dv)| {
                let mut p = Vec::with_capacity(dv as usize + 1);
                p.push(BigInt::one());
                for i in 0..dv as usize {
                    let next = &p[i] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    t *= &powers[v][ev as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_i64(&self, point: &[i64]) -> BigInt {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.eval(&p)
    }

    /// Substitutes integer values for the variables marked `Some`; the result
    /// stays over the same table.
    pub fn specialize(&self, values: &[Option<BigInt>]) -> Self {
        assert_eq!(values.len(), self.nvars());
        let mut p = Self::zero(&self.vars);
        for (e, c) in self.terms() {
            let mut t = c.clone();
            let mut f = e.to_vec();
            for (v, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    if f[v] > 0 {
                        t *= num_traits::Pow::pow(x, f[v]);
                        f[v] = 0;
                    }
                }
            }
            p.add_term(&f, t);
        }
        p
    }

    /// Re-expresses the polynomial over `vars` using `map[old] = new`;
    /// variables mapped to `None` must not occur.
    pub fn remap(&self, vars: &Arc<VarTable>, map: &[Option<usize>]) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in self.terms() {
            let mut f = vec![0u32; vars.nvars()];
            for (v, &ev) in e.iter().enumerate() {
                if ev == 0 {
                    continue;
                }
                match map[v] {
                    Some(w) => f[w] += ev,
                    None => return Err(usage!("variable `{}` cannot be dropped", self.vars.name(v))),
                }
            }
            p.add_term(&f, c.clone());
        }
        Ok(p)
    }

    /// Substitutes `images[v]` (polynomials over `vars`) for each variable.
    pub fn compose(&self, vars: &Arc<VarTable>, images: &[MPoly]) -> Self {
        assert_eq!(images.len(), self.nvars());
        let d = self.mdeg();
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|g| vec![MPoly::one(vars), g.clone()]).collect();
        for v in 0..images.len() {
            while cache[v].len() <= d.partial[v] as usize {
                let next = &cache[v][cache[v].len() - 1] * &images[v];
                cache[v].push(next);
            }
        }
        let mut acc = MPoly::zero(vars);
        for (e, c) in self.terms() {
            let mut t = MPoly::constant(vars, c.clone());
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    t = &t * &cache[v][ev as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficients with respect to `v`: `self = Σ_k out[k] · v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.vars); self.degree_in(v) as usize + 1];
        for (e, c) in self.terms() {
            let k = e[v] as usize;
            let mut f = e.to_vec();
            f[v] = 0;
            out[k].terms.insert(self.vars.key(&f), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(vars: &Arc<VarTable>, v: usize, coeffs: &[MPoly]) -> Self {
        let mut p = MPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in c.terms() {
                let mut f = e.to_vec();
                f[v] += k as u32;
                p.add_term(&f, x.clone());
            }
        }
        p
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        check_same(self, g);
        let (ge, gc) = g.leading_term()?;
        let ge = ge.to_vec();
        let gc = gc.clone();
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(&ge).any(|(a, b)| a < b) {
                return None;
            }
            let (t, rem) = rc.div_rem(&gc);
            if !rem.is_zero() {
                return None;
            }
            let te: Vec<u32> = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
            let sub = g.mul_monomial(&te).scale(&t);
            r = &r - &sub;
            q.add_term(&te, t);
        }
        Some(q)
    }

    // ----- Kronecker packing --------------------------------------------

    /// Packs into a univariate polynomial over `target` (one variable):
    /// `y_1 → z`, `y_2 → z^{D_1+1}`, `y_3 → z^{(D_1+1)(D_2+1)}`, ...
    pub fn kronecker_pack(&self, caps: &[u32], target: &Arc<VarTable>) -> Result<MPoly> {
        if caps.len() != self.nvars() || target.nvars() != 1 {
            return Err(usage!("Kronecker packing needs one cap per variable and a univariate target"));
        }
        let radices = radices(caps)?;
        let mut p = MPoly::zero(target);
        for (e, c) in self.terms() {
            let mut z: u64 = 0;
            for (v, &ev) in e.iter().enumerate() {
                if ev > caps[v] {
                    return Err(precondition!("degree {ev} of `{}` exceeds cap {}", self.vars.name(v), caps[v]));
                }
                z += ev as u64 * radices[v];
            }
            p.add_term(&[z as u32], c.clone());
        }
        Ok(p)
    }

    /// Inverse of [`MPoly::kronecker_pack`] (mixed-radix digit split).
    pub fn kronecker_unpack(&self, caps: &[u32], vars: &Arc<VarTable>) -> Result<MPoly> {
        if caps.len() != vars.nvars() || self.nvars() != 1 {
            return Err(usage!("Kronecker unpacking needs a univariate input and one cap per variable"));
        }
        let radices = radices(caps)?;
        let limit = radices.last().map(|r| r * (*caps.last().unwrap() as u64 + 1)).unwrap_or(1);
        let mut p = MPoly::zero(vars);
        for (e, c) in self.terms() {
            let mut z = e[0] as u64;
            if z >= limit {
                return Err(precondition!("packed exponent {z} out of radix range {limit}"));
            }
            let mut f = vec![0u32; caps.len()];
            for v in (0..caps.len()).rev() {
                f[v] = (z / radices[v]) as u32;
                z %= radices[v];
            }
            p.add_term(&f, c.clone());
        }
        Ok(p)
    }

    // ----- GCD and square-free part ---------------------------------------

    /// Primitive GCD with positive leading coefficient.
    pub fn gcd(&self, other: &MPoly) -> Result<MPoly> {
        check_same(self, other);
        if self.is_zero() && other.is_zero() {
            return Err(usage!("gcd of two zero polynomials"));
        }
        Ok(gcd_prim(&self.normalize(), &other.normalize(), &mut ImageRng(0x2545_F491_4F6C_DD1D)).normalize())
    }

    /// `f / gcd(f, ∂f/∂x_1, ..., ∂f/∂x_ν)`, normalized.
    pub fn square_free_part(&self) -> Result<MPoly> {
        if self.is_zero() {
            return Err(usage!("square-free part of the zero polynomial"));
        }
        let f = self.normalize();
        let mut g = f.clone();
        for v in f.support_vars() {
            if g.is_constant() {
                break;
            }
            g = g.gcd(&f.derivative(v))?;
        }
        if g.is_constant() {
            return Ok(f);
        }
        let q = f.div_exact(&g).ok_or_else(|| crate::error::internal!("gcd does not divide"))?;
        Ok(q.normalize())
    }
}

fn radices(caps: &[u32]) -> Result<Vec<u64>> {
    let mut r = Vec::with_capacity(caps.len());
    let mut acc: u64 = 1;
    for &c in caps {
        r.push(acc);
        acc = acc.checked_mul(c as u64 + 1).filter(|&a| a <= MAX_EXP as u64 + 1).ok_or_else(|| {
            precondition!("Kronecker radix product exceeds the exponent range")
        })?;
    }
    Ok(r)
}

/// Small deterministic generator for GCD evaluation images.
struct ImageRng(u64);
impl ImageRng {
    fn next(&mut self) -> i64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 % 61) as i64 - 30
    }
}

/// Upper bound for `deg_v gcd(a, b)` from a univariate image, or `None`
/// if no good evaluation point was found.
fn image_degree_bound(a: &MPoly, b: &MPoly, v: usize, rng: &mut ImageRng) -> Option<usize> {
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let n = a.nvars();
    for _ in 0..4 {
        let point: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.next())).collect();
        let ia: Vec<BigInt> = ca.iter().map(|c| c.eval(&point)).collect();
        let ib: Vec<BigInt> = cb.iter().map(|c| c.eval(&point)).collect();
        if ia.last().is_some_and(|x| x.is_zero()) || ib.last().is_some_and(|x| x.is_zero()) {
            continue;
        }
        return Some(upoly::degree(&upoly::gcd(&ia, &ib)).unwrap_or(0));
    }
    None
}

/// GCD of a polynomial with all coefficients of `p` with respect to `v`.
fn gcd_with_coeffs(mut g: MPoly, p: &MPoly, v: usize, rng: &mut ImageRng) -> MPoly {
    let mut cs = p.coeffs_in(v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.nterms());
    for c in cs {
        if g.is_constant() {
            break;
        }
        g = gcd_prim(&g, &c, rng);
    }
    g
}

/// Content of `p` with respect to `v` (gcd of its coefficients).
fn content_in(p: &MPoly, v: usize, rng: &mut ImageRng) -> MPoly {
    let mut cs = p.coeffs_in(v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.nterms());
    let mut it = cs.into_iter();
    let mut g = it.next().map(|c| c.normalize()).unwrap_or_else(|| MPoly::zero(&p.vars));
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd_prim(&g, &c, rng);
    }
    g
}

/// Recursive GCD on primitive-ish inputs; returns a primitive polynomial
/// (normalized up to sign).
fn gcd_prim(a: &MPoly, b: &MPoly, rng: &mut ImageRng) -> MPoly {
    let vars = a.vars.clone();
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(&vars);
    }
    if a == b {
        return a.normalize();
    }
    let da = a.mdeg();
    let db = b.mdeg();
    // variables present in only one argument cannot occur in the gcd
    for v in 0..a.nvars() {
        if da.partial[v] > 0 && db.partial[v] == 0 {
            return gcd_with_coeffs(b.normalize(), a, v, rng).normalize();
        }
        if db.partial[v] > 0 && da.partial[v] == 0 {
            return gcd_with_coeffs(a.normalize(), b, v, rng).normalize();
        }
    }
    // common variables: use univariate images to rule out variables
    let common: Vec<usize> = (0..a.nvars()).filter(|&v| da.partial[v] > 0).collect();
    let mut main: Option<(usize, u32)> = None;
    for &v in &common {
        match image_degree_bound(a, b, v, rng) {
            Some(0) => {
                // gcd free of v: gcd of all v-coefficients of both
                let g = content_in(a, v, rng);
                return gcd_with_coeffs(g, b, v, rng).normalize();
            }
            _ => {
                let d = da.partial[v].max(db.partial[v]);
                if main.is_none_or(|(_, dm)| d < dm) {
                    main = Some((v, d));
                }
            }
        }
    }
    let (v, _) = main.expect("a common variable exists");
    prs_gcd(a, b, v, rng)
}

/// Primitive PRS in the main variable `v`.
fn prs_gcd(a: &MPoly, b: &MPoly, v: usize, rng: &mut ImageRng) -> MPoly {
    let vars = a.vars.clone();
    let ca = content_in(a, v, rng);
    let cb = content_in(b, v, rng);
    let c = gcd_prim(&ca, &cb, rng);
    let mut x: Vec<MPoly> = a.div_exact(&ca).expect("content divides").coeffs_in(v);
    let mut y: Vec<MPoly> = b.div_exact(&cb).expect("content divides").coeffs_in(v);
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() <= 1 {
            // y is free of v (and primitive) so the primitive gcd is trivial
            return c;
        }
        let r = pseudo_rem(&x, &y);
        if r.iter().all(|t| t.is_zero()) {
            let g = MPoly::from_coeffs_in(&vars, v, &y);
            let g = &g * &c;
            return g.normalize();
        }
        let rp = MPoly::from_coeffs_in(&vars, v, &r);
        let cr = content_in(&rp, v, rng);
        let rp = rp.div_exact(&cr).expect("content divides");
        x = y;
        y = rp.coeffs_in(v);
    }
}

fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<MPoly> = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            let t = &lr * &b[j];
            r[dr - db + j] = &r[dr - db + j] - &t;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

// ----- operators ----------------------------------------------------------

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        check_same(self, rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut p = big.clone();
        for (k, c) in &small.terms {
            p.add_key(k.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        check_same(self, rhs);
        let mut p = self.clone();
        for (k, c) in &rhs.terms {
            p.add_key(k.clone(), -c);
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        check_same(self, rhs);
        let mut p = MPoly::zero(&self.vars);
        if self.is_zero() || rhs.is_zero() {
            return p;
        }
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // keys are additive, so the product key is the sum of keys
                let mut k = Vec::with_capacity(ka.len());
                for (x, y) in ka.iter().zip(kb) {
                    let s = x.checked_add(*y).filter(|&s| s <= MAX_EXP).expect("exponent overflow");
                    k.push(s);
                }
                p.add_key(k, ca * cb);
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &ev) in e.iter().enumerate() {
                match ev {
                    0 => {}
                    1 => factors.push(self.vars.name(v).to_string()),
                    _ => factors.push(alloc::format!("{}^{}", self.vars.name(v), ev)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<VarTable> {
        VarTable::single_block(&["x", "y"])
    }

    fn p(vars: &Arc<VarTable>, terms: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(vars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn arithmetic_and_printing() {
        let v = xy();
        let x = MPoly::var(&v, 0);
        let one = MPoly::one(&v);
        assert_eq!((&(&x + &one) + &(-&x)), one);
        assert_eq!((&(&x + &one) * &(&x - &one)).to_string(), "x^2 - 1");
        let y = MPoly::var(&v, 1);
        assert_eq!((&x + &y).pow(2).to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(MPoly::zero(&v).to_string(), "0");
        assert_eq!(p(&v, &[(&[1, 0], 5), (&[0, 0], -3)]).bitsize(), 3);
    }

    #[test]
    fn canonical_order_of_chow_line() {
        let v = VarTable::from_blocks(&[vec!["u00", "u01"], vec!["u10", "u11"]]).unwrap();
        let f = p(&v, &[(&[0, 1, 1, 0], 1), (&[1, 0, 0, 1], -1)]).normalize();
        assert_eq!(f.to_string(), "u00*u11 - u01*u10");
    }

    #[test]
    fn multidegrees() {
        let v = VarTable::from_blocks(&[vec!["x0", "x1"], vec!["y0", "y1"]]).unwrap();
        let f = p(&v, &[(&[1, 0, 1, 0], 1), (&[0, 1, 0, 1], 1)]);
        assert!(f.is_multihomogeneous());
        assert_eq!(f.mdeg().blocks, vec![1, 1]);
        assert!(!p(&v, &[(&[1, 0, 0, 0], 1), (&[0, 0, 1, 0], 1)]).is_multihomogeneous());
        assert_eq!(p(&v, &[(&[2, 0, 0, 1], 1)]).mdeg().blocks, vec![2, 1]);
    }

    #[test]
    fn gcd_and_square_free() {
        let v = VarTable::single_block(&["x"]);
        let x = MPoly::var(&v, 0);
        let c = |k: i64| MPoly::from_int(&v, k);
        let a = &(&x - &c(1)) * &(&x + &c(2));
        let b = &(&x - &c(1)) * &(&x + &c(3));
        assert_eq!(a.gcd(&b).unwrap(), &x - &c(1));
        let f = &(&x - &c(1)).pow(2) * &(&x + &c(2));
        assert_eq!(f.square_free_part().unwrap(), a.normalize());
        let w = xy();
        let s = &MPoly::var(&w, 0) + &MPoly::var(&w, 1);
        assert_eq!(s.pow(3).square_free_part().unwrap(), s);
    }

    #[test]
    fn kronecker_small() {
        let v = xy();
        let z = VarTable::single_block(&["z"]);
        let f = &MPoly::var(&v, 0) + &MPoly::var(&v, 1);
        let g = f.kronecker_pack(&[1, 1], &z).unwrap();
        assert_eq!(g.to_string(), "z^2 + z");
        assert_eq!(g.kronecker_unpack(&[1, 1], &v).unwrap(), f);
        assert!(MPoly::var(&v, 0).pow(2).kronecker_pack(&[1, 1], &z).is_err());
    }
}
