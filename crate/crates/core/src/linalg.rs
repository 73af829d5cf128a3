//! Dense exact linear algebra over the two scalar families used by the crate:
//! arbitrary-precision rationals and residues modulo an integer.
//!
//! Elimination routines (`rref`, `rank`, `inverse`, `nullspace`,
//! `inner_inverse`) require the scalars to form a field; callers only invoke
//! them with `Rationals` or with `Residues` over a prime modulus.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait Scalars: Sync {
    type E: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn sub(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    /// Two-sided inverse if `x` is a unit of the scalar ring.
    fn inv(&self, x: &Self::E) -> Option<Self::E>;
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rationals;

impl Scalars for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn sub(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x - y
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * y
    }
    fn neg(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn inv(&self, x: &BigRational) -> Option<BigRational> {
        (!x.is_zero()).then(|| x.recip())
    }
}

/// Residues modulo `modulus`, stored canonically in `[0, modulus)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Residues {
    pub modulus: u64,
}

impl Scalars for Residues {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 + *y as u128) % self.modulus as u128) as u64
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 + (self.modulus - *y) as u128) % self.modulus as u128) as u64
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 * *y as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.modulus - *x
        }
    }
    fn inv(&self, x: &u64) -> Option<u64> {
        let egcd = (*x as i128).extended_gcd(&(self.modulus as i128));
        (egcd.gcd == 1).then(|| egcd.x.rem_euclid(self.modulus as i128) as u64)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Dense<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(rows * cols, data.len(), "dense shape mismatch");
        Dense { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn zeros<S: Scalars<E = E>>(s: &S, rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![s.zero(); rows * cols] }
    }

    pub fn identity<S: Scalars<E = E>>(s: &S, n: usize) -> Self {
        let mut m = Self::zeros(s, n, n);
        for i in 0..n {
            m.set(i, i, s.one());
        }
        m
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }
}

pub(crate) fn is_zero_matrix<S: Scalars>(s: &S, m: &Dense<S::E>) -> bool {
    m.data.iter().all(|x| s.is_zero(x))
}

pub(crate) fn add<S: Scalars>(s: &S, a: &Dense<S::E>, b: &Dense<S::E>) -> Dense<S::E> {
    debug_assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| s.add(x, y)).collect();
    Dense::from_vec(a.rows, a.cols, data)
}

pub(crate) fn sub<S: Scalars>(s: &S, a: &Dense<S::E>, b: &Dense<S::E>) -> Dense<S::E> {
    debug_assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| s.sub(x, y)).collect();
    Dense::from_vec(a.rows, a.cols, data)
}

pub(crate) fn neg<S: Scalars>(s: &S, a: &Dense<S::E>) -> Dense<S::E> {
    Dense::from_vec(a.rows, a.cols, a.data.iter().map(|x| s.neg(x)).collect())
}

pub(crate) fn scale<S: Scalars>(s: &S, k: &S::E, a: &Dense<S::E>) -> Dense<S::E> {
    Dense::from_vec(a.rows, a.cols, a.data.iter().map(|x| s.mul(k, x)).collect())
}

/// Matrix product. Zero entries of the left factor are skipped, which keeps
/// products of sparse operator truncations cheap.
pub(crate) fn mul<S: Scalars>(s: &S, a: &Dense<S::E>, b: &Dense<S::E>) -> Dense<S::E> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = Dense::zeros(s, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if s.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if s.is_zero(bkj) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = s.add(&out.data[idx], &s.mul(aik, bkj));
            }
        }
    }
    out
}

/// Reduced row echelon form of `m`.
pub(crate) struct Rref<E> {
    pub reduced: Dense<E>,
    pub pivots: Vec<usize>,
    /// Invertible `P` with `P * m = reduced`, when requested.
    pub transform: Option<Dense<E>>,
}

/// Gauss-Jordan elimination. Pivots are taken in column order, choosing the
/// first row with a nonzero entry.
pub(crate) fn rref<S: Scalars>(s: &S, m: &Dense<S::E>, track: bool) -> Rref<S::E> {
    let mut r = m.clone();
    let mut p = track.then(|| Dense::identity(s, m.rows));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r.cols {
        if row == r.rows {
            break;
        }
        let Some(found) = (row..r.rows).find(|&i| !s.is_zero(r.get(i, col))) else {
            continue;
        };
        r.swap_rows(row, found);
        if let Some(p) = p.as_mut() {
            p.swap_rows(row, found);
        }
        let inv = s.inv(r.get(row, col)).expect("elimination requires field scalars");
        scale_row(s, &mut r, row, &inv);
        if let Some(p) = p.as_mut() {
            scale_row(s, p, row, &inv);
        }
        for i in 0..r.rows {
            if i == row || s.is_zero(r.get(i, col)) {
                continue;
            }
            let factor = r.get(i, col).clone();
            eliminate(s, &mut r, i, row, &factor);
            if let Some(p) = p.as_mut() {
                eliminate(s, p, i, row, &factor);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { reduced: r, pivots, transform: p }
}

fn scale_row<S: Scalars>(s: &S, m: &mut Dense<S::E>, row: usize, k: &S::E) {
    for c in 0..m.cols {
        let idx = row * m.cols + c;
        m.data[idx] = s.mul(k, &m.data[idx]);
    }
}

/// `row_i -= factor * row_j`
fn eliminate<S: Scalars>(s: &S, m: &mut Dense<S::E>, i: usize, j: usize, factor: &S::E) {
    for c in 0..m.cols {
        let src = m.get(j, c);
        if s.is_zero(src) {
            continue;
        }
        let delta = s.mul(factor, src);
        let idx = i * m.cols + c;
        m.data[idx] = s.sub(&m.data[idx], &delta);
    }
}

pub(crate) fn rank<S: Scalars>(s: &S, m: &Dense<S::E>) -> usize {
    rref(s, m, false).pivots.len()
}

pub(crate) fn inverse<S: Scalars>(s: &S, m: &Dense<S::E>) -> Option<Dense<S::E>> {
    assert_eq!(m.rows, m.cols);
    let r = rref(s, m, true);
    (r.pivots.len() == m.rows).then(|| r.transform.expect("tracked"))
}

/// A basis of `{ v : m v = 0 }`.
pub(crate) fn nullspace<S: Scalars>(s: &S, m: &Dense<S::E>) -> Vec<Vec<S::E>> {
    let r = rref(s, m, false);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&free| !is_pivot[free])
        .map(|free| {
            let mut v = vec![s.zero(); m.cols];
            v[free] = s.one();
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = s.neg(r.reduced.get(row, free));
            }
            v
        })
        .collect()
}

/// Some `G` with `m G m = m`, built from the pivot structure of the RREF:
/// if `P m = R` then `G = G0 P` where `G0` places a one at
/// `(pivot_col_i, i)` for each pivot row `i`.
pub(crate) fn inner_inverse<S: Scalars>(s: &S, m: &Dense<S::E>) -> Dense<S::E> {
    let r = rref(s, m, true);
    let mut g0 = Dense::zeros(s, m.cols, m.rows);
    for (i, &col) in r.pivots.iter().enumerate() {
        g0.set(col, i, s.one());
    }
    mul(s, &g0, &r.transform.expect("tracked"))
}

/// Incrementally maintained echelon basis of a vector space, used for span
/// membership tests.
pub(crate) struct EchelonBasis<'s, S: Scalars> {
    scalars: &'s S,
    rows: Vec<(usize, Vec<S::E>)>,
}

impl<'s, S: Scalars> EchelonBasis<'s, S> {
    pub fn new(scalars: &'s S) -> Self {
        EchelonBasis { scalars, rows: Vec::new() }
    }

    fn reduce(&self, v: &[S::E]) -> Vec<S::E> {
        let s = self.scalars;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if s.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !s.is_zero(r) {
                    *x = s.sub(x, &s.mul(&factor, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[S::E]) -> bool {
        self.reduce(v).iter().all(|x| self.scalars.is_zero(x))
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[S::E]) -> bool {
        let s = self.scalars;
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !s.is_zero(x)) else {
            return false;
        };
        let inv = s.inv(&v[pivot]).expect("span tests require field scalars");
        for x in v.iter_mut() {
            *x = s.mul(&inv, x);
        }
        for (_, row) in self.rows.iter_mut() {
            if s.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !s.is_zero(y) {
                    *x = s.sub(x, &s.mul(&factor, y));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub(crate) fn bareiss_det(n: usize, mut m: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    sign * &m[n * n - 1]
}
