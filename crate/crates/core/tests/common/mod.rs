//! Reference implementations used as oracles. Nothing here calls into the
//! library's algorithms; only element construction and payload access.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cline_lab::{RingContext, RingElem};

pub type Mat = Vec<Vec<BigRational>>;

pub fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_mat(e: &RingElem) -> Mat {
    let n = e.dim();
    let flat = e.rational_entries().expect("rational element");
    flat.chunks(n).map(|row| row.to_vec()).collect()
}

pub fn from_mat(m: &Mat) -> RingElem {
    let ctx = RingContext::rationals(m.len()).unwrap();
    RingElem::from_rationals(ctx, m.iter().flatten().cloned().collect()).unwrap()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { r(1) } else { r(0) }).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).fold(r(0), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Gauss–Jordan on `[m | I]`.
pub fn gauss_inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m.iter().zip(identity(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, p);
        let pivot = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let pivot_row = aug[col].clone();
                for (v, pv) in aug[i].iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by elimination with partial pivoting on nonzero entries.
pub fn det(m: &Mat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = r(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return r(0);
        };
        if p != col {
            a.swap(col, p);
            d = -d;
        }
        d *= &a[col][col];
        for i in col + 1..n {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (v, pv) in a[i].iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
    }
    d
}

/// Coefficients (ascending) of `det(tI - M)`, interpolated from its values
/// at `t = 0..=n` by Newton divided differences.
pub fn char_poly_interpolated(m: &Mat) -> Vec<BigRational> {
    let n = m.len();
    let xs: Vec<BigRational> = (0..=n as i64).map(r).collect();
    let mut dd: Vec<BigRational> = xs
        .iter()
        .map(|t| {
            let shifted: Mat = (0..n)
                .map(|i| (0..n).map(|j| if i == j { t - &m[i][j] } else { -m[i][j].clone() }).collect())
                .collect();
            det(&shifted)
        })
        .collect();
    for level in 1..=n {
        for i in (level..=n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand the Newton form into monomials
    let mut coeffs = vec![r(0); n + 1];
    for k in (0..=n).rev() {
        let mut next = vec![r(0); n + 1];
        for (i, c) in coeffs.iter().enumerate() {
            if i < n {
                next[i + 1] += c;
            }
            next[i] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

/// Small rationals `p/q` with `|p| <= 3`, `1 <= q <= 3`, zero one time in four.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    if rng.gen_range(0..4) == 0 {
        return r(0);
    }
    BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_mat(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    (0..n).map(|_| (0..n).map(|_| random_rational(rng)).collect()).collect()
}

/// 2x2 matrices over Z/2 packed as 4 bits `[m00 m01 m10 m11]`, most
/// significant first, matching lexicographic element order.
pub mod z2x2 {
    pub type M = u8;

    fn entry(m: M, i: usize, j: usize) -> u8 {
        (m >> (3 - (2 * i + j))) & 1
    }

    pub fn mul(a: M, b: M) -> M {
        let mut out = 0;
        for i in 0..2 {
            for j in 0..2 {
                let v = (entry(a, i, 0) & entry(b, 0, j)) ^ (entry(a, i, 1) & entry(b, 1, j));
                out |= v << (3 - (2 * i + j));
            }
        }
        out
    }

    pub fn prod(ms: &[M]) -> M {
        ms.iter().fold(0b1001, |acc, &m| mul(acc, m))
    }

    pub fn nil_index(m: M) -> Option<usize> {
        let mut p = 0b1001;
        for k in 1..=2 {
            p = mul(p, m);
            if p == 0 {
                return Some(k);
            }
        }
        None
    }
}

pub fn is_one(m: &Mat) -> bool {
    *m == identity(m.len())
}
