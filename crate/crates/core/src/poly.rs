//! Dense univariate polynomials over `Q`, just enough for squarefree parts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Coefficients in ascending degree; never has a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![BigRational::one()] }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => Poly { coeffs: self.coeffs.iter().map(|c| c / l).collect() },
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect(),
        )
    }

    /// Multiplicity of the root 0 and the cofactor `p / x^m`.
    pub fn strip_zero_root(&self) -> (usize, Poly) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m, Poly { coeffs: self.coeffs[m..].to_vec() })
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let q = &rem[top] / lead;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[top - dd + i] -= &q * c;
                }
            }
            quot[top - dd] = q;
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Rational roots, by the rational root test on the integer-cleared
    /// polynomial. Returns `None` when the candidate divisors are too large
    /// to enumerate.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        let (m, rest) = self.strip_zero_root();
        let mut roots = Vec::new();
        if m > 0 {
            roots.push(BigRational::zero());
        }
        if rest.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let denom = rest.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest.coeffs.iter().map(|c| (c * &denom).to_integer()).collect();
        let ps = small_divisors(ints.first()?)?;
        let qs = small_divisors(ints.last()?)?;
        let mut found = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if !found.contains(&r) && rest.eval(&r).is_zero() {
                        found.push(r);
                    }
                }
            }
        }
        roots.extend(found);
        roots.sort();
        Some(roots)
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n: u64 = n.abs().try_into().ok().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// `x^3 - 1/2x + 2`; the zero polynomial prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            let abs = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if abs.is_one() && i > 0 {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as coefficient strings, highest degree first.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().rev().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_round_trip() {
        let a = Poly::from_ints(&[-1, 0, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, Poly::from_ints(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = Poly::from_ints(&[1, 0, 1]).div_rem(&Poly::from_ints(&[0, 2]));
        assert_eq!(quot, Poly::new(vec![q(0, 1), q(1, 2)]));
        assert_eq!(rem, Poly::one());
    }

    #[test]
    fn squarefree_of_repeated_roots() {
        // (x - 1)^2 (x + 2)^3
        let p = &(&Poly::from_ints(&[1, -2, 1]) * &Poly::from_ints(&[2, 1])) * &Poly::from_ints(&[4, 4, 1]);
        assert_eq!(p.squarefree_part(), Poly::from_ints(&[-2, 1, 1]));
        assert!(!p.is_squarefree());
        assert!(p.squarefree_part().is_squarefree());
    }

    #[test]
    fn zero_root_strip() {
        let (m, rest) = Poly::from_ints(&[0, 0, 3, 1]).strip_zero_root();
        assert_eq!(m, 2);
        assert_eq!(rest, Poly::from_ints(&[3, 1]));
    }

    #[test]
    fn finds_rational_roots() {
        // (2x - 1)(x + 3)(x^2 + 1) x
        let p = &(&(&Poly::from_ints(&[-1, 2]) * &Poly::from_ints(&[3, 1])) * &Poly::from_ints(&[1, 0, 1]))
            * &Poly::from_ints(&[0, 1]);
        assert_eq!(p.rational_roots().unwrap(), vec![q(-3, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[2, -1, 0, 1]).to_string(), "x^3 - x + 2");
        assert_eq!(Poly::new(vec![q(0, 1), q(-1, 2)]).to_string(), "-1/2x");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
