use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::context::RingContext;
use crate::error::{Error, Result};
use crate::linalg::{self, Dense, Rationals, Residues};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Data {
    Q(Dense<BigRational>),
    Z(Dense<u64>),
}

/// An element of a [`RingContext`]: a square matrix of exact rationals, or of
/// residues reduced into `[0, n)`. Payloads are always canonical, so derived
/// equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ctx: RingContext,
    data: Data,
}

/// Runs `$body` with `$s` bound to the scalar ops and `$m` to the payload.
macro_rules! unary {
    ($x:expr, |$s:ident, $m:ident| $body:expr) => {
        match &$x.data {
            Data::Q($m) => {
                let $s = &Rationals;
                Data::Q($body)
            }
            Data::Z($m) => {
                let $s = &Residues { modulus: $x.ctx.modulus().expect("residue payload") };
                Data::Z($body)
            }
        }
    };
}

macro_rules! binary {
    ($x:expr, $y:expr, |$s:ident, $l:ident, $r:ident| $body:expr) => {
        match (&$x.data, &$y.data) {
            (Data::Q($l), Data::Q($r)) => {
                let $s = &Rationals;
                Data::Q($body)
            }
            (Data::Z($l), Data::Z($r)) => {
                let $s = &Residues { modulus: $x.ctx.modulus().expect("residue payload") };
                Data::Z($body)
            }
            _ => unreachable!("contexts already checked"),
        }
    };
}

impl RingElem {
    pub(crate) fn from_data(ctx: RingContext, data: Data) -> Self {
        RingElem { ctx, data }
    }

    /// Rational matrix from row-major entries.
    pub fn from_rationals(ctx: RingContext, entries: Vec<BigRational>) -> Result<Self> {
        if ctx.modulus().is_some() {
            return Err(Error::MalformedElement(format!("{ctx} does not hold rational entries")));
        }
        let n = ctx.dim();
        if entries.len() != n * n {
            return Err(Error::MalformedElement(format!(
                "expected {} entries for {ctx}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(RingElem { ctx, data: Data::Q(Dense::from_vec(n, n, entries)) })
    }

    /// Element from row-major integer entries; residues are reduced.
    pub fn from_ints(ctx: RingContext, entries: &[i64]) -> Result<Self> {
        match ctx.modulus() {
            None => Self::from_rationals(ctx, entries.iter().map(|&v| BigRational::from_integer(v.into())).collect()),
            Some(m) => Self::from_residues(ctx, entries.iter().map(|&v| v.rem_euclid(m as i64) as u64).collect()),
        }
    }

    /// Residue element from row-major entries already in `[0, n)`.
    pub fn from_residues(ctx: RingContext, entries: Vec<u64>) -> Result<Self> {
        let Some(m) = ctx.modulus() else {
            return Err(Error::MalformedElement(format!("{ctx} does not hold residues")));
        };
        let n = ctx.dim();
        if entries.len() != n * n {
            return Err(Error::MalformedElement(format!(
                "expected {} entries for {ctx}, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&v| v >= m) {
            return Err(Error::MalformedElement(format!("residue {bad} not reduced mod {m}")));
        }
        Ok(RingElem { ctx, data: Data::Z(Dense::from_vec(n, n, entries)) })
    }

    pub fn zero(ctx: RingContext) -> Self {
        let n = ctx.dim();
        let data = match ctx.modulus() {
            None => Data::Q(Dense::zeros(&Rationals, n, n)),
            Some(m) => Data::Z(Dense::zeros(&Residues { modulus: m }, n, n)),
        };
        RingElem { ctx, data }
    }

    pub fn one(ctx: RingContext) -> Self {
        let n = ctx.dim();
        let data = match ctx.modulus() {
            None => Data::Q(Dense::identity(&Rationals, n)),
            Some(m) => Data::Z(Dense::identity(&Residues { modulus: m }, n)),
        };
        RingElem { ctx, data }
    }

    /// `q * 1` in a rational matrix ring.
    pub fn rational_scalar(ctx: RingContext, q: BigRational) -> Result<Self> {
        let n = ctx.dim();
        let mut entries = vec![BigRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = q.clone();
        }
        Self::from_rationals(ctx, entries)
    }

    /// The element at position `index` of the lexicographic enumeration of a
    /// finite ring (row-major entries, first entry most significant).
    pub fn from_index(ctx: RingContext, mut index: u64) -> Result<Self> {
        let m = ctx.modulus().ok_or(Error::Unsupported { op: "from_index", context: ctx.to_string() })?;
        if ctx.element_count().is_some_and(|c| index as u128 >= c) {
            return Err(Error::MalformedElement(format!("index {index} out of range for {ctx}")));
        }
        let len = ctx.dim() * ctx.dim();
        let mut entries = vec![0u64; len];
        for slot in entries.iter_mut().rev() {
            *slot = index % m;
            index /= m;
        }
        Self::from_residues(ctx, entries)
    }

    /// Inverse of [`RingElem::from_index`]; `None` for rational elements or
    /// when the index does not fit in `u64`.
    pub fn index(&self) -> Option<u64> {
        let m = self.ctx.modulus()? as u128;
        let Data::Z(d) = &self.data else { return None };
        let mut acc: u128 = 0;
        for &v in &d.data {
            acc = acc.checked_mul(m)?.checked_add(v as u128)?;
        }
        u64::try_from(acc).ok()
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub(crate) fn data(&self) -> &Data {
        &self.data
    }

    pub fn rational_entries(&self) -> Option<&[BigRational]> {
        match &self.data {
            Data::Q(d) => Some(&d.data),
            Data::Z(_) => None,
        }
    }

    pub fn residues(&self) -> Option<&[u64]> {
        match &self.data {
            Data::Z(d) => Some(&d.data),
            Data::Q(_) => None,
        }
    }

    /// Entries lifted to integers (residues) or numerator/denominator pairs
    /// rendered as strings, row-major.
    pub fn entry_strings(&self) -> Vec<String> {
        match &self.data {
            Data::Q(d) => d.data.iter().map(|q| q.to_string()).collect(),
            Data::Z(d) => d.data.iter().map(|v| v.to_string()).collect(),
        }
    }

    /// Reinterprets the payload in another context with the same shape and
    /// entry type (e.g. `M_3(F_2)` vs. `M_3(Z/2)`).
    pub fn recontext(&self, ctx: RingContext) -> Result<Self> {
        if ctx.dim() != self.ctx.dim() || ctx.modulus() != self.ctx.modulus() {
            return Err(self.mismatch_with(ctx));
        }
        Ok(RingElem { ctx, data: self.data.clone() })
    }

    fn mismatch_with(&self, other: RingContext) -> Error {
        Error::ContextMismatch { left: self.ctx.to_string(), right: other.to_string() }
    }

    pub(crate) fn same_context(&self, other: &RingElem) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(self.mismatch_with(other.ctx));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElem) -> Result<Self> {
        self.same_context(other)?;
        Ok(RingElem { ctx: self.ctx, data: binary!(self, other, |s, l, r| linalg::add(s, l, r)) })
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<Self> {
        self.same_context(other)?;
        Ok(RingElem { ctx: self.ctx, data: binary!(self, other, |s, l, r| linalg::sub(s, l, r)) })
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<Self> {
        self.same_context(other)?;
        Ok(RingElem { ctx: self.ctx, data: binary!(self, other, |s, l, r| linalg::mul(s, l, r)) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RingElem::one(self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer multiple `k * self`.
    pub fn scale_int(&self, k: i64) -> Self {
        let data = match &self.data {
            Data::Q(d) => Data::Q(linalg::scale(&Rationals, &BigRational::from_integer(k.into()), d)),
            Data::Z(d) => {
                let m = self.ctx.modulus().expect("residue payload");
                Data::Z(linalg::scale(&Residues { modulus: m }, &(k.rem_euclid(m as i64) as u64), d))
            }
        };
        RingElem { ctx: self.ctx, data }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Q(d) => linalg::is_zero_matrix(&Rationals, d),
            Data::Z(d) => d.data.iter().all(|&v| v == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == RingElem::one(self.ctx)
    }

    pub fn commutes_with(&self, other: &RingElem) -> bool {
        (self * other) == (other * self)
    }

    /// Runs a field-only computation; `None` when the context is not a
    /// matrix ring over a field.
    pub(crate) fn with_field<T>(
        &self,
        q: impl FnOnce(&Rationals, &Dense<BigRational>) -> T,
        z: impl FnOnce(&Residues, &Dense<u64>) -> T,
    ) -> Option<T> {
        self.ctx.linear_field()?;
        Some(match &self.data {
            Data::Q(d) => q(&Rationals, d),
            Data::Z(d) => z(&Residues { modulus: self.ctx.modulus().expect("residues") }, d),
        })
    }

    /// Rank over the scalar field.
    pub fn rank(&self) -> Option<usize> {
        self.with_field(linalg::rank, linalg::rank)
    }

    pub(crate) fn field_inverse(&self) -> Option<RingElem> {
        let data =
            self.with_field(|s, d| linalg::inverse(s, d).map(Data::Q), |s, d| linalg::inverse(s, d).map(Data::Z))??;
        Some(RingElem { ctx: self.ctx, data })
    }

    /// Some `g` with `self * g * self == self`.
    pub(crate) fn inner_inverse(&self) -> Option<RingElem> {
        let data =
            self.with_field(|s, d| Data::Q(linalg::inner_inverse(s, d)), |s, d| Data::Z(linalg::inner_inverse(s, d)))?;
        Some(RingElem { ctx: self.ctx, data })
    }

    /// Residue entries lifted to integers.
    pub(crate) fn lifted_integers(&self) -> Option<Vec<BigInt>> {
        self.residues().map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { ctx: self.ctx, data: unary!(self, |s, m| linalg::neg(s, m)) }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

/// Operator forms panic on a context mismatch; use the `try_*` methods when
/// operands come from untrusted input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).expect("ring operands must share a context")
            }
        }
        impl $trait<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

/// Product of a sequence of factors, left to right.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a RingElem>) -> RingElem {
    let mut it = factors.into_iter();
    let first = it.next().expect("product of at least one factor").clone();
    it.fold(first, |acc, x| &acc * x)
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let entries = self.entry_strings();
        if n == 1 {
            return write!(f, "{}", entries[0]);
        }
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", entries[i * n..(i + 1) * n].join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(v: &[i64]) -> RingElem {
        RingElem::from_ints(RingContext::rationals(2).unwrap(), v).unwrap()
    }

    #[test]
    fn index_roundtrip_is_lexicographic() {
        let ctx = RingContext::matrix_ring(2, 2).unwrap();
        let e = RingElem::from_index(ctx, 0b1000).unwrap();
        assert_eq!(e.residues().unwrap(), &[1, 0, 0, 0]);
        for i in 0..16 {
            assert_eq!(RingElem::from_index(ctx, i).unwrap().index(), Some(i));
        }
        assert!(RingElem::from_index(ctx, 16).is_err());
    }

    #[test]
    fn residues_are_reduced_on_construction() {
        let ctx = RingContext::zmod(4).unwrap();
        assert_eq!(RingElem::from_ints(ctx, &[-1]).unwrap().residues().unwrap(), &[3]);
        assert!(RingElem::from_residues(ctx, vec![4]).is_err());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let ctx = RingContext::rationals(1).unwrap();
        let half = RingElem::from_rationals(ctx, vec![BigRational::new(2.into(), 4.into())]).unwrap();
        let other = RingElem::from_rationals(ctx, vec![BigRational::new((-1).into(), (-2).into())]).unwrap();
        assert_eq!(half, other);
        assert_eq!(half.entry_strings(), vec!["1/2"]);
    }

    #[test]
    fn arithmetic_and_powers() {
        let x = q2(&[0, 1, 0, 0]);
        assert!(x.pow(2).is_zero());
        assert!(x.pow(0).is_one());
        let y = q2(&[1, 2, 3, 4]);
        assert_eq!(&y * &y, q2(&[7, 10, 15, 22]));
        assert_eq!(&(&y - &y), &RingElem::zero(y.context()));
        assert_eq!(-&x + &x, RingElem::zero(x.context()));
        assert_eq!(y.scale_int(-2), q2(&[-2, -4, -6, -8]));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = q2(&[1, 0, 0, 1]);
        let b = RingElem::one(RingContext::matrix_ring(2, 2).unwrap());
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn recontext_between_field_and_finite_views() {
        let f = RingContext::prime_field(2, 2).unwrap();
        let e = RingElem::from_ints(f, &[1, 1, 0, 1]).unwrap();
        let g = e.recontext(f.as_finite().unwrap()).unwrap();
        assert_eq!(g.residues(), e.residues());
        assert!(e.recontext(RingContext::rationals(2).unwrap()).is_err());
    }

    #[test]
    fn display_matrix() {
        assert_eq!(q2(&[1, 2, 3, 4]).to_string(), "[1 2; 3 4]");
    }
}
