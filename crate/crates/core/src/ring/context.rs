use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest modulus accepted for residue rings; keeps every product of two
/// residues inside a `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    PrimeField(u64),
}

/// Rings whose elements can be listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteRing {
    ZMod(u64),
    MatrixRing { modulus: u64, size: usize },
}

/// The ambient ring an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingContext {
    /// Square matrices of the given size over an exact field.
    MatrixOverField {
        field: Field,
        size: usize,
    },
    Finite(FiniteRing),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(n: u64) -> Result<()> {
    if !(2..MAX_MODULUS).contains(&n) {
        return Err(Error::InvalidContext(format!("modulus {n} outside [2, 2^32)")));
    }
    Ok(())
}

fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidContext("matrix size must be positive".into()));
    }
    Ok(())
}

impl RingContext {
    pub fn rationals(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(RingContext::MatrixOverField { field: Field::Rationals, size })
    }

    pub fn prime_field(p: u64, size: usize) -> Result<Self> {
        check_modulus(p)?;
        check_size(size)?;
        if !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        Ok(RingContext::MatrixOverField { field: Field::PrimeField(p), size })
    }

    pub fn zmod(n: u64) -> Result<Self> {
        check_modulus(n)?;
        Ok(RingContext::Finite(FiniteRing::ZMod(n)))
    }

    pub fn matrix_ring(modulus: u64, size: usize) -> Result<Self> {
        check_modulus(modulus)?;
        check_size(size)?;
        Ok(RingContext::Finite(FiniteRing::MatrixRing { modulus, size }))
    }

    /// Side length of the payload matrix (1 for `ZMod`).
    pub fn dim(&self) -> usize {
        match *self {
            RingContext::MatrixOverField { size, .. } => size,
            RingContext::Finite(FiniteRing::ZMod(_)) => 1,
            RingContext::Finite(FiniteRing::MatrixRing { size, .. }) => size,
        }
    }

    /// Residue modulus of the entries, `None` for rational matrices.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingContext::MatrixOverField { field: Field::Rationals, .. } => None,
            RingContext::MatrixOverField { field: Field::PrimeField(p), .. } => Some(p),
            RingContext::Finite(FiniteRing::ZMod(n)) => Some(n),
            RingContext::Finite(FiniteRing::MatrixRing { modulus, .. }) => Some(modulus),
        }
    }

    /// Number of ring elements, `None` when infinite.
    pub fn element_count(&self) -> Option<u128> {
        let m = self.modulus()? as u128;
        let exp = (self.dim() * self.dim()) as u32;
        Some(m.checked_pow(exp).unwrap_or(u128::MAX))
    }

    pub fn is_finite_ring(&self) -> bool {
        matches!(self, RingContext::Finite(_))
    }

    /// The scalar field when this ring is a full matrix ring over a field
    /// (rational matrices, or residue matrices with a prime modulus).
    pub fn linear_field(&self) -> Option<Field> {
        match *self {
            RingContext::MatrixOverField { field, .. } => Some(field),
            RingContext::Finite(_) => {
                let p = self.modulus()?;
                is_prime(p).then_some(Field::PrimeField(p))
            }
        }
    }

    /// Whether this ring can be enumerated within `budget` elements.
    pub fn enumerable(&self, budget: u64) -> bool {
        self.element_count().is_some_and(|c| c <= budget as u128)
    }

    /// The same set of matrices viewed as an enumerable finite ring.
    pub fn as_finite(&self) -> Option<RingContext> {
        match *self {
            RingContext::MatrixOverField { field: Field::PrimeField(p), size } => {
                Some(RingContext::Finite(FiniteRing::MatrixRing { modulus: p, size }))
            }
            RingContext::MatrixOverField { .. } => None,
            finite => Some(finite),
        }
    }

    /// The same set of matrices viewed as a matrix ring over a prime field.
    pub fn as_field_matrices(&self) -> Option<RingContext> {
        match (*self, self.linear_field()?) {
            (ctx @ RingContext::MatrixOverField { .. }, _) => Some(ctx),
            (ctx, field) => Some(RingContext::MatrixOverField { field, size: ctx.dim() }),
        }
    }

    /// Short machine name used by the sweep CLI (`z8`, `mat2z2`, ...).
    pub fn short_name(&self) -> String {
        match *self {
            RingContext::MatrixOverField { field: Field::Rationals, size } => format!("q{size}"),
            RingContext::MatrixOverField { field: Field::PrimeField(p), size } => {
                format!("fp{p}x{size}")
            }
            RingContext::Finite(FiniteRing::ZMod(n)) => format!("z{n}"),
            RingContext::Finite(FiniteRing::MatrixRing { modulus, size }) => {
                format!("mat{size}z{modulus}")
            }
        }
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingContext::MatrixOverField { field: Field::Rationals, size } => write!(f, "M_{size}(Q)"),
            RingContext::MatrixOverField { field: Field::PrimeField(p), size } => {
                write!(f, "M_{size}(F_{p})")
            }
            RingContext::Finite(FiniteRing::ZMod(n)) => write!(f, "Z/{n}"),
            RingContext::Finite(FiniteRing::MatrixRing { modulus, size }) => {
                write!(f, "M_{size}(Z/{modulus})")
            }
        }
    }
}

/// Parses the short ring names accepted by the CLI: `z<n>` or `zmod<n>` for
/// residues, `mat<m>z<n>` for `m x m` matrices over `Z/n`.
impl FromStr for RingContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidContext(format!("unrecognised ring name `{s}`"));
        let lower = s.trim().to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("mat") {
            let (size, modulus) = rest.split_once('z').ok_or_else(bad)?;
            let size = size.parse().map_err(|_| bad())?;
            let modulus = modulus.parse().map_err(|_| bad())?;
            return RingContext::matrix_ring(modulus, size);
        }
        let digits = lower.strip_prefix("zmod").or_else(|| lower.strip_prefix('z')).ok_or_else(bad)?;
        RingContext::zmod(digits.parse().map_err(|_| bad())?)
    }
}

/// Enumeration limits. The element budget bounds any listing of a ring; the
/// triple budget bounds exhaustive sweeps over `R^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub elements: u64,
    pub triples: u64,
}

pub const BUDGET_ENV: &str = "CLINE_LAB_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget { elements: 1 << 20, triples: 1 << 24 }
    }
}

impl Budget {
    /// Default budget, with both limits replaced by `CLINE_LAB_BUDGET` when
    /// that variable holds an integer.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(v) => Budget { elements: v, triples: v },
            None => Budget::default(),
        }
    }

    pub(crate) fn check_elements(&self, ctx: &RingContext) -> Result<u64> {
        match ctx.element_count() {
            Some(c) if c <= self.elements as u128 => Ok(c as u64),
            Some(c) => Err(Error::BudgetExceeded { needed: c, budget: self.elements }),
            None => Err(Error::Unsupported { op: "enumeration", context: ctx.to_string() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts() {
        assert_eq!(RingContext::zmod(8).unwrap().element_count(), Some(8));
        assert_eq!(RingContext::matrix_ring(2, 2).unwrap().element_count(), Some(16));
        assert_eq!(RingContext::matrix_ring(4, 2).unwrap().element_count(), Some(256));
        assert_eq!(RingContext::matrix_ring(2, 6).unwrap().element_count(), Some(1 << 36));
        assert_eq!(RingContext::rationals(3).unwrap().element_count(), None);
    }

    #[test]
    fn parse_short_names() {
        assert_eq!("mat2z2".parse::<RingContext>().unwrap(), RingContext::matrix_ring(2, 2).unwrap());
        assert_eq!("z8".parse::<RingContext>().unwrap(), RingContext::zmod(8).unwrap());
        assert_eq!("zmod4".parse::<RingContext>().unwrap(), RingContext::zmod(4).unwrap());
        assert!("q3".parse::<RingContext>().is_err());
        assert!("mat2".parse::<RingContext>().is_err());
        for name in ["z8", "mat3z2"] {
            assert_eq!(name.parse::<RingContext>().unwrap().short_name(), name);
        }
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(RingContext::prime_field(4, 2).is_err());
        assert!(RingContext::zmod(1).is_err());
        assert!(RingContext::rationals(0).is_err());
    }

    #[test]
    fn linear_field_views() {
        let m = RingContext::matrix_ring(2, 3).unwrap();
        assert_eq!(m.linear_field(), Some(Field::PrimeField(2)));
        assert_eq!(m.as_field_matrices(), Some(RingContext::prime_field(2, 3).unwrap()));
        assert_eq!(RingContext::matrix_ring(4, 2).unwrap().linear_field(), None);
        assert_eq!(RingContext::prime_field(2, 3).unwrap().as_finite(), Some(m));
    }

    #[test]
    fn budget_defaults() {
        let b = Budget::default();
        assert_eq!(b.elements, 1 << 20);
        assert_eq!(b.triples, 1 << 24);
        assert!(b.check_elements(&RingContext::matrix_ring(4, 2).unwrap()).is_ok());
        assert!(matches!(
            b.check_elements(&RingContext::matrix_ring(2, 6).unwrap()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
