//! Characteristic polynomials and nonzero spectra of rational matrices.
//!
//! Two matrices have the same nonzero spectrum exactly when the squarefree
//! parts of their characteristic polynomials agree after the factors of
//! `x` are removed, so spectra are compared without leaving `Q`.
//!
//! For a finite matrix every `lambda - M` is Drazin invertible, so the Drazin
//! spectrum is empty; [`drazin_spectrum_matrix`] returns that empty set
//! together with certificates at the shifts where it could fail.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cline::check_hypothesis;
use crate::drazin::{drazin_matrix, gdrazin, DrazinCertificate};
use crate::error::{Error, Result};
use crate::linalg::{mul, Dense, Rationals};
use crate::poly::Poly;
use crate::ring::{Budget, Field, RingContext, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumDescriptor {
    /// `det(xI - M)`, monic of degree `n`.
    pub char_poly: Poly,
    /// Monic squarefree part of `char_poly / x^zero_multiplicity`.
    pub reduced: Poly,
    pub zero_multiplicity: usize,
}

fn rational_dense(m: &RingElem) -> Result<Dense<BigRational>> {
    let ctx = m.context();
    if !matches!(ctx, RingContext::MatrixOverField { field: Field::Rationals, .. }) {
        return Err(Error::Unsupported { op: "char_poly", context: ctx.to_string() });
    }
    let n = ctx.dim();
    Ok(Dense::from_vec(n, n, m.rational_entries().unwrap().to_vec()))
}

/// Faddeev–LeVerrier: `N_k = M N_{k-1} + c_{n-k+1} I`,
/// `c_{n-k} = -tr(M N_k) / k`. `M` stays on the left so sparse inputs are
/// cheap.
fn faddeev_leverrier(m: &Dense<BigRational>) -> Poly {
    let n = m.rows;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut acc = Dense::zeros(&Rationals, n, n);
    for k in 1..=n {
        let mut next = mul(&Rationals, m, &acc);
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let mut trace = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                let mij = m.get(i, j);
                if !mij.is_zero() {
                    trace += mij * next.get(j, i);
                }
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(k.into());
        acc = next;
    }
    Poly::new(coeffs)
}

pub fn char_poly(m: &RingElem) -> Result<SpectrumDescriptor> {
    let char_poly = faddeev_leverrier(&rational_dense(m)?);
    let (zero_multiplicity, rest) = char_poly.strip_zero_root();
    Ok(SpectrumDescriptor { reduced: rest.squarefree_part(), char_poly, zero_multiplicity })
}

/// Whether `M1` and `M2` (possibly of different sizes) share their nonzero
/// eigenvalues, as sets.
pub fn nonzero_spectrum_equal(m1: &RingElem, m2: &RingElem) -> Result<bool> {
    Ok(char_poly(m1)?.reduced == char_poly(m2)?.reduced)
}

/// Finite sections of three shift-like operators on sequences:
///
/// ```text
/// A(x1, x2, x3, x4, ...) = (0, x2, 0, x4, ...)
/// B(x1, x2, x3, x4, ...) = (0, x1, x2, x4, x5, ...)
/// C(x1, x2, x3, x4, ...) = (0, 0, x1, x4, x5, ...)
/// ```
///
/// `A` keeps the even coordinates; `B` and `C` act as shown on the first
/// three coordinates and as the identity from the fourth on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedOperatorTriple {
    pub n: usize,
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
}

pub fn build_example_triple(n: usize) -> Result<TruncatedOperatorTriple> {
    if n < 4 {
        return Err(Error::InvalidContext(format!("truncation size {n} < 4")));
    }
    let ctx = RingContext::rationals(n)?;
    let matrix = |pairs: &mut dyn Iterator<Item = (usize, usize)>| {
        let mut v = vec![0i64; n * n];
        for (row, col) in pairs {
            v[row * n + col] = 1;
        }
        RingElem::from_ints(ctx, &v)
    };
    let a = matrix(&mut (1..n).step_by(2).map(|i| (i, i)))?;
    let b = matrix(&mut [(1, 0), (2, 1)].into_iter().chain((3..n).map(|i| (i, i))))?;
    let c = matrix(&mut [(2, 0)].into_iter().chain((3..n).map(|i| (i, i))))?;
    if &(&a * &b) * &a != &(&a * &c) * &a {
        return Err(Error::CertificationFailed(format!("ABA != ACA at truncation size {n}")));
    }
    Ok(TruncatedOperatorTriple { n, a, b, c })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub n: usize,
    pub aba_eq_aca: bool,
    pub hypothesis_holds: bool,
    pub char_poly_ac: SpectrumDescriptor,
    pub char_poly_ba: SpectrumDescriptor,
    pub nonzero_equal: bool,
    /// `(BA)^d C = B (AC)^d`
    pub special_case_holds: bool,
}

pub fn example_report(n: usize, budget: &Budget) -> Result<ExampleReport> {
    let t = build_example_triple(n)?;
    let ac = &t.a * &t.c;
    let ba = &t.b * &t.a;
    let hyp = check_hypothesis(&t.a, &t.b, &t.c)?;
    let char_poly_ac = char_poly(&ac)?;
    let char_poly_ba = char_poly(&ba)?;
    let ba_d = gdrazin(&ba, budget)?.ok_or(Error::MissingInverse("BA"))?;
    let ac_d = gdrazin(&ac, budget)?.ok_or(Error::MissingInverse("AC"))?;
    Ok(ExampleReport {
        n,
        aba_eq_aca: hyp.strong_holds,
        hypothesis_holds: hyp.holds,
        nonzero_equal: char_poly_ac.reduced == char_poly_ba.reduced,
        char_poly_ac,
        char_poly_ba,
        special_case_holds: &ba_d.inverse * &t.c == &t.b * &ac_d.inverse,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftCertificate {
    /// `lambda`, certified through `lambda I - M`.
    pub shift: String,
    pub index: Option<usize>,
    #[serde(skip)]
    pub certificate: DrazinCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrazinSpectrum {
    /// Always empty for matrices.
    pub spectrum: Vec<String>,
    pub certificates: Vec<ShiftCertificate>,
    /// Distinct eigenvalues that are not rational and so have no exact
    /// shift certificate.
    pub irrational_eigenvalues: usize,
}

/// Drazin spectrum of a rational matrix, with certificates at `0`, `1` and
/// every rational eigenvalue.
pub fn drazin_spectrum_matrix(m: &RingElem, budget: &Budget) -> Result<DrazinSpectrum> {
    let desc = char_poly(m)?;
    let ctx = m.context();
    let mut eigen_poly = desc.reduced.clone();
    if desc.zero_multiplicity > 0 {
        eigen_poly = &eigen_poly * &Poly::from_ints(&[0, 1]);
    }
    let roots = eigen_poly.rational_roots().unwrap_or_default();
    let irrational_eigenvalues = eigen_poly.degree().unwrap_or(0) - roots.len();
    let mut shifts = vec![BigRational::zero(), BigRational::one()];
    for r in roots {
        if !shifts.contains(&r) {
            shifts.push(r);
        }
    }
    let certificates = shifts
        .into_iter()
        .map(|lambda| {
            let shifted = &RingElem::rational_scalar(ctx, lambda.clone())? - m;
            let certificate = drazin_matrix(&shifted, budget)?;
            Ok(ShiftCertificate { shift: lambda.to_string(), index: certificate.index, certificate })
        })
        .collect::<Result<_>>()?;
    Ok(DrazinSpectrum { spectrum: Vec::new(), certificates, irrational_eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, v: &[i64]) -> RingElem {
        RingElem::from_ints(RingContext::rationals(n).unwrap(), v).unwrap()
    }

    #[test]
    fn char_poly_of_small_matrices() {
        let z = char_poly(&q(3, &[0; 9])).unwrap();
        assert_eq!(z.char_poly, Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(z.reduced, Poly::one());
        assert_eq!(z.zero_multiplicity, 3);

        let id = char_poly(&q(2, &[1, 0, 0, 1])).unwrap();
        assert_eq!(id.char_poly, Poly::from_ints(&[1, -2, 1]));
        assert_eq!(id.reduced, Poly::from_ints(&[-1, 1]));

        let swap = char_poly(&q(2, &[0, 1, 1, 0])).unwrap();
        assert_eq!(swap.char_poly, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(swap.reduced, swap.char_poly);
        assert_eq!(swap.zero_multiplicity, 0);
    }

    #[test]
    fn empty_nonzero_spectra_match_across_sizes() {
        assert!(nonzero_spectrum_equal(&q(2, &[0, 1, 0, 0]), &q(1, &[0])).unwrap());
        assert!(!nonzero_spectrum_equal(&q(1, &[1]), &q(1, &[2])).unwrap());
    }

    #[test]
    fn example_triple_small() {
        assert!(build_example_triple(3).is_err());
        let t = build_example_triple(4).unwrap();
        assert_eq!(t.a, q(4, &[0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        let x = q(4, &[0; 16]);
        assert_ne!(t.b, x);
        let h = check_hypothesis(&t.a, &t.b, &t.c).unwrap();
        assert!(h.holds && h.strong_holds);
    }

    #[test]
    fn example_report_n8() {
        let r = example_report(8, &Budget::default()).unwrap();
        assert!(r.aba_eq_aca && r.nonzero_equal && r.special_case_holds);
    }

    #[test]
    fn drazin_spectrum_is_empty() {
        let s = drazin_spectrum_matrix(&q(2, &[0, 1, 0, 0]), &Budget::default()).unwrap();
        assert!(s.spectrum.is_empty());
        assert_eq!(s.certificates[0].index, Some(2));
        assert_eq!(s.certificates[1].index, Some(0));
        let t = build_example_triple(8).unwrap();
        let ac = &t.a * &t.c;
        let s = drazin_spectrum_matrix(&ac, &Budget::default()).unwrap();
        assert!(s.spectrum.is_empty());
        assert!(s.certificates.iter().any(|c| c.shift == "1" && c.certificate.is_valid()));
    }

    #[test]
    fn rejects_residue_matrices() {
        let m = RingElem::one(RingContext::zmod(4).unwrap());
        assert!(char_poly(&m).is_err());
    }
}
