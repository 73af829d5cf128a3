//! Exact-arithmetic toolkit for Drazin and generalized Drazin inverses and
//! Cline-type transfer formulas under the identity
//! `a(ba)^2 = abaca = acaba = (ac)^2a`.
//!
//! Modules:
//! - [`ring`]: matrices over exact fields and enumerable finite rings.
//! - [`drazin`]: Drazin, group and g-Drazin inverses with certificates.
//! - [`cline`]: hypothesis checks and the transfer formulas between `ac` and `ba`.
//! - [`spectra`]: characteristic polynomials and nonzero-spectrum comparison.
//! - [`explorer`]: exhaustive and sampled sweeps over finite rings.

pub mod cline;
pub mod drazin;
pub mod error;
pub mod explorer;
mod linalg;
pub mod literal;
pub mod par;
pub mod poly;
pub mod ring;
pub mod spectra;

pub use error::{Error, Result};
pub use par::Execution;
pub use ring::{Budget, RingContext, RingElem};
