//! Exact arithmetic for matrices over fields and for enumerable finite
//! rings, together with the element predicates used throughout the crate.

mod context;
mod elem;
mod predicates;

pub use context::{Budget, Field, FiniteRing, RingContext, BUDGET_ENV, MAX_MODULUS};
pub use elem::{product, RingElem};
pub use predicates::{
    commutant, elements, in_double_commutant, index_profile, is_polynomial_in, is_quasinilpotent, is_unit, nilpotency,
    unit_inverse, Commutant, IndexProfile, NilpotencyWitness, COMMUTANT_BASIS_MAX_DIM, UNIT_SEARCH_LIMIT,
};
