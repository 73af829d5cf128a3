//! Transfer of Drazin-type invertibility between `ac` and `ba` under
//!
//! ```text
//! a(ba)^2 = abaca = acaba = (ac)^2 a
//! ```
//!
//! The formulas are
//! `(ba)^d = b ((ac)^d)^2 a` (backward) and `(ac)^d = a ((ba)^d)^2 c`
//! (forward), with the same shape for Drazin inverses. Every function here
//! refuses to run when the hypothesis fails and re-certifies its output
//! against the defining equations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::drazin::{certify, gdrazin, inverse_of_kind, DrazinCertificate, InverseKind};
use crate::error::{Error, Result};
use crate::ring::{is_quasinilpotent, nilpotency, product, Budget, NilpotencyWitness, RingContext, RingElem};

/// Three elements of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple")]
pub struct Triple {
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
}

#[derive(Deserialize)]
struct RawTriple {
    a: RingElem,
    b: RingElem,
    c: RingElem,
}

impl TryFrom<RawTriple> for Triple {
    type Error = Error;
    fn try_from(raw: RawTriple) -> Result<Self> {
        Triple::new(raw.a, raw.b, raw.c)
    }
}

impl Triple {
    pub fn new(a: RingElem, b: RingElem, c: RingElem) -> Result<Self> {
        a.same_context(&b)?;
        a.same_context(&c)?;
        Ok(Triple { a, b, c })
    }

    pub fn context(&self) -> RingContext {
        self.a.context()
    }

    pub fn ac(&self) -> RingElem {
        &self.a * &self.c
    }

    pub fn ba(&self) -> RingElem {
        &self.b * &self.a
    }

    /// The same payloads in another context of identical shape.
    pub fn recontext(&self, ctx: RingContext) -> Result<Self> {
        Triple::new(self.a.recontext(ctx)?, self.b.recontext(ctx)?, self.c.recontext(ctx)?)
    }
}

pub const PRODUCT_NAMES: [&str; 4] = ["a(ba)^2", "abaca", "acaba", "(ac)^2a"];
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The four quintic products and which of them agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    /// `a(ba)^2`, `abaca`, `acaba`, `(ac)^2 a`
    pub products: [RingElem; 4],
    /// Equalities in the order (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
    pub pairwise: [bool; 6],
    pub holds: bool,
    /// `aba = aca`
    pub strong_holds: bool,
}

pub fn check_hypothesis(a: &RingElem, b: &RingElem, c: &RingElem) -> Result<HypothesisReport> {
    a.same_context(b)?;
    a.same_context(c)?;
    let ab = a * b;
    let ac = a * c;
    let aba = &ab * a;
    let aca = &ac * a;
    let products = [&aba * &(b * a), &aba * &(c * a), &aca * &(b * a), &aca * &(c * a)];
    let pairwise = PAIRS.map(|(i, j)| products[i] == products[j]);
    Ok(HypothesisReport { holds: pairwise.iter().all(|&p| p), strong_holds: aba == aca, products, pairwise })
}

fn require_hypothesis(a: &RingElem, b: &RingElem, c: &RingElem) -> Result<HypothesisReport> {
    let report = check_hypothesis(a, b, c)?;
    if !report.holds {
        return Err(Error::HypothesisViolated);
    }
    Ok(report)
}

impl Serialize for HypothesisReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        use std::collections::BTreeMap;
        let products: BTreeMap<&str, &RingElem> = PRODUCT_NAMES.iter().copied().zip(self.products.iter()).collect();
        let pairwise: BTreeMap<String, bool> = PAIRS
            .iter()
            .zip(self.pairwise)
            .map(|((i, j), eq)| (format!("{}={}", PRODUCT_NAMES[*i], PRODUCT_NAMES[*j]), eq))
            .collect();
        let mut st = serializer.serialize_struct("HypothesisReport", 4)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("strong_holds", &self.strong_holds)?;
        st.serialize_field("pairwise", &pairwise)?;
        st.serialize_field("products", &products)?;
        st.end()
    }
}

/// Which product supplies the known inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// From `(ba)` to `(ac)`: `(ac)^d = a ((ba)^d)^2 c`.
    Forward,
    /// From `(ac)` to `(ba)`: `(ba)^d = b ((ac)^d)^2 a`.
    Backward,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(Error::InvalidWitness(format!("unknown direction `{other}`"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferResult {
    pub direction: Direction,
    pub source: DrazinCertificate,
    pub target: DrazinCertificate,
    /// Backward transfers check `ba - (ba)^2 e = b (1 - ac d) a`.
    pub core_decomposition: Option<bool>,
}

/// Builds the target inverse from the source one by the transfer formula and
/// re-certifies it.
pub fn cline_transfer(t: &Triple, direction: Direction, kind: InverseKind, budget: &Budget) -> Result<TransferResult> {
    let Triple { a, b, c } = t;
    require_hypothesis(a, b, c)?;
    let (source_elem, target_elem, name) = match direction {
        Direction::Backward => (t.ac(), t.ba(), "ac"),
        Direction::Forward => (t.ba(), t.ac(), "ba"),
    };
    let source = inverse_of_kind(&source_elem, kind, budget)?.ok_or(Error::MissingInverse(name))?;
    let d = &source.inverse;
    let d2 = d * d;
    let target_inverse = match direction {
        Direction::Backward => product([b, &d2, a]),
        Direction::Forward => product([a, &d2, c]),
    };
    let target = certify(&target_elem, &target_inverse, kind, budget)?;
    if !target.is_valid() {
        return Err(Error::TheoremViolation(format!(
            "{direction} transfer produced an invalid {kind:?} inverse for a={a}, b={b}, c={c}"
        )));
    }
    let core_decomposition = match direction {
        Direction::Backward => {
            let one = RingElem::one(a.context());
            let p = &one - &(&t.ac() * d);
            let ba = t.ba();
            let lhs = &ba - &(&(&ba * &ba) * &target_inverse);
            let holds = lhs == product([b, &p, a]);
            if !holds {
                return Err(Error::TheoremViolation(format!("ba - (ba)^2 e != b p a for a={a}, b={b}, c={c}")));
            }
            Some(true)
        }
        Direction::Forward => None,
    };
    Ok(TransferResult { direction, source, target, core_decomposition })
}

pub fn cline_gdrazin(t: &Triple, direction: Direction, budget: &Budget) -> Result<TransferResult> {
    cline_transfer(t, direction, InverseKind::GDrazin, budget)
}

pub fn cline_drazin(t: &Triple, direction: Direction, budget: &Budget) -> Result<TransferResult> {
    cline_transfer(t, direction, InverseKind::Drazin, budget)
}

/// Nilpotency witnesses for `ac` and `ba`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilpotencyTransfer {
    pub ac: NilpotencyWitness,
    pub ba: NilpotencyWitness,
}

impl NilpotencyTransfer {
    /// `|index(ac) - index(ba)|` when both are nilpotent.
    pub fn index_gap(&self) -> Option<usize> {
        Some(self.ac.index?.abs_diff(self.ba.index?))
    }
}

/// Bound on the nilpotency index of one product given the index `n` of the
/// other: `(ac)^m = 0` with `m` even gives `(ba)^(m+1) = 0`, and symmetrically.
pub fn transferred_index_bound(n: usize) -> usize {
    n + n % 2 + 1
}

pub fn nilpotency_transfer(t: &Triple) -> Result<NilpotencyTransfer> {
    require_hypothesis(&t.a, &t.b, &t.c)?;
    let res = NilpotencyTransfer { ac: nilpotency(&t.ac()), ba: nilpotency(&t.ba()) };
    if res.ac.is_nilpotent() != res.ba.is_nilpotent() {
        return Err(Error::TheoremViolation(format!(
            "ac nilpotent = {}, ba nilpotent = {} for a={}, b={}, c={}",
            res.ac.is_nilpotent(),
            res.ba.is_nilpotent(),
            t.a,
            t.b,
            t.c
        )));
    }
    if let (Some(i), Some(j)) = (res.ac.index, res.ba.index) {
        if j > transferred_index_bound(i) || i > transferred_index_bound(j) {
            return Err(Error::TheoremViolation(format!(
                "nilpotency indices {i} (ac) and {j} (ba) exceed the transfer bound"
            )));
        }
    }
    Ok(res)
}

/// Quasinilpotency flags for `(ac, ba)`; they must agree.
pub fn qnil_transfer(t: &Triple, budget: &Budget) -> Result<(bool, bool)> {
    require_hypothesis(&t.a, &t.b, &t.c)?;
    let flags = (is_quasinilpotent(&t.ac(), budget)?, is_quasinilpotent(&t.ba(), budget)?);
    if flags.0 != flags.1 {
        return Err(Error::TheoremViolation(format!(
            "quasinilpotency of ac ({}) and ba ({}) differ for a={}, b={}, c={}",
            flags.0, flags.1, t.a, t.b, t.c
        )));
    }
    Ok(flags)
}

/// Given `s = (1 - ac)^{-1}`, returns `(1 - ba)^{-1} = (1 + bsa)(1 + ba) - bsa`
/// after checking it against `1 - ba` on both sides.
pub fn jacobson_inverse(t: &Triple, s: &RingElem) -> Result<RingElem> {
    let Triple { a, b, .. } = t;
    require_hypothesis(a, b, &t.c)?;
    a.same_context(s)?;
    let one = RingElem::one(a.context());
    let one_minus_ac = &one - &t.ac();
    if !(&one_minus_ac * s).is_one() || !(s * &one_minus_ac).is_one() {
        return Err(Error::InvalidWitness("s is not a two-sided inverse of 1 - ac".into()));
    }
    let bsa = product([b, s, a]);
    let ba = t.ba();
    let inverse = &(&(&one + &bsa) * &(&one + &ba)) - &bsa;
    let one_minus_ba = &one - &ba;
    if !(&inverse * &one_minus_ba).is_one() || !(&one_minus_ba * &inverse).is_one() {
        return Err(Error::CertificationFailed(format!(
            "(1 + bsa)(1 + ba) - bsa does not invert 1 - ba for a={a}, b={b}, c={}",
            t.c
        )));
    }
    Ok(inverse)
}

/// Under `aba = aca`: checks `(ba)^d c = b (ac)^d`.
pub fn special_case_formula(t: &Triple, budget: &Budget) -> Result<bool> {
    let Triple { a, b, c } = t;
    if !check_hypothesis(a, b, c)?.strong_holds {
        return Err(Error::StrongHypothesisViolated);
    }
    let ba_d = gdrazin(&t.ba(), budget)?.ok_or(Error::MissingInverse("ba"))?;
    let ac_d = gdrazin(&t.ac(), budget)?.ok_or(Error::MissingInverse("ac"))?;
    if &ba_d.inverse * c != b * &ac_d.inverse {
        return Err(Error::TheoremViolation(format!("(ba)^d c != b (ac)^d for a={a}, b={b}, c={c}")));
    }
    Ok(true)
}

/// g-Drazin certificates for `(ac)^k` and `(ba)^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerTransfer {
    pub k: u32,
    pub ac_power: Option<DrazinCertificate>,
    pub ba_power: Option<DrazinCertificate>,
    /// For `k = 2`: whether `(a, bab, cac)` satisfies the hypothesis.
    pub substituted_hypothesis: Option<bool>,
}

pub fn power_transfer(t: &Triple, k: u32, budget: &Budget) -> Result<PowerTransfer> {
    let Triple { a, b, c } = t;
    require_hypothesis(a, b, c)?;
    if k == 0 {
        return Err(Error::InvalidWitness("power must be positive".into()));
    }
    let substituted_hypothesis = if k == 2 {
        let holds = check_hypothesis(a, &product([b, a, b]), &product([c, a, c]))?.holds;
        if !holds {
            return Err(Error::TheoremViolation(format!("(a, bab, cac) fails the hypothesis for a={a}, b={b}, c={c}")));
        }
        Some(true)
    } else {
        None
    };
    let ac_power = gdrazin(&t.ac().pow(k), budget)?;
    let ba_power = gdrazin(&t.ba().pow(k), budget)?;
    if ac_power.is_some() != ba_power.is_some() {
        return Err(Error::TheoremViolation(format!(
            "g-Drazin existence of (ac)^{k} and (ba)^{k} differ for a={a}, b={b}, c={c}"
        )));
    }
    Ok(PowerTransfer { k, ac_power, ba_power, substituted_hypothesis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::unit_inverse;

    fn q2(v: &[i64]) -> RingElem {
        RingElem::from_ints(RingContext::rationals(2).unwrap(), v).unwrap()
    }

    fn zmod_triple(n: u64, a: i64, b: i64, c: i64) -> Triple {
        let ctx = RingContext::zmod(n).unwrap();
        let e = |v| RingElem::from_ints(ctx, &[v]).unwrap();
        Triple::new(e(a), e(b), e(c)).unwrap()
    }

    #[test]
    fn equal_b_and_c_satisfy_both_hypotheses() {
        let a = q2(&[1, 2, 3, 4]);
        let b = q2(&[0, 1, -1, 5]);
        let r = check_hypothesis(&a, &b, &b).unwrap();
        assert!(r.holds && r.strong_holds);
        assert!(r.pairwise.iter().all(|&p| p));
    }

    #[test]
    fn hypothesis_fails_for_nilpotent_swap() {
        let a = q2(&[0, 1, 0, 0]);
        let c = q2(&[0, 0, 1, 0]);
        let r = check_hypothesis(&a, &a, &c).unwrap();
        assert!(!r.holds);
        assert!(matches!(
            cline_drazin(&Triple::new(a.clone(), a.clone(), c).unwrap(), Direction::Backward, &Budget::default()),
            Err(Error::HypothesisViolated)
        ));
    }

    #[test]
    fn identity_triple_transfers_identity() {
        let one = RingElem::one(RingContext::rationals(2).unwrap());
        let t = Triple::new(one.clone(), one.clone(), one.clone()).unwrap();
        for dir in [Direction::Forward, Direction::Backward] {
            let r = cline_gdrazin(&t, dir, &Budget::default()).unwrap();
            assert!(r.source.inverse.is_one() && r.target.inverse.is_one());
        }
    }

    #[test]
    fn inverse_pair_gives_unit_products() {
        let a = q2(&[2, 1, 7, 4]);
        let inv = unit_inverse(&a).unwrap();
        let t = Triple::new(a, inv.clone(), inv).unwrap();
        let r = cline_drazin(&t, Direction::Backward, &Budget::default()).unwrap();
        assert!(r.target.inverse.is_one());
        assert_eq!(r.source.index, Some(0));
    }

    #[test]
    fn zero_ac_forces_ba_cube_to_vanish() {
        // In Z/8 with a = 2, c = 4, b = 1: ac = 0 but (ba)^2 = 4.
        let t = zmod_triple(8, 2, 1, 4);
        assert!(t.ac().is_zero());
        let n = nilpotency_transfer(&t).unwrap();
        assert_eq!(n.ac.index, Some(1));
        assert_eq!(n.ba.index, Some(3));
        assert!(t.ba().pow(3).is_zero());
        assert!(!t.ba().pow(2).is_zero());
    }

    #[test]
    fn unit_triple_is_not_nilpotent() {
        let one = RingElem::one(RingContext::rationals(2).unwrap());
        let t = Triple::new(one.clone(), one.clone(), one).unwrap();
        let n = nilpotency_transfer(&t).unwrap();
        assert!(!n.ac.is_nilpotent() && !n.ba.is_nilpotent());
        assert_eq!(n.index_gap(), None);
    }

    #[test]
    fn index_bound_values() {
        assert_eq!(transferred_index_bound(1), 3);
        assert_eq!(transferred_index_bound(2), 3);
        assert_eq!(transferred_index_bound(3), 5);
    }

    #[test]
    fn qnil_transfer_on_zero() {
        let t = zmod_triple(4, 0, 3, 1);
        assert_eq!(qnil_transfer(&t, &Budget::default()).unwrap(), (true, true));
    }

    #[test]
    fn jacobson_with_zero_a() {
        let ctx = RingContext::rationals(2).unwrap();
        let t = Triple::new(RingElem::zero(ctx), q2(&[1, 2, 3, 4]), q2(&[5, 6, 7, 8])).unwrap();
        let inv = jacobson_inverse(&t, &RingElem::one(ctx)).unwrap();
        assert!(inv.is_one());
    }

    #[test]
    fn jacobson_rejects_bad_witness() {
        let a = q2(&[1, 0, 0, 0]);
        let b = q2(&[2, 0, 0, 1]);
        let t = Triple::new(a, b.clone(), b).unwrap();
        let not_inverse = q2(&[1, 0, 0, 1]);
        assert!(matches!(jacobson_inverse(&t, &not_inverse), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn special_case_with_b_equal_c() {
        let a = q2(&[0, 1, 0, 1]);
        let b = q2(&[1, 1, 0, 2]);
        let t = Triple::new(a, b.clone(), b).unwrap();
        assert!(special_case_formula(&t, &Budget::default()).unwrap());
        let z = RingElem::zero(RingContext::rationals(2).unwrap());
        let t0 = Triple::new(z, q2(&[1, 2, 3, 4]), q2(&[0, 0, 1, 1])).unwrap();
        assert!(special_case_formula(&t0, &Budget::default()).unwrap());
    }

    #[test]
    fn special_case_requires_strong_identity() {
        let a = q2(&[1, 0, 0, 1]);
        let t = Triple::new(a, q2(&[1, 0, 0, 0]), q2(&[0, 0, 0, 1])).unwrap();
        assert!(matches!(special_case_formula(&t, &Budget::default()), Err(Error::StrongHypothesisViolated)));
    }

    #[test]
    fn power_transfer_rejects_zero_power() {
        let t = zmod_triple(4, 1, 1, 1);
        assert!(power_transfer(&t, 0, &Budget::default()).is_err());
        let p = power_transfer(&t, 2, &Budget::default()).unwrap();
        assert_eq!(p.substituted_hypothesis, Some(true));
        assert!(p.ac_power.is_some() && p.ba_power.is_some());
    }

    #[test]
    fn triple_json_requires_one_context() {
        let bad = r#"{"a":{"ring":{"type":"Zmod","n":4},"entries":[[1]]},
                      "b":{"ring":{"type":"Zmod","n":8},"entries":[[1]]},
                      "c":{"ring":{"type":"Zmod","n":4},"entries":[[1]]}}"#;
        assert!(serde_json::from_str::<Triple>(bad).is_err());
    }

    #[test]
    fn report_json_lists_products() {
        let t = zmod_triple(8, 2, 0, 1);
        let r = check_hypothesis(&t.a, &t.b, &t.c).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["holds"], true);
        assert_eq!(v["products"]["abaca"]["entries"][0][0], 0);
        assert_eq!(v["pairwise"].as_object().unwrap().len(), 6);
    }
}
