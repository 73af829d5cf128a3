//! Exhaustive and sampled sweeps over triples of a finite ring.
//!
//! Each triple satisfying the quintic hypothesis is run through the selected
//! checks, which call the `cline` operations and compare their output with
//! inverses computed independently. The first failing triple (lowest index)
//! aborts the sweep with a serialized counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cline::{
    check_hypothesis, cline_drazin, cline_gdrazin, jacobson_inverse, nilpotency_transfer, power_transfer,
    qnil_transfer, special_case_formula, Direction, HypothesisReport, TransferResult, Triple,
};
use crate::drazin::{drazin, gdrazin, group_inverse, DrazinCertificate, InverseKind};
use crate::error::{Error, Result};
use crate::par::{map_ordered, Execution};
use crate::ring::{elements, is_unit, nilpotency, product, unit_inverse, Budget, RingContext, RingElem};

/// Statements a sweep can check on each hypothesis triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theorem {
    /// g-Drazin transfer between `ac` and `ba`, both directions.
    T22,
    /// Drazin transfer, and Drazin inverses coinciding with g-Drazin ones.
    T27,
    /// `ac` quasinilpotent iff `ba` is.
    L21,
    /// `ac` nilpotent iff `ba` is, with the transferred index bound.
    L26,
    /// `1 - ac` unit iff `1 - ba` unit, with the explicit inverse.
    L31,
    /// g-Drazin existence for `(ac)^k`, `(ba)^k`, `k = 2, 3`.
    C23,
    /// `(ba)^d c = b (ac)^d` on triples with `aba = aca`.
    C24,
    /// `ac` group invertible gives `(ba)^D = b ((ac)^#)^2 a`.
    C28,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::T22,
        Theorem::T27,
        Theorem::L21,
        Theorem::L26,
        Theorem::L31,
        Theorem::C23,
        Theorem::C24,
        Theorem::C28,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T22 => "t22",
            Theorem::T27 => "t27",
            Theorem::L21 => "l21",
            Theorem::L26 => "l26",
            Theorem::L31 => "l31",
            Theorem::C23 => "c23",
            Theorem::C24 => "c24",
            Theorem::C28 => "c28",
        }
    }

    /// `all`, or a comma-separated list of names.
    pub fn parse_selection(s: &str) -> Result<Vec<Theorem>> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Theorem::ALL.to_vec());
        }
        let mut out: Vec<Theorem> = s.split(',').map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidWitness(format!("unknown theorem `{s}`")))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    /// `count` triples drawn uniformly; draw `i` uses stream `i` of a ChaCha
    /// generator seeded with `seed`, so any subset of draws is reproducible.
    Sample {
        seed: u64,
        count: u64,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counter {
    pub checked: u64,
    pub passed: u64,
}

/// Separations listed in a report; the total is always counted.
pub const SEPARATION_SAMPLE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub ring: String,
    pub mode: SweepMode,
    pub theorems: Vec<Theorem>,
    pub triples_total: u64,
    pub triples_hypothesis: u64,
    pub triples_strong: u64,
    pub counters: BTreeMap<&'static str, Counter>,
    /// Hypothesis triples with `aba != aca`.
    pub separations_total: u64,
    pub separations: Vec<Triple>,
    /// Largest `|index(ac) - index(ba)|` over nilpotent pairs (needs `l26`).
    pub max_index_gap: Option<usize>,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Default)]
struct Partial {
    total: u64,
    hypothesis: u64,
    strong: u64,
    counters: BTreeMap<Theorem, Counter>,
    separations_total: u64,
    separations: Vec<Triple>,
    max_gap: Option<usize>,
    violation: Option<(u64, Error)>,
}

impl Partial {
    fn merge(&mut self, other: Partial) {
        self.total += other.total;
        self.hypothesis += other.hypothesis;
        self.strong += other.strong;
        for (t, c) in other.counters {
            let e = self.counters.entry(t).or_default();
            e.checked += c.checked;
            e.passed += c.passed;
        }
        self.separations_total += other.separations_total;
        let room = SEPARATION_SAMPLE.saturating_sub(self.separations.len());
        self.separations.extend(other.separations.into_iter().take(room));
        self.max_gap = self.max_gap.max(other.max_gap);
        if self.violation.is_none() {
            self.violation = other.violation;
        }
    }
}

const CHUNK: u64 = 512;

fn violation(theorem: Theorem, msg: impl Into<String>) -> Error {
    Error::TheoremViolation(format!("{theorem}: {}", msg.into()))
}

fn same_inverse(
    theorem: Theorem,
    what: &str,
    got: &DrazinCertificate,
    expected: &Option<DrazinCertificate>,
) -> Result<()> {
    match expected {
        Some(e) if e.inverse == got.inverse => Ok(()),
        _ => Err(violation(theorem, format!("transferred inverse of {what} is not the computed one"))),
    }
}

type ComputeFn = fn(&RingElem, &Budget) -> Result<Option<DrazinCertificate>>;
type TransferFn = fn(&Triple, Direction, &Budget) -> Result<TransferResult>;

fn check_transfer(t: &Triple, kind: InverseKind, theorem: Theorem, budget: &Budget) -> Result<()> {
    let (compute, transfer): (ComputeFn, TransferFn) = match kind {
        InverseKind::Drazin => (drazin, cline_drazin),
        InverseKind::GDrazin => (gdrazin, cline_gdrazin),
    };
    let ac_d = compute(&t.ac(), budget)?;
    let ba_d = compute(&t.ba(), budget)?;
    if ac_d.is_some() != ba_d.is_some() {
        return Err(violation(theorem, "existence of the inverses of ac and ba differs"));
    }
    if ac_d.is_none() {
        return Ok(());
    }
    let back = transfer(t, Direction::Backward, budget)?;
    same_inverse(theorem, "ba", &back.target, &ba_d)?;
    let fwd = transfer(t, Direction::Forward, budget)?;
    same_inverse(theorem, "ac", &fwd.target, &ac_d)?;
    if kind == InverseKind::Drazin {
        for (x, d) in [(t.ac(), &ac_d), (t.ba(), &ba_d)] {
            let g = gdrazin(&x, budget)?;
            same_inverse(theorem, "a Drazin invertible product (as g-Drazin)", d.as_ref().unwrap(), &g)?;
        }
    }
    Ok(())
}

fn check_one(
    theorem: Theorem,
    t: &Triple,
    h: &HypothesisReport,
    budget: &Budget,
    gap: &mut Option<usize>,
) -> Result<bool> {
    match theorem {
        Theorem::T22 => check_transfer(t, InverseKind::GDrazin, theorem, budget)?,
        Theorem::T27 => check_transfer(t, InverseKind::Drazin, theorem, budget)?,
        Theorem::L21 => {
            qnil_transfer(t, budget)?;
        }
        Theorem::L26 => {
            let n = nilpotency_transfer(t)?;
            *gap = (*gap).max(n.index_gap());
        }
        Theorem::L31 => {
            let one = RingElem::one(t.context());
            let s = unit_inverse(&(&one - &t.ac()));
            if s.is_some() != is_unit(&(&one - &t.ba())) {
                return Err(violation(theorem, "1 - ac and 1 - ba differ in invertibility"));
            }
            if let Some(s) = s {
                jacobson_inverse(t, &s)?;
            }
        }
        Theorem::C23 => {
            for k in [2, 3] {
                power_transfer(t, k, budget)?;
            }
        }
        Theorem::C24 => {
            if !h.strong_holds {
                return Ok(false);
            }
            let both = gdrazin(&t.ac(), budget)?.is_some() && gdrazin(&t.ba(), budget)?.is_some();
            if !both {
                return Ok(false);
            }
            special_case_formula(t, budget)?;
        }
        Theorem::C28 => {
            let Some(g) = group_inverse(&t.ac(), budget)? else {
                return Ok(false);
            };
            let expected = product([&t.b, &g.inverse, &g.inverse, &t.a]);
            match drazin(&t.ba(), budget)? {
                Some(d) if d.inverse == expected => {}
                _ => return Err(violation(theorem, "(ba)^D != b((ac)^#)^2 a")),
            }
        }
    }
    Ok(true)
}

fn triple_at(elems: &[RingElem], index: u64) -> Triple {
    let n = elems.len() as u64;
    let e = |i: u64| elems[i as usize].clone();
    Triple { a: e(index / (n * n)), b: e(index / n % n), c: e(index % n) }
}

fn sample_index(seed: u64, draw: u64, space: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw);
    rng.gen_range(0..space)
}

fn run_chunk(
    elems: &[RingElem],
    mode: SweepMode,
    range: std::ops::Range<u64>,
    theorems: &[Theorem],
    budget: &Budget,
    first_violation: &AtomicU64,
) -> Partial {
    let space = (elems.len() as u64).pow(3);
    let mut p = Partial::default();
    for i in range {
        if i > first_violation.load(Ordering::Relaxed) {
            break;
        }
        let index = match mode {
            SweepMode::Exhaustive => i,
            SweepMode::Sample { seed, .. } => sample_index(seed, i, space),
        };
        let t = triple_at(elems, index);
        p.total += 1;
        let h = check_hypothesis(&t.a, &t.b, &t.c).expect("one context");
        if !h.holds {
            continue;
        }
        p.hypothesis += 1;
        if h.strong_holds {
            p.strong += 1;
        } else {
            p.separations_total += 1;
            if p.separations.len() < SEPARATION_SAMPLE {
                p.separations.push(t.clone());
            }
        }
        for &th in theorems {
            match check_one(th, &t, &h, budget, &mut p.max_gap) {
                Ok(true) => {
                    let c = p.counters.entry(th).or_default();
                    c.checked += 1;
                    c.passed += 1;
                }
                Ok(false) => {}
                Err(e) => {
                    p.counters.entry(th).or_default().checked += 1;
                    let triple = serde_json::to_string(&t).unwrap_or_default();
                    let message = e.to_string();
                    p.violation =
                        Some((i, Error::Counterexample { theorem: th.name().into(), index: i, triple, message }));
                    first_violation.fetch_min(i, Ordering::Relaxed);
                    return p;
                }
            }
        }
    }
    p
}

/// Runs the selected checks over every triple of `ctx`, or over a seeded
/// sample of them.
pub fn sweep(
    ctx: RingContext,
    theorems: &[Theorem],
    mode: SweepMode,
    exec: Execution,
    budget: &Budget,
) -> Result<SweepReport> {
    let start = Instant::now();
    if !ctx.is_finite_ring() {
        return Err(Error::Unsupported { op: "sweep", context: ctx.to_string() });
    }
    let elems = elements(ctx, budget)?;
    let n = elems.len() as u128;
    let count = match mode {
        SweepMode::Exhaustive => {
            let total = n * n * n;
            if total > budget.triples as u128 {
                return Err(Error::BudgetExceeded { needed: total, budget: budget.triples });
            }
            total as u64
        }
        SweepMode::Sample { count, .. } => count,
    };
    let first_violation = AtomicU64::new(u64::MAX);
    let chunks: Vec<_> = (0..count.div_ceil(CHUNK)).map(|k| k * CHUNK..((k + 1) * CHUNK).min(count)).collect();
    let parts = map_ordered(chunks, exec, |r| run_chunk(&elems, mode, r, theorems, budget, &first_violation));

    let mut total = Partial::default();
    for p in parts {
        total.merge(p);
    }
    if let Some((_, e)) = total.violation {
        return Err(e);
    }
    let mut counters: BTreeMap<&'static str, Counter> =
        theorems.iter().map(|t| (t.name(), Counter::default())).collect();
    for (t, c) in total.counters {
        counters.insert(t.name(), c);
    }
    Ok(SweepReport {
        ring: ctx.to_string(),
        mode,
        theorems: theorems.to_vec(),
        triples_total: total.total,
        triples_hypothesis: total.hypothesis,
        triples_strong: total.strong,
        counters,
        separations_total: total.separations_total,
        separations: total.separations,
        max_index_gap: total.max_gap,
        elapsed: start.elapsed(),
    })
}

/// The first `limit` triples, in enumeration order, that satisfy the
/// hypothesis but not `aba = aca`.
pub fn find_separation(ctx: RingContext, limit: usize, budget: &Budget) -> Result<Vec<Triple>> {
    if !ctx.is_finite_ring() {
        return Err(Error::Unsupported { op: "find_separation", context: ctx.to_string() });
    }
    let elems = elements(ctx, budget)?;
    let space = (elems.len() as u64).pow(3);
    let mut out = Vec::new();
    for i in 0..space {
        if out.len() >= limit {
            break;
        }
        let t = triple_at(&elems, i);
        let h = check_hypothesis(&t.a, &t.b, &t.c)?;
        if h.holds && !h.strong_holds {
            out.push(t);
        }
    }
    Ok(out)
}

/// The 3x3 shift `x` with `x^2 != 0 = x^3`, and the triple of 6x6 matrices
/// over `Z/2` given in 3x3 blocks by
///
/// ```text
/// a = [0 x; 0 0],  b = [1 0; 0 0],  c = [1 0; 1 1].
/// ```
pub fn example29_triple() -> Result<(RingElem, Triple)> {
    let ctx = RingContext::matrix_ring(2, 6)?;
    let x = RingElem::from_ints(RingContext::matrix_ring(2, 3)?, &[0, 1, 0, 0, 0, 1, 0, 0, 0])?;
    let xs = x.residues().unwrap();
    let block = |blocks: [[Option<&[u64]>; 2]; 2]| {
        let mut v = vec![0u64; 36];
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                if let Some(m) = blk {
                    for i in 0..3 {
                        for j in 0..3 {
                            v[(3 * bi + i) * 6 + 3 * bj + j] = m[3 * i + j];
                        }
                    }
                }
            }
        }
        RingElem::from_residues(ctx, v)
    };
    let id: &[u64] = &[1, 0, 0, 0, 1, 0, 0, 0, 1];
    let a = block([[None, Some(xs)], [None, None]])?;
    let b = block([[Some(id), None], [None, None]])?;
    let c = block([[Some(id), None], [Some(id), Some(id)]])?;
    Ok((x, Triple::new(a, b, c)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example29Report {
    pub ring: String,
    pub triple: Triple,
    pub x_nilpotency_index: Option<usize>,
    pub hypothesis: HypothesisReport,
    pub ac_nilpotency_index: Option<usize>,
    pub ba_nilpotency_index: Option<usize>,
    pub ac_drazin: DrazinCertificate,
    pub transfer: TransferResult,
    /// `1 - ac` inverted by the finite geometric series, then `1 - ba`
    /// inverted by the explicit formula.
    pub jacobson_certified: bool,
}

/// Builds the 6x6 separating triple and checks every claim made about it.
/// Any failed claim is returned as an error.
pub fn verify_example_29(budget: &Budget) -> Result<Example29Report> {
    let (x, t) = example29_triple()?;
    let fail = |what: &str| Err(Error::CertificationFailed(format!("6x6 separating triple: {what}")));
    let xn = nilpotency(&x);
    if xn.index != Some(3) {
        return fail("x is not nilpotent of index 3");
    }
    let hypothesis = check_hypothesis(&t.a, &t.b, &t.c)?;
    if !hypothesis.holds || hypothesis.strong_holds {
        return fail("expected the quintic identity to hold and aba != aca");
    }
    let nil = nilpotency_transfer(&t)?;
    let ac_drazin = drazin(&t.ac(), budget)?.ok_or(Error::MissingInverse("ac"))?;
    let transfer = cline_drazin(&t, Direction::Backward, budget)?;
    let one = RingElem::one(t.context());
    let ac_index = nil.ac.index.ok_or(Error::CertificationFailed("ac is not nilpotent".into()))?;
    let s = (0..ac_index as u32).fold(RingElem::zero(t.context()), |acc, i| &acc + &t.ac().pow(i));
    let inv = jacobson_inverse(&t, &s)?;
    let jacobson_certified = (&inv * &(&one - &t.ba())).is_one();
    Ok(Example29Report {
        ring: t.context().to_string(),
        x_nilpotency_index: xn.index,
        hypothesis,
        ac_nilpotency_index: nil.ac.index,
        ba_nilpotency_index: nil.ba.index,
        ac_drazin,
        transfer,
        jacobson_certified,
        triple: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_selection() {
        assert_eq!(Theorem::parse_selection("all").unwrap().len(), 8);
        assert_eq!(Theorem::parse_selection("l31,t22,L31").unwrap(), vec![Theorem::T22, Theorem::L31]);
        assert!(Theorem::parse_selection("t99").is_err());
    }

    #[test]
    fn z2_sweep_is_tiny() {
        let r = sweep(
            RingContext::zmod(2).unwrap(),
            &Theorem::ALL,
            SweepMode::Exhaustive,
            Execution::Sequential,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(r.triples_total, 8);
        // a = 1 forces b = c; a = 0 satisfies everything
        assert_eq!(r.triples_hypothesis, 6);
        assert_eq!(r.separations_total, 0);
        assert!(r.counters.values().all(|c| c.checked == c.passed));
    }

    #[test]
    fn residue_ring_separations_need_a_square_factor() {
        for n in [2, 3, 5, 6, 10] {
            assert!(find_separation(RingContext::zmod(n).unwrap(), 5, &Budget::default()).unwrap().is_empty());
        }
        // 1 * 0 * 1 = 0 but 1 * 2 * 1 = 2, while every quintic product vanishes
        let found = find_separation(RingContext::zmod(4).unwrap(), 1, &Budget::default()).unwrap();
        assert_eq!(found[0].c.residues().unwrap(), &[2]);
    }

    #[test]
    fn sweep_respects_triple_budget() {
        let b = Budget { elements: 1 << 20, triples: 100 };
        let r = sweep(
            RingContext::matrix_ring(2, 2).unwrap(),
            &Theorem::ALL,
            SweepMode::Exhaustive,
            Execution::Sequential,
            &b,
        );
        assert!(matches!(r, Err(Error::BudgetExceeded { needed: 4096, .. })));
    }

    #[test]
    fn sampling_is_reproducible() {
        let ctx = RingContext::zmod(8).unwrap();
        let mode = SweepMode::Sample { seed: 7, count: 40 };
        let a = sweep(ctx, &[Theorem::L31], mode, Execution::Parallel, &Budget::default()).unwrap();
        let b = sweep(ctx, &[Theorem::L31], mode, Execution::Sequential, &Budget::default()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.triples_total, 40);
    }

    #[test]
    fn example29_claims() {
        let r = verify_example_29(&Budget::default()).unwrap();
        assert_eq!(r.x_nilpotency_index, Some(3));
        assert_eq!(r.ac_nilpotency_index, Some(3));
        assert_eq!(r.ba_nilpotency_index, Some(2));
        assert!(r.jacobson_certified);
    }
}
