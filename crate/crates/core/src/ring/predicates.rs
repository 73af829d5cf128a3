use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::context::{Budget, RingContext};
use super::elem::{Data, RingElem};
use crate::error::{Error, Result};
use crate::linalg::{self, Dense, EchelonBasis, Rationals, Residues, Scalars};
use crate::par::{self, Execution};

/// Finite rings up to this size look for inverses by listing candidates.
pub const UNIT_SEARCH_LIMIT: u64 = 1 << 16;

/// Above this matrix size, double-commutant membership over a field is
/// decided by polynomial membership instead of the `n^2 x n^2` commutant
/// system.
pub const COMMUTANT_BASIS_MAX_DIM: usize = 8;

/// Every element of a finite ring, in lexicographic payload order.
pub fn elements(ctx: RingContext, budget: &Budget) -> Result<Vec<RingElem>> {
    let count = budget.check_elements(&ctx)?;
    (0..count).map(|i| RingElem::from_index(ctx, i)).collect()
}

pub fn is_unit(x: &RingElem) -> bool {
    unit_inverse(x).is_some()
}

/// The two-sided inverse of `x`, if any.
///
/// Small finite rings are searched directly; matrices over a field use
/// elimination; larger residue matrix rings use the determinant and the
/// adjugate.
pub fn unit_inverse(x: &RingElem) -> Option<RingElem> {
    let ctx = x.context();
    let one = RingElem::one(ctx);
    if ctx.is_finite_ring() && ctx.enumerable(UNIT_SEARCH_LIMIT) {
        let count = ctx.element_count()? as u64;
        return (0..count)
            .map(|i| RingElem::from_index(ctx, i).expect("index in range"))
            .find(|y| (x * y) == one && (y * x) == one);
    }
    if ctx.linear_field().is_some() {
        return x.field_inverse();
    }
    adjugate_inverse(x)
}

fn adjugate_inverse(x: &RingElem) -> Option<RingElem> {
    let ctx = x.context();
    let m = ctx.modulus()?;
    let n = ctx.dim();
    let lifted = x.lifted_integers()?;
    let det = linalg::bareiss_det(n, lifted.clone());
    let det_mod = det.mod_floor(&BigInt::from(m)).to_u64()?;
    let det_inv = Residues { modulus: m }.inv(&det_mod)?;
    // adj(x) = det(x) * x^{-1} over Q, an integer matrix.
    let q_ctx = RingContext::rationals(n).ok()?;
    let as_q = RingElem::from_rationals(q_ctx, lifted.into_iter().map(BigRational::from_integer).collect()).ok()?;
    let inv_q = as_q.field_inverse()?;
    let det_q = BigRational::from_integer(det);
    let residues = inv_q
        .rational_entries()?
        .iter()
        .map(|e| {
            let adj = (e * &det_q).to_integer();
            let r = adj.mod_floor(&BigInt::from(m)).to_u64().expect("reduced");
            Residues { modulus: m }.mul(&r, &det_inv)
        })
        .collect();
    RingElem::from_residues(ctx, residues).ok()
}

/// Nilpotency of an element: `index` is the least `k >= 1` with `x^k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilpotencyWitness {
    pub index: Option<usize>,
}

impl NilpotencyWitness {
    pub fn is_nilpotent(&self) -> bool {
        self.index.is_some()
    }
}

pub fn nilpotency(x: &RingElem) -> NilpotencyWitness {
    let ctx = x.context();
    if ctx.linear_field().is_some() {
        // Over a field the index never exceeds the size, and ranks of powers
        // strictly drop until they stabilise.
        let n = ctx.dim();
        let use_rank = n > COMMUTANT_BASIS_MAX_DIM;
        let mut power = x.clone();
        let mut prev_rank = usize::MAX;
        for k in 1..=n {
            if power.is_zero() {
                return NilpotencyWitness { index: Some(k) };
            }
            if use_rank {
                let r = power.rank().expect("field context");
                if r == prev_rank {
                    break;
                }
                prev_rank = r;
            }
            power = &power * x;
        }
        return NilpotencyWitness { index: None };
    }
    // General finite ring: the power sequence is eventually periodic.
    let mut seen = HashSet::new();
    let mut power = x.clone();
    let mut k = 1;
    loop {
        if power.is_zero() {
            return NilpotencyWitness { index: Some(k) };
        }
        if !seen.insert(power.clone()) {
            return NilpotencyWitness { index: None };
        }
        power = &power * x;
        k += 1;
    }
}

/// `comm(x)`: either every commuting element, or a linear basis of the
/// commuting matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commutant {
    Elements(Vec<RingElem>),
    Basis(Vec<RingElem>),
}

impl Commutant {
    pub fn generators(&self) -> &[RingElem] {
        match self {
            Commutant::Elements(v) | Commutant::Basis(v) => v,
        }
    }

    pub fn is_basis(&self) -> bool {
        matches!(self, Commutant::Basis(_))
    }
}

/// Basis of `{ y : xy = yx }` from the nullspace of `y -> xy - yx`.
fn commutant_basis<S: Scalars>(s: &S, x: &Dense<S::E>) -> Vec<Dense<S::E>> {
    let n = x.rows;
    let nn = n * n;
    let mut k = Dense::zeros(s, nn, nn);
    // (xy - yx)_{ij} = sum_p x_ip y_pj - sum_q y_iq x_qj
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for p in 0..n {
                let col = p * n + j;
                let v = s.add(k.get(row, col), x.get(i, p));
                k.set(row, col, v);
            }
            for q in 0..n {
                let col = i * n + q;
                let v = s.sub(k.get(row, col), x.get(q, j));
                k.set(row, col, v);
            }
        }
    }
    linalg::nullspace(s, &k).into_iter().map(|v| Dense::from_vec(n, n, v)).collect()
}

pub fn commutant(x: &RingElem, budget: &Budget) -> Result<Commutant> {
    let ctx = x.context();
    if ctx.is_finite_ring() && ctx.enumerable(budget.elements) {
        let count = budget.check_elements(&ctx)?;
        let hits = par::filter_indices(count, Execution::Parallel, |i| {
            let y = RingElem::from_index(ctx, i).expect("index in range");
            x.commutes_with(&y)
        });
        let elems = hits.into_iter().map(|i| RingElem::from_index(ctx, i)).collect::<Result<_>>()?;
        return Ok(Commutant::Elements(elems));
    }
    if ctx.linear_field().is_some() {
        let basis = match x.data() {
            Data::Q(d) => commutant_basis(&Rationals, d).into_iter().map(Data::Q).collect::<Vec<_>>(),
            Data::Z(d) => {
                let s = Residues { modulus: ctx.modulus().expect("residues") };
                commutant_basis(&s, d).into_iter().map(Data::Z).collect()
            }
        };
        return Ok(Commutant::Basis(basis.into_iter().map(|d| RingElem::from_data(ctx, d)).collect()));
    }
    Err(budget.check_elements(&ctx).err().unwrap_or(Error::Unsupported { op: "commutant", context: ctx.to_string() }))
}

fn polynomial_membership<S: Scalars>(s: &S, a: &Dense<S::E>, b: &Dense<S::E>) -> bool {
    let mut span = EchelonBasis::new(s);
    let mut power = Dense::identity(s, a.rows);
    for _ in 0..=a.rows {
        if !span.insert(&power.data) {
            break;
        }
        power = linalg::mul(s, &power, a);
    }
    span.contains(&b.data)
}

/// Whether `b` is a polynomial in `a`. Over a field this coincides with
/// membership in the double commutant of `a`.
pub fn is_polynomial_in(b: &RingElem, a: &RingElem) -> Option<bool> {
    a.same_context(b).ok()?;
    a.context().linear_field()?;
    Some(match (a.data(), b.data()) {
        (Data::Q(x), Data::Q(y)) => polynomial_membership(&Rationals, x, y),
        (Data::Z(x), Data::Z(y)) => polynomial_membership(&Residues { modulus: a.context().modulus()? }, x, y),
        _ => return None,
    })
}

/// `b in comm^2(a)`: `b` commutes with every element (or basis element) of
/// `comm(a)`.
pub fn in_double_commutant(b: &RingElem, a: &RingElem, budget: &Budget) -> Result<bool> {
    a.same_context(b)?;
    let ctx = a.context();
    let enumerated = ctx.is_finite_ring() && ctx.enumerable(budget.elements);
    if !enumerated && ctx.linear_field().is_some() && ctx.dim() > COMMUTANT_BASIS_MAX_DIM {
        return Ok(is_polynomial_in(b, a).expect("field context"));
    }
    let comm = commutant(a, budget)?;
    Ok(comm.generators().iter().all(|y| b.commutes_with(y)))
}

/// `x` is quasinilpotent when `1 + yx` is a unit for every `y` commuting
/// with `x`. Enumerable finite rings test this literally; matrices over a
/// field use nilpotency, which is equivalent there.
pub fn is_quasinilpotent(x: &RingElem, budget: &Budget) -> Result<bool> {
    let ctx = x.context();
    if ctx.is_finite_ring() && ctx.enumerable(budget.elements) {
        let one = RingElem::one(ctx);
        let comm = commutant(x, budget)?;
        return Ok(comm.generators().iter().all(|y| is_unit(&(&one + &(y * x)))));
    }
    if ctx.linear_field().is_some() {
        return Ok(nilpotency(x).is_nilpotent());
    }
    Err(budget
        .check_elements(&ctx)
        .err()
        .unwrap_or(Error::Unsupported { op: "is_quasinilpotent", context: ctx.to_string() }))
}

/// Sequence `rank(x^0), rank(x^1), ...` up to and including the first
/// repeat, and the index at which it stabilises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexProfile {
    pub ranks: Vec<usize>,
    pub index: usize,
}

pub fn index_profile(x: &RingElem) -> Result<IndexProfile> {
    let ctx = x.context();
    if ctx.linear_field().is_none() {
        return Err(Error::Unsupported { op: "index_profile", context: ctx.to_string() });
    }
    let mut ranks = vec![ctx.dim()];
    let mut power = x.clone();
    loop {
        let r = power.rank().expect("field context");
        let last = *ranks.last().expect("nonempty");
        ranks.push(r);
        if r == last {
            return Ok(IndexProfile { index: ranks.len() - 2, ranks });
        }
        power = &power * x;
    }
}
