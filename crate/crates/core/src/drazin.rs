//! Drazin, group and g-Drazin inverses.
//!
//! An element `a` has Drazin inverse `b` when `bab = b`, `b` lies in the
//! double commutant of `a`, and the core part `a - a^2 b` is nilpotent. The
//! g-Drazin inverse relaxes the last condition to quasinilpotency. Matrices
//! over a field are handled by elimination; enumerable finite rings by an
//! exhaustive search that also checks uniqueness.
//!
//! Every inverse handed out by this module comes wrapped in a
//! [`DrazinCertificate`] whose witnesses were recomputed from scratch.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{
    commutant, in_double_commutant, index_profile, is_quasinilpotent, nilpotency, Budget, NilpotencyWitness,
    RingContext, RingElem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseKind {
    Drazin,
    #[serde(rename = "gdrazin")]
    GDrazin,
}

/// A claimed inverse together with its defining-equation witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrazinCertificate {
    pub kind: InverseKind,
    pub element: RingElem,
    pub inverse: RingElem,
    /// 0 for units, otherwise the nilpotency index of `a - a^2 b`; `None`
    /// when that core part is not nilpotent.
    pub index: Option<usize>,
    pub bab_eq_b: bool,
    pub commutes: bool,
    pub in_double_commutant: bool,
    pub core_nilpotency: NilpotencyWitness,
    /// Only evaluated for g-Drazin certificates.
    pub core_quasinilpotent: Option<bool>,
}

impl DrazinCertificate {
    pub fn core(&self) -> RingElem {
        core_part(&self.element, &self.inverse)
    }

    pub fn is_valid(&self) -> bool {
        let core_ok = match self.kind {
            InverseKind::Drazin => self.core_nilpotency.is_nilpotent(),
            InverseKind::GDrazin => self.core_quasinilpotent == Some(true),
        };
        self.bab_eq_b && self.commutes && self.in_double_commutant && core_ok
    }

    /// `a^(k+1) b = a^k`, which holds for every Drazin inverse of index `k`.
    pub fn power_identity_holds(&self) -> bool {
        match self.index {
            Some(k) => {
                let ak = self.element.pow(k as u32);
                &(&ak * &self.element) * &self.inverse == ak
            }
            None => false,
        }
    }

    /// Group inverses are Drazin inverses of index at most one.
    pub fn is_group_inverse(&self) -> bool {
        self.kind == InverseKind::Drazin && self.index.is_some_and(|k| k <= 1)
    }

    fn recontext(self, ctx: RingContext) -> Result<Self> {
        Ok(DrazinCertificate { element: self.element.recontext(ctx)?, inverse: self.inverse.recontext(ctx)?, ..self })
    }

    /// Reads a Drazin certificate over a field as a g-Drazin one: there,
    /// quasinilpotent and nilpotent coincide.
    fn into_gdrazin(self) -> Self {
        let qnil = self.core_nilpotency.is_nilpotent();
        DrazinCertificate { kind: InverseKind::GDrazin, core_quasinilpotent: Some(qnil), ..self }
    }
}

/// `a - a^2 b`
pub fn core_part(a: &RingElem, b: &RingElem) -> RingElem {
    a - &(&(a * a) * b)
}

/// Recomputes every defining witness for the pair `(a, b)`.
pub fn certify(a: &RingElem, b: &RingElem, kind: InverseKind, budget: &Budget) -> Result<DrazinCertificate> {
    a.try_mul(b)?;
    let bab_eq_b = &(b * a) * b == *b;
    let commutes = a.commutes_with(b);
    let in_dc = in_double_commutant(b, a, budget)?;
    let core = core_part(a, b);
    let core_nilpotency = nilpotency(&core);
    let core_quasinilpotent = match kind {
        InverseKind::Drazin => None,
        InverseKind::GDrazin => Some(is_quasinilpotent(&core, budget)?),
    };
    let index = if core.is_zero() && (a * b).is_one() { Some(0) } else { core_nilpotency.index };
    Ok(DrazinCertificate {
        kind,
        element: a.clone(),
        inverse: b.clone(),
        index,
        bab_eq_b,
        commutes,
        in_double_commutant: in_dc,
        core_nilpotency,
        core_quasinilpotent,
    })
}

fn require_valid(cert: DrazinCertificate, what: &str) -> Result<DrazinCertificate> {
    if cert.is_valid() {
        Ok(cert)
    } else {
        Err(Error::CertificationFailed(format!("{what}: computed inverse of {} fails its witnesses", cert.element)))
    }
}

/// Drazin inverse of a matrix over a field: with `k` the index,
/// `a^D = a^k G a^k` for any inner inverse `G` of `a^(2k+1)`.
pub fn drazin_matrix(a: &RingElem, budget: &Budget) -> Result<DrazinCertificate> {
    let ctx = a.context();
    if !matches!(ctx, RingContext::MatrixOverField { .. }) {
        return Err(Error::Unsupported { op: "drazin_matrix", context: ctx.to_string() });
    }
    let k = index_profile(a)?.index as u32;
    let ak = a.pow(k);
    let g = a.pow(2 * k + 1).inner_inverse().expect("field context");
    let b = &(&ak * &g) * &ak;
    let cert = certify(a, &b, InverseKind::Drazin, budget)?;
    if cert.index != Some(k as usize) {
        return Err(Error::CertificationFailed(format!("rank index {k} disagrees with core index {:?}", cert.index)));
    }
    require_valid(cert, "drazin_matrix")
}

/// Every `b` commuting with `a` with `bab = b` and a nilpotent
/// (Drazin) or quasinilpotent (g-Drazin) core part. Searches the commutant
/// exhaustively, without early exit.
pub fn inverse_candidates(a: &RingElem, kind: InverseKind, budget: &Budget) -> Result<Vec<RingElem>> {
    let ctx = a.context();
    if !ctx.is_finite_ring() {
        return Err(Error::Unsupported { op: "inverse_candidates", context: ctx.to_string() });
    }
    budget.check_elements(&ctx)?;
    let comm = commutant(a, budget)?;
    let mut found = Vec::new();
    for b in comm.generators() {
        if &(b * a) * b != *b {
            continue;
        }
        let core = core_part(a, b);
        let ok = match kind {
            InverseKind::Drazin => nilpotency(&core).is_nilpotent(),
            InverseKind::GDrazin => is_quasinilpotent(&core, budget)?,
        };
        if ok {
            found.push(b.clone());
        }
    }
    Ok(found)
}

fn search_finite(a: &RingElem, kind: InverseKind, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    let mut found = inverse_candidates(a, kind, budget)?;
    if found.len() > 1 {
        return Err(Error::CertificationFailed(format!(
            "{} distinct inverses of {a} found; the inverse must be unique",
            found.len()
        )));
    }
    let Some(b) = found.pop() else { return Ok(None) };
    let cert = certify(a, &b, kind, budget)?;
    require_valid(cert, "finite-ring search").map(Some)
}

/// Drazin inverse in an enumerable finite ring by exhaustive search.
pub fn drazin_finite_ring(a: &RingElem, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    search_finite(a, InverseKind::Drazin, budget)
}

/// g-Drazin inverse in an enumerable finite ring by exhaustive search.
pub fn gdrazin_finite_ring(a: &RingElem, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    search_finite(a, InverseKind::GDrazin, budget)
}

enum Route {
    Field(RingContext),
    Search,
}

fn route(a: &RingElem, budget: &Budget) -> Result<Route> {
    let ctx = a.context();
    if matches!(ctx, RingContext::MatrixOverField { .. }) {
        return Ok(Route::Field(ctx));
    }
    if ctx.enumerable(budget.elements) {
        return Ok(Route::Search);
    }
    match ctx.as_field_matrices() {
        Some(field_ctx) => Ok(Route::Field(field_ctx)),
        None => Err(budget.check_elements(&ctx).unwrap_err()),
    }
}

fn via_field(a: &RingElem, field_ctx: RingContext, budget: &Budget) -> Result<DrazinCertificate> {
    let cert = drazin_matrix(&a.recontext(field_ctx)?, budget)?;
    cert.recontext(a.context())
}

/// Drazin inverse in any supported context.
pub fn drazin(a: &RingElem, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    match route(a, budget)? {
        Route::Field(ctx) => via_field(a, ctx, budget).map(Some),
        Route::Search => drazin_finite_ring(a, budget),
    }
}

/// g-Drazin inverse in any supported context. Over a field it is the Drazin
/// inverse; enumerable finite rings test quasinilpotency directly.
pub fn gdrazin(a: &RingElem, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    match route(a, budget)? {
        Route::Field(ctx) => via_field(a, ctx, budget).map(|c| Some(c.into_gdrazin())),
        Route::Search => gdrazin_finite_ring(a, budget),
    }
}

pub fn inverse_of_kind(a: &RingElem, kind: InverseKind, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    match kind {
        InverseKind::Drazin => drazin(a, budget),
        InverseKind::GDrazin => gdrazin(a, budget),
    }
}

/// The group inverse: the Drazin inverse when its index is at most one.
pub fn group_inverse(a: &RingElem, budget: &Budget) -> Result<Option<DrazinCertificate>> {
    Ok(drazin(a, budget)?.filter(DrazinCertificate::is_group_inverse))
}

#[derive(Serialize)]
struct WitnessJson {
    bab_eq_b: bool,
    commutes: bool,
    in_double_commutant: bool,
    core_nilpotent_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core_quasinilpotent: Option<bool>,
}

impl Serialize for DrazinCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DrazinCertificate", 5)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("element", &self.element)?;
        st.serialize_field("inverse", &self.inverse)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field(
            "witnesses",
            &WitnessJson {
                bab_eq_b: self.bab_eq_b,
                commutes: self.commutes,
                in_double_commutant: self.in_double_commutant,
                core_nilpotent_index: self.core_nilpotency.index,
                core_quasinilpotent: self.core_quasinilpotent,
            },
        )?;
        st.end()
    }
}
