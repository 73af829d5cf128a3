//! JSON element format shared by every CLI subcommand:
//!
//! ```json
//! {"ring": {"type": "Q"}, "entries": [["1/2", "0"], ["3", "-1"]]}
//! {"ring": {"type": "Zmod", "n": 8}, "entries": [[6]]}
//! {"ring": {"type": "MatZmod", "n": 2, "size": 2}, "entries": [[1, 0], [1, 1]]}
//! ```
//!
//! Rational entries are strings `"p/q"` (or `"p"`); plain integers are also
//! accepted. Residue entries are integers and are reduced on input. The
//! extra ring type `{"type": "Fp", "p": 2, "size": 3}` selects matrices over
//! a prime field, which use the linear-algebra routes.

use std::str::FromStr;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Field, FiniteRing, RingContext, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RingLiteral {
    Q,
    Zmod { n: u64 },
    MatZmod { n: u64, size: usize },
    Fp { p: u64, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryLiteral {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemLiteral {
    pub ring: RingLiteral,
    pub entries: Vec<Vec<EntryLiteral>>,
}

impl From<&RingElem> for ElemLiteral {
    fn from(x: &RingElem) -> Self {
        let ctx = x.context();
        let ring = match ctx {
            RingContext::MatrixOverField { field: Field::Rationals, .. } => RingLiteral::Q,
            RingContext::MatrixOverField { field: Field::PrimeField(p), size } => RingLiteral::Fp { p, size },
            RingContext::Finite(FiniteRing::ZMod(n)) => RingLiteral::Zmod { n },
            RingContext::Finite(FiniteRing::MatrixRing { modulus, size }) => RingLiteral::MatZmod { n: modulus, size },
        };
        let n = ctx.dim();
        let flat: Vec<EntryLiteral> = match (x.rational_entries(), x.residues()) {
            (Some(q), _) => q.iter().map(|v| EntryLiteral::Text(v.to_string())).collect(),
            (_, Some(r)) => r.iter().map(|&v| EntryLiteral::Int(v as i64)).collect(),
            _ => unreachable!("every element has a payload"),
        };
        let entries = flat.chunks(n).map(|row| row.to_vec()).collect();
        ElemLiteral { ring, entries }
    }
}

fn parse_rational(e: &EntryLiteral) -> Result<BigRational> {
    match e {
        EntryLiteral::Int(v) => Ok(BigRational::from_integer((*v).into())),
        EntryLiteral::Text(s) => {
            BigRational::from_str(s.trim()).map_err(|_| Error::MalformedElement(format!("bad rational `{s}`")))
        }
    }
}

fn parse_residue(e: &EntryLiteral, m: u64) -> Result<u64> {
    let v = match e {
        EntryLiteral::Int(v) => *v,
        EntryLiteral::Text(s) => {
            s.trim().parse::<i64>().map_err(|_| Error::MalformedElement(format!("bad residue `{s}`")))?
        }
    };
    Ok(v.rem_euclid(m as i64) as u64)
}

impl TryFrom<ElemLiteral> for RingElem {
    type Error = Error;

    fn try_from(lit: ElemLiteral) -> Result<Self> {
        let rows = lit.entries.len();
        if rows == 0 || lit.entries.iter().any(|r| r.len() != rows) {
            return Err(Error::MalformedElement("entries must form a nonempty square array".into()));
        }
        let ctx = match lit.ring {
            RingLiteral::Q => RingContext::rationals(rows)?,
            RingLiteral::Zmod { n } => RingContext::zmod(n)?,
            RingLiteral::MatZmod { n, size } => RingContext::matrix_ring(n, size)?,
            RingLiteral::Fp { p, size } => RingContext::prime_field(p, size)?,
        };
        if ctx.dim() != rows {
            return Err(Error::MalformedElement(format!(
                "{ctx} needs {d}x{d} entries, got {rows}x{rows}",
                d = ctx.dim()
            )));
        }
        let flat = lit.entries.iter().flatten();
        match ctx.modulus() {
            None => RingElem::from_rationals(ctx, flat.map(parse_rational).collect::<Result<_>>()?),
            Some(m) => RingElem::from_residues(ctx, flat.map(|e| parse_residue(e, m)).collect::<Result<_>>()?),
        }
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElemLiteral::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let lit = ElemLiteral::deserialize(deserializer)?;
        RingElem::try_from(lit).map_err(D::Error::custom)
    }
}

pub fn parse_elem(json: &str) -> Result<RingElem> {
    Ok(serde_json::from_str(json)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_ring_type() {
        let q = parse_elem(r#"{"ring":{"type":"Q"},"entries":[["1/2","0"],[3,"-4/6"]]}"#).unwrap();
        assert_eq!(q.context(), RingContext::rationals(2).unwrap());
        assert_eq!(q.entry_strings(), vec!["1/2", "0", "3", "-2/3"]);

        let z = parse_elem(r#"{"ring":{"type":"Zmod","n":8},"entries":[[-2]]}"#).unwrap();
        assert_eq!(z.residues().unwrap(), &[6]);

        let m = parse_elem(r#"{"ring":{"type":"MatZmod","n":2,"size":2},"entries":[[1,0],[3,1]]}"#).unwrap();
        assert_eq!(m.residues().unwrap(), &[1, 0, 1, 1]);

        let f = parse_elem(r#"{"ring":{"type":"Fp","p":3,"size":1},"entries":[[5]]}"#).unwrap();
        assert_eq!(f.context(), RingContext::prime_field(3, 1).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"ring":{"type":"Q"},"entries":[["1/0"]]}"#,
            r#"{"ring":{"type":"Q"},"entries":[["1","2"]]}"#,
            r#"{"ring":{"type":"Q"},"entries":[]}"#,
            r#"{"ring":{"type":"MatZmod","n":2,"size":3},"entries":[[1,0],[0,1]]}"#,
            r#"{"ring":{"type":"Zmod","n":1},"entries":[[0]]}"#,
            r#"{"ring":{"type":"Q"},"entries":[["x"]]}"#,
            r#"{"ring":{"type":"Fp","p":4,"size":1},"entries":[[1]]}"#,
        ] {
            assert!(parse_elem(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn serialises_rationals_as_strings() {
        let q = parse_elem(r#"{"ring":{"type":"Q"},"entries":[["2/4"]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"ring":{"type":"Q"},"entries":[["1/2"]]}"#);
    }
}
