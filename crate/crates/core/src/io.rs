//! JSON arrangement files and ideal literals.
//!
//! ```json
//! { "name": "example", "ring": {"type": "quadratic", "d": -5},
//!   "vectors": [[[2, 0], [1, -1]], [[1, 1], [3, 0]]] }
//! ```
//!
//! Entries are integers over `Z` and pairs `[a, b]` meaning `a + b*w`
//! otherwise. `rank` is optional unless `vectors` is empty.

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::ring::{Ideal, RingElement, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RingField {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "quadratic")]
    Quadratic { d: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Pair([i64; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub vectors: Vec<Vec<Entry>>,
}

impl ArrangementFile {
    pub fn ring_spec(&self) -> Result<RingSpec> {
        match self.ring {
            RingField::Integers => Ok(RingSpec::Integers),
            RingField::Quadratic { d } => RingSpec::quadratic(d),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let ring = self.ring_spec()?;
        let rank = match (self.rank, self.vectors.first()) {
            (Some(r), _) => r,
            (None, Some(v)) => v.len(),
            (None, None) => return Err(Error::Parse("\"rank\" is required when \"vectors\" is empty".into())),
        };
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|e| entry_element(&ring, *e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(ring, rank, vectors)
    }

    pub fn from_arrangement(a: &Arrangement, name: Option<String>) -> Result<Self> {
        let ring = match a.ring() {
            RingSpec::Integers => RingField::Integers,
            RingSpec::Quadratic { d } => RingField::Quadratic { d },
        };
        let vectors = a
            .vectors()
            .iter()
            .map(|v| v.iter().map(|e| element_entry(&a.ring(), e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ArrangementFile { name, ring, rank: Some(a.rank()), vectors })
    }
}

fn small(x: &num_bigint::BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Parse(format!("entry {x} does not fit in 64 bits")))
}

fn element_entry(ring: &RingSpec, e: &RingElement) -> Result<Entry> {
    Ok(match ring {
        RingSpec::Integers => Entry::Int(small(&e.a)?),
        RingSpec::Quadratic { .. } => Entry::Pair([small(&e.a)?, small(&e.b)?]),
    })
}

fn entry_element(ring: &RingSpec, e: Entry) -> Result<RingElement> {
    match (ring, e) {
        (_, Entry::Int(a)) => Ok(RingElement::integer(a)),
        (RingSpec::Quadratic { .. }, Entry::Pair([a, b])) => Ok(RingElement::pair(a, b)),
        (RingSpec::Integers, Entry::Pair(_)) => Err(Error::Parse("pair entries need a quadratic ring".into())),
    }
}

pub fn parse_arrangement_file(text: &str) -> Result<ArrangementFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    parse_arrangement_file(text)?.to_arrangement()
}

pub fn serialize_arrangement(a: &Arrangement, name: Option<String>) -> Result<String> {
    let file = ArrangementFile::from_arrangement(a, name)?;
    serde_json::to_string_pretty(&file).map_err(|e| Error::Internal(e.to_string()))
}

/// Parses an ideal literal: a generator list such as `[[2,0],[1,-1]]`, or
/// over `Z` also a bare integer or a list of integers.
pub fn parse_ideal(ring: RingSpec, spec: &str) -> Result<Ideal> {
    let value: serde_json::Value = serde_json::from_str(spec.trim()).map_err(|e| Error::Parse(format!("ideal {spec:?}: {e}")))?;
    let entries: Vec<Entry> = match value {
        serde_json::Value::Array(items) => items
            .into_iter()
            .map(|v| serde_json::from_value(v).map_err(|e| Error::Parse(format!("ideal generator: {e}"))))
            .collect::<Result<_>>()?,
        v => vec![serde_json::from_value(v).map_err(|e| Error::Parse(format!("ideal {spec:?}: {e}")))?],
    };
    if entries.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let gens = entries.into_iter().map(|e| entry_element(&ring, e)).collect::<Result<Vec<_>>>()?;
    Ideal::from_generators(ring, &gens)
}
