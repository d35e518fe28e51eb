//! JSON interchange formats.
//!
//! Integers are written as decimal strings and read from either strings or
//! JSON numbers. Supports are lists of 1-based indices. Rationals are
//! strings `"p"` or `"p/q"`.
//!
//! Lattice file: `{"ambient": m, "generators": [[..], ..]}`.
//! Vector-set file: `{"vectors": [[..], ..], "names": [..]}` with `names` optional.
//! Both readers ignore unknown keys, so an instance file carrying all four
//! keys serves as either.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::linalg::{IntMatrix, RatVector};
use crate::support::{Support, MAX_AMBIENT};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Str(String),
    Signed(i64),
    Unsigned(u64),
}

impl IntRepr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Str(s) => BigInt::from_str(s.trim()).map_err(|_| E::custom(format!("invalid integer {s:?}"))),
            IntRepr::Signed(i) => Ok(i.into()),
            IntRepr::Unsigned(u) => Ok(u.into()),
        }
    }
}

fn ints_to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn ints_from_reprs<E: de::Error>(v: Vec<IntRepr>) -> Result<Vec<BigInt>, E> {
    v.into_iter().map(IntRepr::into_bigint).collect()
}

/// `serde(with = ..)` adapter for a single `BigInt` field.
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_bigint()
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ints_to_strings(self.entries()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(LatticeVector::new(ints_from_reprs(Vec::<IntRepr>::deserialize(d)?)?))
    }
}

impl Serialize for Support {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ix = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = ix.iter().find(|&&i| i == 0 || i > MAX_AMBIENT) {
            return Err(de::Error::custom(format!("index {bad} outside 1..={MAX_AMBIENT}")));
        }
        Ok(Support::from_one_based(&ix))
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().iter().map(BigRational::to_string).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|x| BigRational::from_str(x.trim()).map_err(|_| de::Error::custom(format!("invalid rational {x:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(RatVector)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<String>>,
        }
        Repr { rows: self.rows(), cols: self.cols(), entries: self.row_iter().map(ints_to_strings).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rows: usize,
            cols: usize,
            entries: Vec<Vec<IntRepr>>,
        }
        let r = Repr::deserialize(d)?;
        if r.entries.len() != r.rows {
            return Err(de::Error::custom(format!("expected {} rows, found {}", r.rows, r.entries.len())));
        }
        let rows = r.entries.into_iter().map(ints_from_reprs).collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(r.cols, rows).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    ambient: usize,
    generators: Vec<LatticeVector>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LatticeFile { ambient: self.ambient(), generators: self.basis_vectors() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = LatticeFile::deserialize(d)?;
        Lattice::from_generators(f.ambient, &f.generators).map_err(de::Error::custom)
    }
}

/// A list of vectors with optional names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorSet {
    pub vectors: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl VectorSet {
    pub fn unnamed(vectors: Vec<LatticeVector>) -> Self {
        Self { vectors, names: None }
    }
}

/// A lattice together with named vectors; readable as a lattice file and as a vector-set file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub ambient: usize,
    pub generators: Vec<LatticeVector>,
    pub vectors: Vec<LatticeVector>,
    pub names: Vec<String>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_lattice(s: &str) -> Result<Lattice> {
    serde_json::from_str(s).map_err(parse_err)
}

pub fn parse_vectors(s: &str) -> Result<VectorSet> {
    let set: VectorSet = serde_json::from_str(s).map_err(parse_err)?;
    if let Some(names) = &set.names {
        if names.len() != set.vectors.len() {
            return Err(Error::Parse(format!("{} names for {} vectors", names.len(), set.vectors.len())));
        }
    }
    Ok(set)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}
