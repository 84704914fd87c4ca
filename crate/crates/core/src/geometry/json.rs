//! JSON documents for polytopes. Integers that do not fit in `i64` are written
//! as decimal strings; non-integral rationals as `{"num": .., "den": ..}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{convex_hull, halfspace_intersection, GeometryError, HalfSpace, LatticeSide, LatticeVector, Polytope, RationalPoint};
use crate::scalar::ExactScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("malformed integer {0:?}")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inequality normals must be integral")]
    NonIntegralNormal,
    #[error("polytope document has neither vertices nor inequalities")]
    NoData,
    #[error("document dimension {dim} disagrees with a coordinate vector of length {len}")]
    Length { dim: usize, len: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDoc {
    Small(i64),
    Big(String),
}

impl IntDoc {
    pub fn to_bigint(&self) -> Result<BigInt, DocError> {
        match self {
            IntDoc::Small(v) => Ok(BigInt::from(*v)),
            IntDoc::Big(s) => BigInt::from_str(s.trim()).map_err(|_| DocError::BadInteger(s.clone())),
        }
    }
}

impl From<&BigInt> for IntDoc {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => IntDoc::Small(s),
            None => IntDoc::Big(v.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Int(IntDoc),
    Frac { num: IntDoc, den: IntDoc },
}

impl ScalarDoc {
    pub fn to_scalar<T: ExactScalar>(&self) -> Result<T, DocError> {
        let (n, d) = match self {
            ScalarDoc::Int(IntDoc::Big(s)) if s.contains('/') => {
                let (a, b) = s.split_once('/').expect("checked");
                let bad = || DocError::BadInteger(s.clone());
                (BigInt::from_str(a.trim()).map_err(|_| bad())?, BigInt::from_str(b.trim()).map_err(|_| bad())?)
            }
            ScalarDoc::Int(i) => (i.to_bigint()?, BigInt::from(1)),
            ScalarDoc::Frac { num, den } => (num.to_bigint()?, den.to_bigint()?),
        };
        if d.is_zero() {
            return Err(DocError::ZeroDenominator);
        }
        Ok(T::from_ratio(&n, &d))
    }

    pub fn from_scalar<T: ExactScalar>(v: &T) -> Self {
        if v.is_integral() {
            ScalarDoc::Int(IntDoc::from(&v.numer_bigint()))
        } else {
            ScalarDoc::Frac { num: IntDoc::from(&v.numer_bigint()), den: IntDoc::from(&v.denom_bigint()) }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityDoc {
    pub normal: Vec<IntDoc>,
    pub bound: ScalarDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    #[serde(default)]
    pub side: LatticeSide,
    #[serde(default)]
    pub vertices: Vec<Vec<ScalarDoc>>,
    #[serde(default)]
    pub inequalities: Vec<InequalityDoc>,
}

pub fn point_doc<T: ExactScalar>(p: &RationalPoint<T>) -> Vec<ScalarDoc> {
    p.coords().iter().map(ScalarDoc::from_scalar).collect()
}

pub fn point_from_doc<T: ExactScalar>(doc: &[ScalarDoc], dim: usize) -> Result<RationalPoint<T>, DocError> {
    if doc.len() != dim {
        return Err(DocError::Length { dim, len: doc.len() });
    }
    Ok(RationalPoint(doc.iter().map(ScalarDoc::to_scalar).collect::<Result<_, _>>()?))
}

impl PolytopeDoc {
    pub fn from_polytope<T: ExactScalar>(p: &Polytope<T>) -> Self {
        PolytopeDoc {
            dim: p.ambient_dim(),
            side: p.side(),
            vertices: p.vertices().iter().map(point_doc).collect(),
            inequalities: p
                .facets()
                .iter()
                .map(|h| InequalityDoc {
                    normal: h.normal.coords.iter().map(IntDoc::from).collect(),
                    bound: ScalarDoc::from_scalar(&h.bound),
                })
                .collect(),
        }
    }

    /// Vertices take precedence; inequalities are only used when no vertices
    /// are given.
    pub fn to_polytope<T: ExactScalar>(&self) -> Result<Polytope<T>, DocError> {
        if !self.vertices.is_empty() {
            let pts = self
                .vertices
                .iter()
                .map(|v| point_from_doc(v, self.dim))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(convex_hull(&pts, self.dim)?.on_side(self.side));
        }
        if self.inequalities.is_empty() {
            return Err(DocError::NoData);
        }
        let hs = self
            .inequalities
            .iter()
            .map(|q| {
                if q.normal.len() != self.dim {
                    return Err(DocError::Length { dim: self.dim, len: q.normal.len() });
                }
                let normal = q.normal.iter().map(IntDoc::to_bigint).collect::<Result<Vec<_>, _>>()?;
                Ok(HalfSpace::new(LatticeVector::new(normal, self.side.dual()), q.bound.to_scalar()?))
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(halfspace_intersection(&hs, self.dim)?)
    }
}
