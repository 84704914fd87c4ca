//! Exact combinatorics of nef partitions, the sigma complex of a mirror pair
//! of complete intersections, and the combinatorial discriminant graph.

pub mod census;
pub mod discriminant;
pub mod figures;
pub mod fixtures;
pub mod geometry;
pub mod nef;
pub mod scalar;
pub mod sigma;

use num_rational::BigRational;

pub use geometry::{Face, FaceId, GeometryError, LatticeSide, LatticeVector};

pub type Rational = BigRational;
pub type Polytope = geometry::Polytope<Rational>;
pub type RationalPoint = geometry::RationalPoint<Rational>;
pub type HalfSpace = geometry::HalfSpace<Rational>;
