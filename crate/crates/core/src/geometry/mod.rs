//! Exact lattice polyhedra: hulls, polar duals, face lattices, Minkowski sums.

mod dd;
mod hull;
pub mod json;
pub mod linalg;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::ExactScalar;

pub use hull::convex_hull;
pub use ops::{halfspace_intersection, is_reflexive, lattice_points, minkowski_sum, polar_dual};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattice side mismatch")]
    SideMismatch,
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("the intersection of half-spaces is unbounded")]
    Unbounded,
    #[error("the intersection of half-spaces is empty")]
    Empty,
}

/// Which of the two dual lattices a vector lives in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LatticeSide {
    #[default]
    N,
    M,
}

impl LatticeSide {
    pub fn dual(self) -> Self {
        match self {
            LatticeSide::N => LatticeSide::M,
            LatticeSide::M => LatticeSide::N,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    pub coords: Vec<BigInt>,
    pub side: LatticeSide,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>, side: LatticeSide) -> Self {
        LatticeVector { coords, side }
    }

    pub fn from_i64(coords: &[i64], side: LatticeSide) -> Self {
        LatticeVector::new(coords.iter().map(|&c| BigInt::from(c)).collect(), side)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Exact dual pairing; `None` unless the vectors sit in opposite lattices
    /// of the same rank.
    pub fn pairing(&self, other: &LatticeVector) -> Option<BigInt> {
        if self.side == other.side || self.rank() != other.rank() {
            return None;
        }
        Some(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }

    pub fn to_point<T: ExactScalar>(&self) -> RationalPoint<T> {
        RationalPoint(self.coords.iter().map(T::from_bigint).collect())
    }

    pub(crate) fn as_scalars<T: ExactScalar>(&self) -> Vec<T> {
        self.coords.iter().map(T::from_bigint).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A point with exact rational coordinates, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint<T>(pub Vec<T>);

impl<T: ExactScalar> RationalPoint<T> {
    pub fn from_i64(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        RationalPoint(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(T::is_integral)
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_lattice(&self, side: LatticeSide) -> Option<LatticeVector> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticeVector::new(self.0.iter().map(T::numer_bigint).collect(), side))
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalPoint(linalg::add(&self.0, &other.0))
    }

    pub fn dot(&self, other: &Self) -> T {
        linalg::dot(&self.0, &other.0)
    }
}

impl<T: ExactScalar> fmt::Display for RationalPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `{x : <x, normal> <= bound}` with a primitive integral normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace<T> {
    pub normal: LatticeVector,
    pub bound: T,
}

impl<T: ExactScalar> HalfSpace<T> {
    pub fn new(normal: LatticeVector, bound: T) -> Self {
        HalfSpace { normal, bound }
    }

    pub fn value(&self, p: &RationalPoint<T>) -> T {
        linalg::dot(&self.normal.as_scalars::<T>(), &p.0)
    }

    pub fn contains(&self, p: &RationalPoint<T>) -> bool {
        self.value(p) <= self.bound
    }

    pub fn saturates(&self, p: &RationalPoint<T>) -> bool {
        self.value(p) == self.bound
    }
}

/// `{x : <x, normal> = value}`; one of these per missing dimension of a
/// lower-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation<T> {
    pub normal: LatticeVector,
    pub value: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceId {
    pub dim: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
    pub saturated_facets: Vec<usize>,
}

/// A bounded convex polytope with exact V- and H-representation and its full
/// face lattice. Vertices are sorted lexicographically; facets are sorted by
/// `(normal, bound)`.
#[derive(Clone, Debug)]
pub struct Polytope<T> {
    ambient_dim: usize,
    dim: usize,
    side: LatticeSide,
    vertices: Vec<RationalPoint<T>>,
    facets: Vec<HalfSpace<T>>,
    equations: Vec<Equation<T>>,
    faces: Vec<Vec<Face>>,
    face_index: BTreeMap<Vec<usize>, FaceId>,
}

impl<T> PartialEq for Polytope<T>
where
    T: PartialEq,
{
    /// Two polytopes are equal when they are the same point set in the same lattice.
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.side == other.side
            && self.vertices == other.vertices
    }
}

impl<T: ExactScalar> Polytope<T> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> LatticeSide {
        self.side
    }

    /// Same point set, reinterpreted in the other lattice tag.
    pub fn on_side(mut self, side: LatticeSide) -> Self {
        if side != self.side {
            self.side = side;
            for f in &mut self.facets {
                f.normal.side = side.dual();
            }
            for e in &mut self.equations {
                e.normal.side = side.dual();
            }
        }
        self
    }

    pub fn vertices(&self) -> &[RationalPoint<T>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace<T>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Equation<T>] {
        &self.equations
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    /// Faces grouped by dimension, from vertices (index 0) up to the polytope
    /// itself (index `dim`).
    pub fn face_lattice(&self) -> &[Vec<Face>] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> &[Face] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.dim][id.index]
    }

    pub fn face_by_vertices(&self, vertex_ids: &[usize]) -> Option<FaceId> {
        self.face_index.get(vertex_ids).copied()
    }

    /// Proper faces: everything except the polytope itself.
    pub fn proper_faces(&self) -> impl Iterator<Item = (FaceId, &Face)> {
        self.faces
            .iter()
            .enumerate()
            .take(self.dim)
            .flat_map(|(d, fs)| {
                fs.iter()
                    .enumerate()
                    .map(move |(i, f)| (FaceId { dim: d, index: i }, f))
            })
    }

    pub fn contains(&self, p: &RationalPoint<T>) -> bool {
        p.dim() == self.ambient_dim
            && self.facets.iter().all(|f| f.contains(p))
            && self
                .equations
                .iter()
                .all(|e| linalg::dot(&e.normal.as_scalars::<T>(), &p.0) == e.value)
    }

    /// Strict interior relative to the ambient space.
    pub fn contains_in_interior(&self, p: &RationalPoint<T>) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.value(p) < f.bound)
    }

    /// Strict interior relative to the affine span.
    pub fn contains_in_relative_interior(&self, p: &RationalPoint<T>) -> bool {
        self.contains(p) && self.facets.iter().all(|f| f.value(p) < f.bound)
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().all(RationalPoint::is_integral)
    }

    pub fn index_of_vertex(&self, p: &RationalPoint<T>) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    /// `true` when `p` lies on the closed face `id`.
    pub fn face_contains(&self, id: FaceId, p: &RationalPoint<T>) -> bool {
        self.contains(p)
            && self
                .face(id)
                .saturated_facets
                .iter()
                .all(|&f| self.facets[f].saturates(p))
    }

    /// Smallest face containing every point of `points` (all assumed to lie in
    /// the polytope).
    pub fn smallest_face_containing(&self, points: &[RationalPoint<T>]) -> FaceId {
        let sat: Vec<usize> = (0..self.facets.len())
            .filter(|&f| points.iter().all(|p| self.facets[f].saturates(p)))
            .collect();
        self.face_with_saturation(&sat)
    }

    /// Indices of the facets whose hyperplanes contain `p`.
    pub fn saturation(&self, p: &RationalPoint<T>) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.facets[f].saturates(p)).collect()
    }

    /// The face cut out by a set of facet hyperplanes, e.g. the intersection of
    /// several `saturation` sets.
    pub fn face_with_saturation(&self, sat: &[usize]) -> FaceId {
        let verts: Vec<usize> = self.faces[0]
            .iter()
            .filter(|v| sat.iter().all(|f| v.saturated_facets.binary_search(f).is_ok()))
            .map(|v| v.vertex_ids[0])
            .collect();
        let mut verts = verts;
        verts.sort_unstable();
        self.face_index[&verts]
    }

    /// Vertices of the face, as points.
    pub fn face_points(&self, id: FaceId) -> Vec<RationalPoint<T>> {
        self.face(id)
            .vertex_ids
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    /// Faces of dimension `dim(id) - 1` contained in face `id`.
    pub fn facets_of_face(&self, id: FaceId) -> Vec<FaceId> {
        if id.dim == 0 {
            return Vec::new();
        }
        let verts = &self.face(id).vertex_ids;
        self.faces[id.dim - 1]
            .iter()
            .enumerate()
            .filter(|(_, f)| f.vertex_ids.iter().all(|v| verts.binary_search(v).is_ok()))
            .map(|(i, _)| FaceId { dim: id.dim - 1, index: i })
            .collect()
    }

    /// Coordinates onto which the affine span projects injectively (pivot
    /// columns of the direction space).
    pub fn span_coordinates(&self) -> Vec<usize> {
        let base = &self.vertices[0].0;
        let mut diffs: Vec<Vec<T>> = self.vertices[1..]
            .iter()
            .map(|v| linalg::sub(&v.0, base))
            .collect();
        linalg::row_reduce(&mut diffs)
    }

    /// Pulling triangulation of the polytope into simplices, as vertex-id lists.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        self.triangulate_face(FaceId { dim: self.dim, index: 0 })
    }

    /// Pulling triangulation of every facet. Since the apex of each face is
    /// its smallest vertex id, the pieces agree on shared faces.
    pub fn boundary_triangulation(&self) -> Vec<Vec<usize>> {
        if self.dim == 0 {
            return Vec::new();
        }
        (0..self.faces_of_dim(self.dim - 1).len())
            .flat_map(|index| self.triangulate_face(FaceId { dim: self.dim - 1, index }))
            .collect()
    }

    fn triangulate_face(&self, id: FaceId) -> Vec<Vec<usize>> {
        let face = self.face(id);
        if face.vertex_ids.len() == id.dim + 1 {
            return vec![face.vertex_ids.clone()];
        }
        let apex = face.vertex_ids[0];
        let mut out = Vec::new();
        for sub in self.facets_of_face(id) {
            if self.face(sub).vertex_ids.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate_face(sub) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    /// `dim!` times the volume, measured in `coords` (which must project the
    /// affine span injectively).
    pub fn scaled_volume_in(&self, coords: &[usize]) -> T {
        if self.dim == 0 {
            return T::one();
        }
        self.triangulate()
            .into_iter()
            .map(|s| {
                let pts: Vec<Vec<T>> = s.iter().map(|&v| self.vertices[v].0.clone()).collect();
                linalg::simplex_volume(&pts, coords)
            })
            .fold(T::zero(), |a, b| a + b)
    }

    /// Lattice-normalized volume for full-dimensional lattice polytopes.
    pub fn normalized_volume(&self) -> T {
        let coords: Vec<usize> = (0..self.ambient_dim).collect();
        self.scaled_volume_in(&coords)
    }
}
