//! Transversal faces, adjoint pairs and the polytopal complex Σ ⊂ Δ×∇.

mod complex;
mod subdivision;

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{linalg, FaceId, GeometryError};
use crate::nef::NefPartitionData;
use crate::{Polytope, Rational, RationalPoint};

pub use complex::{sigma_cells, sigma_euler, SideCell, SideComplex, SigmaCell, SigmaComplex};
pub use subdivision::{CayleySubdivision, CellDoc, SubdivisionCell, SubdivisionDoc, ValidatedSubdivision};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("inconsistent duality: {0}")]
    InconsistentDuality(String),
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("cells do not form a complex: {0}")]
    NotAComplex(String),
}

/// `NablaCheck` faces carry the partition `E_i` (the `s` faces); `DeltaCheck`
/// faces carry the vertices of the `∇^(i)` (the `t` faces).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    NablaCheck,
    DeltaCheck,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::NablaCheck => "nabla_check",
            Side::DeltaCheck => "delta_check",
        })
    }
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::NablaCheck => Side::DeltaCheck,
            Side::DeltaCheck => Side::NablaCheck,
        }
    }

    /// The polytope whose faces are subdivided on this side.
    pub fn polytope(self, data: &NefPartitionData) -> &Polytope {
        match self {
            Side::NablaCheck => data.nabla_check(),
            Side::DeltaCheck => &data.delta_check,
        }
    }

    /// The Minkowski summands whose faces the components are.
    pub fn part_polytopes(self, data: &NefPartitionData) -> &[Polytope] {
        match self {
            Side::NablaCheck => &data.delta_parts,
            Side::DeltaCheck => &data.nabla_parts,
        }
    }

    /// The polytope receiving the sums `s_Δ` or `t_∇`.
    pub fn sum_polytope(self, data: &NefPartitionData) -> &Polytope {
        match self {
            Side::NablaCheck => &data.delta,
            Side::DeltaCheck => &data.nabla,
        }
    }

    pub fn part_of_vertex(self, data: &NefPartitionData, v: usize) -> usize {
        match self {
            Side::NablaCheck => data.vertex_part_map[v].0,
            Side::DeltaCheck => data.delta_check_part_map[v],
        }
    }
}

/// A proper face meeting every part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalFace {
    pub side: Side,
    pub face: FaceId,
    pub vertex_ids: Vec<usize>,
    /// Vertex ids (of the side polytope) of each component.
    pub components: Vec<Vec<usize>>,
    pub component_dims: Vec<usize>,
    /// Face of `Δ` (resp. `∇`) equal to the sum of the components.
    pub sum_face: FaceId,
    pub sum_dim: usize,
}

impl TransversalFace {
    pub fn is_minimal(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

pub(crate) fn affine_dim(points: &[&RationalPoint]) -> usize {
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.0.clone()).collect();
    linalg::affine_rank(&rows)
}

/// Dimension of `Σ conv(parts[i])`: rank of the union of the direction spaces.
pub(crate) fn sum_dim(parts: &[Vec<&RationalPoint>]) -> usize {
    let mut rows = Vec::new();
    for part in parts {
        if let Some((base, rest)) = part.split_first() {
            for p in rest {
                rows.push(linalg::sub(&p.0, &base.0));
            }
        }
    }
    linalg::rank(&rows)
}

/// All pairwise sums `p_1 + ... + p_r` with `p_i` drawn from `parts[i]`.
pub(crate) fn minkowski_points(parts: &[Vec<&RationalPoint>]) -> Vec<RationalPoint> {
    let dim = parts[0][0].dim();
    let mut acc = vec![RationalPoint::origin(dim)];
    for part in parts {
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for a in &acc {
            for p in part {
                next.push(a.add(p));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    acc
}

pub fn transversal_faces(data: &NefPartitionData, side: Side) -> Result<Vec<TransversalFace>, SigmaError> {
    let poly = side.polytope(data);
    let target = side.sum_polytope(data);
    let r = data.r();
    let mut out = Vec::new();
    for (id, face) in poly.proper_faces() {
        let mut components = vec![Vec::new(); r];
        for &v in &face.vertex_ids {
            components[side.part_of_vertex(data, v)].push(v);
        }
        if components.iter().any(Vec::is_empty) {
            continue;
        }
        let pts: Vec<Vec<&RationalPoint>> = components
            .iter()
            .map(|c| c.iter().map(|&v| &poly.vertices()[v]).collect())
            .collect();
        let component_dims: Vec<usize> = pts.iter().map(|p| affine_dim(p)).collect();
        let sums = minkowski_points(&pts);
        let sum_face = target.smallest_face_containing(&sums);
        let dim = sum_dim(&pts);
        let genuine = sum_face.dim == dim
            && target
                .face_points(sum_face)
                .iter()
                .all(|v| sums.binary_search(v).is_ok());
        if !genuine {
            return Err(SigmaError::InconsistentDuality(format!(
                "the component sum of {side} face {:?} is not a face",
                face.vertex_ids
            )));
        }
        out.push(TransversalFace {
            side,
            face: id,
            vertex_ids: face.vertex_ids.clone(),
            components,
            component_dims,
            sum_face,
            sum_dim: dim,
        });
    }
    Ok(out)
}

/// `s` indexes the `∇∨` transversal list, `t` the `Δ∨` list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdjointPair {
    pub s: usize,
    pub t: usize,
}

/// Both transversal face lists and the adjoint bijection between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointTable {
    pub s_faces: Vec<TransversalFace>,
    pub t_faces: Vec<TransversalFace>,
    pub pairs: Vec<AdjointPair>,
    pub adjoint_of_s: Vec<usize>,
    pub adjoint_of_t: Vec<usize>,
}

impl AdjointTable {
    pub fn faces(&self, side: Side) -> &[TransversalFace] {
        match side {
            Side::NablaCheck => &self.s_faces,
            Side::DeltaCheck => &self.t_faces,
        }
    }

    /// Index of the transversal face with the given face id.
    pub fn position(&self, side: Side, face: FaceId) -> Option<usize> {
        self.faces(side).iter().position(|f| f.face == face)
    }

    pub fn adjoint(&self, side: Side, index: usize) -> usize {
        match side {
            Side::NablaCheck => self.adjoint_of_s[index],
            Side::DeltaCheck => self.adjoint_of_t[index],
        }
    }
}

/// Vertices of `dual_of` paired to 1 with every point of `pts`.
fn dual_vertex_set(dual_of: &Polytope, pts: &[RationalPoint]) -> Vec<usize> {
    let one = Rational::one();
    (0..dual_of.vertices().len())
        .filter(|&v| pts.iter().all(|p| dual_of.vertices()[v].dot(p) == one))
        .collect()
}

pub fn adjoint_pairs(data: &NefPartitionData) -> Result<AdjointTable, SigmaError> {
    let s_faces = transversal_faces(data, Side::NablaCheck)?;
    let t_faces = transversal_faces(data, Side::DeltaCheck)?;
    let n = data.cy_dim();
    let r = Rational::from_integer(data.r().into());
    let nabla_check = data.nabla_check();
    let mut adjoint_of_s = vec![usize::MAX; s_faces.len()];
    let mut adjoint_of_t = Vec::with_capacity(t_faces.len());
    let mut pairs = Vec::with_capacity(t_faces.len());
    for (ti, t) in t_faces.iter().enumerate() {
        let t_sum = data.nabla.face_points(t.sum_face);
        let s_vertices = dual_vertex_set(nabla_check, &t_sum);
        let si = nabla_check
            .face_by_vertices(&s_vertices)
            .and_then(|id| s_faces.iter().position(|s| s.face == id))
            .ok_or_else(|| {
                SigmaError::InconsistentDuality(format!("the face dual to t_∇ of {:?} is not transversal", t.vertex_ids))
            })?;
        let s = &s_faces[si];
        let t_pts = data.delta_check.face_points(t.face);
        let s_delta_expected = dual_vertex_set(&data.delta, &t_pts);
        if data.delta.face(s.sum_face).vertex_ids != s_delta_expected {
            return Err(SigmaError::InconsistentDuality(format!(
                "s_Δ of {:?} is not the face of Δ dual to {:?}",
                s.vertex_ids, t.vertex_ids
            )));
        }
        if s.sum_dim + t.sum_dim != n {
            return Err(SigmaError::InconsistentDuality(format!(
                "dimensions {} + {} of an adjoint pair differ from {n}",
                s.sum_dim, t.sum_dim
            )));
        }
        for x in data.delta.face_points(s.sum_face) {
            for y in &t_sum {
                if x.dot(y) != r {
                    return Err(SigmaError::InconsistentDuality(format!("pairing {x}·{y} differs from {r}")));
                }
            }
        }
        if adjoint_of_s[si] != usize::MAX {
            return Err(SigmaError::InconsistentDuality(format!("face {:?} has two adjoints", s.vertex_ids)));
        }
        adjoint_of_s[si] = ti;
        adjoint_of_t.push(si);
        pairs.push(AdjointPair { s: si, t: ti });
    }
    if let Some(si) = adjoint_of_s.iter().position(|&t| t == usize::MAX) {
        return Err(SigmaError::InconsistentDuality(format!("face {:?} has no adjoint", s_faces[si].vertex_ids)));
    }
    pairs.sort();
    Ok(AdjointTable { s_faces, t_faces, pairs, adjoint_of_s, adjoint_of_t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nef::NefPartition;
    use std::collections::BTreeSet;

    fn p5() -> NefPartitionData {
        NefPartition::projective(&[4, 2]).unwrap().build().unwrap()
    }

    #[test]
    fn p5_transversal_counts() {
        let data = p5();
        let s = transversal_faces(&data, Side::NablaCheck).unwrap();
        let t = transversal_faces(&data, Side::DeltaCheck).unwrap();
        assert_eq!(s.len(), 44);
        assert_eq!(t.len(), 44);
        assert_eq!(s.iter().filter(|f| f.is_minimal()).count(), 8);
        assert_eq!(t.iter().filter(|f| f.is_minimal()).count(), 6);
        let triangles: BTreeSet<FaceId> = t.iter().filter(|f| f.sum_dim == 2).map(|f| f.sum_face).collect();
        assert_eq!(triangles.len(), 16);
    }

    #[test]
    fn adjoint_pairs_are_a_bijection() {
        let data = p5();
        let table = adjoint_pairs(&data).unwrap();
        assert_eq!(table.pairs.len(), 44);
        for p in &table.pairs {
            let s = &table.s_faces[p.s];
            let t = &table.t_faces[p.t];
            assert_eq!(s.sum_dim + t.sum_dim, 3);
        }
    }

    #[test]
    fn quintic_every_proper_face_is_transversal() {
        let data = NefPartition::projective(&[5]).unwrap().build().unwrap();
        let s = transversal_faces(&data, Side::NablaCheck).unwrap();
        assert_eq!(s.len(), data.nabla_check().proper_faces().count());
        assert!(s.iter().all(|f| f.sum_dim == f.face.dim));
    }

    #[test]
    fn unsubdivided_sigma_is_a_sphere() {
        for degrees in [&[4, 2][..], &[5], &[3, 2], &[4], &[3]] {
            let data = NefPartition::projective(degrees).unwrap().build().unwrap();
            let complex = sigma_cells(&data, &[], &[]).unwrap();
            let n = data.cy_dim() as i64;
            assert_eq!(sigma_euler(&complex).unwrap(), 1 + (-1i64).pow(n as u32), "{degrees:?}");
        }
    }
}
