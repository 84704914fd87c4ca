//! Convex hulls via double description, with canonical output ordering.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::dd::extreme_rays;
use super::linalg::{self, nullspace, row_reduce};
use super::{Equation, Face, FaceId, GeometryError, HalfSpace, LatticeSide, LatticeVector, Polytope, RationalPoint};
use crate::scalar::{primitive_integer_vector, ExactScalar};

/// Convex hull of `points` in `T^ambient_dim`. Redundant points are dropped;
/// lower-dimensional inputs are handled inside their affine span.
pub fn convex_hull<T: ExactScalar>(
    points: &[RationalPoint<T>],
    ambient_dim: usize,
) -> Result<Polytope<T>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != ambient_dim) {
        return Err(GeometryError::DimensionMismatch { expected: ambient_dim, found: bad.dim() });
    }
    let mut pts: Vec<RationalPoint<T>> = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = pts[0].0.clone();
    let mut diffs: Vec<Vec<T>> = pts[1..].iter().map(|p| linalg::sub(&p.0, &base)).collect();
    let original_diffs = diffs.clone();
    let span = if diffs.is_empty() { Vec::new() } else { row_reduce(&mut diffs) };
    let k = span.len();

    let equations = affine_equations(&original_diffs, &base, ambient_dim, k);
    let side = LatticeSide::N;

    if k == 0 {
        return Ok(Polytope::assemble(ambient_dim, side, vec![pts[0].clone()], Vec::new(), equations));
    }

    // Cone of valid inequalities (b, a) with a · q <= b for all projected q.
    let rows: Vec<Vec<T>> = pts
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(T::one());
            row.extend(span.iter().map(|&c| -p.0[c].clone()));
            row
        })
        .collect();
    let rays = extreme_rays(&rows, k + 1).expect("projected points are affinely spanning");

    let mut facets: Vec<HalfSpace<T>> = rays
        .into_iter()
        .map(|ray| {
            let mut normal = vec![T::zero(); ambient_dim];
            for (j, &c) in span.iter().enumerate() {
                normal[c] = ray[j + 1].clone();
            }
            let mut full = normal;
            full.push(ray[0].clone());
            let ints = primitive_integer_vector(&full);
            let bound = T::from_bigint(&ints[ambient_dim]);
            HalfSpace::new(LatticeVector::new(ints[..ambient_dim].to_vec(), side.dual()), bound)
        })
        .collect();
    facets.sort();
    facets.dedup();

    let sat: Vec<BTreeSet<usize>> = pts
        .iter()
        .map(|p| (0..facets.len()).filter(|&f| facets[f].saturates(p)).collect())
        .collect();
    let vertices: Vec<RationalPoint<T>> = (0..pts.len())
        .filter(|&i| (0..pts.len()).all(|j| j == i || !sat[j].is_superset(&sat[i])))
        .map(|i| pts[i].clone())
        .collect();

    Ok(Polytope::assemble(ambient_dim, side, vertices, facets, equations))
}

fn affine_equations<T: ExactScalar>(
    diffs: &[Vec<T>],
    base: &[T],
    ambient_dim: usize,
    k: usize,
) -> Vec<Equation<T>> {
    if k == ambient_dim {
        return Vec::new();
    }
    let basis = if diffs.is_empty() {
        (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect()
    } else {
        nullspace(diffs, ambient_dim)
    };
    // Reduce the normals so the representation is canonical.
    let mut m = basis;
    row_reduce(&mut m);
    let mut eqs: Vec<Equation<T>> = m
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut ints = primitive_integer_vector(&r);
            if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                ints = ints.into_iter().map(|x| -x).collect();
            }
            let normal: Vec<T> = ints.iter().map(T::from_bigint).collect();
            let value = linalg::dot(&normal, base);
            Equation { normal: LatticeVector::new(ints, LatticeSide::M), value }
        })
        .collect();
    eqs.sort();
    eqs
}

impl<T: ExactScalar> Polytope<T> {
    /// Builds the face lattice from an already canonical V/H description.
    pub(crate) fn assemble(
        ambient_dim: usize,
        side: LatticeSide,
        mut vertices: Vec<RationalPoint<T>>,
        facets: Vec<HalfSpace<T>>,
        equations: Vec<Equation<T>>,
    ) -> Self {
        vertices.sort();
        let dim = ambient_dim - equations.len();
        let facet_verts: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| (0..vertices.len()).filter(|&v| f.saturates(&vertices[v])).collect())
            .collect();
        let saturated = |verts: &[usize]| -> Vec<usize> {
            (0..facets.len())
                .filter(|&f| verts.iter().all(|v| facet_verts[f].binary_search(v).is_ok()))
                .collect()
        };

        let mut faces: Vec<Vec<Face>> = vec![Vec::new(); dim + 1];
        let all: Vec<usize> = (0..vertices.len()).collect();
        faces[dim].push(Face { vertex_ids: all, dim, saturated_facets: Vec::new() });
        for level in (1..=dim).rev() {
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for face in &faces[level] {
                let candidates: BTreeSet<Vec<usize>> = (0..facets.len())
                    .filter(|f| !face.saturated_facets.contains(f))
                    .map(|f| {
                        face.vertex_ids
                            .iter()
                            .copied()
                            .filter(|v| facet_verts[f].binary_search(v).is_ok())
                            .collect::<Vec<usize>>()
                    })
                    .filter(|c| !c.is_empty() && c.len() < face.vertex_ids.len())
                    .collect();
                for c in &candidates {
                    let maximal = candidates.iter().all(|o| {
                        o == c || !(o.len() > c.len() && c.iter().all(|v| o.binary_search(v).is_ok()))
                    });
                    if maximal {
                        next.insert(c.clone());
                    }
                }
            }
            faces[level - 1] = next
                .into_iter()
                .map(|vs| {
                    let sat = saturated(&vs);
                    Face { vertex_ids: vs, dim: level - 1, saturated_facets: sat }
                })
                .collect();
        }
        let mut face_index = BTreeMap::new();
        for (d, fs) in faces.iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                face_index.insert(f.vertex_ids.clone(), FaceId { dim: d, index: i });
            }
        }
        Polytope { ambient_dim, dim, side, vertices, facets, equations, faces, face_index }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn pts(v: &[&[i64]]) -> Vec<RationalPoint<BigRational>> {
        v.iter().map(|c| RationalPoint::from_i64(c)).collect()
    }

    #[test]
    fn square_drops_interior_point() {
        let p = convex_hull(&pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]), 2).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        let counts: Vec<usize> = p.face_lattice().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![4, 4, 1]);
    }

    #[test]
    fn segment_in_the_plane() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 2], &[1, 1]]), 2).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.equations().len(), 1);
        assert!(p.contains(&RationalPoint::from_i64(&[1, 1])));
        assert!(!p.contains(&RationalPoint::from_i64(&[1, 0])));
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&pts(&[&[3, 4, 5]]), 3).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.face_lattice().len(), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(
            convex_hull::<BigRational>(&[], 2).unwrap_err(),
            GeometryError::EmptyInput
        );
        assert!(matches!(
            convex_hull(&pts(&[&[0, 0], &[1]]), 2),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }
}
