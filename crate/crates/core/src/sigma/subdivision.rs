use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Side, SigmaError};
use crate::geometry::json::{DocError, IntDoc};
use crate::geometry::{convex_hull, linalg, FaceId};
use crate::nef::NefPartitionData;
use crate::{Rational, RationalPoint};

/// One maximal cell: lattice points grouped by part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    pub parts: Vec<Vec<RationalPoint>>,
}

/// A subdivision of one face of `∇∨` or `Δ∨` into Cayley cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySubdivision {
    pub side: Side,
    /// Vertex ids of the subdivided face.
    pub face: Vec<usize>,
    pub cells: Vec<SubdivisionCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub parts: Vec<Vec<Vec<IntDoc>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionDoc {
    pub side: Side,
    pub face: Vec<usize>,
    pub cells: Vec<CellDoc>,
}

impl CayleySubdivision {
    pub fn from_doc(doc: &SubdivisionDoc) -> Result<Self, DocError> {
        let cells = doc
            .cells
            .iter()
            .map(|c| {
                let parts = c
                    .parts
                    .iter()
                    .map(|part| {
                        part.iter()
                            .map(|p| {
                                p.iter()
                                    .map(|x| x.to_bigint().map(Rational::from_integer))
                                    .collect::<Result<Vec<_>, _>>()
                                    .map(crate::geometry::RationalPoint)
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SubdivisionCell { parts })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(CayleySubdivision { side: doc.side, face: doc.face.clone(), cells })
    }

    /// Points are written with their integer numerators; callers only build
    /// subdivisions out of lattice points.
    pub fn to_doc(&self) -> SubdivisionDoc {
        SubdivisionDoc {
            side: self.side,
            face: self.face.clone(),
            cells: self
                .cells
                .iter()
                .map(|c| CellDoc {
                    parts: c
                        .parts
                        .iter()
                        .map(|part| {
                            part.iter()
                                .map(|p| p.0.iter().map(|x| IntDoc::from(x.numer())).collect())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn validate(&self, data: &NefPartitionData) -> Result<ValidatedSubdivision, SigmaError> {
        validate(self, data)
    }
}

/// A checked subdivision with its points numbered. `cells[k][i]` holds the
/// sorted point ids of part `i` of cell `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedSubdivision {
    pub side: Side,
    pub face: FaceId,
    pub points: Vec<RationalPoint>,
    pub point_part: Vec<usize>,
    pub cells: Vec<Vec<Vec<usize>>>,
}

fn invalid(msg: impl Into<String>) -> SigmaError {
    SigmaError::InvalidSubdivision(msg.into())
}

fn flatten(cell: &[Vec<usize>]) -> Vec<usize> {
    let mut all: Vec<usize> = cell.iter().flatten().copied().collect();
    all.sort_unstable();
    all
}

fn validate(sub: &CayleySubdivision, data: &NefPartitionData) -> Result<ValidatedSubdivision, SigmaError> {
    let side = sub.side;
    let poly = side.polytope(data);
    let part_polys = side.part_polytopes(data);
    let r = data.r();
    let d = poly.ambient_dim();
    let mut face_vertices = sub.face.clone();
    face_vertices.sort_unstable();
    face_vertices.dedup();
    let face = poly
        .face_by_vertices(&face_vertices)
        .ok_or_else(|| invalid(format!("{:?} is not a face of the {side} polytope", sub.face)))?;
    if sub.cells.is_empty() {
        return Err(invalid("no cells"));
    }

    let mut table: BTreeMap<RationalPoint, usize> = BTreeMap::new();
    for cell in &sub.cells {
        if cell.parts.len() != r {
            return Err(invalid(format!("cell has {} parts, expected {r}", cell.parts.len())));
        }
        for (i, part) in cell.parts.iter().enumerate() {
            for p in part {
                match table.get(p) {
                    Some(&j) if j != i => {
                        return Err(invalid(format!("{p} is assigned to parts {i} and {j}")));
                    }
                    Some(_) => continue,
                    None => {}
                }
                if p.dim() != d || !p.is_integral() {
                    return Err(invalid(format!("{p} is not a lattice point of rank {d}")));
                }
                if !poly.face_contains(face, p) || !part_polys[i].contains(p) {
                    return Err(invalid(format!("{p} does not lie in part {i} of the face")));
                }
                table.insert(p.clone(), i);
            }
        }
    }
    let points: Vec<RationalPoint> = table.keys().cloned().collect();
    let point_part: Vec<usize> = table.values().copied().collect();
    let id_of = |p: &RationalPoint| points.binary_search(p).expect("recorded point");
    let cells: Vec<Vec<Vec<usize>>> = sub
        .cells
        .iter()
        .map(|c| {
            c.parts
                .iter()
                .map(|part| {
                    let mut ids: Vec<usize> = part.iter().map(id_of).collect();
                    ids.sort_unstable();
                    ids.dedup();
                    ids
                })
                .collect()
        })
        .collect();

    let face_pts = poly.face_points(face);
    let coords = {
        let mut diffs = linalg::differences(
            &face_pts[1..].iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
            &face_pts[0].0,
        );
        linalg::row_reduce(&mut diffs)
    };
    let face_volume = convex_hull(&face_pts, d)?.scaled_volume_in(&coords);

    let saturation: Vec<Vec<usize>> = points.iter().map(|p| poly.saturation(p)).collect();
    let face_sat = &poly.face(face).saturated_facets;
    let mut total = Rational::zero();
    let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for cell in &cells {
        let ids = flatten(cell);
        let rows: Vec<Vec<Rational>> = ids.iter().map(|&k| points[k].0.clone()).collect();
        if linalg::affine_rank(&rows) != face.dim {
            return Err(invalid("a cell is not full-dimensional in the face"));
        }
        if ids.len() == face.dim + 1 {
            total += linalg::simplex_volume(&rows, &coords);
            for skip in 0..ids.len() {
                let f: Vec<usize> = ids.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                facets.entry(f).or_default().push(ids[skip]);
            }
        } else {
            let pts: Vec<RationalPoint> = ids.iter().map(|&k| points[k].clone()).collect();
            let hull = convex_hull(&pts, d)?;
            total += hull.scaled_volume_in(&coords);
            for fi in 0..hull.faces_of_dim(face.dim - 1).len() {
                let fid = FaceId { dim: face.dim - 1, index: fi };
                let on: Vec<usize> = ids.iter().copied().filter(|&k| hull.face_contains(fid, &points[k])).collect();
                let off = ids.iter().copied().find(|k| on.binary_search(k).is_err()).expect("full-dimensional cell");
                facets.entry(on).or_default().push(off);
            }
        }
    }
    if total != face_volume {
        return Err(invalid(format!("cell volumes sum to {total}, the face has volume {face_volume}")));
    }
    for (f, opposite) in &facets {
        let mut common = saturation[f[0]].clone();
        for &k in &f[1..] {
            common.retain(|x| saturation[k].binary_search(x).is_ok());
        }
        let boundary = common.len() > face_sat.len();
        let ok = if boundary {
            opposite.len() == 1
        } else {
            opposite.len() == 2 && {
                let normal = facet_normal(&points, f, &coords);
                side_of(&points, f[0], opposite[0], &normal, &coords) != side_of(&points, f[0], opposite[1], &normal, &coords)
            }
        };
        if !ok {
            let where_ = if boundary { "boundary" } else { "interior" };
            let shown: Vec<String> = f.iter().map(|&k| points[k].to_string()).collect();
            return Err(invalid(format!("{where_} facet {shown:?} is covered {} times", opposite.len())));
        }
    }
    Ok(ValidatedSubdivision { side, face, points, point_part, cells })
}

/// Normal, inside the face coordinates, of the hyperplane spanned by a facet.
fn facet_normal(points: &[RationalPoint], facet: &[usize], coords: &[usize]) -> Vec<Rational> {
    let base = &points[facet[0]].0;
    let rows: Vec<Vec<Rational>> = facet[1..]
        .iter()
        .map(|&k| coords.iter().map(|&c| points[k].0[c].clone() - base[c].clone()).collect())
        .collect();
    let mut null = linalg::nullspace(&rows, coords.len());
    null.swap_remove(0)
}

fn side_of(points: &[RationalPoint], base: usize, p: usize, normal: &[Rational], coords: &[usize]) -> bool {
    let v: Vec<Rational> = coords.iter().map(|&c| points[p].0[c].clone() - points[base].0[c].clone()).collect();
    linalg::dot(&v, normal).is_positive()
}

impl ValidatedSubdivision {
    /// Every face of every cell, as per-part point-id lists (empty parts
    /// allowed). Includes the cells themselves.
    pub fn all_cell_faces(&self) -> Result<Vec<Vec<Vec<usize>>>, SigmaError> {
        let mut out = std::collections::BTreeSet::new();
        for cell in &self.cells {
            let ids = flatten(cell);
            if ids.len() == self.face.dim + 1 {
                for mask in 1u64..(1u64 << ids.len()) {
                    let chosen: Vec<usize> = (0..ids.len()).filter(|&k| mask & (1 << k) != 0).map(|k| ids[k]).collect();
                    out.insert(self.split(&chosen));
                }
            } else {
                let pts: Vec<RationalPoint> = ids.iter().map(|&k| self.points[k].clone()).collect();
                let hull = convex_hull(&pts, pts[0].dim())?;
                for level in hull.face_lattice() {
                    for (fi, f) in level.iter().enumerate() {
                        let fid = FaceId { dim: f.dim, index: fi };
                        let on: Vec<usize> = ids.iter().copied().filter(|&k| hull.face_contains(fid, &self.points[k])).collect();
                        out.insert(self.split(&on));
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    fn split(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let r = self.cells[0].len();
        let mut parts = vec![Vec::new(); r];
        for &k in ids {
            parts[self.point_part[k]].push(k);
        }
        parts
    }
}
