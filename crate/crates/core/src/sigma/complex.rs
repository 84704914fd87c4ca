use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use super::{adjoint_pairs, minkowski_points, sum_dim, AdjointTable, CayleySubdivision, Side, SigmaError, ValidatedSubdivision};
use crate::geometry::{self, convex_hull, FaceId};
use crate::nef::NefPartitionData;
use crate::{Polytope, Rational, RationalPoint};

/// A transversal cell on one side: either a cell of a supplied subdivision or
/// a whole transversal face that no subdivision covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideCell {
    /// Point ids per part, sorted.
    pub parts: Vec<Vec<usize>>,
    /// Smallest face of the side polytope containing the cell.
    pub carrier: FaceId,
    /// Index of `carrier` in the transversal face list of this side.
    pub transversal: usize,
    pub whole: bool,
    pub component_dims: Vec<usize>,
    /// Dimension of the Minkowski sum of the parts.
    pub dim: usize,
    /// Cells one dimension lower in the boundary of this one.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideComplex {
    pub side: Side,
    pub points: Vec<RationalPoint>,
    pub cells: Vec<SideCell>,
    by_carrier: BTreeMap<usize, Vec<usize>>,
}

impl SideComplex {
    pub fn cell_points(&self, c: usize) -> Vec<Vec<&RationalPoint>> {
        self.cells[c]
            .parts
            .iter()
            .map(|p| p.iter().map(|&k| &self.points[k]).collect())
            .collect()
    }

    /// Sum of the per-part vertex averages; a relative interior point of the
    /// Minkowski sum.
    pub fn barycenter(&self, c: usize) -> RationalPoint {
        let d = self.points[0].dim();
        let mut acc = RationalPoint::origin(d);
        for part in self.cell_points(c) {
            let k = Rational::from_integer(BigInt::from(part.len()));
            for p in part {
                let scaled = geometry::RationalPoint(p.0.iter().map(|x| x / &k).collect());
                acc = acc.add(&scaled);
            }
        }
        acc
    }

    /// `Σ_i conv(parts[i])` as a polytope.
    pub fn minkowski_cell(&self, c: usize) -> Result<Polytope, SigmaError> {
        let pts = minkowski_points(&self.cell_points(c));
        Ok(convex_hull(&pts, pts[0].dim())?)
    }

    pub fn cells_with_carrier(&self, transversal: usize) -> &[usize] {
        self.by_carrier.get(&transversal).map(Vec::as_slice).unwrap_or(&[])
    }

    fn build(
        data: &NefPartitionData,
        table: &AdjointTable,
        side: Side,
        subs: &[ValidatedSubdivision],
    ) -> Result<SideComplex, SigmaError> {
        let poly = side.polytope(data);
        let faces = table.faces(side);
        let mut point_set: BTreeSet<RationalPoint> = poly.vertices().iter().cloned().collect();
        for s in subs {
            point_set.extend(s.points.iter().cloned());
        }
        let points: Vec<RationalPoint> = point_set.into_iter().collect();
        let global = |p: &RationalPoint| points.binary_search(p).expect("collected point");

        let saturation: Vec<Vec<usize>> = points.iter().map(|p| poly.saturation(p)).collect();
        let position: BTreeMap<FaceId, usize> = faces.iter().enumerate().map(|(k, t)| (t.face, k)).collect();

        // Per subdivision: transversal face index -> induced cells with that carrier.
        let mut induced: Vec<BTreeMap<usize, BTreeSet<Vec<Vec<usize>>>>> = Vec::with_capacity(subs.len());
        for s in subs {
            let mut by: BTreeMap<usize, BTreeSet<Vec<Vec<usize>>>> = BTreeMap::new();
            for f in s.all_cell_faces()? {
                if f.iter().any(Vec::is_empty) {
                    continue;
                }
                let key: Vec<Vec<usize>> = f
                    .iter()
                    .map(|part| {
                        let mut g: Vec<usize> = part.iter().map(|&k| global(&s.points[k])).collect();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                let mut all = key.iter().flatten();
                let mut common = saturation[*all.next().expect("nonempty cell")].clone();
                for &k in all {
                    common.retain(|x| saturation[k].binary_search(x).is_ok());
                }
                let carrier = poly.face_with_saturation(&common);
                let ti = *position.get(&carrier).ok_or_else(|| {
                    SigmaError::InvalidSubdivision("a transversal cell lies in a non-transversal face".into())
                })?;
                by.entry(ti).or_default().insert(key);
            }
            induced.push(by);
        }

        let mut cells = Vec::new();
        for (ti, tf) in faces.iter().enumerate() {
            let covering: Vec<usize> = (0..subs.len())
                .filter(|&k| {
                    let fv = &poly.face(subs[k].face).vertex_ids;
                    tf.vertex_ids.iter().all(|v| fv.binary_search(v).is_ok())
                })
                .collect();
            if covering.is_empty() {
                let parts: Vec<Vec<usize>> = tf
                    .components
                    .iter()
                    .map(|c| c.iter().map(|&v| global(&poly.vertices()[v])).collect())
                    .collect();
                cells.push((ti, true, parts));
                continue;
            }
            let empty = BTreeSet::new();
            let first = induced[covering[0]].get(&ti).unwrap_or(&empty);
            for &k in &covering[1..] {
                if induced[k].get(&ti).unwrap_or(&empty) != first {
                    return Err(SigmaError::InvalidSubdivision(format!(
                        "subdivisions induce different cells on the shared face {:?}",
                        tf.vertex_ids
                    )));
                }
            }
            if first.is_empty() {
                return Err(SigmaError::InvalidSubdivision(format!("face {:?} receives no cells", tf.vertex_ids)));
            }
            for key in first {
                let mut parts = key.clone();
                for p in &mut parts {
                    p.sort_unstable();
                }
                cells.push((ti, false, parts));
            }
        }

        let mut out: Vec<SideCell> = cells
            .into_iter()
            .map(|(ti, whole, parts)| {
                let pts: Vec<Vec<&RationalPoint>> =
                    parts.iter().map(|p| p.iter().map(|&k| &points[k]).collect()).collect();
                let component_dims = pts.iter().map(|p| super::affine_dim(p)).collect();
                SideCell {
                    dim: sum_dim(&pts),
                    parts,
                    carrier: faces[ti].face,
                    transversal: ti,
                    whole,
                    component_dims,
                    facets: Vec::new(),
                }
            })
            .collect();
        let mut by_carrier: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (c, cell) in out.iter().enumerate() {
            by_carrier.entry(cell.transversal).or_default().push(c);
        }

        let subfaces: Vec<Vec<usize>> = faces
            .iter()
            .map(|g| {
                (0..faces.len())
                    .filter(|&h| faces[h].vertex_ids.iter().all(|v| g.vertex_ids.binary_search(v).is_ok()))
                    .collect()
            })
            .collect();
        for c in 0..out.len() {
            if out[c].dim == 0 {
                continue;
            }
            let mut facets = Vec::new();
            for &h in &subfaces[out[c].transversal] {
                for &c2 in by_carrier.get(&h).map(Vec::as_slice).unwrap_or(&[]) {
                    let (a, b) = (&out[c], &out[c2]);
                    if b.dim + 1 != a.dim {
                        continue;
                    }
                    let below = a.whole
                        || (!b.whole
                            && b.parts.iter().zip(&a.parts).all(|(x, y)| x.iter().all(|k| y.binary_search(k).is_ok())));
                    if below {
                        facets.push(c2);
                    }
                }
            }
            out[c].facets = facets;
        }
        Ok(SideComplex { side, points, cells: out, by_carrier })
    }
}

/// A product cell `σ_Δ × τ_∇` of Σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCell {
    pub sigma: usize,
    pub tau: usize,
    /// `(dim σ^(i), dim τ^(i))` per part.
    pub component_dims: Vec<(usize, usize)>,
    /// `(dim σ_Δ, dim τ_∇)`.
    pub dims: (usize, usize),
    pub smooth: bool,
}

impl SigmaCell {
    pub fn dim(&self) -> usize {
        self.dims.0 + self.dims.1
    }

    /// Parts `i` with `dim σ^(i) · dim τ^(i) > 0`.
    pub fn singular_parts(&self) -> Vec<usize> {
        (0..self.component_dims.len())
            .filter(|&i| self.component_dims[i].0 * self.component_dims[i].1 > 0)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComplex {
    pub n: usize,
    pub r: usize,
    pub table: AdjointTable,
    pub nabla_side: SideComplex,
    pub delta_side: SideComplex,
    pub cells: Vec<SigmaCell>,
    index: HashMap<(usize, usize), usize>,
}

impl SigmaComplex {
    pub fn cell_id(&self, sigma: usize, tau: usize) -> Option<usize> {
        self.index.get(&(sigma, tau)).copied()
    }

    /// Codimension-one faces of a cell.
    pub fn facets(&self, c: usize) -> Result<Vec<usize>, SigmaError> {
        let cell = &self.cells[c];
        let mut out = Vec::new();
        let sides = self.nabla_side.cells[cell.sigma]
            .facets
            .iter()
            .map(|&s2| (s2, cell.tau))
            .chain(self.delta_side.cells[cell.tau].facets.iter().map(|&t2| (cell.sigma, t2)));
        for key in sides {
            out.push(self.cell_id(key.0, key.1).ok_or_else(|| {
                SigmaError::NotAComplex(format!("facet {key:?} of cell {:?} is missing", (cell.sigma, cell.tau)))
            })?);
        }
        Ok(out)
    }

    /// Barycenter in `N ⊕ M`.
    pub fn barycenter(&self, c: usize) -> RationalPoint {
        let cell = &self.cells[c];
        let mut coords = self.nabla_side.barycenter(cell.sigma).0;
        coords.extend(self.delta_side.barycenter(cell.tau).0);
        geometry::RationalPoint(coords)
    }

    pub fn sigma_delta(&self, c: usize) -> Result<Polytope, SigmaError> {
        self.nabla_side.minkowski_cell(self.cells[c].sigma)
    }

    pub fn tau_nabla(&self, c: usize) -> Result<Polytope, SigmaError> {
        self.delta_side.minkowski_cell(self.cells[c].tau)
    }

    pub fn check_closure(&self) -> Result<(), SigmaError> {
        for c in 0..self.cells.len() {
            self.facets(c)?;
        }
        Ok(())
    }

    /// `#cells` per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n + 1];
        for cell in &self.cells {
            f[cell.dim()] += 1;
        }
        f
    }
}

pub fn sigma_cells(
    data: &NefPartitionData,
    s_subdivisions: &[CayleySubdivision],
    t_subdivisions: &[CayleySubdivision],
) -> Result<SigmaComplex, SigmaError> {
    let table = adjoint_pairs(data)?;
    let mut validated = [Vec::new(), Vec::new()];
    for (k, (subs, side)) in [(s_subdivisions, Side::NablaCheck), (t_subdivisions, Side::DeltaCheck)].into_iter().enumerate() {
        for s in subs {
            if s.side != side {
                return Err(SigmaError::InvalidSubdivision(format!("expected a {side} subdivision, got {}", s.side)));
            }
            validated[k].push(s.validate(data)?);
        }
    }
    let nabla_side = SideComplex::build(data, &table, Side::NablaCheck, &validated[0])?;
    let delta_side = SideComplex::build(data, &table, Side::DeltaCheck, &validated[1])?;

    let t_faces = &table.t_faces;
    let mut cells = Vec::new();
    let mut sub_t: HashMap<usize, Vec<usize>> = HashMap::new();
    for (si, sigma) in nabla_side.cells.iter().enumerate() {
        let t = table.adjoint_of_s[sigma.transversal];
        let below = sub_t.entry(t).or_insert_with(|| {
            (0..t_faces.len())
                .filter(|&h| t_faces[h].vertex_ids.iter().all(|v| t_faces[t].vertex_ids.binary_search(v).is_ok()))
                .collect()
        });
        for &h in below.iter() {
            for &ti in delta_side.cells_with_carrier(h) {
                let tau = &delta_side.cells[ti];
                let component_dims: Vec<(usize, usize)> =
                    sigma.component_dims.iter().copied().zip(tau.component_dims.iter().copied()).collect();
                let smooth = component_dims.iter().all(|&(a, b)| a * b == 0);
                cells.push(SigmaCell { sigma: si, tau: ti, component_dims, dims: (sigma.dim, tau.dim), smooth });
            }
        }
    }
    cells.sort_by_key(|c| (c.sigma, c.tau));
    let index = cells.iter().enumerate().map(|(k, c)| ((c.sigma, c.tau), k)).collect();
    Ok(SigmaComplex { n: data.cy_dim(), r: data.r(), table, nabla_side, delta_side, cells, index })
}

/// Alternating count of the cells of Σ, after checking that every cell's
/// boundary is made of cells.
pub fn sigma_euler(complex: &SigmaComplex) -> Result<i64, SigmaError> {
    complex.check_closure()?;
    Ok(complex
        .cells
        .iter()
        .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
        .sum())
}
