//! Nef partitions of reflexive polytopes and the dual (mirror) polytope data.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    convex_hull, halfspace_intersection, is_reflexive, minkowski_sum, polar_dual, GeometryError,
    LatticeSide,
};
use crate::geometry::json::{DocError, PolytopeDoc};
use crate::{HalfSpace, Polytope, Rational, RationalPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NefError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("partition is not nef: {0}")]
    NotNef(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// A partition of the vertices of a reflexive polytope into `r` groups.
#[derive(Clone, Debug, PartialEq)]
pub struct NefPartition {
    nabla_check: Polytope,
    parts: Vec<Vec<usize>>,
}

impl NefPartition {
    /// Parts hold indices into the lexicographically sorted vertex list of
    /// `nabla_check`. Only the partition structure is checked here.
    pub fn new(nabla_check: Polytope, mut parts: Vec<Vec<usize>>) -> Result<Self, NefError> {
        let n = nabla_check.vertices().len();
        if parts.is_empty() {
            return Err(NefError::InvalidPartition("no parts".into()));
        }
        let mut seen = vec![false; n];
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            if part.is_empty() {
                return Err(NefError::InvalidPartition(format!("part {i} is empty")));
            }
            for &v in part.iter() {
                if v >= n {
                    return Err(NefError::InvalidPartition(format!("vertex index {v} out of range")));
                }
                if seen[v] {
                    return Err(NefError::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = (0..n).find(|&v| !seen[v]) {
            return Err(NefError::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(NefPartition { nabla_check, parts })
    }

    /// The simplex of `P^N` with its vertices `e_0 = -sum e_i, e_1, ..., e_N`
    /// grouped consecutively by `degrees`.
    pub fn projective(degrees: &[usize]) -> Result<Self, NefError> {
        let big_n: usize = degrees.iter().sum::<usize>().saturating_sub(1);
        if big_n == 0 || degrees.contains(&0) {
            return Err(NefError::InvalidPartition("degrees must be positive".into()));
        }
        let e = projective_vertices(big_n);
        let poly = convex_hull(&e, big_n)?;
        let mut parts = Vec::new();
        let mut a = 0;
        for &d in degrees {
            parts.push(
                (a..a + d)
                    .map(|k| poly.index_of_vertex(&e[k]).expect("simplex vertex"))
                    .collect(),
            );
            a += d;
        }
        NefPartition::new(poly, parts)
    }

    pub fn nabla_check(&self) -> &Polytope {
        &self.nabla_check
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// `(part, position within part)` of a vertex.
    pub fn part_of_vertex(&self, v: usize) -> Option<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .find_map(|(i, p)| p.binary_search(&v).ok().map(|a| (i, a)))
    }

    pub fn part_points(&self, i: usize) -> Vec<RationalPoint> {
        self.parts[i]
            .iter()
            .map(|&v| self.nabla_check.vertices()[v].clone())
            .collect()
    }

    /// Calabi–Yau dimension `d - r`.
    pub fn cy_dim(&self) -> usize {
        self.nabla_check.ambient_dim() - self.r()
    }

    /// `Conv({0} ∪ E_i)` for every part.
    pub fn delta_parts(&self) -> Result<Vec<Polytope>, NefError> {
        let d = self.nabla_check.ambient_dim();
        (0..self.r())
            .map(|i| {
                let mut pts = self.part_points(i);
                pts.push(RationalPoint::origin(d));
                Ok(convex_hull(&pts, d)?.on_side(self.nabla_check.side()))
            })
            .collect()
    }

    /// No proper subset of parts has a Δ-sum containing the origin in its
    /// interior, where "interior" is taken relative to the affine span of that
    /// sum.
    pub fn is_irreducible(&self) -> Result<bool, NefError> {
        let deltas = self.delta_parts()?;
        let r = self.r();
        let origin = RationalPoint::origin(self.nabla_check.ambient_dim());
        for mask in 1u64..(1u64 << r) - 1 {
            let mut sum: Option<Polytope> = None;
            for (i, d) in deltas.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sum = Some(match sum {
                        None => d.clone(),
                        Some(s) => minkowski_sum(&s, d)?,
                    });
                }
            }
            let sum = sum.expect("nonempty subset");
            if sum.contains_in_relative_interior(&origin) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn build(&self) -> Result<NefPartitionData, NefError> {
        build_nef_data(self)
    }
}

pub(crate) fn projective_vertices(big_n: usize) -> Vec<RationalPoint> {
    let mut e = vec![RationalPoint::from_i64(&vec![-1; big_n])];
    for i in 0..big_n {
        let mut c = vec![0; big_n];
        c[i] = 1;
        e.push(RationalPoint::from_i64(&c));
    }
    e
}

/// Every polytope of the Batyrev–Borisov construction attached to a nef
/// partition, together with the part membership of both vertex sets.
#[derive(Clone, Debug, PartialEq)]
pub struct NefPartitionData {
    pub partition: NefPartition,
    /// `Δ^(i) = Conv({0} ∪ E_i)` in `N`.
    pub delta_parts: Vec<Polytope>,
    /// `∇^(i) = {m : <m, e_a> <= δ(i, part(a))}` in `M`.
    pub nabla_parts: Vec<Polytope>,
    pub nabla: Polytope,
    pub delta: Polytope,
    pub delta_check: Polytope,
    /// `∇∨` vertex → (part, position in part).
    pub vertex_part_map: Vec<(usize, usize)>,
    /// `Δ∨` vertex → part whose `∇^(i)` has it as a vertex.
    pub delta_check_part_map: Vec<usize>,
}

fn sum_all(polys: &[Polytope]) -> Result<Polytope, GeometryError> {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

pub fn build_nef_data(np: &NefPartition) -> Result<NefPartitionData, NefError> {
    let nabla_check = np.nabla_check();
    if !is_reflexive(nabla_check) {
        return Err(NefError::NotReflexive);
    }
    let d = nabla_check.ambient_dim();
    let r = np.r();
    let delta_parts = np.delta_parts()?;

    let vertex_part_map: Vec<(usize, usize)> = (0..nabla_check.vertices().len())
        .map(|v| np.part_of_vertex(v).expect("validated partition"))
        .collect();

    let mut nabla_parts = Vec::with_capacity(r);
    for i in 0..r {
        let hs: Vec<HalfSpace> = nabla_check
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, e)| {
                let bound = if vertex_part_map[v].0 == i { Rational::one() } else { Rational::zero() };
                let normal = e.to_lattice(nabla_check.side()).expect("lattice vertex");
                HalfSpace::new(normal, bound)
            })
            .collect();
        let part = halfspace_intersection(&hs, d)?;
        if !part.is_lattice_polytope() {
            return Err(NefError::NotNef(format!("part {i} of the dual decomposition has a non-lattice vertex")));
        }
        nabla_parts.push(part);
    }

    let nabla = polar_dual(nabla_check)?;
    if sum_all(&nabla_parts)? != nabla {
        return Err(NefError::NotNef("the Minkowski sum of the dual parts is not the dual polytope".into()));
    }

    let all: Vec<RationalPoint> = nabla_parts.iter().flat_map(|p| p.vertices().to_vec()).collect();
    let delta_check = convex_hull(&all, d)?.on_side(nabla.side());
    let mut delta_check_part_map = Vec::with_capacity(delta_check.vertices().len());
    for v in delta_check.vertices() {
        let owners: Vec<usize> = (0..r).filter(|&i| nabla_parts[i].index_of_vertex(v).is_some()).collect();
        if owners.len() != 1 {
            return Err(NefError::NotNef(format!("vertex {v} of the mirror polytope belongs to {} parts", owners.len())));
        }
        delta_check_part_map.push(owners[0]);
    }
    let delta = polar_dual(&delta_check)
        .map_err(|_| NefError::NotNef("the convex hull of the dual parts does not contain 0 in its interior".into()))?;
    if sum_all(&delta_parts)? != delta {
        return Err(NefError::NotNef("the Minkowski sum of the parts is not the mirror dual polytope".into()));
    }

    for (i, np_i) in nabla_parts.iter().enumerate() {
        for (j, dp_j) in delta_parts.iter().enumerate() {
            let limit = if i == j { Rational::one() } else { Rational::zero() };
            for v in np_i.vertices() {
                for w in dp_j.vertices() {
                    if v.dot(w) > limit {
                        return Err(NefError::NotNef(format!("pairing of parts {i} and {j} exceeds {limit}")));
                    }
                }
            }
        }
    }

    Ok(NefPartitionData {
        partition: np.clone(),
        delta_parts,
        nabla_parts,
        nabla,
        delta,
        delta_check,
        vertex_part_map,
        delta_check_part_map,
    })
}

impl NefPartitionData {
    pub fn r(&self) -> usize {
        self.partition.r()
    }

    pub fn ambient_dim(&self) -> usize {
        self.partition.nabla_check().ambient_dim()
    }

    pub fn cy_dim(&self) -> usize {
        self.partition.cy_dim()
    }

    pub fn nabla_check(&self) -> &Polytope {
        self.partition.nabla_check()
    }

    /// The nef partition of `Δ∨` whose parts are the vertex sets of the `∇^(i)`.
    pub fn mirror_partition(&self) -> Result<NefPartition, NefError> {
        let mut parts = vec![Vec::new(); self.r()];
        for (v, &i) in self.delta_check_part_map.iter().enumerate() {
            parts[i].push(v);
        }
        NefPartition::new(self.delta_check.clone(), parts)
    }

    /// Batyrev–Borisov mirror: the roles of `Δ` and `∇` are exchanged.
    pub fn mirror(&self) -> Result<NefPartitionData, NefError> {
        let data = build_nef_data(&self.mirror_partition()?)?;
        if data.delta_check != *self.nabla_check() || data.nabla != self.delta {
            return Err(NefError::NotNef("mirror construction is not an involution on this input".into()));
        }
        Ok(data)
    }

    /// Same five polytopes (`∇∨, ∇, Δ∨, Δ` and both part lists).
    pub fn same_polytopes(&self, other: &NefPartitionData) -> bool {
        self.nabla_check() == other.nabla_check()
            && self.nabla == other.nabla
            && self.delta_check == other.delta_check
            && self.delta == other.delta
            && self.delta_parts == other.delta_parts
            && self.nabla_parts == other.nabla_parts
    }

    /// Lattice tag of the `Δ∨` side.
    pub fn mirror_side(&self) -> LatticeSide {
        self.delta_check.side()
    }

    /// Exact pairing helper used by consumers that work with raw integer vectors.
    pub fn pairing(a: &[BigInt], b: &[BigInt]) -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
}

/// `{"polytope": .., "parts": [[vertex index, ..], ..]}` with indices into the
/// lexicographic vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub polytope: PolytopeDoc,
    pub parts: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionDocError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Nef(#[from] NefError),
}

impl PartitionDoc {
    pub fn from_partition(np: &NefPartition) -> Self {
        PartitionDoc { polytope: PolytopeDoc::from_polytope(np.nabla_check()), parts: np.parts().to_vec() }
    }

    pub fn to_partition(&self) -> Result<NefPartition, PartitionDocError> {
        let poly: Polytope = self.polytope.to_polytope()?;
        Ok(NefPartition::new(poly, self.parts.clone())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        let np = NefPartition::projective(&[4, 2]).unwrap();
        let poly = np.nabla_check().clone();
        assert!(matches!(
            NefPartition::new(poly.clone(), vec![vec![0, 1, 2], vec![2, 3, 4, 5]]),
            Err(NefError::InvalidPartition(_))
        ));
        assert!(matches!(
            NefPartition::new(poly.clone(), vec![vec![0, 1, 2], vec![3, 4]]),
            Err(NefError::InvalidPartition(_))
        ));
        assert!(matches!(
            NefPartition::new(poly, vec![vec![0, 1, 2, 3, 4, 5], vec![]]),
            Err(NefError::InvalidPartition(_))
        ));
    }

    #[test]
    fn projective_parts_follow_degrees() {
        let np = NefPartition::projective(&[4, 2]).unwrap();
        assert_eq!(np.part_sizes(), vec![4, 2]);
        assert_eq!(np.cy_dim(), 3);
        // e_4 = [0,0,0,1,0] and e_5 = [0,0,0,0,1] form the second part.
        let second: Vec<String> = np.part_points(1).iter().map(|p| p.to_string()).collect();
        assert_eq!(second, vec!["[0,0,0,0,1]", "[0,0,0,1,0]"]);
    }

    #[test]
    fn p5_four_two_polytopes() {
        let data = NefPartition::projective(&[4, 2]).unwrap().build().unwrap();
        assert_eq!(data.nabla.vertices().len(), 6);
        assert_eq!(data.nabla_parts[0].vertices().len(), 6);
        assert_eq!(data.nabla_parts[1].vertices().len(), 6);
        assert!(data.nabla_parts[1].contains(&RationalPoint::origin(5)));
        assert!(data.nabla_parts[1].index_of_vertex(&RationalPoint::from_i64(&[0, 0, -2, 1, 1])).is_some());
        assert_eq!(data.delta_check.vertices().len(), 12);
        assert_eq!(data.delta_check_part_map.iter().filter(|&&i| i == 0).count(), 6);
        assert!(data.partition.is_irreducible().unwrap());
        let back = data.mirror().unwrap().mirror().unwrap();
        assert!(back.same_polytopes(&data));
    }

    #[test]
    fn cross_polytope_product_is_reducible() {
        let pts: Vec<RationalPoint> = [[1, 0], [-1, 0], [0, 1], [0, -1]]
            .iter()
            .map(|c| RationalPoint::from_i64(c))
            .collect();
        let poly = convex_hull(&pts, 2).unwrap();
        let idx = |c: [i64; 2]| poly.index_of_vertex(&RationalPoint::from_i64(&c)).unwrap();
        let parts = vec![vec![idx([1, 0]), idx([-1, 0])], vec![idx([0, 1]), idx([0, -1])]];
        let np = NefPartition::new(poly, parts).unwrap();
        np.build().unwrap();
        assert!(!np.is_irreducible().unwrap());
    }

    #[test]
    fn non_nef_partition_rejected() {
        let pts: Vec<RationalPoint> = [[1, 1], [-1, -1], [1, -1], [-1, 1]]
            .iter()
            .map(|c| RationalPoint::from_i64(c))
            .collect();
        let poly = convex_hull(&pts, 2).unwrap();
        let idx = |c: [i64; 2]| poly.index_of_vertex(&RationalPoint::from_i64(&c)).unwrap();
        let parts = vec![vec![idx([1, 1]), idx([-1, -1])], vec![idx([1, -1]), idx([-1, 1])]];
        let np = NefPartition::new(poly, parts).unwrap();
        assert!(matches!(np.build(), Err(NefError::NotNef(_))));
    }
}
