//! Closed-form stratum counts and Euler accounting for complete intersections
//! in a single projective space, toric stratum enumeration for a nef
//! partition, and checks on unipotent monodromy triples.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discriminant::VertexKind;
use crate::geometry::linalg;
use crate::nef::NefPartition;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("operation needs n = {expected}, descriptor has n = {actual}")]
    WrongDimension { expected: String, actual: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix {0} is not unipotent")]
    NotUnipotent(usize),
    #[error("product of the triple is not the identity: {0:?}")]
    ProductNotIdentity(Matrix3),
}

/// A complete intersection of multidegree `degrees` in `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIDescriptor {
    pub ambient_proj_dim: usize,
    pub degrees: Vec<usize>,
}

impl CIDescriptor {
    /// Checks `d_i >= 2` and `sum d_i = N + 1`.
    pub fn new(ambient_proj_dim: usize, degrees: Vec<usize>) -> Result<Self, CensusError> {
        if degrees.is_empty() {
            return Err(CensusError::InvalidDescriptor("no degrees".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(CensusError::InvalidDescriptor(format!("degree {d} is below 2")));
        }
        let sum: usize = degrees.iter().sum();
        if sum != ambient_proj_dim + 1 {
            return Err(CensusError::InvalidDescriptor(format!(
                "degrees sum to {sum}, expected N + 1 = {}",
                ambient_proj_dim + 1
            )));
        }
        if degrees.len() >= ambient_proj_dim {
            return Err(CensusError::InvalidDescriptor("too many equations for the ambient space".into()));
        }
        Ok(CIDescriptor { ambient_proj_dim, degrees })
    }

    /// `P^N` is implied by the degrees.
    pub fn from_degrees(degrees: Vec<usize>) -> Result<Self, CensusError> {
        let n = degrees.iter().sum::<usize>().saturating_sub(1);
        Self::new(n, degrees)
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn cy_dim(&self) -> usize {
        self.ambient_proj_dim - self.r()
    }

    pub fn degree_product(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).product()
    }

    /// The nef partition of the simplex grouping coordinates by degree.
    pub fn standard_partition(&self) -> Result<NefPartition, CensusError> {
        NefPartition::projective(&self.degrees).map_err(|e| CensusError::InvalidPartition(e.to_string()))
    }

    fn require_dim(&self, n: usize) -> Result<(), CensusError> {
        if self.cy_dim() != n {
            return Err(CensusError::WrongDimension { expected: n.to_string(), actual: self.cy_dim() });
        }
        Ok(())
    }
}

fn choose(n: usize, k: usize) -> i64 {
    if k > n {
        0
    } else {
        binomial(n as i64, k as i64)
    }
}

/// Number of singular points on a degenerating K3: `(sum C(d_j,2)) * prod d`.
pub fn k3_singular_count(ci: &CIDescriptor) -> Result<i64, CensusError> {
    ci.require_dim(2)?;
    let pairs: i64 = ci.degrees.iter().map(|&d| choose(d, 2)).sum();
    Ok(pairs * ci.degree_product())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveComponentStats {
    /// 0-based part index.
    pub group: usize,
    pub degree_product: i64,
    pub genus: i64,
    pub chi: i64,
    pub punctures: i64,
    pub chi_punctured: i64,
}

/// Statistics of one component `C^(i)_{l1,l2}` of a degenerating threefold:
/// a complete intersection curve of the same multidegree in `P^{N-2}`,
/// punctured where it meets the other divisors of its group.
pub fn curve_stats(ci: &CIDescriptor, group: usize) -> Result<CurveComponentStats, CensusError> {
    ci.require_dim(3)?;
    if group >= ci.r() {
        return Err(CensusError::InvalidDescriptor(format!("group {group} out of range")));
    }
    let p = ci.degree_product();
    let sum: i64 = ci.degrees.iter().map(|&d| d as i64).sum();
    // adjunction for a curve cut out by r equations in P^{r+1}
    let two_g_minus_two = p * (sum - ci.r() as i64 - 2);
    let genus = two_g_minus_two / 2 + 1;
    let chi = 2 - 2 * genus;
    let punctures = (ci.degrees[group] as i64 - 2) * p;
    Ok(CurveComponentStats { group, degree_product: p, genus, chi, punctures, chi_punctured: chi - punctures })
}

/// `sum C(d_i,3) prod d`: points over positive vertices.
pub fn positive_count(ci: &CIDescriptor) -> i64 {
    ci.degrees.iter().map(|&d| choose(d, 3)).sum::<i64>() * ci.degree_product()
}

/// `sum C(d_i,2) d_i prod d`: negative vertices on the punctured curves.
pub fn negative_count(ci: &CIDescriptor) -> i64 {
    ci.degrees.iter().map(|&d| choose(d, 2) * d as i64).sum::<i64>() * ci.degree_product()
}

pub fn threefold_euler(ci: &CIDescriptor) -> Result<i64, CensusError> {
    ci.require_dim(3)?;
    Ok(positive_count(ci) - negative_count(ci))
}

/// Euler characteristic recounted from the enumerated strata: every nonempty
/// `P` stratum contributes `prod d` points, every nonempty `C` stratum the
/// absolute Euler characteristic of its punctured curve, with the punctures
/// counted from the nonempty `P` strata that contain it.
pub fn threefold_euler_from_strata(ci: &CIDescriptor, strata: &[StratumIndex]) -> Result<i64, CensusError> {
    ci.require_dim(3)?;
    let p = ci.degree_product();
    let points: Vec<&StratumIndex> = strata.iter().filter(|s| s.kind == StratumKind::P && s.nonempty).collect();
    let mut total = points.len() as i64 * p;
    for c in strata.iter().filter(|s| s.kind == StratumKind::C && s.nonempty) {
        let stats = curve_stats(ci, c.i.expect("C strata carry a part"))?;
        let meets = points
            .iter()
            .filter(|q| q.i == c.i && c.lambdas.iter().all(|l| q.lambdas.contains(l)))
            .count() as i64;
        // the punctured curve has negative Euler characteristic
        total += stats.chi - meets * p;
    }
    Ok(total)
}

/// K3 count recounted as `prod d` points per nonempty `C` stratum.
pub fn k3_count_from_strata(ci: &CIDescriptor, strata: &[StratumIndex]) -> Result<i64, CensusError> {
    ci.require_dim(2)?;
    let c = strata.iter().filter(|s| s.kind == StratumKind::C && s.nonempty).count() as i64;
    Ok(c * ci.degree_product())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StratumKind {
    #[serde(rename = "X")]
    X,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "Y")]
    Y,
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Q_hat")]
    QHat,
    #[serde(rename = "C_hat")]
    CHat,
    #[serde(rename = "P_hat")]
    PHat,
}

impl StratumKind {
    pub const ALL: [StratumKind; 8] = [
        StratumKind::X,
        StratumKind::C,
        StratumKind::P,
        StratumKind::Y,
        StratumKind::Z,
        StratumKind::QHat,
        StratumKind::CHat,
        StratumKind::PHat,
    ];
}

/// One toric stratum. `lambdas` are positions inside part `i` (the `l`s of
/// `C`, the `m`s of `P` and of `Q_hat`), `nus` positions inside part `j`.
/// `alpha` lists `(part, position)` for every part the stratum requires.
/// `divisors` are the vertex ids of the nabla-check polytope whose divisors
/// are intersected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumIndex {
    pub kind: StratumKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lambdas: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub nus: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub alpha: Vec<(usize, usize)>,
    pub divisors: Vec<usize>,
    pub nonempty: bool,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Every choice of one position per listed part.
fn multi_indices(sizes: &[usize], parts: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &k in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..sizes[k]).map(move |a| {
                    let mut v = prefix.clone();
                    v.push((k, a));
                    v
                })
            })
            .collect();
    }
    out
}

/// All strata of the degenerate fiber and of its image, with nonemptiness
/// decided by whether the divisor vertices lie in one simplex of
/// `simplices` (vertex-id sets spanning the cones of a fan refinement).
pub fn enumerate_strata(np: &NefPartition, simplices: &[Vec<usize>]) -> Result<Vec<StratumIndex>, CensusError> {
    let nv = np.nabla_check().vertices().len();
    if simplices.is_empty() {
        return Err(CensusError::InvalidPartition("empty triangulation".into()));
    }
    let cells: Vec<BTreeSet<usize>> = simplices
        .iter()
        .map(|s| {
            if let Some(v) = s.iter().find(|&&v| v >= nv) {
                return Err(CensusError::InvalidPartition(format!("simplex vertex {v} out of range")));
            }
            Ok(s.iter().copied().collect())
        })
        .collect::<Result<_, _>>()?;
    let parts = np.parts();
    let r = parts.len();
    let sizes = np.part_sizes();
    let others = |skip: &[usize]| -> Vec<usize> { (0..r).filter(|k| !skip.contains(k)).collect() };

    let make = |kind, i: Option<usize>, j: Option<usize>, lambdas: Vec<usize>, nus: Vec<usize>, alpha: Vec<(usize, usize)>| {
        let mut divisors: Vec<usize> = alpha.iter().map(|&(k, a)| parts[k][a]).collect();
        if let Some(i) = i {
            divisors.extend(lambdas.iter().map(|&a| parts[i][a]));
        }
        if let Some(j) = j {
            divisors.extend(nus.iter().map(|&a| parts[j][a]));
        }
        divisors.sort_unstable();
        let nonempty = cells.iter().any(|c| divisors.iter().all(|v| c.contains(v)));
        StratumIndex { kind, i, j, lambdas, nus, alpha, divisors, nonempty }
    };

    let mut out = Vec::new();
    for alpha in multi_indices(&sizes, &others(&[])) {
        out.push(make(StratumKind::X, None, None, Vec::new(), Vec::new(), alpha));
    }
    for i in 0..r {
        for l in combinations(sizes[i], 2) {
            out.push(make(StratumKind::C, Some(i), None, l, Vec::new(), Vec::new()));
        }
    }
    for i in 0..r {
        for m in combinations(sizes[i], 3) {
            out.push(make(StratumKind::P, Some(i), None, m, Vec::new(), Vec::new()));
        }
    }
    for i in 0..r {
        for alpha in multi_indices(&sizes, &others(&[i])) {
            out.push(make(StratumKind::Y, Some(i), None, Vec::new(), Vec::new(), alpha));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            for alpha in multi_indices(&sizes, &others(&[i, j])) {
                out.push(make(StratumKind::Z, Some(i), Some(j), Vec::new(), Vec::new(), alpha));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            for m in combinations(sizes[i], 2) {
                for v in combinations(sizes[j], 2) {
                    for alpha in multi_indices(&sizes, &others(&[i, j])) {
                        out.push(make(StratumKind::QHat, Some(i), Some(j), m.clone(), v.clone(), alpha));
                    }
                }
            }
        }
    }
    for i in 0..r {
        for l in combinations(sizes[i], 2) {
            for alpha in multi_indices(&sizes, &others(&[i])) {
                out.push(make(StratumKind::CHat, Some(i), None, l.clone(), Vec::new(), alpha));
            }
        }
    }
    for i in 0..r {
        for m in combinations(sizes[i], 3) {
            for alpha in multi_indices(&sizes, &others(&[i])) {
                out.push(make(StratumKind::PHat, Some(i), None, m.clone(), Vec::new(), alpha));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCount {
    pub kind: StratumKind,
    pub total: usize,
    pub nonempty: usize,
}

pub fn stratum_counts(strata: &[StratumIndex]) -> Vec<StratumCount> {
    StratumKind::ALL
        .iter()
        .map(|&kind| StratumCount {
            kind,
            total: strata.iter().filter(|s| s.kind == kind).count(),
            nonempty: strata.iter().filter(|s| s.kind == kind && s.nonempty).count(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub ambient_proj_dim: usize,
    pub degrees: Vec<usize>,
    pub cy_dim: usize,
    pub degree_product: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k3_points: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub curves: Vec<CurveComponentStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<i64>,
    /// The K3 count or threefold Euler characteristic recomputed from the strata.
    pub from_strata: i64,
    pub strata_counts: Vec<StratumCount>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub strata: Vec<StratumIndex>,
}

/// Full census for a K3 surface or threefold, using the boundary
/// triangulation of the simplex. `list_strata` includes every stratum.
pub fn census_report(ci: &CIDescriptor, list_strata: bool) -> Result<CensusReport, CensusError> {
    let n = ci.cy_dim();
    if n != 2 && n != 3 {
        return Err(CensusError::WrongDimension { expected: "2 or 3".into(), actual: n });
    }
    let np = ci.standard_partition()?;
    let strata = enumerate_strata(&np, &np.nabla_check().boundary_triangulation())?;
    let mut report = CensusReport {
        ambient_proj_dim: ci.ambient_proj_dim,
        degrees: ci.degrees.clone(),
        cy_dim: n,
        degree_product: ci.degree_product(),
        k3_points: None,
        curves: Vec::new(),
        positive: None,
        negative: None,
        euler: None,
        from_strata: 0,
        strata_counts: stratum_counts(&strata),
        strata: Vec::new(),
    };
    if n == 2 {
        report.k3_points = Some(k3_singular_count(ci)?);
        report.from_strata = k3_count_from_strata(ci, &strata)?;
    } else {
        report.curves = (0..ci.r()).map(|i| curve_stats(ci, i)).collect::<Result<_, _>>()?;
        report.positive = Some(positive_count(ci));
        report.negative = Some(negative_count(ci));
        report.euler = Some(threefold_euler(ci)?);
        report.from_strata = threefold_euler_from_strata(ci, &strata)?;
    }
    if list_strata {
        report.strata = strata;
    }
    Ok(report)
}

pub type Matrix3 = [[i64; 3]; 3];

/// A 3x3 integer matrix, expected unipotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonodromyMatrix(pub Matrix3);

impl MonodromyMatrix {
    pub const IDENTITY: MonodromyMatrix = MonodromyMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    fn big(&self) -> Vec<Vec<BigInt>> {
        self.0.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..3)
        .map(|i| (0..3).map(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn minus_identity(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut n = m.to_vec();
    for (i, row) in n.iter_mut().enumerate() {
        row[i] -= 1;
    }
    n
}

fn is_zero(m: &[Vec<BigInt>]) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

fn rank(rows: &[Vec<BigInt>]) -> usize {
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    linalg::rank(&q)
}

fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let q: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    linalg::determinant(q).to_integer()
}

fn unipotent(m: &[Vec<BigInt>]) -> bool {
    let n = minus_identity(m);
    is_zero(&big_mul(&big_mul(&n, &n), &n)) && determinant(m).is_one()
}

/// `I + N` with `N` of rank one, `N^2 = 0` and primitive entries is
/// conjugate over the integers to `I + E_13`.
fn conjugate_to_standard(m: &[Vec<BigInt>]) -> bool {
    let n = minus_identity(m);
    let g = n.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    rank(&n) == 1 && is_zero(&big_mul(&n, &n)) && g.abs().is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub vertex_kind: VertexKind,
    pub matrices: Vec<MonodromyMatrix>,
    pub product: MonodromyMatrix,
    pub conjugate_to_standard: Vec<bool>,
    pub fixed_dims: Vec<usize>,
    pub common_fixed_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_common_fixed_dim: Option<usize>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Checks a triple of monodromies around a trivalent vertex. On `H_1` a
/// positive vertex has a common fixed plane, a negative one a common fixed
/// line, and each matrix should be conjugate to `I + E_13`.
pub fn monodromy_check(triple: &[MonodromyMatrix; 3], vertex_kind: VertexKind) -> Result<MonodromyReport, CensusError> {
    let big: Vec<Vec<Vec<BigInt>>> = triple.iter().map(MonodromyMatrix::big).collect();
    if let Some(k) = big.iter().position(|m| !unipotent(m)) {
        return Err(CensusError::NotUnipotent(k));
    }
    let product = big_mul(&big_mul(&big[0], &big[1]), &big[2]);
    let identity = MonodromyMatrix::IDENTITY.big();
    if product != identity {
        let clipped = std::array::from_fn(|i| {
            std::array::from_fn(|j| i64::try_from(&product[i][j]).unwrap_or(if product[i][j].is_negative() { i64::MIN } else { i64::MAX }))
        });
        return Err(CensusError::ProductNotIdentity(clipped));
    }
    let conj: Vec<bool> = big.iter().map(|m| conjugate_to_standard(m)).collect();
    let fixed_dims: Vec<usize> = big.iter().map(|m| 3 - rank(&minus_identity(m))).collect();
    let stacked: Vec<Vec<BigInt>> = big.iter().flat_map(|m| minus_identity(m)).collect();
    let common = 3 - rank(&stacked);
    let expected = match vertex_kind {
        VertexKind::Positive => Some(2),
        VertexKind::Negative => Some(1),
        _ => None,
    };
    let mut problems = Vec::new();
    for (k, &c) in conj.iter().enumerate() {
        if !c {
            problems.push(format!("matrix {k} is not conjugate to the standard edge monodromy"));
        }
    }
    match expected {
        Some(e) if e != common => problems.push(format!(
            "common fixed subspace has dimension {common}, a {} vertex needs {e}",
            vertex_kind.as_str()
        )),
        None => problems.push(format!("no expectation for a {} vertex", vertex_kind.as_str())),
        _ => {}
    }
    Ok(MonodromyReport {
        vertex_kind,
        matrices: triple.to_vec(),
        product: MonodromyMatrix::IDENTITY,
        conjugate_to_standard: conj,
        fixed_dims,
        common_fixed_dim: common,
        expected_common_fixed_dim: expected,
        consistent: problems.is_empty(),
        mismatch: if problems.is_empty() { None } else { Some(problems.join("; ")) },
    })
}

/// The standard triples: `(I+E13, I+E23, I-E13-E23)` around a positive
/// vertex and `(I+E13, I+E12, I-E12-E13)` around a negative one.
pub fn standard_triple(kind: VertexKind) -> Option<[MonodromyMatrix; 3]> {
    let e13 = MonodromyMatrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
    match kind {
        VertexKind::Positive => Some([
            e13,
            MonodromyMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
            MonodromyMatrix([[1, 0, -1], [0, 1, -1], [0, 0, 1]]),
        ]),
        VertexKind::Negative => Some([
            e13,
            MonodromyMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            MonodromyMatrix([[1, -1, -1], [0, 1, 0], [0, 0, 1]]),
        ]),
        _ => None,
    }
}
