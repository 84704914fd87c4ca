//! The combinatorial discriminant graph: one vertex per non-smooth cell of Σ,
//! one edge per codimension-one incidence between non-smooth cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::json::{point_doc, ScalarDoc};
use crate::geometry::{convex_hull, GeometryError};
use crate::sigma::{CayleySubdivision, SigmaComplex, SigmaError};
use crate::{Polytope, Rational, RationalPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscriminantError {
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("sign classification needs n = 3, got n = {0}")]
    UnsupportedDimension(usize),
    #[error("cell {cell} of dimension {cell_dim} with dims {dims:?} and valence {valence} fits no vertex type")]
    UnclassifiableCell { cell: usize, cell_dim: usize, dims: (usize, usize), valence: usize },
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Unsigned,
    Positive,
    Negative,
    Bivalent,
    DoublePoint,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Unsigned => "unsigned",
            VertexKind::Positive => "positive",
            VertexKind::Negative => "negative",
            VertexKind::Bivalent => "bivalent",
            VertexKind::DoublePoint => "double_point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantVertex {
    /// Index into `SigmaComplex::cells`.
    pub cell: usize,
    /// Barycenter of `σ_Δ × τ_∇` in `N ⊕ M`.
    pub position: RationalPoint,
    pub kind: VertexKind,
    pub valence: usize,
    /// `(dim σ_Δ, dim τ_∇)`.
    pub dims: (usize, usize),
    /// Parts `i` with `dim σ^(i) · dim τ^(i) > 0`; the curve family of the piece.
    pub family: Vec<usize>,
    /// Vertex ids of the faces of `∇∨` and `Δ∨` carrying `σ` and `τ`.
    pub s_face: Vec<usize>,
    pub t_face: Vec<usize>,
}

impl DiscriminantVertex {
    pub fn cell_dim(&self) -> usize {
        self.dims.0 + self.dims.1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantEdge {
    pub a: usize,
    pub b: usize,
    /// Ids of the original incidences merged into this edge. Edges merged
    /// through a bivalent vertex carry the same monodromy.
    pub chain: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGraph {
    pub n: usize,
    pub vertices: Vec<DiscriminantVertex>,
    pub edges: Vec<DiscriminantEdge>,
    /// Cycles made only of bivalent vertices, removed by smoothing.
    pub closed_loops: Vec<Vec<usize>>,
}

pub fn build_discriminant(complex: &SigmaComplex) -> Result<DiscriminantGraph, DiscriminantError> {
    let mut vertex_of = BTreeMap::new();
    let mut vertices = Vec::new();
    for (c, cell) in complex.cells.iter().enumerate() {
        if cell.smooth {
            continue;
        }
        let sigma = &complex.nabla_side.cells[cell.sigma];
        let tau = &complex.delta_side.cells[cell.tau];
        vertex_of.insert(c, vertices.len());
        vertices.push(DiscriminantVertex {
            cell: c,
            position: complex.barycenter(c),
            kind: VertexKind::Unsigned,
            valence: 0,
            dims: cell.dims,
            family: cell.singular_parts(),
            s_face: complex.table.s_faces[sigma.transversal].vertex_ids.clone(),
            t_face: complex.table.t_faces[tau.transversal].vertex_ids.clone(),
        });
    }
    let mut edges = Vec::new();
    for v in 0..vertices.len() {
        for f in complex.facets(vertices[v].cell)? {
            if let Some(&w) = vertex_of.get(&f) {
                let id = edges.len();
                edges.push(DiscriminantEdge { a: v, b: w, chain: vec![id] });
            }
        }
    }
    for e in &edges {
        vertices[e.a].valence += 1;
        vertices[e.b].valence += 1;
    }
    Ok(DiscriminantGraph { n: complex.n, vertices, edges, closed_loops: Vec::new() })
}

/// Signs trivalent top cells by their dims, marks two-valent top cells as
/// bivalent and two-valent interface cells as double points.
pub fn classify_vertices(g: &DiscriminantGraph) -> Result<DiscriminantGraph, DiscriminantError> {
    if g.n != 3 {
        return Err(DiscriminantError::UnsupportedDimension(g.n));
    }
    let mut out = g.clone();
    for v in &mut out.vertices {
        let top = v.cell_dim() == g.n;
        v.kind = match (top, v.valence, v.dims) {
            (true, 3, (1, 2)) => VertexKind::Negative,
            (true, 3, (2, 1)) => VertexKind::Positive,
            (true, 2, _) => VertexKind::Bivalent,
            (false, 2, _) if v.cell_dim() + 1 == g.n => VertexKind::DoublePoint,
            _ => {
                return Err(DiscriminantError::UnclassifiableCell {
                    cell: v.cell,
                    cell_dim: v.cell_dim(),
                    dims: v.dims,
                    valence: v.valence,
                })
            }
        };
    }
    Ok(out)
}

/// Removes bivalent vertices, joining their two edges.
pub fn smooth_bivalent(g: &DiscriminantGraph) -> DiscriminantGraph {
    let nv = g.vertices.len();
    let bivalent: Vec<bool> = g.vertices.iter().map(|v| v.kind == VertexKind::Bivalent).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (k, e) in g.edges.iter().enumerate() {
        incident[e.a].push(k);
        if e.b != e.a {
            incident[e.b].push(k);
        }
    }
    let other = |k: usize, v: usize| if g.edges[k].a == v { g.edges[k].b } else { g.edges[k].a };

    let mut used = vec![false; g.edges.len()];
    let mut merged: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for start in 0..nv {
        if bivalent[start] {
            continue;
        }
        for &k0 in &incident[start] {
            if used[k0] {
                continue;
            }
            let mut chain = Vec::new();
            let (mut k, mut at) = (k0, start);
            loop {
                used[k] = true;
                chain.extend(g.edges[k].chain.iter().copied());
                at = other(k, at);
                if !bivalent[at] {
                    break;
                }
                match incident[at].iter().find(|&&k2| !used[k2]) {
                    Some(&k2) => k = k2,
                    None => break,
                }
            }
            merged.push((start, at, chain));
        }
    }
    let mut closed_loops = g.closed_loops.clone();
    for k0 in 0..g.edges.len() {
        if used[k0] {
            continue;
        }
        let mut chain = Vec::new();
        let (mut k, mut at) = (k0, g.edges[k0].a);
        loop {
            used[k] = true;
            chain.extend(g.edges[k].chain.iter().copied());
            at = other(k, at);
            match incident[at].iter().find(|&&k2| !used[k2]) {
                Some(&k2) => k = k2,
                None => break,
            }
        }
        closed_loops.push(chain);
    }

    let mut new_id = vec![usize::MAX; nv];
    let mut vertices = Vec::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        if !bivalent[v] {
            new_id[v] = vertices.len();
            vertices.push(vert.clone());
        }
    }
    let mut edges: Vec<DiscriminantEdge> = merged
        .into_iter()
        .map(|(a, b, mut chain)| {
            chain.sort_unstable();
            let (a, b) = (new_id[a].min(new_id[b]), new_id[a].max(new_id[b]));
            DiscriminantEdge { a, b, chain }
        })
        .collect();
    edges.sort_by(|x, y| (x.a, x.b, &x.chain).cmp(&(y.a, y.b, &y.chain)));
    DiscriminantGraph { n: g.n, vertices, edges, closed_loops }
}

/// `#positive − #negative`.
pub fn graph_euler(g: &DiscriminantGraph) -> i64 {
    g.vertices
        .iter()
        .map(|v| match v.kind {
            VertexKind::Positive => 1,
            VertexKind::Negative => -1,
            _ => 0,
        })
        .sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub positive: usize,
    pub negative: usize,
    pub bivalent: usize,
    pub double_point: usize,
    pub unsigned: usize,
    pub closed_loops: usize,
    pub euler: i64,
}

impl DiscriminantGraph {
    pub fn count(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            positive: self.count(VertexKind::Positive),
            negative: self.count(VertexKind::Negative),
            bivalent: self.count(VertexKind::Bivalent),
            double_point: self.count(VertexKind::DoublePoint),
            unsigned: self.count(VertexKind::Unsigned),
            closed_loops: self.closed_loops.len(),
            euler: graph_euler(self),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph discriminant {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  v{k} [kind=\"{}\", dims=\"{},{}\", valence={}, family=\"{}\", s_face=\"{}\", t_face=\"{}\"];",
                v.kind.as_str(),
                v.dims.0,
                v.dims.1,
                v.valence,
                join(&v.family),
                join(&v.s_face),
                join(&v.t_face)
            );
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -- v{} [chain=\"{}\"];", e.a, e.b, join(&e.chain));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.n,
            summary: self.summary(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    cell: v.cell,
                    kind: v.kind,
                    valence: v.valence,
                    dims: [v.dims.0, v.dims.1],
                    family: v.family.clone(),
                    s_face: v.s_face.clone(),
                    t_face: v.t_face.clone(),
                    position: point_doc(&v.position),
                })
                .collect(),
            edges: self.edges.clone(),
            closed_loops: self.closed_loops.clone(),
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub cell: usize,
    pub kind: VertexKind,
    pub valence: usize,
    pub dims: [usize; 2],
    pub family: Vec<usize>,
    pub s_face: Vec<usize>,
    pub t_face: Vec<usize>,
    pub position: Vec<ScalarDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub summary: GraphSummary,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<DiscriminantEdge>,
    pub closed_loops: Vec<Vec<usize>>,
}

/// Dual graph of a polygon subdivision: a node per cell, an edge across every
/// interior edge and an unbounded ray across every boundary edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalGraph {
    pub nodes: Vec<RationalPoint>,
    pub edges: Vec<(usize, usize)>,
    /// `(node, endpoints of the boundary edge it crosses)`.
    pub rays: Vec<(usize, [RationalPoint; 2])>,
    /// First Betti number.
    pub loops: usize,
}

pub fn tropical_dual_graph(polygon: &Polytope, triangulation: &CayleySubdivision) -> Result<TropicalGraph, DiscriminantError> {
    if polygon.dim() != 2 {
        return Err(DiscriminantError::UnsupportedDimension(polygon.dim()));
    }
    let bad = |m: String| DiscriminantError::InvalidSubdivision(m);
    let d = polygon.ambient_dim();
    let coords = polygon.span_coordinates();
    let mut nodes = Vec::new();
    let mut edge_cells: BTreeMap<[RationalPoint; 2], Vec<usize>> = BTreeMap::new();
    let mut area = Rational::from_integer(0.into());
    for (c, cell) in triangulation.cells.iter().enumerate() {
        let pts: Vec<RationalPoint> = cell.parts.iter().flatten().cloned().collect();
        if pts.iter().any(|p| p.dim() != d || !polygon.contains(p)) {
            return Err(bad(format!("cell {c} leaves the polygon")));
        }
        let hull = convex_hull(&pts, d)?;
        if hull.dim() != 2 {
            return Err(bad(format!("cell {c} is not two-dimensional")));
        }
        area += hull.scaled_volume_in(&coords);
        for f in hull.faces_of_dim(1) {
            let e = [hull.vertices()[f.vertex_ids[0]].clone(), hull.vertices()[f.vertex_ids[1]].clone()];
            edge_cells.entry(e).or_default().push(c);
        }
        let k = Rational::from_integer(hull.vertices().len().into());
        let mut centre = RationalPoint::origin(d);
        for v in hull.vertices() {
            centre = centre.add(v);
        }
        nodes.push(crate::geometry::RationalPoint(centre.0.iter().map(|x| x / &k).collect()));
    }
    if area != polygon.scaled_volume_in(&coords) {
        return Err(bad("cell areas do not add up to the polygon".into()));
    }
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (e, cells) in &edge_cells {
        let on_boundary = polygon.smallest_face_containing(e).dim < 2;
        match (on_boundary, cells.as_slice()) {
            (true, [c]) => rays.push((*c, e.clone())),
            (false, [a, b]) => edges.push((*a.min(b), *a.max(b))),
            _ => return Err(bad(format!("edge {}–{} is covered {} times", e[0], e[1], cells.len()))),
        }
    }
    edges.sort_unstable();
    let components = {
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..nodes.len()).map(|x| find(&mut parent, x)).collect::<BTreeSet<_>>().len()
    };
    let loops = edges.len() + components - nodes.len();
    Ok(TropicalGraph { nodes, edges, rays, loops })
}

/// Unimodular triangulation of `k` times the standard triangle, used for
/// the plane-curve pictures.
pub fn standard_triangulation(k: i64) -> Vec<[RationalPoint; 3]> {
    let p = |a: i64, b: i64| RationalPoint::from_i64(&[a, b]);
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k - i {
            out.push([p(i, j), p(i + 1, j), p(i, j + 1)]);
            if i + j + 1 < k {
                out.push([p(i + 1, j), p(i + 1, j + 1), p(i, j + 1)]);
            }
        }
    }
    out
}
