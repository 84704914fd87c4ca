//! SVG pictures of two-dimensional data: the mixed cells induced by a Cayley
//! subdivision, and tropical dual graphs. Coordinates stay exact until they
//! are written, rounded to six decimals.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::discriminant::TropicalGraph;
use crate::geometry::{convex_hull, linalg, GeometryError};
use crate::sigma::CayleySubdivision;
use crate::{Polytope, Rational, RationalPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FigureError {
    #[error("figures need data of dimension at most 2, got {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Fill colours: one per part for cells that only move in that part, and one
/// for mixed cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub parts: Vec<String>,
    pub mixed: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            parts: vec!["#3a6fc4".into(), "#c8402f".into(), "#d9a21b".into(), "#8a55b5".into()],
            mixed: "#3c9a5f".into(),
        }
    }
}

/// Decimal with six places, rounded half away from zero.
pub fn decimal6(q: &Rational) -> String {
    let scale = BigInt::from(1_000_000);
    let num = q.numer() * &scale;
    let den = q.denom();
    let (quot, rem) = num.abs().div_rem(den);
    let rounded = if rem * 2 >= *den { quot + 1 } else { quot };
    let neg = num.is_negative() && !rounded.is_zero();
    let (int, frac) = rounded.div_rem(&scale);
    let frac = format!("{frac:06}");
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Projects points onto the pivot coordinates of their affine span.
struct Projection {
    coords: Vec<usize>,
}

impl Projection {
    fn new(points: &[RationalPoint]) -> Result<Self, FigureError> {
        let Some(base) = points.first() else {
            return Ok(Projection { coords: Vec::new() });
        };
        let mut diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| linalg::sub(&p.0, &base.0)).collect();
        let mut coords = linalg::row_reduce(&mut diffs);
        if coords.len() > 2 {
            return Err(FigureError::UnsupportedDimension(coords.len()));
        }
        // a flat picture still needs two axes
        for c in 0..base.dim() {
            if coords.len() == 2 {
                break;
            }
            if !coords.contains(&c) {
                coords.push(c);
            }
        }
        coords.sort_unstable();
        Ok(Projection { coords })
    }

    fn xy(&self, p: &RationalPoint) -> (Rational, Rational) {
        let get = |k: usize| self.coords.get(k).map_or_else(|| Rational::from_integer(0.into()), |&c| p.0[c].clone());
        // screen y grows downwards
        (get(0), -get(1))
    }

    fn fmt(&self, p: &RationalPoint) -> String {
        let (x, y) = self.xy(p);
        format!("{},{}", decimal6(&x), decimal6(&y))
    }
}

fn canvas(proj: &Projection, points: &[RationalPoint], body: &str, style: &str) -> String {
    let mut out = String::new();
    let view = if points.is_empty() {
        "0 0 1 1".to_string()
    } else {
        let xy: Vec<(Rational, Rational)> = points.iter().map(|p| proj.xy(p)).collect();
        let min_x = xy.iter().map(|p| p.0.clone()).min().unwrap();
        let max_x = xy.iter().map(|p| p.0.clone()).max().unwrap();
        let min_y = xy.iter().map(|p| p.1.clone()).min().unwrap();
        let max_y = xy.iter().map(|p| p.1.clone()).max().unwrap();
        let pad = Rational::new(1.into(), 2.into());
        let w = &max_x - &min_x + &pad * Rational::from_integer(2.into());
        let h = &max_y - &min_y + &pad * Rational::from_integer(2.into());
        format!(
            "{} {} {} {}",
            decimal6(&(min_x - &pad)),
            decimal6(&(min_y - &pad)),
            decimal6(&w),
            decimal6(&h)
        )
    };
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\" width=\"480\" height=\"480\">"
    );
    if !style.is_empty() {
        let _ = writeln!(out, "<style>{style}</style>");
    }
    out.push_str(body);
    out.push_str("</svg>\n");
    out
}

/// Vertices of a polygon in boundary order, starting at the smallest.
fn cyclic_order(hull: &Polytope) -> Vec<RationalPoint> {
    let n = hull.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for e in hull.faces_of_dim(1) {
        adj[e.vertex_ids[0]].push(e.vertex_ids[1]);
        adj[e.vertex_ids[1]].push(e.vertex_ids[0]);
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let next = adj[cur].iter().copied().find(|&v| v != prev && !order.contains(&v)).unwrap();
        prev = cur;
        order.push(next);
    }
    order.into_iter().map(|v| hull.vertices()[v].clone()).collect()
}

/// Mixed cells `sum_i conv(parts[i])` of a subdivision, coloured by which
/// parts move: a cell whose only positive-dimensional component is part `k`
/// gets class `part-{k+1}`, a cell with several gets class `mixed`.
pub fn subdivision_svg(sub: &CayleySubdivision, palette: &Palette) -> Result<String, FigureError> {
    let mut cells = Vec::new();
    for cell in &sub.cells {
        let parts: Vec<Vec<&RationalPoint>> = cell.parts.iter().map(|p| p.iter().collect()).collect();
        if parts.iter().any(Vec::is_empty) {
            continue;
        }
        let dims: Vec<usize> = parts
            .iter()
            .map(|p| linalg::affine_rank(&p.iter().map(|q| q.0.clone()).collect::<Vec<_>>()))
            .collect();
        let pts = crate::sigma::minkowski_points(&parts);
        let hull = convex_hull(&pts, pts[0].dim())?;
        cells.push((dims, hull));
    }
    let all: Vec<RationalPoint> = cells.iter().flat_map(|(_, h)| h.vertices().iter().cloned()).collect();
    let proj = Projection::new(&all)?;
    let mut style = String::from(".cell{stroke:#222;stroke-width:1;vector-effect:non-scaling-stroke;fill-opacity:0.7}");
    for (k, colour) in palette.parts.iter().enumerate() {
        let _ = write!(style, ".part-{}{{fill:{colour};stroke:{colour}}}", k + 1);
    }
    let _ = write!(style, ".mixed{{fill:{};stroke:{}}}", palette.mixed, palette.mixed);
    let mut body = String::new();
    for (dims, hull) in &cells {
        let moving: Vec<usize> = (0..dims.len()).filter(|&k| dims[k] > 0).collect();
        let class = match moving.as_slice() {
            [k] => format!("part-{}", k + 1),
            [] => "point".to_string(),
            _ => "mixed".to_string(),
        };
        let dims_attr = dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match hull.dim() {
            0 => {
                let (x, y) = proj.xy(&hull.vertices()[0]);
                let _ = writeln!(
                    body,
                    "<circle class=\"cell {class}\" data-dims=\"{dims_attr}\" cx=\"{}\" cy=\"{}\" r=\"0.05\"/>",
                    decimal6(&x),
                    decimal6(&y)
                );
            }
            1 => {
                let (a, b) = (&hull.vertices()[0], &hull.vertices()[1]);
                let ((x1, y1), (x2, y2)) = (proj.xy(a), proj.xy(b));
                let _ = writeln!(
                    body,
                    "<line class=\"cell {class}\" data-dims=\"{dims_attr}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"4\"/>",
                    decimal6(&x1),
                    decimal6(&y1),
                    decimal6(&x2),
                    decimal6(&y2)
                );
            }
            _ => {
                let pts: Vec<String> = cyclic_order(hull).iter().map(|p| proj.fmt(p)).collect();
                let _ = writeln!(
                    body,
                    "<polygon class=\"cell {class}\" data-dims=\"{dims_attr}\" points=\"{}\"/>",
                    pts.join(" ")
                );
            }
        }
    }
    Ok(canvas(&proj, &all, &body, &style))
}

/// A tropical dual graph: nodes, bounded edges, and an outward ray normal to
/// each boundary edge.
pub fn tropical_svg(g: &TropicalGraph) -> Result<String, FigureError> {
    let mut all: Vec<RationalPoint> = g.nodes.clone();
    for (_, e) in &g.rays {
        all.extend(e.iter().cloned());
    }
    let proj = Projection::new(&all)?;
    let style = ".node{fill:#222}.edge{stroke:#222;stroke-width:1.5;vector-effect:non-scaling-stroke}.ray{stroke:#777;stroke-width:1.5;vector-effect:non-scaling-stroke}";
    let mut body = String::new();
    for &(a, b) in &g.edges {
        let ((x1, y1), (x2, y2)) = (proj.xy(&g.nodes[a]), proj.xy(&g.nodes[b]));
        let _ = writeln!(
            body,
            "<line class=\"edge\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            decimal6(&x1),
            decimal6(&y1),
            decimal6(&x2),
            decimal6(&y2)
        );
    }
    for (node, [p, q]) in &g.rays {
        let (x0, y0) = proj.xy(&g.nodes[*node]);
        let ((px, py), (qx, qy)) = (proj.xy(p), proj.xy(q));
        let (mut dx, mut dy) = (-(&qy - &py), &qx - &px);
        let mid = ((&px + &qx) / Rational::from_integer(2.into()), (&py + &qy) / Rational::from_integer(2.into()));
        if (&mid.0 - &x0) * &dx + (&mid.1 - &y0) * &dy < Rational::zero() {
            dx = -dx;
            dy = -dy;
        }
        let (x1, y1) = (&x0 + &dx, &y0 + &dy);
        let _ = writeln!(
            body,
            "<line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            decimal6(&x0),
            decimal6(&y0),
            decimal6(&x1),
            decimal6(&y1)
        );
    }
    for n in &g.nodes {
        let (x, y) = proj.xy(n);
        let _ = writeln!(body, "<circle class=\"node\" cx=\"{}\" cy=\"{}\" r=\"0.08\"/>", decimal6(&x), decimal6(&y));
    }
    Ok(canvas(&proj, &all, &body, style))
}
