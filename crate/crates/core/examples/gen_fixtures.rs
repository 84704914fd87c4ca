//! Regenerates the bundled fixtures: standard nef partitions of projective
//! simplices and regular triangulations of the faces of Δ∨ whose sums are
//! `(n-1)`-dimensional faces of ∇.
//!
//! `cargo run --release -p nefdisc-core --example gen_fixtures -- crates/core/fixtures`

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use nefdisc_core::geometry::{convex_hull, lattice_points};
use nefdisc_core::nef::{NefPartition, NefPartitionData, PartitionDoc};
use nefdisc_core::sigma::{transversal_faces, CayleySubdivision, Side, SubdivisionCell, TransversalFace};
use nefdisc_core::{Rational, RationalPoint};

fn simplex_vertices(big_n: usize) -> Vec<RationalPoint> {
    let mut e = vec![RationalPoint::from_i64(&vec![-1; big_n])];
    for i in 0..big_n {
        let mut c = vec![0; big_n];
        c[i] = 1;
        e.push(RationalPoint::from_i64(&c));
    }
    e
}

/// Strictly convex quadratic plus a tiny deterministic perturbation.
fn height(m: &RationalPoint, e: &[RationalPoint], salt: u64) -> Rational {
    let mut q = Rational::from_integer(BigInt::from(0));
    for ea in e {
        let v = m.dot(ea);
        q += &v * &v;
    }
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ salt;
    for c in m.coords() {
        h ^= c.to_integer().to_i64().unwrap() as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
        h ^= h >> 29;
    }
    q + Rational::new(BigInt::from(h % 1_000_003), BigInt::from(10u64.pow(13)))
}

fn face_points(data: &NefPartitionData, face: &TransversalFace) -> Vec<(RationalPoint, usize)> {
    let poly = &data.delta_check;
    let hull = convex_hull(&poly.face_points(face.face), poly.ambient_dim()).unwrap();
    lattice_points(&hull)
        .into_iter()
        .map(|v| {
            let p: RationalPoint = v.to_point();
            let owners: Vec<usize> = (0..data.r()).filter(|&i| data.nabla_parts[i].contains(&p)).collect();
            assert_eq!(owners.len(), 1, "lattice point {p} of a Cayley face lies on one layer");
            (p, owners[0])
        })
        .collect()
}

fn triangulate(points: &[(RationalPoint, usize)], e: &[RationalPoint], salt: u64, r: usize) -> Option<Vec<SubdivisionCell>> {
    let d = points[0].0.dim();
    let lifted: Vec<RationalPoint> = points
        .iter()
        .map(|(p, _)| {
            let mut c = p.0.clone();
            c.push(height(p, e, salt));
            nefdisc_core::geometry::RationalPoint(c)
        })
        .collect();
    let hull = convex_hull(&lifted, d + 1).unwrap();
    let cell_size = hull.dim();
    let mut cells = Vec::new();
    for f in hull.facets() {
        if !f.normal.coords[d].is_negative() {
            continue;
        }
        let on: Vec<usize> = (0..lifted.len()).filter(|&k| f.saturates(&lifted[k])).collect();
        if on.len() != cell_size {
            return None;
        }
        let mut parts = vec![Vec::new(); r];
        for k in on {
            parts[points[k].1].push(points[k].0.clone());
        }
        cells.push(SubdivisionCell { parts });
    }
    Some(cells)
}

fn subdivide(data: &NefPartitionData, face: &TransversalFace, e: &[RationalPoint]) -> CayleySubdivision {
    let pts = face_points(data, face);
    for salt in 0.. {
        if let Some(cells) = triangulate(&pts, e, salt, data.r()) {
            let sub = CayleySubdivision { side: Side::DeltaCheck, face: face.vertex_ids.clone(), cells };
            sub.validate(data).expect("generated subdivision validates");
            return sub;
        }
    }
    unreachable!()
}

fn write_json(path: &Path, value: &impl serde::Serialize) {
    let mut text = serde_json::to_string(value).unwrap();
    text.push('\n');
    fs::write(path, text).unwrap();
    println!("wrote {}", path.display());
}

/// Writes the partition and the subdivisions of every face with `dim t_∇ = n - 1`.
fn instance(dir: &Path, name: &str, degrees: &[usize]) -> (NefPartitionData, Vec<CayleySubdivision>) {
    let np = NefPartition::projective(degrees).unwrap();
    let data = np.build().unwrap();
    let e = simplex_vertices(data.ambient_dim());
    let subs: Vec<CayleySubdivision> = transversal_faces(&data, Side::DeltaCheck)
        .unwrap()
        .iter()
        .filter(|t| t.sum_dim + 1 == data.cy_dim())
        .map(|t| subdivide(&data, t, &e))
        .collect();
    write_json(&dir.join(format!("{name}_partition.json")), &PartitionDoc::from_partition(&np));
    let docs: Vec<_> = subs.iter().map(CayleySubdivision::to_doc).collect();
    write_json(&dir.join(format!("{name}_subdivisions.json")), &docs);
    (data, subs)
}

/// `a` such that the vertex `m` of some `∇^(i)` fails to saturate `<m, e_a> <= δ`.
fn label(m: &RationalPoint, e: &[RationalPoint]) -> usize {
    let slack: Vec<usize> = (0..e.len()).filter(|&a| m.dot(&e[a]).is_negative()).collect();
    assert_eq!(slack.len(), 1);
    slack[0]
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/fixtures".into()));
    fs::create_dir_all(&dir).unwrap();

    let instances: [(&str, &[usize]); 8] = [
        ("p5_42", &[4, 2]),
        ("quintic", &[5]),
        ("p5_33", &[3, 3]),
        ("p6_322", &[3, 2, 2]),
        ("p7_2222", &[2, 2, 2, 2]),
        ("quartic", &[4]),
        ("p4_32", &[3, 2]),
        ("p5_222", &[2, 2, 2]),
    ];
    for (name, degrees) in &instances[1..] {
        instance(&dir, name, degrees);
    }
    let (data, _) = instance(&dir, instances[0].0, instances[0].1);

    // The trapezoid over the edge between the vertices of ∇ labelled 0 and 1,
    // and one large triangle over a face with labels {0, 1, 4}.
    let e = simplex_vertices(5);
    let faces = transversal_faces(&data, Side::DeltaCheck).unwrap();
    let labels = |t: &TransversalFace| -> Vec<usize> {
        let mut l: Vec<usize> = t.vertex_ids.iter().map(|&v| label(&data.delta_check.vertices()[v], &e)).collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let trapezoid = faces.iter().find(|t| t.face.dim == 2 && labels(t) == vec![0, 1] && t.vertex_ids.len() == 4).unwrap();
    write_json(&dir.join("trapezoid_subdivision.json"), &subdivide(&data, trapezoid, &e).to_doc());
    let triangle = faces.iter().find(|t| t.face.dim == 3 && labels(t) == vec![0, 1, 4]).unwrap();
    write_json(&dir.join("large_triangle_subdivision.json"), &subdivide(&data, triangle, &e).to_doc());
}
