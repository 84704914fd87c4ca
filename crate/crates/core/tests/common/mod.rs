//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use nefdisc_core::{Polytope, Rational, RationalPoint};

/// Alternating face count of the boundary: 1 - (-1)^dim for a sphere.
pub fn assert_euler(p: &Polytope) {
    let d = p.dim();
    let chi: i64 = (0..d).map(|k| if k % 2 == 0 { 1 } else { -1 } * p.faces_of_dim(k).len() as i64).sum();
    assert_eq!(chi, 1 - if d % 2 == 0 { 1 } else { -1 }, "dim {d}");
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub type Small = num_rational::Ratio<i128>;

/// Gauss-Jordan over machine rationals; `None` unless the system has exactly
/// one solution.
pub fn solve_small(mut m: Vec<Vec<Small>>, cols: usize) -> Option<Vec<Small>> {
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..=cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != Small::from_integer(0)) else {
            continue;
        };
        if col == cols {
            return None;
        }
        m.swap(row, p);
        let inv = Small::from_integer(1) / m[row][col];
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != Small::from_integer(0) {
                let f = m[r][col];
                for c in 0..=cols {
                    let delta = f * m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (pivots.len() == cols).then(|| (0..cols).map(|k| m[k][cols]).collect())
}

/// Caratheodory oracle: `p` is a convex combination of `others` iff it is one
/// of some affinely independent subset of at most `d + 1` of them.
pub fn in_convex_hull(p: &RationalPoint, others: &[RationalPoint]) -> bool {
    let int = |x: &Rational| -> i128 { x.to_integer().try_into().unwrap() };
    let d = p.dim();
    for k in 1..=(d + 1).min(others.len()) {
        for s in subsets(others.len(), k) {
            let mut m: Vec<Vec<Small>> = (0..d)
                .map(|row| {
                    let mut r: Vec<Small> = s.iter().map(|&i| Small::from_integer(int(&others[i].0[row]))).collect();
                    r.push(Small::from_integer(int(&p.0[row])));
                    r
                })
                .collect();
            m.push(vec![Small::from_integer(1); k + 1]);
            if let Some(lambda) = solve_small(m, k) {
                if lambda.iter().all(|l| *l >= Small::from_integer(0)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Small reflexive polytopes in dimension 1 to 4.
pub fn reflexive_bases() -> Vec<Vec<Vec<i64>>> {
    let unit = |d: usize, k: usize, s: i64| {
        let mut e = vec![0; d];
        e[k] = s;
        e
    };
    let mut out = Vec::new();
    for d in 1..=4 {
        let mut simplex: Vec<Vec<i64>> = (0..d).map(|k| unit(d, k, 1)).collect();
        simplex.push(vec![-1; d]);
        out.push(simplex);
        let cross: Vec<Vec<i64>> = (0..d).flat_map(|k| [unit(d, k, 1), unit(d, k, -1)]).collect();
        out.push(cross);
        let cube: Vec<Vec<i64>> = (0..1usize << d)
            .map(|m| (0..d).map(|k| if m >> k & 1 == 1 { 1 } else { -1 }).collect())
            .collect();
        out.push(cube);
    }
    out.push(vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]]);
    out.push(vec![vec![1, 0], vec![0, 1], vec![-1, -2]]);
    out.push(vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1], vec![0, 0, -1]]);
    out.push(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![-1, -1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, -1, -1]]);
    out
}

/// Unimodular matrix from a list of elementary row operations.
pub fn unimodular(d: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % d, j % d);
        if i != j {
            for k in 0..d {
                m[i][k] += c * m[j][k];
            }
        }
    }
    m
}


/// A reflexive base polytope moved by a unimodular map, optionally replaced by
/// its dual (moved back to the N side).
pub fn transformed_reflexive(base: usize, ops: &[(usize, usize, i64)], take_dual: bool) -> Polytope {
    let bases = reflexive_bases();
    let verts = &bases[base % bases.len()];
    let d = verts[0].len();
    let u = unimodular(d, ops);
    let moved: Vec<RationalPoint> = verts
        .iter()
        .map(|v| {
            let w: Vec<i64> = (0..d).map(|i| (0..d).map(|j| u[i][j] * v[j]).sum()).collect();
            nefdisc_core::geometry::RationalPoint::from_i64(&w)
        })
        .collect();
    let p = nefdisc_core::geometry::convex_hull(&moved, d).unwrap();
    if take_dual {
        nefdisc_core::geometry::polar_dual(&p).unwrap().on_side(nefdisc_core::LatticeSide::N)
    } else {
        p
    }
}
