use num_bigint::BigInt;
use num_traits::One;

use super::dd::extreme_rays;
use super::{convex_hull, GeometryError, HalfSpace, LatticeVector, Polytope, RationalPoint};
use crate::scalar::ExactScalar;

/// `{m : <m, n> <= 1 for all n in P}`, living in the dual lattice.
pub fn polar_dual<T: ExactScalar>(p: &Polytope<T>) -> Result<Polytope<T>, GeometryError> {
    if !p.is_full_dimensional() || p.facets().iter().any(|f| !f.bound.is_positive()) {
        return Err(GeometryError::OriginNotInterior);
    }
    let verts: Vec<RationalPoint<T>> = p
        .facets()
        .iter()
        .map(|f| {
            RationalPoint(
                f.normal
                    .as_scalars::<T>()
                    .into_iter()
                    .map(|c| c / f.bound.clone())
                    .collect(),
            )
        })
        .collect();
    Ok(convex_hull(&verts, p.ambient_dim())?.on_side(p.side().dual()))
}

/// Lattice vertices, origin in the interior, and a lattice polar dual.
pub fn is_reflexive<T: ExactScalar>(p: &Polytope<T>) -> bool {
    if !p.is_full_dimensional() || !p.is_lattice_polytope() {
        return false;
    }
    match polar_dual(p) {
        Ok(d) => d.is_lattice_polytope(),
        Err(_) => false,
    }
}

pub fn minkowski_sum<T: ExactScalar>(
    p: &Polytope<T>,
    q: &Polytope<T>,
) -> Result<Polytope<T>, GeometryError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    if p.side() != q.side() {
        return Err(GeometryError::SideMismatch);
    }
    let sums: Vec<RationalPoint<T>> = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a.add(b)))
        .collect();
    Ok(convex_hull(&sums, p.ambient_dim())?.on_side(p.side()))
}

/// Intersection of the half-spaces `{x : <x, normal> <= bound}`. The result
/// lives in the lattice dual to the normals.
pub fn halfspace_intersection<T: ExactScalar>(
    hs: &[HalfSpace<T>],
    ambient_dim: usize,
) -> Result<Polytope<T>, GeometryError> {
    if let Some(bad) = hs.iter().find(|h| h.normal.rank() != ambient_dim) {
        return Err(GeometryError::DimensionMismatch { expected: ambient_dim, found: bad.normal.rank() });
    }
    // Homogenize: t * bound - <normal, x> >= 0, t >= 0.
    let mut rows: Vec<Vec<T>> = hs
        .iter()
        .map(|h| {
            let mut row = vec![h.bound.clone()];
            row.extend(h.normal.as_scalars::<T>().into_iter().map(|c| -c));
            row
        })
        .collect();
    let mut t_row = vec![T::zero(); ambient_dim + 1];
    t_row[0] = T::one();
    rows.push(t_row);

    let rays = extreme_rays(&rows, ambient_dim + 1).map_err(|_| GeometryError::Unbounded)?;
    if rays.iter().any(|r| r[0].is_zero()) {
        return Err(GeometryError::Unbounded);
    }
    if rays.is_empty() {
        return Err(GeometryError::Empty);
    }
    let verts: Vec<RationalPoint<T>> = rays
        .iter()
        .map(|r| RationalPoint(r[1..].iter().map(|c| c.clone() / r[0].clone()).collect()))
        .collect();
    let side = hs.first().map(|h| h.normal.side.dual()).unwrap_or_default();
    Ok(convex_hull(&verts, ambient_dim)?.on_side(side))
}

/// All lattice points of `p` in lexicographic order.
pub fn lattice_points<T: ExactScalar>(p: &Polytope<T>) -> Vec<LatticeVector> {
    let d = p.ambient_dim();
    let lo: Vec<BigInt> = (0..d)
        .map(|i| p.vertices().iter().map(|v| v.0[i].ceil_bigint()).min().unwrap())
        .collect();
    let hi: Vec<BigInt> = (0..d)
        .map(|i| p.vertices().iter().map(|v| v.0[i].floor_bigint()).max().unwrap())
        .collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let point = RationalPoint(cur.iter().map(T::from_bigint).collect());
        if p.contains(&point) {
            out.push(LatticeVector::new(cur.clone(), p.side()));
        }
        // Odometer increment, last coordinate fastest.
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += BigInt::one();
                for j in i + 1..d {
                    cur[j] = lo[j].clone();
                }
                break;
            }
        }
        if d == 0 {
            return out;
        }
    }
}
