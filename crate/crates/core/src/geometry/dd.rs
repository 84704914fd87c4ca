//! Double description: extreme rays of a pointed cone `{y : A y >= 0}`.

use super::linalg::{dot, inverse, row_reduce};
use crate::scalar::{primitive_integer_vector, ExactScalar};

/// Small fixed-width bitset over constraint rows.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn new(n: usize) -> Self {
        RowSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        RowSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone)]
struct Ray<T> {
    v: Vec<T>,
    zero: RowSet,
}

#[derive(Debug, PartialEq, Eq)]
pub struct NotPointed;

fn normalize<T: ExactScalar>(v: Vec<T>) -> Vec<T> {
    primitive_integer_vector(&v)
        .iter()
        .map(T::from_bigint)
        .collect()
}

/// Extreme rays of `{y in T^dim : row · y >= 0 for every row}`, each scaled to a
/// primitive integer vector. Fails when the rows do not span `T^dim`.
pub fn extreme_rays<T: ExactScalar>(rows: &[Vec<T>], dim: usize) -> Result<Vec<Vec<T>>, NotPointed> {
    let n = rows.len();

    // Greedy choice of `dim` independent rows for the starting simplicial cone.
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<T>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.clone());
        let piv = row_reduce(&mut trial);
        if piv.len() > echelon.len() {
            trial.truncate(piv.len());
            echelon = trial;
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(NotPointed);
    }

    let base_rows: Vec<Vec<T>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = inverse(&base_rows).ok_or(NotPointed)?;
    let mut rays: Vec<Ray<T>> = (0..dim)
        .map(|k| {
            let v: Vec<T> = (0..dim).map(|r| inv[r][k].clone()).collect();
            let mut zero = RowSet::new(n);
            for (j, &b) in basis.iter().enumerate() {
                if j != k {
                    zero.insert(b);
                }
            }
            Ray { v: normalize(v), zero }
        })
        .collect();

    let mut in_basis = vec![false; n];
    for &b in &basis {
        in_basis[b] = true;
    }

    for (i, row) in rows.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let values: Vec<T> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_negative()).collect();
        if neg.is_empty() {
            for (j, r) in rays.iter_mut().enumerate() {
                if values[j].is_zero() {
                    r.zero.insert(i);
                }
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.intersection(&rays[q].zero);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !r.zero.is_superset(&common)
                });
                if !adjacent {
                    continue;
                }
                let vp = values[p].clone();
                let vq = values[q].clone();
                let v: Vec<T> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, b)| vp.clone() * a.clone() - vq.clone() * b.clone())
                    .collect();
                let mut zero = common;
                zero.insert(i);
                created.push(Ray { v: normalize(v), zero });
            }
        }

        let mut next: Vec<Ray<T>> = Vec::with_capacity(rays.len() + created.len());
        for (j, mut r) in rays.into_iter().enumerate() {
            if values[j].is_negative() {
                continue;
            }
            if values[j].is_zero() {
                r.zero.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
