//! Dense exact linear algebra over an [`ExactScalar`] field.

use crate::scalar::ExactScalar;

pub fn dot<T: ExactScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn sub<T: ExactScalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<T: ExactScalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// Brings `m` to reduced row echelon form and returns the pivot columns.
/// Zero rows are moved to the bottom.
pub fn row_reduce<T: ExactScalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let delta = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<T: ExactScalar>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of `{x : rows · x = 0}` for `ncols`-dimensional `x`.
pub fn nullspace<T: ExactScalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn determinant<T: ExactScalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: ExactScalar>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Differences `p - base` for every `p` in `points`.
pub fn differences<T: ExactScalar>(points: &[Vec<T>], base: &[T]) -> Vec<Vec<T>> {
    points.iter().map(|p| sub(p, base)).collect()
}

/// Affine dimension of a point set (`-1` is not representable, so empty
/// input reports 0).
pub fn affine_rank<T: ExactScalar>(points: &[Vec<T>]) -> usize {
    match points.first() {
        None => 0,
        Some(base) => rank(&differences(&points[1..], base)),
    }
}

/// Absolute value of `det(p_1 - p_0, ..., p_k - p_0)` after restricting every
/// point to `coords`; this is `k!` times the simplex volume in those
/// coordinates.
pub fn simplex_volume<T: ExactScalar>(points: &[Vec<T>], coords: &[usize]) -> T {
    let base = &points[0];
    let rows: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| coords.iter().map(|&c| p[c].clone() - base[c].clone()).collect())
        .collect();
    determinant(rows).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let m = vec![q(&[2, 1]), q(&[7, 4])];
        assert_eq!(determinant(m.clone()), BigRational::from_integer(1.into()));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![q(&[4, -1]), q(&[-7, 2])]);
        assert!(inverse(&[q(&[1, 2]), q(&[2, 4])]).is_none());
    }

    #[test]
    fn unit_simplex_volume() {
        let pts = vec![q(&[0, 0, 9]), q(&[1, 0, 9]), q(&[0, 1, 9])];
        assert_eq!(simplex_volume(&pts, &[0, 1]), BigRational::from_integer(1.into()));
    }
}
