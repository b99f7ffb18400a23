//! Exact linear algebra for the hull oracle: fraction-free integer
//! elimination, Cramer solves, and a small rational simplex used for convex
//! hull membership. No floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Determinant of a square integer matrix (Bareiss fraction-free scheme,
/// exact in `i128` at the sizes the oracle uses).
pub(crate) fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Rank of an integer matrix.
pub(crate) fn rank_i128(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| m[r][col] != 0);
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for r in 0..rows {
            if r != row && m[r][col] != 0 {
                let (a, b) = (m[row][col], m[r][col]);
                for c in 0..cols {
                    m[r][c] = m[r][c] * a - m[row][c] * b;
                }
                // keep entries small
                let g = m[r].iter().fold(0i128, |acc, &v| acc.gcd(&v));
                if g > 1 {
                    for c in 0..cols {
                        m[r][c] /= g;
                    }
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Affine rank of a point set (dimension of its affine hull).
pub(crate) fn affine_rank(points: &[&[i64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(&a, &b)| a as i128 - b as i128)
                .collect()
        })
        .collect();
    rank_i128(rows)
}

/// The (integer, primitive) normal of the hyperplane spanned by `d` affinely
/// independent points of `R^d`, via the generalized cross product of their
/// difference vectors. Returns `None` when the points are affinely dependent.
pub(crate) fn hyperplane_normal(points: &[&[i64]]) -> Option<Vec<i64>> {
    let d = points.len();
    debug_assert!(points.iter().all(|p| p.len() == d));
    let base = points[0];
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(&a, &b)| a as i128 - b as i128)
                .collect()
        })
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<i128>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let cof = det_i128(minor);
        normal.push(if j % 2 == 0 { cof } else { -cof });
    }
    if normal.iter().all(|&v| v == 0) {
        return None;
    }
    let g = normal.iter().fold(0i128, |acc, &v| acc.gcd(&v));
    Some(normal.into_iter().map(|v| (v / g) as i64).collect())
}

/// Exact solution of `A x = b` by Cramer's rule: `Some((nums, den))` with
/// `x_i = nums[i] / den`, `den > 0`, or `None` if `A` is singular.
pub(crate) fn solve_square(a: &[Vec<i128>], b: &[i128]) -> Option<(Vec<i128>, i128)> {
    let n = a.len();
    let det = det_i128(a.to_vec());
    if det == 0 {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for j in 0..n {
        let mut m = a.to_vec();
        for (row, &bv) in m.iter_mut().zip(b) {
            row[j] = bv;
        }
        nums.push(det_i128(m));
    }
    let (nums, den) = if det < 0 {
        (nums.into_iter().map(|v| -v).collect::<Vec<_>>(), -det)
    } else {
        (nums, det)
    };
    Some((nums, den))
}

/// Divide a vector (and an attached scalar) by the gcd of all entries.
pub(crate) fn primitive(mut v: Vec<i64>, mut rhs: i64) -> (Vec<i64>, i64) {
    let mut g = rhs.unsigned_abs() as i64;
    for &x in &v {
        g = g.gcd(&x);
    }
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
        rhs /= g;
    }
    (v, rhs)
}

/// Is `target` in the convex hull of `points`? Exact rational phase-1
/// simplex with Bland's rule on the system
/// `sum λ_i p_i = target, sum λ_i = 1, λ >= 0`.
pub(crate) fn point_in_hull(target: &[i64], points: &[&[i64]]) -> bool {
    let d = target.len();
    let n = points.len();
    if n == 0 {
        return false;
    }
    let m = d + 1;
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    // rows 0..d: coordinates; row d: convexity. Flip rows to make rhs >= 0.
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row: Vec<BigRational> = Vec::with_capacity(n + m + 1);
        for p in points {
            row.push(if r < d { rat(p[r]) } else { rat(1) });
        }
        for j in 0..m {
            row.push(if j == r { rat(1) } else { rat(0) });
        }
        row.push(if r < d { rat(target[r]) } else { rat(1) });
        if row[n + m] < BigRational::zero() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            // re-flip the artificial column so the basis stays the identity
            row[n + r] = rat(1);
        }
        tableau.push(row);
    }
    // objective: minimize the sum of artificials; with the artificial basis
    // the reduced-cost row is the negated sum of the constraint rows over the
    // structural columns.
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); n + m + 1];
    for row in &tableau {
        for (o, v) in obj.iter_mut().zip(row.iter()) {
            *o -= v;
        }
    }
    for j in 0..m {
        obj[n + j] = BigRational::zero();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering = lowest-index column with negative reduced cost
        let entering = (0..n + m).find(|&j| obj[j] < BigRational::zero());
        let Some(e) = entering else { break };
        // leaving: minimum ratio, ties by lowest basis variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for (r, row) in tableau.iter().enumerate() {
            if row[e] > BigRational::zero() {
                let ratio = &row[n + m] / &row[e];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(l) = leave else {
            // unbounded phase-1 cannot happen; treat as infeasible
            return false;
        };
        // pivot on (l, e)
        let pivot = tableau[l][e].clone();
        for v in tableau[l].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..m {
            if r != l && !tableau[r][e].is_zero() {
                let factor = tableau[r][e].clone();
                for c in 0..n + m + 1 {
                    let delta = &factor * &tableau[l][c];
                    tableau[r][c] -= delta;
                }
            }
        }
        if !obj[e].is_zero() {
            let factor = obj[e].clone();
            for c in 0..n + m + 1 {
                let delta = &factor * &tableau[l][c];
                obj[c] -= delta;
            }
        }
        basis[l] = e;
    }
    // feasible iff all artificials are 0, i.e. the objective reached 0
    let residual: BigRational = tableau
        .iter()
        .enumerate()
        .filter(|(r, _)| basis[*r] >= n)
        .map(|(_, row)| row[n + m].abs())
        .sum();
    residual.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det_i128(vec![vec![2]]), 2);
        assert_eq!(det_i128(vec![vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(
            det_i128(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            -1
        );
        assert_eq!(det_i128(vec![vec![1, 1], vec![1, 1]]), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_i128(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i128(vec![vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(affine_rank(&[&[0, 0], &[1, 0], &[0, 1]]), 2);
        assert_eq!(affine_rank(&[&[0, 0], &[1, 1], &[2, 2]]), 1);
    }

    #[test]
    fn normals() {
        let n = hyperplane_normal(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(n == vec![1, 1] || n == vec![-1, -1]);
        assert!(hyperplane_normal(&[&[1, 1], &[1, 1]]).is_none());
        let n = hyperplane_normal(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(n.iter().map(|v| v.abs()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn cramer_solve() {
        let a = vec![vec![2, 0], vec![0, 4]];
        let (nums, den) = solve_square(&a, &[1, 1]).unwrap();
        // x = (1/2, 1/4), unreduced over the common denominator det = 8
        assert_eq!((nums[0], nums[1], den), (4, 2, 8));
        assert!(solve_square(&[vec![1, 1], vec![1, 1]], &[1, 2]).is_none());
    }

    #[test]
    fn hull_membership() {
        assert!(point_in_hull(&[0, 0], &[&[1, 0], &[0, 1], &[-1, -1]]));
        assert!(!point_in_hull(&[0, 0], &[&[1, 0], &[0, 1], &[1, 1]]));
        assert!(!point_in_hull(&[1, 1], &[&[0, 0], &[1, 0], &[0, 1]]));
        assert!(point_in_hull(&[1, 1], &[&[0, 0], &[2, 2]]));
        assert!(point_in_hull(&[1, 0], &[&[0, 0], &[2, 0]]));
        assert!(!point_in_hull(&[3, 0], &[&[0, 0], &[2, 0]]));
        assert!(!point_in_hull(&[1, 1], &[]));
    }
}
