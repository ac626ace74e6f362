//! Dense Gaussian elimination over a [`Field`]. Exact for rationals.

use crate::scalar::Field;

pub type Matrix<S> = Vec<Vec<S>>;

/// Reduced row echelon form and pivot columns.
pub fn rref<S: Field>(rows: &[Vec<S>]) -> (Matrix<S>, Vec<usize>) {
    let mut m: Matrix<S> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_negligible()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_negligible() {
                let factor = m[i][c].clone();
                for j in 0..ncols {
                    let v = m[i][j].clone() - factor.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(0));
    (m, pivots)
}

pub fn rank<S: Field>(rows: &[Vec<S>]) -> usize {
    rref(rows).1.len()
}

/// A basis (in reduced echelon form) of the span of `rows`.
pub fn span_basis<S: Field>(rows: &[Vec<S>]) -> Matrix<S> {
    rref(rows).0
}

/// Coefficients `x` with `Σ xᵢ basis[i] = v`, if `v` lies in the span.
/// `basis` must be linearly independent.
pub fn solve_combination<S: Field>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    let m = basis.len();
    let n = v.len();
    // columns: basis vectors, last column: v
    let aug: Matrix<S> = (0..n)
        .map(|row| {
            let mut r: Vec<S> = basis.iter().map(|b| b[row].clone()).collect();
            r.push(v[row].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.contains(&m) {
        return None;
    }
    let mut x = vec![S::zero(); m];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = red[row][m].clone();
    }
    Some(x)
}

/// Vectors spanning `{x : M x = 0}`.
pub fn nullspace<S: Field>(m: &[Vec<S>], ncols: usize) -> Matrix<S> {
    let (red, pivots) = if m.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(m)
    };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); ncols];
            x[f] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -red[row][f].clone();
            }
            x
        })
        .collect()
}

pub fn inverse<S: Field>(m: &[Vec<S>]) -> Option<Matrix<S>> {
    let n = m.len();
    let aug: Matrix<S> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<S: Field>(a: &[Vec<S>], b: &[Vec<S>]) -> Matrix<S> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(S::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn identity<S: Field>(n: usize) -> Matrix<S> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn rank_and_duplicate_rows() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn combination_in_span() {
        let basis = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_combination(&basis, &[qi(2), qi(3), qi(5)]).unwrap();
        assert_eq!(x, vec![qi(2), qi(3)]);
        assert!(solve_combination(&basis, &[qi(1), qi(1), qi(0)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        let b = vec![vec![q(1, 2), qi(0)], vec![qi(0), qi(3)]];
        assert_eq!(inverse(&b).unwrap()[0][0], qi(2));
    }

    #[test]
    fn nullspace_dimension() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns, vec![vec![qi(-1), qi(1), qi(0)]]);
        assert_eq!(nullspace::<Rational>(&[], 2).len(), 2);
    }
}
