//! Singular values by one-sided Jacobi rotations.

use num_traits::Float;

/// Singular values of a dense matrix given by rows, in decreasing order.
pub fn singular_values<F: Float>(m: &[Vec<F>]) -> Vec<F> {
    // Orthogonalize the rows; their norms are the singular values.
    let mut rows: Vec<Vec<F>> = m.to_vec();
    let n = rows.len();
    let eps = F::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let dot = |a: &[F], b: &[F]| a.iter().zip(b).fold(F::zero(), |s, (x, y)| s + *x * *y);
                let alpha = dot(&rows[p], &rows[p]);
                let beta = dot(&rows[q], &rows[q]);
                let gamma = dot(&rows[p], &rows[q]);
                if gamma == F::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let two = F::one() + F::one();
                let zeta = (beta - alpha) / (two * gamma);
                let t = zeta.signum() / (zeta.abs() + (F::one() + zeta * zeta).sqrt());
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = c * t;
                let (rp, rq) = (rows[p].clone(), rows[q].clone());
                for k in 0..rp.len() {
                    rows[p][k] = c * rp[k] - s * rq[k];
                    rows[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<F> = rows
        .iter()
        .map(|r| r.iter().fold(F::zero(), |s, x| s + *x * *x).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numeric_rank<F: Float>(m: &[Vec<F>], rel_tol: F) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&max) if max > F::zero() => sv.iter().filter(|&&s| s > rel_tol * max).count(),
        _ => 0,
    }
}
