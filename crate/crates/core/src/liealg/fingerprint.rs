use serde::Serialize;

use super::LieAlgebra;
use crate::linalg::{self, Matrix};
use crate::scalar::{sign_of, OrderedField};

/// Basis-independent invariants used to tell algebras apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    /// Dimensions `g, [g,g], [[g,g],[g,g]], …` until they stabilize.
    pub derived_series: Vec<usize>,
    /// Dimensions `g, [g,g], [g,[g,g]], …` until they stabilize.
    pub lower_central_series: Vec<usize>,
    pub center_dim: usize,
    pub killing_rank: usize,
    /// `(n₊, n₋, n₀)`.
    pub killing_signature: (usize, usize, usize),
}

fn bracket_span<S: OrderedField>(alg: &LieAlgebra<S>, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(alg.bracket(x, y).expect("dimension"));
        }
    }
    if out.is_empty() {
        return out;
    }
    linalg::span_basis(&out)
}

fn series<S: OrderedField>(alg: &LieAlgebra<S>, lower_central: bool) -> Vec<usize> {
    let n = alg.dim();
    let full: Matrix<S> = (0..n).map(|i| alg.unit(i)).collect();
    let mut cur = full.clone();
    let mut dims = vec![n];
    loop {
        let next = if lower_central {
            bracket_span(alg, &full, &cur)
        } else {
            bracket_span(alg, &cur, &cur)
        };
        let d = next.len();
        if d == *dims.last().unwrap() {
            break;
        }
        dims.push(d);
        if d == 0 {
            break;
        }
        cur = next;
    }
    dims
}

/// `K(i,j) = tr(ad eᵢ ∘ ad eⱼ)`.
pub fn killing_form<S: OrderedField>(alg: &LieAlgebra<S>) -> Matrix<S> {
    let n = alg.dim();
    let ads: Vec<Matrix<S>> = (0..n).map(|i| alg.ad(&alg.unit(i)).expect("dimension")).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = S::zero();
                    for k in 0..n {
                        for l in 0..n {
                            let (a, b) = (&ads[i][k][l], &ads[j][l][k]);
                            if !a.is_negligible() && !b.is_negligible() {
                                acc = acc + a.clone() * b.clone();
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Signature of a symmetric matrix by congruence diagonalization.
fn signature<S: OrderedField>(mut m: Matrix<S>) -> (usize, usize, usize) {
    let n = m.len();
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if m[k][k].is_negligible() {
            // bring a nonzero diagonal entry to k, or create one from an
            // off-diagonal pair via e_k ← e_k + e_j
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_negligible()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_negligible()) {
                for c in 0..n {
                    let v = m[k][c].clone() + m[j][c].clone();
                    m[k][c] = v;
                }
                for r in 0..n {
                    let v = m[r][k].clone() + m[r][j].clone();
                    m[r][k] = v;
                }
            } else {
                diag.push(0);
                k += 1;
                continue;
            }
        }
        let p = m[k][k].clone();
        diag.push(sign_of(&p));
        for i in k + 1..n {
            if m[i][k].is_negligible() {
                continue;
            }
            let f = m[i][k].clone() / p.clone();
            for c in 0..n {
                let v = m[i][c].clone() - f.clone() * m[k][c].clone();
                m[i][c] = v;
            }
            for r in 0..n {
                let v = m[r][i].clone() - f.clone() * m[r][k].clone();
                m[r][i] = v;
            }
        }
        k += 1;
    }
    let pos = diag.iter().filter(|&&s| s > 0).count();
    let neg = diag.iter().filter(|&&s| s < 0).count();
    (pos, neg, n - pos - neg)
}

pub fn fingerprint<S: OrderedField>(alg: &LieAlgebra<S>) -> Fingerprint {
    let n = alg.dim();
    // center: v with Σᵢ vᵢ C[i][j][k] = 0 for all j, k
    let rows: Matrix<S> = (0..n)
        .flat_map(|j| {
            (0..n).map(move |k| (0..n).map(|i| alg.constant(i, j, k).clone()).collect())
        })
        .collect();
    let center_dim = n - linalg::rank(&rows);
    let k = killing_form(alg);
    let killing_rank = if n == 0 { 0 } else { linalg::rank(&k) };
    Fingerprint {
        derived_series: series(alg, false),
        lower_central_series: series(alg, true),
        center_dim,
        killing_rank,
        killing_signature: signature(k),
    }
}
