//! Lie algebras given by structure constants.
//!
//! `C[i][j]` is the coefficient vector of `[eᵢ, eⱼ]`. The scalar type only
//! needs ring operations for brackets; elimination-based operations
//! (closure, change of basis, fingerprints) need a [`Field`].

mod auto;
mod fingerprint;
mod subalgebra;
mod table;

use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::scalar::{Field, Scalar};

pub use auto::{check_automorphisms, random_automorphisms, rational_rotation, Automorphism, AutomorphismCheck};
pub use fingerprint::{fingerprint, killing_form, Fingerprint};
pub use subalgebra::Subalgebra;
pub use table::{l12, l12_labels, table3_entries, Y};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("structure constants not antisymmetric at ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("basis rows are linearly dependent")]
    Dependent,
    #[error("bracket of rows {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    labels: Vec<String>,
    c: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Checks antisymmetry (including `[eᵢ,eᵢ] = 0`). Jacobi is not enforced
    /// here; see [`LieAlgebra::jacobi_report`].
    pub fn new(labels: Vec<String>, c: Vec<Vec<Vec<S>>>) -> Result<Self, LieError> {
        let n = labels.len();
        if c.len() != n {
            return Err(LieError::Dimension {
                expected: n,
                got: c.len(),
            });
        }
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return Err(LieError::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(LieError::Dimension {
                        expected: n,
                        got: v.len(),
                    });
                }
                let ok = v
                    .iter()
                    .zip(&c[j][i])
                    .all(|(a, b)| (a.clone() + b.clone()).is_zero());
                if !ok {
                    return Err(LieError::Antisymmetry(i, j));
                }
            }
        }
        Ok(LieAlgebra { labels, c })
    }

    /// Builds the tensor from the brackets `[eᵢ,eⱼ]` for `i < j` (or any
    /// order; the transposed entry is filled in). Conflicting entries are an
    /// antisymmetry error.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<S>)],
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let mut c = vec![vec![vec![S::zero(); n]; n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(LieError::Dimension {
                    expected: n,
                    got: v.len().max(i.max(j) + 1),
                });
            }
            let neg: Vec<S> = v.iter().map(|x| -x.clone()).collect();
            if set[i][j] && c[i][j] != *v {
                return Err(LieError::Antisymmetry(i, j));
            }
            if set[j][i] && c[j][i] != neg {
                return Err(LieError::Antisymmetry(i, j));
            }
            c[i][j] = v.clone();
            c[j][i] = neg;
            set[i][j] = true;
            set[j][i] = true;
        }
        Self::new(labels, c)
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("E{i}")).collect();
        LieAlgebra {
            labels,
            c: vec![vec![vec![S::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.c[i][j][k]
    }

    /// `[eᵢ, eⱼ]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[S] {
        &self.c[i][j]
    }

    /// Sets `C[i][j][k] = value` and `C[j][i][k] = −value`.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: S) {
        self.c[j][i][k] = -value.clone();
        self.c[i][j][k] = value;
    }

    pub fn unit(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    fn check_len(&self, v: &[S]) -> Result<(), LieError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(LieError::Dimension {
                expected: self.dim(),
                got: v.len(),
            })
        }
    }

    pub fn bracket(&self, v: &[S], w: &[S]) -> Result<Vec<S>, LieError> {
        self.check_len(v)?;
        self.check_len(w)?;
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let f = vi.clone() * wj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = &self.c[i][j][k];
                    if !ck.is_zero() {
                        *o = o.clone() + f.clone() * ck.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Basis triples `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_report(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let jac = |a: &[S], b: &[S], c: &[S]| {
                        let inner = self.bracket(b, c).expect("dimension");
                        self.bracket(a, &inner).expect("dimension")
                    };
                    let s1 = jac(&ei, &ej, &ek);
                    let s2 = jac(&ej, &ek, &ei);
                    let s3 = jac(&ek, &ei, &ej);
                    let zero = (0..n).all(|m| {
                        (s1[m].clone() + s2[m].clone() + s3[m].clone()).is_zero()
                    });
                    if !zero {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra {
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(&f).collect()).collect())
                .collect(),
        }
    }

    /// Matrix of `ad v` acting on coordinate columns: `(ad v)[k][j]` is the
    /// `k`-th coordinate of `[v, eⱼ]`.
    pub fn ad(&self, v: &[S]) -> Result<Matrix<S>, LieError> {
        self.check_len(v)?;
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n)
            .map(|j| self.bracket(v, &self.unit(j)))
            .collect::<Result<_, _>>()?;
        Ok((0..n)
            .map(|k| (0..n).map(|j| cols[j][k].clone()).collect())
            .collect())
    }
}

impl<S: Field> LieAlgebra<S> {
    /// Structure constants in a new basis given by the rows of `m`
    /// (coordinates in the current basis).
    pub fn change_basis(&self, m: &[Vec<S>]) -> Result<LieAlgebra<S>, LieError> {
        if m.len() != self.dim() {
            return Err(LieError::Dimension {
                expected: self.dim(),
                got: m.len(),
            });
        }
        let mut alg = Subalgebra::new(self, m.to_vec())?.induced(self)?;
        alg.labels = self.labels.iter().map(|l| format!("{l}'")).collect();
        Ok(alg)
    }

    /// Dimension of the span of the given vectors.
    pub fn span_dim(vectors: &[Vec<S>]) -> usize {
        if vectors.is_empty() {
            0
        } else {
            linalg::rank(vectors)
        }
    }
}

#[cfg(test)]
mod tests;
