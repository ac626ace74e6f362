use super::{LieAlgebra, LieError};
use crate::linalg::{self, Matrix};
use crate::scalar::Field;

/// A subspace given by independent rows of ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Subalgebra<S> {
    basis: Matrix<S>,
}

impl<S: Field> Subalgebra<S> {
    pub fn new(ambient: &LieAlgebra<S>, basis: Matrix<S>) -> Result<Self, LieError> {
        for row in &basis {
            if row.len() != ambient.dim() {
                return Err(LieError::Dimension {
                    expected: ambient.dim(),
                    got: row.len(),
                });
            }
        }
        if linalg::rank(&basis) != basis.len() {
            return Err(LieError::Dependent);
        }
        Ok(Subalgebra { basis })
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Structure constants in the row basis, or the first pair whose bracket
    /// leaves the span.
    pub fn induced(&self, ambient: &LieAlgebra<S>) -> Result<LieAlgebra<S>, LieError> {
        let m = self.dim();
        let mut c = vec![vec![vec![S::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let b = ambient.bracket(&self.basis[i], &self.basis[j])?;
                let x = linalg::solve_combination(&self.basis, &b)
                    .ok_or(LieError::NotClosed(i, j))?;
                c[j][i] = x.iter().map(|v| -v.clone()).collect();
                c[i][j] = x;
            }
        }
        let labels = (1..=m).map(|i| format!("E{i}")).collect();
        LieAlgebra::new(labels, c)
    }

    pub fn is_closed(&self, ambient: &LieAlgebra<S>) -> bool {
        self.induced(ambient).is_ok()
    }
}
