//! The twelve-dimensional algebra `L12 = L11 ⊕ {Y}`.
//!
//! Basis order: index 0 is `Y`, index `i` is `Xᵢ` for `i = 1..=11`.

use super::LieAlgebra;
use crate::scalar::Scalar;
use crate::qi;

/// Index of the pressure translation `Y`.
pub const Y: usize = 0;

pub fn l12_labels() -> Vec<String> {
    std::iter::once("Y".to_string())
        .chain((1..=11).map(|i| format!("X{i}")))
        .collect()
}

/// The commutator table keyed by hand, row by row: `(i, j, s)` means
/// `[Xᵢ, Xⱼ] = sign(s)·X_|s|`. Both triangles are listed; the constructor
/// rejects any pair that is not antisymmetric.
pub fn table3_entries() -> &'static [(usize, usize, i64)] {
    &[
        (1, 8, -3), (1, 9, 2), (1, 11, 1),
        (2, 7, 3), (2, 9, -1), (2, 11, 2),
        (3, 7, -2), (3, 8, 1), (3, 11, 3),
        (4, 8, -6), (4, 9, 5), (4, 10, -1),
        (5, 7, 6), (5, 9, -4), (5, 10, -2),
        (6, 7, -5), (6, 8, 4), (6, 10, -3),
        (7, 2, -3), (7, 3, 2), (7, 5, -6), (7, 6, 5), (7, 8, -9), (7, 9, 8),
        (8, 1, 3), (8, 3, -1), (8, 4, 6), (8, 6, -4), (8, 7, 9), (8, 9, -7),
        (9, 1, -2), (9, 2, 1), (9, 4, -5), (9, 5, 4), (9, 7, -8), (9, 8, 7),
        (10, 4, 1), (10, 5, 2), (10, 6, 3), (10, 11, 10),
        (11, 1, -1), (11, 2, -2), (11, 3, -3), (11, 10, -10),
    ]
}

/// `L12` over any scalar type, from the hand-keyed table.
pub fn l12<S: Scalar>() -> LieAlgebra<S> {
    let brackets: Vec<(usize, usize, Vec<S>)> = table3_entries()
        .iter()
        .map(|&(i, j, s)| {
            let mut v = vec![S::zero(); 12];
            v[s.unsigned_abs() as usize] = S::from_rational(&qi(s.signum()));
            (i, j, v)
        })
        .collect();
    LieAlgebra::from_brackets(l12_labels(), &brackets).expect("table is antisymmetric")
}
