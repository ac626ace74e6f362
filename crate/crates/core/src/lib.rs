//! Lie symmetry toolkit for the gas dynamics equations with state equation
//! `P = f(ρ) + S`.
//!
//! The crate encodes the 12-dimensional symmetry algebra (the Galilean
//! algebra of the general system plus pressure translation), realizes it by
//! vector fields on `(t, x, y, z, u, v, w, ρ, P)` and in cylindrical,
//! spherical and shifted-velocity charts, and verifies
//!
//! * the commutator table and the automorphism actions,
//! * the catalog of four-dimensional subalgebras with their invariants,
//! * the isomorphism class of every catalog entry,
//! * the rank-1/defect-1 submodel of the last catalog entry and its two exact
//!   solution families, including particle trajectories.
//!
//! Algebraic code is generic over the scalar traits in [`scalar`]; the
//! aliases below fix the common instantiations.

pub mod catalog;
pub mod classify;
pub mod expr;
pub mod fields;
pub mod liealg;
pub mod linalg;
pub mod numerics;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod submodel;

pub use expr::{Expr, Symbol};
pub use scalar::{Field, OrderedField, Scalar};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Structure constants over the rationals.
pub type RationalAlgebra = liealg::LieAlgebra<Rational>;
/// Structure constants over `f64`.
pub type FloatAlgebra = liealg::LieAlgebra<f64>;
/// Structure constants with symbolic (parametric) coefficients.
pub type SymbolicAlgebra = liealg::LieAlgebra<Expr>;

pub type RationalSubalgebra = liealg::Subalgebra<Rational>;
pub type RationalAutomorphism = liealg::Automorphism<Rational>;

pub type Trajectory = numerics::Trajectory<f64>;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
