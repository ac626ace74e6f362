//! Scalar traits shared by the algebraic code.
//!
//! [`Scalar`] is a commutative ring (enough for brackets and automorphism
//! actions, and implemented by [`Expr`] for parametric work). [`Field`] adds
//! division and a zero test for elimination; [`OrderedField`] adds the sign
//! needed for Killing-form signatures.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::expr::Expr;
use crate::Rational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: &Rational) -> Self;
}

pub trait Field: Scalar + Div<Output = Self> {
    /// Exact zero for rationals; within a small absolute tolerance for floats.
    fn is_negligible(&self) -> bool;
}

pub trait OrderedField: Field + PartialOrd {}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl OrderedField for Rational {}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-10
    }
}

impl OrderedField for f64 {}

impl Scalar for Expr {
    fn from_rational(q: &Rational) -> Self {
        Expr::constant(q.clone())
    }
}

/// Sign of an ordered-field element, treating negligible values as zero.
pub fn sign_of<S: OrderedField>(x: &S) -> i32 {
    if x.is_negligible() {
        0
    } else if *x > S::zero() {
        1
    } else {
        -1
    }
}
