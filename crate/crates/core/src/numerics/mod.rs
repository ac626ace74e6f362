//! Floating-point support: trajectory integration, closed-form comparison,
//! numeric rank and the transported-sphere checks.

mod ode;
mod sphere;
mod svd;
mod trace;

pub use ode::{
    compare_to_closed_form, integrate, observed_order, rk4_step, ClosedFormError, NumericsError, Trajectory,
};
pub use sphere::{sphere_transport, SphereReport};
pub use svd::{numeric_rank, singular_values};
pub use trace::{trace, TraceResult, TraceSpec};
