//! First-order affine equations `ρ(y) = a·y + b`: the rational telescoper and
//! the decision pipeline built on coboundary certification.

mod order1;
mod telescope;

pub(crate) use order1::equation_defect;
pub use order1::{solve_order1, Obstruction, Verdict};
pub use telescope::{rational_telescope, telescope_component, FailureReason, TelescopeFailure};
