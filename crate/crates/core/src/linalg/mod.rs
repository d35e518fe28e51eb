//! Exact integer and rational linear algebra. No floating point anywhere.

mod feasible;
mod matrix;
mod normal_form;

pub use feasible::{cone_feasible, rational_feasible};
pub use matrix::{IntMatrix, RatVector};
pub use normal_form::{hnf, integer_kernel, snf, HermiteForm, SmithForm};
