//! Verification and construction toolkit for lattice ideals given by integer lattices.
//!
//! Binomials `x^{u+} - ρ(u)·x^{u-}` are represented by their exponent vectors
//! `u ∈ L`; every criterion implemented here depends on the vectors and
//! lattices only, never on the coefficient `ρ(u)`.
//!
//! Module map:
//! - [`linalg`]: Hermite/Smith forms, integer kernels, exact cone feasibility.
//! - [`lattice`]: sublattices of `Z^m`, saturation, restriction to coordinate sets.
//! - [`configuration`]: the vector configuration `A` of a positive lattice.
//! - [`cone`]: face supports of `pos(A)`, closures, rays, simplex/full tests.
//! - [`radical`]: cover checking and the radical-generation criterion.
//! - [`ci`]: mixed dominating matrices and complete-intersection search.
//! - [`constructor`]: explicit radical generators for full configurations.
//! - [`instances`] and [`io`]: built-in examples, random generators, JSON formats.

pub mod ci;
pub mod cone;
pub mod configuration;
pub mod constructor;
mod error;
pub mod instances;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod radical;
mod support;

pub use error::{Error, Result};
pub use support::Support;
