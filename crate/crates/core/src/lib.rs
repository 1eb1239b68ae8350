//! Cayley–Dickson algebras, coordinate models of spheres and joins, and an
//! executable version of the join construction of H-space structures on
//! spheres, ending in the complex and quaternionic Hopf fibrations.
//!
//! Every algebraic identity is checked either exactly, over arbitrary
//! precision rationals, or by seeded float sampling; see [`report`] for the
//! shape of the results.

pub mod cdalg;
pub mod hopf;
pub mod joinmul;
pub mod laws;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod spheremodel;

pub use cdalg::{CdElement, CdError, CdLaw};
pub use report::{CheckConfig, LawReport, Status, Witness};
pub use scalar::{Mode, Rational, Scalar};
