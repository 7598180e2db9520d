//! Equations over Boolean algebras with distinguished constants.
//!
//! Systems are reduced to a canonical form over `2ⁿ` disjoint-cover variables with
//! bounds in the subalgebra generated by the constants. From that form follow the
//! solution count, a consistency test, radical membership with witnesses, and
//! Noetherian-class verdicts; every rule is cross-checked against exhaustive
//! enumeration over small finite algebras.

pub mod algebra;
pub mod classifier;
mod error;
pub mod exec;
pub mod normalizer;
pub mod sample;
pub mod solver;
pub mod source;
pub mod splitting;
pub mod syntax;

pub use algebra::{Algebra, CAlgebra, Element};
pub use error::{Error, Result};
pub use exec::Execution;
pub use normalizer::{canonicalize_system, CanonicalSystem, NormalizerConfig, ZPoint};
pub use solver::SolverConfig;
pub use syntax::{Equation, Point, System, Term};
