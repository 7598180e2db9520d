//! Terms, equations and systems of the constant-enriched Boolean language.

mod ast;
mod eval;
mod parser;

pub use ast::{sort_vars, Equation, Point, Position, QuasiIdentity, Relation, System, Term};
pub use eval::{eval_term, eval_with, satisfies, satisfies_all};
pub use parser::{
    check_constants, parse_equation, parse_equation_in, parse_quasi_identity, parse_system,
    parse_term,
};
