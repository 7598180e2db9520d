//! Concrete Boolean algebras, the order they induce, and the subalgebra generated
//! by distinguished constants.

mod calgebra;
mod element;
mod family;
mod text;

pub use calgebra::{
    constant_cells, generate_subalgebra, verify_no_supremum, CAlgebra, Cell, Completeness,
    ConstFamily, DescentCertificate, DEFAULT_SEARCH_BOUND, SUBALGEBRA_LIMIT,
};
pub use element::{infimum_finite, supremum_finite, Algebra, Element, NatSet, MAX_ATOMS};
pub use family::{Family, FamilyKind};
pub(crate) use text::strip_comment;
pub use text::{is_algebra_directive, parse_algebra, parse_algebra_lines, render_algebra};
