//! Prime-field polynomials and extension-field arithmetic.

mod field;
mod poly;

pub use field::{is_irreducible, smallest_irreducible, FieldElement, FieldSpec};
pub use poly::Poly;
