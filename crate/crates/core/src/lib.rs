//! Cyclic codes over GF(p) of length n1 * n2 defined by the two-prime Whiteman
//! generalized cyclotomic sequence of order 6.

pub mod caps;
pub mod codegen;
pub mod cyclotomy;
pub mod distance;
pub mod error;
pub mod gfpoly;
pub mod numtheory;
pub mod rng;
pub mod sequence;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gfpoly::{FieldElement, FieldSpec, Poly};
pub use numtheory::TwoPrimeParams;
