//! Exact Fourier analysis on finite group actions and the support/dimension
//! uncertainty bounds that go with it.
//!
//! Everything is exact: fields are ℚ, GF(p), GF(p^k) and ℚ(ζ_n), groups are
//! small Cayley tables, and every bound is checked as an integer identity.

pub mod arith;
pub mod character;
pub mod error;
pub mod field;
pub mod fourier;
pub mod function;
pub mod group;
pub mod gset;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod uncertainty;

pub use error::{Error, ErrorClass, Result};
pub use field::{field_from_spec, Field, FieldKind, FieldValue};
pub use group::{Group, GroupSpec, Subgroup};
pub use function::FunctionOnX;
pub use gset::{ActionSpec, GSet};
