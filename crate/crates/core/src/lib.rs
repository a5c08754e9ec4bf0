//! Exact construction, classification and falsification of root lattices
//! realized inside number fields under the trace form.
//!
//! All arithmetic is exact: rationals are arbitrary precision and no
//! floating point enters any certificate.

pub mod a3;
pub mod ambient;
pub mod cli;
pub mod conic;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod orders;
pub mod poly;
pub mod quadratic;
pub mod shanks;

pub use error::{Error, Result};
