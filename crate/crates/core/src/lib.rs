//! Quotient maps for finite subgroups of `PGL2(F_q)` and the Frobenius
//! (Artin) invariants of their values.

pub mod addpoly;
pub mod artin;
pub mod checks;
pub mod encoding;
pub mod error;
pub mod ff;
pub mod frobeq;
pub mod pgl2;
pub mod poly;
pub mod quotient;
pub mod subgroup;

pub use error::{Error, Result};
