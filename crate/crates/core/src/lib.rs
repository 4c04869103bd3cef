//! Graded commutative algebra over prime fields: Gröbner bases, resolutions,
//! Betti and Bass numbers, Ext/Tor, and a table-driven theorem checker.

pub mod algebra;
pub mod artinian;
pub mod error;
pub mod graded;
pub mod invariants;
pub mod lab;

pub use error::{Error, Result};
