//! Exact desk-scale computations around graphs, finite permutation groups
//! and radical towers of rational function fields.

pub mod autfield;
pub mod error;
pub mod fieldtower;
pub mod graphs;
pub mod groups;
pub mod par;
pub mod roots;
pub mod suite;

pub use error::{Error, Result};
