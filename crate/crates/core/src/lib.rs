//! Natural densities of rational subsets of free groups, computed exactly
//! through finite automata over the involutive alphabet.

pub mod automata;
pub mod benois;
pub mod density;
pub mod error;
pub mod orbits;
pub mod rational_expr;
pub mod report;
pub mod sft;
pub mod stallings;
pub mod words;

pub use error::{Error, Result};
