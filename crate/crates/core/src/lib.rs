//! Finite simplicial sets, finite simplicial categories and the
//! Dwyer–Kan model structure, computed on bounded data.

pub mod budget;
pub mod cat;
pub mod constructions;
pub mod corpus;
pub mod algebra;
pub mod error;
pub mod io;
pub mod model;
pub mod scat;
pub mod sset;
pub mod verdict;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use verdict::{Evidence, UnknownReason, Verdict};
