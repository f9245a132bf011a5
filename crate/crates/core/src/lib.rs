//! Exact finite models of multicosimplicial simplicial sets, their
//! diagonals, Tot, homotopy limits and the associated Reedy machinery.

pub mod delta;
pub mod error;
pub mod diagrams;
pub mod sset;
pub mod cosimplicial;
pub mod kan_tot;
pub mod counterexample;
pub mod corpus;
pub mod serial;
pub mod report;
pub mod suites;
mod unionfind;

pub use delta::{MonotoneMap, MultiMap};
pub use error::{Error, Result};
pub use sset::{SSetMap, TruncSSet};
