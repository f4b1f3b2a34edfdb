//! Exact tropical intersection calculus on rational polyhedral complexes.

pub mod complexes;
pub mod currents;
pub mod error;
pub mod exactlin;
pub mod integrate;
pub mod intersection;
pub mod metgraph;
pub mod newton;
pub mod superforms;

pub use error::{Error, Result};
