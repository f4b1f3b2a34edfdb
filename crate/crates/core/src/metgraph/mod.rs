mod graph;
mod harmonic;
mod potential;
pub mod random;

pub use graph::{Edge, GraphDivisor, GraphPoint, GraphPwl, MetGraph};
pub use harmonic::{harmonic_morphism_check, HarmonicReport};
pub use potential::{green_solve, laplacian, pairing, GraphPairing};
