//! Exact rational linear algebra and polyhedral geometry.

mod chart;
mod cone;
mod hull;
mod map;
pub mod matrix;
mod polyhedron;
pub mod random;
pub mod rat;
mod snf;
mod weight;

pub use chart::AffineChart;
pub use hull::{lower_hull, HullSegment};
pub use map::AffineMap;
pub use matrix::{rank_kernel_det, RankKernelDet};
pub use polyhedron::{AffineFunctional, Polyhedron};
pub use rat::{format_rat, int, parse_rat, rat, vector, ParseRatError, Rat, Vector};
pub use snf::{elementary_valuations, snf_valuations};
pub use weight::{lattice_index, normal_vector, plucker, Weight};
