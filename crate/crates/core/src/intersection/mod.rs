mod degree;
mod green;
mod pairing;
pub mod random;
mod stable;

pub use degree::{cycle_degree, CycleDegree};
pub use green::{diagonal_current, green_min, min_function, GreenMin};
pub use pairing::{diagonal_vertical_pairing, line_cycle, primitive_rhs, triangle_identity, PairingReport, TriangleReport};
pub use stable::{
    displacement_vector, intersect_displaced, intersect_once, stable_intersect, Displaced, Displacement, PairCertificate, StableIntersection,
    MAX_DISPLACEMENTS,
};
