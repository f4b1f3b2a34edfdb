//! Weighted polyhedral complexes, piecewise linear functions and refinement.

mod complex;
mod pwl;
mod refine;

pub use complex::{CellId, ValidationReport, Violation, WeightedComplex};
pub use pwl::{subdivide_subordinate, Discontinuity, LinearStructure, PwlFunction, TropKind, TropicalExpr};
pub use refine::{face_closure, refine_cells};
