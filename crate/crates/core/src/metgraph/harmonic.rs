use num_traits::Zero;

use crate::complexes::WeightedComplex;
use crate::currents::{check_flat, FlatReport, PwlMap};
use crate::error::{Error, Result};
use crate::exactlin::{Polyhedron, Rat};
use crate::intersection::{cycle_degree, CycleDegree};

/// Harmonicity of a map of one-dimensional weighted complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicReport {
    pub flat: bool,
    /// Local degree at each vertex of the source with a well-defined fiber weight.
    pub local_degrees: Vec<(Polyhedron, Rat)>,
    /// Generic number of preimages counted with local degree.
    pub degree: Option<Rat>,
    pub report: FlatReport,
}

/// Checks that `f : (X, μ) → (Y, ν)` between one-dimensional complexes is harmonic (flat).
pub fn harmonic_morphism_check(x: &WeightedComplex, y: &WeightedComplex, f: &PwlMap) -> Result<HarmonicReport> {
    for c in [x, y] {
        if c.weights().values().any(|w| w.dim() != 1) {
            return Err(Error::Invalid("harmonic morphisms need one-dimensional complexes".into()));
        }
    }
    let report = check_flat(x, y, f)?;
    let local_degrees = report
        .fiber_weights
        .iter()
        .filter(|w| w.face.dim() == 0)
        .map(|w| (w.face.clone(), w.weight.scale().clone()))
        .collect();
    let degree = if report.flat {
        match cycle_degree(x, y, f)? {
            CycleDegree::Constant(d) if !d.is_zero() => Some(d),
            _ => None,
        }
    } else {
        None
    };
    Ok(HarmonicReport { flat: report.flat, local_degrees, degree, report })
}
