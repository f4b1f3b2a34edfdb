use std::collections::BTreeMap;

use crate::complexes::WeightedComplex;
use crate::currents::{push_forward, PolyhedralCurrent, PwlMap};
use crate::error::{Error, Result};
use crate::exactlin::{Polyhedron, Rat};

/// `λ` with `f_*[X, μ] = λ[Y, ν]`, or a cell where the ratio changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleDegree {
    Constant(Rat),
    NotConstant { first: (Polyhedron, Rat), second: (Polyhedron, Rat) },
}

fn constants(t: &PolyhedralCurrent, extra: &[Polyhedron]) -> Result<BTreeMap<Polyhedron, Rat>> {
    t.normalize_with(extra)?
        .summands()
        .iter()
        .map(|s| {
            let m = s.multiplicity().ok_or_else(|| Error::UnsupportedCoefficientShape("pushed coefficient is not constant".into()))?;
            Ok((s.cell.clone(), m))
        })
        .collect()
}

/// Generic degree of `f : (X, μ) → (Y, ν)` between complexes of the same pure dimension.
///
/// Maps with positive-dimensional fibers push forward to zero and have degree 0.
pub fn cycle_degree(x: &WeightedComplex, y: &WeightedComplex, f: &PwlMap) -> Result<CycleDegree> {
    let pushed = push_forward(&PolyhedralCurrent::of_complex(x)?, f)?;
    let target = PolyhedralCurrent::of_complex(y)?;
    let tp = constants(&target, &pushed.cells())?;
    let pp = constants(&pushed, &target.cells())?;
    let mut ratio: Option<(Polyhedron, Rat)> = None;
    let zero = Rat::from_integer(0.into());
    for (cell, m) in &pp {
        if !tp.contains_key(cell) {
            return Ok(CycleDegree::NotConstant { first: (cell.clone(), m.clone()), second: (cell.clone(), zero) });
        }
    }
    for (cell, nu) in &tp {
        let r = pp.get(cell).cloned().unwrap_or_else(|| zero.clone()) / nu;
        match &ratio {
            None => ratio = Some((cell.clone(), r)),
            Some((c0, r0)) if *r0 != r => {
                return Ok(CycleDegree::NotConstant { first: (c0.clone(), r0.clone()), second: (cell.clone(), r) });
            }
            _ => {}
        }
    }
    Ok(CycleDegree::Constant(ratio.map(|(_, r)| r).unwrap_or(zero)))
}
