use crate::complexes::{subdivide_subordinate, LinearStructure, PwlFunction, TropKind, TropicalExpr, WeightedComplex};
use crate::currents::{corner_locus, PolyhedralCurrent, Summand, TropicalCycle};
use crate::error::{Error, Result};
use crate::exactlin::rat::unit;
use crate::exactlin::{AffineFunctional, Polyhedron, Rat, Weight};
use crate::superforms::{Form, Poly};

/// `(d′d″φ)^k` for `φ = min{x_1, …, x_r}` and the resulting Green current.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenMin {
    pub r: usize,
    /// `(d′d″φ)^k ∧ [ℝ^r]` for `k = 0, …, r−1`.
    pub powers: Vec<TropicalCycle>,
    /// `(−1)^{r−1} φ (d′d″φ)^{r−1}`.
    pub current: PolyhedralCurrent,
    /// `x · Δ` with `Δ` the diagonal of weight `(1, …, 1)`.
    pub expected: PolyhedralCurrent,
    pub holds: bool,
}

/// `min{x_1, …, x_r}` on the complex of cones `σ_i = {φ = x_i}`.
pub fn min_function(r: usize) -> Result<PwlFunction> {
    let terms = (0..r).map(|i| AffineFunctional::new(unit(r, i), Rat::from_integer(0.into()))).collect();
    let c = WeightedComplex::unweighted(r, vec![Polyhedron::whole_space(r)])?;
    Ok(subdivide_subordinate(&c, &TropicalExpr::new(TropKind::Min, terms)?)?.1)
}

/// `x · Δ`: the diagonal with generator `(1, …, 1)` and coefficient the common coordinate.
pub fn diagonal_current(r: usize) -> Result<PolyhedralCurrent> {
    let one = vec![Rat::from_integer(1.into()); r];
    let diag = Polyhedron::from_generators(r, &[vec![Rat::from_integer(0.into()); r]], &[], &[one.clone()])?;
    let s = Summand::from_ambient(diag, Weight::new(vec![one], Rat::from_integer(1.into()))?, &Form::scalar(Poly::var(r, 0)))?;
    PolyhedralCurrent::new(r, vec![s])
}

pub fn green_min(r: usize) -> Result<GreenMin> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    let phi = min_function(r)?;
    let l = LinearStructure::affine(r);
    let mut powers = vec![TropicalCycle::new(r, vec![(Polyhedron::whole_space(r), Weight::standard(r))])?];
    for _ in 1..r {
        let next = corner_locus(&phi, powers.last().expect("nonempty"), &l)?;
        powers.push(next);
    }
    let sign = if r % 2 == 1 { 1 } else { -1 };
    let current = powers.last().expect("nonempty").current().mul_pwl(&phi)?.scale(&Rat::from_integer(sign.into())).normalize()?;
    let expected = diagonal_current(r)?.normalize()?;
    let holds = current.equals(&expected)?;
    Ok(GreenMin { r, powers, current, expected, holds })
}
