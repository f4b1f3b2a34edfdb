//! Exact integration of superforms over weighted polyhedra.

mod fiber;
mod simplex;

pub use fiber::{fiber_integrate, push_cell, PushedPiece};
pub use simplex::{integrate_polytope, integrate_simplex, triangulate, ApexRule};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{normal_vector, Polyhedron, Rat, Vector, Weight};
use crate::superforms::{Side, SuperForm};

/// Value of an integral together with the simplices (ambient coordinates) it was summed over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralResult {
    pub value: Rat,
    pub simplices: Vec<Vec<Vector>>,
}

fn check_bidegree(alpha: &SuperForm, p: usize, q: usize) -> Result<()> {
    match alpha.form().bidegrees().into_iter().find(|&b| b != (p, q)) {
        Some((a, b)) => Err(Error::WrongBidegree(p, q, a, b)),
        None => Ok(()),
    }
}

fn on_cell(alpha: &SuperForm, sigma: &Polyhedron) -> Result<SuperForm> {
    let chart = sigma.chart();
    if alpha.chart() == &chart {
        Ok(alpha.clone())
    } else if alpha.chart().contains_chart(&chart) {
        alpha.restrict(&chart)
    } else {
        Err(Error::CoordinateMismatch)
    }
}

/// `∫_{[σ,μ]} α` for `α` of bidegree `(dim σ, dim σ)` over a bounded `σ`.
pub fn integrate_cell_traced(alpha: &SuperForm, sigma: &Polyhedron, mu: &Weight, rule: ApexRule) -> Result<IntegralResult> {
    if !sigma.is_bounded() {
        return Err(Error::Unbounded);
    }
    let d = sigma.dim();
    let alpha = on_cell(alpha, sigma)?;
    check_bidegree(&alpha, d, d)?;
    let chart = alpha.chart().clone();
    let w = mu.scalar_wrt(chart.basis())?;
    let phi = alpha.form().top_coefficient();
    if d == 0 {
        return Ok(IntegralResult { value: w * phi.constant_term(), simplices: vec![sigma.vertices().to_vec()] });
    }
    let local: Vec<Vector> = sigma.vertices().iter().map(|v| chart.coords(v)).collect::<Result<_>>()?;
    let poly = Polyhedron::polytope(&local)?;
    let (value, simplices) = integrate_polytope(&phi, &poly, rule)?;
    let simplices = simplices.into_iter().map(|s| s.iter().map(|t| chart.point(t)).collect()).collect();
    Ok(IntegralResult { value: value * w, simplices })
}

pub fn integrate_cell(alpha: &SuperForm, sigma: &Polyhedron, mu: &Weight) -> Result<Rat> {
    integrate_cell_traced(alpha, sigma, mu, ApexRule::First).map(|r| r.value)
}

/// `∫_{∂′[σ,μ]} α` (side `Prime`) or `∫_{∂″[σ,μ]} β` (side `DoublePrime`).
///
/// Each facet `τ` contributes `∓∫_{[τ,ν]} ⟨α, n_{σ,τ}⟩|_τ` with the contraction taken in the
/// opposite slot; `ν` is the lattice weight of `τ`.
pub fn boundary_integral(sigma: &Polyhedron, mu: &Weight, alpha: &SuperForm, side: Side) -> Result<Rat> {
    boundary_integral_with(sigma, mu, alpha, side, |tau| Weight::lattice_of(tau))
}

/// As [`boundary_integral`] with caller-chosen facet weights.
pub fn boundary_integral_with(
    sigma: &Polyhedron,
    mu: &Weight,
    alpha: &SuperForm,
    side: Side,
    facet_weight: impl Fn(&Polyhedron) -> Weight,
) -> Result<Rat> {
    let d = sigma.dim();
    let alpha = on_cell(alpha, sigma)?;
    if d == 0 {
        return Ok(Rat::zero());
    }
    let (p, q, slot, sign) = match side {
        Side::Prime => (d - 1, d, Side::DoublePrime, -Rat::from_integer(1.into())),
        Side::DoublePrime => (d, d - 1, Side::Prime, Rat::from_integer(1.into())),
    };
    check_bidegree(&alpha, p, q)?;
    if alpha.is_zero() {
        return Ok(Rat::zero());
    }
    if !sigma.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut total = Rat::zero();
    for tau in sigma.facets() {
        let nu = facet_weight(tau);
        let n = normal_vector(sigma, mu, tau, &nu)?;
        let c = alpha.contract(&n, slot)?.restrict(&tau.chart())?;
        total += integrate_cell(&c, tau, &nu)?;
    }
    Ok(total * sign)
}

/// Both sides of Stokes' theorem for `d′α` and `d″β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesReport {
    pub d_prime_interior: Rat,
    pub d_prime_boundary: Rat,
    pub d_double_prime_interior: Rat,
    pub d_double_prime_boundary: Rat,
}

impl StokesReport {
    pub fn holds(&self) -> bool {
        self.d_prime_interior == self.d_prime_boundary && self.d_double_prime_interior == self.d_double_prime_boundary
    }
}

pub fn stokes_check(sigma: &Polyhedron, mu: &Weight, alpha: &SuperForm, beta: &SuperForm) -> Result<StokesReport> {
    let alpha = on_cell(alpha, sigma)?;
    let beta = on_cell(beta, sigma)?;
    Ok(StokesReport {
        d_prime_interior: integrate_cell(&alpha.differentiate(Side::Prime), sigma, mu)?,
        d_prime_boundary: boundary_integral(sigma, mu, &alpha, Side::Prime)?,
        d_double_prime_interior: integrate_cell(&beta.differentiate(Side::DoublePrime), sigma, mu)?,
        d_double_prime_boundary: boundary_integral(sigma, mu, &beta, Side::DoublePrime)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat, vector};
    use crate::superforms::{Form, Poly};

    fn unit_interval() -> Polyhedron {
        Polyhedron::segment(vector(&[0]), vector(&[1]))
    }

    #[test]
    fn dx_ddx_on_interval() {
        let s = unit_interval();
        let a = SuperForm::on_cell(&s, &Form::top(1, Poly::one(1))).unwrap();
        assert_eq!(integrate_cell(&a, &s, &Weight::standard(1)).unwrap(), int(1));
        let w2 = Weight::standard(1).scaled(&int(2)).unwrap();
        assert_eq!(integrate_cell(&a, &s, &w2).unwrap(), int(2));
    }

    #[test]
    fn square_moment() {
        let s = Polyhedron::cube(2, &int(0), &int(1));
        let f = Form::top(2, &Poly::var(2, 0) * &Poly::var(2, 1));
        let a = SuperForm::on_cell(&s, &f).unwrap();
        assert_eq!(integrate_cell(&a, &s, &Weight::standard(2)).unwrap(), rat(1, 4));
        let wrong = SuperForm::on_cell(&s, &Form::one(2)).unwrap();
        assert!(matches!(integrate_cell(&wrong, &s, &Weight::standard(2)), Err(Error::WrongBidegree(..))));
    }

    #[test]
    fn stokes_witness_on_interval() {
        let s = unit_interval();
        let x = Poly::var(1, 0);
        let alpha = SuperForm::on_cell(&s, &Form::term(1, &[], &[0], x.clone())).unwrap();
        assert_eq!(boundary_integral(&s, &Weight::standard(1), &alpha, Side::Prime).unwrap(), int(1));
        let beta = SuperForm::on_cell(&s, &Form::term(1, &[0], &[], x)).unwrap();
        let r = stokes_check(&s, &Weight::standard(1), &alpha, &beta).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.d_prime_interior, int(1));
        assert_eq!(r.d_double_prime_interior, int(-1));
    }

    #[test]
    fn dirac_mass() {
        let p = Polyhedron::point(vector(&[3, 4]));
        let a = SuperForm::constant(&p.chart(), int(5));
        assert_eq!(integrate_cell(&a, &p, &Weight::unit_point()).unwrap(), int(5));
    }

    #[test]
    fn unbounded_is_error() {
        let r = Polyhedron::cone(vector(&[0]), &[vector(&[1])]).unwrap();
        let a = SuperForm::on_cell(&r, &Form::top(1, Poly::one(1))).unwrap();
        assert_eq!(integrate_cell(&a, &r, &Weight::standard(1)), Err(Error::Unbounded));
    }
}
