use super::current::{PolyhedralCurrent, Summand};
use super::star::{facet_stars, orthogonal_normal};
use crate::error::Result;
use crate::exactlin::{Rat, Weight};
use crate::superforms::{Side, SuperForm};

fn boundary(t: &PolyhedralCurrent, slot: Side, sign: Rat) -> Result<PolyhedralCurrent> {
    let t = t.normalize()?;
    let mut out = Vec::new();
    for d in 1..=t.ambient_dim() {
        let layer: Vec<Summand> = t.summands().iter().filter(|s| s.cell.dim() == d).cloned().collect();
        for (tau, star) in facet_stars(&layer) {
            let nu = Weight::lattice_of(&tau);
            let chart = tau.chart();
            let mut acc = SuperForm::zero(&chart);
            for i in star {
                let s = &layer[i];
                let n = orthogonal_normal(&s.cell, &s.weight, &tau, &nu)?;
                acc = acc.add(&s.form.contract(&n, slot)?.restrict(&chart)?)?;
            }
            if !acc.is_zero() {
                out.push(Summand::new(tau, nu, acc.scale(&sign))?);
            }
        }
    }
    PolyhedralCurrent::new(t.ambient_dim(), out)?.normalize()
}

/// `∂′T = −Σ_τ Σ_{σ ⊃ τ} ⟨ω_σ, n″_{σ,τ}⟩|_τ ∧ [τ]`.
pub fn boundary_dprime(t: &PolyhedralCurrent) -> Result<PolyhedralCurrent> {
    boundary(t, Side::DoublePrime, -Rat::from_integer(1.into()))
}

/// `∂″T = Σ_τ Σ_{σ ⊃ τ} ⟨ω_σ, n′_{σ,τ}⟩|_τ ∧ [τ]`.
pub fn boundary_ddoubleprime(t: &PolyhedralCurrent) -> Result<PolyhedralCurrent> {
    boundary(t, Side::Prime, Rat::from_integer(1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, vector};
    use crate::exactlin::Polyhedron;
    use crate::superforms::{Form, Poly};

    fn current(cells: Vec<Polyhedron>, form: &Form) -> PolyhedralCurrent {
        let s = cells.into_iter().map(|c| Summand::from_ambient(c, Weight::standard(1), form).unwrap()).collect();
        PolyhedralCurrent::new(1, s).unwrap()
    }

    fn dpp() -> Form {
        Form::basis_one_form(1, 0, Side::DoublePrime)
    }

    #[test]
    fn heaviside_boundary_is_dirac() {
        let half = Polyhedron::cone(vector(&[0]), &[vector(&[1])]).unwrap();
        let b = boundary_dprime(&current(vec![half], &dpp())).unwrap();
        assert!(b.neg().equals(&PolyhedralCurrent::dirac(vector(&[0]), int(1))).unwrap());
    }

    #[test]
    fn segment_boundary() {
        let b = boundary_dprime(&current(vec![Polyhedron::segment(vector(&[0]), vector(&[1]))], &dpp())).unwrap();
        let expected = PolyhedralCurrent::dirac(vector(&[0]), int(1)).sub(&PolyhedralCurrent::dirac(vector(&[1]), int(1))).unwrap();
        assert!(b.neg().equals(&expected).unwrap());
        let dp = Form::basis_one_form(1, 0, Side::Prime);
        let b2 = boundary_ddoubleprime(&current(vec![Polyhedron::segment(vector(&[0]), vector(&[1]))], &dp)).unwrap();
        assert!(b2.equals(&expected).unwrap());
    }

    #[test]
    fn complete_fan_has_no_boundary() {
        let x = Poly::var(1, 0);
        let form = Form::basis_one_form(1, 0, Side::DoublePrime).mul_poly(&x.pow(3));
        let cells = vec![
            Polyhedron::cone(vector(&[2]), &[vector(&[1])]).unwrap(),
            Polyhedron::cone(vector(&[2]), &[vector(&[-1])]).unwrap(),
        ];
        assert!(boundary_dprime(&current(cells, &form)).unwrap().is_zero().unwrap());
        assert!(boundary_dprime(&current(vec![Polyhedron::whole_space(1)], &form)).unwrap().is_zero().unwrap());
    }
}
