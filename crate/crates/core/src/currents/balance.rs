use std::collections::BTreeMap;

use num_traits::Zero;

use super::current::{PolyhedralCurrent, Summand, TropicalCycle};
use super::star::{facet_stars, orthogonal_normal};
use crate::complexes::{LinearStructure, PwlFunction};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{identity, kernel, solve};
use crate::exactlin::rat::{dot, sub, zeros};
use crate::exactlin::{normal_vector, Polyhedron, Rat, Vector, Weight};
use crate::superforms::SuperForm;

/// A codimension-one face where balancing fails, with the offending function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceViolation {
    pub face: Polyhedron,
    /// Coefficients of the witness in the generators of the linear structure
    /// (extra generators first, then ambient coordinates).
    pub witness: Vec<Rat>,
    pub residual: SuperForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub violations: Vec<BalanceViolation>,
}

/// Derivatives along `N_τ` of the generators of `l`, one row per basis vector of `N_τ`.
fn parameter_rows(l: &LinearStructure, tau: &Polyhedron) -> Result<Vec<Vector>> {
    tau.span_basis()
        .iter()
        .map(|d| {
            let mut row = Vec::with_capacity(l.parameter_count());
            for g in &l.generators {
                row.push(g.affine_on(tau).ok_or(Error::NotSubordinate)?.linear(d));
            }
            if l.include_affine {
                row.extend(d.iter().cloned());
            }
            Ok(row)
        })
        .collect()
}

fn layers(summands: &[Summand]) -> BTreeMap<usize, Vec<Summand>> {
    let mut out: BTreeMap<usize, Vec<Summand>> = BTreeMap::new();
    for s in summands {
        out.entry(s.cell.dim()).or_default().push(s.clone());
    }
    out
}

/// Checks `Σ_σ (∂φ/∂n_{σ,τ}) α_σ|_τ = 0` at every codimension-one face `τ` and every `φ`
/// in the linear structure that is constant on `τ`.
pub fn check_balanced(t: &PolyhedralCurrent, l: &LinearStructure) -> Result<BalanceReport> {
    let t = t.normalize_with(&l.piece_cells())?;
    let p = l.parameter_count();
    let mut violations = Vec::new();
    for (dim, layer) in layers(t.summands()) {
        if dim == 0 {
            continue;
        }
        for (tau, star) in facet_stars(&layer) {
            let nu = Weight::lattice_of(&tau);
            let chart = tau.chart();
            let rows = parameter_rows(l, &tau)?;
            let basis = if rows.is_empty() { identity(p) } else { kernel(&rows, p) };
            let mut legs = Vec::new();
            for &i in &star {
                let s = &layer[i];
                legs.push((i, orthogonal_normal(&s.cell, &s.weight, &tau, &nu)?, s.form.restrict(&chart)?));
            }
            for c in basis {
                let mut residual = SuperForm::zero(&chart);
                for (i, n, a) in &legs {
                    let g = l.gradient_on(&layer[*i].cell, &c).ok_or(Error::NotSubordinate)?;
                    residual = residual.add(&a.scale(&dot(&g, n)))?;
                }
                if !residual.is_zero() {
                    violations.push(BalanceViolation { face: tau.clone(), witness: c, residual });
                }
            }
        }
    }
    Ok(BalanceReport { balanced: violations.is_empty(), violations })
}

/// `div(φ)` on a tropical cycle, with lattice weights on the faces.
pub fn corner_locus(phi: &PwlFunction, c: &TropicalCycle, l: &LinearStructure) -> Result<TropicalCycle> {
    corner_locus_with(phi, c, l, Weight::lattice_of)
}

/// `div(φ)` with the face weights chosen by `face_weight`.
///
/// The multiplicity of `τ` is `Σ_{σ ⊃ τ} c_σ ∂(φ − φ_τ)/∂n_{σ,τ}` where `φ_τ` is the
/// lexicographically first element of the linear structure matching `φ` on `τ`.
pub fn corner_locus_with(
    phi: &PwlFunction,
    c: &TropicalCycle,
    l: &LinearStructure,
    face_weight: impl Fn(&Polyhedron) -> Weight,
) -> Result<TropicalCycle> {
    let mut extra: Vec<Polyhedron> = phi.pieces().iter().map(|(p, _)| p.clone()).collect();
    extra.extend(l.piece_cells());
    let t = c.current().normalize_with(&extra)?;
    let p = l.parameter_count();
    let mut out = Vec::new();
    for (dim, layer) in layers(t.summands()) {
        if dim == 0 {
            continue;
        }
        for (tau, star) in facet_stars(&layer) {
            let nu = face_weight(&tau);
            let phi_tau = phi.affine_on(&tau).ok_or(Error::OutsideSupport)?;
            let rows = parameter_rows(l, &tau)?;
            let params = if rows.is_empty() {
                zeros(p)
            } else {
                let rhs: Vector = tau.span_basis().iter().map(|d| phi_tau.linear(d)).collect();
                solve(&rows, &rhs, p).ok_or(Error::NotComparable)?
            };
            let mut mult = Rat::zero();
            for &i in &star {
                let s = &layer[i];
                let m = s.multiplicity().ok_or_else(|| Error::UnsupportedCoefficientShape("cycle coefficient".into()))?;
                let grad = &phi.affine_on(&s.cell).ok_or(Error::OutsideSupport)?.a;
                let g = l.gradient_on(&s.cell, &params).ok_or(Error::NotSubordinate)?;
                let n = normal_vector(&s.cell, &s.weight, &tau, &nu)?;
                mult += m * dot(&sub(grad, &g), &n);
            }
            if !mult.is_zero() {
                out.push(Summand::constant(tau, nu, mult)?);
            }
        }
    }
    TropicalCycle::from_current(PolyhedralCurrent::new(c.ambient_dim(), out)?.normalize()?)
}
