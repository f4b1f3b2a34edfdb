use num_traits::{One, Signed, Zero};

use super::stable::intersect_once;
use crate::currents::{PolyhedralCurrent, TropicalCycle};
use crate::error::{Error, Result};
use crate::exactlin::rat::{primitive, scale, zeros};
use crate::exactlin::{Polyhedron, Rat, Vector};

/// `∫ (u·Δ_u) ∧ C` and `∫ (w·Δ_w) ∧ C` with the contributing points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
    /// `(point, multiplicity)` on `Δ_u`.
    pub lhs_points: Vec<(Vector, Rat)>,
    /// `(point, multiplicity)` on `Δ_w`.
    pub rhs_points: Vec<(Vector, Rat)>,
}

fn ray(apex: Vector, dir: Vector) -> Result<Polyhedron> {
    Polyhedron::cone(apex, &[dir])
}

fn unit_cycle(cell: Polyhedron) -> Result<TropicalCycle> {
    TropicalCycle::from_multiplicities(cell.ambient_dim(), vec![(cell, Rat::one())])
}

/// Points of `cell · C` with their multiplicities.
fn meet_points(cell: &Polyhedron, c: &PolyhedralCurrent) -> Result<Vec<(Vector, Rat)>> {
    let (t, _) = intersect_once(unit_cycle(cell.clone())?.current(), c)?;
    t.summands()
        .iter()
        .filter(|s| s.cell.dim() == 0)
        .map(|s| {
            let m = s.multiplicity().ok_or_else(|| Error::UnsupportedCoefficientShape("intersection coefficient".into()))?;
            Ok((s.cell.vertices()[0].clone(), m))
        })
        .collect()
}

/// Cells of `c` whose intersection with `region` is unbounded, described by a recession direction.
fn unbounded_parts(c: &TropicalCycle, region: &Polyhedron) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for s in c.current().summands() {
        if let Some(p) = s.cell.intersect(region)? {
            if !p.is_bounded() {
                let dir = p.rays().first().or_else(|| p.lineality().first()).expect("unbounded polyhedron has a direction");
                let fmt = |v: &[Rat]| v.iter().map(crate::exactlin::rat::format_rat).collect::<Vec<_>>().join(",");
                out.push(format!("cell through ({}) recedes along ({})", fmt(&s.cell.vertices()[0]), fmt(dir)));
            }
        }
    }
    Ok(out)
}

fn first_quadrant() -> Polyhedron {
    Polyhedron::cone(zeros(2), &[vec![Rat::one(), Rat::zero()], vec![Rat::zero(), Rat::one()]]).expect("quadrant")
}

/// Compares `∫ (u·Δ_u) ∧ C` with `∫ (w·Δ_w) ∧ C` for a curve with bounded first-quadrant support.
pub fn diagonal_vertical_pairing(c: &TropicalCycle) -> Result<PairingReport> {
    if c.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: c.ambient_dim() });
    }
    let c = c.normalize()?;
    let witness = unbounded_parts(&c, &first_quadrant())?;
    if !witness.is_empty() {
        return Err(Error::UnboundedSupport(witness));
    }
    let du = ray(zeros(2), vec![Rat::one(), Rat::zero()])?;
    let dw = ray(zeros(2), vec![Rat::zero(), Rat::one()])?;
    let lhs_points = meet_points(&du, c.current())?;
    let rhs_points = meet_points(&dw, c.current())?;
    let lhs = lhs_points.iter().map(|(p, m)| &p[0] * m).sum::<Rat>();
    let rhs = rhs_points.iter().map(|(p, m)| &p[1] * m).sum::<Rat>();
    Ok(PairingReport { holds: lhs == rhs, lhs, rhs, lhs_points, rhs_points })
}

/// The line `{a u + b w = c}` with its lattice weight.
pub fn line_cycle(a: &Rat, b: &Rat, c: &Rat) -> Result<TropicalCycle> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Invalid("line needs a nonzero normal".into()));
    }
    let p = if !a.is_zero() { vec![c / a, Rat::zero()] } else { vec![Rat::zero(), c / b] };
    let line = Polyhedron::from_generators(2, &[p], &[], &[vec![-b.clone(), a.clone()]])?;
    unit_cycle(line)
}

/// `c` rescaled so that `(a, b)` becomes a primitive integer vector: the value of both pairings.
pub fn primitive_rhs(a: &Rat, b: &Rat, c: &Rat) -> Rat {
    let v = vec![a.clone(), b.clone()];
    let p = primitive(&v);
    let k = if !a.is_zero() { &p[0] / a } else { &p[1] / b };
    k * c
}

/// Boundary terms of the triangle in the plane `{(y, x, …, x)}` of `ℝ^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    /// `∫ (x·D) ∧ T`, `D = [0, ρ]·(1, …, 1)`.
    pub diagonal: Rat,
    /// `∫ (x·H) ∧ T`, `H = [0, ρ]·(0, 1, …, 1)`.
    pub horizontal: Rat,
    /// `∫ (y·V) ∧ T`, `V = (0, ρ, …, ρ) + [0, ρ]·(1, 0, …, 0)`.
    pub vertical: Rat,
    /// `∫ ρ·[(ρ, …, ρ) + ℝ_{≥0}(0, 1, …, 1)] ∧ T`.
    pub upper_ray: Rat,
    /// `∫ ρ·[(0, ρ, …, ρ) + ℝ_{≥0}(0, 1, …, 1)] ∧ T`.
    pub lower_ray: Rat,
    /// `diagonal − horizontal − vertical + upper_ray − lower_ray`.
    pub boundary_sum: Rat,
    /// `diagonal = vertical`.
    pub holds: bool,
}

/// `Σ coef(p)·m_p` over `cell · T`; fails if `T` meets an endpoint where `coef ≠ 0`.
fn weighted_meet(cell: &Polyhedron, coef: impl Fn(&[Rat]) -> Rat, t: &PolyhedralCurrent) -> Result<Rat> {
    let mut total = Rat::zero();
    for (p, m) in meet_points(cell, t)? {
        let v = coef(&p);
        if !v.is_zero() && cell.vertices().contains(&p) {
            let s = p.iter().map(crate::exactlin::rat::format_rat).collect::<Vec<_>>().join(",");
            return Err(Error::Invalid(format!("cycle meets the endpoint ({s}) of a boundary segment")));
        }
        total += v * m;
    }
    Ok(total)
}

/// The triangle identity `∫ (x·D) ∧ T = ∫ (y·V) ∧ T` for an `n`-cycle in `ℝ^{n+1}`, `ρ > 0`.
pub fn triangle_identity(t: &TropicalCycle, rho: &Rat) -> Result<TriangleReport> {
    let n1 = t.ambient_dim();
    if n1 < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n1 });
    }
    if !rho.is_positive() {
        return Err(Error::Invalid("rho must be positive".into()));
    }
    let ones: Vector = vec![Rat::one(); n1];
    let mut flat = ones.clone();
    flat[0] = Rat::zero();
    let origin = zeros(n1);
    let top = scale(rho, &ones);
    let side = scale(rho, &flat);
    let cur = t.current();
    let x = |p: &[Rat]| p[1].clone();
    let y = |p: &[Rat]| p[0].clone();
    let r = |_: &[Rat]| rho.clone();
    let diagonal = weighted_meet(&Polyhedron::segment(origin.clone(), top.clone()), x, cur)?;
    let horizontal = weighted_meet(&Polyhedron::segment(origin, side.clone()), x, cur)?;
    let vertical = weighted_meet(&Polyhedron::segment(side.clone(), top.clone()), y, cur)?;
    let upper_ray = weighted_meet(&ray(top, flat.clone())?, r, cur)?;
    let lower_ray = weighted_meet(&ray(side, flat)?, r, cur)?;
    let boundary_sum = &diagonal - &horizontal - &vertical + &upper_ray - &lower_ray;
    Ok(TriangleReport { holds: diagonal == vertical, diagonal, horizontal, vertical, upper_ray, lower_ray, boundary_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat, vector};

    #[test]
    fn sum_line() {
        let r = diagonal_vertical_pairing(&line_cycle(&int(1), &int(1), &int(2)).unwrap()).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(2), int(2)));
    }

    #[test]
    fn skew_line() {
        let r = diagonal_vertical_pairing(&line_cycle(&int(1), &int(2), &int(2)).unwrap()).unwrap();
        assert_eq!(r.lhs_points, vec![(vector(&[2, 0]), int(1))]);
        assert_eq!(r.rhs_points, vec![(vector(&[0, 1]), int(2))]);
        assert!(r.holds && r.lhs == int(2));
    }

    #[test]
    fn rational_line() {
        let (a, b, c) = (rat(1, 2), rat(3, 4), rat(5, 3));
        let r = diagonal_vertical_pairing(&line_cycle(&a, &b, &c).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, primitive_rhs(&a, &b, &c));
        assert_eq!(r.lhs, rat(20, 3));
    }

    #[test]
    fn no_quadrant_support() {
        let c = line_cycle(&int(1), &int(1), &int(-2)).unwrap();
        let r = diagonal_vertical_pairing(&c).unwrap();
        assert_eq!((r.lhs, r.rhs), (int(0), int(0)));
    }

    #[test]
    fn unbounded_is_rejected() {
        let c = line_cycle(&int(1), &int(-1), &int(0)).unwrap();
        assert!(matches!(diagonal_vertical_pairing(&c), Err(Error::UnboundedSupport(_))));
    }

    #[test]
    fn triangle_in_plane_and_space() {
        let p = vector(&[1, -1]);
        let rays = [vector(&[0, 1]), vector(&[-1, 0]), vector(&[1, -1])];
        let c = TropicalCycle::from_multiplicities(2, rays.iter().map(|d| (Polyhedron::cone(p.clone(), &[d.clone()]).unwrap(), int(1))).collect())
            .unwrap();
        let r = triangle_identity(&c, &int(3)).unwrap();
        assert!(r.holds);
        assert_eq!(r.diagonal, int(1));
        assert!(r.boundary_sum.is_zero());
        let plane = Polyhedron::from_generators(3, &[vector(&[1, 0, 0])], &[], &[vector(&[0, 1, 0]), vector(&[0, 0, 1])]).unwrap();
        let t = TropicalCycle::from_multiplicities(3, vec![(plane, int(1))]).unwrap();
        let r = triangle_identity(&t, &int(2)).unwrap();
        assert!(r.holds && r.vertical == int(1) && r.boundary_sum.is_zero());
    }
}
