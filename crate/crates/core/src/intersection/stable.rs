use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::complexes::refine_cells;
use crate::currents::{PolyhedralCurrent, Summand, TropicalCycle};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{det, extend_basis};
use crate::exactlin::rat::{neg, zeros};
use crate::exactlin::{Polyhedron, Rat, Vector, Weight};

/// How one pair of cells behaved under a displacement at a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub face: Polyhedron,
    pub first: Polyhedron,
    pub second: Polyhedron,
    pub contributes: bool,
}

/// A displacement vector with the per-pair genericity record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Displacement {
    pub vector: Vector,
    pub certificate: Vec<PairCertificate>,
}

/// Result of a stable intersection, recomputed with a second generic displacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableIntersection {
    pub cycle: TropicalCycle,
    pub displacement: Displacement,
    pub check: Displacement,
}

/// Outcome of intersecting with one fixed displacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Displaced {
    Generic(PolyhedralCurrent, Displacement),
    /// The displacement lies on the boundary of the local difference cone of this pair.
    Degenerate(PairCertificate),
}

/// Number of displacement vectors tried before giving up.
pub const MAX_DISPLACEMENTS: usize = 24;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `k`-th vector `(1, M, M², …)` with `M` the `k`-th odd prime.
pub fn displacement_vector(n: usize, k: usize) -> Vector {
    let m = (3u64..).filter(|&p| is_prime(p)).nth(k).expect("infinitely many primes");
    let mut out = Vec::with_capacity(n);
    let mut x = Rat::from_integer(1.into());
    for _ in 0..n {
        out.push(x.clone());
        x *= Rat::from_integer(m.into());
    }
    out
}

/// Cells with multiplicities relative to lattice weights, refined against `cells`.
fn cells_with_multiplicity(c: &PolyhedralCurrent, cells: &[Polyhedron]) -> Result<Vec<(Polyhedron, Rat)>> {
    c.normalize_with(cells)?
        .summands()
        .iter()
        .map(|s| {
            let m = s.multiplicity().ok_or_else(|| Error::UnsupportedCoefficientShape("cycle coefficient must be constant".into()))?;
            Ok((s.cell.clone(), m))
        })
        .collect()
}

fn pure_dim(c: &[(Polyhedron, Rat)]) -> Result<Option<usize>> {
    let Some(d) = c.first().map(|(p, _)| p.dim()) else { return Ok(None) };
    match c.iter().find(|(p, _)| p.dim() != d) {
        Some((p, _)) => Err(Error::DimensionMismatch { expected: d, found: p.dim() }),
        None => Ok(Some(d)),
    }
}

/// `λ_C λ_D |det(t, c, d)|` relative to the lattice weight of `τ`.
fn pair_multiplicity(tau: &Polyhedron, sc: &Polyhedron, sd: &Polyhedron) -> Result<Rat> {
    let n = tau.ambient_dim();
    let nu = Weight::lattice_of(tau);
    let t = nu.basis().to_vec();
    let c = extend_basis(&t, &sc.span_basis(), n);
    let d = extend_basis(&t, &sd.span_basis(), n);
    let mut tc = t.clone();
    tc.extend(c.iter().cloned());
    let mut td = t.clone();
    td.extend(d.iter().cloned());
    let lc = Weight::lattice_of(sc).scalar_wrt(&tc)?;
    let ld = Weight::lattice_of(sd).scalar_wrt(&td)?;
    let mut all = tc;
    all.extend(d);
    Ok(lc * ld * det(&all).abs() / nu.scale())
}

/// Local test at `x ∈ τ`: does `σ_C ∩ (σ_D + εv)` meet near `x`? `None` if `v` is not generic.
fn local_contribution(x: &[Rat], sc: &Polyhedron, sd: &Polyhedron, v: &[Rat]) -> Result<Option<bool>> {
    let n = x.len();
    let tc = sc.tangent_cone(x);
    let td = sd.tangent_cone(x);
    let mut rays: Vec<Vector> = tc.rays().to_vec();
    rays.extend(td.rays().iter().map(|r| neg(r)));
    let mut lin: Vec<Vector> = tc.lineality().to_vec();
    lin.extend(td.lineality().iter().cloned());
    let cone = Polyhedron::from_generators(n, &[zeros(n)], &rays, &lin)?;
    if !cone.contains(v) {
        return Ok(Some(false));
    }
    if cone.dim() < n || cone.facet_inequalities().iter().any(|f| f.eval(v).is_zero()) {
        return Ok(None);
    }
    Ok(Some(true))
}

/// Fan displacement rule with a fixed vector `v`; the inputs need not be balanced.
pub fn intersect_displaced(c: &PolyhedralCurrent, d: &PolyhedralCurrent, v: &[Rat]) -> Result<Displaced> {
    let n = c.ambient_dim();
    if d.ambient_dim() != n || v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: d.ambient_dim() });
    }
    let mut all = c.cells();
    all.extend(d.cells());
    let refined = refine_cells(&all)?;
    let cc = cells_with_multiplicity(c, &refined)?;
    let dd = cells_with_multiplicity(d, &refined)?;
    let empty = || Displaced::Generic(PolyhedralCurrent::zero(n), Displacement { vector: v.to_vec(), certificate: Vec::new() });
    let (Some(k), Some(l)) = (pure_dim(&cc)?, pure_dim(&dd)?) else { return Ok(empty()) };
    if k + l < n {
        return Ok(empty());
    }
    let e = k + l - n;
    let mut stars: BTreeMap<Polyhedron, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (sc, _)) in cc.iter().enumerate() {
        for (j, (sd, _)) in dd.iter().enumerate() {
            if let Some(meet) = sc.intersect(sd)? {
                if meet.dim() >= e {
                    for tau in meet.faces(meet.dim() - e) {
                        stars.entry(tau).or_default().push((i, j));
                    }
                }
            }
        }
    }
    let mut certificate = Vec::new();
    let mut out = Vec::new();
    for (tau, pairs) in stars {
        let x = tau.relint_point();
        let mut total = Rat::zero();
        for (i, j) in pairs {
            let (sc, mc) = &cc[i];
            let (sd, md) = &dd[j];
            let cert = |contributes| PairCertificate { face: tau.clone(), first: sc.clone(), second: sd.clone(), contributes };
            match local_contribution(&x, sc, sd, v)? {
                None => return Ok(Displaced::Degenerate(cert(false))),
                Some(false) => certificate.push(cert(false)),
                Some(true) => {
                    total += mc * md * pair_multiplicity(&tau, sc, sd)?;
                    certificate.push(cert(true));
                }
            }
        }
        if !total.is_zero() {
            let nu = Weight::lattice_of(&tau);
            out.push(Summand::constant(tau, nu, total)?);
        }
    }
    let current = PolyhedralCurrent::new(n, out)?.normalize()?;
    Ok(Displaced::Generic(current, Displacement { vector: v.to_vec(), certificate }))
}

/// First generic displacement from the fixed sequence, starting at index `start`.
fn first_generic(c: &PolyhedralCurrent, d: &PolyhedralCurrent, start: usize) -> Result<(usize, PolyhedralCurrent, Displacement)> {
    let n = c.ambient_dim();
    for k in start..MAX_DISPLACEMENTS {
        if let Displaced::Generic(t, disp) = intersect_displaced(c, d, &displacement_vector(n, k))? {
            return Ok((k, t, disp));
        }
    }
    Err(Error::NonGenericDisplacement(MAX_DISPLACEMENTS))
}

/// Stable intersection `C · D`, checked against a second generic displacement.
pub fn stable_intersect(c: &TropicalCycle, d: &TropicalCycle) -> Result<StableIntersection> {
    let (k, first, displacement) = first_generic(c.current(), d.current(), 0)?;
    let (_, second, check) = first_generic(c.current(), d.current(), k + 1)?;
    if !first.equals(&second)? {
        return Err(Error::DisplacementDisagreement);
    }
    Ok(StableIntersection { cycle: TropicalCycle::from_current(first)?, displacement, check })
}

/// Stable intersection with a single displacement, for inputs that are not balanced
/// but whose coefficients vanish where the choice would matter.
pub fn intersect_once(c: &PolyhedralCurrent, d: &PolyhedralCurrent) -> Result<(PolyhedralCurrent, Displacement)> {
    let (_, t, disp) = first_generic(c, d, 0)?;
    Ok((t, disp))
}
