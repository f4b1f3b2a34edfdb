use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::current::{PolyhedralCurrent, Summand};
use super::push::{push_forward_with, PwlMap};
use crate::complexes::{face_closure, refine_cells, WeightedComplex};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{kernel, solve};
use crate::exactlin::{AffineMap, Polyhedron, Rat, Vector, Weight};
use crate::superforms::SuperForm;

/// Fiber weight `(μ/ν)_τ` on `ker(N_τ → N_{f(τ)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberWeight {
    pub face: Polyhedron,
    pub image: Polyhedron,
    pub weight: Weight,
}

/// A face where the fiber-weight sum depends on the chosen maximal image cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatViolation {
    pub face: Polyhedron,
    /// Sum for each maximal image cell, relative to one fixed basis of the kernel.
    pub sums: Vec<(Polyhedron, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatReport {
    pub flat: bool,
    pub faithfully_flat: bool,
    pub fiber_weights: Vec<FiberWeight>,
    pub violations: Vec<FlatViolation>,
    /// Faces whose fibers exceed the relative dimension.
    pub excess_fibers: Vec<Polyhedron>,
    /// Cells of the target over which every fiber is too small.
    pub degenerate_fibers: Vec<Polyhedron>,
}

#[derive(Clone, Debug)]
struct XCell {
    cell: Polyhedron,
    weight: Weight,
    map: AffineMap,
    image: Polyhedron,
}

/// Subdivisions of source and target on which the map sends every face onto a cell.
struct Subordinate {
    n: usize,
    m: usize,
    xcells: Vec<XCell>,
    ycells: Vec<Polyhedron>,
    ymax: Vec<(Polyhedron, Weight)>,
    faces: Vec<(Polyhedron, AffineMap, Polyhedron)>,
}

fn pure_cells(c: &WeightedComplex) -> Result<(usize, Vec<(Polyhedron, Weight)>)> {
    let cells: Vec<(Polyhedron, Weight)> = c.weights().iter().map(|(&id, w)| (c.cells()[id].clone(), w.clone())).collect();
    let d = c.pure_dim().or_else(|| cells.first().map(|(p, _)| p.dim())).unwrap_or(0);
    if let Some((p, _)) = cells.iter().find(|(p, _)| p.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
    }
    Ok((d, cells))
}

fn face_images(xcells: &[XCell]) -> Result<Vec<(Polyhedron, AffineMap, Polyhedron)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in xcells {
        for f in x.cell.all_faces() {
            if seen.insert(f.clone()) {
                let img = f.image(&x.map)?;
                out.push((f, x.map.clone(), img));
            }
        }
    }
    Ok(out)
}

impl Subordinate {
    fn build(x: &WeightedComplex, y: &WeightedComplex, f: &PwlMap, extra_y: &[Polyhedron]) -> Result<Self> {
        let (n, xw) = pure_cells(x)?;
        let (m, yw) = pure_cells(y)?;
        if n < m {
            return Err(Error::Invalid(format!("source dimension {n} below target dimension {m}")));
        }
        let mut xcells = Vec::new();
        for (s, mu) in &xw {
            for (p, g) in f.pieces() {
                if let Some(c) = s.intersect(p)? {
                    if c.dim() == n {
                        let image = c.image(g)?;
                        xcells.push(XCell { cell: c, weight: mu.clone(), map: g.clone(), image });
                    }
                }
            }
        }
        let mut ybase: Vec<Polyhedron> = yw.iter().map(|(p, _)| p.clone()).collect();
        ybase.extend(extra_y.iter().cloned());
        for _ in 0..16 {
            let faces = face_images(&xcells)?;
            let mut input = ybase.clone();
            input.extend(faces.iter().map(|(_, _, i)| i.clone()));
            let yref = refine_cells(&input)?;
            let yclos: BTreeSet<Polyhedron> = face_closure(&yref).into_iter().collect();
            let mut next = Vec::new();
            for xc in &xcells {
                for rho in yclos.iter().filter(|r| r.dim() == xc.image.dim() && xc.image.contains_polyhedron(r)) {
                    if let Some(c) = xc.cell.preimage_within(&xc.map, rho)? {
                        if c.dim() == n {
                            next.push(XCell { image: rho.clone(), cell: c, weight: xc.weight.clone(), map: xc.map.clone() });
                        }
                    }
                }
            }
            let faces = face_images(&next)?;
            xcells = next;
            if faces.iter().all(|(_, _, i)| yclos.contains(i)) {
                let ycells: Vec<Polyhedron> = yclos.into_iter().filter(|r| y.weight_on(r).is_some() || yw.iter().any(|(c, _)| c.contains_polyhedron(r))).collect();
                let ymax = ycells.iter().filter(|r| r.dim() == m).filter_map(|r| y.weight_on(r).map(|w| (r.clone(), w))).collect();
                return Ok(Subordinate { n, m, xcells, ycells, ymax, faces });
            }
            ybase = yref;
        }
        Err(Error::Invalid("no subordinate subdivision found".into()))
    }
}

/// Linear part of `g` on the span of `cell`, as the images of the chart basis.
fn chart_images(cell: &Polyhedron, g: &AffineMap) -> (Vec<Vector>, Vec<Vector>) {
    let chart = cell.chart();
    let imgs: Vec<Vector> = chart.basis().iter().map(|b| g.apply_linear(b)).collect();
    let t = g.target_dim();
    let rows: Vec<Vector> = (0..t).map(|j| imgs.iter().map(|v| v[j].clone()).collect()).collect();
    (chart.basis().to_vec(), rows)
}

/// Basis of `ker(g : N_cell → target)` in ambient coordinates.
fn kernel_basis(cell: &Polyhedron, g: &AffineMap) -> Vec<Vector> {
    let (basis, rows) = chart_images(cell, g);
    let dim = basis.len();
    let coeffs = if rows.iter().all(|r| r.iter().all(Zero::is_zero)) { crate::exactlin::matrix::identity(dim) } else { kernel(&rows, dim) };
    coeffs.iter().map(|c| cell.chart().direction(c)).collect()
}

/// Vectors of `N_cell` mapping onto `targets` under `g`.
fn lifts(cell: &Polyhedron, g: &AffineMap, targets: &[Vector]) -> Result<Vec<Vector>> {
    let (basis, rows) = chart_images(cell, g);
    targets
        .iter()
        .map(|v| {
            let c = solve(&rows, v, basis.len()).ok_or(Error::MapNotIntoTarget)?;
            Ok(cell.chart().direction(&c))
        })
        .collect()
}

/// `μ_σ / ν` relative to `∧ k`.
fn fiber_scalar(x: &XCell, nu: &Weight, k: &[Vector]) -> Result<Rat> {
    let mut b = lifts(&x.cell, &x.map, nu.basis())?;
    b.extend(k.iter().cloned());
    Ok(x.weight.scalar_wrt(&b)? / nu.scale())
}

impl Subordinate {
    fn analyze(&self) -> Result<(FlatReport, BTreeMap<Polyhedron, (Vec<Vector>, Rat)>)> {
        let rel = self.n - self.m;
        let mut fiber_weights = Vec::new();
        let mut violations = Vec::new();
        let mut excess = Vec::new();
        let mut table = BTreeMap::new();
        for (tau, g, img) in &self.faces {
            let r = tau.dim() - img.dim();
            if r > rel {
                excess.push(tau.clone());
            }
            if r != rel {
                continue;
            }
            let k = kernel_basis(tau, g);
            let mut sums = Vec::new();
            for (rho, nu) in self.ymax.iter().filter(|(rho, _)| rho.contains_polyhedron(img)) {
                let mut s = Rat::zero();
                for x in self.xcells.iter().filter(|x| &x.image == rho && (x.cell == *tau || tau.is_face_of(&x.cell))) {
                    s += fiber_scalar(x, nu, &k)?;
                }
                sums.push((rho.clone(), s));
            }
            if sums.is_empty() {
                return Err(Error::MapNotIntoTarget);
            }
            if sums.iter().all(|(_, s)| *s == sums[0].1) {
                let s = sums[0].1.clone();
                if !s.is_zero() {
                    fiber_weights.push(FiberWeight { face: tau.clone(), image: img.clone(), weight: Weight::new(k.clone(), s.clone())? });
                }
                table.insert(tau.clone(), (k, s));
            } else {
                violations.push(FlatViolation { face: tau.clone(), sums });
            }
        }
        let degenerate: Vec<Polyhedron> = self
            .ycells
            .iter()
            .filter(|rho| !self.faces.iter().any(|(t, _, img)| t.dim() - img.dim() == rel && img.contains_polyhedron(rho)))
            .cloned()
            .collect();
        let flat = excess.is_empty() && violations.is_empty();
        let report = FlatReport {
            flat,
            faithfully_flat: flat && degenerate.is_empty(),
            fiber_weights,
            violations,
            excess_fibers: excess,
            degenerate_fibers: degenerate,
        };
        Ok((report, table))
    }
}

/// Checks whether `f : (X, μ) → (Y, ν)` has well-defined fiber weights.
pub fn check_flat(x: &WeightedComplex, y: &WeightedComplex, f: &PwlMap) -> Result<FlatReport> {
    Ok(Subordinate::build(x, y, f, &[])?.analyze()?.0)
}

/// `f^* T` for a flat map: `f^*β ∧ [τ, ε ∧ (μ/ν)_τ]` over the faces `τ` above each summand.
pub fn pull_back_flat(t: &PolyhedralCurrent, x: &WeightedComplex, y: &WeightedComplex, f: &PwlMap) -> Result<PolyhedralCurrent> {
    let st = Subordinate::build(x, y, f, &t.cells())?;
    let (report, table) = st.analyze()?;
    if !report.flat {
        return Err(Error::NotFlat);
    }
    let t = t.normalize_with(&st.ycells)?;
    let rel = st.n - st.m;
    let mut out = Vec::new();
    for s in t.summands() {
        let candidates = st.faces.iter().filter(|(tau, _, img)| img.dim() == s.cell.dim() && tau.dim() - img.dim() == rel);
        for (tau, g, _) in candidates {
            let (k, scalar) = &table[tau];
            if scalar.is_zero() {
                continue;
            }
            let piece = match tau.preimage_within(g, &s.cell)? {
                Some(p) if p.dim() == tau.dim() => p,
                _ => continue,
            };
            let mut basis = lifts(&piece, g, s.weight.basis())?;
            basis.extend(k.iter().cloned());
            let weight = Weight::new(basis, s.weight.scale() * scalar)?;
            let form = s.form.pullback(g, &piece.chart())?;
            out.push(Summand::new(piece, weight, form)?);
        }
    }
    PolyhedralCurrent::new(x.ambient_dim(), out)?.normalize()
}

/// A form given on finitely many cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwsForm {
    pub pieces: Vec<(Polyhedron, SuperForm)>,
}

impl PwsForm {
    /// Restriction to `cell` from the first piece containing it; zero if none does.
    pub fn on(&self, cell: &Polyhedron) -> Result<SuperForm> {
        match self.pieces.iter().find(|(p, _)| p.contains_polyhedron(cell)) {
            Some((_, f)) => f.restrict(&cell.chart()),
            None => Ok(SuperForm::zero(&cell.chart())),
        }
    }
}

/// `f_{μ/ν,*} η` for `η ∧ [X, μ]` given as a current, as a form relative to the weights of `Y`.
pub fn fiber_integral_form(eta: &PolyhedralCurrent, y: &WeightedComplex, f: &PwlMap) -> Result<PwsForm> {
    let pushed = push_forward_with(eta, f, |rho| y.weight_on(rho).unwrap_or_else(|| Weight::lattice_of(rho)))?;
    let pieces = pushed
        .summands()
        .iter()
        .map(|s| {
            let nu = y.weight_on(&s.cell).ok_or(Error::MapNotIntoTarget)?;
            Ok((s.cell.clone(), s.form.scale(&s.weight.ratio_to(&nu)?)))
        })
        .collect::<Result<_>>()?;
    Ok(PwsForm { pieces })
}
