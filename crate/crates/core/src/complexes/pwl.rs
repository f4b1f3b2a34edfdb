use num_traits::Zero;

use super::complex::WeightedComplex;
use crate::error::{Error, Result};
use crate::exactlin::{AffineFunctional, Polyhedron, Rat};

/// A function that is affine on each of finitely many polyhedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlFunction {
    ambient: usize,
    pieces: Vec<(Polyhedron, AffineFunctional)>,
}

/// Two pieces disagree at a point of their common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discontinuity {
    pub pieces: (usize, usize),
    pub point: Vec<Rat>,
}

impl PwlFunction {
    pub fn new(ambient: usize, pieces: Vec<(Polyhedron, AffineFunctional)>) -> Result<Self> {
        for (p, f) in &pieces {
            if p.ambient_dim() != ambient || f.a.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: f.a.len() });
            }
        }
        Ok(PwlFunction { ambient, pieces })
    }

    /// A globally affine function on `ℝⁿ`.
    pub fn affine(f: AffineFunctional) -> Self {
        let n = f.a.len();
        PwlFunction { ambient: n, pieces: vec![(Polyhedron::whole_space(n), f)] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[(Polyhedron, AffineFunctional)] {
        &self.pieces
    }

    /// Domain of definition as an unweighted complex.
    pub fn complex(&self) -> WeightedComplex {
        WeightedComplex::unweighted(self.ambient, self.pieces.iter().map(|(p, _)| p.clone()).collect()).expect("consistent dims")
    }

    pub fn trop_eval(&self, x: &[Rat]) -> Result<Rat> {
        self.pieces.iter().find(|(p, _)| p.contains(x)).map(|(_, f)| f.eval(x)).ok_or(Error::OutsideSupport)
    }

    /// Affine expression valid on all of `cell`, if `cell` lies in a single piece.
    pub fn affine_on(&self, cell: &Polyhedron) -> Option<&AffineFunctional> {
        self.pieces.iter().find(|(p, _)| p.contains_polyhedron(cell)).map(|(_, f)| f)
    }

    /// Checks agreement of adjacent pieces on the generators of their intersections.
    pub fn check_continuity(&self) -> Result<Vec<Discontinuity>> {
        let mut out = Vec::new();
        for i in 0..self.pieces.len() {
            for j in i + 1..self.pieces.len() {
                let (p, f) = &self.pieces[i];
                let (q, g) = &self.pieces[j];
                let Some(inter) = p.intersect(q)? else { continue };
                if let Some(v) = inter.vertices().iter().find(|v| f.eval(v) != g.eval(v)) {
                    out.push(Discontinuity { pieces: (i, j), point: v.clone() });
                    continue;
                }
                let v0 = &inter.vertices()[0];
                for d in inter.rays().iter().chain(inter.lineality()) {
                    if f.linear(d) != g.linear(d) {
                        out.push(Discontinuity { pieces: (i, j), point: crate::exactlin::rat::add(v0, d) });
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> PwlFunction {
        let pieces = self
            .pieces
            .iter()
            .map(|(p, f)| (p.clone(), AffineFunctional::new(crate::exactlin::rat::scale(c, &f.a), &f.b * c)))
            .collect();
        PwlFunction { ambient: self.ambient, pieces }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropKind {
    Min,
    Max,
}

/// `min` or `max` of finitely many affine functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalExpr {
    pub kind: TropKind,
    pub terms: Vec<AffineFunctional>,
}

impl TropicalExpr {
    pub fn new(kind: TropKind, terms: Vec<AffineFunctional>) -> Result<Self> {
        let n = terms.first().map(|t| t.a.len()).ok_or_else(|| Error::Invalid("empty tropical expression".into()))?;
        if let Some(t) = terms.iter().find(|t| t.a.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: t.a.len() });
        }
        Ok(TropicalExpr { kind, terms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.terms[0].a.len()
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let vals = self.terms.iter().map(|t| t.eval(x));
        match self.kind {
            TropKind::Min => vals.min(),
            TropKind::Max => vals.max(),
        }
        .expect("nonempty")
    }

    /// Region where term `i` attains the extremum.
    fn region_constraints(&self, i: usize) -> Vec<AffineFunctional> {
        let t = &self.terms[i];
        self.terms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| {
                let diff = AffineFunctional::new(crate::exactlin::rat::sub(&s.a, &t.a), &s.b - &t.b);
                match self.kind {
                    TropKind::Min => diff,
                    TropKind::Max => diff.negated(),
                }
            })
            .collect()
    }
}

/// Refines the listed cells of `c` into domains of linearity of `phi`.
pub fn subdivide_subordinate(c: &WeightedComplex, phi: &TropicalExpr) -> Result<(WeightedComplex, PwlFunction)> {
    if phi.ambient_dim() != c.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: c.ambient_dim(), found: phi.ambient_dim() });
    }
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    let mut weights = std::collections::BTreeMap::new();
    let mut carriers = std::collections::BTreeSet::new();
    for (id, sigma) in c.cells().iter().enumerate() {
        let mut found: Vec<(Polyhedron, AffineFunctional)> = Vec::new();
        for i in 0..phi.terms.len() {
            let Some(r) = sigma.restrict(&phi.region_constraints(i), &[])? else { continue };
            if r.dim() != sigma.dim() || found.iter().any(|(q, _)| *q == r) {
                continue;
            }
            found.push((r, phi.terms[i].clone()));
        }
        for (r, f) in found {
            let new_id = cells.len();
            if let Some(w) = c.weight(id) {
                weights.insert(new_id, w.clone());
            }
            if c.carriers().contains(&id) {
                carriers.insert(new_id);
            }
            cells.push(r.clone());
            pieces.push((r, f));
        }
    }
    let refined = WeightedComplex::new(c.ambient_dim(), cells, weights, carriers, c.pure_dim())?;
    Ok((refined, PwlFunction::new(c.ambient_dim(), pieces)?))
}

/// Functions against which balancing is tested: constants, optionally the ambient
/// affine functionals, and finitely many further piecewise linear generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearStructure {
    pub ambient: usize,
    pub include_affine: bool,
    pub generators: Vec<PwlFunction>,
}

impl LinearStructure {
    /// The sheaf of affine functions on `ℝⁿ`.
    pub fn affine(n: usize) -> Self {
        LinearStructure { ambient: n, include_affine: true, generators: Vec::new() }
    }

    pub fn with_generators(n: usize, include_affine: bool, generators: Vec<PwlFunction>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.ambient_dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: g.ambient_dim() });
        }
        Ok(LinearStructure { ambient: n, include_affine, generators })
    }

    /// Polyhedra the complex must be subordinate to.
    pub fn piece_cells(&self) -> Vec<Polyhedron> {
        self.generators.iter().flat_map(|g| g.pieces().iter().map(|(p, _)| p.clone())).collect()
    }

    /// Number of coordinates of the parameter space `(c_generators, a_affine)`.
    pub fn parameter_count(&self) -> usize {
        self.generators.len() + if self.include_affine { self.ambient } else { 0 }
    }

    /// Gradient on `cell` of the function with parameters `params`, or `None` if some
    /// generator is not affine on `cell`.
    pub fn gradient_on(&self, cell: &Polyhedron, params: &[Rat]) -> Option<Vec<Rat>> {
        let mut g = crate::exactlin::rat::zeros(self.ambient);
        for (k, gen) in self.generators.iter().enumerate() {
            if params[k].is_zero() {
                continue;
            }
            let f = gen.affine_on(cell)?;
            g = crate::exactlin::rat::axpy(&g, &params[k], &f.a);
        }
        if self.include_affine {
            let off = self.generators.len();
            for i in 0..self.ambient {
                g[i] += &params[off + i];
            }
        }
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, vector};
    use crate::exactlin::Weight;

    fn lin(a: &[i64], b: i64) -> AffineFunctional {
        AffineFunctional::new(vector(a), int(b))
    }

    #[test]
    fn max_zero_x() {
        let c = WeightedComplex::from_carriers(1, vec![(Polyhedron::whole_space(1), Weight::standard(1))]).unwrap();
        let phi = TropicalExpr::new(TropKind::Max, vec![lin(&[0], 0), lin(&[1], 0)]).unwrap();
        let (c2, f) = subdivide_subordinate(&c, &phi).unwrap();
        assert_eq!(c2.cells().len(), 2);
        assert!(c2.validate().unwrap().is_valid());
        assert_eq!(f.trop_eval(&vector(&[-2])).unwrap(), int(0));
        assert_eq!(f.trop_eval(&vector(&[3])).unwrap(), int(3));
        assert!(f.check_continuity().unwrap().is_empty());
    }

    #[test]
    fn min_of_three_in_plane() {
        let c = WeightedComplex::unweighted(2, vec![Polyhedron::whole_space(2)]).unwrap();
        let phi = TropicalExpr::new(TropKind::Min, vec![lin(&[1, 0], 0), lin(&[0, 1], 0), lin(&[0, 0], 0)]).unwrap();
        let (c2, f) = subdivide_subordinate(&c, &phi).unwrap();
        assert_eq!(c2.cells().len(), 3);
        let rays: Vec<_> = c2.face_closure().into_iter().filter(|p| p.dim() == 1).collect();
        assert_eq!(rays.len(), 3);
        assert_eq!(f.trop_eval(&vector(&[3, 5])).unwrap(), int(0));
        assert_eq!(phi.eval(&vector(&[3, 5])), int(0));
    }

    #[test]
    fn affine_leaves_complex() {
        let c = WeightedComplex::unweighted(2, vec![Polyhedron::cube(2, &int(0), &int(1))]).unwrap();
        let phi = TropicalExpr::new(TropKind::Min, vec![lin(&[1, 2], 3)]).unwrap();
        let (c2, _) = subdivide_subordinate(&c, &phi).unwrap();
        assert_eq!(c2.cells(), c.cells());
    }

    #[test]
    fn min_x1_x2_value() {
        let phi = TropicalExpr::new(TropKind::Min, vec![lin(&[1, 0], 0), lin(&[0, 1], 0)]).unwrap();
        assert_eq!(phi.eval(&vector(&[3, 5])), int(3));
    }
}
