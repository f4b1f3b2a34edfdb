use super::current::{PolyhedralCurrent, Summand};
use crate::error::{Error, Result};
use crate::exactlin::{AffineMap, Polyhedron, Rat, Vector, Weight};
use crate::integrate::push_cell;

/// A map that is affine on each of finitely many polyhedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlMap {
    source: usize,
    target: usize,
    pieces: Vec<(Polyhedron, AffineMap)>,
}

impl PwlMap {
    pub fn new(source: usize, target: usize, pieces: Vec<(Polyhedron, AffineMap)>) -> Result<Self> {
        for (p, f) in &pieces {
            if p.ambient_dim() != source || f.source_dim() != source {
                return Err(Error::DimensionMismatch { expected: source, found: f.source_dim() });
            }
            if f.target_dim() != target {
                return Err(Error::DimensionMismatch { expected: target, found: f.target_dim() });
            }
        }
        Ok(PwlMap { source, target, pieces })
    }

    /// A globally affine map.
    pub fn affine(f: AffineMap) -> Self {
        PwlMap { source: f.source_dim(), target: f.target_dim(), pieces: vec![(Polyhedron::whole_space(f.source_dim()), f)] }
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn pieces(&self) -> &[(Polyhedron, AffineMap)] {
        &self.pieces
    }

    pub fn piece_cells(&self) -> Vec<Polyhedron> {
        self.pieces.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Affine expression valid on all of `cell`.
    pub fn map_on(&self, cell: &Polyhedron) -> Option<&AffineMap> {
        self.pieces.iter().find(|(p, _)| p.contains_polyhedron(cell)).map(|(_, f)| f)
    }

    pub fn apply(&self, x: &[Rat]) -> Result<Vector> {
        self.pieces.iter().find(|(p, _)| p.contains(x)).map(|(_, f)| f.apply(x)).ok_or(Error::OutsideSupport)
    }

    /// `self ∘ inner`, defined on the refinement of `inner`'s pieces by preimages of `self`'s pieces.
    pub fn compose(&self, inner: &PwlMap) -> Result<PwlMap> {
        let mut pieces = Vec::new();
        for (p, g) in &inner.pieces {
            for (q, f) in &self.pieces {
                if let Some(r) = p.preimage_within(g, q)? {
                    if r.dim() == p.dim() {
                        pieces.push((r, f.compose(g)?));
                    }
                }
            }
        }
        PwlMap::new(inner.source, self.target, pieces)
    }
}

/// `f_* T` cell by cell via fiber integration; image cells get lattice weights.
pub fn push_forward(t: &PolyhedralCurrent, f: &PwlMap) -> Result<PolyhedralCurrent> {
    push_forward_with(t, f, Weight::lattice_of)
}

/// `f_* T` with the weights of image cells chosen by `image_weight`.
pub fn push_forward_with(t: &PolyhedralCurrent, f: &PwlMap, image_weight: impl Fn(&Polyhedron) -> Weight) -> Result<PolyhedralCurrent> {
    if t.ambient_dim() != f.source_dim() {
        return Err(Error::DimensionMismatch { expected: f.source_dim(), found: t.ambient_dim() });
    }
    let t = t.normalize_with(&f.piece_cells())?;
    let mut out = Vec::new();
    for (i, s) in t.summands().iter().enumerate() {
        let g = f.map_on(&s.cell).ok_or(Error::OutsideSupport)?;
        let image = s.cell.image(g)?;
        let nu = image_weight(&image);
        let pieces = push_cell(&s.form, &s.cell, &s.weight, g, &nu)
            .map_err(|e| Error::UnsupportedCoefficientShape(format!("summand {i} on {:?}: {e}", s.cell)))?;
        for p in pieces {
            out.push(Summand::new(p.chamber, nu.clone(), p.form)?);
        }
    }
    PolyhedralCurrent::new(f.target_dim(), out)?.normalize()
}
