use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::refine::{face_closure, refine_cells};
use crate::error::{Error, Result};
use crate::exactlin::{Polyhedron, Rat, Weight};

pub type CellId = usize;

/// A finite polyhedral complex given by its listed cells; faces of listed cells belong to it implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedComplex {
    ambient: usize,
    cells: Vec<Polyhedron>,
    weights: BTreeMap<CellId, Weight>,
    carriers: BTreeSet<CellId>,
    pure_dim: Option<usize>,
}

/// A failed structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IntersectionNotFace { a: CellId, b: CellId, intersection: Polyhedron },
    WeightMismatch { a: CellId, b: CellId, overlap: Polyhedron },
    WeightSpan { cell: CellId },
    PureDimension { cell: CellId, dim: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IntersectionNotFace { a, b, .. } => write!(f, "intersection-not-a-face: cells {a} and {b}"),
            Violation::WeightMismatch { a, b, .. } => write!(f, "weight mismatch: cells {a} and {b}"),
            Violation::WeightSpan { cell } => write!(f, "weight does not span cell {cell}"),
            Violation::PureDimension { cell, dim, expected } => {
                write!(f, "cell {cell} has dimension {dim}, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl WeightedComplex {
    pub fn new(
        ambient: usize,
        cells: Vec<Polyhedron>,
        weights: BTreeMap<CellId, Weight>,
        carriers: BTreeSet<CellId>,
        pure_dim: Option<usize>,
    ) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: c.ambient_dim() });
        }
        if let Some(&id) = weights.keys().chain(&carriers).find(|&&id| id >= cells.len()) {
            return Err(Error::Invalid(format!("cell id {id} out of range")));
        }
        if let Some(&id) = carriers.iter().find(|id| !weights.contains_key(id)) {
            return Err(Error::MissingWeight(id));
        }
        for (&id, w) in &weights {
            if w.dim() != cells[id].dim() || w.basis().iter().any(|b| b.len() != ambient) {
                return Err(Error::DimensionMismatch { expected: cells[id].dim(), found: w.dim() });
            }
        }
        Ok(WeightedComplex { ambient, cells, weights, carriers, pure_dim })
    }

    /// Every cell is a weighted carrier.
    pub fn from_carriers(ambient: usize, cells: Vec<(Polyhedron, Weight)>) -> Result<Self> {
        let n = cells.len();
        let (polys, ws): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
        Self::new(ambient, polys, ws.into_iter().enumerate().collect(), (0..n).collect(), None)
    }

    pub fn unweighted(ambient: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        Self::new(ambient, cells, BTreeMap::new(), BTreeSet::new(), None)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn weights(&self) -> &BTreeMap<CellId, Weight> {
        &self.weights
    }

    pub fn weight(&self, id: CellId) -> Option<&Weight> {
        self.weights.get(&id)
    }

    pub fn carriers(&self) -> &BTreeSet<CellId> {
        &self.carriers
    }

    pub fn pure_dim(&self) -> Option<usize> {
        self.pure_dim
    }

    pub fn with_pure_dim(mut self, d: Option<usize>) -> Self {
        self.pure_dim = d;
        self
    }

    /// All cells including faces of listed cells.
    pub fn face_closure(&self) -> Vec<Polyhedron> {
        face_closure(&self.cells)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// Weight inherited by a polyhedron from a weighted listed cell of the same dimension containing it.
    pub fn weight_on(&self, p: &Polyhedron) -> Option<Weight> {
        self.weights.iter().find(|(&id, _)| self.cells[id].dim() == p.dim() && self.cells[id].contains_polyhedron(p)).map(|(_, w)| w.clone())
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let mut violations = Vec::new();
        for (&id, w) in &self.weights {
            if !w.spans(&self.cells[id].span_basis()) {
                violations.push(Violation::WeightSpan { cell: id });
            }
        }
        if let Some(d) = self.pure_dim {
            for &id in &self.carriers {
                if self.cells[id].dim() != d {
                    violations.push(Violation::PureDimension { cell: id, dim: self.cells[id].dim(), expected: d });
                }
            }
        }
        for a in 0..self.cells.len() {
            for b in a + 1..self.cells.len() {
                let (p, q) = (&self.cells[a], &self.cells[b]);
                let Some(inter) = p.intersect(q)? else { continue };
                if !(inter.is_face_of(p) && inter.is_face_of(q)) {
                    violations.push(Violation::IntersectionNotFace { a, b, intersection: inter.clone() });
                }
                if let (Some(wa), Some(wb)) = (self.weights.get(&a), self.weights.get(&b)) {
                    if p.dim() == q.dim() && inter.dim() == p.dim() && wa != wb {
                        violations.push(Violation::WeightMismatch { a, b, overlap: inter });
                    }
                }
            }
        }
        Ok(ValidationReport { violations })
    }

    /// Subdivision of `self ∪ other` in which any two cells meet in a common face.
    ///
    /// Weights are inherited from containing carriers, preferring `self`.
    pub fn common_refinement(&self, other: &WeightedComplex) -> Result<WeightedComplex> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let mut all = self.cells.clone();
        all.extend(other.cells.iter().cloned());
        let refined = refine_cells(&all)?;
        let listed: Vec<Polyhedron> = refined
            .iter()
            .filter(|c| {
                self.weight_on(c).is_some()
                    || other.weight_on(c).is_some()
                    || !refined.iter().any(|d| d.dim() > c.dim() && c.is_face_of(d))
            })
            .cloned()
            .collect();
        let mut weights = BTreeMap::new();
        for (id, c) in listed.iter().enumerate() {
            if let Some(w) = self.weight_on(c).or_else(|| other.weight_on(c)) {
                weights.insert(id, w);
            }
        }
        let carriers = weights.keys().copied().collect();
        let pure = if self.pure_dim == other.pure_dim { self.pure_dim } else { None };
        WeightedComplex::new(self.ambient, listed, weights, carriers, pure)
    }

    /// Refinement of the complex against itself.
    pub fn refine(&self) -> Result<WeightedComplex> {
        self.common_refinement(&WeightedComplex::unweighted(self.ambient, Vec::new())?)
    }
}
