use super::matrix::{det, mat_mul, mat_vec};
use super::rat::{add, Rat, Vector};
use crate::error::{Error, Result};

/// `x ↦ A x + c` from `ℝⁿ` to `ℝᵐ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    matrix: Vec<Vector>,
    offset: Vector,
    source: usize,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vector>, offset: Vector, source: usize) -> Result<Self> {
        if matrix.len() != offset.len() {
            return Err(Error::DimensionMismatch { expected: offset.len(), found: matrix.len() });
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != source) {
            return Err(Error::DimensionMismatch { expected: source, found: r.len() });
        }
        Ok(AffineMap { matrix, offset, source })
    }

    pub fn linear(matrix: Vec<Vector>, source: usize) -> Result<Self> {
        let m = matrix.len();
        Self::new(matrix, super::rat::zeros(m), source)
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { matrix: super::matrix::identity(n), offset: super::rat::zeros(n), source: n }
    }

    /// Projection onto the listed coordinates.
    pub fn projection(n: usize, coords: &[usize]) -> Self {
        let matrix = coords.iter().map(|&i| super::rat::unit(n, i)).collect();
        AffineMap { matrix, offset: super::rat::zeros(coords.len()), source: n }
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rat] {
        &self.offset
    }

    pub fn apply(&self, x: &[Rat]) -> Vector {
        add(&mat_vec(&self.matrix, x), &self.offset)
    }

    pub fn apply_linear(&self, v: &[Rat]) -> Vector {
        mat_vec(&self.matrix, v)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        if inner.target_dim() != self.source {
            return Err(Error::DimensionMismatch { expected: self.source, found: inner.target_dim() });
        }
        Ok(AffineMap {
            matrix: mat_mul(&self.matrix, &inner.matrix, inner.source),
            offset: self.apply(&inner.offset),
            source: inner.source,
        })
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.source != self.target_dim() {
            return Err(Error::DimensionMismatch { expected: self.source, found: self.target_dim() });
        }
        Ok(det(&self.matrix))
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = super::matrix::inverse(&self.matrix).ok_or(Error::Singular)?;
        let off = mat_vec(&inv, &self.offset).into_iter().map(|x| -x).collect();
        Ok(AffineMap { matrix: inv, offset: off, source: self.source })
    }
}
