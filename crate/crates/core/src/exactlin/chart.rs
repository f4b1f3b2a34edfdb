use num_traits::Zero;

use super::matrix::rref;
use super::rat::{axpy, sub, Rat, Vector};
use crate::error::{Error, Result};

/// Canonical affine coordinates on an affine subspace.
///
/// The direction space has a reduced echelon basis `b_k` with pivot columns `p_k`;
/// the origin vanishes at the pivot columns, so the local coordinate `t_k` of a point
/// `x` is simply `x[p_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineChart {
    origin: Vector,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl AffineChart {
    pub fn new(point: &[Rat], directions: &[Vector]) -> Self {
        let n = point.len();
        let (basis, pivots) = rref(directions, n);
        let mut origin = point.to_vec();
        for (b, &p) in basis.iter().zip(&pivots) {
            let c = -origin[p].clone();
            origin = axpy(&origin, &c, b);
        }
        AffineChart { origin, basis, pivots }
    }

    /// Standard coordinates on `ℝⁿ`.
    pub fn ambient(n: usize) -> Self {
        AffineChart::new(&super::rat::zeros(n), &super::matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn origin(&self) -> &[Rat] {
        &self.origin
    }

    pub fn contains_direction(&self, v: &[Rat]) -> bool {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = -r[p].clone();
            r = axpy(&r, &c, b);
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.contains_direction(&sub(x, &self.origin))
    }

    /// Local coordinates of a direction in `N_σ`.
    pub fn direction_coords(&self, v: &[Rat]) -> Result<Vector> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: v.len() });
        }
        if !self.contains_direction(v) {
            return Err(Error::NotInSpan);
        }
        Ok(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Local coordinates of a point of the affine hull.
    pub fn coords(&self, x: &[Rat]) -> Result<Vector> {
        if !self.contains_point(x) {
            return Err(Error::NotInSpan);
        }
        Ok(self.pivots.iter().map(|&p| x[p].clone()).collect())
    }

    pub fn point(&self, t: &[Rat]) -> Vector {
        let mut x = self.origin.clone();
        for (c, b) in t.iter().zip(&self.basis) {
            x = axpy(&x, c, b);
        }
        x
    }

    pub fn direction(&self, t: &[Rat]) -> Vector {
        let mut x = super::rat::zeros(self.ambient_dim());
        for (c, b) in t.iter().zip(&self.basis) {
            x = axpy(&x, c, b);
        }
        x
    }

    pub fn contains_chart(&self, o: &AffineChart) -> bool {
        self.contains_point(&o.origin) && o.basis.iter().all(|b| self.contains_direction(b))
    }
}
