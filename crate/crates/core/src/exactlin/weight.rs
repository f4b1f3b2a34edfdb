use num_traits::{One, Signed, Zero};

use super::matrix::{det, rank, relative_volume};
use super::polyhedron::Polyhedron;
use super::rat::{content, sub, Rat, Vector};
use crate::error::{Error, Result};

/// `scale · (b_1 ∧ … ∧ b_d)` up to sign: a generator of `det N_σ`.
#[derive(Clone, Debug)]
pub struct Weight {
    basis: Vec<Vector>,
    scale: Rat,
}

impl Weight {
    pub fn new(basis: Vec<Vector>, scale: Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        if let Some(n) = basis.first().map(Vec::len) {
            if let Some(v) = basis.iter().find(|v| v.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if rank(&basis, n) != basis.len() {
                return Err(Error::LinearlyDependent);
            }
        }
        Ok(Weight { basis, scale })
    }

    /// Weight of a point.
    pub fn point(scale: Rat) -> Result<Self> {
        Self::new(Vec::new(), scale)
    }

    pub fn unit_point() -> Self {
        Weight { basis: Vec::new(), scale: Rat::one() }
    }

    /// `e_1 ∧ … ∧ e_n`
    pub fn standard(n: usize) -> Self {
        Weight { basis: super::matrix::identity(n), scale: Rat::one() }
    }

    /// The lattice-normalized weight of the span of `basis`: the wedge of a basis of `N ∩ ℤⁿ`.
    pub fn lattice(basis: &[Vector]) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Ok(Self::unit_point());
        }
        let n = basis[0].len();
        if rank(basis, n) != d {
            return Err(Error::LinearlyDependent);
        }
        let minors = plucker(basis, n);
        let c = content(&minors);
        Self::new(basis.to_vec(), c.recip())
    }

    /// Lattice weight of the span of a polyhedron.
    pub fn lattice_of(p: &Polyhedron) -> Self {
        Self::lattice(p.chart().basis()).expect("chart basis is independent")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// `λ` with `self = ±λ · (v_1 ∧ … ∧ v_d)`.
    pub fn scalar_wrt(&self, vectors: &[Vector]) -> Result<Rat> {
        if self.basis.is_empty() && vectors.is_empty() {
            return Ok(self.scale.clone());
        }
        let v = relative_volume(&self.basis, vectors)?;
        if v.is_zero() {
            return Err(Error::NotInSpan);
        }
        Ok(&self.scale * v)
    }

    /// `λ` with `self = λ · other`, both on the same space.
    pub fn ratio_to(&self, other: &Weight) -> Result<Rat> {
        Ok(self.scalar_wrt(&other.basis)? / &other.scale)
    }

    /// Does the span of the weight equal the span of `vectors`?
    pub fn spans(&self, vectors: &[Vector]) -> bool {
        if self.basis.len() != vectors.len() {
            return false;
        }
        if vectors.is_empty() {
            return true;
        }
        let n = vectors[0].len();
        let mut all = self.basis.clone();
        all.extend(vectors.iter().cloned());
        rank(&all, n) == vectors.len()
    }

    pub fn scaled(&self, factor: &Rat) -> Result<Self> {
        Self::new(self.basis.clone(), &self.scale * factor.abs())
    }

    /// Wedge product `self ∧ other`; the spans must be complementary.
    pub fn wedge(&self, other: &Weight) -> Result<Self> {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        Self::new(basis, &self.scale * &other.scale)
    }

    /// Same weight with the basis replaced by the reduced echelon basis of its span.
    pub fn normalized(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let n = self.basis[0].len();
        let b = super::matrix::span_basis(&self.basis, n);
        let s = self.scalar_wrt(&b).expect("same span");
        Weight { basis: b, scale: s }
    }
}

impl PartialEq for Weight {
    fn eq(&self, o: &Self) -> bool {
        self.spans(&o.basis) && o.scalar_wrt(&self.basis).map(|s| s == self.scale).unwrap_or(false)
    }
}

impl Eq for Weight {}

/// All maximal minors of the `d × n` matrix with the given rows.
pub fn plucker(rows: &[Vector], n: usize) -> Vec<Rat> {
    let d = rows.len();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..d).collect();
    if d > n {
        return out;
    }
    loop {
        let m: Vec<Vector> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        out.push(det(&m));
        let mut i = d;
        while i > 0 && cols[i - 1] == n - d + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cols[i - 1] += 1;
        for j in i..d {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// `n` with `μ_σ = ±(μ_τ ∧ n)` pointing from `τ` into `σ`.
pub fn normal_vector(sigma: &Polyhedron, mu_sigma: &Weight, tau: &Polyhedron, mu_tau: &Weight) -> Result<Vector> {
    if tau.dim() + 1 != sigma.dim() || !tau.is_face_of(sigma) {
        return Err(Error::NotAFacet);
    }
    let n0 = sub(&sigma.relint_point(), &tau.relint_point());
    let mut b = mu_tau.basis().to_vec();
    b.push(n0.clone());
    let lambda = mu_sigma.scalar_wrt(&b)?;
    let c = lambda / mu_tau.scale();
    Ok(n0.iter().map(|x| x * &c).collect())
}

/// Index of the lattice `ℤⁿ ∩ span` relative to the lattice generated by `basis`, as a rational.
pub fn lattice_index(basis: &[Vector]) -> Result<Rat> {
    let w = Weight::lattice(basis)?;
    w.scalar_wrt(basis).map(|s| s.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::rank;
    use crate::exactlin::rat::{int, rat, vector};
    use crate::exactlin::polyhedron::AffineFunctional;

    #[test]
    fn lattice_weight_of_line() {
        let w = Weight::lattice(&[vec![int(1), rat(-1, 2)]]).unwrap();
        assert_eq!(w, Weight::new(vec![vector(&[2, -1])], int(1)).unwrap());
        assert_eq!(w, Weight::new(vec![vector(&[-4, 2])], rat(1, 2)).unwrap());
        assert_ne!(w, Weight::new(vec![vector(&[2, -1])], int(2)).unwrap());
    }

    #[test]
    fn unit_segment_normal() {
        let s = Polyhedron::segment(vector(&[0]), vector(&[1]));
        let t = Polyhedron::point(vector(&[0]));
        let n = normal_vector(&s, &Weight::standard(1), &t, &Weight::unit_point()).unwrap();
        assert_eq!(n, vector(&[1]));
    }

    fn half_plane(a: Vector) -> Polyhedron {
        Polyhedron::from_constraints(2, &[AffineFunctional::new(a, int(0))], &[]).unwrap().unwrap()
    }

    #[test]
    fn diagonal_normals() {
        let diag = Polyhedron::from_generators(2, &[vector(&[0, 0])], &[], &[vector(&[1, 1])]).unwrap();
        let mu_t = Weight::new(vec![vector(&[1, 1])], int(1)).unwrap();
        let upper = half_plane(vector(&[-1, 1]));
        let n = normal_vector(&upper, &Weight::standard(2), &diag, &mu_t).unwrap();
        assert_eq!(rank(&[sub(&n, &vector(&[0, 1])), vector(&[1, 1])], 2), 1);
        let lower = half_plane(vector(&[1, -1]));
        let n = normal_vector(&lower, &Weight::standard(2), &diag, &mu_t).unwrap();
        assert_eq!(rank(&[sub(&n, &vector(&[1, 0])), vector(&[1, 1])], 2), 1);
    }

    #[test]
    fn not_a_facet() {
        let s = Polyhedron::cube(2, &int(0), &int(1));
        let v = Polyhedron::point(vector(&[0, 0]));
        assert_eq!(normal_vector(&s, &Weight::standard(2), &v, &Weight::unit_point()), Err(Error::NotAFacet));
    }

    #[test]
    fn plucker_minors() {
        let m = plucker(&[vector(&[1, 0, 2]), vector(&[0, 1, 3])], 3);
        assert_eq!(m, vec![int(1), int(3), int(-2)]);
    }
}
