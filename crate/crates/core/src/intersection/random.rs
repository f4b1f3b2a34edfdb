use num_traits::Signed;
use rand::Rng;

use crate::complexes::{subdivide_subordinate, LinearStructure, PwlFunction, TropKind, TropicalExpr, WeightedComplex};
use crate::currents::{corner_locus, TropicalCycle};
use crate::error::Result;
use crate::exactlin::rat::dot;
use crate::exactlin::{AffineFunctional, Polyhedron, Rat, Vector, Weight};

pub use crate::exactlin::random::random_rat;

fn int_vec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// `max_m (c_m + ⟨m, x⟩)` on `ℝⁿ` with the given exponents.
pub fn tropical_polynomial(kind: TropKind, exponents: &[Vector], coefficients: &[Rat]) -> Result<PwlFunction> {
    let n = exponents[0].len();
    let terms = exponents.iter().zip(coefficients).map(|(m, c)| AffineFunctional::new(m.clone(), c.clone())).collect();
    let c = WeightedComplex::unweighted(n, vec![Polyhedron::whole_space(n)])?;
    Ok(subdivide_subordinate(&c, &TropicalExpr::new(kind, terms)?)?.1)
}

/// `div(φ)` on `[ℝⁿ, std]`.
pub fn hypersurface(phi: &PwlFunction) -> Result<TropicalCycle> {
    let n = phi.pieces()[0].0.ambient_dim();
    let plane = TropicalCycle::new(n, vec![(Polyhedron::whole_space(n), Weight::standard(n))])?;
    corner_locus(phi, &plane, &LinearStructure::affine(n))
}

fn degree_exponents(d: usize) -> Vec<Vector> {
    let d = d as i64;
    (0..=d).flat_map(|i| (0..=d - i).map(move |j| int_vec(&[i, j]))).collect()
}

/// Max-convention plane curve of degree `d` with random rational coefficients.
pub fn random_curve<R: Rng>(rng: &mut R, d: usize) -> Result<TropicalCycle> {
    let exps = degree_exponents(d);
    let coeffs: Vec<Rat> = exps.iter().map(|_| random_rat(rng, 12, 3)).collect();
    hypersurface(&tropical_polynomial(TropKind::Max, &exps, &coeffs)?)
}

/// Plane curve whose rays all have a negative coordinate, so its first-quadrant part is bounded.
///
/// The exponents are the degree-`d` triangle under `m ↦ −(m₁ + 2m₂, 2m₁ + m₂)`, which turns the
/// ray directions into `(−1, 2)`, `(2, −1)` and `(−1, −1)`.
pub fn random_quadrant_curve<R: Rng>(rng: &mut R, d: usize) -> Result<TropicalCycle> {
    let exps: Vec<Vector> = degree_exponents(d)
        .iter()
        .map(|m| vec![-(&m[0] + &m[1] * Rat::from_integer(2.into())), -(&m[0] * Rat::from_integer(2.into()) + &m[1])])
        .collect();
    let shift = vec![random_rat(rng, 4, 2).abs(), random_rat(rng, 4, 2).abs()];
    let coeffs: Vec<Rat> = exps.iter().map(|m| random_rat(rng, 6, 2) - dot(m, &shift)).collect();
    hypersurface(&tropical_polynomial(TropKind::Max, &exps, &coeffs)?)
}

/// Random exponent vectors in `[−b, b]ⁿ`, at least two distinct.
pub fn random_exponents<R: Rng>(rng: &mut R, n: usize, count: usize, b: i64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    while out.len() < count.max(2) {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
        let v = int_vec(&v);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Balanced 2-dimensional fan in `ℝ³`: the corner locus of a random homogeneous max of linear forms.
pub fn random_fan_surface<R: Rng>(rng: &mut R, terms: usize) -> Result<TropicalCycle> {
    loop {
        let exps = random_exponents(rng, 3, terms, 2);
        let zeros = vec![Rat::from_integer(0.into()); exps.len()];
        let s = hypersurface(&tropical_polynomial(TropKind::Max, &exps, &zeros)?)?;
        if !s.current().summands().is_empty() {
            return Ok(s);
        }
    }
}

/// Random piecewise affine function: a max of affine functions with random data.
pub fn random_pwl<R: Rng>(rng: &mut R, n: usize, terms: usize) -> Result<PwlFunction> {
    let exps = random_exponents(rng, n, terms, 2);
    let coeffs: Vec<Rat> = exps.iter().map(|_| random_rat(rng, 3, 2)).collect();
    let kind = if rng.gen_bool(0.5) { TropKind::Max } else { TropKind::Min };
    tropical_polynomial(kind, &exps, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::check_balanced;
    use crate::exactlin::Weight;
    use crate::intersection::stable_intersect;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn curves_are_balanced_and_of_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=2 {
            let c = random_curve(&mut rng, d).unwrap();
            assert!(check_balanced(c.current(), &LinearStructure::affine(2)).unwrap().balanced);
            let line = TropicalCycle::new(2, vec![(Polyhedron::whole_space(2), Weight::standard(2))]).unwrap();
            assert!(stable_intersect(&line, &c).unwrap().cycle.equals(&c).unwrap());
        }
    }

    #[test]
    fn fan_surface_is_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_fan_surface(&mut rng, 4).unwrap();
        assert!(check_balanced(s.current(), &LinearStructure::affine(3)).unwrap().balanced);
    }
}
