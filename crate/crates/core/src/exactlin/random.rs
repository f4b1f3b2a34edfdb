use num_traits::Zero;
use rand::Rng;

use super::map::AffineMap;
use super::matrix::det;
use super::polyhedron::Polyhedron;
use super::rat::zeros;
use super::{Rat, Vector};

/// Rational `p/q` with `|p| ≤ bound·q` and `q ∈ 1..=den`.
pub fn random_rat<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Rat {
    let q = rng.gen_range(1..=den);
    Rat::new(rng.gen_range(-bound * q..=bound * q).into(), q.into())
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64, den: i64) -> Vector {
    (0..n).map(|_| random_rat(rng, bound, den)).collect()
}

/// Nondegenerate `dim`-simplex in `ℝ^ambient` with small rational vertices.
pub fn random_simplex<R: Rng>(rng: &mut R, ambient: usize, dim: usize) -> Polyhedron {
    loop {
        let pts: Vec<Vector> = (0..=dim).map(|_| random_vector(rng, ambient, 3, 2)).collect();
        let p = Polyhedron::polytope(&pts).expect("nonempty point set");
        if p.dim() == dim && p.vertices().len() == dim + 1 {
            return p;
        }
    }
}

/// Invertible affine map of `ℝⁿ` with small integer matrix and rational offset.
pub fn random_automorphism<R: Rng>(rng: &mut R, n: usize) -> AffineMap {
    loop {
        let m: Vec<Vector> = (0..n).map(|_| random_vector(rng, n, 2, 1)).collect();
        if !det(&m).is_zero() {
            let offset = if rng.gen_bool(0.5) { random_vector(rng, n, 2, 2) } else { zeros(n) };
            return AffineMap::new(m, offset, n).expect("square matrix");
        }
    }
}
