use rand::Rng;

use super::form::Form;
use super::poly::Poly;
use crate::exactlin::random::random_rat;

/// Polynomial in `nvars` variables of total degree `≤ deg` with a few random terms.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, deg: u32) -> Poly {
    let count = rng.gen_range(1..=4);
    Poly::from_terms(
        nvars,
        (0..count).map(|_| {
            let mut e = vec![0u32; nvars];
            let mut left = rng.gen_range(0..=deg);
            while left > 0 && nvars > 0 {
                e[rng.gen_range(0..nvars)] += 1;
                left -= 1;
            }
            (e, random_rat(rng, 3, 2))
        }),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Form of bidegree `(p, q)` on `ℝ^dim` with random polynomial coefficients of degree `≤ deg`.
pub fn random_form<R: Rng>(rng: &mut R, dim: usize, p: usize, q: usize, deg: u32) -> Form {
    let mut out = Form::zero(dim);
    for a in subsets(dim, p) {
        for b in subsets(dim, q) {
            if rng.gen_bool(0.7) {
                out = out.add(&Form::term(dim, &a, &b, random_poly(rng, dim, deg)));
            }
        }
    }
    out
}
