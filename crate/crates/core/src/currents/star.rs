use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactlin::matrix::solve;
use crate::exactlin::rat::{dot, sub};
use crate::exactlin::{normal_vector, Polyhedron, Vector, Weight};

use super::current::Summand;

/// Facets of the given cells, each with the indices of the cells containing it.
pub(crate) fn facet_stars(summands: &[Summand]) -> BTreeMap<Polyhedron, Vec<usize>> {
    let mut out: BTreeMap<Polyhedron, Vec<usize>> = BTreeMap::new();
    for (i, s) in summands.iter().enumerate() {
        for f in s.cell.facets() {
            out.entry(f.clone()).or_default().push(i);
        }
    }
    out
}

/// Normal vector of `τ` in `σ` with its component along `N_τ` removed.
pub(crate) fn orthogonal_normal(sigma: &Polyhedron, mu: &Weight, tau: &Polyhedron, nu: &Weight) -> Result<Vector> {
    let n = normal_vector(sigma, mu, tau, nu)?;
    let b = tau.span_basis();
    if b.is_empty() {
        return Ok(n);
    }
    let k = b.len();
    let gram: Vec<Vector> = b.iter().map(|u| b.iter().map(|v| dot(u, v)).collect()).collect();
    let rhs: Vector = b.iter().map(|u| dot(u, &n)).collect();
    let c = solve(&gram, &rhs, k).expect("Gram matrix of a basis is invertible");
    let mut proj = vec![num_traits::Zero::zero(); n.len()];
    for (ci, u) in c.iter().zip(&b) {
        proj = crate::exactlin::rat::axpy(&proj, ci, u);
    }
    Ok(sub(&n, &proj))
}
