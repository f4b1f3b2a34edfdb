use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactlin::matrix::det;
use crate::exactlin::rat::{factorial, sub, zeros};
use crate::exactlin::{Polyhedron, Rat, Vector};
use crate::superforms::Poly;

/// Which vertex is pulled first when triangulating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexRule {
    First,
    Last,
}

/// Pulling triangulation of a bounded polytope; simplices are vertex lists.
pub fn triangulate(p: &Polyhedron, rule: ApexRule) -> Result<Vec<Vec<Vector>>> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if p.dim() == 0 {
        return Ok(vec![vec![p.vertices()[0].clone()]]);
    }
    let apex = match rule {
        ApexRule::First => p.vertices().first(),
        ApexRule::Last => p.vertices().last(),
    }
    .expect("nonempty")
    .clone();
    let mut out = Vec::new();
    for f in p.facets() {
        if f.contains(&apex) {
            continue;
        }
        for mut s in triangulate(f, rule)? {
            s.push(apex.clone());
            out.push(s);
        }
    }
    Ok(out)
}

/// `|det(v_1 - v_0, …, v_d - v_0)|` for a full-dimensional simplex in `ℝ^d`.
pub fn simplex_det(s: &[Vector]) -> Rat {
    let rows: Vec<Vector> = s[1..].iter().map(|v| sub(v, &s[0])).collect();
    det(&rows).abs()
}

/// Exact `∫_S f dt` over a full-dimensional simplex `S ⊂ ℝ^d`.
///
/// Uses barycentric coordinates: `∫_S λ^a = |det| · Π a_i! / (d + |a|)!`.
pub fn integrate_simplex(f: &Poly, s: &[Vector]) -> Rat {
    let d = s.len() - 1;
    let vol = simplex_det(s);
    let l: Vec<Vector> = (0..d).map(|k| s.iter().map(|v| v[k].clone()).collect()).collect();
    let g = f.affine_substitute(&l, &zeros(d), d + 1);
    let mut total = Rat::from_integer(0.into());
    for (e, c) in g.terms() {
        let deg: usize = e.iter().map(|&k| k as usize).sum();
        let num = e.iter().fold(num_bigint::BigInt::from(1), |acc, &k| acc * factorial(k as usize));
        total += c * Rat::new(num, factorial(d + deg));
    }
    total * vol
}

/// Exact `∫_P f dt` over a full-dimensional bounded polytope `P ⊂ ℝ^d`.
pub fn integrate_polytope(f: &Poly, p: &Polyhedron, rule: ApexRule) -> Result<(Rat, Vec<Vec<Vector>>)> {
    if p.dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: p.dim() });
    }
    let simplices = triangulate(p, rule)?;
    let mut total = Rat::from_integer(0.into());
    for s in &simplices {
        total += integrate_simplex(f, s);
    }
    Ok((total, simplices))
}
