use std::collections::BTreeSet;

use num_traits::Zero;

use super::simplex::{integrate_simplex, triangulate, ApexRule};
use crate::error::{Error, Result};
use crate::exactlin::matrix::{rank, solve};
use crate::exactlin::rat::{dot, primitive_line, sub, unit, zeros};
use crate::exactlin::{AffineChart, AffineFunctional, AffineMap, Polyhedron, Rat, Vector, Weight};
use crate::superforms::{Form, Poly, Side, SuperForm};

/// A chamber of the image together with the pushed form on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushedPiece {
    pub chamber: Polyhedron,
    pub form: SuperForm,
}

/// Fiber integral of `α` along `f|_σ` with respect to the fiber weight `δ` on `ker(f) ∩ N_σ`.
///
/// Returns the pieces of a piecewise polynomial form on `f(σ)`; fibers of dimension below
/// `dim ker` contribute zero and so do components of `α` that are not of top fiber degree.
pub fn fiber_integrate(alpha: &SuperForm, sigma: &Polyhedron, f: &AffineMap, delta: &Weight) -> Result<Vec<PushedPiece>> {
    let scale = delta.scale().clone();
    push_core(alpha, sigma, f, delta.basis(), move |_| Ok(scale.clone()))
}

/// `f_*(α ∧ [σ, μ])` written as forms relative to the weight `ν` on `f(σ)`.
pub fn push_cell(alpha: &SuperForm, sigma: &Polyhedron, mu: &Weight, f: &AffineMap, nu: &Weight) -> Result<Vec<PushedPiece>> {
    let chart = sigma.chart();
    let ichart = sigma.image(f)?.chart();
    let images: Vec<Vector> = chart.basis().iter().map(|b| f.apply_linear(b)).collect();
    let p = linear_part(&images, &ichart);
    let kernel: Vec<Vector> =
        crate::exactlin::matrix::kernel(&p, chart.dim()).iter().map(|c| chart.direction(c)).collect();
    let nu_u = nu.scalar_wrt(ichart.basis())?;
    let kernel_for_factor = kernel.clone();
    push_core(alpha, sigma, f, &kernel, move |r| {
        let mut b = r.to_vec();
        b.extend(kernel_for_factor.iter().cloned());
        Ok(mu.scalar_wrt(&b)? / &nu_u)
    })
}

/// Matrix of `f` in chart coordinates: rows indexed by the image pivots.
fn linear_part(images: &[Vector], ichart: &AffineChart) -> Vec<Vector> {
    ichart.pivots().iter().map(|&p| images.iter().map(|v| v[p].clone()).collect()).collect()
}

struct FiberTerm {
    base_mask: u64,
    coeff: Poly,
}

fn push_core(
    alpha: &SuperForm,
    sigma: &Polyhedron,
    f: &AffineMap,
    kernel: &[Vector],
    factor: impl Fn(&[Vector]) -> Result<Rat>,
) -> Result<Vec<PushedPiece>> {
    let chart = sigma.chart();
    let alpha = if alpha.chart() == &chart { alpha.clone() } else { alpha.restrict(&chart)? };
    let k = chart.dim();
    let image = sigma.image(f)?;
    let ichart = image.chart();
    let m = ichart.dim();
    let d = k - m;
    if kernel.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: kernel.len() });
    }
    let images: Vec<Vector> = chart.basis().iter().map(|b| f.apply_linear(b)).collect();
    let p = linear_part(&images, &ichart);
    let origin_img = f.apply(chart.origin());
    let u0: Vector = ichart.pivots().iter().map(|&i| origin_img[i].clone()).collect();
    let rcols: Vec<Vector> = (0..m).map(|i| solve(&p, &unit(m, i), k).expect("surjective onto image")).collect();
    let kcols: Vec<Vector> = kernel.iter().map(|v| chart.direction_coords(v)).collect::<Result<_>>()?;
    if kcols.iter().any(|c| p.iter().any(|row| !dot(row, c).is_zero())) {
        return Err(Error::NotInSpan);
    }
    let mut all = rcols.clone();
    all.extend(kcols.iter().cloned());
    if rank(&all, k) != k {
        return Err(Error::LinearlyDependent);
    }
    let r_amb: Vec<Vector> = rcols.iter().map(|c| chart.direction(c)).collect();
    let fac = factor(&r_amb)?;
    // s = R (u - u0) + K κ
    let l: Vec<Vector> = (0..k)
        .map(|j| rcols.iter().map(|c| c[j].clone()).chain(kcols.iter().map(|c| c[j].clone())).collect())
        .collect();
    let off: Vector = (0..k).map(|j| -rcols.iter().zip(&u0).fold(Rat::zero(), |acc, (c, u)| acc + &c[j] * u)).collect();
    let a2 = alpha.form().pullback_affine(&l, &off, k);

    let mut kappa_mask = 0u64;
    let mut fiber_top = Form::one(k);
    for j in m..k {
        kappa_mask |= 1 << j | 1 << (k + j);
        fiber_top = fiber_top.wedge(&Form::basis_one_form(k, j, Side::Prime)).wedge(&Form::basis_one_form(k, j, Side::DoublePrime));
    }
    let mut terms = Vec::new();
    for (&mask, c) in a2.terms() {
        if mask & kappa_mask != kappa_mask {
            continue;
        }
        let base = mask & !kappa_mask;
        let mut unit_base = Form::one(k);
        for bit in 0..2 * k {
            if base >> bit & 1 == 1 {
                let side = if bit < k { Side::Prime } else { Side::DoublePrime };
                unit_base = unit_base.wedge(&Form::basis_one_form(k, bit % k, side));
            }
        }
        let prod = fiber_top.wedge(&unit_base);
        let eps = prod.terms().next().map(|(_, s)| s.constant_term()).expect("nonzero monomial");
        let mut base_m = 0u64;
        for i in 0..m {
            if base >> i & 1 == 1 {
                base_m |= 1 << i;
            }
            if base >> (k + i) & 1 == 1 {
                base_m |= 1 << (m + i);
            }
        }
        terms.push(FiberTerm { base_mask: base_m, coeff: c.scale(&(eps * &fac)) });
    }
    if terms.is_empty() {
        return Ok(Vec::new());
    }
    let base_form = |coeffs: &[Poly]| -> Form {
        let mut out = Form::zero(m);
        for (t, c) in terms.iter().zip(coeffs) {
            out = out.add(&monomial_form(m, t.base_mask, c.clone()));
        }
        out
    };
    if d == 0 {
        let form = base_form(&terms.iter().map(|t| t.coeff.clone()).collect::<Vec<_>>());
        return Ok(vec![PushedPiece { chamber: image, form: SuperForm::new(ichart, form)? }]);
    }
    let ker_eqs: Vec<AffineFunctional> = f.matrix().iter().map(|row| AffineFunctional::new(row.clone(), Rat::zero())).collect();
    if let Some(c) = sigma.recession_cone().restrict(&[], &ker_eqs)? {
        if c.dim() > 0 {
            return Err(Error::Unbounded);
        }
    }
    // σ's facets in s-coordinates, then in κ with u as a parameter.
    let facets_s: Vec<(Vector, Rat)> = sigma
        .facet_inequalities()
        .iter()
        .map(|g| (chart.basis().iter().map(|b| dot(&g.a, b)).collect(), g.eval(chart.origin())))
        .collect();
    let degree = terms.iter().map(|t| t.coeff.degree()).max().unwrap_or(0) + d;
    let mut pieces = Vec::new();
    for chamber in chambers(sigma, f, &image)? {
        let samples = lattice_samples(&chamber, &ichart, degree)?;
        let exps = exponents(m, degree);
        let mut rows = Vec::new();
        let mut values: Vec<Vec<Rat>> = vec![Vec::new(); terms.len()];
        for u in &samples {
            rows.push(exps.iter().map(|e| Poly::monomial(e.clone(), Rat::from_integer(1.into())).eval(u)).collect::<Vector>());
            let shift: Vector = (0..k).map(|j| rcols.iter().zip(u).zip(&u0).fold(Rat::zero(), |acc, ((c, ui), u0i)| acc + &c[j] * (ui - u0i))).collect();
            let ineqs: Vec<AffineFunctional> = facets_s
                .iter()
                .map(|(a, b)| AffineFunctional::new(kcols.iter().map(|c| dot(a, c)).collect(), dot(a, &shift) + b))
                .collect();
            let fiber = Polyhedron::from_constraints(d, &ineqs, &[])?.filter(|q| q.dim() == d);
            let simplices = match &fiber {
                Some(q) => triangulate(q, ApexRule::First)?,
                None => Vec::new(),
            };
            let lsub: Vec<Vector> = (0..k).map(|j| if j < m { zeros(d) } else { unit(d, j - m) }).collect();
            let msub: Vector = (0..k).map(|j| if j < m { u[j].clone() } else { Rat::zero() }).collect();
            for (t, vals) in terms.iter().zip(values.iter_mut()) {
                let g = t.coeff.affine_substitute(&lsub, &msub, d);
                vals.push(simplices.iter().fold(Rat::zero(), |acc, s| acc + integrate_simplex(&g, s)));
            }
        }
        let coeffs: Vec<Poly> = values
            .iter()
            .map(|vals| {
                let c = solve(&rows, vals, exps.len()).expect("unisolvent sample");
                Poly::from_terms(m, exps.iter().cloned().zip(c))
            })
            .collect();
        let form = base_form(&coeffs);
        if !form.is_zero() {
            pieces.push(PushedPiece { form: SuperForm::new(chamber.chart(), form)?, chamber });
        }
    }
    Ok(pieces)
}

fn monomial_form(m: usize, mask: u64, c: Poly) -> Form {
    let primes: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
    let dprimes: Vec<usize> = (0..m).filter(|&i| mask >> (m + i) & 1 == 1).collect();
    Form::term(m, &primes, &dprimes, c)
}

/// Exponent vectors of total degree at most `deg` in `m` variables.
fn exponents(m: usize, deg: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=(deg as u32 - used)).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

/// Subdivision of `f(σ)` by the hyperplanes spanned by codimension-one images of faces of `σ`.
fn chambers(sigma: &Polyhedron, f: &AffineMap, image: &Polyhedron) -> Result<Vec<Polyhedron>> {
    let m = image.dim();
    let ichart = image.chart();
    let mut walls: BTreeSet<Vector> = BTreeSet::new();
    for face in sigma.all_faces() {
        let fi = face.image(f)?;
        if fi.dim() + 1 != m {
            continue;
        }
        if let Some(g) = fi.equations().iter().find(|g| ichart.basis().iter().any(|b| !g.linear(b).is_zero())) {
            let mut h = vec![g.b.clone()];
            h.extend(g.a.iter().cloned());
            walls.insert(primitive_line(&h));
        }
    }
    let mut pieces = vec![image.clone()];
    for h in walls {
        let g = AffineFunctional::new(h[1..].to_vec(), h[0].clone());
        pieces = pieces
            .into_iter()
            .flat_map(|p| match p.split(&g) {
                Some((a, b)) => vec![a, b],
                None => vec![p],
            })
            .collect();
    }
    Ok(pieces)
}

/// Principal lattice of degree `deg` on a simplex inside the chamber, in chart coordinates.
fn lattice_samples(chamber: &Polyhedron, ichart: &AffineChart, deg: usize) -> Result<Vec<Vector>> {
    let v0 = chamber.vertices()[0].clone();
    let mut pts: Vec<Vector> = chamber.vertices().to_vec();
    pts.extend(chamber.rays().iter().map(|r| crate::exactlin::rat::add(&v0, r)));
    for l in chamber.lineality() {
        pts.push(crate::exactlin::rat::add(&v0, l));
        pts.push(sub(&v0, l));
    }
    let local: Vec<Vector> = pts.iter().map(|p| ichart.coords(p)).collect::<Result<_>>()?;
    let m = ichart.dim();
    let mut simplex = vec![local[0].clone()];
    for p in &local[1..] {
        if simplex.len() == m + 1 {
            break;
        }
        let mut dirs: Vec<Vector> = simplex[1..].iter().map(|q| sub(q, &simplex[0])).collect();
        dirs.push(sub(p, &simplex[0]));
        if rank(&dirs, m) == dirs.len() {
            simplex.push(p.clone());
        }
    }
    if simplex.len() != m + 1 {
        return Err(Error::Invalid("chamber is not full-dimensional".into()));
    }
    let d = Rat::from_integer((deg as i64).into());
    Ok(exponents(m + 1, deg)
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() as usize == deg)
        .map(|e| {
            let mut u = zeros(m);
            for (a, w) in e.iter().zip(&simplex) {
                let c = Rat::from_integer((*a as i64).into()) / &d;
                u = crate::exactlin::rat::axpy(&u, &c, w);
            }
            u
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat, vector};

    fn scalar_at(pieces: &[PushedPiece], y: &[Rat]) -> Rat {
        let p = pieces.iter().find(|p| p.chamber.contains(y)).expect("inside");
        p.form.eval_scalar(y).unwrap()
    }

    #[test]
    fn square_fiber_length() {
        let sq = Polyhedron::cube(2, &int(0), &int(1));
        let a = SuperForm::on_cell(&sq, &Form::term(2, &[1], &[1], Poly::one(2))).unwrap();
        let f = AffineMap::projection(2, &[0]);
        let delta = Weight::new(vec![vector(&[0, 1])], int(1)).unwrap();
        let pieces = fiber_integrate(&a, &sq, &f, &delta).unwrap();
        assert_eq!(scalar_at(&pieces, &[rat(1, 3)]), int(1));
        assert_eq!(scalar_at(&pieces, &[int(1)]), int(1));
    }

    #[test]
    fn triangle_fiber_length() {
        let t = Polyhedron::polytope(&[vector(&[0, 0]), vector(&[1, 0]), vector(&[1, 1])]).unwrap();
        let a = SuperForm::on_cell(&t, &Form::term(2, &[1], &[1], Poly::one(2))).unwrap();
        let f = AffineMap::projection(2, &[0]);
        let delta = Weight::new(vec![vector(&[0, 1])], int(1)).unwrap();
        let pieces = fiber_integrate(&a, &t, &f, &delta).unwrap();
        for y in [rat(1, 5), rat(1, 2), int(1)] {
            assert_eq!(scalar_at(&pieces, &[y.clone()]), y);
        }
    }

    #[test]
    fn doubling_map() {
        let s = Polyhedron::segment(vector(&[0]), vector(&[1]));
        let a = SuperForm::one(&s.chart());
        let f = AffineMap::linear(vec![vector(&[2])], 1).unwrap();
        let pieces = push_cell(&a, &s, &Weight::standard(1), &f, &Weight::standard(1)).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].chamber, Polyhedron::segment(vector(&[0]), vector(&[2])));
        assert_eq!(pieces[0].form, SuperForm::constant(&pieces[0].chamber.chart(), int(2)));
    }

    #[test]
    fn lower_fiber_degree_vanishes() {
        let sq = Polyhedron::cube(2, &int(0), &int(1));
        let a = SuperForm::on_cell(&sq, &Form::term(2, &[0], &[0], Poly::one(2))).unwrap();
        let f = AffineMap::projection(2, &[0]);
        let delta = Weight::new(vec![vector(&[0, 1])], int(1)).unwrap();
        assert!(fiber_integrate(&a, &sq, &f, &delta).unwrap().is_empty());
    }

    #[test]
    fn polynomial_fiber() {
        // ∫_0^x y^2 dy = x^3 / 3 over the triangle 0 <= y <= x <= 1
        let t = Polyhedron::polytope(&[vector(&[0, 0]), vector(&[1, 0]), vector(&[1, 1])]).unwrap();
        let a = SuperForm::on_cell(&t, &Form::term(2, &[1], &[1], Poly::var(2, 1).pow(2))).unwrap();
        let f = AffineMap::projection(2, &[0]);
        let delta = Weight::new(vec![vector(&[0, 1])], int(1)).unwrap();
        let pieces = fiber_integrate(&a, &t, &f, &delta).unwrap();
        assert_eq!(scalar_at(&pieces, &[rat(1, 2)]), rat(1, 24));
    }
}
