use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::chart::AffineChart;
use super::cone::cone_generators;
use super::map::AffineMap;
use super::matrix::{mat_vec, rank, solve, span_basis, transpose};
use super::rat::{add, axpy, dot, int, primitive, scale, sub, zeros, Rat, Vector};
use crate::error::{Error, Result};

/// `a · x + b`, used as `>= 0` (facet) or `= 0` (equation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineFunctional {
    pub a: Vector,
    pub b: Rat,
}

impl AffineFunctional {
    pub fn new(a: Vector, b: Rat) -> Self {
        AffineFunctional { a, b }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.a, x) + &self.b
    }

    pub fn linear(&self, v: &[Rat]) -> Rat {
        dot(&self.a, v)
    }

    pub fn negated(&self) -> Self {
        AffineFunctional { a: self.a.iter().map(|x| -x).collect(), b: -&self.b }
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &AffineMap) -> Self {
        let mt = transpose(f.matrix(), f.source_dim());
        AffineFunctional { a: mat_vec(&mt, &self.a), b: dot(&self.a, f.offset()) + &self.b }
    }

    fn homogenized(&self) -> Vector {
        let mut v = vec![self.b.clone()];
        v.extend(self.a.iter().cloned());
        v
    }

    fn from_homogenized(h: &[Rat]) -> Self {
        AffineFunctional { a: h[1..].to_vec(), b: h[0].clone() }
    }
}

/// Rational polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
///
/// Generators are canonical: lineality in reduced echelon form, vertices and rays
/// projected orthogonally to the lineality space, rays primitive integral, all sorted.
#[derive(Clone)]
pub struct Polyhedron {
    ambient: usize,
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    facets: Vec<AffineFunctional>,
    equations: Vec<AffineFunctional>,
    dim: usize,
    facet_cells: OnceLock<Vec<Polyhedron>>,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[Vector]| -> Vec<Vec<String>> {
            vs.iter().map(|v| v.iter().map(super::rat::format_rat).collect()).collect()
        };
        f.debug_struct("Polyhedron")
            .field("vertices", &show(&self.vertices))
            .field("rays", &show(&self.rays))
            .field("lineality", &show(&self.lineality))
            .finish()
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.lineality == o.lineality && self.vertices == o.vertices && self.rays == o.rays
    }
}

impl Eq for Polyhedron {}

impl Hash for Polyhedron {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.lineality.hash(state);
        self.vertices.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Polyhedron {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.ambient, self.dim, &self.lineality, &self.vertices, &self.rays).cmp(&(
            o.ambient,
            o.dim,
            &o.lineality,
            &o.vertices,
            &o.rays,
        ))
    }
}

fn check_len(vs: &[Vector], n: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch { expected: n, found: v.len() }),
        None => Ok(()),
    }
}

/// Orthogonal projection onto the complement of `span(lin)`.
fn project_off(v: &[Rat], lin: &[Vector]) -> Vector {
    if lin.is_empty() {
        return v.to_vec();
    }
    let gram: Vec<Vector> = lin.iter().map(|a| lin.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: Vector = lin.iter().map(|a| dot(a, v)).collect();
    let c = solve(&gram, &rhs, lin.len()).expect("lineality basis is independent");
    let mut out = v.to_vec();
    for (ci, l) in c.iter().zip(lin) {
        out = axpy(&out, &(-ci.clone()), l);
    }
    out
}

impl Polyhedron {
    /// Builds a polyhedron from generators; at least one point is required.
    pub fn from_generators(ambient: usize, points: &[Vector], rays: &[Vector], lineality: &[Vector]) -> Result<Self> {
        check_len(points, ambient)?;
        check_len(rays, ambient)?;
        check_len(lineality, ambient)?;
        if points.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let lin = span_basis(lineality, ambient);
        let homog = |x0: Rat, v: &Vector| {
            let mut h = vec![x0];
            h.extend(v.iter().cloned());
            h
        };
        let mut gens: Vec<Vector> = points.iter().map(|p| homog(Rat::one(), p)).collect();
        gens.extend(rays.iter().filter(|r| !super::rat::is_zero(r)).map(|r| homog(Rat::zero(), r)));
        let lin_h: Vec<Vector> = lin.iter().map(|l| homog(Rat::zero(), l)).collect();
        let dual = cone_generators(ambient + 1, &gens, &lin_h);
        let equations: Vec<AffineFunctional> =
            dual.lineality.iter().map(|h| AffineFunctional::from_homogenized(&primitive(h))).collect();
        let mut facets: Vec<AffineFunctional> = dual
            .rays
            .iter()
            .map(|h| AffineFunctional::from_homogenized(h))
            .filter(|f| points.iter().any(|p| f.eval(p).is_zero()))
            .collect();
        facets.sort();
        facets.dedup();
        let eq_normals: Vec<Vector> = equations.iter().map(|e| e.a.clone()).collect();
        let mut normals = eq_normals.clone();
        normals.extend(facets.iter().map(|f| f.a.clone()));
        let implicit = if normals.is_empty() { super::matrix::identity(ambient) } else { super::matrix::kernel(&normals, ambient) };
        if implicit.len() > lin.len() {
            return Self::from_generators(ambient, points, rays, &implicit);
        }
        let target = ambient - lin.len();
        let active_rank = |tight: Vec<Vector>| {
            let mut rows = eq_normals.clone();
            rows.extend(tight);
            rank(&rows, ambient)
        };
        let mut verts: BTreeSet<Vector> = BTreeSet::new();
        for p in points {
            let tight: Vec<Vector> = facets.iter().filter(|f| f.eval(p).is_zero()).map(|f| f.a.clone()).collect();
            if active_rank(tight) == target {
                verts.insert(project_off(p, &lin));
            }
        }
        let mut ray_set: BTreeSet<Vector> = BTreeSet::new();
        for r in rays {
            let pr = project_off(r, &lin);
            if super::rat::is_zero(&pr) {
                continue;
            }
            let tight: Vec<Vector> = facets.iter().filter(|f| f.linear(r).is_zero()).map(|f| f.a.clone()).collect();
            if target >= 1 && active_rank(tight) == target - 1 {
                ray_set.insert(primitive(&pr));
            }
        }
        let dim = ambient - equations.len();
        Ok(Polyhedron {
            ambient,
            vertices: verts.into_iter().collect(),
            rays: ray_set.into_iter().collect(),
            lineality: lin,
            facets,
            equations,
            dim,
            facet_cells: OnceLock::new(),
        })
    }

    /// `{x : f(x) >= 0 for f in ineqs, g(x) = 0 for g in eqs}`, or `None` if empty.
    pub fn from_constraints(ambient: usize, ineqs: &[AffineFunctional], eqs: &[AffineFunctional]) -> Result<Option<Self>> {
        for f in ineqs.iter().chain(eqs) {
            if f.a.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: f.a.len() });
            }
        }
        let mut hin: Vec<Vector> = ineqs.iter().map(|f| primitive(&f.homogenized())).collect();
        hin.push(super::rat::unit(ambient + 1, 0));
        let heq: Vec<Vector> = eqs.iter().map(|f| primitive(&f.homogenized())).collect();
        let g = cone_generators(ambient + 1, &hin, &heq);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for r in &g.rays {
            if r[0].is_positive() {
                points.push(r[1..].iter().map(|x| x / &r[0]).collect());
            } else {
                rays.push(r[1..].to_vec());
            }
        }
        if points.is_empty() {
            return Ok(None);
        }
        let lin: Vec<Vector> = g.lineality.iter().map(|l| l[1..].to_vec()).collect();
        Self::from_generators(ambient, &points, &rays, &lin).map(Some)
    }

    pub fn point(p: Vector) -> Self {
        let n = p.len();
        Self::from_generators(n, &[p], &[], &[]).expect("point")
    }

    pub fn polytope(points: &[Vector]) -> Result<Self> {
        let n = points.first().map(Vec::len).ok_or(Error::EmptyPolyhedron)?;
        Self::from_generators(n, points, &[], &[])
    }

    pub fn segment(a: Vector, b: Vector) -> Self {
        Self::polytope(&[a, b]).expect("segment")
    }

    /// `apex + cone(rays)`
    pub fn cone(apex: Vector, rays: &[Vector]) -> Result<Self> {
        let n = apex.len();
        Self::from_generators(n, &[apex], rays, &[])
    }

    pub fn whole_space(n: usize) -> Self {
        Self::from_generators(n, &[zeros(n)], &[], &super::matrix::identity(n)).expect("space")
    }

    /// `[lo, hi]^n`
    pub fn cube(n: usize, lo: &Rat, hi: &Rat) -> Self {
        let mut pts: Vec<Vector> = vec![Vec::new()];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    let mut a = p.clone();
                    a.push(lo.clone());
                    let mut b = p;
                    b.push(hi.clone());
                    [a, b]
                })
                .collect();
        }
        Self::from_generators(n, &pts, &[], &[]).expect("cube")
    }

    /// `conv(0, e_1, …, e_n)`
    pub fn standard_simplex(n: usize) -> Self {
        let mut pts = vec![zeros(n)];
        pts.extend((0..n).map(|i| super::rat::unit(n, i)));
        Self::polytope(&pts).expect("simplex")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    /// Irredundant facet inequalities `a·x + b >= 0`.
    pub fn facet_inequalities(&self) -> &[AffineFunctional] {
        &self.facets
    }

    /// Equations cutting out the affine hull.
    pub fn equations(&self) -> &[AffineFunctional] {
        &self.equations
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Directions spanning `N_σ`.
    pub fn directions(&self) -> Vec<Vector> {
        let mut d: Vec<Vector> = self.vertices[1..].iter().map(|v| sub(v, &self.vertices[0])).collect();
        d.extend(self.rays.iter().cloned());
        d.extend(self.lineality.iter().cloned());
        d
    }

    /// Reduced echelon basis of `N_σ`.
    pub fn span_basis(&self) -> Vec<Vector> {
        span_basis(&self.directions(), self.ambient)
    }

    pub fn chart(&self) -> AffineChart {
        AffineChart::new(&self.vertices[0], &self.directions())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| !f.eval(x).is_negative()) && self.equations.iter().all(|e| e.eval(x).is_zero())
    }

    pub fn contains_direction(&self, v: &[Rat]) -> bool {
        self.facets.iter().all(|f| !f.linear(v).is_negative()) && self.equations.iter().all(|e| e.linear(v).is_zero())
    }

    pub fn contains_polyhedron(&self, o: &Polyhedron) -> bool {
        o.vertices.iter().all(|v| self.contains(v))
            && o.rays.iter().all(|r| self.contains_direction(r))
            && o.lineality.iter().all(|l| self.contains_direction(l) && self.contains_direction(&super::rat::neg(l)))
    }

    /// Barycenter of the vertices shifted by the sum of the rays.
    pub fn relint_point(&self) -> Vector {
        let n = self.vertices.len();
        let mut p = zeros(self.ambient);
        for v in &self.vertices {
            p = add(&p, v);
        }
        p = scale(&Rat::new(1.into(), (n as i64).into()), &p);
        for r in &self.rays {
            p = add(&p, r);
        }
        p
    }

    /// Signs attained by `f` on the polyhedron: (has positive, has negative).
    pub fn signs(&self, f: &AffineFunctional) -> (bool, bool) {
        let mut pos = false;
        let mut neg = false;
        for v in &self.vertices {
            let x = f.eval(v);
            pos |= x.is_positive();
            neg |= x.is_negative();
        }
        for r in &self.rays {
            let x = f.linear(r);
            pos |= x.is_positive();
            neg |= x.is_negative();
        }
        if self.lineality.iter().any(|l| !f.linear(l).is_zero()) {
            pos = true;
            neg = true;
        }
        (pos, neg)
    }

    pub fn intersect(&self, o: &Polyhedron) -> Result<Option<Polyhedron>> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: o.ambient });
        }
        if self.separates(o) || o.separates(self) {
            return Ok(None);
        }
        if self.satisfied_by(o) {
            return Ok(Some(o.clone()));
        }
        if o.satisfied_by(self) {
            return Ok(Some(self.clone()));
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(o.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(o.equations.iter().cloned());
        Self::from_constraints(self.ambient, &ineqs, &eqs)
    }

    /// Whether `f < 0` everywhere on `o`.
    fn negative_on(f: &AffineFunctional, o: &Polyhedron) -> bool {
        o.vertices.iter().all(|v| f.eval(v).is_negative())
            && o.rays.iter().all(|r| !f.linear(r).is_positive())
            && o.lineality.iter().all(|l| f.linear(l).is_zero())
    }

    /// Whether one of the defining constraints fails on all of `o`.
    fn separates(&self, o: &Polyhedron) -> bool {
        self.facets.iter().any(|f| Self::negative_on(f, o))
            || self.equations.iter().any(|e| Self::negative_on(e, o) || Self::negative_on(&e.negated(), o))
    }

    /// Whether every defining constraint holds on all of `o`.
    fn satisfied_by(&self, o: &Polyhedron) -> bool {
        self.facets.iter().all(|f| !o.signs(f).1) && self.equations.iter().all(|e| o.signs(e) == (false, false))
    }

    /// Adds constraints to the defining system.
    pub fn restrict(&self, ineqs: &[AffineFunctional], eqs: &[AffineFunctional]) -> Result<Option<Polyhedron>> {
        let mut i = self.facets.clone();
        i.extend(ineqs.iter().cloned());
        let mut e = self.equations.clone();
        e.extend(eqs.iter().cloned());
        Self::from_constraints(self.ambient, &i, &e)
    }

    /// Pieces on both sides of `f = 0` when the hyperplane crosses the relative interior.
    pub fn split(&self, f: &AffineFunctional) -> Option<(Polyhedron, Polyhedron)> {
        match self.signs(f) {
            (true, true) => {
                let a = self.restrict(std::slice::from_ref(f), &[]).ok()??;
                let b = self.restrict(&[f.negated()], &[]).ok()??;
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Facets as polyhedra (cached).
    pub fn facets(&self) -> &[Polyhedron] {
        self.facet_cells.get_or_init(|| {
            let mut out: Vec<Polyhedron> = self
                .facets
                .iter()
                .map(|f| {
                    let pts: Vec<Vector> = self.vertices.iter().filter(|v| f.eval(v).is_zero()).cloned().collect();
                    let rays: Vec<Vector> = self.rays.iter().filter(|r| f.linear(r).is_zero()).cloned().collect();
                    Polyhedron::from_generators(self.ambient, &pts, &rays, &self.lineality).expect("facet is nonempty")
                })
                .collect();
            out.sort();
            out.dedup();
            out
        })
    }

    /// All faces of the given codimension.
    pub fn faces(&self, codim: usize) -> Vec<Polyhedron> {
        if codim > self.dim {
            return Vec::new();
        }
        let mut level: BTreeSet<Polyhedron> = BTreeSet::from([self.clone()]);
        for _ in 0..codim {
            level = level.iter().flat_map(|p| p.facets().iter().cloned()).collect();
        }
        level.into_iter().collect()
    }

    /// All nonempty faces, including the polyhedron itself.
    pub fn all_faces(&self) -> Vec<Polyhedron> {
        let mut out = BTreeSet::new();
        for c in 0..=self.dim {
            out.extend(self.faces(c));
        }
        out.into_iter().collect()
    }

    pub fn is_face_of(&self, o: &Polyhedron) -> bool {
        if !o.contains_polyhedron(self) {
            return false;
        }
        let tight: Vec<&AffineFunctional> = o
            .facets
            .iter()
            .filter(|f| {
                self.vertices.iter().all(|v| f.eval(v).is_zero())
                    && self.rays.iter().all(|r| f.linear(r).is_zero())
                    && self.lineality.iter().all(|l| f.linear(l).is_zero())
            })
            .collect();
        let pts: Vec<Vector> = o.vertices.iter().filter(|v| tight.iter().all(|f| f.eval(v).is_zero())).cloned().collect();
        let rays: Vec<Vector> = o.rays.iter().filter(|r| tight.iter().all(|f| f.linear(r).is_zero())).cloned().collect();
        match Polyhedron::from_generators(o.ambient, &pts, &rays, &o.lineality) {
            Ok(face) => &face == self,
            Err(_) => false,
        }
    }

    pub fn image(&self, f: &AffineMap) -> Result<Polyhedron> {
        if f.source_dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: f.source_dim(), found: self.ambient });
        }
        let pts: Vec<Vector> = self.vertices.iter().map(|v| f.apply(v)).collect();
        let rays: Vec<Vector> = self.rays.iter().map(|r| f.apply_linear(r)).collect();
        let lin: Vec<Vector> = self.lineality.iter().map(|l| f.apply_linear(l)).collect();
        Polyhedron::from_generators(f.target_dim(), &pts, &rays, &lin)
    }

    /// `self ∩ f⁻¹(target)`
    pub fn preimage_within(&self, f: &AffineMap, target: &Polyhedron) -> Result<Option<Polyhedron>> {
        let ineqs: Vec<AffineFunctional> = target.facets.iter().map(|g| g.compose(f)).collect();
        let eqs: Vec<AffineFunctional> = target.equations.iter().map(|g| g.compose(f)).collect();
        self.restrict(&ineqs, &eqs)
    }

    /// Recession cone as a polyhedron with apex at the origin.
    pub fn recession_cone(&self) -> Polyhedron {
        Polyhedron::from_generators(self.ambient, &[zeros(self.ambient)], &self.rays, &self.lineality).expect("cone")
    }

    /// Translate by `v`.
    pub fn translate(&self, v: &[Rat]) -> Polyhedron {
        let pts: Vec<Vector> = self.vertices.iter().map(|p| add(p, v)).collect();
        Polyhedron::from_generators(self.ambient, &pts, &self.rays, &self.lineality).expect("translate")
    }

    /// Tangent cone at a point `p` of the polyhedron, as a cone with apex 0.
    pub fn tangent_cone(&self, p: &[Rat]) -> Polyhedron {
        let mut rays: Vec<Vector> = self.vertices.iter().map(|v| sub(v, p)).collect();
        rays.extend(self.rays.iter().cloned());
        Polyhedron::from_generators(self.ambient, &[zeros(self.ambient)], &rays, &self.lineality).expect("cone")
    }

    /// Largest absolute vertex coordinate.
    pub fn bounding_radius(&self) -> Rat {
        self.vertices.iter().flat_map(|v| v.iter().map(|x| x.abs())).fold(int(0), |a, b| if b > a { b } else { a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{rat, vector};

    #[test]
    fn opposite_rays_become_lineality() {
        let p = Polyhedron::from_generators(2, &[vector(&[0, 0])], &[vector(&[1, 0]), vector(&[-1, 0]), vector(&[0, 1])], &[]).unwrap();
        assert_eq!(p.lineality(), &[vector(&[1, 0])]);
        assert_eq!(p.rays(), &[vector(&[0, 1])]);
        assert_eq!(p.vertices().len(), 1);
    }

    fn square() -> Polyhedron {
        Polyhedron::cube(2, &int(0), &int(1))
    }

    #[test]
    fn square_faces() {
        let s = square();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.faces(1).len(), 4);
        assert_eq!(s.faces(2).len(), 4);
        assert!(s.faces(3).is_empty());
    }

    #[test]
    fn ray_faces() {
        let r = Polyhedron::cone(vector(&[0, 0]), &[vector(&[1, 0])]).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.faces(1), vec![Polyhedron::point(vector(&[0, 0]))]);
    }

    #[test]
    fn simplex_vertices() {
        let s = Polyhedron::standard_simplex(2);
        assert_eq!(s.faces(2).len(), 3);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let p = Polyhedron::polytope(&[vector(&[0, 0]), vector(&[2, 0]), vector(&[1, 0]), vector(&[0, 2]), vector(&[1, 1]), vector(&[0, 0])]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        let q = Polyhedron::standard_simplex(2);
        assert_ne!(p, q);
    }

    #[test]
    fn lineality_canonical() {
        let a = Polyhedron::from_generators(2, &[vector(&[1, -1])], &[vector(&[1, 1]), vector(&[2, 0])], &[vector(&[1, -1])]).unwrap();
        let b = Polyhedron::from_generators(2, &[vector(&[0, 0])], &[vector(&[1, 1])], &[vector(&[-2, 2])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.facets().len(), 1);
    }

    #[test]
    fn constraints_round_trip() {
        let s = square();
        let t = Polyhedron::from_constraints(2, s.facet_inequalities(), s.equations()).unwrap().unwrap();
        assert_eq!(s, t);
        let empty = Polyhedron::from_constraints(
            1,
            &[AffineFunctional::new(vector(&[1]), int(-2)), AffineFunctional::new(vector(&[-1]), int(1))],
            &[],
        )
        .unwrap();
        assert!(empty.is_none());
    }

    #[test]
    fn intersections_and_faces() {
        let a = Polyhedron::polytope(&[vector(&[0, 0]), vector(&[2, 0]), vector(&[0, 2])]).unwrap();
        let b = Polyhedron::polytope(&[vector(&[1, 0]), vector(&[3, 0]), vector(&[1, -2])]).unwrap();
        let i = a.intersect(&b).unwrap().unwrap();
        assert_eq!(i, Polyhedron::segment(vector(&[1, 0]), vector(&[2, 0])));
        assert!(i.is_face_of(&a) == false);
        let e = Polyhedron::segment(vector(&[0, 0]), vector(&[2, 0]));
        assert!(e.is_face_of(&a));
        assert!(a.is_face_of(&a));
    }

    #[test]
    fn split_square() {
        let s = square();
        let f = AffineFunctional::new(vector(&[1, -1]), int(0));
        let (p, q) = s.split(&f).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(q.vertices().len(), 3);
        assert!(s.split(&AffineFunctional::new(vector(&[1, 0]), int(0))).is_none());
    }

    #[test]
    fn relint_and_contains() {
        let s = square();
        let c = s.relint_point();
        assert_eq!(c, vec![rat(1, 2), rat(1, 2)]);
        assert!(s.contains(&c));
        assert!(!s.contains(&vector(&[2, 0])));
    }

    #[test]
    fn half_plane_and_cone() {
        let h = Polyhedron::from_constraints(2, &[AffineFunctional::new(vector(&[0, 1]), int(0))], &[]).unwrap().unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.lineality().len(), 1);
        assert_eq!(h.faces(1).len(), 1);
        assert_eq!(h.faces(2).len(), 0);
    }
}
