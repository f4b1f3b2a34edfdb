use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::Rat;

/// Edge of finite length from `tail` to `head`, parametrized by arc length from `tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub length: Rat,
}

/// A metric graph: vertices `0..vertex_count`, finite edges and leaf rays of infinite length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    /// Base vertex of each infinite ray.
    rays: Vec<usize>,
}

/// A point of a metric graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(usize),
    /// Interior point of an edge at arc length `t` from its tail.
    Edge { edge: usize, t: Rat },
    /// Point of a ray at distance `t > 0` from its base.
    Ray { ray: usize, t: Rat },
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::exactlin::rat::format_rat;
        match self {
            GraphPoint::Vertex(v) => write!(f, "vertex {v}"),
            GraphPoint::Edge { edge, t } => write!(f, "edge {edge} at {}", format_rat(t)),
            GraphPoint::Ray { ray, t } => write!(f, "ray {ray} at {}", format_rat(t)),
        }
    }
}

impl MetGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>, rays: Vec<usize>) -> Result<Self> {
        for e in &edges {
            if e.tail >= vertex_count || e.head >= vertex_count {
                return Err(Error::Invalid(format!("edge endpoint out of range: {} -> {}", e.tail, e.head)));
            }
            if !e.length.is_positive() {
                return Err(Error::Invalid("edge lengths must be positive".into()));
            }
        }
        if let Some(&v) = rays.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::Invalid(format!("ray base {v} out of range")));
        }
        Ok(MetGraph { vertex_count, edges, rays })
    }

    /// Path `0 - 1 - … - k` with the given edge lengths.
    pub fn path(lengths: &[Rat]) -> Result<Self> {
        let edges = lengths.iter().enumerate().map(|(i, l)| Edge { tail: i, head: i + 1, length: l.clone() }).collect();
        Self::new(lengths.len() + 1, edges, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn is_compact(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.vertex_count).all(|v| find(&mut parent, v) == root)
    }

    /// Total length of the finite edges.
    pub fn total_length(&self) -> Rat {
        self.edges.iter().map(|e| e.length.clone()).sum()
    }

    /// Rewrites edge endpoints as vertices and checks that the point lies on the graph.
    pub fn canonical(&self, p: &GraphPoint) -> Result<GraphPoint> {
        match p {
            GraphPoint::Vertex(v) if *v < self.vertex_count => Ok(p.clone()),
            GraphPoint::Edge { edge, t } if *edge < self.edges.len() => {
                let e = &self.edges[*edge];
                if t.is_zero() {
                    Ok(GraphPoint::Vertex(e.tail))
                } else if *t == e.length {
                    Ok(GraphPoint::Vertex(e.head))
                } else if t.is_positive() && *t < e.length {
                    Ok(p.clone())
                } else {
                    Err(Error::OutsideSupport)
                }
            }
            GraphPoint::Ray { ray, t } if *ray < self.rays.len() => {
                if t.is_zero() {
                    Ok(GraphPoint::Vertex(self.rays[*ray]))
                } else if t.is_positive() {
                    Ok(p.clone())
                } else {
                    Err(Error::OutsideSupport)
                }
            }
            _ => Err(Error::OutsideSupport),
        }
    }
}

/// Finite formal sum of points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphDivisor {
    pub points: BTreeMap<GraphPoint, Rat>,
}

impl GraphDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c·δ_p` after canonicalizing `p`.
    pub fn add(&mut self, g: &MetGraph, p: &GraphPoint, c: Rat) -> Result<()> {
        let p = g.canonical(p)?;
        let e = self.points.entry(p.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.points.remove(&p);
        }
        Ok(())
    }

    pub fn from_points(g: &MetGraph, points: &[(GraphPoint, Rat)]) -> Result<Self> {
        let mut d = Self::new();
        for (p, c) in points {
            d.add(g, p, c.clone())?;
        }
        Ok(d)
    }

    pub fn degree(&self) -> Rat {
        self.points.values().cloned().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }
}

/// Continuous piecewise affine function: values at vertices plus interior breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPwl {
    pub vertex_values: Vec<Rat>,
    /// Per edge, interior breakpoints `(t, value)` with `0 < t < length`, increasing in `t`.
    pub edge_knots: Vec<Vec<(Rat, Rat)>>,
    /// Per ray, breakpoints `(t, value)` with `t > 0` and the slope after the last one.
    pub ray_knots: Vec<(Vec<(Rat, Rat)>, Rat)>,
}

impl GraphPwl {
    pub fn new(g: &MetGraph, vertex_values: Vec<Rat>, edge_knots: Vec<Vec<(Rat, Rat)>>, ray_knots: Vec<(Vec<(Rat, Rat)>, Rat)>) -> Result<Self> {
        if vertex_values.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch { expected: g.vertex_count(), found: vertex_values.len() });
        }
        if edge_knots.len() != g.edges().len() {
            return Err(Error::DimensionMismatch { expected: g.edges().len(), found: edge_knots.len() });
        }
        if ray_knots.len() != g.rays().len() {
            return Err(Error::DimensionMismatch { expected: g.rays().len(), found: ray_knots.len() });
        }
        for (e, knots) in g.edges().iter().zip(&edge_knots) {
            let mut last = Rat::zero();
            for (t, _) in knots {
                if *t <= last || *t >= e.length {
                    return Err(Error::Invalid("edge breakpoints must increase strictly inside the edge".into()));
                }
                last = t.clone();
            }
        }
        for (knots, _) in &ray_knots {
            let mut last = Rat::zero();
            for (t, _) in knots {
                if *t <= last {
                    return Err(Error::Invalid("ray breakpoints must increase strictly".into()));
                }
                last = t.clone();
            }
        }
        Ok(GraphPwl { vertex_values, edge_knots, ray_knots })
    }

    /// Function given by its vertex values, affine on every edge and constant on rays.
    pub fn from_vertex_values(g: &MetGraph, values: Vec<Rat>) -> Result<Self> {
        let e = vec![Vec::new(); g.edges().len()];
        let r = vec![(Vec::new(), Rat::zero()); g.rays().len()];
        Self::new(g, values, e, r)
    }

    pub fn constant(g: &MetGraph, c: Rat) -> Result<Self> {
        Self::from_vertex_values(g, vec![c; g.vertex_count()])
    }

    /// All knots of an edge including both endpoints.
    pub(crate) fn edge_profile(&self, g: &MetGraph, edge: usize) -> Vec<(Rat, Rat)> {
        let e = &g.edges()[edge];
        let mut out = vec![(Rat::zero(), self.vertex_values[e.tail].clone())];
        out.extend(self.edge_knots[edge].iter().cloned());
        out.push((e.length.clone(), self.vertex_values[e.head].clone()));
        out
    }

    pub(crate) fn ray_profile(&self, g: &MetGraph, ray: usize) -> (Vec<(Rat, Rat)>, Rat) {
        let mut out = vec![(Rat::zero(), self.vertex_values[g.rays()[ray]].clone())];
        out.extend(self.ray_knots[ray].0.iter().cloned());
        (out, self.ray_knots[ray].1.clone())
    }

    pub fn eval(&self, g: &MetGraph, p: &GraphPoint) -> Result<Rat> {
        match g.canonical(p)? {
            GraphPoint::Vertex(v) => Ok(self.vertex_values[v].clone()),
            GraphPoint::Edge { edge, t } => Ok(interpolate(&self.edge_profile(g, edge), None, &t)),
            GraphPoint::Ray { ray, t } => {
                let (knots, slope) = self.ray_profile(g, ray);
                Ok(interpolate(&knots, Some(&slope), &t))
            }
        }
    }

    pub fn add(&self, o: &GraphPwl, g: &MetGraph) -> Result<GraphPwl> {
        let vertex_values = self.vertex_values.iter().zip(&o.vertex_values).map(|(a, b)| a + b).collect();
        let merge = |a: &[(Rat, Rat)], b: &[(Rat, Rat)], prof_a: &[(Rat, Rat)], prof_b: &[(Rat, Rat)], sa: Option<&Rat>, sb: Option<&Rat>| {
            let mut ts: Vec<Rat> = a.iter().chain(b).map(|(t, _)| t.clone()).collect();
            ts.sort();
            ts.dedup();
            ts.into_iter().map(|t| {
                let v = interpolate(prof_a, sa, &t) + interpolate(prof_b, sb, &t);
                (t, v)
            }).collect::<Vec<_>>()
        };
        let edge_knots = (0..g.edges().len())
            .map(|i| merge(&self.edge_knots[i], &o.edge_knots[i], &self.edge_profile(g, i), &o.edge_profile(g, i), None, None))
            .collect();
        let ray_knots = (0..g.rays().len())
            .map(|i| {
                let (pa, sa) = self.ray_profile(g, i);
                let (pb, sb) = o.ray_profile(g, i);
                (merge(&self.ray_knots[i].0, &o.ray_knots[i].0, &pa, &pb, Some(&sa), Some(&sb)), &sa + &sb)
            })
            .collect();
        GraphPwl::new(g, vertex_values, edge_knots, ray_knots)
    }
}

/// Value at `t` of the piecewise linear interpolation of `knots`, extended by `slope` past the end.
pub(crate) fn interpolate(knots: &[(Rat, Rat)], slope: Option<&Rat>, t: &Rat) -> Rat {
    for w in knots.windows(2) {
        let (t0, v0) = &w[0];
        let (t1, v1) = &w[1];
        if t >= t0 && t <= t1 {
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    let (tl, vl) = knots.last().expect("profile has a start point");
    vl + slope.cloned().unwrap_or_else(Rat::zero) * (t - tl)
}

/// Slopes of consecutive segments of a profile.
pub(crate) fn slopes(knots: &[(Rat, Rat)]) -> Vec<Rat> {
    knots.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect()
}
