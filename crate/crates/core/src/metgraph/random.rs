use rand::Rng;

use super::graph::{Edge, GraphDivisor, GraphPoint, GraphPwl, MetGraph};
use crate::error::Result;
use crate::exactlin::Rat;

fn length<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=4).into())
}

fn value<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=3).into())
}

/// Connected compact graph: a random spanning tree plus `extra` further edges (loops and multi-edges allowed).
pub fn random_graph<R: Rng>(rng: &mut R, vertices: usize, extra: usize) -> Result<MetGraph> {
    let n = vertices.max(1);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push(Edge { tail: rng.gen_range(0..v), head: v, length: length(rng) });
    }
    for _ in 0..extra {
        edges.push(Edge { tail: rng.gen_range(0..n), head: rng.gen_range(0..n), length: length(rng) });
    }
    MetGraph::new(n, edges, Vec::new())
}

/// Uniformly chosen point: a vertex or an interior point of an edge.
pub fn random_point<R: Rng>(rng: &mut R, g: &MetGraph) -> GraphPoint {
    if g.edges().is_empty() || rng.gen_bool(0.4) {
        return GraphPoint::Vertex(rng.gen_range(0..g.vertex_count()));
    }
    let edge = rng.gen_range(0..g.edges().len());
    let len = &g.edges()[edge].length;
    let k: i64 = rng.gen_range(1..8);
    GraphPoint::Edge { edge, t: len * Rat::new(k.into(), 8.into()) }
}

/// Random divisor of degree zero supported on at most `size` points.
pub fn random_divisor<R: Rng>(rng: &mut R, g: &MetGraph, size: usize) -> Result<GraphDivisor> {
    let mut d = GraphDivisor::new();
    for _ in 0..size.max(1) {
        let p = random_point(rng, g);
        d.add(g, &p, value(rng))?;
    }
    let total = d.degree();
    let p = random_point(rng, g);
    d.add(g, &p, -total)?;
    Ok(d)
}

/// Random continuous piecewise affine function with up to two breakpoints per edge.
pub fn random_graph_pwl<R: Rng>(rng: &mut R, g: &MetGraph) -> Result<GraphPwl> {
    let values = (0..g.vertex_count()).map(|_| value(rng)).collect();
    let knots = g
        .edges()
        .iter()
        .map(|e| {
            let mut ks: Vec<i64> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..8)).collect();
            ks.sort();
            ks.dedup();
            ks.into_iter().map(|k| (&e.length * Rat::new(k.into(), 8.into()), value(rng))).collect()
        })
        .collect();
    GraphPwl::new(g, values, knots, Vec::new())
}
