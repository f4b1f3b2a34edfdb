use std::collections::BTreeMap;

use num_traits::Zero;

use super::graph::{slopes, GraphDivisor, GraphPoint, GraphPwl, MetGraph};
use crate::error::{Error, Result};
use crate::exactlin::matrix::solve;
use crate::exactlin::Rat;

/// `Δg`: at each point the sum of the outgoing slopes.
pub fn laplacian(g: &GraphPwl, graph: &MetGraph) -> Result<GraphDivisor> {
    let mut d = GraphDivisor::new();
    for (i, e) in graph.edges().iter().enumerate() {
        let prof = g.edge_profile(graph, i);
        let s = slopes(&prof);
        d.add(graph, &GraphPoint::Vertex(e.tail), s[0].clone())?;
        d.add(graph, &GraphPoint::Vertex(e.head), -s[s.len() - 1].clone())?;
        for k in 1..s.len() {
            d.add(graph, &GraphPoint::Edge { edge: i, t: prof[k].0.clone() }, &s[k] - &s[k - 1])?;
        }
    }
    for (i, &v) in graph.rays().iter().enumerate() {
        let (prof, last) = g.ray_profile(graph, i);
        let mut s = slopes(&prof);
        s.push(last);
        d.add(graph, &GraphPoint::Vertex(v), s[0].clone())?;
        for k in 1..s.len() {
            d.add(graph, &GraphPoint::Ray { ray: i, t: prof[k].0.clone() }, &s[k] - &s[k - 1])?;
        }
    }
    Ok(d)
}

/// The graph subdivided at the given interior edge points.
struct Subdivided {
    /// Node index of each original vertex is the vertex id; extra nodes follow.
    nodes: usize,
    node_of: BTreeMap<GraphPoint, usize>,
    /// Per original edge, the parameters and nodes along it including both ends.
    chains: Vec<Vec<(Rat, usize)>>,
}

fn subdivide(graph: &MetGraph, points: &[GraphPoint]) -> Subdivided {
    let mut node_of: BTreeMap<GraphPoint, usize> = (0..graph.vertex_count()).map(|v| (GraphPoint::Vertex(v), v)).collect();
    let mut nodes = graph.vertex_count();
    let mut cuts: Vec<Vec<Rat>> = vec![Vec::new(); graph.edges().len()];
    for p in points {
        if let GraphPoint::Edge { edge, t } = p {
            if !node_of.contains_key(p) {
                node_of.insert(p.clone(), nodes);
                nodes += 1;
                cuts[*edge].push(t.clone());
            }
        }
    }
    let chains = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut ts = cuts[i].clone();
            ts.sort();
            let mut chain = vec![(Rat::zero(), e.tail)];
            chain.extend(ts.into_iter().map(|t| {
                let n = node_of[&GraphPoint::Edge { edge: i, t: t.clone() }];
                (t, n)
            }));
            chain.push((e.length.clone(), e.head));
            chain
        })
        .collect();
    Subdivided { nodes, node_of, chains }
}

/// The function `g` with `Δg = D` and `g(basepoint) = 0` on a compact connected graph.
pub fn green_solve(graph: &MetGraph, d: &GraphDivisor, basepoint: &GraphPoint) -> Result<GraphPwl> {
    if !graph.is_compact() {
        return Err(Error::InfiniteEdge);
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if !d.degree().is_zero() {
        return Err(Error::DivisorNotDegreeZero);
    }
    let base = graph.canonical(basepoint)?;
    let mut pts: Vec<GraphPoint> = d.points.keys().cloned().collect();
    pts.push(base.clone());
    let sub = subdivide(graph, &pts);
    let n = sub.nodes;
    let mut rows = vec![vec![Rat::zero(); n]; n];
    let mut rhs = vec![Rat::zero(); n];
    for chain in &sub.chains {
        for w in chain.windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            let c = (&w[1].0 - &w[0].0).recip();
            rows[a][a] -= &c;
            rows[a][b] += &c;
            rows[b][b] -= &c;
            rows[b][a] += &c;
        }
    }
    for (p, m) in &d.points {
        rhs[sub.node_of[p]] += m;
    }
    let bi = sub.node_of[&base];
    rows[bi] = vec![Rat::zero(); n];
    rows[bi][bi] = Rat::from_integer(1.into());
    rhs[bi] = Rat::zero();
    let x = solve(&rows, &rhs, n).ok_or(Error::Singular)?;
    let vertex_values = x[..graph.vertex_count()].to_vec();
    let edge_knots = sub.chains.iter().map(|c| c[1..c.len() - 1].iter().map(|(t, k)| (t.clone(), x[*k].clone())).collect()).collect();
    GraphPwl::new(graph, vertex_values, edge_knots, Vec::new())
}

/// `Σ_x g₁(x)·Δg₂({x})` together with the reversed sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPairing {
    pub value: Rat,
    pub reversed: Rat,
    pub symmetric: bool,
}

fn one_sided(g1: &GraphPwl, g2: &GraphPwl, graph: &MetGraph) -> Result<Rat> {
    let mut total = Rat::zero();
    for (p, m) in &laplacian(g2, graph)?.points {
        total += g1.eval(graph, p)? * m;
    }
    Ok(total)
}

pub fn pairing(g1: &GraphPwl, g2: &GraphPwl, graph: &MetGraph) -> Result<GraphPairing> {
    if !graph.is_compact() {
        return Err(Error::InfiniteEdge);
    }
    let value = one_sided(g1, g2, graph)?;
    let reversed = one_sided(g2, g1, graph)?;
    Ok(GraphPairing { symmetric: value == reversed, value, reversed })
}
