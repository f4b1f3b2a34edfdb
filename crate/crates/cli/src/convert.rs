use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use tropforms_core::complexes::{PwlFunction, WeightedComplex};
use tropforms_core::currents::{PolyhedralCurrent, PwlMap, Summand, TropicalCycle};
use tropforms_core::exactlin::{AffineFunctional, AffineMap, Polyhedron, Rat, Vector, Weight};
use tropforms_core::metgraph::{Edge, GraphDivisor, GraphPoint, GraphPwl, MetGraph};
use tropforms_core::newton::{DvrMatrix, PiSeries};
use tropforms_core::superforms::{Form, Poly};

use crate::document::*;
use crate::error::{AtPath, CliError, CliResult};

fn rats(v: &[JRat]) -> Vector {
    v.iter().map(|x| x.0.clone()).collect()
}

fn jrats(v: &[Rat]) -> JVec {
    v.iter().map(JRat::from).collect()
}

fn vectors(path: &str, vs: &[JVec], len: usize) -> CliResult<Vec<Vector>> {
    vs.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != len {
                return Err(CliError::Document(DocError::schema(format!("{path}[{i}]"), format!("expected {len} coordinates, found {}", v.len()))));
            }
            Ok(rats(v))
        })
        .collect()
}

pub fn polyhedron(path: &str, p: &PolyDoc, ambient: usize) -> CliResult<Polyhedron> {
    polyhedron_parts(path, &p.vertices, &p.rays, &p.lineality, ambient)
}

fn polyhedron_parts(path: &str, vertices: &[JVec], rays: &[JVec], lineality: &[JVec], ambient: usize) -> CliResult<Polyhedron> {
    let v = vectors(&format!("{path}.vertices"), vertices, ambient)?;
    let r = vectors(&format!("{path}.rays"), rays, ambient)?;
    let l = vectors(&format!("{path}.lineality"), lineality, ambient)?;
    if v.is_empty() {
        return Err(CliError::Document(DocError::schema(format!("{path}.vertices"), "a polyhedron needs at least one vertex")));
    }
    Polyhedron::from_generators(ambient, &v, &r, &l).at(path)
}

pub fn poly_doc(p: &Polyhedron) -> PolyDoc {
    PolyDoc {
        vertices: p.vertices().iter().map(|v| jrats(v)).collect(),
        rays: p.rays().iter().map(|v| jrats(v)).collect(),
        lineality: p.lineality().iter().map(|v| jrats(v)).collect(),
    }
}

pub fn weight(path: &str, w: &WeightDoc, ambient: usize) -> CliResult<Weight> {
    let basis = vectors(&format!("{path}.basis"), &w.basis, ambient)?;
    Weight::new(basis, w.scale.0.clone()).at(path)
}

pub fn weight_doc(w: &Weight) -> WeightDoc {
    WeightDoc { basis: w.basis().iter().map(|v| jrats(v)).collect(), scale: w.scale().into() }
}

pub fn complex(base: &str, c: &ComplexDoc) -> CliResult<WeightedComplex> {
    let mut cells = Vec::new();
    let mut weights = BTreeMap::new();
    let mut carriers = BTreeSet::new();
    for (i, cell) in c.cells.iter().enumerate() {
        let path = format!("{base}.cells[{i}]");
        cells.push(polyhedron_parts(&path, &cell.vertices, &cell.rays, &cell.lineality, c.ambient)?);
        if let Some(w) = &cell.weight {
            weights.insert(i, weight(&format!("{path}.weight"), w, c.ambient)?);
        }
        if cell.carrier {
            carriers.insert(i);
        }
    }
    WeightedComplex::new(c.ambient, cells, weights, carriers, c.pure_dim).at(base)
}

pub fn complex_doc(c: &WeightedComplex) -> ComplexDoc {
    let cells = c
        .cells()
        .iter()
        .enumerate()
        .map(|(id, p)| {
            let d = poly_doc(p);
            CellDoc {
                id,
                vertices: d.vertices,
                rays: d.rays,
                lineality: d.lineality,
                carrier: c.carriers().contains(&id),
                weight: c.weight(id).map(weight_doc),
            }
        })
        .collect();
    ComplexDoc { ambient: c.ambient_dim(), pure_dim: c.pure_dim(), cells }
}

/// Weighted carriers of a complex as a tropical cycle with multiplicity one.
pub fn complex_cycle(base: &str, c: &ComplexDoc) -> CliResult<TropicalCycle> {
    let wc = complex(base, c)?;
    let cells = wc.weights().iter().map(|(&id, w)| (wc.cells()[id].clone(), w.clone())).collect();
    TropicalCycle::new(c.ambient, cells).at(base)
}

pub fn pwl(base: &str, p: &PwlDoc) -> CliResult<PwlFunction> {
    let mut pieces = Vec::new();
    for (i, piece) in p.pieces.iter().enumerate() {
        let path = format!("{base}.pieces[{i}]");
        let cell = polyhedron(&format!("{path}.cell"), &piece.cell, p.ambient)?;
        let grad = vectors(&path, std::slice::from_ref(&piece.gradient), p.ambient)?.remove(0);
        pieces.push((cell, AffineFunctional::new(grad, piece.constant.0.clone())));
    }
    PwlFunction::new(p.ambient, pieces).at(base)
}

pub fn pwl_doc(f: &PwlFunction) -> PwlDoc {
    let pieces = f
        .pieces()
        .iter()
        .enumerate()
        .map(|(id, (c, g))| PieceDoc { id, cell: poly_doc(c), gradient: jrats(&g.a), constant: (&g.b).into() })
        .collect();
    PwlDoc { ambient: f.ambient_dim(), pieces }
}

pub fn form(path: &str, terms: &[FormTermDoc], ambient: usize) -> CliResult<Form> {
    let mut out = Form::zero(ambient);
    for (i, t) in terms.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        for (field, idx) in [("d_prime", &t.d_prime), ("d_double_prime", &t.d_double_prime)] {
            if let Some(&k) = idx.iter().find(|&&k| k >= ambient) {
                return Err(CliError::Document(DocError::schema(format!("{tp}.{field}"), format!("coordinate {k} out of range for ambient dimension {ambient}"))));
            }
        }
        let mut monomials = Vec::new();
        for (j, m) in t.poly.iter().enumerate() {
            if m.exponents.len() != ambient {
                return Err(CliError::Document(DocError::schema(format!("{tp}.poly[{j}].exponents"), format!("expected {ambient} exponents, found {}", m.exponents.len()))));
            }
            monomials.push((m.exponents.clone(), m.coefficient.0.clone()));
        }
        out = out.add(&Form::term(ambient, &t.d_prime, &t.d_double_prime, Poly::from_terms(ambient, monomials)));
    }
    Ok(out)
}

pub fn form_doc(f: &Form) -> Vec<FormTermDoc> {
    f.terms()
        .map(|(m, p)| {
            let (d_prime, d_double_prime) = f.split_mask(*m);
            let poly = p.terms().map(|(e, c)| MonomialDoc { exponents: e.clone(), coefficient: c.into() }).collect();
            FormTermDoc { d_prime, d_double_prime, poly }
        })
        .collect()
}

pub fn current(base: &str, c: &CurrentDoc) -> CliResult<PolyhedralCurrent> {
    let mut summands = Vec::new();
    for (i, s) in c.summands.iter().enumerate() {
        let path = format!("{base}.summands[{i}]");
        let cell = polyhedron(&format!("{path}.cell"), &s.cell, c.ambient)?;
        let w = weight(&format!("{path}.weight"), &s.weight, c.ambient)?;
        let f = form(&format!("{path}.form"), &s.form, c.ambient)?;
        summands.push(Summand::from_ambient(cell, w, &f).at(&path)?);
    }
    PolyhedralCurrent::new(c.ambient, summands).at(base)
}

pub fn current_doc(t: &PolyhedralCurrent) -> CurrentDoc {
    let summands = t
        .summands()
        .iter()
        .enumerate()
        .map(|(id, s)| SummandDoc { id, cell: poly_doc(&s.cell), weight: weight_doc(&s.weight), form: form_doc(&s.form.to_ambient()) })
        .collect();
    CurrentDoc { ambient: t.ambient_dim(), summands }
}

pub fn graph(base: &str, g: &GraphDoc) -> CliResult<MetGraph> {
    let edges = g.edges.iter().map(|e| Edge { tail: e.tail, head: e.head, length: e.length.0.clone() }).collect();
    MetGraph::new(g.vertices, edges, g.rays.clone()).at(base)
}

pub fn graph_doc(g: &MetGraph) -> GraphDoc {
    let edges = g.edges().iter().enumerate().map(|(id, e)| EdgeDoc { id, tail: e.tail, head: e.head, length: (&e.length).into() }).collect();
    GraphDoc { vertices: g.vertex_count(), edges, rays: g.rays().to_vec() }
}

fn knots(k: &[KnotDoc]) -> Vec<(Rat, Rat)> {
    k.iter().map(|x| (x.t.0.clone(), x.value.0.clone())).collect()
}

fn knot_docs(k: &[(Rat, Rat)]) -> Vec<KnotDoc> {
    k.iter().map(|(t, v)| KnotDoc { t: t.into(), value: v.into() }).collect()
}

pub fn graph_function(base: &str, f: &GraphFunctionDoc, g: &MetGraph) -> CliResult<GraphPwl> {
    let mut edge_knots = vec![Vec::new(); g.edges().len()];
    for (i, e) in f.edges.iter().enumerate() {
        let slot = edge_knots.get_mut(e.edge).ok_or_else(|| CliError::Document(DocError::schema(format!("{base}.edges[{i}].edge"), format!("no edge {}", e.edge))))?;
        *slot = knots(&e.knots);
    }
    let mut ray_knots = vec![(Vec::new(), Rat::from_integer(0.into())); g.rays().len()];
    for (i, r) in f.rays.iter().enumerate() {
        let slot = ray_knots.get_mut(r.ray).ok_or_else(|| CliError::Document(DocError::schema(format!("{base}.rays[{i}].ray"), format!("no ray {}", r.ray))))?;
        *slot = (knots(&r.knots), r.slope.0.clone());
    }
    GraphPwl::new(g, rats(&f.vertex_values), edge_knots, ray_knots).at(base)
}

pub fn graph_function_doc(graph: &str, f: &GraphPwl) -> GraphFunctionDoc {
    let edges = f.edge_knots.iter().enumerate().filter(|(_, k)| !k.is_empty()).map(|(edge, k)| EdgeKnotsDoc { edge, knots: knot_docs(k) }).collect();
    let rays = f.ray_knots.iter().enumerate().map(|(ray, (k, s))| RayKnotsDoc { ray, knots: knot_docs(k), slope: s.into() }).collect();
    GraphFunctionDoc { graph: graph.into(), vertex_values: jrats(&f.vertex_values), edges, rays }
}

pub fn point(p: &PointDoc) -> GraphPoint {
    match p {
        PointDoc::Vertex(v) => GraphPoint::Vertex(*v),
        PointDoc::Edge(s) => GraphPoint::Edge { edge: s.index, t: s.t.0.clone() },
        PointDoc::Ray(s) => GraphPoint::Ray { ray: s.index, t: s.t.0.clone() },
    }
}

pub fn point_doc(p: &GraphPoint) -> PointDoc {
    match p {
        GraphPoint::Vertex(v) => PointDoc::Vertex(*v),
        GraphPoint::Edge { edge, t } => PointDoc::Edge(OnSegmentDoc { index: *edge, t: t.into() }),
        GraphPoint::Ray { ray, t } => PointDoc::Ray(OnSegmentDoc { index: *ray, t: t.into() }),
    }
}

pub fn divisor(base: &str, d: &DivisorDoc, g: &MetGraph) -> CliResult<GraphDivisor> {
    let mut out = GraphDivisor::new();
    for (i, p) in d.points.iter().enumerate() {
        out.add(g, &point(&p.point), p.multiplicity.0.clone()).at(&format!("{base}.points[{i}].point"))?;
    }
    Ok(out)
}

pub fn divisor_doc(graph: &str, d: &GraphDivisor) -> DivisorDoc {
    let points = d.points.iter().map(|(p, m)| PointMassDoc { point: point_doc(p), multiplicity: m.into() }).collect();
    DivisorDoc { graph: graph.into(), points }
}

pub fn series(base: &str, s: &SeriesDoc) -> CliResult<PiSeries> {
    let vals = s.valuations.iter().map(|v| (v.index, v.valuation.0.clone())).collect();
    PiSeries::new(s.q, s.h, vals).at(base)
}

pub fn series_doc(s: &PiSeries) -> SeriesDoc {
    let valuations = s.valuations().iter().map(|(&index, v)| ValuationDoc { index, valuation: v.into() }).collect();
    SeriesDoc { q: s.q(), h: s.h(), valuations }
}

pub fn matrix(base: &str, m: &MatrixDoc) -> CliResult<DvrMatrix> {
    let n = m.rows.len();
    let rows = vectors(&format!("{base}.rows"), &m.rows, n)?;
    DvrMatrix::new(rows, BigInt::from(m.p)).at(base)
}

pub fn map(base: &str, m: &MapDoc) -> CliResult<PwlMap> {
    let mut pieces = Vec::new();
    for (i, piece) in m.pieces.iter().enumerate() {
        let path = format!("{base}.pieces[{i}]");
        let cell = polyhedron(&format!("{path}.cell"), &piece.cell, m.source)?;
        let rows = vectors(&format!("{path}.matrix"), &piece.matrix, m.source)?;
        if rows.len() != m.target {
            return Err(CliError::Document(DocError::schema(format!("{path}.matrix"), format!("expected {} rows, found {}", m.target, rows.len()))));
        }
        let offset = vectors(&path, std::slice::from_ref(&piece.offset), m.target)?.remove(0);
        pieces.push((cell, AffineMap::new(rows, offset, m.source).at(&path)?));
    }
    PwlMap::new(m.source, m.target, pieces).at(base)
}

pub fn map_doc(f: &PwlMap) -> MapDoc {
    let pieces = f
        .pieces()
        .iter()
        .enumerate()
        .map(|(id, (c, g))| MapPieceDoc { id, cell: poly_doc(c), matrix: g.matrix().iter().map(|r| jrats(r)).collect(), offset: jrats(g.offset()) })
        .collect();
    MapDoc { source: f.source_dim(), target: f.target_dim(), pieces }
}
