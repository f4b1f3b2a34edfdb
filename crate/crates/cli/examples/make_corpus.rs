//! Writes the document corpus used by the command-line tests.
//!
//! Usage: `cargo run -p tropforms-cli --example make_corpus [DIR]`.

use std::path::PathBuf;

use tropforms_cli::convert;
use tropforms_cli::document::{Document, MatrixDoc, Object, SeriesDoc, ValuationDoc};
use tropforms_core::complexes::{PwlFunction, WeightedComplex};
use tropforms_core::currents::{PolyhedralCurrent, PwlMap, Summand};
use tropforms_core::exactlin::rat::{int, rat, vector};
use tropforms_core::exactlin::{AffineFunctional, AffineMap, Polyhedron, Weight};
use tropforms_core::intersection::line_cycle;
use tropforms_core::metgraph::{Edge, GraphDivisor, GraphPoint, GraphPwl, MetGraph};
use tropforms_core::superforms::{Form, Poly};

fn ray(d: &[i64]) -> Polyhedron {
    Polyhedron::cone(vector(&[0, 0]), &[vector(d)]).unwrap()
}

fn line(p: &[i64], d: &[i64]) -> Polyhedron {
    Polyhedron::from_generators(p.len(), &[vector(p)], &[], &[vector(d)]).unwrap()
}

fn carriers(n: usize, cells: Vec<Polyhedron>) -> WeightedComplex {
    WeightedComplex::from_carriers(n, cells.into_iter().map(|c| (c.clone(), Weight::lattice_of(&c))).collect()).unwrap()
}

fn tropical_line(top_weight: i64) -> WeightedComplex {
    let cells = vec![
        (ray(&[-1, 0]), Weight::lattice_of(&ray(&[-1, 0]))),
        (ray(&[0, -1]), Weight::lattice_of(&ray(&[0, -1]))),
        (ray(&[1, 1]), Weight::new(Weight::lattice_of(&ray(&[1, 1])).basis().to_vec(), int(top_weight)).unwrap()),
    ];
    WeightedComplex::from_carriers(2, cells).unwrap()
}

/// `max(0, x, y)` on the three maximal cones of the plane.
fn max_function() -> PwlFunction {
    let cone = |a: &[i64], b: &[i64]| Polyhedron::cone(vector(&[0, 0]), &[vector(a), vector(b)]).unwrap();
    PwlFunction::new(
        2,
        vec![
            (cone(&[-1, 0], &[0, -1]), AffineFunctional::new(vector(&[0, 0]), int(0))),
            (cone(&[1, 1], &[0, -1]), AffineFunctional::new(vector(&[1, 0]), int(0))),
            (cone(&[1, 1], &[-1, 0]), AffineFunctional::new(vector(&[0, 1]), int(0))),
        ],
    )
    .unwrap()
}

fn triangle() -> Polyhedron {
    Polyhedron::polytope(&[vector(&[0, 0]), vector(&[2, 1]), vector(&[1, 3])]).unwrap()
}

fn current(c: &PolyhedralCurrent) -> Object {
    Object::Current(convert::current_doc(c))
}

fn complex(c: &WeightedComplex) -> Object {
    Object::Complex(convert::complex_doc(c))
}

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"));
    std::fs::create_dir_all(dir.join("invalid")).unwrap();
    let mut docs: Vec<(&str, Document)> = Vec::new();

    docs.push(("empty", Document::new()));
    docs.push(("tropical_line", Document::new().with("line", complex(&tropical_line(1))).with("phi", Object::Pwl(convert::pwl_doc(&max_function())))));
    docs.push(("unbalanced_line", Document::new().with("line", complex(&tropical_line(2)))));
    let l = line_cycle(&int(1), &int(2), &int(2)).unwrap();
    docs.push(("line_u2w", Document::new().with("line", current(l.current()))));

    let sigma = Polyhedron::cone(vector(&[0, 0]), &[vector(&[1, 0]), vector(&[1, 1])]).unwrap();
    let wedge = WeightedComplex::from_carriers(2, vec![(sigma, Weight::standard(2))]).unwrap();
    let real_line = WeightedComplex::from_carriers(1, vec![(Polyhedron::whole_space(1), Weight::standard(1))]).unwrap();
    let project = PwlMap::affine(AffineMap::projection(2, &[0]));
    docs.push((
        "flat_wedge",
        Document::new()
            .with("wedge", complex(&wedge))
            .with("line", complex(&real_line))
            .with("projection", Object::Map(convert::map_doc(&project)))
            .with("point", current(&PolyhedralCurrent::dirac(vector(&[1]), int(1)))),
    ));

    let axes = carriers(3, vec![line(&[0, 0, 0], &[0, 1, 0]), line(&[0, 0, 1], &[1, 0, 0])]);
    let cross = carriers(2, vec![line(&[0, 0], &[0, 1]), line(&[0, 0], &[1, 0])]);
    docs.push((
        "disjoint_axes",
        Document::new()
            .with("source", complex(&axes))
            .with("target", complex(&cross))
            .with("projection", Object::Map(convert::map_doc(&PwlMap::affine(AffineMap::projection(3, &[0, 1])))))
            .with("point", current(&PolyhedralCurrent::dirac(vector(&[0, 0]), int(1)))),
    ));

    let x = Poly::from_terms(2, [(vec![1, 0], int(1))]);
    let mass = Summand::from_ambient(triangle(), Weight::standard(2), &Form::top(2, Poly::one(2))).unwrap();
    docs.push((
        "triangle",
        Document::new()
            .with("mass", current(&PolyhedralCurrent::new(2, vec![mass]).unwrap()))
            .with("projection", Object::Map(convert::map_doc(&project))),
    ));
    let stokes_form = Form::term(2, &[0], &[0, 1], x.clone()).add(&Form::term(2, &[0, 1], &[1], x));
    let stokes = Summand::from_ambient(triangle(), Weight::standard(2), &stokes_form).unwrap();
    docs.push(("stokes_triangle", Document::new().with("form", current(&PolyhedralCurrent::new(2, vec![stokes]).unwrap()))));
    let segment = Polyhedron::segment(vector(&[-1]), vector(&[2]));
    let segment_form = Form::term(1, &[], &[0], Poly::from_terms(1, [(vec![2], int(1))])).add(&Form::term(1, &[0], &[], Poly::from_terms(1, [(vec![1], int(3))])));
    let on_segment = Summand::from_ambient(segment, Weight::standard(1), &segment_form).unwrap();
    docs.push(("stokes_segment", Document::new().with("form", current(&PolyhedralCurrent::new(1, vec![on_segment]).unwrap()))));

    let g = MetGraph::new(
        3,
        vec![Edge { tail: 0, head: 1, length: int(1) }, Edge { tail: 1, head: 2, length: int(2) }, Edge { tail: 2, head: 0, length: rat(3, 2) }],
        vec![],
    )
    .unwrap();
    let f1 = GraphPwl::new(&g, vec![int(0), int(1), int(-1)], vec![vec![], vec![(int(1), int(3))], vec![]], vec![]).unwrap();
    let f2 = GraphPwl::from_vertex_values(&g, vec![int(2), int(0), int(1)]).unwrap();
    let mut d = GraphDivisor::new();
    d.add(&g, &GraphPoint::Vertex(0), int(1)).unwrap();
    d.add(&g, &GraphPoint::Edge { edge: 1, t: rat(1, 2) }, int(-1)).unwrap();
    docs.push((
        "triangle_graph",
        Document::new()
            .with("graph", Object::Graph(convert::graph_doc(&g)))
            .with("f", Object::GraphFunction(convert::graph_function_doc("graph", &f1)))
            .with("g", Object::GraphFunction(convert::graph_function_doc("graph", &f2)))
            .with("divisor", Object::Divisor(convert::divisor_doc("graph", &d))),
    ));

    let series = SeriesDoc { q: 2, h: 1, valuations: [(1, int(1)), (2, rat(1, 3)), (4, int(0))].map(|(index, v)| ValuationDoc { index, valuation: v.into() }).to_vec() };
    docs.push(("series", Document::new().with("pi", Object::Series(series))));
    let rows = |r: &[&[i64]]| r.iter().map(|row| row.iter().map(|&x| int(x).into()).collect()).collect();
    docs.push((
        "matrices",
        Document::new()
            .with("small", Object::Matrix(MatrixDoc { p: 3, rows: rows(&[&[3, 1], &[0, 9]]), blocks: None }))
            .with("blocked", Object::Matrix(MatrixDoc { p: 2, rows: rows(&[&[2, 1, 0, 0], &[0, 4, 0, 0], &[0, 0, 8, 0], &[0, 0, 1, 1]]), blocks: Some(vec![2, 2]) })),
    ));

    for (name, doc) in docs {
        std::fs::write(dir.join(format!("{name}.json")), doc.to_text()).unwrap();
    }

    let raw = |name: &str, text: &str| std::fs::write(dir.join("invalid").join(name), text).unwrap();
    raw(
        "zero_denominator.json",
        r#"{"schema_version":"1","objects":{"p":{"complex":{"ambient":1,"cells":[{"id":0,"vertices":[["1/0"]]}]}}}}
"#,
    );
    raw(
        "missing_weight.json",
        r#"{"schema_version":"1","objects":{"p":{"complex":{"ambient":1,"cells":[{"id":0,"vertices":[["0"],["1"]],"carrier":true}]}}}}
"#,
    );
    raw(
        "unknown_field.json",
        r#"{"schema_version":"1","objects":{},"extra":1}
"#,
    );
    raw(
        "discontinuous.json",
        r#"{"schema_version":"1","objects":{"jump":{"pwl":{"ambient":1,"pieces":[
  {"id":0,"cell":{"vertices":[["0"]],"rays":[["-1"]]},"gradient":["0"],"constant":"0"},
  {"id":1,"cell":{"vertices":[["0"]],"rays":[["1"]]},"gradient":["0"],"constant":"1"}]}}}}
"#,
    );
    raw(
        "ambient_three.json",
        r#"{"schema_version":"1","objects":{"p":{"complex":{"ambient":3,"cells":[{"id":0,"vertices":[["0","0","0"]],"carrier":true,"weight":{"basis":[],"scale":"1"}}]}}}}
"#,
    );
}
