use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tropforms_core::complexes::LinearStructure;
use tropforms_core::currents::{check_balanced, check_flat, corner_locus, pull_back_flat, push_forward, PolyhedralCurrent, TropicalCycle};
use tropforms_core::exactlin::rat::{format_rat, parse_rat};
use tropforms_core::exactlin::{Polyhedron, Rat};
use tropforms_core::integrate::stokes_check;
use tropforms_core::intersection::random::random_curve;
use tropforms_core::intersection::{diagonal_vertical_pairing, displacement_vector, green_min, intersect_displaced, Displaced, MAX_DISPLACEMENTS};
use tropforms_core::metgraph::{green_solve, laplacian, pairing, GraphPoint, MetGraph};
use tropforms_core::newton::{dvr_length, level_bound_check, torsion_valuations};

use crate::convert;
use crate::document::{Document, Object};
use crate::error::{AtPath, CliError, CliResult};
use crate::render::render_svg;

#[derive(Debug, Parser)]
#[command(name = "tropforms", version, about = "Exact tropical intersection calculus on JSON documents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every object (or one) for structural consistency.
    Validate {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
    },
    /// Refine a complex until cells meet in common faces.
    Refine {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Check the balancing condition of a complex or current.
    Balance {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Corner locus of a piecewise affine function on a cycle.
    CornerLocus {
        file: PathBuf,
        #[arg(long)]
        function: String,
        #[arg(long)]
        cycle: String,
    },
    /// Stable intersection of two cycles, recomputed with a second displacement.
    Intersect {
        file: PathBuf,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Green current of min{x_1, …, x_r} against x·Δ.
    GreenMin {
        #[arg(long)]
        r: usize,
    },
    /// Bézout count for two random plane curves.
    Bezout {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        e: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Diagonal against vertical pairing of a plane curve.
    Pairing {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Pushforward of a current along a piecewise affine map.
    Push {
        file: PathBuf,
        #[arg(long)]
        current: String,
        #[arg(long)]
        map: String,
    },
    /// Flat pullback of a current on the target complex.
    Pull {
        file: PathBuf,
        #[arg(long)]
        current: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Flatness of a map between weighted complexes.
    FlatCheck {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Integral of a current of top bidegree.
    Integrate {
        file: PathBuf,
        #[arg(long)]
        current: String,
        /// Also check Stokes' theorem on every summand.
        #[arg(long)]
        stokes: bool,
    },
    /// Stokes' theorem on every summand of a current.
    Stokes {
        file: PathBuf,
        #[arg(long)]
        current: String,
    },
    /// Laplacian of a function on a metric graph.
    GraphLaplacian {
        file: PathBuf,
        #[arg(long)]
        function: String,
    },
    /// Green function of a degree-zero divisor, vanishing at a base point.
    GraphGreen {
        file: PathBuf,
        #[arg(long)]
        divisor: String,
        /// `vertex:V`, `edge:E:T` or `ray:R:T`.
        #[arg(long, default_value = "vertex:0")]
        base: String,
    },
    /// Energy pairing of two functions on a compact metric graph.
    GraphPairing {
        file: PathBuf,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Level bounds along a division tower of a series.
    Newton {
        file: PathBuf,
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Length of the cokernel of a matrix over the p-adic integers.
    DvrLength {
        file: PathBuf,
        #[arg(long)]
        matrix: String,
    },
    /// SVG drawing of the planar complexes and currents of a document.
    Render {
        file: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        object: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Refine { .. } => "refine",
            Command::Balance { .. } => "balance",
            Command::CornerLocus { .. } => "corner-locus",
            Command::Intersect { .. } => "intersect",
            Command::GreenMin { .. } => "green-min",
            Command::Bezout { .. } => "bezout",
            Command::Pairing { .. } => "pairing",
            Command::Push { .. } => "push",
            Command::Pull { .. } => "pull",
            Command::FlatCheck { .. } => "flat-check",
            Command::Integrate { .. } => "integrate",
            Command::Stokes { .. } => "stokes",
            Command::GraphLaplacian { .. } => "graph-laplacian",
            Command::GraphGreen { .. } => "graph-green",
            Command::GraphPairing { .. } => "graph-pairing",
            Command::Newton { .. } => "newton",
            Command::DvrLength { .. } => "dvr-length",
            Command::Render { .. } => "render",
        }
    }
}

/// Exit code and machine-readable report of one command.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

fn holds(status: &str, body: Value) -> (i32, String, Value) {
    (EXIT_OK, status.into(), body)
}

fn violated(status: &str, body: Value) -> (i32, String, Value) {
    (EXIT_VIOLATED, status.into(), body)
}

pub fn run(cmd: &Command) -> Outcome {
    let name = cmd.name();
    match execute(cmd) {
        Ok((code, status, body)) => {
            let mut report = json!({ "command": name, "status": status });
            if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
                r.extend(b);
            }
            Outcome { code, report }
        }
        Err(e) => Outcome { code: EXIT_INPUT, report: json!({ "command": name, "status": "error", "error": e.report() }) },
    }
}

pub fn load(path: &Path) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok(Document::parse(&text)?)
}

fn rat(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

fn face(p: &Polyhedron) -> Value {
    serde_json::to_value(convert::poly_doc(p)).expect("polyhedra serialize")
}

fn doc_value(d: &Document) -> Value {
    serde_json::to_value(d.clone().canonical()).expect("documents serialize")
}

fn object<'a>(doc: &'a Document, name: &str) -> CliResult<&'a Object> {
    doc.get(name).ok_or_else(|| CliError::MissingObject(name.into()))
}

fn base(name: &str, o: &Object) -> String {
    format!("objects.{name}.{}", o.kind())
}

fn wrong(name: &str, expected: &'static str, o: &Object) -> CliError {
    CliError::WrongKind { name: name.into(), expected, found: o.kind() }
}

/// A complex (its weighted cells) or a current, as a current.
fn current_of(doc: &Document, name: &str) -> CliResult<PolyhedralCurrent> {
    let o = object(doc, name)?;
    let b = base(name, o);
    match o {
        Object::Current(c) => convert::current(&b, c),
        Object::Complex(c) => Ok(convert::complex_cycle(&b, c)?.into_current()),
        other => Err(wrong(name, "current", other)),
    }
}

fn cycle_of(doc: &Document, name: &str) -> CliResult<TropicalCycle> {
    let t = current_of(doc, name)?;
    TropicalCycle::from_current(t).at(&format!("objects.{name}"))
}

fn complex_of(doc: &Document, name: &str) -> CliResult<tropforms_core::complexes::WeightedComplex> {
    match object(doc, name)? {
        Object::Complex(c) => convert::complex(&format!("objects.{name}.complex"), c),
        other => Err(wrong(name, "complex", other)),
    }
}

fn graph_of(doc: &Document, name: &str) -> CliResult<MetGraph> {
    match object(doc, name)? {
        Object::Graph(g) => convert::graph(&format!("objects.{name}.graph"), g),
        other => Err(wrong(name, "graph", other)),
    }
}

fn graph_function_of(doc: &Document, name: &str) -> CliResult<(String, MetGraph, tropforms_core::metgraph::GraphPwl)> {
    match object(doc, name)? {
        Object::GraphFunction(f) => {
            let g = graph_of(doc, &f.graph)?;
            let phi = convert::graph_function(&format!("objects.{name}.graph_function"), f, &g)?;
            Ok((f.graph.clone(), g, phi))
        }
        other => Err(wrong(name, "graph_function", other)),
    }
}

fn map_of(doc: &Document, name: &str) -> CliResult<tropforms_core::currents::PwlMap> {
    match object(doc, name)? {
        Object::Map(m) => convert::map(&format!("objects.{name}.map"), m),
        other => Err(wrong(name, "map", other)),
    }
}

/// First cell where two currents differ.
fn first_difference(a: &PolyhedralCurrent, b: &PolyhedralCurrent, path: &str) -> CliResult<Value> {
    let diff = a.sub(b).at(path)?.normalize().at(path)?;
    Ok(match diff.summands().first() {
        Some(s) => json!({ "face": face(&s.cell), "difference": convert::form_doc(&s.form.to_ambient()) }),
        None => Value::Null,
    })
}

fn parse_point(s: &str) -> CliResult<GraphPoint> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("base point {s:?} is not vertex:V, edge:E:T or ray:R:T"));
    let index = |x: &str| x.parse::<usize>().map_err(|_| bad());
    let t = |x: &str| parse_rat(x).map_err(|_| bad());
    match parts.as_slice() {
        ["vertex", v] => Ok(GraphPoint::Vertex(index(v)?)),
        ["edge", e, x] => Ok(GraphPoint::Edge { edge: index(e)?, t: t(x)? }),
        ["ray", r, x] => Ok(GraphPoint::Ray { ray: index(r)?, t: t(x)? }),
        _ => Err(bad()),
    }
}

fn execute(cmd: &Command) -> CliResult<(i32, String, Value)> {
    match cmd {
        Command::Validate { file, object } => validate(&load(file)?, object.as_deref()),
        Command::Refine { file, object: name } => {
            let c = complex_of(&load(file)?, name)?;
            let r = c.refine().at(&format!("objects.{name}"))?;
            let out = Document::new().with(name, Object::Complex(convert::complex_doc(&r)));
            Ok(holds("refined", json!({ "cells": r.cells().len(), "document": doc_value(&out) })))
        }
        Command::Balance { file, object: name } => {
            let t = current_of(&load(file)?, name)?;
            let rep = check_balanced(&t, &LinearStructure::affine(t.ambient_dim())).at(&format!("objects.{name}"))?;
            if rep.balanced {
                Ok(holds("balanced", json!({})))
            } else {
                let witnesses: Vec<Value> = rep
                    .violations
                    .iter()
                    .map(|v| json!({ "face": face(&v.face), "function": v.witness.iter().map(rat).collect::<Vec<_>>(), "residual": convert::form_doc(&v.residual.to_ambient()) }))
                    .collect();
                Ok(violated("unbalanced", json!({ "witness": witnesses })))
            }
        }
        Command::CornerLocus { file, function, cycle } => {
            let doc = load(file)?;
            let phi = match object(&doc, function)? {
                Object::Pwl(p) => convert::pwl(&format!("objects.{function}.pwl"), p)?,
                other => return Err(wrong(function, "pwl", other)),
            };
            let c = cycle_of(&doc, cycle)?;
            let div = corner_locus(&phi, &c, &LinearStructure::affine(c.ambient_dim())).at("corner_locus")?;
            let multiplicities: Vec<Value> = div.multiplicities().at("corner_locus")?.iter().map(|(p, m)| json!({ "face": face(p), "multiplicity": rat(m) })).collect();
            let out = Document::new().with("corner_locus", Object::Current(convert::current_doc(div.current())));
            Ok(holds("ok", json!({ "multiplicities": multiplicities, "document": doc_value(&out) })))
        }
        Command::Intersect { file, first, second } => {
            let doc = load(file)?;
            intersect(&cycle_of(&doc, first)?, &cycle_of(&doc, second)?)
        }
        Command::GreenMin { r } => {
            let g = green_min(*r).at("r")?;
            let out = Document::new()
                .with("green", Object::Current(convert::current_doc(&g.current)))
                .with("x_delta", Object::Current(convert::current_doc(&g.expected)));
            let body = json!({ "r": r, "certificate": doc_value(&out) });
            if g.holds {
                Ok(holds("holds", body))
            } else {
                let w = first_difference(&g.current, &g.expected, "green")?;
                let mut body = body;
                body["witness"] = w;
                Ok(violated("violated", body))
            }
        }
        Command::Bezout { d, e, seed } => bezout(*d, *e, *seed),
        Command::Pairing { file, object: name } => {
            let c = cycle_of(&load(file)?, name)?;
            let r = diagonal_vertical_pairing(&c).at(&format!("objects.{name}"))?;
            let pts = |ps: &[(Vec<Rat>, Rat)]| ps.iter().map(|(p, m)| json!({ "point": p.iter().map(rat).collect::<Vec<_>>(), "multiplicity": rat(m) })).collect::<Vec<_>>();
            let body = json!({ "lhs": rat(&r.lhs), "rhs": rat(&r.rhs), "lhs_points": pts(&r.lhs_points), "rhs_points": pts(&r.rhs_points) });
            Ok(if r.holds { holds("holds", body) } else { violated("violated", body) })
        }
        Command::Push { file, current, map } => {
            let doc = load(file)?;
            let t = current_of(&doc, current)?;
            let f = map_of(&doc, map)?;
            let pushed = push_forward(&t, &f).at("push")?;
            let out = Document::new().with("pushed", Object::Current(convert::current_doc(&pushed)));
            let mut body = json!({ "document": doc_value(&out) });
            if let (Ok(a), Ok(b)) = (t.integrate(), pushed.integrate()) {
                body["integral"] = rat(&a);
                body["pushed_integral"] = rat(&b);
                if a != b {
                    body["witness"] = json!(pushed.summands().iter().map(|s| face(&s.cell)).collect::<Vec<_>>());
                    return Ok(violated("violated", body));
                }
            }
            Ok(holds("ok", body))
        }
        Command::Pull { file, current, map, source, target } => {
            let doc = load(file)?;
            let t = current_of(&doc, current)?;
            let f = map_of(&doc, map)?;
            let (x, y) = (complex_of(&doc, source)?, complex_of(&doc, target)?);
            let pulled = pull_back_flat(&t, &x, &y, &f).at("pull")?;
            let out = Document::new().with("pulled", Object::Current(convert::current_doc(&pulled)));
            Ok(holds("ok", json!({ "document": doc_value(&out) })))
        }
        Command::FlatCheck { file, map, source, target } => {
            let doc = load(file)?;
            let f = map_of(&doc, map)?;
            let (x, y) = (complex_of(&doc, source)?, complex_of(&doc, target)?);
            let rep = check_flat(&x, &y, &f).at("flat-check")?;
            let fibers: Vec<Value> = rep
                .fiber_weights
                .iter()
                .map(|w| json!({ "face": face(&w.face), "image": face(&w.image), "weight": serde_json::to_value(convert::weight_doc(&w.weight)).expect("weights serialize") }))
                .collect();
            let body = json!({ "faithfully_flat": rep.faithfully_flat, "fiber_weights": fibers });
            if rep.flat {
                Ok(holds("flat", body))
            } else {
                let mut witness: Vec<Value> = rep
                    .violations
                    .iter()
                    .map(|v| json!({ "face": face(&v.face), "sums": v.sums.iter().map(|(c, s)| json!({ "image_cell": face(c), "sum": rat(s) })).collect::<Vec<_>>() }))
                    .collect();
                witness.extend(rep.excess_fibers.iter().map(|p| json!({ "face": face(p), "reason": "fiber exceeds the relative dimension" })));
                let mut body = body;
                body["witness"] = Value::Array(witness);
                Ok(violated("not_flat", body))
            }
        }
        Command::Integrate { file, current, stokes } => {
            let t = current_of(&load(file)?, current)?;
            if *stokes {
                let body = match t.integrate() {
                    Ok(v) => json!({ "integral": rat(&v) }),
                    Err(_) => json!({ "integral": Value::Null }),
                };
                return stokes_body(&t, body);
            }
            let value = t.integrate().at(&format!("objects.{current}"))?;
            Ok(holds("ok", json!({ "integral": rat(&value) })))
        }
        Command::Stokes { file, current } => stokes_body(&current_of(&load(file)?, current)?, json!({})),
        Command::GraphLaplacian { file, function } => {
            let doc = load(file)?;
            let (gname, g, phi) = graph_function_of(&doc, function)?;
            let lap = laplacian(&phi, &g).at(&format!("objects.{function}"))?;
            let out = Document::new().with("laplacian", Object::Divisor(convert::divisor_doc(&gname, &lap)));
            let body = json!({ "total_mass": rat(&lap.degree()), "document": doc_value(&out) });
            if !g.is_compact() || lap.degree().is_zero() {
                Ok(holds("ok", body))
            } else {
                let mut body = body;
                body["witness"] = json!(lap.points.keys().map(|p| p.to_string()).collect::<Vec<_>>());
                Ok(violated("violated", body))
            }
        }
        Command::GraphGreen { file, divisor, base } => {
            let doc = load(file)?;
            let (gname, g, d) = match object(&doc, divisor)? {
                Object::Divisor(d) => {
                    let g = graph_of(&doc, &d.graph)?;
                    let div = convert::divisor(&format!("objects.{divisor}.divisor"), d, &g)?;
                    (d.graph.clone(), g, div)
                }
                other => return Err(wrong(divisor, "divisor", other)),
            };
            let bp = parse_point(base)?;
            let f = green_solve(&g, &d, &bp).at(&format!("objects.{divisor}"))?;
            let lap = laplacian(&f, &g).at("green")?;
            let out = Document::new().with("green", Object::GraphFunction(convert::graph_function_doc(&gname, &f)));
            let body = json!({ "document": doc_value(&out) });
            if lap == d {
                Ok(holds("holds", body))
            } else {
                let bad: Vec<Value> = d
                    .points
                    .keys()
                    .chain(lap.points.keys())
                    .filter(|p| d.points.get(*p) != lap.points.get(*p))
                    .map(|p| json!({ "point": p.to_string(), "expected": d.points.get(p).map(rat), "found": lap.points.get(p).map(rat) }))
                    .collect();
                let mut body = body;
                body["witness"] = Value::Array(bad);
                Ok(violated("violated", body))
            }
        }
        Command::GraphPairing { file, first, second } => {
            let doc = load(file)?;
            let (n1, g, f1) = graph_function_of(&doc, first)?;
            let (n2, _, f2) = graph_function_of(&doc, second)?;
            if n1 != n2 {
                return Err(CliError::Usage(format!("functions live on different graphs {n1:?} and {n2:?}")));
            }
            let p = pairing(&f1, &f2, &g).at("graph-pairing")?;
            let body = json!({ "value": rat(&p.value), "reversed": rat(&p.reversed) });
            Ok(if p.symmetric { holds("symmetric", body) } else { violated("asymmetric", body) })
        }
        Command::Newton { file, series, depth } => {
            let doc = load(file)?;
            let s = match object(&doc, series)? {
                Object::Series(s) => convert::series(&format!("objects.{series}.series"), s)?,
                other => return Err(wrong(series, "series", other)),
            };
            let rep = level_bound_check(&s, *depth).at(&format!("objects.{series}"))?;
            let slopes = torsion_valuations(&s, None).at(&format!("objects.{series}"))?;
            let body = json!({
                "minima": rep.minima.iter().map(rat).collect::<Vec<_>>(),
                "first_bound": rat(&rep.first_bound),
                "first_equality": rep.first_equality,
                "torsion_valuations": slopes.iter().map(|(v, m)| json!({ "valuation": rat(v), "count": m })).collect::<Vec<_>>(),
            });
            if rep.holds {
                Ok(holds("holds", body))
            } else {
                let level = if !rep.first_holds { 1 } else { rep.step_holds.iter().position(|h| !h).map(|i| i + 2).unwrap_or(0) };
                let mut body = body;
                body["witness"] = json!({ "level": level });
                Ok(violated("violated", body))
            }
        }
        Command::DvrLength { file, matrix } => {
            let doc = load(file)?;
            let (m, blocks) = match object(&doc, matrix)? {
                Object::Matrix(m) => (convert::matrix(&format!("objects.{matrix}.matrix"), m)?, m.blocks.clone()),
                other => return Err(wrong(matrix, "matrix", other)),
            };
            let r = dvr_length(&m, blocks.as_deref()).at(&format!("objects.{matrix}"))?;
            let block_values: Vec<Value> = r
                .blocks
                .iter()
                .map(|b| json!({ "start": b.start, "size": b.size, "length": rat(&b.length), "per_unit": rat(&b.per_unit) }))
                .collect();
            let body = json!({ "length": rat(&r.length), "det_valuation": rat(&r.det_valuation), "blocks": block_values });
            if r.holds && r.blocks_hold {
                Ok(holds("holds", body))
            } else {
                let mut body = body;
                body["witness"] = json!({ "length": rat(&r.length), "det_valuation": rat(&r.det_valuation), "blocks_hold": r.blocks_hold });
                Ok(violated("violated", body))
            }
        }
        Command::Render { file, output, object: names } => {
            let doc = load(file)?;
            let svg = render_svg(&doc, names)?;
            std::fs::write(output, &svg.text).map_err(|e| CliError::Io { path: output.display().to_string(), message: e.to_string() })?;
            Ok(holds("rendered", json!({ "output": output.display().to_string(), "paths": svg.paths, "markers": svg.markers })))
        }
    }
}

fn validate(doc: &Document, only: Option<&str>) -> CliResult<(i32, String, Value)> {
    let names: Vec<&String> = match only {
        Some(n) => vec![doc.objects.get_key_value(n).ok_or_else(|| CliError::MissingObject(n.into()))?.0],
        None => doc.objects.keys().collect(),
    };
    let mut witness = Vec::new();
    for name in names {
        let o = &doc.objects[name];
        let b = base(name, o);
        match o {
            Object::Complex(c) => {
                let wc = convert::complex(&b, c)?;
                for v in wc.validate().at(&b)?.violations {
                    let mut w = json!({ "object": name, "violation": v.to_string() });
                    use tropforms_core::complexes::Violation::*;
                    match &v {
                        IntersectionNotFace { intersection: f, .. } | WeightMismatch { overlap: f, .. } => w["face"] = face(f),
                        WeightSpan { cell } | PureDimension { cell, .. } => w["face"] = face(&wc.cells()[*cell]),
                    }
                    witness.push(w);
                }
            }
            Object::Pwl(p) => {
                let f = convert::pwl(&b, p)?;
                for d in f.check_continuity().at(&b)? {
                    witness.push(json!({ "object": name, "violation": "discontinuous", "pieces": [d.pieces.0, d.pieces.1], "point": d.point.iter().map(rat).collect::<Vec<_>>() }));
                }
            }
            Object::Current(c) => {
                convert::current(&b, c)?;
            }
            Object::Graph(g) => {
                convert::graph(&b, g)?;
            }
            Object::GraphFunction(_) => {
                graph_function_of(doc, name)?;
            }
            Object::Divisor(d) => {
                let g = graph_of(doc, &d.graph)?;
                convert::divisor(&b, d, &g)?;
            }
            Object::Series(s) => {
                convert::series(&b, s)?;
            }
            Object::Matrix(m) => {
                convert::matrix(&b, m)?;
            }
            Object::Map(m) => {
                convert::map(&b, m)?;
            }
        }
    }
    let body = json!({ "objects": doc.objects.len() });
    if witness.is_empty() {
        Ok(holds("valid", body))
    } else {
        let mut body = body;
        body["witness"] = Value::Array(witness);
        Ok(violated("invalid", body))
    }
}

fn intersect(c: &TropicalCycle, d: &TropicalCycle) -> CliResult<(i32, String, Value)> {
    let n = c.ambient_dim();
    let mut results = Vec::new();
    for k in 0..MAX_DISPLACEMENTS {
        let v = displacement_vector(n, k);
        if let Displaced::Generic(t, _) = intersect_displaced(c.current(), d.current(), &v).at("intersect")? {
            results.push((v, t));
            if results.len() == 2 {
                break;
            }
        }
    }
    if results.len() < 2 {
        return Err(CliError::core("intersect", tropforms_core::Error::NonGenericDisplacement(MAX_DISPLACEMENTS)));
    }
    let (v1, t1) = &results[0];
    let (v2, t2) = &results[1];
    let vectors = json!([v1.iter().map(rat).collect::<Vec<_>>(), v2.iter().map(rat).collect::<Vec<_>>()]);
    if !t1.equals(t2).at("intersect")? {
        let w = first_difference(t1, t2, "intersect")?;
        return Ok(violated("displacement_dependent", json!({ "displacements": vectors, "witness": w })));
    }
    let cycle = TropicalCycle::from_current(t1.normalize().at("intersect")?).at("intersect")?;
    let multiplicities: Vec<Value> = cycle.multiplicities().at("intersect")?.iter().map(|(p, m)| json!({ "face": face(p), "multiplicity": rat(m) })).collect();
    let out = Document::new().with("intersection", Object::Current(convert::current_doc(cycle.current())));
    Ok(holds("ok", json!({ "displacements": vectors, "degree": rat(&cycle.degree().at("intersect")?), "multiplicities": multiplicities, "document": doc_value(&out) })))
}

fn bezout(d: usize, e: usize, seed: u64) -> CliResult<(i32, String, Value)> {
    if d == 0 || e == 0 {
        return Err(CliError::Usage("degrees must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c1 = random_curve(&mut rng, d).at("bezout.first")?;
    let c2 = random_curve(&mut rng, e).at("bezout.second")?;
    let forward = tropforms_core::intersection::stable_intersect(&c1, &c2).at("bezout")?;
    let backward = tropforms_core::intersection::stable_intersect(&c2, &c1).at("bezout")?;
    let degree = forward.cycle.degree().at("bezout")?;
    let expected = Rat::from_integer(((d * e) as i64).into());
    let out = Document::new()
        .with("first", Object::Current(convert::current_doc(c1.current())))
        .with("second", Object::Current(convert::current_doc(c2.current())))
        .with("intersection", Object::Current(convert::current_doc(forward.cycle.current())));
    let body = json!({ "d": d, "e": e, "seed": seed, "degree": rat(&degree), "expected": rat(&expected), "document": doc_value(&out) });
    if !forward.cycle.equals(&backward.cycle).at("bezout")? {
        let mut body = body;
        body["witness"] = first_difference(forward.cycle.current(), backward.cycle.current(), "bezout")?;
        return Ok(violated("not_commutative", body));
    }
    if degree != expected {
        let mut body = body;
        body["witness"] = json!(forward.cycle.multiplicities().at("bezout")?.iter().map(|(p, m)| json!({ "face": face(p), "multiplicity": rat(m) })).collect::<Vec<_>>());
        return Ok(violated("wrong_degree", body));
    }
    Ok(holds("holds", body))
}

fn stokes_body(t: &PolyhedralCurrent, mut body: Value) -> CliResult<(i32, String, Value)> {
    let mut checks = Vec::new();
    let mut witness = Vec::new();
    for (i, s) in t.summands().iter().enumerate() {
        let d = s.cell.dim();
        if d == 0 {
            continue;
        }
        let path = format!("summands[{i}]");
        let alpha = s.form.component(d - 1, d);
        let beta = s.form.component(d, d - 1);
        let r = stokes_check(&s.cell, &s.weight, &alpha, &beta).at(&path)?;
        let entry = json!({
            "summand": i,
            "d_prime": [rat(&r.d_prime_interior), rat(&r.d_prime_boundary)],
            "d_double_prime": [rat(&r.d_double_prime_interior), rat(&r.d_double_prime_boundary)],
        });
        if !r.holds() {
            witness.push(json!({ "face": face(&s.cell), "check": entry.clone() }));
        }
        checks.push(entry);
    }
    body["stokes"] = Value::Array(checks);
    if witness.is_empty() {
        Ok(holds("holds", body))
    } else {
        body["witness"] = Value::Array(witness);
        Ok(violated("violated", body))
    }
}
