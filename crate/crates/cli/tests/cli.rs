use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tropforms_cli::document::Document;
use tropforms_cli::render::render_svg;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn tropforms(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_tropforms")).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("report is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), report)
}

fn on(file: &str, args: &[&str]) -> (i32, Value) {
    let path = corpus(file);
    let mut all = vec![args[0], path.to_str().unwrap()];
    all.extend(&args[1..]);
    tropforms(&all)
}

#[test]
fn corpus_round_trips_byte_for_byte() {
    let mut seen = 0;
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = Document::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(doc.to_text(), text, "{} is not canonical", path.display());
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn tropical_line_is_balanced() {
    let (code, r) = on("tropical_line.json", &["balance", "--object", "line"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "balanced");
}

#[test]
fn unbalanced_line_has_vertex_witness() {
    let (code, r) = on("unbalanced_line.json", &["balance", "--object", "line"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "unbalanced");
    assert_eq!(r["witness"][0]["face"]["vertices"], serde_json::json!([["0", "0"]]));
}

#[test]
fn green_min_certificate() {
    let (code, r) = tropforms(&["green-min", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "holds");
    assert!(r["certificate"]["objects"]["x_delta"]["current"].is_object());
    assert!(r["certificate"]["objects"]["green"]["current"].is_object());
}

#[test]
fn pairing_on_line() {
    let (code, r) = on("line_u2w.json", &["pairing", "--object", "line"]);
    assert_eq!(code, 0);
    assert_eq!(r["lhs"], "2");
    assert_eq!(r["rhs"], "2");
}

#[test]
fn bezout_degree_and_seed() {
    let (code, r) = tropforms(&["bezout", "--d", "2", "--e", "3", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(r["degree"], "6");
    let (_, again) = tropforms(&["bezout", "--d", "2", "--e", "3", "--seed", "11"]);
    assert_eq!(r, again);
}

#[test]
fn corner_locus_and_intersection() {
    let (code, r) = on("tropical_line.json", &["corner-locus", "--function", "phi", "--cycle", "line"]);
    assert_eq!(code, 0);
    assert!(r["multiplicities"].is_array());
    let (code, r) = on("tropical_line.json", &["intersect", "--first", "line", "--second", "line"]);
    assert_eq!(code, 0);
    assert_eq!(r["degree"], "1");
}

#[test]
fn flatness() {
    let (code, r) = on("flat_wedge.json", &["flat-check", "--map", "projection", "--source", "wedge", "--target", "line"]);
    assert_eq!((code, r["status"].as_str()), (0, Some("flat")));
    let (code, _) = on("flat_wedge.json", &["pull", "--current", "point", "--map", "projection", "--source", "wedge", "--target", "line"]);
    assert_eq!(code, 0);
    let (code, r) = on("disjoint_axes.json", &["flat-check", "--map", "projection", "--source", "source", "--target", "target"]);
    assert_eq!((code, r["status"].as_str()), (1, Some("not_flat")));
    assert!(!r["witness"].as_array().unwrap().is_empty());
    let (code, r) = on("disjoint_axes.json", &["pull", "--current", "point", "--map", "projection", "--source", "source", "--target", "target"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
}

#[test]
fn integrals_and_stokes() {
    let (code, r) = on("triangle.json", &["integrate", "--current", "mass"]);
    assert_eq!((code, r["integral"].as_str()), (0, Some("5/2")));
    let (code, r) = on("triangle.json", &["push", "--current", "mass", "--map", "projection"]);
    assert_eq!((code, r["pushed_integral"].as_str()), (0, Some("5/2")));
    for (file, cmd) in [("stokes_triangle.json", "stokes"), ("stokes_segment.json", "stokes")] {
        let (code, r) = on(file, &[cmd, "--current", "form"]);
        assert_eq!((code, r["status"].as_str()), (0, Some("holds")), "{file}");
    }
    let (code, _) = on("stokes_triangle.json", &["integrate", "--current", "form", "--stokes"]);
    assert_eq!(code, 0);
    let (code, _) = on("stokes_segment.json", &["integrate", "--current", "form"]);
    assert_eq!(code, 2);
}

#[test]
fn metric_graph_commands() {
    let (code, r) = on("triangle_graph.json", &["graph-laplacian", "--function", "f"]);
    assert_eq!((code, r["total_mass"].as_str()), (0, Some("0")));
    let (code, r) = on("triangle_graph.json", &["graph-green", "--divisor", "divisor", "--base", "edge:0:1/2"]);
    assert_eq!((code, r["status"].as_str()), (0, Some("holds")));
    let (code, r) = on("triangle_graph.json", &["graph-pairing", "--first", "f", "--second", "g"]);
    assert_eq!(code, 0);
    assert_eq!(r["value"], r["reversed"]);
    let (code, _) = on("triangle_graph.json", &["graph-green", "--divisor", "divisor", "--base", "nowhere"]);
    assert_eq!(code, 2);
}

#[test]
fn newton_and_dvr() {
    let (code, r) = on("series.json", &["newton", "--series", "pi"]);
    assert_eq!((code, r["status"].as_str()), (0, Some("holds")));
    for m in ["small", "blocked"] {
        let (code, r) = on("matrices.json", &["dvr-length", "--matrix", m]);
        assert_eq!(code, 0);
        assert_eq!(r["length"], r["det_valuation"]);
    }
}

#[test]
fn input_errors_exit_two_with_paths() {
    let cases = [
        ("invalid/zero_denominator.json", "parse", "objects.p.complex.cells[0].vertices[0][0]"),
        ("invalid/missing_weight.json", "schema", "objects.p.complex.cells[0].weight"),
        ("invalid/unknown_field.json", "schema", "extra"),
    ];
    for (file, kind, path) in cases {
        let (code, r) = on(file, &["validate"]);
        assert_eq!(code, 2, "{file}");
        assert_eq!(r["error"]["kind"], kind, "{file}");
        assert_eq!(r["error"]["path"], path, "{file}");
    }
    let (code, r) = on("tropical_line.json", &["balance", "--object", "missing"]);
    assert_eq!((code, r["status"].as_str()), (2, Some("error")));
    let (code, _) = tropforms(&["balance", "/nonexistent.json", "--object", "x"]);
    assert_eq!(code, 2);
}

#[test]
fn discontinuous_function_is_invalid() {
    let (code, r) = on("invalid/discontinuous.json", &["validate"]);
    assert_eq!(code, 1);
    assert_eq!(r["witness"][0]["point"], serde_json::json!(["0"]));
}

#[test]
fn render_tropical_line() {
    let out = std::env::temp_dir().join("tropforms_line.svg");
    let (code, r) = on("tropical_line.json", &["render", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!((r["paths"].as_u64(), r["markers"].as_u64()), (Some(3), Some(1)));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("<path").count(), 3);
    assert_eq!(svg.matches("<circle").count(), 1);
    let again = render_svg(&Document::parse(&std::fs::read_to_string(corpus("tropical_line.json")).unwrap()).unwrap(), &[]).unwrap();
    assert_eq!(again.text, svg);
}

#[test]
fn render_labels_negative_multiplicity() {
    let text = r#"{"schema_version":"1","objects":{"d":{"current":{"ambient":2,"summands":[
        {"id":0,"cell":{"vertices":[["1","2"]]},"weight":{"basis":[],"scale":"1"},"form":[{"poly":[{"exponents":[0,0],"coefficient":"-1"}]}]}]}}}}"#;
    let svg = render_svg(&Document::parse(text).unwrap(), &[]).unwrap();
    assert_eq!(svg.markers, 1);
    assert!(svg.text.contains(">\u{2212}1</text>"), "{}", svg.text);
}

#[test]
fn render_rejects_non_planar_and_accepts_empty() {
    let out = std::env::temp_dir().join("tropforms_bad.svg");
    let (code, _) = on("invalid/ambient_three.json", &["render", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 2);
    let out = std::env::temp_dir().join("tropforms_empty.svg");
    let (code, r) = on("empty.json", &["render", "--output", out.to_str().unwrap()]);
    assert_eq!((code, r["paths"].as_u64()), (0, Some(0)));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\"") && svg.ends_with("</svg>\n"));
}
