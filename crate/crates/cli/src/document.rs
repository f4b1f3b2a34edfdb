use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use tropforms_core::exactlin::rat::{format_rat, parse_rat};
use tropforms_core::exactlin::Rat;

pub const SCHEMA_VERSION: &str = "1";

/// Rational serialized as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JRat(pub Rat);

impl Serialize for JRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for JRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map(JRat).map_err(|e| D::Error::custom(format!("{RATIONAL_ERROR}: {e}")))
    }
}

const RATIONAL_ERROR: &str = "invalid rational";

impl From<Rat> for JRat {
    fn from(r: Rat) -> Self {
        JRat(r)
    }
}

impl From<&Rat> for JRat {
    fn from(r: &Rat) -> Self {
        JRat(r.clone())
    }
}

pub type JVec = Vec<JRat>;

fn is_false(b: &bool) -> bool {
    !*b
}

/// Polyhedron as vertices, rays and lineality generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub vertices: Vec<JVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<JVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<JVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    pub basis: Vec<JVec>,
    pub scale: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub id: usize,
    pub vertices: Vec<JVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<JVec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<JVec>,
    /// Carrier cells must carry a weight.
    #[serde(default, skip_serializing_if = "is_false")]
    pub carrier: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightDoc>,
}

impl CellDoc {
    pub fn polyhedron(&self) -> PolyDoc {
        PolyDoc { vertices: self.vertices.clone(), rays: self.rays.clone(), lineality: self.lineality.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub ambient: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure_dim: Option<usize>,
    pub cells: Vec<CellDoc>,
}

/// Affine function `⟨gradient, x⟩ + constant` on one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub id: usize,
    pub cell: PolyDoc,
    pub gradient: JVec,
    pub constant: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwlDoc {
    pub ambient: usize,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub exponents: Vec<u32>,
    pub coefficient: JRat,
}

/// `poly · d′x_{i₁} ∧ … ∧ d″x_{j₁} ∧ …` with strictly increasing index lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTermDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_prime: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d_double_prime: Vec<usize>,
    pub poly: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDoc {
    pub id: usize,
    pub cell: PolyDoc,
    pub weight: WeightDoc,
    /// Form in ambient coordinates, restricted to the cell.
    pub form: Vec<FormTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurrentDoc {
    pub ambient: usize,
    pub summands: Vec<SummandDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub length: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<EdgeDoc>,
    /// Base vertex of each infinite ray.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OnSegmentDoc {
    pub index: usize,
    pub t: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PointDoc {
    Vertex(usize),
    Edge(OnSegmentDoc),
    Ray(OnSegmentDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotDoc {
    pub t: JRat,
    pub value: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeKnotsDoc {
    pub edge: usize,
    pub knots: Vec<KnotDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayKnotsDoc {
    pub ray: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub knots: Vec<KnotDoc>,
    pub slope: JRat,
}

/// Continuous piecewise affine function on a graph object of the same document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFunctionDoc {
    pub graph: String,
    pub vertex_values: JVec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeKnotsDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<RayKnotsDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointMassDoc {
    pub point: PointDoc,
    pub multiplicity: JRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDoc {
    pub graph: String,
    pub points: Vec<PointMassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDoc {
    pub index: u64,
    pub valuation: JRat,
}

/// Series `Σ a_i X^{q^i}` recorded by the valuations of its nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub q: u64,
    pub h: u32,
    pub valuations: Vec<ValuationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub p: u64,
    pub rows: Vec<JVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapPieceDoc {
    pub id: usize,
    pub cell: PolyDoc,
    pub matrix: Vec<JVec>,
    pub offset: JVec,
}

/// Piecewise affine map `ℝ^source → ℝ^target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: usize,
    pub target: usize,
    pub pieces: Vec<MapPieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Object {
    Complex(ComplexDoc),
    Pwl(PwlDoc),
    Current(CurrentDoc),
    Graph(GraphDoc),
    Series(SeriesDoc),
    Matrix(MatrixDoc),
    Map(MapDoc),
    GraphFunction(GraphFunctionDoc),
    Divisor(DivisorDoc),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Complex(_) => "complex",
            Object::Pwl(_) => "pwl",
            Object::Current(_) => "current",
            Object::Graph(_) => "graph",
            Object::Series(_) => "series",
            Object::Matrix(_) => "matrix",
            Object::Map(_) => "map",
            Object::GraphFunction(_) => "graph_function",
            Object::Divisor(_) => "divisor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: String,
    pub objects: BTreeMap<String, Object>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DocErrorKind {
    Syntax,
    Parse,
    Schema,
}

impl fmt::Display for DocErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocErrorKind::Syntax => "syntax",
            DocErrorKind::Parse => "parse",
            DocErrorKind::Schema => "schema",
        })
    }
}

/// Document error located by a path such as `objects.L.complex.cells[0].weight`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{kind} error at {path}: {message}")]
pub struct DocError {
    pub kind: DocErrorKind,
    pub path: String,
    pub message: String,
}

impl DocError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocError { kind: DocErrorKind::Schema, path: path.into(), message: message.into() }
    }
}

impl Document {
    pub fn new() -> Self {
        Document { schema_version: SCHEMA_VERSION.into(), objects: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, o: Object) -> Self {
        self.objects.insert(name.into(), o);
        self
    }

    /// Parses, checks the schema rules that serde cannot express and canonicalizes.
    pub fn parse(text: &str) -> Result<Document, DocError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = inner.to_string();
            let kind = if inner.is_syntax() || inner.is_eof() {
                DocErrorKind::Syntax
            } else if message.contains(RATIONAL_ERROR) {
                DocErrorKind::Parse
            } else {
                DocErrorKind::Schema
            };
            DocError { kind, path, message }
        })?;
        doc.check()?;
        Ok(doc.canonical())
    }

    fn check(&self) -> Result<(), DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocError::schema("schema_version", format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", self.schema_version)));
        }
        for (name, o) in &self.objects {
            let base = format!("objects.{name}.{}", o.kind());
            match o {
                Object::Complex(c) => {
                    check_ids(&base, "cells", c.cells.iter().map(|x| x.id))?;
                    for (i, cell) in c.cells.iter().enumerate() {
                        if cell.carrier && cell.weight.is_none() {
                            return Err(DocError::schema(format!("{base}.cells[{i}].weight"), "carrier cell without weight"));
                        }
                    }
                }
                Object::Pwl(p) => check_ids(&base, "pieces", p.pieces.iter().map(|x| x.id))?,
                Object::Current(c) => {
                    check_ids(&base, "summands", c.summands.iter().map(|x| x.id))?;
                    for (i, s) in c.summands.iter().enumerate() {
                        check_form(&format!("{base}.summands[{i}].form"), &s.form)?;
                    }
                }
                Object::Graph(g) => check_ids(&base, "edges", g.edges.iter().map(|x| x.id))?,
                Object::Map(m) => check_ids(&base, "pieces", m.pieces.iter().map(|x| x.id))?,
                Object::GraphFunction(f) => {
                    let mut seen = BTreeSet::new();
                    for (i, e) in f.edges.iter().enumerate() {
                        if !seen.insert(e.edge) {
                            return Err(DocError::schema(format!("{base}.edges[{i}].edge"), format!("edge {} listed twice", e.edge)));
                        }
                    }
                }
                Object::Series(_) | Object::Matrix(_) | Object::Divisor(_) => {}
            }
        }
        Ok(())
    }

    /// Cells, pieces, summands and edges sorted by id; other lists in their canonical order.
    pub fn canonical(mut self) -> Document {
        for o in self.objects.values_mut() {
            match o {
                Object::Complex(c) => c.cells.sort_by_key(|x| x.id),
                Object::Pwl(p) => p.pieces.sort_by_key(|x| x.id),
                Object::Current(c) => {
                    c.summands.sort_by_key(|x| x.id);
                    for s in &mut c.summands {
                        for t in &mut s.form {
                            t.poly.sort();
                        }
                        s.form.sort();
                    }
                }
                Object::Graph(g) => g.edges.sort_by_key(|x| x.id),
                Object::Map(m) => m.pieces.sort_by_key(|x| x.id),
                Object::GraphFunction(f) => {
                    f.edges.sort_by_key(|x| x.edge);
                    f.rays.sort_by_key(|x| x.ray);
                }
                Object::Divisor(d) => d.points.sort(),
                Object::Series(s) => s.valuations.sort_by_key(|x| x.index),
                Object::Matrix(_) => {}
            }
        }
        self
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.clone().canonical()).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }
}

impl Default for Document {
    fn default() -> Self {
        Self::new()
    }
}

fn check_ids(base: &str, field: &str, ids: impl Iterator<Item = usize>) -> Result<(), DocError> {
    let mut ids: Vec<usize> = ids.collect();
    ids.sort_unstable();
    if let Some(i) = ids.iter().enumerate().position(|(i, &id)| i != id) {
        return Err(DocError::schema(format!("{base}.{field}"), format!("ids must be 0..{} without gaps or repeats; id {i} is missing", ids.len())));
    }
    Ok(())
}

fn check_form(path: &str, form: &[FormTermDoc]) -> Result<(), DocError> {
    for (i, t) in form.iter().enumerate() {
        for (field, idx) in [("d_prime", &t.d_prime), ("d_double_prime", &t.d_double_prime)] {
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DocError::schema(format!("{path}[{i}].{field}"), "indices must increase strictly"));
            }
        }
    }
    Ok(())
}
