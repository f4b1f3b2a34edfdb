//! Python bindings. Rationals cross the boundary as `fractions.Fraction`, documents as JSON text.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropforms_cli::commands::{run as run_command, Cli};
use tropforms_cli::convert;
use tropforms_cli::document::{Document as Doc, Object};
use tropforms_core::complexes::{LinearStructure, PwlFunction};
use tropforms_core::currents::{boundary_ddoubleprime, boundary_dprime, check_balanced, corner_locus, PolyhedralCurrent, TropicalCycle};
use tropforms_core::exactlin::rat::{format_rat, parse_rat};
use tropforms_core::exactlin::Rat;
use tropforms_core::intersection::random::random_curve as core_random_curve;
use tropforms_core::intersection::{diagonal_vertical_pairing, green_min as core_green_min, line_cycle as core_line_cycle, stable_intersect};
use tropforms_core::newton::{dvr_length as core_dvr_length, level_bound_check, DvrMatrix, PiSeries};

create_exception!(tropforms, TropformsError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    TropformsError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rat(x),))
}

/// Accepts `int`, `str` ("p/q") or `fractions.Fraction`.
fn to_rat(x: &Bound<'_, PyAny>) -> PyResult<Rat> {
    parse_rat(&x.str()?.to_string()).map_err(err)
}

fn json<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn current_json(t: &PolyhedralCurrent) -> String {
    Doc::new().with("current", Object::Current(convert::current_doc(t))).to_text()
}

/// A parsed and validated JSON document.
#[pyclass(module = "tropforms")]
struct Document {
    inner: Doc,
}

#[pymethods]
impl Document {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Doc::parse(text).map(|inner| Document { inner }).map_err(err)
    }

    /// Canonical JSON text; parsing it again gives the same bytes.
    fn to_json(&self) -> String {
        self.inner.to_text()
    }

    fn names(&self) -> Vec<String> {
        self.inner.objects.keys().cloned().collect()
    }

    fn kind(&self, name: &str) -> PyResult<&'static str> {
        self.object(name).map(|o| o.kind())
    }

    /// The weighted cells of a complex, or a current, as a tropical cycle.
    fn cycle(&self, name: &str) -> PyResult<Cycle> {
        let t = self.current(name)?.inner;
        TropicalCycle::from_current(t).map(|inner| Cycle { inner }).map_err(err)
    }

    fn current(&self, name: &str) -> PyResult<Current> {
        let o = self.object(name)?;
        let base = format!("objects.{name}.{}", o.kind());
        let inner = match o {
            Object::Current(c) => convert::current(&base, c).map_err(err)?,
            Object::Complex(c) => convert::complex_cycle(&base, c).map_err(err)?.into_current(),
            other => return Err(err(format!("{name} is a {}, not a current", other.kind()))),
        };
        Ok(Current { inner })
    }

    fn pwl(&self, name: &str) -> PyResult<Pwl> {
        match self.object(name)? {
            Object::Pwl(p) => convert::pwl(&format!("objects.{name}.pwl"), p).map(|inner| Pwl { inner }).map_err(err),
            other => Err(err(format!("{name} is a {}, not a pwl", other.kind()))),
        }
    }

    fn __repr__(&self) -> String {
        format!("Document({:?})", self.names())
    }
}

impl Document {
    fn object(&self, name: &str) -> PyResult<&Object> {
        self.inner.get(name).ok_or_else(|| err(format!("no object named {name:?}")))
    }
}

/// Piecewise affine function on a polyhedral subdivision.
#[pyclass(module = "tropforms")]
struct Pwl {
    inner: PwlFunction,
}

#[pymethods]
impl Pwl {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    /// Points where neighbouring pieces disagree.
    fn discontinuities(&self) -> PyResult<Vec<Vec<String>>> {
        let d = self.inner.check_continuity().map_err(err)?;
        Ok(d.iter().map(|x| x.point.iter().map(format_rat).collect()).collect())
    }
}

/// Sum of polyhedral cells weighted by superforms.
#[pyclass(module = "tropforms")]
struct Current {
    inner: PolyhedralCurrent,
}

#[pymethods]
impl Current {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn integrate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.integrate().map_err(err)?)
    }

    fn is_zero(&self) -> PyResult<bool> {
        self.inner.is_zero().map_err(err)
    }

    fn equals(&self, other: &Current) -> PyResult<bool> {
        self.inner.equals(&other.inner).map_err(err)
    }

    fn normalize(&self) -> PyResult<Current> {
        self.inner.normalize().map(|inner| Current { inner }).map_err(err)
    }

    fn boundary_dprime(&self) -> PyResult<Current> {
        boundary_dprime(&self.inner).map(|inner| Current { inner }).map_err(err)
    }

    fn boundary_ddoubleprime(&self) -> PyResult<Current> {
        boundary_ddoubleprime(&self.inner).map(|inner| Current { inner }).map_err(err)
    }

    fn __add__(&self, other: &Current) -> PyResult<Current> {
        self.inner.add(&other.inner).map(|inner| Current { inner }).map_err(err)
    }

    fn __sub__(&self, other: &Current) -> PyResult<Current> {
        self.inner.sub(&other.inner).map(|inner| Current { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        current_json(&self.inner)
    }
}

/// Weighted polyhedral cycle.
#[pyclass(module = "tropforms")]
struct Cycle {
    inner: TropicalCycle,
}

#[pymethods]
impl Cycle {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn dim(&self) -> Option<usize> {
        self.inner.dim()
    }

    /// Total multiplicity of a zero-dimensional cycle.
    fn degree<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.degree().map_err(err)?)
    }

    fn is_balanced(&self) -> PyResult<bool> {
        Ok(check_balanced(self.inner.current(), &LinearStructure::affine(self.inner.ambient_dim())).map_err(err)?.balanced)
    }

    /// `(vertices, multiplicity)` for every cell.
    fn multiplicities<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .inner
            .multiplicities()
            .map_err(err)?
            .iter()
            .map(|(p, m)| {
                let verts: Vec<Vec<String>> = p.vertices().iter().map(|v| v.iter().map(format_rat).collect()).collect();
                Ok((verts, fraction(py, m)?))
            })
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    /// Stable intersection, checked against a second displacement.
    fn intersect(&self, other: &Cycle) -> PyResult<Cycle> {
        stable_intersect(&self.inner, &other.inner).map(|s| Cycle { inner: s.cycle }).map_err(err)
    }

    /// Corner locus of `phi` on this cycle.
    fn corner_locus(&self, phi: &Pwl) -> PyResult<Cycle> {
        corner_locus(&phi.inner, &self.inner, &LinearStructure::affine(self.inner.ambient_dim())).map(|inner| Cycle { inner }).map_err(err)
    }

    /// Diagonal and vertical pairings `(lhs, rhs)` of a plane curve.
    fn pairing<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let r = diagonal_vertical_pairing(&self.inner).map_err(err)?;
        Ok((fraction(py, &r.lhs)?, fraction(py, &r.rhs)?))
    }

    fn equals(&self, other: &Cycle) -> PyResult<bool> {
        self.inner.equals(&other.inner).map_err(err)
    }

    fn current(&self) -> Current {
        Current { inner: self.inner.current().clone() }
    }

    fn to_json(&self) -> String {
        current_json(self.inner.current())
    }
}

/// The line `{a·u + b·w = c}` in the plane with its lattice weight.
#[pyfunction]
fn line_cycle(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, c: &Bound<'_, PyAny>) -> PyResult<Cycle> {
    core_line_cycle(&to_rat(a)?, &to_rat(b)?, &to_rat(c)?).map(|inner| Cycle { inner }).map_err(err)
}

/// A random tropical plane curve of degree `d`.
#[pyfunction]
#[pyo3(signature = (d, seed = 0))]
fn random_curve(d: usize, seed: u64) -> PyResult<Cycle> {
    core_random_curve(&mut ChaCha8Rng::seed_from_u64(seed), d).map(|inner| Cycle { inner }).map_err(err)
}

/// `(holds, green_current, x_delta)` for `min{x_1, …, x_r}`.
#[pyfunction]
fn green_min(r: usize) -> PyResult<(bool, Current, Current)> {
    let g = core_green_min(r).map_err(err)?;
    Ok((g.holds, Current { inner: g.current }, Current { inner: g.expected }))
}

/// `(length, v_p(det))` of the cokernel of an integer or rational matrix over `ℤ_(p)`.
#[pyfunction]
fn dvr_length<'py>(py: Python<'py>, rows: Vec<Vec<Bound<'py, PyAny>>>, p: u64) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let rows = rows.iter().map(|r| r.iter().map(to_rat).collect::<PyResult<Vec<_>>>()).collect::<PyResult<Vec<_>>>()?;
    let m = DvrMatrix::new(rows, p.into()).map_err(err)?;
    let r = core_dvr_length(&m, None).map_err(err)?;
    Ok((fraction(py, &r.length)?, fraction(py, &r.det_valuation)?))
}

/// Level minima of a series given by coefficient valuations, and whether every bound holds.
#[pyfunction]
#[pyo3(signature = (q, h, valuations, depth = 3))]
fn level_bounds<'py>(py: Python<'py>, q: u64, h: u32, valuations: Vec<(u64, Bound<'py, PyAny>)>, depth: usize) -> PyResult<(bool, Bound<'py, PyList>)> {
    let vals = valuations.iter().map(|(i, v)| Ok((*i, to_rat(v)?))).collect::<PyResult<_>>()?;
    let s = PiSeries::new(q, h, vals).map_err(err)?;
    let r = level_bound_check(&s, depth).map_err(err)?;
    let minima = r.minima.iter().map(|m| fraction(py, m)).collect::<PyResult<Vec<_>>>()?;
    Ok((r.holds, PyList::new(py, minima)?))
}

/// Runs a command-line invocation in process and returns `(exit_code, report)`.
#[pyfunction]
fn run<'py>(py: Python<'py>, argv: Vec<String>) -> PyResult<(i32, Bound<'py, PyAny>)> {
    use clap::Parser;
    let cli = Cli::try_parse_from(std::iter::once("tropforms".to_string()).chain(argv)).map_err(err)?;
    let out = run_command(&cli.command);
    Ok((out.code, json(py, &out.report)?))
}

#[pymodule]
fn tropforms(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TropformsError", m.py().get_type::<TropformsError>())?;
    m.add_class::<Document>()?;
    m.add_class::<Pwl>()?;
    m.add_class::<Current>()?;
    m.add_class::<Cycle>()?;
    m.add_function(wrap_pyfunction!(line_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(random_curve, m)?)?;
    m.add_function(wrap_pyfunction!(green_min, m)?)?;
    m.add_function(wrap_pyfunction!(dvr_length, m)?)?;
    m.add_function(wrap_pyfunction!(level_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
