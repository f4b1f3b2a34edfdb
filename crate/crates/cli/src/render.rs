use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};
use tropforms_core::exactlin::rat::format_rat;
use tropforms_core::exactlin::{Polyhedron, Rat, Vector};

use crate::convert;
use crate::document::{Document, Object};
use crate::error::{AtPath, CliError, CliResult};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 24.0;

/// Rendered SVG text with the number of drawn paths and markers.
#[derive(Debug, Clone, PartialEq)]
pub struct Svg {
    pub text: String,
    pub paths: usize,
    pub markers: usize,
}

struct Scene {
    edges: Vec<Polyhedron>,
    points: Vec<(Vector, Option<Rat>)>,
}

impl Scene {
    fn add_cell(&mut self, cell: &Polyhedron, multiplicity: Option<Rat>) {
        match cell.dim() {
            0 => self.add_point(cell.vertices()[0].clone(), multiplicity),
            _ => {
                for f in cell.all_faces().into_iter().chain([cell.clone()]) {
                    match f.dim() {
                        1 if !self.edges.contains(&f) => {
                            for v in f.vertices() {
                                self.add_point(v.clone(), None);
                            }
                            self.edges.push(f);
                        }
                        0 => self.add_point(f.vertices()[0].clone(), None),
                        _ => {}
                    }
                }
            }
        }
    }

    fn add_point(&mut self, p: Vector, m: Option<Rat>) {
        match self.points.iter_mut().find(|(q, _)| *q == p) {
            Some((_, label)) => {
                if let Some(m) = m {
                    *label = Some(label.take().unwrap_or_else(Rat::zero) + m);
                }
            }
            None => self.points.push((p, m)),
        }
    }
}

fn f(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn point(v: &[Rat]) -> (f64, f64) {
    (f(&v[0]), f(&v[1]))
}

fn label(m: &Rat) -> String {
    format_rat(m).replace('-', "\u{2212}")
}

/// Draws the complexes and currents named in `names` (all of them when empty) in the plane.
pub fn render_svg(doc: &Document, names: &[String]) -> CliResult<Svg> {
    let selected: Vec<(&String, &Object)> = if names.is_empty() {
        doc.objects.iter().filter(|(_, o)| matches!(o, Object::Complex(_) | Object::Current(_))).collect()
    } else {
        names
            .iter()
            .map(|n| doc.objects.get_key_value(n).ok_or_else(|| CliError::MissingObject(n.clone())))
            .collect::<CliResult<_>>()?
    };
    let mut scene = Scene { edges: Vec::new(), points: Vec::new() };
    for (name, o) in selected {
        let base = format!("objects.{name}.{}", o.kind());
        match o {
            Object::Complex(c) => {
                if c.ambient != 2 {
                    return Err(CliError::Usage(format!("{base}: only complexes in the plane can be rendered, found ambient dimension {}", c.ambient)));
                }
                let wc = convert::complex(&base, c)?;
                for (i, cell) in wc.cells().iter().enumerate() {
                    let m = (cell.dim() == 0).then(|| wc.weight(i).map(|w| w.scale().clone())).flatten();
                    scene.add_cell(cell, m);
                }
            }
            Object::Current(c) => {
                if c.ambient != 2 {
                    return Err(CliError::Usage(format!("{base}: only currents in the plane can be rendered, found ambient dimension {}", c.ambient)));
                }
                let t = convert::current(&base, c)?.normalize().at(&base)?;
                for s in t.summands() {
                    let m = if s.cell.dim() == 0 { s.multiplicity() } else { None };
                    scene.add_cell(&s.cell, m);
                }
            }
            other => return Err(CliError::WrongKind { name: name.clone(), expected: "complex or current", found: other.kind() }),
        }
    }
    Ok(draw(&scene))
}

fn draw(scene: &Scene) -> Svg {
    let mut text = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n");
    if scene.edges.is_empty() && scene.points.is_empty() {
        text.push_str("</svg>\n");
        return Svg { text, paths: 0, markers: 0 };
    }
    let coords: Vec<(f64, f64)> = scene.points.iter().map(|(p, _)| point(p)).collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = coords.iter().fold((f64::MAX, f64::MAX, f64::MIN, f64::MIN), |(a, b, c, d), &(x, y)| (a.min(x), b.min(y), c.max(x), d.max(y)));
    if coords.is_empty() {
        (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 0.0, 0.0);
    }
    let pad = ((hi_x - lo_x).max(hi_y - lo_y) * 0.25).max(1.0);
    let (lo_x, lo_y, hi_x, hi_y) = (lo_x - pad, lo_y - pad, hi_x + pad, hi_y + pad);
    let scale = (SIZE - 2.0 * MARGIN) / (hi_x - lo_x).max(hi_y - lo_y);
    let to_screen = |(x, y): (f64, f64)| (MARGIN + (x - lo_x) * scale, SIZE - MARGIN - (y - lo_y) * scale);
    // Parameter at which a ray from p in direction d leaves the box.
    let exit = |(px, py): (f64, f64), (dx, dy): (f64, f64)| {
        let mut t = f64::MAX;
        if dx > 0.0 {
            t = t.min((hi_x - px) / dx);
        } else if dx < 0.0 {
            t = t.min((lo_x - px) / dx);
        }
        if dy > 0.0 {
            t = t.min((hi_y - py) / dy);
        } else if dy < 0.0 {
            t = t.min((lo_y - py) / dy);
        }
        t.max(0.0)
    };
    for e in &scene.edges {
        let (a, b) = match (e.vertices(), e.rays(), e.lineality()) {
            ([p, q], _, _) => (point(p), point(q)),
            ([p], [r], _) => {
                let (p, d) = (point(p), point(r));
                let t = exit(p, d);
                (p, (p.0 + t * d.0, p.1 + t * d.1))
            }
            ([p], _, [l]) => {
                let (p, d) = (point(p), point(l));
                let (t1, t2) = (exit(p, d), exit(p, (-d.0, -d.1)));
                ((p.0 - t2 * d.0, p.1 - t2 * d.1), (p.0 + t1 * d.0, p.1 + t1 * d.1))
            }
            _ => continue,
        };
        let (a, b) = (to_screen(a), to_screen(b));
        let _ = writeln!(text, "  <path d=\"M {:.3} {:.3} L {:.3} {:.3}\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>", a.0, a.1, b.0, b.1);
    }
    for ((_, m), c) in scene.points.iter().zip(&coords) {
        let (x, y) = to_screen(*c);
        match m {
            Some(m) => {
                let _ = writeln!(text, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"crimson\"/>");
                let _ = writeln!(text, "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" font-family=\"sans-serif\">{}</text>", x + 7.0, y - 7.0, label(m));
            }
            None => {
                let _ = writeln!(text, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"black\"/>");
            }
        }
    }
    text.push_str("</svg>\n");
    Svg { text, paths: scene.edges.len(), markers: scene.points.len() }
}
