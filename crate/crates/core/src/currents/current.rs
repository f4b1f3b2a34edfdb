use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complexes::{refine_cells, PwlFunction, WeightedComplex};
use crate::error::{Error, Result};
use crate::exactlin::rat::dot;
use crate::exactlin::{AffineChart, AffineFunctional, Polyhedron, Rat, Weight};
use crate::integrate::integrate_cell;
use crate::superforms::{Form, Poly, SuperForm};

/// `α ∧ [σ, μ]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub cell: Polyhedron,
    pub weight: Weight,
    pub form: SuperForm,
}

impl Summand {
    pub fn new(cell: Polyhedron, weight: Weight, form: SuperForm) -> Result<Self> {
        if !weight.spans(&cell.span_basis()) {
            return Err(Error::NotInSpan);
        }
        let chart = cell.chart();
        let form = if form.chart() == &chart {
            form
        } else if form.chart().contains_chart(&chart) {
            form.restrict(&chart)?
        } else {
            return Err(Error::CoordinateMismatch);
        };
        Ok(Summand { cell, weight, form })
    }

    /// `c ∧ [σ, μ]` for a constant `c`.
    pub fn constant(cell: Polyhedron, weight: Weight, c: Rat) -> Result<Self> {
        let form = SuperForm::constant(&cell.chart(), c);
        Self::new(cell, weight, form)
    }

    /// `α|_σ ∧ [σ, μ]` for a form given in ambient coordinates.
    pub fn from_ambient(cell: Polyhedron, weight: Weight, form: &Form) -> Result<Self> {
        let f = SuperForm::on_cell(&cell, form)?;
        Self::new(cell, weight, f)
    }

    /// Same summand expressed with the lattice weight of the cell.
    pub fn with_lattice_weight(&self) -> Result<Summand> {
        let lat = Weight::lattice_of(&self.cell);
        let c = self.weight.ratio_to(&lat)?;
        Ok(Summand { cell: self.cell.clone(), weight: lat, form: self.form.scale(&c) })
    }

    /// Constant coefficient relative to the lattice weight, if the form is a constant function.
    pub fn multiplicity(&self) -> Option<Rat> {
        let f = self.form.form();
        if !f.bidegrees().iter().all(|&b| b == (0, 0)) || !f.has_constant_coefficients() {
            return None;
        }
        let lat = Weight::lattice_of(&self.cell);
        Some(f.scalar_part().constant_term() * self.weight.ratio_to(&lat).ok()?)
    }
}

/// An affine function as a scalar form in the coordinates of `chart`.
pub fn affine_on_chart(f: &AffineFunctional, chart: &AffineChart) -> SuperForm {
    let a: Vec<Rat> = chart.basis().iter().map(|b| f.linear(b)).collect();
    let b = dot(&f.a, chart.origin()) + &f.b;
    SuperForm::new(chart.clone(), Form::scalar(Poly::affine(&a, &b))).expect("scalar form matches chart")
}

/// A finite sum of integration currents with superform coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCurrent {
    ambient: usize,
    summands: Vec<Summand>,
}

impl PolyhedralCurrent {
    pub fn new(ambient: usize, summands: Vec<Summand>) -> Result<Self> {
        if let Some(s) = summands.iter().find(|s| s.cell.ambient_dim() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: s.cell.ambient_dim() });
        }
        Ok(PolyhedralCurrent { ambient, summands })
    }

    pub fn zero(ambient: usize) -> Self {
        PolyhedralCurrent { ambient, summands: Vec::new() }
    }

    /// `[X, μ]` for a weighted complex: the carrier cells with coefficient 1.
    pub fn of_complex(c: &WeightedComplex) -> Result<Self> {
        let summands = c
            .weights()
            .iter()
            .map(|(&id, w)| Summand::constant(c.cells()[id].clone(), w.clone(), Rat::from_integer(1.into())))
            .collect::<Result<_>>()?;
        Self::new(c.ambient_dim(), summands)
    }

    /// `δ_x` with coefficient `c`.
    pub fn dirac(x: Vec<Rat>, c: Rat) -> Self {
        let n = x.len();
        let s = Summand::constant(Polyhedron::point(x), Weight::unit_point(), c).expect("point summand");
        PolyhedralCurrent { ambient: n, summands: vec![s] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn into_summands(self) -> Vec<Summand> {
        self.summands
    }

    pub fn push(&mut self, s: Summand) -> Result<()> {
        if s.cell.ambient_dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: s.cell.ambient_dim() });
        }
        self.summands.push(s);
        Ok(())
    }

    pub fn add(&self, o: &PolyhedralCurrent) -> Result<Self> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: o.ambient });
        }
        let mut s = self.summands.clone();
        s.extend(o.summands.iter().cloned());
        Ok(PolyhedralCurrent { ambient: self.ambient, summands: s })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand { cell: s.cell.clone(), weight: s.weight.clone(), form: s.form.scale(c) })
            .collect();
        PolyhedralCurrent { ambient: self.ambient, summands }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn sub(&self, o: &PolyhedralCurrent) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Cells of the summands.
    pub fn cells(&self) -> Vec<Polyhedron> {
        self.summands.iter().map(|s| s.cell.clone()).collect()
    }

    /// Underlying weighted complex.
    pub fn complex(&self) -> Result<WeightedComplex> {
        WeightedComplex::from_carriers(self.ambient, self.summands.iter().map(|s| (s.cell.clone(), s.weight.clone())).collect())
    }

    /// Canonical presentation: refined so that cells meet in faces, lattice weights,
    /// merged coefficients, zero summands dropped.
    pub fn normalize(&self) -> Result<Self> {
        self.normalize_with(&[])
    }

    /// As [`normalize`](Self::normalize), additionally refined against `extra`.
    pub fn normalize_with(&self, extra: &[Polyhedron]) -> Result<Self> {
        let mut cells = self.cells();
        let own = cells.clone();
        for e in extra {
            for c in &own {
                if let Some(i) = c.intersect(e)? {
                    if &i != c {
                        cells.push(i);
                    }
                }
            }
        }
        let refined = refine_cells(&cells)?;
        let mut acc: BTreeMap<Polyhedron, SuperForm> = BTreeMap::new();
        for s in &self.summands {
            if s.form.is_zero() {
                continue;
            }
            let s = s.with_lattice_weight()?;
            for r in refined.iter().filter(|r| r.dim() == s.cell.dim() && s.cell.contains_polyhedron(r)) {
                let f = SuperForm::new(r.chart(), s.form.form().clone())?;
                let e = acc.entry(r.clone()).or_insert_with(|| SuperForm::zero(&r.chart()));
                *e = e.add(&f)?;
            }
        }
        let mut summands: Vec<Summand> = acc
            .into_iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(c, form)| Summand { weight: Weight::lattice_of(&c), cell: c, form })
            .collect();
        summands.sort_by(|a, b| a.cell.dim().cmp(&b.cell.dim()).then_with(|| a.cell.cmp(&b.cell)));
        Ok(PolyhedralCurrent { ambient: self.ambient, summands })
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.normalize()?.summands.is_empty())
    }

    /// Equality as currents, independent of the presentation.
    pub fn equals(&self, o: &PolyhedralCurrent) -> Result<bool> {
        self.sub(o)?.is_zero()
    }

    /// `(p, q, c)` of each summand, `c` the codimension in `pure_dim`.
    pub fn tridegrees(&self, pure_dim: usize) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .summands
            .iter()
            .flat_map(|s| {
                let c = pure_dim.saturating_sub(s.cell.dim());
                s.form.form().bidegrees().into_iter().map(move |(p, q)| (p, q, c))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `α ∧ T` with `α` given cell by cell.
    pub fn wedge_left(&self, alpha: impl Fn(&Polyhedron) -> Result<SuperForm>) -> Result<Self> {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let a = alpha(&s.cell)?;
                let a = if a.chart() == s.form.chart() { a } else { a.restrict(s.form.chart())? };
                Ok(Summand { cell: s.cell.clone(), weight: s.weight.clone(), form: a.wedge(&s.form)? })
            })
            .collect::<Result<_>>()?;
        Ok(PolyhedralCurrent { ambient: self.ambient, summands })
    }

    /// `α ∧ T` for a form in ambient coordinates.
    pub fn wedge_ambient(&self, alpha: &Form) -> Result<Self> {
        self.wedge_left(|c| SuperForm::on_cell(c, alpha))
    }

    /// `φ · T` for a piecewise affine `φ`, refining `T` along the pieces of `φ`.
    pub fn mul_pwl(&self, phi: &PwlFunction) -> Result<Self> {
        let pieces: Vec<Polyhedron> = phi.pieces().iter().map(|(p, _)| p.clone()).collect();
        self.normalize_with(&pieces)?.wedge_left(|c| {
            let f = phi.affine_on(c).ok_or(Error::OutsideSupport)?;
            Ok(affine_on_chart(f, &c.chart()))
        })
    }

    /// `∫ T`: the sum of the cell integrals of the top-degree coefficients.
    pub fn integrate(&self) -> Result<Rat> {
        let mut total = Rat::zero();
        for s in &self.summands {
            if !s.form.is_zero() {
                total += integrate_cell(&s.form, &s.cell, &s.weight)?;
            }
        }
        Ok(total)
    }

    /// Summands whose cells lie in the support of `sub`.
    pub fn restrict_polyhedral(&self, sub: &[Polyhedron]) -> Self {
        let summands = self.summands.iter().filter(|s| sub.iter().any(|c| c.contains_polyhedron(&s.cell))).cloned().collect();
        PolyhedralCurrent { ambient: self.ambient, summands }
    }
}

/// A current whose coefficients are constants; the weights carry all data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCycle(PolyhedralCurrent);

impl TropicalCycle {
    /// Cells with weights and coefficient 1.
    pub fn new(ambient: usize, cells: Vec<(Polyhedron, Weight)>) -> Result<Self> {
        let summands = cells
            .into_iter()
            .map(|(c, w)| Summand::constant(c, w, Rat::from_integer(1.into())))
            .collect::<Result<_>>()?;
        Ok(TropicalCycle(PolyhedralCurrent::new(ambient, summands)?))
    }

    /// Cells with multiplicities relative to their lattice weights.
    pub fn from_multiplicities(ambient: usize, cells: Vec<(Polyhedron, Rat)>) -> Result<Self> {
        let summands = cells
            .into_iter()
            .map(|(c, m)| {
                let w = Weight::lattice_of(&c);
                Summand::constant(c, w, m)
            })
            .collect::<Result<_>>()?;
        Ok(TropicalCycle(PolyhedralCurrent::new(ambient, summands)?))
    }

    pub fn from_current(c: PolyhedralCurrent) -> Result<Self> {
        match c.summands.iter().position(|s| s.multiplicity().is_none()) {
            Some(i) => Err(Error::UnsupportedCoefficientShape(format!("summand {i} is not a constant function"))),
            None => Ok(TropicalCycle(c)),
        }
    }

    pub fn current(&self) -> &PolyhedralCurrent {
        &self.0
    }

    pub fn into_current(self) -> PolyhedralCurrent {
        self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient
    }

    /// Normalized cells with multiplicities relative to lattice weights.
    pub fn multiplicities(&self) -> Result<Vec<(Polyhedron, Rat)>> {
        Ok(self.0.normalize()?.summands.iter().map(|s| (s.cell.clone(), s.multiplicity().expect("constant"))).collect())
    }

    pub fn normalize(&self) -> Result<Self> {
        Ok(TropicalCycle(self.0.normalize()?))
    }

    /// Dimension of the cells, if all have the same one.
    pub fn dim(&self) -> Option<usize> {
        let d = self.0.summands.first()?.cell.dim();
        self.0.summands.iter().all(|s| s.cell.dim() == d).then_some(d)
    }

    pub fn equals(&self, o: &TropicalCycle) -> Result<bool> {
        self.0.equals(&o.0)
    }

    /// Sum of multiplicities of the 0-dimensional cells.
    pub fn degree(&self) -> Result<Rat> {
        Ok(self.multiplicities()?.iter().filter(|(c, _)| c.dim() == 0).map(|(_, m)| m.clone()).sum())
    }
}
