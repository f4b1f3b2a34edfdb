use super::form::{Form, Side};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactlin::{AffineChart, AffineMap, Polyhedron, Rat, Vector};

/// Superform on the affine hull of a cell, written in the canonical chart of that hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperForm {
    chart: AffineChart,
    form: Form,
}

impl SuperForm {
    pub fn new(chart: AffineChart, form: Form) -> Result<Self> {
        if chart.dim() != form.dim() {
            return Err(Error::DimensionMismatch { expected: chart.dim(), found: form.dim() });
        }
        Ok(SuperForm { chart, form })
    }

    pub fn zero(chart: &AffineChart) -> Self {
        SuperForm { chart: chart.clone(), form: Form::zero(chart.dim()) }
    }

    pub fn constant(chart: &AffineChart, c: Rat) -> Self {
        SuperForm { chart: chart.clone(), form: Form::constant(chart.dim(), c) }
    }

    pub fn one(chart: &AffineChart) -> Self {
        SuperForm { chart: chart.clone(), form: Form::one(chart.dim()) }
    }

    /// Restriction of a form given in ambient coordinates `x_1, …, x_n`.
    pub fn from_ambient(chart: &AffineChart, ambient: &Form) -> Result<Self> {
        let n = chart.ambient_dim();
        if ambient.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: ambient.dim() });
        }
        let l: Vec<Vector> = (0..n).map(|i| chart.basis().iter().map(|b| b[i].clone()).collect()).collect();
        let form = ambient.pullback_affine(&l, chart.origin(), chart.dim());
        Ok(SuperForm { chart: chart.clone(), form })
    }

    /// Ambient representative: `t_k ↦ x_{p_k}` for the pivot columns `p_k`.
    pub fn to_ambient(&self) -> Form {
        let n = self.chart.ambient_dim();
        let l: Vec<Vector> = self.chart.pivots().iter().map(|&p| crate::exactlin::rat::unit(n, p)).collect();
        self.form.pullback_affine(&l, &crate::exactlin::rat::zeros(self.chart.dim()), n)
    }

    pub fn on_cell(cell: &Polyhedron, ambient: &Form) -> Result<Self> {
        Self::from_ambient(&cell.chart(), ambient)
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    fn same_chart(&self, o: &SuperForm) -> Result<()> {
        if self.chart != o.chart {
            return Err(Error::CoordinateMismatch);
        }
        Ok(())
    }

    fn with(&self, form: Form) -> SuperForm {
        SuperForm { chart: self.chart.clone(), form }
    }

    pub fn wedge(&self, o: &SuperForm) -> Result<SuperForm> {
        self.same_chart(o)?;
        Ok(self.with(self.form.wedge(&o.form)))
    }

    pub fn add(&self, o: &SuperForm) -> Result<SuperForm> {
        self.same_chart(o)?;
        Ok(self.with(self.form.add(&o.form)))
    }

    pub fn sub(&self, o: &SuperForm) -> Result<SuperForm> {
        self.same_chart(o)?;
        Ok(self.with(self.form.sub(&o.form)))
    }

    pub fn neg(&self) -> SuperForm {
        self.with(self.form.neg())
    }

    pub fn scale(&self, c: &Rat) -> SuperForm {
        self.with(self.form.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> SuperForm {
        self.with(self.form.mul_poly(p))
    }

    pub fn component(&self, p: usize, q: usize) -> SuperForm {
        self.with(self.form.component(p, q))
    }

    pub fn differentiate(&self, side: Side) -> SuperForm {
        self.with(self.form.differentiate(side))
    }

    /// Interior product with an ambient direction `w ∈ N_σ`.
    pub fn contract(&self, w: &[Rat], side: Side) -> Result<SuperForm> {
        let t = self.chart.direction_coords(w)?;
        Ok(self.with(self.form.contract(&t, side)))
    }

    /// `f*` of a form on the target chart, for `f` mapping the source hull into the target hull.
    pub fn pullback(&self, f: &AffineMap, source: &AffineChart) -> Result<SuperForm> {
        if f.source_dim() != source.ambient_dim() || f.target_dim() != self.chart.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.chart.ambient_dim(), found: f.target_dim() });
        }
        let origin = f.apply(source.origin());
        if !self.chart.contains_point(&origin) {
            return Err(Error::MapNotIntoTarget);
        }
        let images: Vec<Vector> = source.basis().iter().map(|b| f.apply_linear(b)).collect();
        if images.iter().any(|v| !self.chart.contains_direction(v)) {
            return Err(Error::MapNotIntoTarget);
        }
        let l: Vec<Vector> = self.chart.pivots().iter().map(|&p| images.iter().map(|v| v[p].clone()).collect()).collect();
        let m: Vector = self.chart.pivots().iter().map(|&p| origin[p].clone()).collect();
        Ok(SuperForm { chart: source.clone(), form: self.form.pullback_affine(&l, &m, source.dim()) })
    }

    /// Restriction to an affine subspace of the hull.
    pub fn restrict(&self, face: &AffineChart) -> Result<SuperForm> {
        self.pullback(&AffineMap::identity(self.chart.ambient_dim()), face)
    }

    /// Scalar coefficient evaluated at an ambient point of the hull.
    pub fn eval_scalar(&self, x: &[Rat]) -> Result<Rat> {
        let t = self.chart.coords(x)?;
        Ok(self.form.scalar_part().eval(&t))
    }
}
