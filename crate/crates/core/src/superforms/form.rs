use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use crate::exactlin::{Rat, Vector};

/// Which copy of the cotangent space: `d′` / `n′` or `d″` / `n″`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Prime,
    DoublePrime,
}

/// Superform on `ℝ^dim` with polynomial coefficients.
///
/// A basis monomial is a bit mask: bit `k` is `d′t_k`, bit `dim + k` is `d″t_k`,
/// multiplied in increasing bit order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<u64, Poly>,
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let (p, q) = self.split_mask(*m);
                let mut s = format!("({c:?})");
                for k in p {
                    s.push_str(&format!(" d'{k}"));
                }
                for k in q {
                    s.push_str(&format!(" d\"{k}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parity of the reordering needed to merge two disjoint ordered masks.
fn merge_sign(a: u64, b: u64) -> bool {
    let mut odd = false;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        odd ^= above.count_ones() % 2 == 1;
    }
    odd
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 32, "dimension too large");
        Form { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(p: Poly) -> Self {
        let mut f = Self::zero(p.nvars());
        f.add_term(0, p);
        f
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Self::scalar(Poly::constant(dim, c))
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, num_traits::One::one())
    }

    /// `d′t_k` or `d″t_k`.
    pub fn basis_one_form(dim: usize, k: usize, side: Side) -> Self {
        let bit = match side {
            Side::Prime => k,
            Side::DoublePrime => dim + k,
        };
        let mut f = Self::zero(dim);
        f.add_term(1 << bit, Poly::one(dim));
        f
    }

    /// `c · d′t_{I} ∧ d″t_{J}` with the factors taken in the given order.
    pub fn term(dim: usize, primes: &[usize], dprimes: &[usize], c: Poly) -> Self {
        let mut f = Self::scalar(c);
        for &k in primes {
            f = f.wedge(&Self::basis_one_form(dim, k, Side::Prime));
        }
        for &k in dprimes {
            f = f.wedge(&Self::basis_one_form(dim, k, Side::DoublePrime));
        }
        f
    }

    /// `d′t_1 ∧ d″t_1 ∧ … ∧ d′t_d ∧ d″t_d` times `c`.
    pub fn top(dim: usize, c: Poly) -> Self {
        let mut f = Self::scalar(c);
        for k in 0..dim {
            f = f.wedge(&Self::basis_one_form(dim, k, Side::Prime));
            f = f.wedge(&Self::basis_one_form(dim, k, Side::DoublePrime));
        }
        f
    }

    fn add_term(&mut self, mask: u64, c: Poly) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&mask) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(mask, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Poly)> {
        self.terms.iter()
    }

    /// Indices of `d′` and `d″` factors of a basis monomial.
    pub fn split_mask(&self, m: u64) -> (Vec<usize>, Vec<usize>) {
        let p = (0..self.dim).filter(|&k| m >> k & 1 == 1).collect();
        let q = (0..self.dim).filter(|&k| m >> (self.dim + k) & 1 == 1).collect();
        (p, q)
    }

    pub fn mask_bidegree(&self, m: u64) -> (usize, usize) {
        let low = (1u64 << self.dim) - 1;
        ((m & low).count_ones() as usize, (m >> self.dim).count_ones() as usize)
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|&m| self.mask_bidegree(m)).collect()
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> Self {
        Form {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| self.mask_bidegree(**m) == (p, q)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.bidegrees().len() <= 1
    }

    pub fn max_coefficient_degree(&self) -> usize {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    /// Coefficient of the scalar part.
    pub fn scalar_part(&self) -> Poly {
        self.terms.get(&0).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    /// `φ` with `self = φ · d′t_1 ∧ d″t_1 ∧ … ∧ d′t_d ∧ d″t_d` (top-degree part).
    pub fn top_coefficient(&self) -> Poly {
        let full = if self.dim == 0 { 0 } else { (1u64 << (2 * self.dim)) - 1 };
        let c = self.terms.get(&full).cloned().unwrap_or_else(|| Poly::zero(self.dim));
        let reference = Self::top(self.dim, Poly::one(self.dim));
        match reference.terms.get(&full) {
            Some(s) if s.constant_term() < Rat::zero() => -c,
            _ => c,
        }
    }

    pub fn add(&self, o: &Form) -> Form {
        assert_eq!(self.dim, o.dim, "form dimension");
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(*m, c.clone());
        }
        f
    }

    pub fn neg(&self) -> Form {
        Form { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Form {
        let mut f = Form::zero(self.dim);
        for (m, p) in &self.terms {
            f.add_term(*m, p.scale(c));
        }
        f
    }

    pub fn mul_poly(&self, p: &Poly) -> Form {
        let mut f = Form::zero(self.dim);
        for (m, c) in &self.terms {
            f.add_term(*m, c * p);
        }
        f
    }

    pub fn wedge(&self, o: &Form) -> Form {
        assert_eq!(self.dim, o.dim, "form dimension");
        let mut f = Form::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let c = c1 * c2;
                f.add_term(m1 | m2, if merge_sign(*m1, *m2) { -c } else { c });
            }
        }
        f
    }

    /// `d′` or `d″`, with the new one-form placed on the left.
    pub fn differentiate(&self, side: Side) -> Form {
        let mut f = Form::zero(self.dim);
        for (m, c) in &self.terms {
            for k in 0..self.dim {
                let dc = c.derivative(k);
                if dc.is_zero() {
                    continue;
                }
                let one = Self::basis_one_form(self.dim, k, side);
                let term = one.wedge(&Form { dim: self.dim, terms: BTreeMap::from([(*m, dc)]) });
                f = f.add(&term);
            }
        }
        f
    }

    /// Interior product with `v` in the `side` copy, acting from the left.
    pub fn contract(&self, v: &[Rat], side: Side) -> Form {
        assert_eq!(v.len(), self.dim, "contraction vector length");
        let offset = match side {
            Side::Prime => 0,
            Side::DoublePrime => self.dim,
        };
        let mut f = Form::zero(self.dim);
        for (m, c) in &self.terms {
            for (k, vk) in v.iter().enumerate() {
                let bit = offset + k;
                if vk.is_zero() || m >> bit & 1 == 0 {
                    continue;
                }
                let pos = (m & ((1u64 << bit) - 1)).count_ones();
                let t = c.scale(vk);
                f.add_term(m & !(1u64 << bit), if pos % 2 == 1 { -t } else { t });
            }
        }
        f
    }

    /// Pullback along `t = L s + m` with `s ∈ ℝ^src` (`L` has `dim` rows and `src` columns).
    pub fn pullback_affine(&self, l: &[Vector], m: &[Rat], src: usize) -> Form {
        assert_eq!(l.len(), self.dim, "pullback rows");
        let one_form = |k: usize, side: Side| {
            let mut f = Form::zero(src);
            for (j, c) in l[k].iter().enumerate() {
                if !c.is_zero() {
                    f = f.add(&Form::basis_one_form(src, j, side).scale(c));
                }
            }
            f
        };
        let images: Vec<(Form, Form)> = (0..self.dim).map(|k| (one_form(k, Side::Prime), one_form(k, Side::DoublePrime))).collect();
        let mut out = Form::zero(src);
        for (mask, c) in &self.terms {
            let mut f = Form::scalar(c.affine_substitute(l, m, src));
            for bit in 0..2 * self.dim {
                if mask >> bit & 1 == 1 {
                    let img = if bit < self.dim { &images[bit].0 } else { &images[bit - self.dim].1 };
                    f = f.wedge(img);
                    if f.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&f);
        }
        out
    }
}
