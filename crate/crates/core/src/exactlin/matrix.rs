use num_traits::{One, Signed, Zero};

use super::rat::{axpy, dot, zeros, Rat, Vector};
use crate::error::{Error, Result};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                *row = axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = zeros(ncols);
        x[f] = Rat::one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = -row[f].clone();
        }
        basis.push(x);
    }
    basis
}

/// Determinant by fraction-exact elimination.
pub fn det(m: &[Vector]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vector> = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] / &pivot[c]);
                *row = axpy(row, &f, &pivot);
            }
        }
    }
    d
}

/// One solution of `rows · x = rhs`, free variables set to zero.
pub fn solve(rows: &[Vector], rhs: &[Rat], ncols: usize) -> Option<Vector> {
    let aug: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn transpose(m: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vector], v: &[Rat]) -> Vector {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector], bcols: usize) -> Vec<Vector> {
    let bt = transpose(b, bcols);
    a.iter().map(|r| bt.iter().map(|c| dot(r, c)).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| super::rat::unit(n, i)).collect()
}

pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend(super::rat::unit(n, i));
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coefficients `c` with `v = Σ c_i basis_i`, if `v` lies in the span.
pub fn coordinates_in(basis: &[Vector], v: &[Rat]) -> Option<Vector> {
    if basis.is_empty() {
        return if super::rat::is_zero(v) { Some(Vec::new()) } else { None };
    }
    let cols = transpose(basis, v.len()).into_iter().collect::<Vec<_>>();
    solve(&cols, v, basis.len())
}

/// RREF basis of the span of `vectors` in `ℚ^n`.
pub fn span_basis(vectors: &[Vector], n: usize) -> Vec<Vector> {
    rref(vectors, n).0
}

/// Indices of a maximal independent subset, greedily in order.
pub fn independent_subset(vectors: &[Vector], n: usize) -> Vec<usize> {
    let mut chosen: Vec<Vector> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        chosen.push(v.clone());
        if rank(&chosen, n) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Extends `partial` (independent) by vectors of `space` to a basis of span(partial ∪ space).
pub fn extend_basis(partial: &[Vector], space: &[Vector], n: usize) -> Vec<Vector> {
    let mut all: Vec<Vector> = partial.to_vec();
    all.extend(space.iter().cloned());
    independent_subset(&all, n)
        .into_iter()
        .filter(|&i| i >= partial.len())
        .map(|i| all[i].clone())
        .collect()
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersect_spans(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i - Σ y_j b_j = 0 and map back through a.
    let mut cols: Vec<Vector> = a.to_vec();
    cols.extend(b.iter().map(|v| super::rat::neg(v)));
    let rows = transpose(&cols, n);
    let ker = kernel(&rows, cols.len());
    let vecs: Vec<Vector> = ker
        .iter()
        .map(|k| {
            let mut v = zeros(n);
            for (c, ai) in k.iter().zip(a) {
                v = axpy(&v, c, ai);
            }
            v
        })
        .collect();
    span_basis(&vecs, n)
}

/// Absolute value of the determinant of `vectors` expressed in coordinates of `basis`.
pub fn relative_volume(vectors: &[Vector], basis: &[Vector]) -> Result<Rat> {
    if vectors.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: vectors.len() });
    }
    let coords: Vec<Vector> = vectors
        .iter()
        .map(|v| coordinates_in(basis, v).ok_or(Error::NotInSpan))
        .collect::<Result<_>>()?;
    Ok(det(&coords).abs())
}

/// Result bundle of [`rank_kernel_det`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernelDet {
    pub rank: usize,
    pub kernel: Vec<Vector>,
    pub det: Option<Rat>,
}

pub fn rank_kernel_det(rows: &[Vector], ncols: usize) -> RankKernelDet {
    RankKernelDet {
        rank: rank(rows, ncols),
        kernel: kernel(rows, ncols),
        det: (rows.len() == ncols).then(|| det(rows)),
    }
}
