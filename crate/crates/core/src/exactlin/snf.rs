use num_bigint::BigInt;
use num_traits::Zero;

use super::rat::{valuation, Rat, Vector};
use crate::error::{Error, Result};

/// Valuations of the elementary divisors of a nonsingular rational matrix over `ℤ_(p)`.
///
/// Local elimination: the pivot is an entry of minimal valuation in the remaining block,
/// so every elimination factor is a `p`-adic integer.
pub fn elementary_valuations(m: &[Vector], p: &BigInt) -> Result<Vec<i64>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
    }
    let mut a: Vec<Vector> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = valuation(&a[i][j], p) {
                    if best.map_or(true, |(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, i, j) = best.ok_or(Error::Singular)?;
        a.swap(k, i);
        for row in a.iter_mut() {
            row.swap(k, j);
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            a[k][j] = Rat::zero();
        }
        out.push(v);
    }
    out.sort_unstable();
    Ok(out)
}

/// `p`-valuations of the elementary divisors of a nonsingular square integer matrix, sorted.
pub fn snf_valuations(m: &[Vec<BigInt>], p: &BigInt) -> Result<Vec<u64>> {
    let r: Vec<Vector> = m.iter().map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    Ok(elementary_valuations(&r, p)?.into_iter().map(|v| v as u64).collect())
}
