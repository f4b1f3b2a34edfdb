use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use super::dvr::DvrMatrix;
use super::series::PiSeries;
use crate::error::Result;
use crate::exactlin::matrix::det;
use crate::exactlin::{Rat, Vector};

/// Series with a few random intermediate coefficients of positive valuation.
pub fn random_series<R: Rng>(rng: &mut R, q: u64, h: u32) -> Result<PiSeries> {
    let top = q.pow(2 * h);
    let mut v = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(2..top);
        v.insert(i, Rat::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=8).into()));
    }
    PiSeries::new(q, h, v)
}

/// Nonsingular integer matrix whose entries carry random powers of `p`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, p: i64) -> Result<DvrMatrix> {
    loop {
        let rows: Vec<Vector> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let e = rng.gen_range(0..3u32);
                        Rat::from_integer((rng.gen_range(-6i64..=6) * p.pow(e)).into())
                    })
                    .collect()
            })
            .collect();
        if !num_traits::Zero::is_zero(&det(&rows)) {
            return DvrMatrix::new(rows, BigInt::from(p));
        }
    }
}

/// Block diagonal matrix from random blocks; returns the matrix and the block sizes.
pub fn random_block_matrix<R: Rng>(rng: &mut R, blocks: usize, p: i64) -> Result<(DvrMatrix, Vec<usize>)> {
    let mut parts = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let n = rng.gen_range(1..=3);
        parts.push(random_matrix(rng, n, p)?);
    }
    let sizes: Vec<usize> = parts.iter().map(DvrMatrix::size).collect();
    let n: usize = sizes.iter().sum();
    let mut rows = vec![vec![Rat::from_integer(0.into()); n]; n];
    let mut start = 0;
    for b in &parts {
        for (i, r) in b.rows().iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                rows[start + i][start + j] = x.clone();
            }
        }
        start += b.size();
    }
    Ok((DvrMatrix::new(rows, BigInt::from(p))?, sizes))
}
