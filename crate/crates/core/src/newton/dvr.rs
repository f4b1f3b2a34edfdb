use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::matrix::det;
use crate::exactlin::rat::{int_valuation, valuation};
use crate::exactlin::snf_valuations;
use crate::exactlin::{Rat, Vector};

/// Nonsingular square rational matrix with the prime defining the valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrMatrix {
    rows: Vec<Vector>,
    p: BigInt,
}

impl DvrMatrix {
    pub fn new(rows: Vec<Vector>, p: BigInt) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if p < BigInt::from(2) || (2..).map(BigInt::from).take_while(|d| d * d <= p).any(|d| (&p % d).is_zero()) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if det(&rows).is_zero() {
            return Err(Error::Singular);
        }
        Ok(DvrMatrix { rows, p })
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Length of one diagonal block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLength {
    pub start: usize,
    pub size: usize,
    pub length: Rat,
    /// `length / size`
    pub per_unit: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrLength {
    pub length: Rat,
    pub det_valuation: Rat,
    pub holds: bool,
    pub blocks: Vec<BlockLength>,
    /// Sum of the block lengths equals the total length.
    pub blocks_hold: bool,
}

/// `Σ v_p(elementary divisors)` after clearing denominators.
fn length_of(rows: &[Vector], p: &BigInt) -> Result<Rat> {
    let n = rows.len();
    let mut den = BigInt::one();
    for x in rows.iter().flatten() {
        den = den.lcm(x.denom());
    }
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect()).collect();
    let total: u64 = snf_valuations(&ints, p)?.iter().sum();
    let shift = int_valuation(&den, p) * n as i64;
    Ok(Rat::from_integer(BigInt::from(total) - BigInt::from(shift)))
}

fn sub_block(rows: &[Vector], start: usize, size: usize) -> Vec<Vector> {
    rows[start..start + size].iter().map(|r| r[start..start + size].to_vec()).collect()
}

/// Finest decomposition into consecutive diagonal blocks.
pub fn diagonal_blocks(rows: &[Vector]) -> Vec<usize> {
    let n = rows.len();
    let mut sizes = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        let mut k = start;
        while k < end {
            for j in 0..n {
                if !rows[k][j].is_zero() || !rows[j][k].is_zero() {
                    end = end.max(j + 1);
                }
            }
            k += 1;
        }
        sizes.push(end - start);
        start = end;
    }
    sizes
}

/// Length of `coker M` over `ℤ_(p)` compared with `v_p(det M)`, with per-block lengths.
///
/// `block_sizes` must cut the matrix into diagonal blocks; `None` uses the finest such cut.
pub fn dvr_length(m: &DvrMatrix, block_sizes: Option<&[usize]>) -> Result<DvrLength> {
    let length = length_of(&m.rows, &m.p)?;
    let det_valuation = Rat::from_integer(valuation(&det(&m.rows), &m.p).ok_or(Error::Singular)?.into());
    let sizes = match block_sizes {
        Some(s) => s.to_vec(),
        None => diagonal_blocks(&m.rows),
    };
    if sizes.iter().sum::<usize>() != m.size() || sizes.contains(&0) {
        return Err(Error::Invalid("block sizes must be positive and sum to the matrix size".into()));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for &size in &sizes {
        for i in 0..m.size() {
            for j in 0..m.size() {
                let inside_i = i >= start && i < start + size;
                let inside_j = j >= start && j < start + size;
                if inside_i != inside_j && !m.rows[i][j].is_zero() {
                    return Err(Error::Invalid(format!("entry ({i}, {j}) couples block at {start} to the rest")));
                }
            }
        }
        let l = length_of(&sub_block(&m.rows, start, size), &m.p)?;
        blocks.push(BlockLength { start, size, per_unit: &l / Rat::from_integer(size.into()), length: l });
        start += size;
    }
    let blocks_hold = blocks.iter().map(|b| b.length.clone()).sum::<Rat>() == length;
    Ok(DvrLength { holds: length == det_valuation, length, det_valuation, blocks, blocks_hold })
}
