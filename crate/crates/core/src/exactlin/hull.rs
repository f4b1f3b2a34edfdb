use num_traits::Signed;

use super::rat::Rat;
use crate::error::{Error, Result};

/// Edge of a lower convex hull between the points with indices `left < right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullSegment {
    pub left: u64,
    pub right: u64,
    pub slope: Rat,
}

impl HullSegment {
    pub fn width(&self) -> u64 {
        self.right - self.left
    }
}

/// Lower convex hull of `(index, value)` points; `None` values stand for `+∞`.
///
/// Collinear points are merged, so slopes strictly increase from left to right.
pub fn lower_hull(points: &[(u64, Option<Rat>)]) -> Result<Vec<HullSegment>> {
    if points.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::UnsortedIndices);
    }
    let finite: Vec<(Rat, &Rat, u64)> = points
        .iter()
        .filter_map(|(i, v)| v.as_ref().map(|v| (Rat::from_integer((*i).into()), v, *i)))
        .collect();
    if finite.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let mut stack: Vec<usize> = Vec::new();
    for k in 0..finite.len() {
        while stack.len() >= 2 {
            let (a, b) = (&finite[stack[stack.len() - 2]], &finite[stack[stack.len() - 1]]);
            let c = &finite[k];
            let cross = (&b.0 - &a.0) * (c.1 - a.1) - (b.1 - a.1) * (&c.0 - &a.0);
            if cross.is_positive() {
                break;
            }
            stack.pop();
        }
        stack.push(k);
    }
    Ok(stack
        .windows(2)
        .map(|w| {
            let (a, b) = (&finite[w[0]], &finite[w[1]]);
            HullSegment { left: a.2, right: b.2, slope: (b.1 - a.1) / (&b.0 - &a.0) }
        })
        .collect())
}
