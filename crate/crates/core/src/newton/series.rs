use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::lower_hull;
use crate::exactlin::Rat;

/// Valuations of the coefficients of `πt + c₂t² + ⋯ + u t^{q^{2h}}`; absent indices are `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSeries {
    q: u64,
    h: u32,
    valuations: BTreeMap<u64, Rat>,
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q has a prime factor");
    let mut x = q;
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

impl PiSeries {
    /// `valuations` may omit indices 1 and `q^{2h}`; they are set to 1 and 0.
    pub fn new(q: u64, h: u32, valuations: BTreeMap<u64, Rat>) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::InvalidSeries(format!("q = {q} is not a prime power")));
        }
        if h == 0 {
            return Err(Error::InvalidSeries("h must be at least 1".into()));
        }
        let top = q.checked_pow(2 * h).ok_or_else(|| Error::InvalidSeries("q^(2h) overflows".into()))?;
        let mut v = valuations;
        match v.get(&1) {
            Some(x) if !x.is_one() => return Err(Error::InvalidSeries("index 1 must have valuation 1".into())),
            _ => {}
        }
        match v.get(&top) {
            Some(x) if !x.is_zero() => return Err(Error::InvalidSeries(format!("index {top} must have valuation 0"))),
            _ => {}
        }
        v.insert(1, Rat::one());
        v.insert(top, Rat::zero());
        for (i, x) in &v {
            if *i == 0 || *i > top {
                return Err(Error::InvalidSeries(format!("index {i} outside 1..={top}")));
            }
            if *i != top && !x.is_positive() {
                return Err(Error::InvalidSeries(format!("index {i} must have positive valuation")));
            }
        }
        Ok(PiSeries { q, h, valuations: v })
    }

    /// `πt + u t^{q^{2h}}`
    pub fn pure(q: u64, h: u32) -> Result<Self> {
        Self::new(q, h, BTreeMap::new())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// `q^{2h}`
    pub fn top(&self) -> u64 {
        self.q.pow(2 * self.h)
    }

    pub fn valuations(&self) -> &BTreeMap<u64, Rat> {
        &self.valuations
    }

    pub fn is_pure(&self) -> bool {
        self.valuations.len() == 2
    }
}

/// Valuations of the solutions `t` of `[π](t) = y` with multiplicities, smallest first.
///
/// `y_valuation = None` means `y = 0`; the root `t = 0` is then excluded.
pub fn torsion_valuations(s: &PiSeries, y_valuation: Option<&Rat>) -> Result<Vec<(Rat, u64)>> {
    if let Some(e) = y_valuation {
        if e.is_negative() {
            return Err(Error::InvalidSeries("y must have nonnegative valuation".into()));
        }
    }
    let mut pts: Vec<(u64, Option<Rat>)> = vec![(0, y_valuation.cloned())];
    pts.extend(s.valuations.iter().map(|(i, v)| (*i, Some(v.clone()))));
    let mut out: Vec<(Rat, u64)> = lower_hull(&pts)?.into_iter().filter(|seg| seg.slope.is_negative()).map(|seg| (-seg.slope.clone(), seg.width())).collect();
    out.sort();
    Ok(out)
}

/// Simulated minima `a₁, …, a_n` along a division tower and the two bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub minima: Vec<Rat>,
    /// `1/(q^{2h} − 1)`
    pub first_bound: Rat,
    pub first_holds: bool,
    /// `a₁ = 1/(q^{2h} − 1)`
    pub first_equality: bool,
    /// `a_k ≤ q^{−2h} a_{k−1}` for `k ≥ 2`.
    pub step_holds: Vec<bool>,
    pub holds: bool,
}

pub fn level_bound_check(s: &PiSeries, depth: usize) -> Result<LevelReport> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let top = Rat::from_integer(s.top().into());
    let mut minima = Vec::with_capacity(depth);
    let mut prev: Option<Rat> = None;
    for _ in 0..depth {
        let vals = torsion_valuations(s, prev.as_ref())?;
        let a = vals.first().map(|(v, _)| v.clone()).ok_or_else(|| Error::InvalidSeries("no solutions of positive valuation".into()))?;
        minima.push(a.clone());
        prev = Some(a);
    }
    let first_bound = (&top - Rat::one()).recip();
    let first_holds = minima[0] <= first_bound;
    let step_holds: Vec<bool> = minima.windows(2).map(|w| w[1] <= &w[0] / &top).collect();
    Ok(LevelReport {
        first_equality: minima[0] == first_bound,
        holds: first_holds && step_holds.iter().all(|&b| b),
        minima,
        first_bound,
        first_holds,
        step_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::{int, rat};

    #[test]
    fn pure_series() {
        let s = PiSeries::pure(2, 1).unwrap();
        assert_eq!(torsion_valuations(&s, None).unwrap(), vec![(rat(1, 3), 3)]);
        let r = level_bound_check(&s, 3).unwrap();
        assert_eq!(r.minima, vec![rat(1, 3), rat(1, 12), rat(1, 48)]);
        assert!(r.holds && r.first_equality);
        assert_eq!(level_bound_check(&s, 1).unwrap().minima, vec![rat(1, 3)]);
    }

    #[test]
    fn intermediate_coefficient() {
        let s = PiSeries::new(2, 1, BTreeMap::from([(2, rat(1, 4))])).unwrap();
        assert_eq!(torsion_valuations(&s, None).unwrap(), vec![(rat(1, 8), 2), (rat(3, 4), 1)]);
        assert!(level_bound_check(&s, 3).unwrap().holds);
    }

    #[test]
    fn division_step() {
        let s = PiSeries::pure(2, 1).unwrap();
        assert_eq!(torsion_valuations(&s, Some(&rat(1, 5))).unwrap(), vec![(rat(1, 20), 4)]);
    }

    #[test]
    fn invalid_series() {
        assert!(PiSeries::new(6, 1, BTreeMap::new()).is_err());
        assert!(PiSeries::new(2, 1, BTreeMap::from([(1, int(2))])).is_err());
        assert!(PiSeries::new(2, 1, BTreeMap::from([(3, int(0))])).is_err());
        assert!(PiSeries::new(2, 1, BTreeMap::from([(5, int(1))])).is_err());
    }
}
