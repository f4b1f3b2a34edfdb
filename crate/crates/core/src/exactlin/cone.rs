//! Double description: generators of `{x : A x >= 0, E x = 0}`.

use num_traits::{Signed, Zero};

use super::matrix::identity;
use super::rat::{axpy, dot, neg, primitive, Rat, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// Lineality basis and extreme rays of a polyhedral cone.
#[derive(Clone, Debug)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

pub(crate) fn cone_generators(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> ConeGenerators {
    let m = ineqs.len();
    let mut lin: Vec<Vector> = identity(dim);
    let mut rays: Vec<(Vector, Bits)> = Vec::new();
    let constraints = eqs.iter().map(|a| (a, None)).chain(ineqs.iter().enumerate().map(|(i, a)| (a, Some(i))));
    for (a, idx) in constraints {
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lin.remove(pos);
            let c0 = dot(a, &l0);
            for l in lin.iter_mut() {
                let c = dot(a, l);
                if !c.is_zero() {
                    *l = axpy(l, &(-(c / &c0)), &l0);
                }
            }
            for (r, z) in rays.iter_mut() {
                let c = dot(a, r);
                if !c.is_zero() {
                    *r = primitive(&axpy(r, &(-(c / &c0)), &l0));
                }
                if let Some(i) = idx {
                    z.set(i);
                }
            }
            if let Some(i) = idx {
                let r = if c0.is_positive() { l0 } else { neg(&l0) };
                let mut z = Bits::new(m);
                for j in 0..i {
                    z.set(j);
                }
                rays.push((primitive(&r), z));
            }
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut fresh: Vec<(Vector, Bits)> = Vec::new();
        for &p in &pos {
            for &n in &negs {
                let common = rays[p].1.and(&rays[n].1);
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != n)
                    .all(|k| !common.subset_of(&rays[k].1));
                if !adjacent {
                    continue;
                }
                let v = axpy(&rays[n].0.iter().map(|x| x * &vals[p]).collect::<Vec<_>>(), &(-vals[n].clone()), &rays[p].0);
                let mut z = common;
                if let Some(i) = idx {
                    z.set(i);
                }
                fresh.push((primitive(&v), z));
            }
        }
        let mut kept: Vec<(Vector, Bits)> = Vec::new();
        for (i, (r, z)) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                let mut z = z;
                if let Some(j) = idx {
                    z.set(j);
                }
                kept.push((r, z));
            } else if vals[i].is_positive() && idx.is_some() {
                kept.push((r, z));
            }
        }
        kept.extend(fresh);
        rays = kept;
    }
    ConeGenerators { lineality: lin, rays: rays.into_iter().map(|(r, _)| r).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::vector;

    #[test]
    fn orthant() {
        let g = cone_generators(2, &[vector(&[1, 0]), vector(&[0, 1])], &[]);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays;
        rays.sort();
        assert_eq!(rays, vec![vector(&[0, 1]), vector(&[1, 0])]);
    }

    #[test]
    fn square_cone() {
        // homogenized unit square: x0 >= 0, x1 >= 0, x2 >= 0, x0 - x1 >= 0, x0 - x2 >= 0
        let ineqs = vec![vector(&[1, 0, 0]), vector(&[0, 1, 0]), vector(&[0, 0, 1]), vector(&[1, -1, 0]), vector(&[1, 0, -1])];
        let g = cone_generators(3, &ineqs, &[]);
        assert_eq!(g.rays.len(), 4);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn halfplane_has_lineality() {
        let g = cone_generators(2, &[vector(&[1, 0])], &[]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays, vec![vector(&[1, 0])]);
    }

    #[test]
    fn equality_cuts_down() {
        let g = cone_generators(3, &[vector(&[1, 0, 0]), vector(&[0, 1, 0])], &[vector(&[1, -1, 0])]);
        assert_eq!(g.lineality, vec![vector(&[0, 0, 1])]);
        assert_eq!(g.rays, vec![vector(&[1, 1, 0])]);
    }
}
