use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropforms_core::complexes::{LinearStructure, PwlFunction};
use tropforms_core::currents::{corner_locus, TropicalCycle};
use tropforms_core::exactlin::rat::{axpy, dot, sub};
use tropforms_core::exactlin::{AffineFunctional, Polyhedron, Rat, Vector, Weight};
use tropforms_core::metgraph::random::{random_divisor, random_graph, random_graph_pwl, random_point};
use tropforms_core::metgraph::{green_solve, laplacian, pairing, GraphPoint, GraphPwl, MetGraph};

fn random_position(rng: &mut ChaCha8Rng) -> Vector {
    (0..3).map(|_| Rat::from_integer(rng.gen_range(-60..=60).into())).collect()
}

/// Embeds each edge as a three-segment polyline through two random points and returns the
/// cycle with arc-length weights, the restriction of `phi`, and the image of every vertex.
fn embed(rng: &mut ChaCha8Rng, g: &MetGraph, phi: &GraphPwl) -> (TropicalCycle, PwlFunction, Vec<Vector>) {
    let vertices: Vec<Vector> = (0..g.vertex_count()).map(|_| random_position(rng)).collect();
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let corners = [vertices[e.tail].clone(), random_position(rng), random_position(rng), vertices[e.head].clone()];
        let third = &e.length / Rat::from_integer(3.into());
        let mut ts: Vec<Rat> = vec![Rat::zero(), third.clone(), &third + &third, e.length.clone()];
        ts.extend(phi.edge_knots[i].iter().map(|(t, _)| t.clone()));
        ts.sort();
        ts.dedup();
        let at = |t: &Rat| -> Vector {
            let k = ((t / &third).floor().to_integer().try_into().unwrap_or(0usize)).min(2);
            let s = (t - &third * Rat::from_integer((k as i64).into())) / &third;
            axpy(&corners[k], &s, &sub(&corners[k + 1], &corners[k]))
        };
        for w in ts.windows(2) {
            let (a, b) = (at(&w[0]), at(&w[1]));
            let len = &w[1] - &w[0];
            let dir = sub(&b, &a);
            let seg = Polyhedron::segment(a.clone(), b.clone());
            cells.push((seg.clone(), Weight::new(vec![dir.clone()], Rat::from_integer(1.into()) / &len).unwrap()));
            let va = phi.eval(g, &GraphPoint::Edge { edge: i, t: w[0].clone() }).unwrap_or_else(|_| phi.vertex_values[e.tail].clone());
            let vb = phi.eval(g, &GraphPoint::Edge { edge: i, t: w[1].clone() }).unwrap_or_else(|_| phi.vertex_values[e.head].clone());
            let grad: Vector = dir.iter().map(|d| d * (&vb - &va) / dot(&dir, &dir)).collect();
            let offset = &va - dot(&grad, &a);
            pieces.push((seg, AffineFunctional::new(grad, offset)));
        }
    }
    (TropicalCycle::new(3, cells).unwrap(), PwlFunction::new(3, pieces).unwrap(), vertices)
}

fn point_image(vertices: &[Vector], p: &GraphPoint) -> Vector {
    match p {
        GraphPoint::Vertex(v) => vertices[*v].clone(),
        _ => panic!("interior point {p} outside the embedding test"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn laplacian_has_total_mass_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, extra) = (rng.gen_range(1..=6), rng.gen_range(0..=4));
        let g = random_graph(&mut rng, v, extra).unwrap();
        let phi = random_graph_pwl(&mut rng, &g).unwrap();
        prop_assert!(laplacian(&phi, &g).unwrap().degree().is_zero());
    }

    #[test]
    fn green_function_inverts_laplacian(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, extra) = (rng.gen_range(1..=6), rng.gen_range(0..=4));
        let g = random_graph(&mut rng, v, extra).unwrap();
        let size = rng.gen_range(1..=4);
        let d = random_divisor(&mut rng, &g, size).unwrap();
        let base = random_point(&mut rng, &g);
        let f = green_solve(&g, &d, &base).unwrap();
        prop_assert_eq!(laplacian(&f, &g).unwrap(), d);
        prop_assert!(f.eval(&g, &base).unwrap().is_zero());
    }

    #[test]
    fn pairing_is_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, extra) = (rng.gen_range(1..=6), rng.gen_range(0..=4));
        let g = random_graph(&mut rng, v, extra).unwrap();
        let f1 = random_graph_pwl(&mut rng, &g).unwrap();
        let f2 = random_graph_pwl(&mut rng, &g).unwrap();
        let p = pairing(&f1, &f2, &g).unwrap();
        prop_assert!(p.symmetric);
        prop_assert_eq!(p.value, p.reversed);
    }

    #[test]
    fn laplacian_matches_corner_locus_of_embedding(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, extra) = (rng.gen_range(2..=4), rng.gen_range(0..=2));
        let g = random_graph(&mut rng, v, extra).unwrap();
        let phi = GraphPwl::from_vertex_values(&g, (0..v).map(|_| Rat::from_integer(rng.gen_range(-9..=9).into())).collect()).unwrap();
        let (cycle, f, vertices) = embed(&mut rng, &g, &phi);
        let div = corner_locus(&f, &cycle, &LinearStructure::affine(3)).unwrap();
        let got: BTreeMap<Vector, Rat> = div
            .multiplicities()
            .unwrap()
            .into_iter()
            .filter(|(c, m)| c.dim() == 0 && !m.is_zero())
            .map(|(c, m)| (c.vertices()[0].clone(), m))
            .collect();
        let want: BTreeMap<Vector, Rat> = laplacian(&phi, &g).unwrap().points.iter().map(|(p, m)| (point_image(&vertices, p), m.clone())).collect();
        prop_assert_eq!(got, want);
    }
}
