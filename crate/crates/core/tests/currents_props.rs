use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropforms_core::complexes::{LinearStructure, WeightedComplex};
use tropforms_core::currents::{
    boundary_ddoubleprime, boundary_dprime, check_balanced, check_flat, corner_locus, corner_locus_with, fiber_integral_form,
    pull_back_flat, push_forward, PolyhedralCurrent, PwlMap, Summand, TropicalCycle,
};
use tropforms_core::exactlin::random::{random_rat, random_simplex};
use tropforms_core::exactlin::rat::{int, vector, zeros};
use tropforms_core::exactlin::{AffineMap, Polyhedron, Rat, Vector, Weight};
use tropforms_core::intersection::random::{random_curve, random_fan_surface, random_pwl};
use tropforms_core::superforms::random::random_form;
use tropforms_core::superforms::{Form, Poly, Side};

fn integer_map(rng: &mut ChaCha8Rng, n: usize, m: usize) -> AffineMap {
    let rank_ok = |rows: &[Vector]| tropforms_core::exactlin::matrix::rank(rows, n) == n.min(m);
    loop {
        let rows: Vec<Vector> = (0..m).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        if rank_ok(&rows) {
            return AffineMap::linear(rows, n).unwrap();
        }
    }
}

fn random_interior_point(rng: &mut ChaCha8Rng, p: &Polyhedron) -> Vector {
    let ws: Vec<Rat> = p.vertices().iter().map(|_| int(rng.gen_range(1..=5))).collect();
    let total: Rat = ws.iter().sum();
    let mut x = zeros(p.ambient_dim());
    for (w, v) in ws.iter().zip(p.vertices()) {
        x = tropforms_core::exactlin::rat::axpy(&x, &(w / &total), v);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn corner_loci_on_fans_are_balanced(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms = rng.gen_range(3..=4);
        let fan = random_fan_surface(&mut rng, terms).unwrap();
        let phi = random_pwl(&mut rng, 3, 3).unwrap();
        let l = LinearStructure::affine(3);
        let div = corner_locus(&phi, &fan, &l).unwrap();
        prop_assert!(check_balanced(div.current(), &l).unwrap().balanced);
        let other = corner_locus_with(&phi, &fan, &l, |tau| Weight::lattice_of(tau).scaled(&int(3)).unwrap()).unwrap();
        prop_assert!(div.equals(&other).unwrap());
    }

    #[test]
    fn pushforward_keeps_balance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=2);
        let c = random_curve(&mut rng, d).unwrap();
        let f = integer_map(&mut rng, 2, 3);
        let pushed = push_forward(c.current(), &PwlMap::affine(f)).unwrap();
        prop_assert!(check_balanced(&pushed, &LinearStructure::affine(3)).unwrap().balanced);
    }

    #[test]
    fn projection_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(1..n);
        let y = WeightedComplex::from_carriers(m, vec![(Polyhedron::whole_space(m), Weight::standard(m))]).unwrap();
        let (p, x, f, pf) = loop {
            let p = random_simplex(&mut rng, n, n);
            let x = WeightedComplex::from_carriers(n, vec![(p.clone(), Weight::standard(n))]).unwrap();
            let f = integer_map(&mut rng, n, m);
            let pf = PwlMap::affine(f.clone());
            if check_flat(&x, &y, &pf).unwrap().flat {
                break (p, x, f, pf);
            }
        };
        let t = if rng.gen_bool(0.5) {
            PolyhedralCurrent::dirac(f.apply(&random_interior_point(&mut rng, &p)), random_rat(&mut rng, 3, 2))
        } else {
            let (a, b) = (rng.gen_range(0..=m), rng.gen_range(0..=m));
            let beta = random_form(&mut rng, m, a, b, 2);
            PolyhedralCurrent::new(m, vec![Summand::from_ambient(Polyhedron::whole_space(m), Weight::standard(m), &beta).unwrap()]).unwrap()
        };
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let alpha = random_form(&mut rng, n, a, b, 2);
        let pulled = pull_back_flat(&t, &x, &y, &pf).unwrap();
        let lhs = push_forward(&pulled.wedge_ambient(&alpha).unwrap(), &pf).unwrap();
        let eta = PolyhedralCurrent::of_complex(&x).unwrap().wedge_ambient(&alpha).unwrap();
        let pws = fiber_integral_form(&eta, &y, &pf).unwrap();
        let cells: Vec<Polyhedron> = pws.pieces.iter().map(|(c, _)| c.clone()).collect();
        let rhs = t.normalize_with(&cells).unwrap().wedge_left(|c| pws.on(c)).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap(), "lhs {lhs:?}\nrhs {rhs:?}");
    }

    #[test]
    fn polynomial_forms_have_no_boundary(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let phi = random_pwl(&mut rng, n, 3).unwrap();
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let alpha = random_form(&mut rng, n, a, b, 3);
        let summands = phi.pieces().iter().map(|(c, _)| Summand::from_ambient(c.clone(), Weight::standard(n), &alpha).unwrap()).collect();
        let t = PolyhedralCurrent::new(n, summands).unwrap();
        prop_assert!(boundary_dprime(&t).unwrap().is_zero().unwrap());
        prop_assert!(boundary_ddoubleprime(&t).unwrap().is_zero().unwrap());
    }
}

#[test]
fn heaviside_witness() {
    let half = Polyhedron::cone(vector(&[0]), &[vector(&[1])]).unwrap();
    let s = Summand::from_ambient(half, Weight::standard(1), &Form::basis_one_form(1, 0, Side::DoublePrime)).unwrap();
    let t = PolyhedralCurrent::new(1, vec![s]).unwrap();
    let b = boundary_dprime(&t).unwrap();
    assert!(b.neg().equals(&PolyhedralCurrent::dirac(vector(&[0]), int(1))).unwrap());
}

#[test]
fn flatness_through_faithfully_flat_factor() {
    let plane = WeightedComplex::from_carriers(2, vec![(Polyhedron::whole_space(2), Weight::standard(2))]).unwrap();
    let line = WeightedComplex::from_carriers(1, vec![(Polyhedron::whole_space(1), Weight::standard(1))]).unwrap();
    let g = PwlMap::affine(AffineMap::projection(2, &[0]));
    let f = PwlMap::affine(AffineMap::linear(vec![vector(&[2])], 1).unwrap());
    assert!(check_flat(&plane, &line, &g).unwrap().faithfully_flat);
    assert!(check_flat(&plane, &line, &f.compose(&g).unwrap()).unwrap().flat);
    assert!(check_flat(&line, &line, &f).unwrap().flat);
}

#[test]
fn pulled_back_fundamental_class() {
    let p = Polyhedron::polytope(&[vector(&[0, 0]), vector(&[2, 1]), vector(&[1, 3])]).unwrap();
    let x = WeightedComplex::from_carriers(2, vec![(p, Weight::standard(2))]).unwrap();
    let y = WeightedComplex::from_carriers(1, vec![(Polyhedron::whole_space(1), Weight::standard(1))]).unwrap();
    let f = PwlMap::affine(AffineMap::projection(2, &[0]));
    let t = PolyhedralCurrent::of_complex(&y).unwrap();
    let pulled = pull_back_flat(&t, &x, &y, &f).unwrap();
    assert!(pulled.equals(&PolyhedralCurrent::of_complex(&x).unwrap()).unwrap());
    let mass = Form::top(2, Poly::one(2));
    assert_eq!(pulled.wedge_ambient(&mass).unwrap().integrate().unwrap(), tropforms_core::exactlin::rat(5, 2));
    let _ = TropicalCycle::from_current(pulled).unwrap();
}
