use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropforms_core::currents::{push_forward, PolyhedralCurrent, PwlMap, Summand};
use tropforms_core::exactlin::random::{random_automorphism, random_simplex, random_vector};
use tropforms_core::exactlin::{AffineMap, Polyhedron, Weight};
use tropforms_core::integrate::{integrate_cell, integrate_cell_traced, stokes_check, ApexRule};
use tropforms_core::superforms::random::{random_form, random_poly};
use tropforms_core::superforms::{Form, SuperForm};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stokes_on_simplices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d..=3);
        let s = random_simplex(&mut rng, n, d);
        let mu = Weight::lattice_of(&s);
        let alpha = SuperForm::on_cell(&s, &random_form(&mut rng, n, d - 1, d, 3)).unwrap();
        let beta = SuperForm::on_cell(&s, &random_form(&mut rng, n, d, d - 1, 3)).unwrap();
        let r = stokes_check(&s, &mu, &alpha, &beta).unwrap();
        prop_assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn transformation_rule(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let p = random_simplex(&mut rng, n, n);
        let f = random_automorphism(&mut rng, n);
        let q = p.image(&f.inverse().unwrap()).unwrap();
        let eta = SuperForm::on_cell(&p, &Form::top(n, random_poly(&mut rng, n, 3))).unwrap();
        let lhs = integrate_cell(&eta.pullback(&f, &q.chart()).unwrap(), &q, &Weight::standard(n)).unwrap();
        let rhs = integrate_cell(&eta, &p, &Weight::standard(n)).unwrap() * f.determinant().unwrap().abs();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn triangulation_independence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let count = rng.gen_range(n + 1..n + 5);
        let pts: Vec<_> = (0..count).map(|_| random_vector(&mut rng, n, 3, 2)).collect();
        let p = Polyhedron::polytope(&pts).unwrap();
        let d = p.dim();
        let a = SuperForm::on_cell(&p, &random_form(&mut rng, n, d, d, 3)).unwrap();
        let mu = Weight::lattice_of(&p);
        let first = integrate_cell_traced(&a, &p, &mu, ApexRule::First).unwrap();
        let last = integrate_cell_traced(&a, &p, &mu, ApexRule::Last).unwrap();
        prop_assert_eq!(first.value, last.value);
    }

    #[test]
    fn pushforward_preserves_integral(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n);
        let m = rng.gen_range(1..=3);
        let mut summands = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let s = random_simplex(&mut rng, n, k);
            let w = Weight::lattice_of(&s);
            summands.push(Summand::from_ambient(s, w, &random_form(&mut rng, n, k, k, 2)).unwrap());
        }
        let t = PolyhedralCurrent::new(n, summands).unwrap();
        let f = AffineMap::new((0..m).map(|_| random_vector(&mut rng, n, 2, 1)).collect(), random_vector(&mut rng, m, 2, 2), n).unwrap();
        let pushed = push_forward(&t, &PwlMap::affine(f)).unwrap();
        prop_assert_eq!(pushed.integrate().unwrap(), t.integrate().unwrap());
    }
}
