use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropforms_core::exactlin::Rat;
use tropforms_core::newton::random::{random_block_matrix, random_matrix, random_series};
use tropforms_core::newton::{dvr_length, level_bound_check, torsion_valuations, PiSeries};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn level_bounds_hold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = [2, 3][rng.gen_range(0..2)];
        let h = rng.gen_range(1..=2);
        let s = random_series(&mut rng, q, h).unwrap();
        let r = level_bound_check(&s, 3).unwrap();
        prop_assert!(r.holds, "{r:?}");
        prop_assert_eq!(r.first_equality, s.is_pure() || r.minima[0] == r.first_bound);
    }

    #[test]
    fn torsion_multiplicities_cover_the_hull(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, h) = ([2, 3][rng.gen_range(0..2)], rng.gen_range(1..=2));
        let s = random_series(&mut rng, q, h).unwrap();
        let total: u64 = torsion_valuations(&s, None).unwrap().iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, s.top() - 1);
        let eps = Rat::new(rng.gen_range(1..10).into(), rng.gen_range(1..10).into());
        let total: u64 = torsion_valuations(&s, Some(&eps)).unwrap().iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, s.top());
    }

    #[test]
    fn dvr_length_is_det_valuation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [2, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, p).unwrap();
        let r = dvr_length(&m, None).unwrap();
        prop_assert!(r.holds && r.blocks_hold, "{r:?}");
    }

    #[test]
    fn block_lengths_add_up(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = rng.gen_range(1..=3);
        let (m, sizes) = random_block_matrix(&mut rng, blocks, 3).unwrap();
        let r = dvr_length(&m, Some(&sizes)).unwrap();
        prop_assert!(r.holds && r.blocks_hold);
        let sum: Rat = r.blocks.iter().map(|b| &b.per_unit * Rat::from_integer(b.size.into())).sum();
        prop_assert_eq!(sum, r.det_valuation);
    }
}

#[test]
fn pure_series_reach_the_bound() {
    for (q, h) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let s = PiSeries::pure(q, h).unwrap();
        let r = level_bound_check(&s, 3).unwrap();
        assert!(r.holds && r.first_equality);
        let top = Rat::from_integer(s.top().into());
        assert_eq!(r.minima[2], &r.minima[0] / (&top * &top));
        assert!(!r.minima[2].is_zero());
    }
}
