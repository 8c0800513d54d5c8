//! Randomized properties driven by proptest seeds through the crate's own
//! generators, so shrinking acts on the seed.

use bbs_crystal::checks::{random_rectangle, random_soliton, random_state, trial_rng};
use bbs_crystal::rmatrix::{apply_r, oracle_r};
use bbs_crystal::soliton::{detect, SolitonConfig};
use bbs_crystal::tableau::content_sum;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_is_invariant_under_evolution(seed in any::<u64>(), l in 1usize..=4) {
        let p = random_state(&mut trial_rng(seed, 0)).unwrap();
        let q = p.evolve(l).unwrap().0;
        prop_assert_eq!(p.spectrum().unwrap(), q.spectrum().unwrap());
    }

    #[test]
    fn evolution_preserves_content_over_a_common_window(seed in any::<u64>(), l in 1usize..=4) {
        let p = random_state(&mut trial_rng(seed, 0)).unwrap();
        let q = p.evolve(l).unwrap().0;
        let (start, end) = (p.offset().min(q.offset()), p.end().max(q.end()));
        prop_assert_eq!(p.window_word(start, end).content(), q.window_word(start, end).content());
    }

    #[test]
    fn detect_inverts_build(seed in any::<u64>(), k in 1usize..=3, d1 in 1usize..=4, d2 in 1usize..=4, gap in 1i64..=5) {
        let mut rng = trial_rng(seed, 0);
        let n = (k + 2) as u8;
        let s1 = random_soliton(&mut rng, n, k, d1, 0).unwrap();
        let s2 = random_soliton(&mut rng, n, k, d2, d1 as i64 + gap).unwrap();
        let cfg = SolitonConfig::new(n, k, vec![s1, s2]).unwrap();
        prop_assert_eq!(detect(&cfg.build().unwrap()).unwrap(), cfg);
    }

    #[test]
    fn fast_r_matches_oracle_on_wider_shapes(seed in any::<u64>(), k in 1usize..=2, l in 1usize..=3, kp in 1usize..=2, lp in 1usize..=3) {
        let mut rng = trial_rng(seed, 0);
        let x = random_rectangle(&mut rng, k, l, 4).unwrap();
        let y = random_rectangle(&mut rng, kp, lp, 4).unwrap();
        let r = apply_r(&x, &y).unwrap();
        prop_assert_eq!(&r, &oracle_r(&x, &y).unwrap());
        prop_assert_eq!(content_sum(&x.content(), &y.content()), content_sum(&r.left_out.content(), &r.right_out.content()));
    }
}
