use hurwitz_core::combinat::{partitions, stirling2};
use hurwitz_core::cutjoin::CutJoin;
use hurwitz_core::oracle::lemma::count_monotone_sequences;
use hurwitz_core::oracle::{steps, Budget, Flavor, Mode, Oracle};
use hurwitz_core::toprec::correlator;
use hurwitz_core::wavefunction::{differences, wavefunction_closed, wavefunction_from_numbers};
use num_traits::Zero;
use proptest::prelude::*;

fn key() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..=3, 0usize..=2, 1usize..=6).prop_flat_map(|(a, g, d)| {
        let parts = partitions(d);
        (Just(a), Just(g), prop::sample::select(parts))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cutjoin_agrees_with_enumeration((a, g, mu) in key()) {
        let d: usize = mu.iter().sum();
        prop_assume!(steps(a, g, mu.len(), d).is_none_or(|m| m <= 8));
        let mut oracle = Oracle::new(Budget::default());
        prop_assert_eq!(oracle.hurwitz(a, g, &mu).unwrap(), CutJoin::new().hurwitz(a, g, &mu).unwrap());
    }

    #[test]
    fn fixed_and_free_modes_agree((a, g, mu) in key()) {
        let d: usize = mu.iter().sum();
        prop_assume!(d <= 5 && steps(a, g, mu.len(), d).is_none_or(|m| m <= 6));
        let mut oracle = Oracle::new(Budget::default());
        let free = oracle.count(Flavor::MonotoneOrbifold, a, g, &mu, Mode::Free).unwrap();
        let fixed = oracle.count(Flavor::MonotoneOrbifold, a, g, &mu, Mode::FixedSigma0).unwrap();
        prop_assert_eq!(free, fixed);
    }

    #[test]
    fn parts_summing_off_the_lattice_vanish((a, g, mu) in key()) {
        let d: usize = mu.iter().sum();
        prop_assume!(!d.is_multiple_of(a));
        prop_assert!(CutJoin::new().hurwitz(a, g, &mu).unwrap().is_zero());
    }

    #[test]
    fn refined_numbers_sum_to_the_plain_number((a, g, mu) in key()) {
        let cj = CutJoin::new();
        let mut total = num_rational::BigRational::zero();
        for i in 0..mu.len() {
            let mut rest = mu.clone();
            let m1 = rest.remove(i);
            for ell in 1..=a {
                total += cj.refined(a, g, m1, ell, &rest).unwrap();
            }
        }
        prop_assert_eq!(total, cj.hurwitz(a, g, &mu).unwrap());
    }

    #[test]
    fn monotone_sequences_are_stirling(d in 1usize..=5, m in 0usize..=5) {
        prop_assert_eq!(count_monotone_sequences(d, m, Budget::default()).unwrap(), stirling2(d + m - 1, d - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn wave_function_pipelines_agree(a in 1usize..=3, k in 1usize..=2, r in 0i64..=3) {
        let cj = CutJoin::new();
        let from = wavefunction_from_numbers(a, k, r, &cj).unwrap();
        prop_assert!(differences(&from, &wavefunction_closed(a, k, r), r).is_empty());
    }
}

#[test]
fn correlators_are_symmetric() {
    let e = correlator(0, 3, 2, 4, 256).unwrap();
    for (mu, (v, _)) in &e.entries {
        let mut p = mu.clone();
        p.rotate_left(1);
        let w = e.value(&p).unwrap();
        assert!((v - w).abs_below_pow2(-200), "{mu:?}");
    }
}
