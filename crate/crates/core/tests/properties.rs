//! Property tests over arbitrary measures, seeds and parameters.

use proptest::prelude::*;

use cutoff_core::dist::Dist;
use cutoff_core::generators::{named_fixture, random_regular, Fixture, RandomRegularParams};
use cutoff_core::io::{read_graph, write_graph};
use cutoff_core::matching::decompose_permutations;
use cutoff_core::tree::radial_walk;
use cutoff_core::walk::{entropy, hellinger_sq, tv_distance};

/// Arbitrary distribution on n points from positive weights.
fn dist_strategy(n: usize) -> impl Strategy<Value = Dist> {
    proptest::collection::vec(1e-6f64..1.0, n).prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        Dist::new(raw.into_iter().map(|x| x / sum).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn distance_ranges_and_comparisons(nu in dist_strategy(24), eta in dist_strategy(24)) {
        let tv = tv_distance(&nu, &eta).unwrap();
        let hell2 = hellinger_sq(&nu, &eta).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&tv));
        prop_assert!((0.0..=2.0 + 1e-12).contains(&hell2));
        // hell2 <= L1 <= sqrt(hell2) * || sqrt(nu) + sqrt(eta) ||_2
        let l1 = 2.0 * tv;
        prop_assert!(hell2 <= l1 + 1e-12);
        let sum_norm: f64 = nu
            .as_slice()
            .iter()
            .zip(eta.as_slice())
            .map(|(a, b)| (a.sqrt() + b.sqrt()).powi(2))
            .sum::<f64>()
            .sqrt();
        prop_assert!(l1 <= hell2.sqrt() * sum_norm + 1e-12);
        // symmetry
        prop_assert!((tv - tv_distance(&eta, &nu).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn tv_matches_subset_maximum(nu in dist_strategy(10), eta in dist_strategy(10)) {
        let tv = tv_distance(&nu, &eta).unwrap();
        let mut best: f64 = 0.0;
        for mask in 0u32..(1 << 10) {
            let mut sum = 0.0;
            for x in 0..10 {
                if mask >> x & 1 == 1 {
                    sum += nu.as_slice()[x] - eta.as_slice()[x];
                }
            }
            best = best.max(sum.abs());
        }
        prop_assert!((tv - best).abs() < 1e-14);
    }

    #[test]
    fn one_walk_step_conserves_mass_and_entropy(nu in dist_strategy(10)) {
        let g = named_fixture(&Fixture::Petersen).unwrap();
        let out = g.apply_p(&nu).unwrap();
        let total: f64 = out.as_slice().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        // doubly stochastic averaging never loses entropy
        prop_assert!(entropy(&out) >= entropy(&nu) - 1e-12);
        // operator agrees with the average of the permutation pushforwards
        let decomp = decompose_permutations(&g).unwrap();
        let via_perms = decomp.average(&nu).unwrap();
        for v in 0..10 {
            prop_assert!((out.get(v) - via_perms.get(v)).abs() < 1e-12);
        }
    }

    #[test]
    fn random_regular_round_trips_through_the_file_format(
        n_half in 4usize..40,
        d in 3usize..6,
        seed in 0u64..500,
    ) {
        let n = 2 * n_half; // even n keeps n*d even for odd d
        prop_assume!(n > d);
        // the fully-rejecting pairing model succeeds per attempt with
        // probability about exp(-(d^2-1)/4), so give d = 5 real headroom
        let mut params = RandomRegularParams::new(n, d, seed);
        params.max_attempts = 20_000;
        let g = random_regular(&params).unwrap();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf, &[]).unwrap();
        let back = read_graph(&buf[..]).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn radial_law_stays_normalized_with_correct_parity(
        d in 3usize..8,
        t in 0usize..200,
    ) {
        let q = radial_walk(d, t);
        prop_assert!((q.total() - 1.0).abs() < 1e-12);
        for (r, &m) in q.masses().iter().enumerate() {
            if (r % 2) != (t % 2) {
                prop_assert!(m == 0.0);
            } else {
                prop_assert!(m >= 0.0);
            }
        }
    }

    #[test]
    fn dist_construction_policy(scale in 0.90f64..1.10) {
        // renormalize within 1e-9 of unit mass, reject beyond
        let mass = vec![0.25 * scale; 4];
        let result = Dist::new(mass);
        if (scale - 1.0).abs() <= 1e-9 {
            prop_assert!(result.is_ok());
        } else {
            prop_assert!(result.is_err());
        }
    }
}
