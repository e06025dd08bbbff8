use std::sync::Arc;

use proptest::prelude::*;
use revdist::oracle::{exact_distance, greedy_sort, validate};
use revdist::perm_core::{GroundSet, Permutation};
use revdist::signed_perm::{format, parse};
use revdist::{bound_plane, check_equivalence, ReversalStep, SignedPermutation};

fn ground(m: usize) -> Arc<GroundSet> {
    Arc::new(GroundSet::range(0, m as i32 - 1))
}

fn perm_on(m: usize) -> impl Strategy<Value = Permutation> {
    Just((0..m as i32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |images| Permutation::from_images(ground(m), &images).unwrap())
}

fn perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..12).prop_flat_map(|m| (perm_on(m), perm_on(m), perm_on(m)))
}

fn signed(max_n: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(mags, signs)| {
                let v = mags
                    .iter()
                    .zip(&signs)
                    .map(|(&m, &neg)| if neg { -m } else { m })
                    .collect();
                SignedPermutation::new(v).unwrap()
            })
    })
}

fn with_step(max_n: usize) -> impl Strategy<Value = (SignedPermutation, ReversalStep)> {
    signed(max_n).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), (1..=n))
            .prop_flat_map(move |(a, i)| (Just(a), Just(i), i..=n))
            .prop_map(|(a, i, j)| (a, ReversalStep::new(i, j)))
    })
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in perm_triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in perm_triple()) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.inverse().cycle_count(), a.cycle_count());
    }

    #[test]
    fn cycle_count_is_a_conjugacy_invariant((a, b, _) in perm_triple()) {
        let conj = b.compose(&a).unwrap().compose(&b.inverse()).unwrap();
        prop_assert_eq!(conj.cycle_count(), a.cycle_count());
    }

    #[test]
    fn matrices_are_a_homomorphism((a, b, _) in perm_triple()) {
        let ab = a.compose(&b).unwrap().to_matrix();
        prop_assert_eq!(a.to_matrix().product(&b.to_matrix()).unwrap(), ab);
        prop_assert_eq!(a.to_matrix().transpose(), a.inverse().to_matrix());
        let back = Permutation::from_matrix(&a.to_matrix(), Arc::clone(a.ground())).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reversal_is_an_involution((a, step) in with_step(12)) {
        let once = a.reverse(step).unwrap();
        let mut mags: Vec<u32> = once.entries().iter().map(|x| x.unsigned_abs()).collect();
        mags.sort_unstable();
        prop_assert_eq!(mags, (1..=a.len() as u32).collect::<Vec<_>>());
        prop_assert_eq!(once.reverse(step).unwrap(), a);
    }

    #[test]
    fn parse_inverts_format(a in signed(20)) {
        prop_assert_eq!(parse(&format(&a)).unwrap(), a.clone());
        let commas = a.entries().iter().map(i32::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse(&commas).unwrap(), a);
    }

    #[test]
    fn bounds_agree(a in signed(40)) {
        let r = check_equivalence(&a).unwrap();
        prop_assert_eq!(r.bound_plane, r.bound_bg);
        prop_assert_eq!(r.bound_bg, r.bound_genus);
        prop_assert_eq!(r.c_plane + 1, r.c_theta);
        prop_assert_eq!(r.c_theta, 2 * r.c_bg);
    }

    #[test]
    fn greedy_certificate_is_valid_and_above_bound(a in signed(30)) {
        let cert = greedy_sort(&a).unwrap();
        prop_assert!(validate(&cert));
        prop_assert!(cert.len() >= bound_plane(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_inverse_symmetric(a in signed(6)) {
        prop_assert_eq!(exact_distance(&a, 7).unwrap(), exact_distance(&a.inverse(), 7).unwrap());
    }

    #[test]
    fn one_reversal_moves_distance_by_at_most_one((a, step) in with_step(6)) {
        let d = exact_distance(&a, 7).unwrap() as i64;
        let e = exact_distance(&a.reverse(step).unwrap(), 7).unwrap() as i64;
        prop_assert!((d - e).abs() <= 1);
        prop_assert!(bound_plane(&a).unwrap() as i64 <= d);
    }
}
