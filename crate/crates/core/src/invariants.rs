//! Cross-module invariants, checked exhaustively at small sizes and by
//! property tests.

use crate::circular::circular_park;
use crate::enumerate::{
    count_nondecreasing_restricted, count_restricted, enum_prime_restricted, enum_restricted,
    functions, ones_distribution,
};
use crate::formulas::{ones_poly_alternating, IntPolynomial};
use crate::park::{catalan_check, defect, is_parking_function, is_prime, nondecreasing, park};
use crate::{Permutation, PreferenceList, RestrictionSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn pl(v: Vec<usize>) -> PreferenceList {
    PreferenceList::new(v).unwrap()
}

fn all_lists(n: usize, top: usize) -> impl Iterator<Item = PreferenceList> {
    let codomain: Vec<usize> = (1..=top).collect();
    functions(n, &codomain).map(pl)
}

#[test]
fn simulation_agrees_with_catalan_condition() {
    for n in 0..=6 {
        for pi in all_lists(n, n) {
            assert_eq!(
                is_parking_function(&pi).unwrap(),
                catalan_check(&pi).unwrap(),
                "{pi}"
            );
        }
    }
}

#[test]
fn prime_iff_sorted_list_lags() {
    for n in 1..=6 {
        for pi in all_lists(n, n) {
            let up = nondecreasing(&pi);
            let v = up.as_slice();
            let lags = v[0] == 1 && (2..=n).all(|i| v[i - 1] < i);
            assert_eq!(is_prime(&pi).unwrap(), lags, "{pi}");
        }
    }
}

#[test]
fn parking_is_invariant_under_reordering_cars() {
    for n in 1..=5 {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        for pi in all_lists(n, n) {
            let base = is_parking_function(&pi).unwrap();
            for tau in &perms {
                let moved = pl(tau
                    .as_slice()
                    .iter()
                    .map(|&t| pi.as_slice()[t - 1])
                    .collect());
                assert_eq!(is_parking_function(&moved).unwrap(), base);
            }
        }
    }
}

#[test]
fn defect_is_at_least_cars_minus_spots() {
    for n in 1..=6 {
        for s in 1..=n {
            let members: std::collections::HashSet<PreferenceList> =
                enum_restricted(n, &RestrictionSet::initial_segment(n, s).unwrap())
                    .unwrap()
                    .collect();
            for psi in all_lists(n, s) {
                let d = defect(&psi, s).unwrap();
                assert!(d >= n - s);
                assert_eq!(d == n - s, members.contains(&psi), "{psi} s={s}");
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_duplicate_free() {
    for n in 1..=6 {
        for s in 1..=n {
            let set = RestrictionSet::initial_segment(n, s).unwrap();
            let lists: Vec<_> = enum_restricted(n, &set).unwrap().collect();
            assert!(lists.windows(2).all(|w| w[0] < w[1]));
            let primes: Vec<_> = enum_prime_restricted(n, &set).unwrap().collect();
            assert!(primes.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn ones_enumerator_at_one_is_the_count() {
    let one = BigRational::from_integer(BigInt::from(1));
    for n in 1..=6 {
        for s in 1..=n {
            let poly = ones_poly_alternating(n, s).unwrap();
            let count =
                count_restricted(n, &RestrictionSet::initial_segment(n, s).unwrap()).unwrap();
            assert_eq!(poly.eval(&one), BigRational::from_integer(count));
        }
        let dist = ones_distribution(n, n).unwrap();
        let tree = &IntPolynomial::x() * &IntPolynomial::x_plus(n as i64).pow(n as u32 - 1);
        assert_eq!(IntPolynomial::from_coeffs(dist), tree);
    }
}

#[test]
fn orbit_counts_satisfy_the_triangle_recurrence() {
    for n in 2..=8 {
        for s in 2..=n {
            let lhs = count_nondecreasing_restricted(n, s).unwrap();
            let below = if s < n {
                count_nondecreasing_restricted(n - 1, s).unwrap()
            } else {
                count_nondecreasing_restricted(n - 1, n - 1).unwrap()
            };
            let left = count_nondecreasing_restricted(n, s - 1).unwrap();
            assert_eq!(lhs, below + left, "n={n} s={s}");
        }
    }
}

fn modular_case() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(g, s)| {
            let rows = prop::collection::vec(0..s, 0..=g * s);
            (Just(g), Just(s), rows)
        })
        .prop_map(|(g, s, rows)| (g, s, rows.into_iter().map(|r| r * g + 1).collect()))
}

proptest! {
    #[test]
    fn rotating_preferences_rotates_occupancy((g, s, prefs) in modular_case()) {
        let st = circular_park(&pl(prefs), g, s).unwrap();
        let rot = circular_park(&st.rotated_prefs(), g, s).unwrap();
        let gs = g * s;
        for j in 0..gs {
            prop_assert_eq!(rot.occupancy[(j + g) % gs], st.occupancy[j]);
        }
    }

    #[test]
    fn parked_cars_never_overtake_their_preference(prefs in prop::collection::vec(1usize..=7, 0..=7)) {
        let pi = pl(prefs);
        let res = park(&pi, 7).unwrap();
        for (spot, car) in res.occupancy.iter().enumerate() {
            if let Some(c) = car {
                prop_assert!(pi.as_slice()[c - 1] <= spot + 1);
            }
        }
        prop_assert_eq!(res.num_cars(), pi.n());
        prop_assert_eq!(res.occupancy.iter().flatten().count() + res.defect(), pi.n());
    }

    #[test]
    fn sorting_preserves_parking(raw in prop::collection::vec(0usize..64, 1..=8)) {
        let n = raw.len();
        let pi = pl(raw.into_iter().map(|r| r % n + 1).collect());
        prop_assert_eq!(
            is_parking_function(&pi).unwrap(),
            is_parking_function(&nondecreasing(&pi)).unwrap()
        );
    }
}
