//! Property tests over random members and random rationals.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use puiseux_core::monoid::{descriptor_to_json, parse_descriptor};
use puiseux_core::{
    atomic_decompose, divides, enumerate_factorizations, factorizations_of_length, length_set, member, rat, Bounds,
    Completeness, Decomposed, ExactRational, MembershipVerdict, MonoidDescriptor,
};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const L: u64 = 30030;

/// `Σ cᵢ/pᵢ` over the first six primes.
fn combo(coeffs: &[u64]) -> ExactRational {
    let num: u64 = coeffs.iter().zip(PRIMES).map(|(c, p)| c * (L / p)).sum();
    rat(num, L)
}

fn coeffs() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..30, 6)
}

fn decomposition(q: &ExactRational) -> puiseux_core::AtomicDecomposition {
    match atomic_decompose(&MonoidDescriptor::prime_reciprocal(), q).unwrap() {
        Decomposed::Unique(d) => d,
        Decomposed::NotMember(ob) => panic!("{q} should be a member: {ob}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_round_trip_through_text(n in 0u64..1_000_000, d in 1u64..1_000_000) {
        let q = rat(n, d);
        let back: ExactRational = q.to_string().parse().unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn decompositions_reconstruct(c in coeffs()) {
        let q = combo(&c);
        let d = decomposition(&q);
        prop_assert!(d.is_valid(&MonoidDescriptor::prime_reciprocal()));
        prop_assert_eq!(d.evaluate(&MonoidDescriptor::prime_reciprocal()).unwrap(), q);
    }

    /// η(r+s) ≥ η(r) + η(s); on equality the ζ vectors add.
    #[test]
    fn carries_only_move_into_eta(a in coeffs(), b in coeffs()) {
        let (r, s) = (combo(&a), combo(&b));
        let (dr, ds, dq) = (decomposition(&r), decomposition(&s), decomposition(&(&r + &s)));
        prop_assert!(dq.eta >= &dr.eta + &ds.eta);
        if dq.eta == &dr.eta + &ds.eta {
            let mut sum: BTreeMap<usize, BigUint> = dr.zeta.clone();
            for (i, z) in &ds.zeta {
                *sum.entry(*i).or_insert_with(BigUint::zero) += z;
            }
            prop_assert_eq!(&dq.zeta, &sum);
            if !s.is_zero() && ds.eta.is_zero() {
                prop_assert!(dq.zeta_sum() > dr.zeta_sum());
            }
        }
    }

    /// Certificates evaluate to the element and obstructions recheck.
    #[test]
    fn membership_is_sound(n in 0u64..400, d in 1u64..400, family in 0usize..6) {
        let desc = [
            MonoidDescriptor::prime_reciprocal(),
            MonoidDescriptor::grams(2).unwrap(),
            MonoidDescriptor::grams(3).unwrap(),
            MonoidDescriptor::mixed(2).unwrap(),
            MonoidDescriptor::power_reciprocal(3).unwrap(),
            MonoidDescriptor::custom(vec![rat(2, 3), rat(3, 5), rat(1, 7)]).unwrap(),
        ][family].clone();
        let q = rat(n, d);
        match member(&desc, &q, &Bounds::default()).unwrap() {
            MembershipVerdict::Member(c) => prop_assert_eq!(c.evaluate(&desc).unwrap(), q),
            MembershipVerdict::NotMember(ob) => prop_assert!(ob.verify(&desc, &q.to_signed()), "{}", ob),
            MembershipVerdict::Unknown(_) => {}
        }
    }

    /// `r | r + s` for members `r, s`.
    #[test]
    fn sums_are_divisible(a in coeffs(), b in coeffs()) {
        let pr = MonoidDescriptor::prime_reciprocal();
        let (r, s) = (combo(&a), combo(&b));
        let verdict = divides(&pr, &r, &(&r + &s), &Bounds::default()).unwrap();
        prop_assert!(matches!(verdict, MembershipVerdict::Member(_)));
    }

    #[test]
    fn descriptors_round_trip(family in 0usize..7, p in 1u64..6) {
        let desc = match family {
            0 => MonoidDescriptor::prime_reciprocal(),
            1 => MonoidDescriptor::grams(p + 1).unwrap(),
            2 => MonoidDescriptor::gap(p as usize).unwrap(),
            3 => MonoidDescriptor::geometric(rat(p, p + 1), p % 2 == 0).unwrap(),
            4 => MonoidDescriptor::power_reciprocal(p + 1).unwrap(),
            5 => MonoidDescriptor::mixed(p as usize).unwrap(),
            _ => MonoidDescriptor::custom(vec![rat(1, 2 * p + 1), rat(2, 2 * p + 3)]).unwrap(),
        };
        let text = descriptor_to_json(&desc).unwrap();
        prop_assert_eq!(parse_descriptor(&text).unwrap(), desc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Either `1 ∤ q` and `q` has exactly one factorization, or the number
    /// of lengths keeps growing with the window.
    #[test]
    fn reciprocal_length_dichotomy(c in prop::collection::vec(0u64..4, 6)) {
        let pr = MonoidDescriptor::prime_reciprocal();
        let q = combo(&c);
        prop_assume!(!q.is_zero());
        let d = decomposition(&q);
        if d.eta.is_zero() {
            let z = enumerate_factorizations(&pr, &q, 20, 50).unwrap();
            prop_assert_eq!(z.items.len(), 1);
            prop_assert_eq!(z.complete, Completeness::Complete);
        } else {
            let sizes: Vec<usize> = [10u64, 20, 40]
                .iter()
                .map(|&b| length_set(&pr, &q, b).unwrap().lengths.len())
                .collect();
            prop_assert!(sizes[0] < sizes[1] && sizes[1] < sizes[2], "{:?}", sizes);
        }
    }
}

#[test]
fn fixed_length_sets_are_complete_and_finite() {
    let families = [
        (MonoidDescriptor::prime_reciprocal(), rat(1, 1)),
        (MonoidDescriptor::prime_reciprocal(), rat(7, 6)),
        (MonoidDescriptor::grams(2).unwrap(), rat(1, 2)),
        (MonoidDescriptor::mixed(3).unwrap(), rat(1, 2)),
    ];
    for (desc, q) in &families {
        for ell in 1..=30 {
            let z = factorizations_of_length(desc, q, ell).unwrap();
            assert_eq!(z.complete, Completeness::Complete, "{desc} {q} {ell}");
            for f in &z.items {
                assert_eq!(f.length(), BigUint::from(ell));
                assert_eq!(&f.evaluate(desc).unwrap(), q);
            }
        }
    }
}

#[test]
fn grams_membership_matches_bounded_search_on_controlled_denominators() {
    // Denominators built from the first six controlled primes of grams(2) and 2.
    let g = MonoidDescriptor::grams(2).unwrap();
    let b = Bounds::default();
    let dens = [2u64, 4, 3, 5, 7, 11, 13, 17, 6, 12, 15, 20, 21, 35, 66, 78, 170];
    for &d in &dens {
        for n in 1..=d {
            let q = rat(n, d);
            let verdict = member(&g, &q, &b).unwrap();
            let brute = brute_grams(&q);
            match verdict {
                MembershipVerdict::Member(c) => {
                    assert!(brute, "{q}");
                    assert_eq!(c.evaluate(&g).unwrap(), q);
                }
                MembershipVerdict::NotMember(_) => assert!(!brute, "{q}"),
                MembershipVerdict::Unknown(_) => panic!("{q} undecided"),
            }
        }
    }
}

/// Knapsack over 1/(2ⁿpₙ) for n ≤ 6 with unbounded coefficients, built once
/// over `[0, 1]` scaled by `SCALE`.
fn brute_grams(q: &ExactRational) -> bool {
    static REACH: std::sync::OnceLock<Vec<bool>> = std::sync::OnceLock::new();
    const DENS: [u64; 6] = [6, 20, 56, 176, 416, 1088];
    const SCALE: u64 = 64 * 3 * 5 * 7 * 11 * 13 * 17;
    let reach = REACH.get_or_init(|| {
        let mut reach = vec![false; SCALE as usize + 1];
        reach[0] = true;
        for d in DENS {
            let w = (SCALE / d) as usize;
            for x in w..reach.len() {
                if reach[x - w] {
                    reach[x] = true;
                }
            }
        }
        reach
    });
    let (num, den) = q.num_den();
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    assert!(num <= den, "oracle covers [0, 1]");
    SCALE % den == 0 && reach[(num * (SCALE / den)) as usize]
}
