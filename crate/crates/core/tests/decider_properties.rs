use labclass::classify::{
    decide_diffeo, decide_diffeo_via_rho, decide_homotopy, decide_homotopy_with, diffeo_holds,
    homotopy_holds, DeciderConfig, HomotopyCert, ThirdCongruence,
};
use labclass::rho::rho_match_oriented;
use labclass::{BundleSpec, ModRing, Sign};
use num_integer::Integer;
use proptest::prelude::*;

fn bundle(r: i64, max: i64) -> impl Strategy<Value = BundleSpec> {
    (-max..=max, -max..=max)
        .prop_filter("coprime", |(a0, b0)| a0.gcd(b0) == 1)
        .prop_map(move |(a0, b0)| BundleSpec::new(r * a0, r * b0).unwrap())
}

fn pair() -> impl Strategy<Value = (BundleSpec, BundleSpec)> {
    prop_oneof![Just(5i64), Just(7), Just(11), Just(13)]
        .prop_flat_map(|r| (bundle(r, 7), bundle(r, 7)))
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn certificates_satisfy_their_checkers((l, l2) in pair(), flip in sign()) {
        if let Some(c) = decide_homotopy(&l, &l2, flip).unwrap() {
            prop_assert!(homotopy_holds(&l, &l2, flip, &c, ThirdCongruence::Symmetric));
        }
        if let Some(c) = decide_diffeo(&l, &l2, flip).unwrap() {
            prop_assert!(diffeo_holds(&l, &l2, flip, &c, ThirdCongruence::Symmetric));
        }
    }

    #[test]
    fn verdicts_are_symmetric((l, l2) in pair(), flip in sign()) {
        prop_assert_eq!(
            decide_homotopy(&l, &l2, flip).unwrap().is_some(),
            decide_homotopy(&l2, &l, flip).unwrap().is_some()
        );
        prop_assert_eq!(
            decide_diffeo(&l, &l2, flip).unwrap().is_some(),
            decide_diffeo(&l2, &l, flip).unwrap().is_some()
        );
    }

    #[test]
    fn diffeo_implies_homotopy_and_rho((l, l2) in pair(), flip in sign()) {
        if let Some(d) = decide_diffeo(&l, &l2, flip).unwrap() {
            let ring = l.ring();
            let h = HomotopyCert {
                s: ring.unit(1).unwrap(),
                s2: ring.unit(d.delta.value() as i128).unwrap(),
                epsilon: d.epsilon,
                epsilon2: d.epsilon2,
                k: d.k,
                k2: d.k2,
            };
            prop_assert!(homotopy_holds(&l, &l2, flip, &h, ThirdCongruence::Symmetric));
            let u = ring.unit(d.delta.value() as i128).unwrap();
            prop_assert!(rho_match_oriented(&l, &l2, u, flip).unwrap());
        }
    }

    #[test]
    fn rho_route_agrees_when_ab_nonzero((l, l2) in pair(), flip in sign()) {
        prop_assume!(l.ab() != 0 && l2.ab() != 0);
        prop_assert_eq!(
            decide_diffeo(&l, &l2, flip).unwrap().is_some(),
            decide_diffeo_via_rho(&l, &l2, flip).unwrap().is_some()
        );
    }

    #[test]
    fn verdicts_ignore_bezout_choice((l, l2) in pair(), flip in sign(), t in -2i64..=2, t2 in -2i64..=2) {
        let (m, m2) = (l.with_bezout_shift(t), l2.with_bezout_shift(t2));
        prop_assert_eq!(
            decide_homotopy(&l, &l2, flip).unwrap().is_some(),
            decide_homotopy(&m, &m2, flip).unwrap().is_some()
        );
        prop_assert_eq!(
            decide_diffeo(&l, &l2, flip).unwrap().is_some(),
            decide_diffeo(&m, &m2, flip).unwrap().is_some()
        );
    }

    #[test]
    fn orientation_reversal_swaps_flip((l, l2) in pair(), flip in sign()) {
        prop_assert_eq!(
            decide_homotopy(&l, &l2, flip).unwrap().is_some(),
            decide_homotopy(&l, &l2.reversed(), -flip).unwrap().is_some()
        );
        prop_assert_eq!(
            decide_diffeo(&l, &l2, flip).unwrap().is_some(),
            decide_diffeo(&l, &l2.reversed(), -flip).unwrap().is_some()
        );
    }
}

fn sample(r: i64) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    for a0 in -5i64..=5 {
        for b0 in -5i64..=5 {
            if a0.gcd(&b0) == 1 {
                out.push(BundleSpec::new(r * a0, r * b0).unwrap());
            }
        }
    }
    out
}

fn homotopic(l: &BundleSpec, l2: &BundleSpec, third: ThirdCongruence) -> bool {
    let config = DeciderConfig {
        third,
        ..DeciderConfig::default()
    };
    decide_homotopy_with(l, l2, Sign::Plus, &config)
        .unwrap()
        .is_some()
}

/// Putting the left-hand sign on `n'` in the third congruence
/// breaks symmetry of the relation; the symmetric reading does not.
#[test]
fn literal_third_congruence_is_not_symmetric() {
    let mut literal_violations = 0;
    for r in [5, 7] {
        let bundles = sample(r);
        for l in &bundles {
            for l2 in &bundles {
                let lit = homotopic(l, l2, ThirdCongruence::Literal);
                let lit_rev = homotopic(l2, l, ThirdCongruence::Literal);
                literal_violations += (lit != lit_rev) as usize;
                assert_eq!(
                    homotopic(l, l2, ThirdCongruence::Symmetric),
                    homotopic(l2, l, ThirdCongruence::Symmetric)
                );
            }
        }
    }
    assert!(literal_violations > 0);
}

#[test]
fn units_with_given_cube() {
    let ring = ModRing::new(7).unwrap();
    let roots: Vec<u64> = ring
        .find_units_with_power(3, 1)
        .iter()
        .map(|u| u.value())
        .collect();
    assert_eq!(roots, vec![1, 2, 4]);
}
