use adjunction_core::geometry::{self, sample, WarpConvention, Weights};
use adjunction_core::lattice::{make_example_collection, ExampleKind, ExampleSpec};
use adjunction_core::simplicial::snf::{smith_normal_form, IntMatrix};
use adjunction_core::wall_crossing::{certify, fundamental_cycle};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn psi_round_trips(seed in any::<u64>(), n in 0usize..=3, radius in 0.1f64..50.0) {
        let mut rng = sample::rng(seed);
        let p = sample::domain_point(n, radius, &mut rng);
        let x = geometry::psi_forward(n, radius, &p).unwrap();
        let q = geometry::psi_inverse(n, radius, &x).unwrap();
        let (a, b) = (geometry::canonical_form(n, &p).unwrap(), geometry::canonical_form(n, &q).unwrap());
        let err = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * radius.max(1.0), "error {err}");
    }

    #[test]
    fn psi_inverse_lands_back(seed in any::<u64>(), n in 0usize..=4) {
        let mut rng = sample::rng(seed);
        let y = sample::ext_point(n, 1.0, &mut rng);
        let x = geometry::psi_forward(n, 1.0, &geometry::psi_inverse(n, 1.0, &y).unwrap()).unwrap();
        for (u, v) in x.iter().zip(&y) {
            prop_assert!((u - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn lambda_respects_the_simin_bound(seed in any::<u64>(), n in 0usize..=4, value in 0.05f64..=1.0) {
        let mut rng = sample::rng(seed);
        let s = sample::chain(n, &mut rng);
        let p = sample::bary_point(&s, &mut rng);
        for w in [Weights::Dyadic, Weights::Constant { value }] {
            prop_assert!(geometry::lambda_of(n, &p, &w).is_ok());
        }
    }

    #[test]
    fn total_length_exceeds_inner(lambda in 1e-3f64..10.0, r in 0.0f64..100.0) {
        for conv in [WarpConvention::Claimed, WarpConvention::Printed] {
            let total = geometry::total_length(lambda, r, conv).unwrap();
            prop_assert!(total > geometry::inner_length(lambda, r, conv).unwrap());
        }
    }

    #[test]
    fn decomposition_lands_in_its_piece(seed in any::<u64>(), n in 0usize..=4) {
        let mut rng = sample::rng(seed);
        let x = sample::ext_point(n, 1.0, &mut rng);
        let pinned = seed as usize % (n + 1);
        let d = geometry::decompose_cube_point(n, pinned, 1.0, &x).unwrap();
        prop_assert!(geometry::in_q_tau(n, pinned, &d.tau, 1.0, &x, 1e-12).unwrap());
        prop_assert!(geometry::in_piece(n, pinned, &d.tau, &d.chain, 1.0, &x, 1e-12).unwrap());
    }

    #[test]
    fn snf_certificates_audit(rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 1..8), 1..8)) {
        let width = rows[0].len();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.resize(width, 0); r }).collect();
        let a = IntMatrix::from_rows(&rows);
        prop_assert!(smith_normal_form(&a).audit(&a));
    }

    #[test]
    fn permuting_indices_keeps_certification(k in 1usize..=3, d in 2u64..=4, rot in 0usize..3) {
        let (cat, coll) = make_example_collection(&ExampleSpec::uniform(ExampleKind::Ex46, k, d, d * d)).unwrap();
        let perm: Vec<usize> = (0..k).map(|i| (i + rot) % k + 1).collect();
        let moved = coll.permuted(&perm).unwrap();
        prop_assert!(certify(&cat, &moved).unwrap().certified);
        prop_assert!(fundamental_cycle(&moved).unwrap().boundary().is_zero());
    }
}
