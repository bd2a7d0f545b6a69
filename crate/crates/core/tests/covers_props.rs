use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ktx_core::covers::{ceil_bound, cover_5gon, cover_mo, cover_monotone, split_monotone, CoverError, Transmitter};
use ktx_core::solver::{build_witnesses, fuzz, verify_cover};
use ktx_core::visibility::VisibilitySpec;
use ktx_core::Polygon;

fn provenance_ok(poly: &Polygon, ts: &[Transmitter]) -> bool {
    ts.iter().all(|t| matches!(t, Transmitter::Edge(e) if e.0 < poly.n()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn monotone_cover_meets_bound_and_covers(seed in any::<u64>(), n in 3usize..80) {
        let poly = fuzz::random_monotone(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = cover_monotone(&poly).unwrap();
        prop_assert!(c.size() <= ceil_bound(n, 8));
        prop_assert!(provenance_ok(&poly, &c.transmitters));
        let w = build_witnesses(&poly, 12, &[]);
        prop_assert!(verify_cover(&poly, &c.transmitters, &w, VisibilitySpec::two()).is_clean());
    }

    #[test]
    fn mo_cover_meets_bound_and_covers(seed in any::<u64>(), half in 2usize..40) {
        let poly = fuzz::random_mo(2 * half, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = cover_mo(&poly).unwrap();
        prop_assert!(c.size() <= ceil_bound(poly.n(), 10));
        prop_assert!(provenance_ok(&poly, &c.transmitters));
        let w = build_witnesses(&poly, 12, &[]);
        prop_assert!(verify_cover(&poly, &c.transmitters, &w, VisibilitySpec::two()).is_clean());
    }

    #[test]
    fn split_conserves_counts_and_area(seed in any::<u64>(), n in 5usize..50, m_frac in 0.0f64..1.0) {
        let poly = fuzz::random_monotone(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = 3 + ((n - 4) as f64 * m_frac) as usize;
        match split_monotone(&poly, m) {
            Ok(s) => {
                prop_assert_eq!(s.left.n(), m);
                prop_assert_eq!(s.right.n(), n - m + 2);
                prop_assert_eq!(s.covered_area2(), poly.area2());
                prop_assert!(s.pivot + 1 == m || s.pivot == m);
                prop_assert!(s.left.is_x_monotone() && s.right.is_x_monotone());
            }
            Err(CoverError::ParallelCut) => {}
            Err(e) => prop_assert!(false, "m={} n={}: {}", m, n, e),
        }
    }

    #[test]
    fn pentagon_point_covers(seed in any::<u64>()) {
        let poly = fuzz::random_monotone(5, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = cover_5gon(&poly).unwrap();
        let w = build_witnesses(&poly, 15, &[]);
        prop_assert!(verify_cover(&poly, &[t], &w, VisibilitySpec::two()).is_clean());
    }
}

#[test]
fn non_monotone_input_is_rejected() {
    let u = Polygon::from_ints(&[(0, 0), (10, 0), (10, 10), (2, 10), (2, 6), (8, 6), (8, 4), (0, 4)]).unwrap();
    assert!(matches!(cover_monotone(&u), Err(CoverError::NotMonotone(_))));
}
