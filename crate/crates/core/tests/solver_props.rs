use std::collections::HashSet;

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ktx_core::covers::{cover_mo, Transmitter};
use ktx_core::generators::gen_staircase;
use ktx_core::solver::{
    build_witnesses, certify_lower_bound, fuzz, grid_points, greedy_cover, min_cover, point_candidates, verify_cover,
    CoverMatrix, SolveStatus, DEFAULT_NODE_LIMIT,
};
use ktx_core::visibility::VisibilitySpec;
use ktx_core::{Location, Polygon};

/// Smallest cover by trying every subset in order of size.
fn brute_force(rows: &[Vec<bool>]) -> Option<usize> {
    let (nc, nw) = (rows.len(), rows.first().map_or(0, Vec::len));
    (0..=nc).find(|&k| {
        (0u32..1 << nc).filter(|s| s.count_ones() as usize == k).any(|s| {
            (0..nw).all(|w| (0..nc).any(|c| s >> c & 1 == 1 && rows[c][w]))
        })
    })
    .filter(|_| (0..nw).all(|w| (0..nc).any(|c| rows[c][w])))
}

fn matrix() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..9, 1usize..10).prop_flat_map(|(nc, nw)| prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.3), nw), nc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn min_cover_matches_brute_force(rows in matrix()) {
        let sol = min_cover(&CoverMatrix::from_rows(rows.clone()), DEFAULT_NODE_LIMIT);
        match brute_force(&rows) {
            Some(k) => {
                prop_assert_eq!(sol.status, SolveStatus::Ok);
                prop_assert_eq!(sol.size(), k);
                let nw = rows[0].len();
                prop_assert!((0..nw).all(|w| sol.chosen.iter().any(|&c| rows[c][w])));
            }
            None => {
                prop_assert_eq!(sol.status, SolveStatus::Infeasible);
                prop_assert!(!sol.unseen.is_empty());
            }
        }
    }

    #[test]
    fn min_cover_is_permutation_invariant(rows in matrix(), rot_c in 0usize..8, rot_w in 0usize..9) {
        let a = min_cover(&CoverMatrix::from_rows(rows.clone()), DEFAULT_NODE_LIMIT);
        let mut p = rows.clone();
        let rc = rot_c % p.len();
        p.rotate_left(rc);
        for r in &mut p {
            let rw = rot_w % r.len();
            r.rotate_left(rw);
        }
        let b = min_cover(&CoverMatrix::from_rows(p), DEFAULT_NODE_LIMIT);
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.size(), b.size());
    }

    #[test]
    fn greedy_sandwich(rows in matrix()) {
        let m = CoverMatrix::from_rows(rows);
        let sol = min_cover(&m, DEFAULT_NODE_LIMIT);
        if let Some(g) = greedy_cover(&m) {
            let nw = m.n_witnesses() as f64;
            let harmonic: f64 = (1..=m.n_witnesses()).map(|i| 1.0 / i as f64).sum::<f64>().max(1.0);
            prop_assert!(sol.size() <= g.len());
            prop_assert!(sol.size() as f64 >= g.len() as f64 / harmonic - 1e-9 || nw == 0.0);
        }
    }
}

#[test]
fn identity_needs_every_row() {
    let rows = (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect();
    assert_eq!(min_cover(&CoverMatrix::from_rows(rows), DEFAULT_NODE_LIMIT).size(), 3);
}

#[test]
fn convex_lower_bound_is_one() {
    let poly = Polygon::from_ints(&[(0, 0), (6, 0), (8, 5), (2, 7)]).unwrap();
    let w = grid_points(&poly, 5);
    let lb = certify_lower_bound(&poly, &w, &point_candidates(&poly, 5), VisibilitySpec::two(), DEFAULT_NODE_LIMIT);
    assert_eq!(lb.lb, 1);
}

#[test]
fn witnesses_lie_in_closed_polygon() {
    let poly = gen_staircase(5).unwrap().polygon;
    let w = build_witnesses(&poly, 20, &[]);
    assert!(w.points.iter().all(|(p, _)| poly.point_location(p) != Location::Exterior));
}

#[test]
fn empty_cover_leaves_everything_uncovered() {
    let poly = fuzz::random_monotone(9, &mut ChaCha8Rng::seed_from_u64(3));
    let w = build_witnesses(&poly, 8, &[]);
    assert_eq!(verify_cover(&poly, &[], &w, VisibilitySpec::two()).uncovered.len(), w.len());
}

#[test]
fn staircase_cover_is_clean_at_every_resolution() {
    let poly = gen_staircase(10).unwrap().polygon;
    let cover = cover_mo(&poly).unwrap();
    for res in [5, 10, 25, 50] {
        let w = build_witnesses(&poly, res, &[]);
        assert!(verify_cover(&poly, &cover.transmitters, &w, VisibilitySpec::two()).is_clean(), "resolution {res}");
    }
}

#[test]
fn uncovered_set_grows_with_resolution() {
    // Cell centres of the 5-grid are also cell centres of the 15-grid.
    let poly = fuzz::random_monotone(30, &mut ChaCha8Rng::seed_from_u64(11));
    let one = [Transmitter::Point(poly.vertex(0).clone())];
    let a = verify_cover(&poly, &one, &build_witnesses(&poly, 5, &[]), VisibilitySpec::two());
    let b = verify_cover(&poly, &one, &build_witnesses(&poly, 15, &[]), VisibilitySpec::two());
    assert!(!a.uncovered.is_empty());
    let fine: HashSet<_> = b.uncovered.iter().map(|(p, _)| p.clone()).collect();
    assert!(a.uncovered.iter().all(|(p, _)| fine.contains(p)));
    assert!(b.uncovered.len() >= a.uncovered.len());
}
