//! Seeded random polygons for property tests and the acceptance suite.

use rand::seq::index::sample;
use rand::Rng;

use crate::geom::{Point, Polygon};

const MAX_TRIES: usize = 10_000;

/// A random x-monotone polygon with `n >= 3` vertices and pairwise distinct
/// x-coordinates. Extreme vertices sit near `y = 0`, lower-chain vertices
/// below and upper-chain vertices above; invalid draws are resampled.
pub fn random_monotone<R: Rng>(n: usize, rng: &mut R) -> Polygon {
    assert!(n >= 3, "a polygon needs at least three vertices");
    let span = (n as i64) * 40;
    let height = 1000i64;
    for _ in 0..MAX_TRIES {
        let mut xs: Vec<i64> = sample(rng, span as usize, n).into_iter().map(|x| x as i64).collect();
        xs.sort_unstable();
        let ends = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let mut lower = vec![Point::int(xs[0], ends.0)];
        let mut upper = Vec::new();
        for &x in &xs[1..n - 1] {
            if rng.gen_bool(0.5) {
                lower.push(Point::int(x, -rng.gen_range(1..height)));
            } else {
                upper.push(Point::int(x, rng.gen_range(1..height)));
            }
        }
        lower.push(Point::int(xs[n - 1], ends.1));
        upper.reverse();
        lower.extend(upper);
        if let Ok(p) = Polygon::new(lower) {
            if p.n() == n && p.is_x_monotone() {
                return p;
            }
        }
    }
    panic!("could not draw a monotone {n}-gon");
}

/// A random monotone orthogonal polygon with `n` vertices (`n` even, at
/// least 4) and distinct x-coordinates for distinct vertical edges.
pub fn random_mo<R: Rng>(n: usize, rng: &mut R) -> Polygon {
    assert!(n >= 4 && n.is_multiple_of(2), "orthogonal polygons have an even number (>= 4) of vertices");
    let k = n / 2;
    let span = (k as i64) * 20;
    let height = 100i64;
    for _ in 0..MAX_TRIES {
        let mut xs: Vec<i64> = sample(rng, span as usize, k).into_iter().map(|x| x as i64).collect();
        xs.sort_unstable();
        let on_lower: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
        // Levels of the horizontal runs; consecutive runs of a chain differ.
        let mut level = |prev: Option<i64>, lo: i64, hi: i64| loop {
            let y = rng.gen_range(lo..hi);
            if Some(y) != prev {
                break y;
            }
        };
        let mut low_levels = vec![level(None, 0, height * 6 / 10)];
        let mut up_levels = vec![level(None, height * 4 / 10, height)];
        for &lower in &on_lower[1..k - 1] {
            if lower {
                let prev = *low_levels.last().unwrap();
                low_levels.push(level(Some(prev), 0, height * 6 / 10));
            } else {
                let prev = *up_levels.last().unwrap();
                up_levels.push(level(Some(prev), height * 4 / 10, height));
            }
        }
        let mut lower = Vec::new();
        let mut li = 0;
        lower.push(Point::int(xs[0], up_levels[0]));
        lower.push(Point::int(xs[0], low_levels[0]));
        for i in 1..k - 1 {
            if on_lower[i] {
                lower.push(Point::int(xs[i], low_levels[li]));
                li += 1;
                lower.push(Point::int(xs[i], low_levels[li]));
            }
        }
        lower.push(Point::int(xs[k - 1], low_levels[li]));
        let mut upper = Vec::new();
        let mut ui = 0;
        upper.push(Point::int(xs[0], up_levels[0]));
        for i in 1..k - 1 {
            if !on_lower[i] {
                upper.push(Point::int(xs[i], up_levels[ui]));
                ui += 1;
                upper.push(Point::int(xs[i], up_levels[ui]));
            }
        }
        upper.push(Point::int(xs[k - 1], up_levels[ui]));
        // Walk: up the left wall is implicit; lower chain left to right, then upper right to left.
        let mut vs: Vec<Point> = lower[1..].to_vec();
        upper.reverse();
        vs.extend(upper);
        if let Ok(p) = Polygon::new(vs) {
            if p.n() == n && p.is_x_monotone() && p.is_orthogonal() {
                return p;
            }
        }
    }
    panic!("could not draw a monotone orthogonal {n}-gon");
}
