//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's predicates; only the number type and polygon container are shared.
#![allow(dead_code)]

use rand::Rng;

use ktx_core::generators::{gen_edge_lb_ring, gen_monotone_comb, gen_point_lb_ring, gen_staircase, GadgetRingParams};
use ktx_core::solver::fuzz;
use ktx_core::{Point, Polygon, Scalar};

fn sub(a: &Point, b: &Point) -> (Scalar, Scalar) {
    (&a.x - &b.x, &a.y - &b.y)
}

fn cross(u: &(Scalar, Scalar), v: &(Scalar, Scalar)) -> Scalar {
    &(&u.0 * &v.1) - &(&u.1 * &v.0)
}

fn dot(u: &(Scalar, Scalar), v: &(Scalar, Scalar)) -> Scalar {
    &(&u.0 * &v.0) + &(&u.1 * &v.1)
}

fn on_edge(p: &Point, a: &Point, b: &Point) -> bool {
    let (ab, ap) = (sub(b, a), sub(p, a));
    if !cross(&ab, &ap).is_zero() {
        return false;
    }
    let t = dot(&ab, &ap);
    t.signum() >= 0 && t <= dot(&ab, &ab)
}

/// Closed-region membership by winding number, with an explicit boundary test.
pub fn winding_inside(p: &Point, poly: &Polygon) -> Option<bool> {
    let vs = poly.vertices();
    let n = vs.len();
    let mut wn = 0i64;
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        if on_edge(p, a, b) {
            return None;
        }
        let side = cross(&sub(b, a), &sub(p, a)).signum();
        if a.y <= p.y {
            if b.y > p.y && side > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && side < 0 {
            wn -= 1;
        }
    }
    Some(wn != 0)
}

/// `true` for interior or boundary points.
pub fn closed_inside(p: &Point, poly: &Polygon) -> bool {
    winding_inside(p, poly).unwrap_or(true)
}

fn lerp(a: &Point, b: &Point, t: &Scalar) -> Point {
    Point::new(&a.x + &(t * &(&b.x - &a.x)), &a.y + &(t * &(&b.y - &a.y)))
}

/// Components of `ab ∩ P`: cut `ab` at every parameter where it meets an
/// edge, classify each cut point and each open piece, count maximal runs.
pub fn oracle_components(a: &Point, b: &Point, poly: &Polygon) -> usize {
    let vs = poly.vertices();
    let n = vs.len();
    let d = sub(b, a);
    let dd = dot(&d, &d);
    let zero = Scalar::from_int(0);
    let one = Scalar::from_int(1);
    let mut ts = vec![zero.clone(), one.clone()];
    for i in 0..n {
        let (c, e) = (&vs[i], &vs[(i + 1) % n]);
        let f = sub(e, c);
        let ca = sub(c, a);
        let den = cross(&d, &f);
        if den.is_zero() {
            if cross(&ca, &d).is_zero() {
                for q in [c, e] {
                    ts.push(&dot(&sub(q, a), &d) / &dd);
                }
            }
            continue;
        }
        let t = &cross(&ca, &f) / &den;
        let u = &cross(&ca, &d) / &den;
        if u.signum() >= 0 && u <= one {
            ts.push(t);
        }
    }
    ts.retain(|t| t.signum() >= 0 && *t <= one);
    ts.sort();
    ts.dedup();
    let mut flags = Vec::with_capacity(2 * ts.len());
    for (i, t) in ts.iter().enumerate() {
        flags.push(closed_inside(&lerp(a, b, t), poly));
        if let Some(t1) = ts.get(i + 1) {
            let mid = &(t + t1) / &Scalar::from_int(2);
            flags.push(closed_inside(&lerp(a, b, &mid), poly));
        }
    }
    let mut runs = 0;
    let mut prev = false;
    for f in flags {
        if f && !prev {
            runs += 1;
        }
        prev = f;
    }
    runs
}

/// A rational in `[lo, hi]` with denominator `den`.
pub fn rand_scalar<R: Rng>(rng: &mut R, lo: f64, hi: f64, den: i64) -> Scalar {
    let a = (lo * den as f64).floor() as i64;
    let b = (hi * den as f64).ceil() as i64;
    Scalar::ratio(rng.gen_range(a..=b), den)
}

pub fn rand_point_near<R: Rng>(rng: &mut R, poly: &Polygon, den: i64) -> Point {
    let (lo, hi) = poly.bbox();
    let (x0, x1, y0, y1) = (lo.x.to_f64(), hi.x.to_f64(), lo.y.to_f64(), hi.y.to_f64());
    let (mx, my) = (0.1 * (x1 - x0), 0.1 * (y1 - y0));
    Point::new(rand_scalar(rng, x0 - mx, x1 + mx, den), rand_scalar(rng, y0 - my, y1 + my, den))
}

/// A segment biased toward degenerate incidences: vertex to vertex, vertex to
/// random point, along an edge, or random to random.
pub fn rand_segment<R: Rng>(rng: &mut R, poly: &Polygon) -> (Point, Point) {
    let n = poly.n();
    loop {
        let v = |rng: &mut R| poly.vertex(rng.gen_range(0..n)).clone();
        let (a, b) = match rng.gen_range(0..4) {
            0 => (v(rng), v(rng)),
            1 => (v(rng), rand_point_near(rng, poly, 8)),
            2 => {
                let i = rng.gen_range(0..n);
                let (c, d) = (poly.vertex(i), poly.vertex((i + 1) % n));
                let s = rand_scalar(rng, -0.5, 0.5, 4);
                let t = rand_scalar(rng, 0.5, 1.5, 4);
                (lerp(c, d, &s), lerp(c, d, &t))
            }
            _ => (rand_point_near(rng, poly, 8), rand_point_near(rng, poly, 8)),
        };
        if a != b {
            return (a, b);
        }
    }
}

/// Twenty varied polygons: random monotone and monotone orthogonal ones
/// plus generated lower-bound families (non-monotone rings included).
pub fn oracle_polygons<R: Rng>(rng: &mut R) -> Vec<Polygon> {
    let mut out = Vec::new();
    for i in 0..8 {
        out.push(fuzz::random_monotone(5 + 3 * i, rng));
    }
    for i in 0..6 {
        out.push(fuzz::random_mo(6 + 4 * i, rng));
    }
    out.push(gen_point_lb_ring(&GadgetRingParams::new(3)).unwrap().polygon);
    out.push(gen_point_lb_ring(&GadgetRingParams::new(4)).unwrap().polygon);
    out.push(gen_edge_lb_ring(&GadgetRingParams::new(3)).unwrap().polygon);
    out.push(gen_monotone_comb(3).unwrap().polygon);
    out.push(gen_staircase(6).unwrap().polygon);
    out.push(
        Polygon::from_ints(&[(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (4, 4), (4, 10), (0, 10)]).unwrap(),
    );
    out
}

/// Leftmost and rightmost edges of an orthogonal polygon (its extreme vertical edges).
pub fn extreme_vertical_edges(poly: &Polygon) -> (usize, usize) {
    let verticals: Vec<usize> = poly.edges().map(|e| e.0).filter(|&i| {
        let (a, b) = poly.edge(ktx_core::EdgeRef(i));
        a.x == b.x
    }).collect();
    let key = |i: &usize| poly.vertex(*i).x.clone();
    let lo = *verticals.iter().min_by_key(|i| key(i)).expect("orthogonal polygon has vertical edges");
    let hi = *verticals.iter().max_by_key(|i| key(i)).expect("orthogonal polygon has vertical edges");
    (lo, hi)
}
