//! Exact orientation and segment predicates with a floating-point filter.

use std::cmp::Ordering;

use super::point::Point;
use super::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn from_sign(s: i32) -> Self {
        match s.cmp(&0) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }

    pub fn reversed(self) -> Self {
        Orientation::from_sign(-self.sign())
    }
}

/// Exact `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Scalar {
    let ax = &q.x - &p.x;
    let ay = &q.y - &p.y;
    let bx = &r.x - &p.x;
    let by = &r.y - &p.y;
    ax * by - ay * bx
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (px, py) = p.to_f64();
    let (qx, qy) = q.to_f64();
    let (rx, ry) = r.to_f64();
    let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    // Inputs carry one rounding each; this bounds the total error of the
    // double evaluation by magnitude of the coordinates involved.
    let sx = px.abs() + qx.abs() + rx.abs();
    let sy = py.abs() + qy.abs() + ry.abs();
    let bound = 16.0 * f64::EPSILON * sx * sy;
    if det.is_finite() && bound.is_finite() {
        if det > bound {
            return Orientation::CounterClockwise;
        }
        if det < -bound {
            return Orientation::Clockwise;
        }
    }
    Orientation::from_sign(cross(p, q, r).signum())
}

/// Exact dot product `(q - p) . (r - p)`.
pub fn dot(p: &Point, q: &Point, r: &Point) -> Scalar {
    (&q.x - &p.x) * (&r.x - &p.x) + (&q.y - &p.y) * (&r.y - &p.y)
}

/// `p` lies in the closed axis-aligned box spanned by `a` and `b`.
pub fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (lo_x, hi_x) = if a.cmp_x(b) == Ordering::Greater { (b, a) } else { (a, b) };
    let (lo_y, hi_y) = if a.cmp_y(b) == Ordering::Greater { (b, a) } else { (a, b) };
    p.cmp_x(lo_x) != Ordering::Less
        && p.cmp_x(hi_x) != Ordering::Greater
        && p.cmp_y(lo_y) != Ordering::Less
        && p.cmp_y(hi_y) != Ordering::Greater
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orientation(a, b, p) == Orientation::Collinear && in_box(a, b, p)
}

/// `p` lies strictly inside the segment `ab` (not at an endpoint).
pub fn strictly_on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    on_segment(a, b, p) && p != a && p != b
}

#[inline]
fn boxes_disjoint(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    // Slightly padded double test; only used to skip obviously separate pairs.
    let pad = |v: f64| v.abs() * 1e-12 + 1e-300;
    let (a0, a1) = (a.fx().min(b.fx()), a.fx().max(b.fx()));
    let (c0, c1) = (c.fx().min(d.fx()), c.fx().max(d.fx()));
    if a1 + pad(a1) < c0 - pad(c0) || c1 + pad(c1) < a0 - pad(a0) {
        return true;
    }
    let (a0, a1) = (a.fy().min(b.fy()), a.fy().max(b.fy()));
    let (c0, c1) = (c.fy().min(d.fy()), c.fy().max(d.fy()));
    a1 + pad(a1) < c0 - pad(c0) || c1 + pad(c1) < a0 - pad(a0)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if boxes_disjoint(a, b, c, d) {
        return false;
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && in_box(a, b, c))
        || (o2 == Orientation::Collinear && in_box(a, b, d))
        || (o3 == Orientation::Collinear && in_box(c, d, a))
        || (o4 == Orientation::Collinear && in_box(c, d, b))
        || (o1 != o2 && o3 != o4 && o1.sign() * o2.sign() < 0 && o3.sign() * o4.sign() < 0)
}

/// How segment `ab` meets segment `cd`, expressed as parameters along `ab`.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentHit {
    None,
    /// A single common point at parameter `t` of `ab`.
    Point(Scalar),
    /// Collinear overlap covering parameters `[t0, t1]` of `ab`.
    Overlap(Scalar, Scalar),
}

/// Parameter of `p` along the line through `a` and `b` (exact projection).
pub fn param_along(a: &Point, b: &Point, p: &Point) -> Scalar {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let num = (&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy;
    let den = &dx * &dx + &dy * &dy;
    num / den
}

/// Intersection of the closed segment `ab` (a != b) with the closed segment `cd`.
pub fn segment_hit(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentHit {
    if boxes_disjoint(a, b, c, d) {
        return SegmentHit::None;
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        // Collinear: clip the parameters of c and d to [0, 1].
        let tc = param_along(a, b, c);
        let td = param_along(a, b, d);
        let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
        let zero = Scalar::zero();
        let one = Scalar::one();
        let lo = Scalar::max_of(&lo, &zero).clone();
        let hi = Scalar::min_of(&hi, &one).clone();
        return match lo.cmp(&hi) {
            Ordering::Greater => SegmentHit::None,
            Ordering::Equal => SegmentHit::Point(lo),
            Ordering::Less => SegmentHit::Overlap(lo, hi),
        };
    }
    if o1 == o2 {
        return SegmentHit::None;
    }
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o3 == o4 {
        return SegmentHit::None;
    }
    // Lines cross at a single point that lies on both closed segments.
    let t = match (o3, o4) {
        (Orientation::Collinear, _) => Scalar::zero(),
        (_, Orientation::Collinear) => Scalar::one(),
        _ => {
            let num = cross(c, d, a);
            let den = &num - cross(c, d, b);
            num / den
        }
    };
    SegmentHit::Point(t)
}

/// Intersection point of the (infinite) lines `ab` and `cd`, if not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let t = line_param(a, b, c, d)?;
    Some(a.lerp(b, &t))
}

/// Parameter `t` along line `ab` where it meets line `cd`.
pub fn line_param(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Scalar> {
    let ex = &b.x - &a.x;
    let ey = &b.y - &a.y;
    let fx = &d.x - &c.x;
    let fy = &d.y - &c.y;
    let den = &ex * &fy - &ey * &fx;
    if den.is_zero() {
        return None;
    }
    let num = (&c.x - &a.x) * &fy - (&c.y - &a.y) * &fx;
    Some(num / den)
}
