use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::point::{Point, Segment};
use super::predicates::{on_segment, orientation, segments_intersect, Orientation};
use super::scalar::Scalar;
use super::GeomError;

/// Index of the edge from vertex `i` to vertex `i + 1 (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonClass {
    pub simple: bool,
    pub x_monotone: bool,
    pub orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    TooFewVertices(usize),
    DuplicateVertex(usize),
    DegenerateAngle(usize),
    SelfIntersection(usize, usize),
    ZeroArea,
}

/// Twice the signed area (positive for counterclockwise order).
pub fn signed_area2_of(vs: &[Point]) -> Scalar {
    let n = vs.len();
    let mut acc = Scalar::zero();
    for i in 0..n {
        let a = &vs[i];
        let b = &vs[(i + 1) % n];
        acc = acc + (&a.x * &b.y - &b.x * &a.y);
    }
    acc
}

/// Check every polygon invariant except orientation (which construction fixes).
pub fn validate(vs: &[Point]) -> Result<(), Vec<Violation>> {
    let n = vs.len();
    if n < 3 {
        return Err(vec![Violation::TooFewVertices(n)]);
    }
    let mut out = Vec::new();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vs[i].cmp(&vs[j]));
    for w in order.windows(2) {
        if vs[w[0]] == vs[w[1]] {
            out.push(Violation::DuplicateVertex(w[0].max(w[1])));
        }
    }
    if !out.is_empty() {
        out.sort_by_key(|v| match v {
            Violation::DuplicateVertex(i) => *i,
            _ => 0,
        });
        return Err(out);
    }

    let mut degenerate = vec![false; n];
    for i in 0..n {
        let prev = &vs[(i + n - 1) % n];
        let next = &vs[(i + 1) % n];
        if orientation(prev, &vs[i], next) == Orientation::Collinear {
            degenerate[i] = true;
            out.push(Violation::DegenerateAngle(i));
        }
    }

    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges can only overlap beyond their shared vertex
                // when the angle there is 0 or 180 degrees.
                let shared = if j == i + 1 { (i + 1) % n } else { 0 };
                if degenerate[shared] {
                    let (c, d) = (&vs[j], &vs[(j + 1) % n]);
                    let (other_a, other_c) = if j == i + 1 { (a, d) } else { (b, c) };
                    if on_segment(c, d, other_a) || on_segment(a, b, other_c) {
                        out.push(Violation::SelfIntersection(i, j));
                    }
                }
                continue;
            }
            let (c, d) = (&vs[j], &vs[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                out.push(Violation::SelfIntersection(i, j));
            }
        }
    }

    if out.is_empty() && signed_area2_of(vs).is_zero() {
        out.push(Violation::ZeroArea);
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Simple polygon with exact vertices, stored counterclockwise starting at
/// the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates, reverses clockwise input, and rotates to the canonical start.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeomError> {
        validate(&vertices).map_err(GeomError::Invalid)?;
        if signed_area2_of(&vertices).signum() < 0 {
            vertices.reverse();
        }
        let start = (0..vertices.len())
            .min_by(|&i, &j| vertices[i].cmp(&vertices[j]))
            .unwrap_or(0);
        vertices.rotate_left(start);
        Ok(Polygon { vertices })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        Polygon::new(coords.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertex `i mod n`.
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, e: EdgeRef) -> (&Point, &Point) {
        (self.vertex(e.0), self.vertex(e.0 + 1))
    }

    pub fn segment(&self, e: EdgeRef) -> Segment {
        let (a, b) = self.edge(e);
        Segment { a: a.clone(), b: b.clone() }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> {
        (0..self.n()).map(EdgeRef)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Twice the signed area; positive by construction.
    pub fn area2(&self) -> Scalar {
        signed_area2_of(&self.vertices)
    }

    pub fn area(&self) -> Scalar {
        self.area2() * Scalar::ratio(1, 2)
    }

    /// Exact area centroid.
    pub fn centroid(&self) -> Point {
        let n = self.n();
        let mut cx = Scalar::zero();
        let mut cy = Scalar::zero();
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let w = &a.x * &b.y - &b.x * &a.y;
            cx = cx + (&a.x + &b.x) * &w;
            cy = cy + (&a.y + &b.y) * &w;
        }
        let six_a = self.area2() * Scalar::from_int(3);
        Point::new(cx / &six_a, cy / six_a)
    }

    /// Exact bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        let mut lo_x = self.vertices[0].x.clone();
        let mut hi_x = lo_x.clone();
        let mut lo_y = self.vertices[0].y.clone();
        let mut hi_y = lo_y.clone();
        for v in &self.vertices[1..] {
            if v.x < lo_x {
                lo_x = v.x.clone();
            }
            if v.x > hi_x {
                hi_x = v.x.clone();
            }
            if v.y < lo_y {
                lo_y = v.y.clone();
            }
            if v.y > hi_y {
                hi_y = v.y.clone();
            }
        }
        (Point::new(lo_x, lo_y), Point::new(hi_x, hi_y))
    }

    /// Exact point location; boundary first, then a half-open crossing count.
    pub fn point_location(&self, p: &Point) -> Location {
        let n = self.n();
        let (px, py) = p.to_f64();
        let mut inside = false;
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let (lo, hi) = if a.fy() <= b.fy() { (a.fy(), b.fy()) } else { (b.fy(), a.fy()) };
            let pad = 1e-9 * (lo.abs() + hi.abs() + py.abs()) + 1e-300;
            if py < lo - pad || py > hi + pad {
                continue;
            }
            let max_x = a.fx().max(b.fx());
            let xpad = 1e-9 * (max_x.abs() + px.abs()) + 1e-300;
            if px > max_x + xpad {
                // The edge lies entirely left of p: no boundary hit, no rightward crossing.
                continue;
            }
            if on_segment(a, b, p) {
                return Location::Boundary;
            }
            let a_above = a.cmp_y(p) == Ordering::Greater;
            let b_above = b.cmp_y(p) == Ordering::Greater;
            if a_above != b_above {
                let o = orientation(a, b, p);
                if (b_above && o == Orientation::CounterClockwise)
                    || (a_above && o == Orientation::Clockwise)
                {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    /// Closed-set membership.
    pub fn contains(&self, p: &Point) -> bool {
        self.point_location(p) != Location::Exterior
    }

    /// Index of the lexicographically largest vertex.
    pub fn lex_max_index(&self) -> usize {
        (0..self.n())
            .max_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]))
            .unwrap_or(0)
    }

    /// Weakly x-monotone chains: lower runs 0..=h, upper runs h..=n (back to 0).
    pub fn is_x_monotone(&self) -> bool {
        let n = self.n();
        let h = self.lex_max_index();
        let lower_ok = (0..h).all(|i| self.vertices[i].cmp_x(&self.vertices[i + 1]) != Ordering::Greater);
        let upper_ok = (h..n).all(|i| {
            self.vertices[i].cmp_x(&self.vertices[(i + 1) % n]) != Ordering::Less
        });
        lower_ok && upper_ok
    }

    pub fn is_orthogonal(&self) -> bool {
        self.edges().all(|e| {
            let (a, b) = self.edge(e);
            a.x == b.x || a.y == b.y
        })
    }

    pub fn classify(&self) -> PolygonClass {
        PolygonClass {
            simple: true,
            x_monotone: self.is_x_monotone(),
            orthogonal: self.is_orthogonal(),
        }
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<Polygon, GeomError> {
        Polygon::new(self.vertices.iter().map(f).collect())
    }
}

/// Drop repeated vertices and vertices with a 0 or 180 degree angle until none remain.
pub fn clean_collinear(mut vs: Vec<Point>) -> Vec<Point> {
    loop {
        let n = vs.len();
        if n < 3 {
            return vs;
        }
        let mut changed = false;
        let mut out: Vec<Point> = Vec::with_capacity(n);
        for v in vs.iter() {
            if out.last() != Some(v) {
                out.push(v.clone());
            }
        }
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        if out.len() != n {
            changed = true;
        }
        let m = out.len();
        if m >= 3 {
            if let Some(i) = (0..m).find(|&i| {
                orientation(&out[(i + m - 1) % m], &out[i], &out[(i + 1) % m])
                    == Orientation::Collinear
            }) {
                out.remove(i);
                changed = true;
            }
        }
        vs = out;
        if !changed {
            return vs;
        }
    }
}

/// Sutherland-Hodgman clip against the half-plane `x <= x0` (`keep_left`) or `x >= x0`.
pub fn clip_vertical(vs: &[Point], x0: &Scalar, keep_left: bool) -> Vec<Point> {
    let inside = |p: &Point| {
        let c = p.x.cmp(x0);
        if keep_left {
            c != Ordering::Greater
        } else {
            c != Ordering::Less
        }
    };
    let n = vs.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = &vs[i];
        let next = &vs[(i + 1) % n];
        let (ci, ni) = (inside(cur), inside(next));
        if ci {
            out.push(cur.clone());
        }
        if ci != ni {
            let t = (x0 - &cur.x) / (&next.x - &cur.x);
            let hit = cur.lerp(next, &t);
            if &hit != cur && &hit != next {
                out.push(hit);
            }
        }
    }
    clean_collinear(out)
}
