use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::scalar::{cmp_filtered, Scalar};
use super::GeomError;

/// A point with exact rational coordinates.
///
/// A rounded double copy of each coordinate rides along so that predicates
/// can try a cheap filtered evaluation before touching big integers.
#[derive(Clone)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
    fx: f64,
    fy: f64,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        let fx = x.to_f64();
        let fy = y.to_f64();
        Point { x, y, fx, fy }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Point from `(num, den)` pairs.
    pub fn ratio(x: (i64, i64), y: (i64, i64)) -> Self {
        Point::new(Scalar::ratio(x.0, x.1), Scalar::ratio(y.0, y.1))
    }

    pub fn parse(x: &str, y: &str) -> Result<Self, GeomError> {
        Ok(Point::new(x.parse()?, y.parse()?))
    }

    #[inline]
    pub fn fx(&self) -> f64 {
        self.fx
    }

    #[inline]
    pub fn fy(&self) -> f64 {
        self.fy
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.fx, self.fy)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        Point::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new(Scalar::mid(&self.x, &other.x), Scalar::mid(&self.y, &other.y))
    }

    pub fn translate(&self, dx: &Scalar, dy: &Scalar) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn cmp_x(&self, other: &Point) -> Ordering {
        cmp_filtered(&self.x, self.fx, &other.x, other.fx)
    }

    pub fn cmp_y(&self, other: &Point) -> Ordering {
        cmp_filtered(&self.y, self.fy, &other.y, other.fy)
    }

    /// Lexicographic (x, then y).
    pub fn cmp_lex(&self, other: &Point) -> Ordering {
        self.cmp_x(other).then_with(|| self.cmp_y(other))
    }

    pub fn dist2_f64(&self, other: &Point) -> f64 {
        let dx = self.fx - other.fx;
        let dy = self.fy - other.fy;
        dx * dx + dy * dy
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_lex(other) == Ordering::Equal
    }
}

impl Eq for Point {}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Closed straight segment between two distinct points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn at(&self, t: &Scalar) -> Point {
        self.a.lerp(&self.b, t)
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    /// Exact squared length.
    pub fn length2(&self) -> Scalar {
        let dx = &self.b.x - &self.a.x;
        let dy = &self.b.y - &self.a.y;
        &dx * &dx + &dy * &dy
    }
}
