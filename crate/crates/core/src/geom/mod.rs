//! Exact geometric kernel: rational scalars, points, predicates and simple polygons.

mod io;
mod point;
mod polygon;
mod predicates;
mod scalar;

use std::fmt;

pub use io::{
    point_from_json, point_to_json, polygon_from_json, polygon_from_value, polygon_to_json,
    polygon_to_value, scalar_from_json, scalar_to_json,
};
pub use point::{Point, Segment};
pub use polygon::{
    clip_vertical, clean_collinear, signed_area2_of, validate, EdgeRef, Location, Polygon,
    PolygonClass, Violation,
};
pub use predicates::{
    cross, dot, in_box, line_intersection, line_param, on_segment, orientation, param_along,
    segment_hit, segments_intersect, strictly_on_segment, Orientation, SegmentHit,
};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate segment (coincident endpoints)")]
    DegenerateSegment,
    #[error("invalid polygon: {}", fmt_violations(.0))]
    Invalid(Vec<Violation>),
}

fn fmt_violations(v: &[Violation]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices(n) => write!(f, "TOO_FEW_VERTICES ({n})"),
            Violation::DuplicateVertex(i) => write!(f, "DUPLICATE_VERTEX at {i}"),
            Violation::DegenerateAngle(i) => write!(f, "DEGENERATE_ANGLE at {i}"),
            Violation::SelfIntersection(i, j) => write!(f, "SELF_INTERSECTION at ({i},{j})"),
            Violation::ZeroArea => write!(f, "ZERO_AREA"),
        }
    }
}
