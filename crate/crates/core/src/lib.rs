//! Exact k-transmitter visibility, constructive edge 2-transmitter covers for
//! monotone and monotone-orthogonal polygons, lower-bound instance generators,
//! and a small exact set-cover verifier.

pub mod geom;
pub mod covers;
pub mod generators;
pub mod solver;
pub mod visibility;

pub use geom::{EdgeRef, GeomError, Location, Point, Polygon, PolygonClass, Scalar, Segment};
