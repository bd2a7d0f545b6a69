use crate::geom::{Point, Polygon};

use super::GenError;

/// Tooth height above the base.
const HEIGHT: i64 = 6;

/// A comb with `m` unit-width teeth on a unit-height base, and an interior
/// source near the left end from which the 2-visible part of the boundary
/// splits into one arc per gap between teeth.
#[derive(Clone, Debug)]
pub struct TeethComb {
    pub polygon: Polygon,
    pub source: Point,
}

/// Comb with teeth over `[2i+1, 2i+2]`, `i < m`, and the source at `(1/2, 1/2)`.
pub fn gen_teeth_comb(m: usize) -> Result<TeethComb, GenError> {
    if m == 0 {
        return Err(GenError::InvalidParam("teeth comb needs m >= 1".into()));
    }
    let m = m as i64;
    let right = 2 * m + 1;
    let mut vs = vec![Point::int(0, 0), Point::int(right, 0), Point::int(right, 1)];
    for i in (0..m).rev() {
        let (x0, x1) = (2 * i + 1, 2 * i + 2);
        vs.extend([Point::int(x1, 1), Point::int(x1, 1 + HEIGHT), Point::int(x0, 1 + HEIGHT), Point::int(x0, 1)]);
    }
    vs.push(Point::int(0, 1));
    Ok(TeethComb { polygon: Polygon::new(vs)?, source: Point::ratio((1, 2), (1, 2)) })
}
