use crate::geom::{orientation, EdgeRef, Location, Orientation, Point, Polygon};

use super::{CoverError, Transmitter};

/// A point 2-transmitter for a pentagon: the area centroid, or the centroid
/// of an ear triangle if the centroid falls outside.
pub fn cover_5gon(poly: &Polygon) -> Result<Transmitter, CoverError> {
    if poly.n() != 5 {
        return Err(CoverError::WrongSize { expected: "5".into(), got: poly.n() });
    }
    let c = poly.centroid();
    if poly.point_location(&c) != Location::Exterior {
        return Ok(Transmitter::Point(c));
    }
    let i = *ear_vertices(poly)
        .first()
        .ok_or_else(|| CoverError::Internal("pentagon without an ear".into()))?;
    let (a, b, d) = (poly.vertex(i + 4), poly.vertex(i), poly.vertex(i + 1));
    let third = crate::geom::Scalar::ratio(1, 3);
    let tc = Point::new((&a.x + &b.x + &d.x) * &third, (&a.y + &b.y + &d.y) * &third);
    Ok(Transmitter::Point(tc))
}

/// Indices `i` whose triangle `(i-1, i, i+1)` is an ear of `P`.
pub fn ear_vertices(poly: &Polygon) -> Vec<usize> {
    let n = poly.n();
    (0..n)
        .filter(|&i| {
            let (a, b, c) = (poly.vertex(i + n - 1), poly.vertex(i), poly.vertex(i + 1));
            if orientation(a, b, c) != Orientation::CounterClockwise {
                return false;
            }
            (0..n).filter(|&j| j != i && j != (i + 1) % n && j != (i + n - 1) % n).all(|j| {
                let p = poly.vertex(j);
                !(orientation(a, b, p) != Orientation::Clockwise
                    && orientation(b, c, p) != Orientation::Clockwise
                    && orientation(c, a, p) != Orientation::Clockwise)
            })
        })
        .collect()
}

/// For a hexagon and its edge `e = (v, w)`, the endpoint from which an ear
/// diagonal leaves; a point 2-transmitter there covers the hexagon.
pub fn cover_6gon_from_edge(poly: &Polygon, e: EdgeRef) -> Result<Transmitter, CoverError> {
    if poly.n() != 6 {
        return Err(CoverError::WrongSize { expected: "6".into(), got: poly.n() });
    }
    if e.0 >= 6 {
        return Err(CoverError::Internal(format!("edge {} out of range", e.0)));
    }
    // Relabel so that u0 = v and u1 = w.
    let ears: Vec<usize> = ear_vertices(poly).into_iter().map(|i| (i + 6 - e.0) % 6).collect();
    // Ears at u1 or u5 are cut off by a diagonal from v; ears at u0 or u2 by one from w.
    if ears.iter().any(|&u| u == 1 || u == 5) {
        return Ok(Transmitter::Point(poly.vertex(e.0).clone()));
    }
    if ears.iter().any(|&u| u == 0 || u == 2) {
        return Ok(Transmitter::Point(poly.vertex(e.0 + 1).clone()));
    }
    Err(CoverError::Internal(format!(
        "hexagon has no ear adjacent to edge {} (ears {:?})",
        e.0, ears
    )))
}
