use serde_json::json;

use crate::geom::{Point, Polygon, Scalar};

use super::{GenError, Instance};

/// Half-thickness of the staircase corridor, in leg lengths.
const HALF_WIDTH: (i64, i64) = (1, 8);

/// A monotone orthogonal staircase: a corridor of `k` unit legs alternating
/// east and north, `2k + 2` vertices. The witnesses are the leg midpoints on
/// the corridor's centre line; no edge sees more than five of them.
pub fn gen_staircase(k: usize) -> Result<Instance, GenError> {
    if k == 0 {
        return Err(GenError::InvalidParam("staircase needs k >= 1".into()));
    }
    // Integer coordinates in units of the half-width, scaled back at the end.
    let s = HALF_WIDTH.1 / HALF_WIDTH.0;
    let w = 1i64;
    let mut lower = vec![(0, -w)];
    let mut upper = vec![(0, w)];
    let mut witnesses = Vec::with_capacity(k);
    let (mut cx, mut cy) = (0i64, 0i64);
    for leg in 0..k {
        if leg % 2 == 0 {
            witnesses.push((2 * cx + s, 2 * cy));
            cx += s;
        } else {
            witnesses.push((2 * cx, 2 * cy + s));
            cy += s;
        }
        if leg + 1 < k {
            lower.push((cx + w, cy - w));
            upper.push((cx - w, cy + w));
        }
    }
    if k % 2 == 1 {
        lower.push((cx, cy - w));
        upper.push((cx, cy + w));
    } else {
        lower.push((cx + w, cy));
        upper.push((cx - w, cy));
    }
    upper.reverse();
    lower.extend(upper);
    let unit = |v: i64, den: i64| Scalar::ratio(v, den * s);
    let vs = lower.into_iter().map(|(x, y)| Point::new(unit(x, 1), unit(y, 1))).collect();
    let polygon = Polygon::new(vs)?;
    let witnesses = witnesses.into_iter().map(|(x, y)| Point::new(unit(x, 2), unit(y, 2))).collect();
    Ok(Instance {
        family: "staircase",
        certificates: vec![json!({ "k": k, "n": polygon.n() })],
        polygon,
        witnesses,
    })
}
