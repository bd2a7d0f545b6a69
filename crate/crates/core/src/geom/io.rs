//! JSON encoding of exact coordinates and polygons.
//!
//! Coordinates are written as `"num/den"` (or `"num"`) strings; on input,
//! JSON integers are accepted as shorthand.

use serde_json::{json, Value};

use super::point::Point;
use super::polygon::Polygon;
use super::scalar::Scalar;
use super::GeomError;

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, GeomError> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap_or_default())),
        Value::Number(n) if n.is_u64() => n.to_string().parse(),
        other => Err(GeomError::Parse(format!("expected rational string or integer, got {other}"))),
    }
}

pub fn point_to_json(p: &Point) -> Value {
    json!([scalar_to_json(&p.x), scalar_to_json(&p.y)])
}

pub fn point_from_json(v: &Value) -> Result<Point, GeomError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(scalar_from_json(x)?, scalar_from_json(y)?)),
        _ => Err(GeomError::Parse(format!("expected [x, y], got {v}"))),
    }
}

pub fn polygon_to_value(p: &Polygon) -> Value {
    json!({ "vertices": p.vertices().iter().map(point_to_json).collect::<Vec<_>>() })
}

pub fn polygon_from_value(v: &Value) -> Result<Polygon, GeomError> {
    let arr = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::Parse("missing \"vertices\" array".into()))?;
    let pts = arr.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
    Polygon::new(pts)
}

pub fn polygon_to_json(p: &Polygon) -> String {
    serde_json::to_string_pretty(&polygon_to_value(p)).expect("polygon serializes")
}

pub fn polygon_from_json(s: &str) -> Result<Polygon, GeomError> {
    let v: Value = serde_json::from_str(s).map_err(|e| GeomError::Parse(e.to_string()))?;
    polygon_from_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_integer_shorthand() {
        let src = r#"{"vertices": [[0, 0], ["3/2", 0], ["3/2", "1/3"], [0, 1]]}"#;
        let p = polygon_from_json(src).unwrap();
        assert_eq!(p.vertex(2), &Point::ratio((3, 2), (1, 3)));
        let back = polygon_from_json(&polygon_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(polygon_from_json(r#"{"vertices": [[0.5, 0]]}"#).is_err());
        assert!(polygon_from_json(r#"{"verts": []}"#).is_err());
    }
}
