//! Finite oracles: sampled coverage checks, incidence matrices and an exact
//! set-cover solver for witness-based lower bounds.
//!
//! Lower bounds over designated witnesses are exact (every cover must see
//! those points). Coverage checks on sampled witnesses are one-sided: they
//! can refute a cover but cannot prove it covers every point.

mod cover;
pub mod fuzz;
mod setcover;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covers::Transmitter;
use crate::geom::{point_to_json, EdgeRef, Location, Point, Polygon, Scalar};
use crate::visibility::{component_count, quick_sight, segment_sees_point, VisibilitySpec, DEFAULT_REFINEMENT};

pub use cover::{certify_lower_bound, from_matrix as lower_bound_from_matrix, LowerBound};
pub use setcover::{greedy_cover, min_cover, SolveStatus, SetCoverSolution, DEFAULT_NODE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Vertex,
    EdgeMidpoint,
    Grid(usize),
    Designated,
}

#[derive(Clone, Debug, Default)]
pub struct WitnessSet {
    pub points: Vec<(Point, Provenance)>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn designated(points: &[Point]) -> Self {
        WitnessSet { points: points.iter().map(|p| (p.clone(), Provenance::Designated)).collect() }
    }
}

/// Cell centres of a `res x res` grid over the bounding box that fall in the interior.
pub fn grid_points(poly: &Polygon, res: usize) -> Vec<Point> {
    let (lo, hi) = poly.bbox();
    let w = &hi.x - &lo.x;
    let h = &hi.y - &lo.y;
    let r = Scalar::from_int(res as i64);
    let mut out = Vec::new();
    for i in 0..res {
        let fx = (Scalar::from_int(2 * i as i64 + 1) / (Scalar::from_int(2) * &r)) * &w;
        for j in 0..res {
            let fy = (Scalar::from_int(2 * j as i64 + 1) / (Scalar::from_int(2) * &r)) * &h;
            let p = Point::new(&lo.x + &fx, &lo.y + &fy);
            if poly.point_location(&p) == Location::Interior {
                out.push(p);
            }
        }
    }
    out
}

/// Vertices, edge midpoints, interior grid points and the given extras.
pub fn build_witnesses(poly: &Polygon, grid_resolution: usize, extra: &[Point]) -> WitnessSet {
    let mut points: Vec<(Point, Provenance)> = Vec::new();
    points.extend(poly.vertices().iter().map(|v| (v.clone(), Provenance::Vertex)));
    points.extend(poly.edges().map(|e| {
        let (a, b) = poly.edge(e);
        (a.midpoint(b), Provenance::EdgeMidpoint)
    }));
    if grid_resolution > 0 {
        points.extend(grid_points(poly, grid_resolution).into_iter().map(|p| (p, Provenance::Grid(grid_resolution))));
    }
    points.extend(extra.iter().map(|p| (p.clone(), Provenance::Designated)));
    WitnessSet { points }
}

/// Does transmitter `t` see witness `w`?
pub fn transmitter_sees(t: &Transmitter, w: &Point, poly: &Polygon, spec: VisibilitySpec) -> bool {
    match t {
        Transmitter::Point(p) => spec.allows(component_count(p, w, poly)),
        Transmitter::Edge(e) => {
            let (a, b) = poly.edge(*e);
            segment_sees_point(a, b, w, poly, spec, 0, false).map(|s| s.is_yes()).unwrap_or(false)
        }
    }
}

fn dist2_to_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    (p.0 - qx).powi(2) + (p.1 - qy).powi(2)
}

fn transmitter_dist2(t: &Transmitter, w: &Point, poly: &Polygon) -> f64 {
    match t {
        Transmitter::Point(p) => p.dist2_f64(w),
        Transmitter::Edge(e) => {
            let (a, b) = poly.edge(*e);
            dist2_to_segment(w.to_f64(), a.to_f64(), b.to_f64())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TxMode {
    PointTx,
    EdgeTx,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct CoverageReport {
    pub total: usize,
    pub uncovered: Vec<(Point, Provenance)>,
    pub spec: VisibilitySpec,
    pub mode: TxMode,
}

impl CoverageReport {
    pub fn is_clean(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn uncovered_json(&self) -> Value {
        Value::Array(
            self.uncovered
                .iter()
                .map(|(p, prov)| json!({ "point": point_to_json(p), "provenance": prov }))
                .collect(),
        )
    }
}

fn mode_of(ts: &[Transmitter]) -> TxMode {
    let points = ts.iter().filter(|t| matches!(t, Transmitter::Point(_))).count();
    if points == ts.len() {
        TxMode::PointTx
    } else if points == 0 {
        TxMode::EdgeTx
    } else {
        TxMode::Mixed
    }
}

/// Cheap sufficient test: a `true` is exact, a `false` decides nothing for edges.
fn transmitter_sees_quick(t: &Transmitter, w: &Point, poly: &Polygon, spec: VisibilitySpec) -> bool {
    match t {
        Transmitter::Point(_) => transmitter_sees(t, w, poly, spec),
        Transmitter::Edge(e) => {
            let (a, b) = poly.edge(*e);
            quick_sight(a, b, w, poly, spec, false).is_some()
        }
    }
}

/// Every witness not seen by any transmitter. Parallel over witnesses;
/// transmitters are tried nearest first, with confirmed floating-point
/// guesses before the exact sweep.
pub fn verify_cover(poly: &Polygon, cover: &[Transmitter], w: &WitnessSet, spec: VisibilitySpec) -> CoverageReport {
    let uncovered: Vec<(Point, Provenance)> = w
        .points
        .par_iter()
        .filter(|(p, _)| {
            if !poly.contains(p) {
                return true;
            }
            let mut order: Vec<(f64, &Transmitter)> = cover.iter().map(|t| (transmitter_dist2(t, p, poly), t)).collect();
            order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
            !order.iter().any(|(_, t)| transmitter_sees_quick(t, p, poly, spec))
                && !order.iter().any(|(_, t)| transmitter_sees(t, p, poly, spec))
        })
        .cloned()
        .collect();
    CoverageReport { total: w.len(), uncovered, spec, mode: mode_of(cover) }
}

/// Candidate-by-witness incidence.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverMatrix {
    pub candidates: Vec<Transmitter>,
    pub witnesses: Vec<Point>,
    /// `rows[c][w]`: candidate `c` sees witness `w`.
    pub rows: Vec<Vec<bool>>,
}

impl CoverMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Self {
        let nw = rows.first().map_or(0, Vec::len);
        CoverMatrix {
            candidates: (0..rows.len()).map(EdgeRef).map(Transmitter::Edge).collect(),
            witnesses: (0..nw).map(|i| Point::int(i as i64, 0)).collect(),
            rows,
        }
    }

    pub fn n_candidates(&self) -> usize {
        self.rows.len()
    }

    pub fn n_witnesses(&self) -> usize {
        self.witnesses.len()
    }

    /// Candidates seeing witness `w`.
    pub fn column(&self, w: usize) -> Vec<usize> {
        (0..self.rows.len()).filter(|&c| self.rows[c][w]).collect()
    }
}

pub fn build_matrix(poly: &Polygon, candidates: &[Transmitter], w: &[Point], spec: VisibilitySpec) -> CoverMatrix {
    let rows: Vec<Vec<bool>> = candidates
        .par_iter()
        .map(|c| w.par_iter().map(|p| transmitter_sees(c, p, poly, spec)).collect())
        .collect();
    CoverMatrix { candidates: candidates.to_vec(), witnesses: w.to_vec(), rows }
}

pub fn edge_candidates(poly: &Polygon) -> Vec<Transmitter> {
    poly.edges().map(Transmitter::Edge).collect()
}

/// Vertices, interior grid points and midpoints of vertex pairs that see each
/// other without crossing the boundary.
pub fn point_candidates(poly: &Polygon, grid: usize) -> Vec<Transmitter> {
    let mut pts: Vec<Point> = poly.vertices().to_vec();
    pts.extend(grid_points(poly, grid));
    let n = poly.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mids: Vec<Point> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (a, b) = (poly.vertex(i), poly.vertex(j));
            (component_count(a, b, poly) == 1).then(|| a.midpoint(b))
        })
        .collect();
    pts.extend(mids);
    pts.sort();
    pts.dedup();
    pts.into_iter().map(Transmitter::Point).collect()
}

/// Default uniform cross-check samples, re-exported for callers that want
/// the belt-and-braces edge query.
pub const REFINEMENT: usize = DEFAULT_REFINEMENT;

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub lb: usize,
    pub cover_size: Option<usize>,
    pub uncovered: Value,
    pub certificate: Value,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lb": self.lb,
            "cover_size": self.cover_size,
            "uncovered": self.uncovered,
            "certificate": self.certificate,
            "status": self.status,
        })
    }
}
