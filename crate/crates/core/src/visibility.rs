//! k-visibility by counting connected components of `segment ∩ P`.
//!
//! `P` is treated as a closed region. Each segment is cut at every parameter
//! where it meets the boundary; each piece is classified by an exact
//! point-location test on its midpoint, so vertex incidences never get
//! double-counted.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geom::{
    in_box, line_param, orientation, param_along, segment_hit, EdgeRef, Location, Orientation, Point,
    Polygon, Scalar, Segment, SegmentHit,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VisibilityError {
    #[error("point {0} lies outside the polygon")]
    Exterior(String),
    #[error("edge index {0} out of range")]
    BadEdge(usize),
}

/// Maximum number of connected components a sight line may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VisibilitySpec {
    pub max_components: usize,
}

impl VisibilitySpec {
    /// Component form: `c >= 1` components allowed.
    pub fn components(c: usize) -> Self {
        assert!(c >= 1, "at least one component is required");
        VisibilitySpec { max_components: c }
    }

    /// Wall-budget form: a signal may cross `k` walls, which allows
    /// `floor(k/2) + 1` components.
    pub fn walls(k: usize) -> Self {
        VisibilitySpec { max_components: k / 2 + 1 }
    }

    pub fn two() -> Self {
        VisibilitySpec::components(2)
    }

    pub fn allows(&self, count: usize) -> bool {
        count <= self.max_components
    }
}

impl Default for VisibilitySpec {
    fn default() -> Self {
        VisibilitySpec::two()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentProfile {
    pub segment: Segment,
    /// Maximal closed parameter ranges `[t0, t1]` of the segment inside `P`.
    pub intervals: Vec<(Scalar, Scalar)>,
    pub count: usize,
}

fn boundary_params(a: &Point, b: &Point, poly: &Polygon) -> Vec<Scalar> {
    let mut ts = Vec::new();
    for e in poly.edges() {
        let (c, d) = poly.edge(e);
        match segment_hit(a, b, c, d) {
            SegmentHit::None => {}
            SegmentHit::Point(t) => ts.push(t),
            SegmentHit::Overlap(t0, t1) => {
                ts.push(t0);
                ts.push(t1);
            }
        }
    }
    ts.sort();
    ts.dedup();
    ts
}

/// Exact component profile of the closed segment `s` against `P`.
pub fn component_profile(s: &Segment, poly: &Polygon) -> ComponentProfile {
    let intervals = inside_intervals(&s.a, &s.b, poly);
    ComponentProfile { segment: s.clone(), count: intervals.len(), intervals }
}

fn inside_intervals(a: &Point, b: &Point, poly: &Polygon) -> Vec<(Scalar, Scalar)> {
    let hits = boundary_params(a, b, poly);
    // Breakpoints: 0, every boundary parameter, 1; boundary parameters are inside.
    let mut pts: Vec<(Scalar, bool)> = Vec::with_capacity(hits.len() + 2);
    let zero = Scalar::zero();
    let one = Scalar::one();
    if hits.first() != Some(&zero) {
        pts.push((zero, poly.contains(a)));
    }
    pts.extend(hits.into_iter().map(|t| (t, true)));
    if pts.last().map(|(t, _)| t) != Some(&one) {
        pts.push((one, poly.contains(b)));
    }

    let mut out: Vec<(Scalar, Scalar)> = Vec::new();
    let mut open: Option<Scalar> = None;
    for i in 0..pts.len() {
        let (t, inside) = &pts[i];
        if *inside {
            if open.is_none() {
                open = Some(t.clone());
            }
        } else if let Some(t0) = open.take() {
            out.push((t0, pts[i - 1].0.clone()));
        }
        if i + 1 < pts.len() {
            let t1 = &pts[i + 1].0;
            let mid = Scalar::mid(t, t1);
            let gap_inside = poly.point_location(&a.lerp(b, &mid)) != Location::Exterior;
            if gap_inside {
                if open.is_none() {
                    // Only reachable when the left breakpoint is outside, which
                    // cannot happen for a closed region; kept for safety.
                    open = Some(t.clone());
                }
            } else if let Some(t0) = open.take() {
                out.push((t0, t.clone()));
            }
        }
    }
    if let Some(t0) = open {
        out.push((t0, pts.last().map(|p| p.0.clone()).unwrap_or_else(Scalar::one)));
    }
    out
}

/// Number of components of `pq ∩ P` (1 when `p == q` and the point is in `P`).
pub fn component_count(p: &Point, q: &Point, poly: &Polygon) -> usize {
    if p == q {
        return usize::from(poly.contains(p));
    }
    crossing_count(p, q, poly).unwrap_or_else(|| inside_intervals(p, q, poly).len())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Incidence {
    Free,
    Vertex(usize),
    Edge(usize),
}

/// Is `p + s(toward - p)` inside `P` for small `s > 0`? `None` when the
/// direction runs along an edge or `p` is outside.
fn leaves_inward(p: &Point, toward: &Point, inc: Incidence, poly: &Polygon) -> Option<bool> {
    use Orientation::*;
    match inc {
        Incidence::Free => (poly.point_location(p) == Location::Interior).then_some(true),
        Incidence::Edge(j) => match orientation(poly.vertex(j), poly.vertex(j + 1), toward) {
            CounterClockwise => Some(true),
            Clockwise => Some(false),
            Collinear => None,
        },
        Incidence::Vertex(i) => {
            let n = poly.n();
            let (u, w) = (poly.vertex(i + n - 1), poly.vertex(i + 1));
            let a1 = orientation(p, w, toward);
            let a2 = orientation(p, u, toward);
            if a1 == Collinear || a2 == Collinear {
                return None;
            }
            let (left_of_next, right_of_prev) = (a1 == CounterClockwise, a2 == Clockwise);
            Some(if orientation(u, p, w) == CounterClockwise {
                left_of_next && right_of_prev
            } else {
                left_of_next || right_of_prev
            })
        }
    }
}

/// Component count from the exits along the segment, using only orientation
/// tests: every outside gap starts at `p` or right after an exit (a proper
/// crossing from the interior side, or a vertex on the segment where the
/// onward direction leaves `P`). Returns `None` when the segment runs along an
/// edge or an endpoint is outside; the caller then falls back to the interval
/// computation.
fn crossing_count(p: &Point, q: &Point, poly: &Polygon) -> Option<usize> {
    use Orientation::{Collinear, CounterClockwise};
    let n = poly.n();
    let mut pi = Incidence::Free;
    let mut qi = Incidence::Free;
    let mut on_segment = vec![false; n];
    let mut exits = 0usize;
    for (i, v) in poly.vertices().iter().enumerate() {
        if v == p {
            pi = Incidence::Vertex(i);
        } else if v == q {
            qi = Incidence::Vertex(i);
        } else if orientation(p, q, v) == Collinear && in_box(p, q, v) {
            on_segment[i] = true;
            if !leaves_inward(v, q, Incidence::Vertex(i), poly)? {
                exits += 1;
            }
        }
    }
    let touches = |inc: Incidence, j: usize| match inc {
        Incidence::Vertex(i) => i == j || i == (j + 1) % n,
        Incidence::Edge(k) => k == j,
        Incidence::Free => false,
    };
    for j in 0..n {
        let (c, d) = (poly.vertex(j), poly.vertex(j + 1));
        let ocd_p = orientation(c, d, p);
        let ocd_q = orientation(c, d, q);
        if pi == Incidence::Free && ocd_p == Collinear && in_box(c, d, p) {
            pi = Incidence::Edge(j);
        }
        if qi == Incidence::Free && ocd_q == Collinear && in_box(c, d, q) {
            qi = Incidence::Edge(j);
        }
        if touches(pi, j) || touches(qi, j) || on_segment[j] || on_segment[(j + 1) % n] {
            continue;
        }
        let oc = orientation(p, q, c);
        let od = orientation(p, q, d);
        if oc == Collinear || od == Collinear || oc == od {
            continue;
        }
        if ocd_p != Collinear && ocd_q != Collinear && ocd_p != ocd_q && ocd_p == CounterClockwise {
            exits += 1;
        }
    }
    let start = leaves_inward(p, q, pi, poly)?;
    leaves_inward(q, p, qi, poly)?;
    Some(1 + exits + usize::from(!start))
}

fn require_inside(p: &Point, poly: &Polygon) -> Result<(), VisibilityError> {
    if poly.contains(p) {
        Ok(())
    } else {
        Err(VisibilityError::Exterior(p.to_string()))
    }
}

/// `q` is visible from `p` under `spec`. Symmetric in `p` and `q`.
pub fn k_visible(
    p: &Point,
    q: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
) -> Result<bool, VisibilityError> {
    require_inside(p, poly)?;
    require_inside(q, poly)?;
    Ok(spec.allows(component_count(p, q, poly)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeSight {
    /// Parameter `t` along the queried segment from which the point is visible.
    Yes(Scalar),
    NoAtResolution,
}

impl EdgeSight {
    pub fn is_yes(&self) -> bool {
        matches!(self, EdgeSight::Yes(_))
    }
}

/// Parameters along `ab` where the family of sight lines from `p` can change
/// its component structure: where the line through `p` and a vertex meets
/// `ab`, and vertices lying on `ab`'s own line.
fn critical_params(a: &Point, b: &Point, p: &Point, poly: &Polygon) -> Vec<Scalar> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    let in_range = |t: &Scalar| *t >= zero && *t <= one;
    let mut ts = vec![zero.clone(), one.clone()];
    let p_on_line = orientation(a, b, p) == Orientation::Collinear;
    if p_on_line {
        let tp = param_along(a, b, p);
        if in_range(&tp) {
            ts.push(tp);
        }
    }
    for v in poly.vertices() {
        if v == p {
            continue;
        }
        if orientation(a, b, v) == Orientation::Collinear {
            let t = param_along(a, b, v);
            if in_range(&t) {
                ts.push(t);
            }
        } else if !p_on_line {
            if let Some(t) = line_param(a, b, p, v) {
                if in_range(&t) {
                    ts.push(t);
                }
            }
        }
    }
    ts.sort();
    ts.dedup();
    ts
}

/// Search the segment `ab` for a point that sees `p` under `spec`.
///
/// The sweep over critical parameters and the midpoints between them is
/// exact. With `open_ends` the endpoints themselves are excluded. `refinement`
/// extra uniform samples are only a cross-check of the sweep.
pub fn segment_sees_point(
    a: &Point,
    b: &Point,
    p: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
    refinement: usize,
    open_ends: bool,
) -> Result<EdgeSight, VisibilityError> {
    require_inside(p, poly)?;
    if let Some(t) = quick_sight(a, b, p, poly, spec, open_ends) {
        return Ok(EdgeSight::Yes(t));
    }
    Ok(exact_sight(a, b, p, poly, spec, refinement, open_ends))
}

fn count_f64(p: (f64, f64), q: (f64, f64), vs: &[(f64, f64)]) -> usize {
    let cross = |u: (f64, f64), v: (f64, f64)| u.0 * v.1 - u.1 * v.0;
    let sub = |u: (f64, f64), v: (f64, f64)| (u.0 - v.0, u.1 - v.1);
    let r = sub(q, p);
    let n = vs.len();
    let mut ts = vec![0.0, 1.0];
    for i in 0..n {
        let (c, d) = (vs[i], vs[(i + 1) % n]);
        let s = sub(d, c);
        let den = cross(r, s);
        if den.abs() < 1e-300 {
            continue;
        }
        let cp = sub(c, p);
        let t = cross(cp, s) / den;
        let u = cross(cp, r) / den;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
            ts.push(t);
        }
    }
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    let inside = |x: f64, y: f64| {
        let mut c = false;
        for i in 0..n {
            let (a, b) = (vs[i], vs[(i + 1) % n]);
            if (a.1 > y) != (b.1 > y) && x < a.0 + (y - a.1) * (b.0 - a.0) / (b.1 - a.1) {
                c = !c;
            }
        }
        c
    };
    // Breakpoints are on the boundary, so each outside gap adds one component.
    1 + ts
        .windows(2)
        .filter(|w| w[1] - w[0] > 1e-12)
        .filter(|w| {
            let m = 0.5 * (w[0] + w[1]);
            !inside(p.0 + m * r.0, p.1 + m * r.1)
        })
        .count()
}

/// Floating-point search for a good parameter, confirmed exactly. `None`
/// means nothing was confirmed, not that `p` is invisible.
pub(crate) fn quick_sight(
    a: &Point,
    b: &Point,
    p: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
    open_ends: bool,
) -> Option<Scalar> {
    const TRIES: usize = 4;
    let vs: Vec<(f64, f64)> = poly.vertices().iter().map(Point::to_f64).collect();
    let (pf, af, bf) = (p.to_f64(), a.to_f64(), b.to_f64());
    let d = (bf.0 - af.0, bf.1 - af.1);
    let mut crit = vec![0.0, 1.0];
    for v in &vs {
        let w = (v.0 - pf.0, v.1 - pf.1);
        let den = w.0 * d.1 - w.1 * d.0;
        if den.abs() > 1e-300 {
            let t = (w.1 * (af.0 - pf.0) - w.0 * (af.1 - pf.1)) / den;
            if (0.0..=1.0).contains(&t) {
                crit.push(t);
            }
        }
    }
    crit.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    crit.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let mut cands: Vec<f64> = crit.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    if !open_ends {
        cands.extend([0.0, 1.0]);
    }
    let mut scored: Vec<(usize, f64, f64)> = cands
        .into_iter()
        .map(|t| {
            let q = (af.0 + t * d.0, af.1 + t * d.1);
            (count_f64(pf, q, &vs), (q.0 - pf.0).powi(2) + (q.1 - pf.1).powi(2), t)
        })
        .filter(|c| spec.allows(c.0))
        .collect();
    scored.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal)));
    const DEN: i64 = 1 << 24;
    for &(_, _, t) in scored.iter().take(TRIES) {
        let t = Scalar::ratio((t * DEN as f64).round() as i64, DEN);
        let inside_edge = if open_ends { t > Scalar::zero() && t < Scalar::one() } else { true };
        if inside_edge && spec.allows(component_count(p, &a.lerp(b, &t), poly)) {
            return Some(t);
        }
    }
    None
}

/// The exact critical-parameter sweep.
pub(crate) fn exact_sight(
    a: &Point,
    b: &Point,
    p: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
    refinement: usize,
    open_ends: bool,
) -> EdgeSight {
    let sees = |t: &Scalar| spec.allows(component_count(p, &a.lerp(b, t), poly));

    let crit = critical_params(a, b, p, poly);
    let mut cands: Vec<Scalar> = Vec::with_capacity(2 * crit.len());
    for (i, t) in crit.iter().enumerate() {
        if !(open_ends && (t.is_zero() || *t == Scalar::one())) {
            cands.push(t.clone());
        }
        if let Some(t1) = crit.get(i + 1) {
            cands.push(Scalar::mid(t, t1));
        }
    }
    // Cheap guesses first: the nearest candidate to p usually crosses the
    // fewest walls.
    let (px, py) = p.to_f64();
    let (ax, ay) = a.to_f64();
    let (bx, by) = b.to_f64();
    let mut keyed: Vec<(f64, Scalar)> = cands
        .into_iter()
        .map(|t| {
            let tf = t.to_f64();
            let qx = ax + tf * (bx - ax);
            let qy = ay + tf * (by - ay);
            ((qx - px).powi(2) + (qy - py).powi(2), t)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal).then_with(|| x.1.cmp(&y.1)));
    for (_, t) in &keyed {
        if sees(t) {
            return EdgeSight::Yes(t.clone());
        }
    }
    for i in 1..=refinement {
        let t = Scalar::ratio(i as i64, refinement as i64 + 1);
        if sees(&t) {
            debug_assert!(false, "uniform sample found visibility the critical sweep missed");
            return EdgeSight::Yes(t);
        }
    }
    EdgeSight::NoAtResolution
}

/// Does edge `e` of `P` see `p` from some point `e(t)`?
pub fn edge_sees_point(
    e: EdgeRef,
    p: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
    refinement: usize,
) -> Result<EdgeSight, VisibilityError> {
    if e.0 >= poly.n() {
        return Err(VisibilityError::BadEdge(e.0));
    }
    let (a, b) = poly.edge(e);
    segment_sees_point(a, b, p, poly, spec, refinement, false)
}

/// Default number of uniform cross-check samples for edge queries.
pub const DEFAULT_REFINEMENT: usize = 64;

/// Visible part of one boundary edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceInterval {
    pub t0: Scalar,
    pub t1: Scalar,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryTrace {
    pub source: Point,
    pub spec: VisibilitySpec,
    /// Per edge, sorted disjoint visible sub-intervals.
    pub edges: Vec<Vec<TraceInterval>>,
    /// Maximal connected visible arcs around the whole boundary.
    pub component_count: usize,
}

/// Elementary pieces of an edge: `(lo, hi, is_point)`.
fn elementary(crit: &[Scalar]) -> Vec<(Scalar, Scalar, bool)> {
    let mut out = Vec::with_capacity(2 * crit.len());
    for (i, t) in crit.iter().enumerate() {
        out.push((t.clone(), t.clone(), true));
        if let Some(t1) = crit.get(i + 1) {
            out.push((t.clone(), t1.clone(), false));
        }
    }
    out
}

/// Exact visible portion of `∂P` from `source`.
pub fn boundary_trace(
    source: &Point,
    poly: &Polygon,
    spec: VisibilitySpec,
) -> Result<BoundaryTrace, VisibilityError> {
    require_inside(source, poly)?;
    let mut edges = Vec::with_capacity(poly.n());
    // Cyclic sequence of visibility flags; each edge contributes its pieces
    // without the final endpoint, which is the next edge's first point.
    let mut ring: Vec<bool> = Vec::new();
    for e in poly.edges() {
        let (a, b) = poly.edge(e);
        let crit = critical_params(a, b, source, poly);
        let pieces = elementary(&crit);
        let flags: Vec<bool> = pieces
            .iter()
            .map(|(lo, hi, is_pt)| {
                let t = if *is_pt { lo.clone() } else { Scalar::mid(lo, hi) };
                spec.allows(component_count(source, &a.lerp(b, &t), poly))
            })
            .collect();
        let mut ivs: Vec<TraceInterval> = Vec::new();
        let mut run: Option<TraceInterval> = None;
        for ((lo, hi, is_pt), vis) in pieces.iter().zip(&flags) {
            if *vis {
                match run.as_mut() {
                    Some(r) => {
                        r.t1 = hi.clone();
                        r.closed_hi = *is_pt;
                    }
                    None => {
                        run = Some(TraceInterval {
                            t0: lo.clone(),
                            t1: hi.clone(),
                            closed_lo: *is_pt,
                            closed_hi: *is_pt,
                        })
                    }
                }
            } else if let Some(r) = run.take() {
                ivs.push(r);
            }
        }
        if let Some(r) = run {
            ivs.push(r);
        }
        edges.push(ivs);
        ring.extend_from_slice(&flags[..flags.len() - 1]);
    }
    let component_count = count_cyclic_runs(&ring);
    Ok(BoundaryTrace { source: source.clone(), spec, edges, component_count })
}

fn count_cyclic_runs(flags: &[bool]) -> usize {
    if flags.iter().all(|&f| f) {
        return usize::from(!flags.is_empty());
    }
    let n = flags.len();
    (0..n).filter(|&i| flags[i] && !flags[(i + n - 1) % n]).count()
}
