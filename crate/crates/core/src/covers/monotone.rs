use crate::geom::{EdgeRef, Point, Polygon, Scalar};

use super::split::split_monotone;
use super::{
    ceil_bound, map_to_original, opposite, Chain, CoverError, CoverResult, MonotoneView, Transmitter,
    WitnessRegion,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TenGonCase {
    /// `n <= 6`: a single point of the edge sees everything.
    Small,
    /// The opposite edge at `v5` reaches `v_j` with `j >= 7`.
    Reach { j: usize },
    /// `j = 6`: the edge ending at the covering vertex `c` (label 5 or 6).
    Corner { c: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TenGonChoice {
    pub edge: EdgeRef,
    pub case: TenGonCase,
    pub region: WitnessRegion,
    /// Set when the reaching edge ends exactly at `v7`, so its cut with the
    /// vertical through `v7` is only that endpoint.
    pub endpoint_flag: bool,
}

fn at_x(a: &Point, b: &Point, x: &Scalar) -> Point {
    if a.x == b.x {
        return a.clone();
    }
    let t = (x - &a.x) / (&b.x - &a.x);
    a.lerp(b, &t)
}

/// Sub-segment of `ab` with `lo <= x <= hi` (x-ranges are clamped to the edge).
fn slab(a: &Point, b: &Point, lo: &Scalar, hi: &Scalar) -> WitnessRegion {
    let (l, r) = if a.x <= b.x { (a, b) } else { (b, a) };
    let from = if l.x < *lo { at_x(l, r, lo) } else { l.clone() };
    let to = if r.x > *hi { at_x(l, r, hi) } else { r.clone() };
    WitnessRegion { a: from, b: to, open: true }
}

fn point_region(p: Point) -> WitnessRegion {
    WitnessRegion { a: p.clone(), b: p, open: false }
}

fn edge_between(poly: &Polygon, i: usize, j: usize) -> Option<EdgeRef> {
    let n = poly.n();
    if (i + 1) % n == j {
        Some(EdgeRef(i))
    } else if (j + 1) % n == i {
        Some(EdgeRef(j))
    } else {
        None
    }
}

/// One edge 2-transmitter for a monotone polygon with at most ten vertices.
///
/// For `n >= 7` the vertical through `v5` meets an edge `e = v_i v_j` of the
/// other chain. If `j >= 7` that edge is returned; otherwise the segment
/// `v5 v6` cuts off a small polygon covered from `c` in `{v5, v6}` and the
/// chain edge ending at `c` is returned. Every point of `P` is seen from the
/// returned region, which lies strictly between `x(v2)` and `x(v_{n-1})`.
pub fn cover_monotone_10gon(poly: &Polygon) -> Result<TenGonChoice, CoverError> {
    let view = MonotoneView::lexicographic(poly)?;
    let n = poly.n();
    if n > 10 {
        return Err(CoverError::WrongSize { expected: "at most 10".into(), got: n });
    }
    let internal = |m: &str| CoverError::Internal(m.to_string());
    match n {
        3 => {
            let e = edge_between(poly, view.idx(2), view.idx(3)).ok_or_else(|| internal("triangle"))?;
            Ok(TenGonChoice { edge: e, case: TenGonCase::Small, region: point_region(view.v(3).clone()), endpoint_flag: false })
        }
        4 => {
            let x = Scalar::mid(&view.v(2).x, &view.v(3).x);
            let (e, l, r) = view.chain_edge_at(Chain::Lower, &x).ok_or_else(|| internal("quadrilateral"))?;
            let q = at_x(poly.vertex(l), poly.vertex(r), &x);
            Ok(TenGonChoice { edge: e, case: TenGonCase::Small, region: point_region(q), endpoint_flag: false })
        }
        5 => {
            let v3 = view.idx(3);
            let side = match view.chain(v3) {
                Chain::Both => Chain::Upper,
                c => opposite(c),
            };
            let x = view.v(3).x.clone();
            let (e, l, r) = view.chain_edge_at(side, &x).ok_or_else(|| internal("pentagon"))?;
            let q = at_x(poly.vertex(l), poly.vertex(r), &x);
            Ok(TenGonChoice { edge: e, case: TenGonCase::Small, region: point_region(q), endpoint_flag: false })
        }
        6 => {
            let e = edge_between(poly, view.idx(5), view.idx(6)).ok_or_else(|| internal("v5 v6 not adjacent"))?;
            let c = match super::cover_6gon_from_edge(poly, e)? {
                Transmitter::Point(c) => c,
                Transmitter::Edge(_) => return Err(internal("hexagon cover")),
            };
            Ok(TenGonChoice { edge: e, case: TenGonCase::Small, region: point_region(c), endpoint_flag: false })
        }
        _ => ten_gon_general(poly, &view),
    }
}

fn ten_gon_general(poly: &Polygon, view: &MonotoneView) -> Result<TenGonChoice, CoverError> {
    let n = poly.n();
    let internal = |m: String| CoverError::Internal(m);
    for (a, b) in [(4, 5), (5, 6)] {
        if view.v(a).x == view.v(b).x {
            return Err(CoverError::XTie(view.idx(a), view.idx(b)));
        }
    }
    let lo = view.v(2).x.clone();
    let hi = view.v(n - 1).x.clone();
    let i5 = view.idx(5);
    let side = match view.chain(i5) {
        Chain::Both => return Err(internal("v5 is an extreme vertex".into())),
        c => opposite(c),
    };
    let x5 = view.v(5).x.clone();
    let (e, el, er) = view
        .chain_edge_at(side, &x5)
        .ok_or_else(|| internal("no opposite edge at v5".into()))?;
    let (i, j) = (view.lab(el), view.lab(er));
    if i > 4 || j < 6 {
        return Err(internal(format!("opposite edge at v5 spans labels {i}..{j}")));
    }
    if j >= 7 {
        let region = slab(poly.vertex(el), poly.vertex(er), &lo, &hi);
        return Ok(TenGonChoice { edge: e, case: TenGonCase::Reach { j }, region, endpoint_flag: j == 7 });
    }

    // j = 6: the diagonal v5 v6 cuts off the vertices right of it.
    let i6 = view.idx(6);
    let (start, end) = if view.chain(i5) == Chain::Lower { (i5, i6) } else { (i6, i5) };
    let mut piece = Vec::new();
    let mut k = start;
    loop {
        piece.push(poly.vertex(k).clone());
        if k == end {
            break;
        }
        k = (k + 1) % n;
    }
    let right = Polygon::new(piece)?;
    let c = if right.n() == 6 {
        let a = right.index_of(view.v(5)).ok_or_else(|| internal("v5 lost".into()))?;
        let b = right.index_of(view.v(6)).ok_or_else(|| internal("v6 lost".into()))?;
        let diag = edge_between(&right, a, b).ok_or_else(|| internal("v5 v6 not an edge of the cut piece".into()))?;
        match super::cover_6gon_from_edge(&right, diag)? {
            Transmitter::Point(p) => p,
            Transmitter::Edge(_) => return Err(internal("hexagon cover".into())),
        }
    } else {
        view.v(5).clone()
    };
    let ci = poly.index_of(&c).ok_or_else(|| internal("covering vertex lost".into()))?;
    let c_label = view.lab(ci);
    let edge = match view.chain(ci) {
        Chain::Lower => EdgeRef(ci - 1),
        Chain::Upper => EdgeRef(ci),
        Chain::Both => return Err(internal("covering vertex is extreme".into())),
    };
    let (a, b) = poly.edge(edge);
    let left_end = if a.x <= b.x { a } else { b };
    let left_label = view.lab(poly.index_of(left_end).unwrap_or(ci));
    if left_label > 4 {
        return Err(internal(format!("edge into v{c_label} starts at v{left_label}")));
    }
    let region = slab(a, b, &lo, &hi);
    Ok(TenGonChoice { edge, case: TenGonCase::Corner { c: c_label }, region, endpoint_flag: false })
}

fn check_side(region: &WitnessRegion, x: &Scalar, left_of: bool) -> bool {
    let pts = [&region.a.x, &region.b.x];
    if left_of {
        pts.iter().all(|v| *v < x || (region.open && *v == x && region.a != region.b))
    } else {
        pts.iter().all(|v| *v > x || (region.open && *v == x && region.a != region.b))
    }
}

/// Edge 2-transmitter cover of a monotone polygon with at most
/// `ceil((n-2)/8)` edges.
///
/// Repeatedly splits off a 10-gon, covers it with one edge and continues on
/// the remainder. Each chosen edge is mapped back to the input edge that
/// contains its witness region.
pub fn cover_monotone(poly: &Polygon) -> Result<CoverResult, CoverError> {
    let view = MonotoneView::lexicographic(poly)?;
    let n = poly.n();
    for k in 1..n {
        if view.v(k).x == view.v(k + 1).x {
            return Err(CoverError::XTie(view.idx(k), view.idx(k + 1)));
        }
    }
    let mut transmitters = Vec::new();
    let mut witness = Vec::new();
    let mut current = poly.clone();
    let mut last_cut: Option<Scalar> = None;

    let mut push = |region: WitnessRegion, current_cut: &Option<Scalar>, next_cut: Option<&Scalar>| -> Result<(), CoverError> {
        if let Some(x) = current_cut {
            if !check_side(&region, x, false) {
                return Err(CoverError::Internal("witness region crosses the previous cut".into()));
            }
        }
        if let Some(x) = next_cut {
            if !check_side(&region, x, true) {
                return Err(CoverError::Internal("witness region crosses the cut".into()));
            }
        }
        let e = map_to_original(poly, &region.a, &region.b)
            .ok_or_else(|| CoverError::Internal("chosen edge is not part of an input edge".into()))?;
        transmitters.push(Transmitter::Edge(e));
        witness.push(Some(region));
        Ok(())
    };

    while current.n() > 10 {
        let mut split = None;
        for m in (3..=10).rev() {
            match split_monotone(&current, m) {
                Ok(s) => {
                    split = Some(s);
                    break;
                }
                Err(CoverError::ParallelCut) => continue,
                Err(e) => return Err(e),
            }
        }
        let split = split.ok_or(CoverError::ParallelCut)?;
        let choice = cover_monotone_10gon(&split.left)?;
        push(choice.region, &last_cut, Some(split.x()))?;
        last_cut = Some(split.x().clone());
        current = split.right;
    }
    let choice = cover_monotone_10gon(&current)?;
    push(choice.region, &last_cut, None)?;

    Ok(CoverResult { transmitters, witness, bound: ceil_bound(n, 8), n })
}
