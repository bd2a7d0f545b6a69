use crate::geom::{clip_vertical, EdgeRef, Polygon};

use super::{ceil_bound, map_to_original, opposite, Chain, CoverError, CoverResult, MonotoneView, Transmitter};

fn check_orthogonal(poly: &Polygon) -> Result<(), CoverError> {
    match poly.edges().find(|&e| {
        let (a, b) = poly.edge(e);
        a.x != b.x && a.y != b.y
    }) {
        Some(e) => Err(CoverError::NotOrthogonal(e.0)),
        None => Ok(()),
    }
}

/// Left-to-right labels for a monotone orthogonal polygon: the two endpoints
/// of each vertical edge are adjacent, ordered along their chain. Requires
/// distinct x-coordinates for distinct vertical edges.
pub fn mo_labels(poly: &Polygon) -> Result<Vec<usize>, CoverError> {
    let view = labelled(poly)?;
    Ok(view.order.clone())
}

fn labelled(poly: &Polygon) -> Result<MonotoneView<'_>, CoverError> {
    check_orthogonal(poly)?;
    let view = MonotoneView::chain_order(poly)?;
    let n = poly.n();
    for k in 1..=n / 2 {
        if view.v(2 * k - 1).x != view.v(2 * k).x {
            return Err(CoverError::Internal(format!("labels {} and {} are not a vertical edge", 2 * k - 1, 2 * k)));
        }
        if 2 * k < n && view.v(2 * k).x == view.v(2 * k + 1).x {
            return Err(CoverError::XTie(view.idx(2 * k), view.idx(2 * k + 1)));
        }
    }
    Ok(view)
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

/// One edge 2-transmitter for a monotone orthogonal polygon with at most 12
/// vertices, never its leftmost or rightmost edge.
pub fn cover_mo_12gon(poly: &Polygon) -> Result<EdgeRef, CoverError> {
    let n = poly.n();
    if !(4..=12).contains(&n) {
        return Err(CoverError::WrongSize { expected: "4..=12".into(), got: n });
    }
    let view = labelled(poly)?;
    if n <= 6 {
        // Vertex 0 is the lower-left corner; edge 0 is the bottom horizontal edge.
        return Ok(EdgeRef(0));
    }
    let internal = |m: String| CoverError::Internal(m);
    let (i5, i6) = (view.idx(5), view.idx(6));
    let c5 = view.chain(i5);
    if c5 == Chain::Both || view.chain(i6) != c5 {
        return Err(internal("v5 v6 is not an inner vertical edge".into()));
    }
    let x5 = &view.v(5).x;
    let (e, _, er) = view
        .chain_edge_at(opposite(c5), x5)
        .ok_or_else(|| internal("no opposite edge at v5".into()))?;
    let je = view.lab(er);
    if je >= 8 {
        return Ok(e);
    }
    let ey = &poly.vertex(er).y;
    let (y5, y6) = (&view.v(5).y, &view.v(6).y);
    let v6_on_cut = (y5 <= y6 && y6 <= ey) || (ey <= y6 && y6 <= y5);
    if v6_on_cut {
        // v6 faces the opposite chain; the horizontal edge leaving it also
        // extends past the cut.
        let g = match c5 {
            Chain::Lower => EdgeRef(i6),
            _ => EdgeRef((i6 + n - 1) % n),
        };
        let (a, b) = poly.edge(g);
        let right = if a.x >= b.x { a } else { b };
        let jg = view.lab(poly.index_of(right).unwrap_or(0));
        if jg >= 8 {
            return Ok(g);
        }
        return Err(internal(format!("neither edge leaving the left part reaches v8 (e ends at v{je}, g at v{jg})")));
    }
    if n == 8 {
        return Ok(e);
    }
    edge_between(poly, view.idx(7), view.idx(8)).ok_or_else(|| internal("v7 v8 is not an edge".into()))
}

/// Edge 2-transmitter cover of a monotone orthogonal polygon with at most
/// `ceil((n-2)/10)` edges: cut at the sixth vertical edge, cover the left
/// 12-gon with one edge, continue on the rest.
pub fn cover_mo(poly: &Polygon) -> Result<CoverResult, CoverError> {
    labelled(poly)?;
    let n = poly.n();
    let mut transmitters = Vec::new();
    let mut current = poly.clone();
    let internal = |m: String| CoverError::Internal(m);
    let mut pick = |piece: &Polygon| -> Result<(), CoverError> {
        let e = cover_mo_12gon(piece)?;
        let (a, b) = piece.edge(e);
        let orig = map_to_original(poly, a, b).ok_or_else(|| internal("chosen edge is not part of an input edge".into()))?;
        transmitters.push(Transmitter::Edge(orig));
        Ok(())
    };
    while current.n() > 12 {
        let view = labelled(&current)?;
        let x6 = view.v(11).x.clone();
        let q = Polygon::new(clip_vertical(current.vertices(), &x6, true))?;
        let rest = Polygon::new(clip_vertical(current.vertices(), &x6, false))?;
        if q.n() != 12 || rest.n() + 10 != current.n() {
            return Err(internal(format!("cut produced {} and {} vertices from {}", q.n(), rest.n(), current.n())));
        }
        pick(&q)?;
        current = rest;
    }
    pick(&current)?;
    let witness = vec![None; transmitters.len()];
    Ok(CoverResult { transmitters, witness, bound: ceil_bound(n, 10), n })
}
