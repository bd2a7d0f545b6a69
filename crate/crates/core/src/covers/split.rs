use crate::geom::{clean_collinear, clip_vertical, line_intersection, signed_area2_of, Point, Polygon, Scalar, Segment};

use super::{Chain, CoverError, MonotoneView};

/// How the cut segment `l` sits in the two pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LRole {
    EdgeOfLChordOfR,
    ChordOfLEdgeOfR,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub left: Polygon,
    pub right: Polygon,
    /// Vertical cut, from its lower to its upper endpoint.
    pub l: Segment,
    pub l_role: LRole,
    /// 1-based left-to-right label of the input vertex lying on `l`.
    pub pivot: usize,
}

impl SplitResult {
    pub fn x(&self) -> &Scalar {
        &self.l.a.x
    }

    /// `area(L left of l) + area(R right of l)`, twice over.
    pub fn covered_area2(&self) -> Scalar {
        let lp = clip_vertical(self.left.vertices(), self.x(), true);
        let rp = clip_vertical(self.right.vertices(), self.x(), false);
        signed_area2_of(&lp) + signed_area2_of(&rp)
    }
}

/// Glue the triangle spanned by the vertical edge at `x0` and `apex` onto a
/// clipped piece, then drop the vertices that became straight.
fn attach_apex(vs: Vec<Point>, x0: &Scalar, apex: Point) -> Result<Polygon, CoverError> {
    let n = vs.len();
    let i = (0..n)
        .find(|&i| vs[i].x == *x0 && vs[(i + 1) % n].x == *x0)
        .ok_or_else(|| CoverError::Internal("clipped piece has no cut edge".into()))?;
    let mut out = vs;
    out.insert(i + 1, apex);
    Ok(Polygon::new(clean_collinear(out))?)
}

fn cut_segment(vs: &[Point], x0: &Scalar) -> Result<Segment, CoverError> {
    let mut on: Vec<&Point> = vs.iter().filter(|p| p.x == *x0).collect();
    on.sort_by(|a, b| a.cmp_y(b));
    match (on.first(), on.last()) {
        (Some(a), Some(b)) if a != b => Ok(Segment::new((*a).clone(), (*b).clone())?),
        _ => Err(CoverError::Internal("degenerate cut".into())),
    }
}

/// Split a monotone polygon into an `m`-gon `L` and an `(n-m+2)`-gon `R`.
///
/// A vertical line strictly between `p_{m-1}` and `p_m` crosses one edge of
/// each chain. If their extensions meet to the left, `l` is the cross-section
/// through `p_{m-1}`: `L` is everything left of it and `R` the rest plus the
/// triangle between `l` and the extensions. Otherwise `l` runs through `p_m`
/// and the roles swap.
pub fn split_monotone(poly: &Polygon, m: usize) -> Result<SplitResult, CoverError> {
    let view = MonotoneView::lexicographic(poly)?;
    let n = poly.n();
    if m < 3 || m >= n {
        return Err(CoverError::OutOfRange { m, n });
    }
    let (pa, pb) = (view.v(m - 1), view.v(m));
    if pa.x == pb.x {
        return Err(CoverError::XTie(view.idx(m - 1), view.idx(m)));
    }
    let xs = Scalar::mid(&pa.x, &pb.x);
    let (_, fl, fr) = view.chain_edge_at(Chain::Lower, &xs).ok_or_else(|| CoverError::Internal("no lower edge at cut".into()))?;
    let (_, el, er) = view.chain_edge_at(Chain::Upper, &xs).ok_or_else(|| CoverError::Internal("no upper edge at cut".into()))?;
    let apex = line_intersection(poly.vertex(el), poly.vertex(er), poly.vertex(fl), poly.vertex(fr))
        .ok_or(CoverError::ParallelCut)?;

    let vs = poly.vertices();
    if apex.x < xs {
        let x0 = pa.x.clone();
        let left = Polygon::new(clip_vertical(vs, &x0, true))?;
        let right_raw = clip_vertical(vs, &x0, false);
        let l = cut_segment(&right_raw, &x0)?;
        let right = attach_apex(right_raw, &x0, apex)?;
        Ok(SplitResult { left, right, l, l_role: LRole::EdgeOfLChordOfR, pivot: m - 1 })
    } else {
        let x0 = pb.x.clone();
        let right = Polygon::new(clip_vertical(vs, &x0, false))?;
        let left_raw = clip_vertical(vs, &x0, true);
        let l = cut_segment(&left_raw, &x0)?;
        let left = attach_apex(left_raw, &x0, apex)?;
        Ok(SplitResult { left, right, l, l_role: LRole::ChordOfLEdgeOfR, pivot: m })
    }
}
