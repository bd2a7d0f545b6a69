use serde_json::{json, Value};

use crate::geom::{Point, Polygon, Scalar};
use crate::solver::{build_matrix, certify_lower_bound, edge_candidates, lower_bound_from_matrix, point_candidates, DEFAULT_NODE_LIMIT};
use crate::visibility::{component_count, VisibilitySpec};

use super::{GenError, Instance};

/// Grid resolution of the candidate sweep used to certify point rings.
pub const RING_CERT_GRID: usize = 25;

/// Index of the apex within a gadget's vertex list.
const APEX: usize = 2;

/// Point-ring gadgets in the local frame of gadget 0, in thousandths: `(u, v)`
/// with `v` radial and `u` counter-clockwise tangential. Vertex 2 is the
/// apex, at the end of a thin needle; the needle's mouth is vertices 1 and 3.
/// Each copy is rotated by `2 pi i / g`. The shapes were tuned numerically
/// per gadget count and are certified exactly on every emission.
const POINT_GADGETS: &[(usize, [(i64, i64); 5])] = &[
    (3, [(-4389, -3238), (-1704, 4691), (-3425, 2987), (-1468, 5199), (2104, -118)]),
    (4, [(-2345, -1819), (-3171, 2628), (958, 4001), (-133, 3600), (2240, 3696)]),
    (5, [(-3049, -395), (-2892, 3042), (756, 3958), (-246, 3697), (1704, 4019)]),
    (6, [(-2908, 641), (-2484, 3383), (503, 3823), (-205, 3699), (1443, 3941)]),
];

/// Edge-ring gadgets, same frame and conventions, six vertices each.
const EDGE_GADGETS: &[(usize, [(i64, i64); 6])] = &[
    (3, [(-3307, 4370), (-2327, 5108), (2003, 4425), (603, 4423), (4864, 1773), (-1733, 4469)]),
    (4, [(-1636, 4944), (4095, 5499), (3806, 2689), (67, 5103), (5004, 1836), (422, 4843)]),
    (5, [(-3030, -345), (-1670, 8079), (5062, 6403), (1906, 7099), (6935, 4435), (-2019, 5425)]),
    (6, [(-943, 323), (1967, 5524), (2959, 4371), (2254, 4984), (5377, 2124), (1630, 3351)]),
    (7, [(-2670, 314), (1020, 6727), (2481, 5242), (820, 5999), (2970, 4979), (385, 5502)]),
    (8, [(611, 1637), (-5394, 4993), (-2708, 6538), (-4965, 5148), (-871, 7185), (-161, 2705)]),
];

/// Ring construction parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetRingParams {
    /// Number of gadgets, at least 3.
    pub gadget_count: usize,
    /// Uniform scale of the ring.
    pub radius: Scalar,
    /// Needle length relative to the tuned shape.
    pub apex_depth: Scalar,
    /// Extra vertices, at most 4 for the point ring and 5 for the edge ring.
    pub subdivision: usize,
}

impl GadgetRingParams {
    pub fn new(gadget_count: usize) -> Self {
        GadgetRingParams { gadget_count, radius: Scalar::one(), apex_depth: Scalar::one(), subdivision: 0 }
    }

    pub fn with_subdivision(mut self, s: usize) -> Self {
        self.subdivision = s;
        self
    }
}

/// Exact rational rotation close to `2 pi i / g`: a point on the unit circle
/// from a rational half-angle tangent.
fn rotation(i: usize, g: usize) -> (Scalar, Scalar) {
    let theta = 2.0 * std::f64::consts::PI * i as f64 / g as f64;
    // Fold into (-pi/2, pi/2] around 0 or pi so the tangent stays small.
    let flip = theta > std::f64::consts::FRAC_PI_2 && theta <= 3.0 * std::f64::consts::FRAC_PI_2;
    let phi = if flip { theta - std::f64::consts::PI } else if theta > std::f64::consts::PI { theta - 2.0 * std::f64::consts::PI } else { theta };
    const DEN: i64 = 100_000;
    let t = Scalar::ratio(((phi / 2.0).tan() * DEN as f64).round() as i64, DEN);
    let t2 = &t * &t;
    let d = Scalar::one() + t2.clone();
    let c = (Scalar::one() - t2) / d.clone();
    let s = (Scalar::from_int(2) * t) / d;
    if flip {
        (-c, -s)
    } else {
        (c, s)
    }
}

fn place(shape: &[(i64, i64)], p: &GadgetRingParams) -> (Vec<Point>, Vec<Point>) {
    let g = p.gadget_count;
    let k = Scalar::ratio(1, 1000);
    let mut local: Vec<(Scalar, Scalar)> = shape.iter().map(|&(u, v)| (&Scalar::from_int(u) * &k, &Scalar::from_int(v) * &k)).collect();
    // Stretch the needle about its mouth.
    let mouth_u = Scalar::mid(&local[APEX - 1].0, &local[APEX + 1].0);
    let mouth_v = Scalar::mid(&local[APEX - 1].1, &local[APEX + 1].1);
    local[APEX] = (
        &mouth_u + &(&p.apex_depth * &(&local[APEX].0 - &mouth_u)),
        &mouth_v + &(&p.apex_depth * &(&local[APEX].1 - &mouth_v)),
    );
    let mut vs = Vec::with_capacity(g * shape.len());
    let mut apexes = Vec::with_capacity(g);
    for i in 0..g {
        let (c, s) = rotation(i, g);
        for (j, (u, v)) in local.iter().enumerate() {
            let x = &(v * &c) - &(u * &s);
            let y = &(v * &s) + &(u * &c);
            let q = Point::new(&x * &p.radius, &y * &p.radius);
            if j == APEX {
                apexes.push(q.clone());
            }
            vs.push(q);
        }
    }
    (vs, apexes)
}

/// Insert `count` extra vertices, one per gadget starting at gadget 0, on the
/// gadget's longest edge (its next longest on a second round): the midpoint
/// pushed off the edge by `sign` times a sixty-fourth of the edge length.
/// Returns the vertices and their gadgets.
fn subdivide(vs: &[Point], per: usize, count: usize, sign: i64) -> (Vec<Point>, Vec<usize>) {
    let n = vs.len();
    let g = n / per;
    let ranked = |gi: usize| {
        let mut es: Vec<usize> = (gi * per..(gi + 1) * per).collect();
        es.sort_by(|&a, &b| {
            let la = vs[a].dist2_f64(&vs[(a + 1) % n]);
            let lb = vs[b].dist2_f64(&vs[(b + 1) % n]);
            lb.partial_cmp(&la).unwrap_or(std::cmp::Ordering::Equal)
        });
        es
    };
    let chosen: Vec<usize> = (0..count).map(|c| ranked(c % g)[(c / g) % per]).collect();
    let mut out = Vec::with_capacity(n + count);
    let mut owner = Vec::with_capacity(n + count);
    for i in 0..n {
        out.push(vs[i].clone());
        owner.push(i / per);
        if chosen.contains(&i) {
            let (a, b) = (&vs[i], &vs[(i + 1) % n]);
            let m = a.midpoint(b);
            let f = Scalar::ratio(sign, 64);
            let nx = -(&b.y - &a.y);
            let ny = &b.x - &a.x;
            out.push(Point::new(&m.x + &(&f * &nx), &m.y + &(&f * &ny)));
            owner.push(i / per);
        }
    }
    (out, owner)
}

fn check_params(p: &GadgetRingParams, max_sub: usize) -> Result<(), GenError> {
    if p.gadget_count < 3 {
        return Err(GenError::InvalidParam(format!("a ring needs at least 3 gadgets, got {}", p.gadget_count)));
    }
    if p.subdivision > max_sub {
        return Err(GenError::InvalidParam(format!("at most {max_sub} subdivision vertices, got {}", p.subdivision)));
    }
    if p.radius.signum() <= 0 || p.apex_depth.signum() <= 0 {
        return Err(GenError::InvalidParam("radius and apex depth must be positive".into()));
    }
    Ok(())
}

fn point_certificate(poly: &Polygon, apexes: &[Point]) -> Result<Value, String> {
    let cands = point_candidates(poly, RING_CERT_GRID);
    let lb = certify_lower_bound(poly, apexes, &cands, VisibilitySpec::two(), DEFAULT_NODE_LIMIT);
    if let Some((c, row)) = lb.matrix.rows.iter().enumerate().find(|(_, r)| r.iter().filter(|&&b| b).count() > 1) {
        let seen: Vec<usize> = (0..row.len()).filter(|&w| row[w]).collect();
        return Err(format!("candidate {} sees apexes {seen:?}", lb.matrix.candidates[c].to_json()));
    }
    if !lb.unseen.is_empty() {
        return Err(format!("apexes {:?} are seen by no candidate", lb.unseen));
    }
    Ok(json!({
        "kind": "point_disjoint",
        "claim": "no candidate point 2-sees two apexes",
        "grid": RING_CERT_GRID,
        "candidates": cands.len(),
        "lower_bound": lb.lb,
        "pairwise_disjoint": lb.pairwise_disjoint(),
    }))
}

/// `owner[e]` is the gadget of polygon edge `e`; `shared[w]` are the two
/// vertices gadget `w` shares with its neighbours.
fn edge_certificate(poly: &Polygon, apexes: &[Point], owner: &[usize], shared: &[(Point, Point)]) -> Result<Value, String> {
    let cands = edge_candidates(poly);
    let m = build_matrix(poly, &cands, apexes, VisibilitySpec::two());
    let mut sees = Vec::new();
    for (w, apex) in apexes.iter().enumerate() {
        let col = m.column(w);
        if let Some(&e) = col.iter().find(|&&e| owner[e] != w) {
            return Err(format!("edge {e} of gadget {} sees apex {w}", owner[e]));
        }
        if col.is_empty() {
            return Err(format!("no edge sees apex {w}"));
        }
        for v in [&shared[w].0, &shared[w].1] {
            if VisibilitySpec::two().allows(component_count(v, apex, poly)) {
                return Err(format!("shared vertex {v:?} sees apex {w}"));
            }
        }
        sees.push(col);
    }
    let lb = lower_bound_from_matrix(m, DEFAULT_NODE_LIMIT).lb;
    Ok(json!({
        "kind": "edge_private",
        "claim": "every edge seeing an apex belongs to that apex's gadget; shared gadget endpoints see no apex",
        "edges_seeing_apex": sees,
        "lower_bound": lb,
    }))
}

/// Vertices of the ring plus, for each, the gadget it belongs to.
type Placed = (Vec<Point>, Vec<usize>);

fn emit(
    family: &'static str,
    shape: &[(i64, i64)],
    p: &GadgetRingParams,
    certify: impl Fn(&Polygon, &[Point], &Placed) -> Result<Value, String>,
) -> Result<Instance, GenError> {
    let per = shape.len();
    let (base, apexes) = place(shape, p);
    let mut last = String::new();
    for sign in [1, -1] {
        let placed = if p.subdivision == 0 {
            let owner = (0..base.len()).map(|i| i / per).collect();
            (base.clone(), owner)
        } else {
            subdivide(&base, per, p.subdivision, sign)
        };
        match Polygon::new(placed.0.clone()) {
            Ok(polygon) => match certify(&polygon, &apexes, &placed) {
                Ok(cert) => return Ok(Instance { family, polygon, witnesses: apexes, certificates: vec![cert] }),
                Err(e) => last = e,
            },
            Err(e) => last = e.to_string(),
        }
        if p.subdivision == 0 {
            break;
        }
    }
    Err(GenError::ConstraintUnsatisfied(last))
}

/// Ring of `g` five-vertex gadgets whose apexes have pairwise disjoint
/// 2-visibility regions; `n = 5g + subdivision`. Certified over the point
/// candidate set at grid 25.
pub fn gen_point_lb_ring(p: &GadgetRingParams) -> Result<Instance, GenError> {
    check_params(p, 4)?;
    let shape = POINT_GADGETS
        .iter()
        .find(|(g, _)| *g == p.gadget_count)
        .map(|(_, s)| s)
        .ok_or_else(|| GenError::ConstraintUnsatisfied(format!("no tuned point gadget for g = {}", p.gadget_count)))?;
    emit("point-ring", shape, p, |poly, apexes, _| point_certificate(poly, apexes))
}

/// Ring of `g` six-edge gadgets where every edge 2-seeing an apex belongs to
/// that apex's gadget; `n = 6g + subdivision`.
pub fn gen_edge_lb_ring(p: &GadgetRingParams) -> Result<Instance, GenError> {
    check_params(p, 5)?;
    let shape = EDGE_GADGETS
        .iter()
        .find(|(g, _)| *g == p.gadget_count)
        .map(|(_, s)| s)
        .ok_or_else(|| GenError::ConstraintUnsatisfied(format!("no tuned edge gadget for g = {}", p.gadget_count)))?;
    let per = shape.len();
    let g = p.gadget_count;
    emit("edge-ring", shape, p, |poly, apexes, (vs, gadget)| {
        let owner: Vec<usize> = poly
            .edges()
            .map(|e| poly.edge(e).0)
            .map(|a| vs.iter().position(|v| v == a).map_or(usize::MAX, |i| gadget[i]))
            .collect();
        let first = |gi: usize| vs[gadget.iter().position(|&o| o == gi % g).unwrap_or(0)].clone();
        let _ = per;
        let shared: Vec<(Point, Point)> = (0..g).map(|w| (first(w), first(w + 1))).collect();
        edge_certificate(poly, apexes, &owner, &shared)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_are_on_the_unit_circle() {
        for g in 3..=12 {
            for i in 0..g {
                let (c, s) = rotation(i, g);
                assert_eq!(&c * &c + &s * &s, Scalar::one());
                let th = 2.0 * std::f64::consts::PI * i as f64 / g as f64;
                assert!((c.to_f64() - th.cos()).abs() < 1e-4 && (s.to_f64() - th.sin()).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn point_ring_three() {
        let inst = gen_point_lb_ring(&GadgetRingParams::new(3)).unwrap();
        assert_eq!(inst.polygon.n(), 15);
        assert_eq!(inst.witnesses.len(), 3);
        assert_eq!(inst.certificates[0]["lower_bound"], 3);
    }

    #[test]
    fn too_few_gadgets() {
        assert!(matches!(gen_point_lb_ring(&GadgetRingParams::new(2)), Err(GenError::InvalidParam(_))));
    }
}
