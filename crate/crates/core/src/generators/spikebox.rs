use rayon::prelude::*;
use serde_json::{json, Value};

use crate::geom::{point_to_json, scalar_from_json, scalar_to_json, GeomError, Point, Polygon, Scalar};
use crate::solver::grid_points;
use crate::visibility::{component_count, VisibilitySpec};

use super::{GenError, Instance};

/// Grid resolution of the certification sweep over `Q`.
const CERT_GRID: usize = 25;
/// Attempts at enlarging `Q` when a line leaves it through a corner.
const CORNER_RETRIES: usize = 8;

/// The line `a x + b y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl Line {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Self {
        Line { a, b, c }
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Self {
        Line::new(a.into(), b.into(), c.into())
    }

    /// `a x + b y - c`: zero on the line.
    pub fn eval(&self, p: &Point) -> Scalar {
        &(&self.a * &p.x) + &(&self.b * &p.y) - &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    fn det(&self, o: &Line) -> Scalar {
        &self.a * &o.b - &o.a * &self.b
    }

    pub fn intersection(&self, o: &Line) -> Option<Point> {
        let det = self.det(o);
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &o.b - &o.c * &self.b) / det.clone();
        let y = (&self.a * &o.c - &o.a * &self.c) / det;
        Some(Point::new(x, y))
    }

    /// Squared distance from `p`.
    pub fn dist2(&self, p: &Point) -> Scalar {
        let e = self.eval(p);
        &e * &e / (&self.a * &self.a + &self.b * &self.b)
    }

    /// Foot of the perpendicular from `p`.
    fn foot(&self, p: &Point) -> Point {
        let k = self.eval(p) / (&self.a * &self.a + &self.b * &self.b);
        Point::new(&p.x - &(&k * &self.a), &p.y - &(&k * &self.b))
    }

    fn dir(&self) -> (Scalar, Scalar) {
        (self.b.clone(), -self.a.clone())
    }

    pub fn to_json(&self) -> Value {
        json!([scalar_to_json(&self.a), scalar_to_json(&self.b), scalar_to_json(&self.c)])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineSet {
    pub lines: Vec<Line>,
}

impl LineSet {
    pub fn new(lines: Vec<Line>) -> Self {
        LineSet { lines }
    }

    /// `{"lines": [[a, b, c], ...]}` with rational strings or integers.
    pub fn from_json(v: &Value) -> Result<Self, GeomError> {
        let arr = v
            .get("lines")
            .and_then(Value::as_array)
            .ok_or_else(|| GeomError::Parse("expected {\"lines\": [[a, b, c], ...]}".into()))?;
        let lines = arr
            .iter()
            .map(|l| match l.as_array().map(Vec::as_slice) {
                Some([a, b, c]) => Ok(Line::new(scalar_from_json(a)?, scalar_from_json(b)?, scalar_from_json(c)?)),
                _ => Err(GeomError::Parse(format!("expected [a, b, c], got {l}"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(LineSet { lines })
    }

    pub fn to_json(&self) -> Value {
        json!({ "lines": self.lines.iter().map(Line::to_json).collect::<Vec<_>>() })
    }

    /// Distinct pairwise intersection points.
    pub fn intersections(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for (i, l) in self.lines.iter().enumerate() {
            for m in &self.lines[i + 1..] {
                if let Some(p) = l.intersection(m) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Minimum number of points stabbing every line, by exhaustive search over
/// intersection points plus one private point per line.
pub fn mlcp_brute_force(ls: &LineSet) -> usize {
    let n = ls.lines.len();
    let mut cands = ls.intersections();
    cands.extend(ls.lines.iter().map(|l| l.foot(&Point::int(0, 0))));
    let masks: Vec<u64> = cands
        .iter()
        .map(|p| (0..n).filter(|&i| ls.lines[i].contains(p)).fold(0u64, |m, i| m | 1 << i))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    fn search(masks: &[u64], start: usize, left: usize, acc: u64, full: u64) -> bool {
        if acc == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..masks.len()).any(|i| search(masks, i + 1, left - 1, acc | masks[i], full))
    }
    (0..=n).find(|&s| search(&masks, 0, s, 0, full)).unwrap_or(n)
}

/// A spike box with its line bookkeeping.
#[derive(Clone, Debug)]
pub struct SpikeBox {
    pub instance: Instance,
    pub lines: LineSet,
    /// Line index of each witness (two central spikes per line).
    pub witness_line: Vec<usize>,
    /// Points on the lines inside `Q`: the intersections and one chord midpoint per line.
    pub line_points: Vec<Point>,
    pub spec: VisibilitySpec,
    pub k: usize,
}

struct Crossing {
    line: usize,
    side: usize,
    /// Distance from the side's start corner, in the counter-clockwise direction.
    s: Scalar,
    at: Point,
    /// Outward direction along the line, scaled to unit outward normal component.
    dir: (Scalar, Scalar),
}

/// Outward normal and counter-clockwise tangent of each side of `Q`, bottom first.
const SIDES: [((i64, i64), (i64, i64)); 4] = [((0, -1), (1, 0)), ((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1))];

fn corners(c: &Point, m: &Scalar) -> [Point; 4] {
    let (lo_x, hi_x) = (&c.x - m, &c.x + m);
    let (lo_y, hi_y) = (&c.y - m, &c.y + m);
    [
        Point::new(lo_x.clone(), lo_y.clone()),
        Point::new(hi_x.clone(), lo_y),
        Point::new(hi_x, hi_y.clone()),
        Point::new(lo_x, hi_y),
    ]
}

/// Where the ray from `p` along `d` (p inside `Q`) leaves the square. `None` at a corner.
fn exit(p: &Point, d: &(Scalar, Scalar), c: &Point, m: &Scalar) -> Option<(usize, Scalar, Point)> {
    let mut hits: Vec<(Scalar, usize)> = Vec::new();
    for (side, ((nx, ny), _)) in SIDES.iter().enumerate() {
        let dn = &d.0 * &Scalar::from_int(*nx) + &d.1 * &Scalar::from_int(*ny);
        if dn.signum() <= 0 {
            continue;
        }
        // Side line: n . x = n . c + m.
        let target = &(&c.x * &Scalar::from_int(*nx) + &c.y * &Scalar::from_int(*ny)) + m;
        let cur = &p.x * &Scalar::from_int(*nx) + &p.y * &Scalar::from_int(*ny);
        hits.push(((target - cur) / dn, side));
    }
    hits.sort();
    if hits.len() > 1 && hits[0].0 == hits[1].0 {
        return None;
    }
    let (t, side) = hits.first()?.clone();
    let at = Point::new(&p.x + &(&t * &d.0), &p.y + &(&t * &d.1));
    let start = &corners(c, m)[side];
    let s = (&at.x - &start.x).abs() + (&at.y - &start.y).abs();
    Some((side, s, at))
}

fn f64_to_scalar_floor(v: f64) -> Scalar {
    const DEN: i64 = 1 << 20;
    Scalar::ratio((v * DEN as f64).floor().max(1.0) as i64, DEN)
}

/// Spike box over `ls` for `k`-transmitters (`k` even): a square `Q` around
/// all intersections, and at each place a line leaves `Q` a narrow central
/// spike along the line flanked by `k/2` longer crown spikes per side. The
/// central tips are the witnesses; each is certified to be
/// `(k/2 + 1)`-visible from a sweep of points of `Q` only when the point is
/// within a small tolerance of its own line.
pub fn gen_spike_box(ls: &LineSet, k: usize) -> Result<SpikeBox, GenError> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(GenError::InvalidParam(format!("spike box needs an even k >= 2, got {k}")));
    }
    if ls.lines.is_empty() {
        return Err(GenError::InvalidLineSet("no lines".into()));
    }
    for (i, l) in ls.lines.iter().enumerate() {
        if l.a.is_zero() && l.b.is_zero() {
            return Err(GenError::InvalidLineSet(format!("line {i} has a zero normal")));
        }
        for (j, o) in ls.lines.iter().enumerate().skip(i + 1) {
            if l.det(o).is_zero() {
                return Err(GenError::InvalidLineSet(format!("lines {i} and {j} are parallel")));
            }
        }
    }
    let crowns = k / 2;
    let spec = VisibilitySpec::components(crowns + 1);
    let inter = ls.intersections();
    let anchors = if inter.is_empty() { vec![ls.lines[0].foot(&Point::int(0, 0))] } else { inter.clone() };
    let min_x = anchors.iter().map(|p| &p.x).min().unwrap().clone();
    let max_x = anchors.iter().map(|p| &p.x).max().unwrap().clone();
    let min_y = anchors.iter().map(|p| &p.y).min().unwrap().clone();
    let max_y = anchors.iter().map(|p| &p.y).max().unwrap().clone();
    let mut centre = Point::new(Scalar::mid(&min_x, &max_x), Scalar::mid(&min_y, &max_y));
    let half = Scalar::max_of(&(&max_x - &min_x), &(&max_y - &min_y)).clone() * Scalar::ratio(1, 2);
    let mut m = &half * &Scalar::from_int(2) + Scalar::one();

    let mut crossings = Vec::new();
    for attempt in 0..=CORNER_RETRIES {
        crossings.clear();
        let mut corner_hit = None;
        for (li, l) in ls.lines.iter().enumerate() {
            let p0 = l.foot(&centre);
            let d = l.dir();
            for d in [d.clone(), (-d.0.clone(), -d.1.clone())] {
                match exit(&p0, &d, &centre, &m) {
                    Some((side, s, at)) => {
                        let (nx, ny) = SIDES[side].0;
                        let dn = &d.0 * &Scalar::from_int(nx) + &d.1 * &Scalar::from_int(ny);
                        let dir = (&d.0 / &dn, &d.1 / &dn);
                        crossings.push(Crossing { line: li, side, s, at, dir });
                    }
                    None => corner_hit = Some(li),
                }
            }
        }
        match corner_hit {
            None => break,
            Some(li) if attempt == CORNER_RETRIES => {
                return Err(GenError::InvalidLineSet(format!("line {li} leaves Q through a corner")));
            }
            Some(_) => {
                // Diagonals through the centre hit corners whatever the size: shift as well.
                centre = Point::new(&centre.x + &(&m * &Scalar::ratio(1, 7 + attempt as i64)), centre.y.clone());
                m = &m * &Scalar::ratio(9, 8) + Scalar::one();
            }
        }
    }
    crossings.sort_by(|a, b| (a.side, &a.s).cmp(&(b.side, &b.s)));

    // Room around each crossing along its side.
    let side_len = &m * &Scalar::from_int(2);
    let mut room = side_len.clone();
    for (i, c) in crossings.iter().enumerate() {
        room = Scalar::min_of(&room, &c.s).clone();
        room = Scalar::min_of(&room, &(&side_len - &c.s)).clone();
        if let Some(n) = crossings.get(i + 1).filter(|n| n.side == c.side) {
            let gap = &n.s - &c.s;
            if gap.is_zero() {
                return Err(GenError::InvalidLineSet("two lines leave Q at the same point".into()));
            }
            room = Scalar::min_of(&room, &gap).clone();
        }
    }
    let lateral = |c: &Crossing| {
        let (_, (ex, ey)) = SIDES[c.side];
        (&c.dir.0 * &Scalar::from_int(ex) + &c.dir.1 * &Scalar::from_int(ey)).abs()
    };
    let max_lat = crossings.iter().map(lateral).max().unwrap_or_else(Scalar::zero) + Scalar::one();
    let len = &room / &(&max_lat * &Scalar::from_int(8));

    // Tolerance: a quarter of the smallest distance from an intersection to a line missing it.
    let mut tol_f = m.to_f64() / 4.0;
    for p in &inter {
        for l in &ls.lines {
            if !l.contains(p) {
                tol_f = tol_f.min(l.dist2(p).to_f64().sqrt() / 4.0);
            }
        }
    }
    let tol = f64_to_scalar_floor(tol_f);
    let spacing_f = tol.to_f64() * len.to_f64() / (16.0 * m.to_f64() * (crowns as f64 + 1.0) * max_lat.to_f64());
    let spacing = f64_to_scalar_floor(spacing_f).min(&len * &Scalar::ratio(1, 4 * (crowns as i64 + 1)));
    let w = &spacing * &Scalar::ratio(1, 4);

    let corner_pts = corners(&centre, &m);
    let mut vs = Vec::new();
    let mut witnesses = Vec::new();
    let mut witness_line = Vec::new();
    let mut ci = 0;
    for side in 0..4 {
        vs.push(corner_pts[side].clone());
        let (_, (ex, ey)) = SIDES[side];
        let (ex, ey) = (Scalar::from_int(ex), Scalar::from_int(ey));
        while ci < crossings.len() && crossings[ci].side == side {
            let c = &crossings[ci];
            for j in -(crowns as i64)..=(crowns as i64) {
                let off = &spacing * &Scalar::from_int(j);
                let l = &len + &(&len * &Scalar::ratio(j.abs(), k as i64));
                let base = Point::new(&c.at.x + &(&off * &ex), &c.at.y + &(&off * &ey));
                let tip = Point::new(&base.x + &(&l * &c.dir.0), &base.y + &(&l * &c.dir.1));
                vs.push(Point::new(&base.x - &(&w * &ex), &base.y - &(&w * &ey)));
                vs.push(tip.clone());
                vs.push(Point::new(&base.x + &(&w * &ex), &base.y + &(&w * &ey)));
                if j == 0 {
                    witnesses.push(tip);
                    witness_line.push(c.line);
                }
            }
            ci += 1;
        }
    }
    let polygon = Polygon::new(vs).map_err(|e| GenError::InvalidLineSet(format!("spikes collide: {e}")))?;

    // Points on the lines inside Q.
    let mut line_points = inter.clone();
    for li in 0..ls.lines.len() {
        let ends: Vec<&Crossing> = crossings.iter().filter(|c| c.line == li).collect();
        line_points.push(ends[0].at.midpoint(&ends[1].at));
    }

    // Certification sweep.
    let q = Polygon::new(corner_pts.to_vec())?;
    let mut probes = grid_points(&q, CERT_GRID);
    probes.extend(line_points.iter().cloned());
    probes.extend(corner_pts.iter().cloned());
    let tol2 = &tol * &tol;
    let violations: Vec<Value> = probes
        .par_iter()
        .flat_map_iter(|x| {
            let polygon = &polygon;
            let witnesses = &witnesses;
            let witness_line = &witness_line;
            let tol2 = &tol2;
            let ls = &ls;
            (0..witnesses.len()).filter_map(move |wi| {
                let line = &ls.lines[witness_line[wi]];
                let near = line.dist2(x) <= *tol2;
                let sees = spec.allows(component_count(x, &witnesses[wi], polygon));
                let must = line.contains(x);
                ((sees && !near) || (must && !sees)).then(|| {
                    json!({ "point": point_to_json(x), "witness": wi, "sees": sees })
                })
            })
        })
        .collect();
    if !violations.is_empty() {
        return Err(GenError::ConstraintUnsatisfied(format!(
            "{} probe/tip pairs break line-restricted visibility, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    let certificate = json!({
        "kind": "line_restricted",
        "claim": "each central tip is seen only from probes of Q within the tolerance of its line, and from every probe on it",
        "components": spec.max_components,
        "tolerance": scalar_to_json(&tol),
        "probes": probes.len(),
        "lines": ls.to_json(),
        "witness_line": witness_line,
    });
    Ok(SpikeBox {
        instance: Instance { family: "spike-box", polygon, witnesses, certificates: vec![certificate] },
        lines: ls.clone(),
        witness_line,
        line_points,
        spec,
        k,
    })
}
