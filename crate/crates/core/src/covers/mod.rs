//! Constructive covers by point and edge 2-transmitters.

mod mo;
mod monotone;
mod small;
mod split;


use serde_json::{json, Value};

use crate::geom::{on_segment, orientation, point_from_json, point_to_json, EdgeRef, GeomError, Orientation, Point, Polygon};

pub use mo::{cover_mo, cover_mo_12gon, mo_labels};
pub use monotone::{cover_monotone, cover_monotone_10gon, TenGonChoice, TenGonCase};
pub use small::{cover_5gon, cover_6gon_from_edge, ear_vertices};
pub use split::{split_monotone, LRole, SplitResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("NOT_MONOTONE: {0}")]
    NotMonotone(String),
    #[error("NOT_ORTHOGONAL: edge {0} is not axis-parallel")]
    NotOrthogonal(usize),
    #[error("expected {expected} vertices, got {got}")]
    WrongSize { expected: String, got: usize },
    #[error("split index m={m} out of range for n={n}")]
    OutOfRange { m: usize, n: usize },
    #[error("vertices {0} and {1} share an x-coordinate where a strict gap is required")]
    XTie(usize, usize),
    #[error("cut edges are parallel; the split has no apex")]
    ParallelCut,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Transmitter {
    Point(Point),
    Edge(EdgeRef),
}

impl Transmitter {
    pub fn to_json(&self) -> Value {
        match self {
            Transmitter::Point(p) => json!({ "point": point_to_json(p) }),
            Transmitter::Edge(e) => json!({ "edge": e.0 }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, GeomError> {
        if let Some(i) = v.get("edge").and_then(Value::as_u64) {
            return Ok(Transmitter::Edge(EdgeRef(i as usize)));
        }
        if let Some(p) = v.get("point") {
            return Ok(Transmitter::Point(point_from_json(p)?));
        }
        Err(GeomError::Parse(format!("not a transmitter: {v}")))
    }
}

/// The part of a chosen edge from which the construction guarantees sight:
/// the closed segment `a..b`, or its relative interior when `open`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRegion {
    pub a: Point,
    pub b: Point,
    pub open: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverResult {
    pub transmitters: Vec<Transmitter>,
    /// One entry per transmitter; `None` when the producer gives no contract.
    pub witness: Vec<Option<WitnessRegion>>,
    pub bound: usize,
    pub n: usize,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.transmitters.len()
    }

    pub fn edges(&self) -> Vec<EdgeRef> {
        self.transmitters
            .iter()
            .filter_map(|t| match t {
                Transmitter::Edge(e) => Some(*e),
                Transmitter::Point(_) => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "transmitters": self.transmitters.iter().map(Transmitter::to_json).collect::<Vec<_>>(),
            "bound": self.bound,
            "n": self.n,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GeomError> {
        let ts = v
            .get("transmitters")
            .and_then(Value::as_array)
            .ok_or_else(|| GeomError::Parse("missing \"transmitters\"".into()))?
            .iter()
            .map(Transmitter::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let get = |k: &str| v.get(k).and_then(Value::as_u64).unwrap_or(0) as usize;
        Ok(CoverResult { witness: vec![None; ts.len()], transmitters: ts, bound: get("bound"), n: get("n") })
    }
}

/// `ceil((n - 2) / d)` for `n >= 3`.
pub fn ceil_bound(n: usize, d: usize) -> usize {
    (n.saturating_sub(2)).div_ceil(d).max(1)
}

/// Which monotone chain a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Chain {
    Lower,
    Upper,
    /// The leftmost and rightmost vertices belong to both chains.
    Both,
}

/// Monotone bookkeeping: vertices in left-to-right order and chain membership.
pub(crate) struct MonotoneView<'a> {
    pub poly: &'a Polygon,
    /// Polygon indices sorted by the left-to-right label order.
    pub order: Vec<usize>,
    /// Label (0-based) of each polygon index.
    pub label: Vec<usize>,
    /// Index of the lexicographically largest vertex; lower chain is `0..=h`.
    pub h: usize,
}

impl<'a> MonotoneView<'a> {
    /// Labels by `(x, y)`.
    pub fn lexicographic(poly: &'a Polygon) -> Result<Self, CoverError> {
        Self::build(poly, true)
    }

    /// Labels by `x`, breaking ties by left-to-right traversal of the chain
    /// that holds both vertices.
    pub fn chain_order(poly: &'a Polygon) -> Result<Self, CoverError> {
        Self::build(poly, false)
    }

    fn build(poly: &'a Polygon, lex: bool) -> Result<Self, CoverError> {
        if !poly.is_x_monotone() {
            return Err(CoverError::NotMonotone(format!(
                "vertex chains from {} to {} are not x-sorted",
                poly.vertex(0),
                poly.vertex(poly.lex_max_index())
            )));
        }
        let n = poly.n();
        let h = poly.lex_max_index();
        let vs = poly.vertices();
        // Position along a left-to-right walk of the vertex's own chain.
        let walk = |i: usize| if i <= h { i } else { n - i + h };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            vs[i].cmp_x(&vs[j]).then_with(|| {
                if lex {
                    vs[i].cmp_y(&vs[j])
                } else {
                    walk(i).cmp(&walk(j))
                }
            })
        });
        let mut label = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            label[i] = k;
        }
        Ok(MonotoneView { poly, order, label, h })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Vertex with 1-based label `k`.
    pub fn v(&self, k: usize) -> &Point {
        self.poly.vertex(self.order[k - 1])
    }

    /// Polygon index of the vertex with 1-based label `k`.
    pub fn idx(&self, k: usize) -> usize {
        self.order[k - 1]
    }

    /// 1-based label of polygon index `i`.
    pub fn lab(&self, i: usize) -> usize {
        self.label[i] + 1
    }

    pub fn chain(&self, i: usize) -> Chain {
        if i == 0 || i == self.h {
            Chain::Both
        } else if i < self.h {
            Chain::Lower
        } else {
            Chain::Upper
        }
    }

    /// Edges of the given chain, each as `(edge, left index, right index)`.
    pub fn chain_edges(&self, c: Chain) -> Vec<(EdgeRef, usize, usize)> {
        let n = self.n();
        match c {
            Chain::Lower => (0..self.h).map(|i| (EdgeRef(i), i, i + 1)).collect(),
            Chain::Upper => (self.h..n).map(|i| (EdgeRef(i), (i + 1) % n, i)).collect(),
            Chain::Both => Vec::new(),
        }
    }

    /// Edge on chain `c` whose closed x-range contains `x` with its left
    /// endpoint strictly left of `x`.
    pub fn chain_edge_at(&self, c: Chain, x: &crate::geom::Scalar) -> Option<(EdgeRef, usize, usize)> {
        self.chain_edges(c).into_iter().find(|&(_, l, r)| {
            let (pl, pr) = (self.poly.vertex(l), self.poly.vertex(r));
            pl.x < *x && *x <= pr.x
        })
    }
}

pub(crate) fn opposite(c: Chain) -> Chain {
    match c {
        Chain::Lower => Chain::Upper,
        Chain::Upper => Chain::Lower,
        Chain::Both => Chain::Both,
    }
}

/// Find the edge of `original` that contains the sub-segment `a..b` of a
/// piece edge (collinear and containing both points).
pub(crate) fn map_to_original(original: &Polygon, a: &Point, b: &Point) -> Option<EdgeRef> {
    original.edges().find(|&e| {
        let (p, q) = original.edge(e);
        orientation(p, q, a) == Orientation::Collinear
            && orientation(p, q, b) == Orientation::Collinear
            && on_segment(p, q, a)
            && on_segment(p, q, b)
    })
}
