use serde_json::{json, Value};

use crate::covers::Transmitter;
use crate::geom::{point_to_json, Point, Polygon};
use crate::visibility::VisibilitySpec;

use super::setcover::{disjoint_packing, min_cover, SolveStatus};
use super::{build_matrix, CoverMatrix};

#[derive(Clone, Debug)]
pub struct LowerBound {
    pub lb: usize,
    pub status: SolveStatus,
    pub matrix: CoverMatrix,
    /// Candidate indices of an optimal cover of the designated witnesses.
    pub optimum: Vec<usize>,
    /// Witness pairs `(i, j)`, `i < j`, that no candidate sees together.
    pub disjoint_pairs: Vec<(usize, usize)>,
    /// A largest-found set of witnesses pairwise sharing no candidate.
    pub packing: Vec<usize>,
    /// Witnesses that no candidate sees.
    pub unseen: Vec<usize>,
}

impl LowerBound {
    /// True when no candidate sees two designated witnesses.
    pub fn pairwise_disjoint(&self) -> bool {
        let w = self.matrix.n_witnesses();
        self.disjoint_pairs.len() == w * w.saturating_sub(1) / 2
    }

    pub fn certificate(&self) -> Value {
        let m = &self.matrix;
        json!({
            "witnesses": m.witnesses.iter().map(point_to_json).collect::<Vec<_>>(),
            "candidates": m.candidates.iter().map(Transmitter::to_json).collect::<Vec<_>>(),
            "optimum": self.optimum,
            "disjoint_pairs": self.disjoint_pairs,
            "pairwise_disjoint": self.pairwise_disjoint(),
            "packing": self.packing,
            "sees": (0..m.n_witnesses()).map(|w| m.column(w)).collect::<Vec<_>>(),
            "note": "lower bound is exact over the designated witnesses; the candidate set is finite",
        })
    }
}

/// Minimum number of candidates needed to see every designated witness.
pub fn certify_lower_bound(
    poly: &Polygon,
    designated: &[Point],
    candidates: &[Transmitter],
    spec: VisibilitySpec,
    node_limit: u64,
) -> LowerBound {
    let matrix = build_matrix(poly, candidates, designated, spec);
    from_matrix(matrix, node_limit)
}

pub fn from_matrix(matrix: CoverMatrix, node_limit: u64) -> LowerBound {
    let sol = min_cover(&matrix, node_limit);
    let nw = matrix.n_witnesses();
    let nc = matrix.n_candidates();
    let mut disjoint_pairs = Vec::new();
    for i in 0..nw {
        for j in (i + 1)..nw {
            if !(0..nc).any(|c| matrix.rows[c][i] && matrix.rows[c][j]) {
                disjoint_pairs.push((i, j));
            }
        }
    }
    let packing = disjoint_packing(&matrix);
    LowerBound {
        lb: sol.lower_bound,
        status: sol.status,
        optimum: sol.chosen,
        unseen: sol.unseen,
        disjoint_pairs,
        packing,
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{edge_candidates, DEFAULT_NODE_LIMIT};

    #[test]
    fn convex_needs_one() {
        let p = Polygon::from_ints(&[(0, 0), (4, 0), (5, 3), (1, 4)]).unwrap();
        let w = vec![Point::int(1, 1), Point::int(3, 2), Point::int(2, 3)];
        let lb = certify_lower_bound(&p, &w, &edge_candidates(&p), VisibilitySpec::two(), DEFAULT_NODE_LIMIT);
        assert_eq!(lb.lb, 1);
        assert_eq!(lb.status, SolveStatus::Ok);
        assert!(lb.disjoint_pairs.is_empty());
    }

    #[test]
    fn identity_matrix() {
        let rows = (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect();
        let lb = from_matrix(CoverMatrix::from_rows(rows), DEFAULT_NODE_LIMIT);
        assert_eq!(lb.lb, 3);
        assert!(lb.pairwise_disjoint());
        assert_eq!(lb.packing, vec![0, 1, 2]);
    }
}
