use serde_json::json;

use crate::geom::{Point, Polygon, Scalar};
use crate::solver::{build_matrix, edge_candidates};
use crate::visibility::VisibilitySpec;

use super::{GenError, Instance};

/// Witnesses sit this far (as `1/COMB_EPS_DEN`) below their apex.
pub const COMB_EPS_DEN: i64 = 1000;

/// Horizontal period between consecutive teeth.
const PERIOD: i64 = 48;
/// Apex height of a witness tooth.
const TOOTH: i64 = 64;
/// Height of the two blockers between consecutive teeth.
const BLOCKER: i64 = 128;
/// Height of the floor bump separating the blockers.
const BUMP: i64 = 8;
/// Depth of the lower-chain notch under each gap (doubled on odd gaps).
const NOTCH: i64 = 8;

/// An x-monotone comb with `9l - 6` vertices: `l` witness teeth separated by
/// pairs of tall blockers, one lower-chain vertex per gap. No edge sees
/// witnesses from two different teeth. All x-coordinates are distinct.
pub fn gen_monotone_comb(l: usize) -> Result<Instance, GenError> {
    if l == 0 {
        return Err(GenError::InvalidParam("comb needs l >= 1".into()));
    }
    let li = l as i64;
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for i in 0..li {
        let x0 = PERIOD * i;
        upper.push(Point::int(x0, TOOTH));
        if i + 1 < li {
            for (dx, y) in [(8, 0), (15, BLOCKER), (17, 0), (24, BUMP), (31, 0), (33, BLOCKER), (40, 0)] {
                upper.push(Point::int(x0 + dx, y));
            }
            let depth = if i % 2 == 0 { NOTCH } else { 2 * NOTCH };
            lower.push(Point::int(x0 + 25, -depth));
        }
    }
    let mut vs = vec![Point::int(-8, 0)];
    vs.extend(lower);
    vs.push(Point::int(PERIOD * (li - 1) + 8, 0));
    upper.reverse();
    vs.extend(upper);
    let polygon = Polygon::new(vs)?;
    let witnesses: Vec<Point> = (0..li)
        .map(|i| Point::new(Scalar::from_int(PERIOD * i), Scalar::from_int(TOOTH) - Scalar::ratio(1, COMB_EPS_DEN)))
        .collect();

    let m = build_matrix(&polygon, &edge_candidates(&polygon), &witnesses, VisibilitySpec::two());
    if let Some((e, row)) = m.rows.iter().enumerate().find(|(_, r)| r.iter().filter(|&&b| b).count() > 1) {
        let seen: Vec<usize> = (0..row.len()).filter(|&w| row[w]).collect();
        return Err(GenError::ConstraintUnsatisfied(format!("edge {e} sees witnesses {seen:?}")));
    }
    let sees: Vec<Vec<usize>> = (0..witnesses.len()).map(|w| m.column(w)).collect();
    Ok(Instance {
        family: "comb",
        certificates: vec![json!({
            "kind": "edge_disjoint",
            "claim": "no edge 2-sees two witnesses",
            "edges_seeing_witness": sees,
        })],
        polygon,
        witnesses,
    })
}
