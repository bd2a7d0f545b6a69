use serde::{Deserialize, Serialize};

use super::CoverMatrix;

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Ok,
    Infeasible,
    Timeout,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetCoverSolution {
    pub status: SolveStatus,
    /// Chosen candidate indices, ascending. Best found so far on timeout.
    pub chosen: Vec<usize>,
    /// Proven lower bound on the optimum.
    pub lower_bound: usize,
    /// Witnesses seen by no candidate (infeasible instances only).
    pub unseen: Vec<usize>,
    pub nodes: u64,
}

impl SetCoverSolution {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn and_not_count(&self, mask: &Bits) -> usize {
        self.0.iter().zip(&mask.0).map(|(a, m)| (a & !m).count_ones() as usize).sum()
    }

    fn or_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }

    fn intersects(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }
}

struct Reduced {
    /// Original candidate index of each kept row.
    rows: Vec<usize>,
    /// Kept row sets over kept witnesses.
    sets: Vec<Bits>,
    /// Kept candidate rows per kept witness.
    cols: Vec<Vec<usize>>,
    nw: usize,
}

/// Drop dominated witnesses (seen by a superset of another's candidates) and
/// dominated candidates (seeing a subset of another's witnesses).
fn reduce(m: &CoverMatrix) -> Result<Reduced, Vec<usize>> {
    let nc = m.n_candidates();
    let nw = m.rows.first().map_or(0, Vec::len);
    let mut colsets: Vec<Bits> = (0..nw)
        .map(|w| {
            let mut b = Bits::zeros(nc);
            for c in 0..nc {
                if m.rows[c][w] {
                    b.set(c);
                }
            }
            b
        })
        .collect();
    let unseen: Vec<usize> = (0..nw).filter(|&w| colsets[w].count() == 0).collect();
    if !unseen.is_empty() {
        return Err(unseen);
    }
    let mut keep_w: Vec<usize> = Vec::new();
    for w in 0..nw {
        let dominated = (0..nw).any(|o| {
            o != w && colsets[o].subset_of(&colsets[w]) && (colsets[o] != colsets[w] || o < w)
        });
        if !dominated {
            keep_w.push(w);
        }
    }
    colsets = keep_w.iter().map(|&w| colsets[w].clone()).collect();
    let nkw = keep_w.len();
    let rowsets: Vec<Bits> = (0..nc)
        .map(|c| {
            let mut b = Bits::zeros(nkw);
            for (k, cs) in colsets.iter().enumerate() {
                if cs.get(c) {
                    b.set(k);
                }
            }
            b
        })
        .collect();
    let mut rows = Vec::new();
    for c in 0..nc {
        if rowsets[c].count() == 0 {
            continue;
        }
        let dominated = (0..nc).any(|o| {
            o != c && rowsets[c].subset_of(&rowsets[o]) && (rowsets[c] != rowsets[o] || o < c)
        });
        if !dominated {
            rows.push(c);
        }
    }
    let sets: Vec<Bits> = rows.iter().map(|&c| rowsets[c].clone()).collect();
    let cols: Vec<Vec<usize>> = (0..nkw).map(|w| (0..rows.len()).filter(|&r| sets[r].get(w)).collect()).collect();
    Ok(Reduced { rows, sets, cols, nw: nkw })
}

/// Greedy cover (largest number of newly seen witnesses, lowest index on ties).
pub fn greedy_cover(m: &CoverMatrix) -> Option<Vec<usize>> {
    let r = reduce(m).ok()?;
    let chosen = greedy(&r, &Bits::zeros(r.nw))?;
    let mut out: Vec<usize> = chosen.into_iter().map(|i| r.rows[i]).collect();
    out.sort_unstable();
    Some(out)
}

fn greedy(r: &Reduced, start: &Bits) -> Option<Vec<usize>> {
    let mut covered = start.clone();
    let mut chosen = Vec::new();
    while covered.count() < r.nw {
        let (best, gain) = (0..r.sets.len())
            .map(|i| (i, r.sets[i].and_not_count(&covered)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
        if gain == 0 {
            return None;
        }
        covered.or_assign(&r.sets[best]);
        chosen.push(best);
    }
    Some(chosen)
}

/// Lower bound for the uncovered witnesses: a greedily packed set of
/// witnesses no two of which share a candidate.
fn packing_bound(r: &Reduced, covered: &Bits) -> usize {
    let mut order: Vec<usize> = (0..r.nw).filter(|&w| !covered.get(w)).collect();
    order.sort_by_key(|&w| (r.cols[w].len(), w));
    let mut used = Bits::zeros(r.sets.len());
    let mut count = 0;
    for w in order {
        if r.cols[w].iter().all(|&c| !used.get(c)) {
            for &c in &r.cols[w] {
                used.set(c);
            }
            count += 1;
        }
    }
    count
}

struct Search<'a> {
    r: &'a Reduced,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn go(&mut self, covered: &Bits, chosen: &mut Vec<usize>) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.timed_out = true;
            return;
        }
        let Some(w) = (0..self.r.nw).filter(|&w| !covered.get(w)).min_by_key(|&w| (self.r.cols[w].len(), w)) else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        if chosen.len() + packing_bound(self.r, covered) >= self.best.len() {
            return;
        }
        let mut branch: Vec<usize> = self.r.cols[w].clone();
        branch.sort_by_key(|&c| (std::cmp::Reverse(self.r.sets[c].and_not_count(covered)), c));
        for c in branch {
            let mut next = covered.clone();
            next.or_assign(&self.r.sets[c]);
            chosen.push(c);
            self.go(&next, chosen);
            chosen.pop();
        }
    }
}

/// Exact minimum set cover by branch and bound on the uncovered witness with
/// the fewest candidates, seeded with the greedy solution and pruned by a
/// disjoint-witness packing bound.
pub fn min_cover(m: &CoverMatrix, node_limit: u64) -> SetCoverSolution {
    let r = match reduce(m) {
        Ok(r) => r,
        Err(unseen) => {
            return SetCoverSolution { status: SolveStatus::Infeasible, chosen: vec![], lower_bound: 0, unseen, nodes: 0 }
        }
    };
    let empty = Bits::zeros(r.nw);
    let root_lb = packing_bound(&r, &empty);
    let seed = greedy(&r, &empty).unwrap_or_default();
    let mut s = Search { r: &r, best: seed, nodes: 0, limit: node_limit, timed_out: false };
    if s.best.len() > root_lb {
        s.go(&empty, &mut Vec::new());
    }
    let mut chosen: Vec<usize> = s.best.iter().map(|&i| r.rows[i]).collect();
    chosen.sort_unstable();
    let status = if s.timed_out { SolveStatus::Timeout } else { SolveStatus::Ok };
    let lower_bound = if s.timed_out { root_lb } else { chosen.len() };
    SetCoverSolution { status, chosen, lower_bound, unseen: vec![], nodes: s.nodes }
}

/// Witness indices (into the matrix) of a maximal greedy packing: pairwise
/// seen by no common candidate.
pub(crate) fn disjoint_packing(m: &CoverMatrix) -> Vec<usize> {
    let nc = m.n_candidates();
    let nw = m.rows.first().map_or(0, Vec::len);
    let cols: Vec<Bits> = (0..nw)
        .map(|w| {
            let mut b = Bits::zeros(nc);
            (0..nc).filter(|&c| m.rows[c][w]).for_each(|c| b.set(c));
            b
        })
        .collect();
    let mut order: Vec<usize> = (0..nw).collect();
    order.sort_by_key(|&w| (cols[w].count(), w));
    let mut picked: Vec<usize> = Vec::new();
    for w in order {
        if picked.iter().all(|&p| !cols[p].intersects(&cols[w])) {
            picked.push(w);
        }
    }
    picked.sort_unstable();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(rows: &[Vec<bool>]) -> Option<usize> {
        let nc = rows.len();
        let nw = rows.first().map_or(0, Vec::len);
        (0u32..(1 << nc))
            .filter(|mask| (0..nw).all(|w| (0..nc).any(|c| mask >> c & 1 == 1 && rows[c][w])))
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    #[test]
    fn small_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let nc = rng.gen_range(1..10);
            let nw = rng.gen_range(1..14);
            let rows: Vec<Vec<bool>> = (0..nc).map(|_| (0..nw).map(|_| rng.gen_bool(0.3)).collect()).collect();
            let sol = min_cover(&CoverMatrix::from_rows(rows.clone()), DEFAULT_NODE_LIMIT);
            match brute(&rows) {
                Some(k) => {
                    assert_eq!(sol.status, SolveStatus::Ok);
                    assert_eq!(sol.size(), k);
                    assert!((0..nw).all(|w| sol.chosen.iter().any(|&c| rows[c][w])));
                }
                None => assert_eq!(sol.status, SolveStatus::Infeasible),
            }
        }
    }

    #[test]
    fn timeout_reports_best_and_bound() {
        let rows: Vec<Vec<bool>> = (0..12).map(|c| (0..12).map(|w| (c * 7 + w * 3) % 5 < 2).collect()).collect();
        let sol = min_cover(&CoverMatrix::from_rows(rows), 1);
        assert!(sol.lower_bound <= sol.size());
    }
}
