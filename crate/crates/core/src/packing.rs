//! Exact search for p pairwise-disjoint c-cliques.
//!
//! Backtracking anchored at the least live vertex. When the live vertices
//! number exactly what the remaining cliques need, every one of them must
//! be covered and the anchor's clique is the only branch. Otherwise the
//! anchor is either covered or excluded. Vertices with fewer than c − 1
//! live neighbours are discarded before each step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliquePacking {
    pub cliques: Vec<VertexSet>,
}

impl CliquePacking {
    /// Re-checks disjointness, sizes and cliqueness against `g`.
    pub fn is_valid_for(&self, g: &Graph, p: usize, c: usize) -> bool {
        let mut used = VertexSet::new();
        self.cliques.len() == p
            && self.cliques.iter().all(|q| {
                let ok = q.len() == c
                    && q.last().is_none_or(|v| v < g.n())
                    && q.is_disjoint(&used)
                    && g.is_clique(q);
                used.union_with(q);
                ok
            })
    }

    /// Translates labels through `map` (new label → original label).
    pub fn relabel(&self, map: &[usize]) -> CliquePacking {
        CliquePacking { cliques: self.cliques.iter().map(|q| q.iter().map(|v| map[v]).collect()).collect() }
    }
}

fn check_params(p: usize, c: usize) -> Result<()> {
    if p < 1 || c < 2 {
        return Err(Error::InvalidParams(format!("packing needs p >= 1 and c >= 2, got p={p}, c={c}")));
    }
    Ok(())
}

pub fn find_disjoint_cliques(g: &Graph, p: usize, c: usize) -> Result<Option<CliquePacking>> {
    check_params(p, c)?;
    Ok(find_within(g, &g.vertices(), p, c))
}

/// Packing inside the subgraph induced by `live`, without relabelling.
pub(crate) fn find_within(g: &Graph, live: &VertexSet, p: usize, c: usize) -> Option<CliquePacking> {
    let mut search = Search { g, c, chosen: Vec::with_capacity(p) };
    search.run(live.clone(), p).then(|| CliquePacking { cliques: search.chosen })
}

pub(crate) fn packing_exists_within(g: &Graph, live: &VertexSet, p: usize, c: usize) -> bool {
    let mut search = Search { g, c, chosen: Vec::with_capacity(p) };
    search.run(live.clone(), p)
}

struct Search<'g> {
    g: &'g Graph,
    c: usize,
    chosen: Vec<VertexSet>,
}

impl Search<'_> {
    /// Drops vertices that cannot lie in a c-clique of the live subgraph.
    fn prune(&self, live: &mut VertexSet) -> bool {
        let need = self.c - 1;
        let mut dropped_any = false;
        loop {
            let weak: VertexSet =
                live.iter().filter(|&v| self.g.neighbors(v).intersection_len(live) < need).collect();
            if weak.is_empty() {
                return dropped_any;
            }
            live.subtract(&weak);
            dropped_any = true;
        }
    }

    fn run(&mut self, mut live: VertexSet, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let demand = left * self.c;
        let tight_before = live.len() == demand;
        if self.prune(&mut live) && tight_before {
            return false;
        }
        if live.len() < demand {
            return false;
        }
        let anchor = live.first().expect("live set is non-empty");
        let mut rest = live.clone();
        rest.remove(anchor);
        let candidates = self.g.neighbors(anchor).intersection(&rest);
        let mut clique = vec![anchor];
        if self.extend(&mut clique, candidates, &rest, left) {
            return true;
        }
        // the anchor stays uncovered; only possible with slack
        live.len() > demand && self.run(rest, left)
    }

    /// Grows `clique` to size c from `cand`, ascending, recursing on success.
    fn extend(&mut self, clique: &mut Vec<usize>, cand: VertexSet, rest: &VertexSet, left: usize) -> bool {
        if clique.len() == self.c {
            let q: VertexSet = clique.iter().copied().collect();
            let remaining = rest.difference(&q);
            self.chosen.push(q);
            if self.run(remaining, left - 1) {
                return true;
            }
            self.chosen.pop();
            return false;
        }
        let needed = self.c - clique.len();
        let mut cand = cand;
        while cand.len() >= needed {
            let v = cand.first().unwrap();
            cand.remove(v);
            clique.push(v);
            let next = cand.intersection(self.g.neighbors(v));
            if self.extend(clique, next, rest, left) {
                return true;
            }
            clique.pop();
        }
        false
    }
}

/// Largest instance the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 12;

/// Exhaustive packing test: tries every family of p disjoint c-subsets and
/// checks cliqueness pair by pair. No pruning beyond disjointness.
pub fn oracle_packing_exists(g: &Graph, p: usize, c: usize) -> Result<bool> {
    check_params(p, c)?;
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(Error::OracleBudget(format!(
            "{} vertices, oracle handles at most {ORACLE_MAX_VERTICES}",
            g.n()
        )));
    }
    if p * c > g.n() {
        return Ok(false);
    }
    let mut used = vec![false; g.n()];
    let mut family: Vec<Vec<usize>> = Vec::new();
    Ok(oracle_rec(g, p, c, 0, &mut used, &mut family))
}

fn oracle_rec(
    g: &Graph,
    p: usize,
    c: usize,
    min_first: usize,
    used: &mut Vec<bool>,
    family: &mut Vec<Vec<usize>>,
) -> bool {
    if family.len() == p {
        return family
            .iter()
            .all(|q| q.iter().enumerate().all(|(i, &u)| q[i + 1..].iter().all(|&v| g.has_edge(u, v))));
    }
    // subsets are taken in increasing order of their least element so each
    // unordered family is visited once
    let free: Vec<usize> = (0..g.n()).filter(|&v| !used[v]).collect();
    let mut subset = Vec::with_capacity(c);
    choose(g, p, c, min_first, &free, 0, &mut subset, used, family)
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &Graph,
    p: usize,
    c: usize,
    min_first: usize,
    free: &[usize],
    from: usize,
    subset: &mut Vec<usize>,
    used: &mut Vec<bool>,
    family: &mut Vec<Vec<usize>>,
) -> bool {
    if subset.len() == c {
        for &v in subset.iter() {
            used[v] = true;
        }
        family.push(subset.clone());
        let next_min = subset[0] + 1;
        let found = oracle_rec(g, p, c, next_min, used, family);
        family.pop();
        for &v in subset.iter() {
            used[v] = false;
        }
        return found;
    }
    for i in from..free.len() {
        if subset.is_empty() && free[i] < min_first {
            continue;
        }
        subset.push(free[i]);
        if choose(g, p, c, min_first, free, i + 1, subset, used, family) {
            return true;
        }
        subset.pop();
    }
    false
}
