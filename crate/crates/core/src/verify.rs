//! Deciding whether a graph is k-fault-tolerant for p disjoint c-cliques.
//!
//! Only removal sets of size exactly k are enumerated: if every k-set
//! leaves a packing, so does every smaller set, since a superset can
//! always be removed and its packing reused.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combin::{self, binomial, next_combination, Combinations};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::packing::{self, CliquePacking};
use crate::set::VertexSet;

/// The triple (k, p, c): tolerate k vertex faults while keeping p disjoint K_c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FTParams {
    pub k: usize,
    pub p: usize,
    pub c: usize,
}

impl FTParams {
    pub fn new(k: usize, p: usize, c: usize) -> Result<Self> {
        if p < 1 || c < 2 {
            return Err(Error::InvalidParams(format!("need p >= 1 and c >= 2, got k={k}, p={p}, c={c}")));
        }
        Ok(Self { k, p, c })
    }

    /// pc + k, the order of a minimum graph.
    pub fn order(&self) -> usize {
        self.p * self.c + self.k
    }

    /// Edge count of the hub construction: (C(c,2) + ck)p + C(k,2).
    pub fn star_edge_count(&self) -> u64 {
        let (k, p, c) = (self.k as u64, self.p as u64, self.c as u64);
        (c * (c - 1) / 2 + c * k) * p + k * k.saturating_sub(1) / 2
    }

    /// Lower bound ⌈(pc + k)(c + k − 1) / 2⌉ from the minimum degree.
    pub fn degree_sum_bound(&self) -> u64 {
        let n = self.order() as u64;
        (n * (self.c + self.k - 1) as u64).div_ceil(2)
    }

    pub fn require_c_at_least_3(&self) -> Result<()> {
        if self.c < 3 {
            return Err(Error::Premise(format!("requires c >= 3, got c={}", self.c)));
        }
        Ok(())
    }

    pub fn require_k_below_c(&self) -> Result<()> {
        if self.k >= self.c {
            return Err(Error::Premise(format!("requires k < c, got k={}, c={}", self.k, self.c)));
        }
        Ok(())
    }

    pub fn require_order(&self, g: &Graph) -> Result<()> {
        if g.n() != self.order() {
            return Err(Error::Premise(format!(
                "requires |V| = pc + k = {}, graph has {} vertices",
                self.order(),
                g.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FTParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-FT({}K_{})", self.k, self.p, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub removed: VertexSet,
    pub packing: CliquePacking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FTVerdict {
    pub params: FTParams,
    pub holds: bool,
    /// Lexicographically least failing removal set.
    pub counterexample: Option<VertexSet>,
    /// Removal sets examined, in lexicographic order, up to and including
    /// the counterexample.
    pub witness_count: u64,
    pub sample_witnesses: Option<Vec<Witness>>,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub exec: Exec,
    /// Keep packings for the first this-many removal sets.
    pub retain_witnesses: usize,
}

impl VerifyOptions {
    pub fn sequential() -> Self {
        Self { exec: Exec::Sequential, ..Self::default() }
    }
}

pub fn verify_ft(g: &Graph, params: FTParams) -> Result<FTVerdict> {
    verify_ft_with(g, params, &VerifyOptions::default())
}

const CHUNK: u64 = 64;

pub fn verify_ft_with(g: &Graph, params: FTParams, opts: &VerifyOptions) -> Result<FTVerdict> {
    let FTParams { k, p, c } = FTParams::new(params.k, params.p, params.c)?;
    let n = g.n();
    if n < params.order() {
        let counterexample: VertexSet = (0..k.min(n)).collect();
        return Ok(FTVerdict {
            params,
            holds: false,
            counterexample: Some(counterexample),
            witness_count: 1,
            sample_witnesses: None,
            reason: Some(format!("|V| = {n} < pc + k = {}", params.order())),
        });
    }
    let total = binomial(n, k);
    let fails = |s: &[usize]| {
        let live = g.vertices().difference(&s.iter().copied().collect());
        !packing::packing_exists_within(g, &live, p, c)
    };

    // A vertex of degree below c + k − 1 on exactly pc + k vertices pins down
    // a failing set directly; only sets before it still need scanning.
    let limit = if n == params.order() { screened_failure(g, params) } else { None };
    let scan_to = limit.as_ref().map_or(total, |s| combin::rank(n, s));

    let first_fail = exec::find_first_in_chunks(opts.exec, scan_to, CHUNK, |lo, hi| {
        let mut s = combin::unrank(n, k, lo);
        let mut r = lo;
        loop {
            if fails(&s) {
                return Some(s);
            }
            r += 1;
            if r >= hi || !next_combination(&mut s, n) {
                return None;
            }
        }
    })
    .or(limit);

    let sample_witnesses = (opts.retain_witnesses > 0).then(|| {
        Combinations::new(n, k)
            .take(opts.retain_witnesses)
            .map_while(|s| {
                let removed: VertexSet = s.iter().copied().collect();
                let live = g.vertices().difference(&removed);
                packing::find_within(g, &live, p, c).map(|packing| Witness { removed, packing })
            })
            .collect()
    });

    Ok(match first_fail {
        Some(s) => FTVerdict {
            params,
            holds: false,
            witness_count: combin::rank(n, &s) + 1,
            reason: Some(format!("G - {s:?} contains no {p} disjoint K_{c}")),
            counterexample: Some(s.into_iter().collect()),
            sample_witnesses,
        },
        None => FTVerdict {
            params,
            holds: true,
            counterexample: None,
            witness_count: total,
            sample_witnesses,
            reason: None,
        },
    })
}

/// Least failing k-set forced by some vertex of degree < c + k − 1 on
/// pc + k vertices: delete as much of its neighbourhood as possible.
fn screened_failure(g: &Graph, params: FTParams) -> Option<Vec<usize>> {
    let FTParams { k, c, .. } = params;
    let need = c + k - 1;
    (0..g.n())
        .filter(|&x| g.degree(x) < need)
        .map(|x| {
            let nb = g.neighbors(x);
            if nb.len() >= k {
                nb.iter().take(k).collect::<Vec<_>>()
            } else {
                let mut s: VertexSet = nb.clone();
                s.extend((0..g.n()).filter(|&v| v != x && !nb.contains(v)).take(k - nb.len()));
                s.to_vec()
            }
        })
        .min()
}

/// Reference verifier: every removal set of size at most k, each checked with
/// the brute-force packing oracle.
pub fn oracle_verify_ft(g: &Graph, params: FTParams) -> Result<bool> {
    let FTParams { k, p, c } = FTParams::new(params.k, params.p, params.c)?;
    for size in 0..=k.min(g.n()) {
        for s in Combinations::new(g.n(), size) {
            let rest = g.remove_vertices(&s.iter().copied().collect())?;
            if !packing::oracle_packing_exists(&rest.graph, p, c)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// k = 0: the graph must be pK_c itself.
    Trivial,
    /// c >= 3, k = 1: the hub construction is optimal.
    HubConstructionTight,
    /// c = 2, k = 1: the odd cycle.
    OddCycle,
    /// c = 2, even k, 2p + k <= 2k − 2: the Harary-graph construction.
    HararyConstruction,
    /// Hub construction count, an upper bound only.
    HubConstructionUpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimumCandidacy {
    pub params: FTParams,
    pub candidate: bool,
    /// Whether the bound is known to be the true minimum.
    pub proven: bool,
    pub bound: u64,
    pub bound_source: BoundSource,
    pub vertices: usize,
    pub edges: usize,
    pub holds: bool,
    pub note: String,
}

/// Best edge count known for minimum graphs with these parameters.
pub fn best_known_bound(params: FTParams) -> (u64, BoundSource) {
    let FTParams { k, p, c } = params;
    let (k64, p64) = (k as u64, p as u64);
    match (k, c) {
        (0, _) => (params.star_edge_count(), BoundSource::Trivial),
        (1, 2) => (2 * p64 + 1, BoundSource::OddCycle),
        (1, _) => (params.star_edge_count(), BoundSource::HubConstructionTight),
        (_, 2) if k % 2 == 0 && 2 * p + k <= 2 * k - 2 => {
            ((2 * p64 + k64) * (k64 + 1) / 2, BoundSource::HararyConstruction)
        }
        _ => (params.star_edge_count(), BoundSource::HubConstructionUpperBound),
    }
}

pub fn is_minimum_candidate(g: &Graph, params: FTParams) -> Result<MinimumCandidacy> {
    let params = FTParams::new(params.k, params.p, params.c)?;
    let (bound, source) = best_known_bound(params);
    let proven = source != BoundSource::HubConstructionUpperBound;
    let order_ok = g.n() == params.order();
    let holds = order_ok && verify_ft(g, params)?.holds;
    let at_bound = g.m() as u64 == bound;
    let candidate = order_ok && holds && at_bound;
    let note = if !order_ok {
        format!("order {} differs from pc + k = {}", g.n(), params.order())
    } else if !holds {
        format!("not {params}")
    } else if !at_bound {
        format!("{} edges, best known bound is {bound}", g.m())
    } else if proven {
        format!("minimum {params}: {bound} edges is optimal")
    } else {
        format!("candidate at bound {bound}, minimality unproven")
    };
    Ok(MinimumCandidacy {
        params,
        candidate,
        proven,
        bound,
        bound_source: source,
        vertices: g.n(),
        edges: g.m(),
        holds,
        note,
    })
}
