//! Structural consequences of fault tolerance, checked one by one.
//!
//! Every audit returns an [`AuditReport`] that aggregates one record per
//! check: how many instances were examined and the first violation found.
//! Violations carry enough data to be re-checked against the graph.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::blocks;
use crate::chordal::{chordality, Chordality};
use crate::combin::{binomial, Combinations};
use crate::connectivity::{components_within, edge_connectivity, is_connected, is_separator, vertex_connectivity};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::packing::find_within;
use crate::set::VertexSet;
use crate::verify::{verify_ft, FTParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LowDegree { vertex: usize, degree: usize, required: usize },
    NoClique { vertex: usize, removed: VertexSet, size: usize },
    NotAClique { set: VertexSet, missing: (usize, usize) },
    ComponentOrder { separator: VertexSet, component: VertexSet, order: usize },
    QuotaSum { separator: VertexSet, sum: usize, expected: usize },
    ComponentNotFaultTolerant { separator: VertexSet, component: VertexSet, counterexample: Option<VertexSet> },
    NoCliqueIntoComponent { separator: VertexSet, vertex: usize, component: VertexSet },
    NotFull { separator: VertexSet, component: VertexSet, neighborhood: VertexSet },
    LowConnectivity { value: usize, required: usize },
    NotChordal { chordless_cycle: Vec<usize> },
    CliqueSize { part: VertexSet, expected: usize },
    SeparatorSize { adhesion: VertexSet, expected: usize },
    Order { vertices: usize, expected: String },
    EdgeCount { edges: usize, expected: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub examined: u64,
    pub violations: u64,
    pub first_violation: Option<Violation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl AuditReport {
    pub fn new() -> Self {
        Self { passed: true, checks: Vec::new() }
    }

    fn record(&mut self, check: &'static str, property: &'static str, violation: Option<Violation>) {
        let idx = match self.checks.iter().position(|r| r.check == check) {
            Some(i) => i,
            None => {
                self.checks.push(CheckRecord {
                    check,
                    property,
                    passed: true,
                    examined: 0,
                    violations: 0,
                    first_violation: None,
                });
                self.checks.len() - 1
            }
        };
        let rec = &mut self.checks[idx];
        rec.examined += 1;
        if let Some(v) = violation {
            rec.passed = false;
            rec.violations += 1;
            self.passed = false;
            if rec.first_violation.is_none() {
                rec.first_violation = Some(v);
            }
        }
    }

    /// Appends `other`, combining records with the same check id.
    pub fn merge(&mut self, other: AuditReport) {
        for rec in other.checks {
            match self.checks.iter_mut().find(|r| r.check == rec.check) {
                Some(mine) => {
                    mine.examined += rec.examined;
                    mine.violations += rec.violations;
                    mine.passed &= rec.passed;
                    if mine.first_violation.is_none() {
                        mine.first_violation = rec.first_violation;
                    }
                }
                None => self.checks.push(rec),
            }
        }
        self.passed = self.checks.iter().all(|r| r.passed);
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|r| r.check == id)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().filter_map(|r| r.first_violation.as_ref())
    }
}

fn premises(g: &Graph, params: FTParams) -> Result<FTParams> {
    let params = FTParams::new(params.k, params.p, params.c)?;
    params.require_c_at_least_3()?;
    params.require_order(g)?;
    Ok(params)
}

/// Whether `x` lies in a c-clique avoiding `removed`.
fn in_clique_avoiding(g: &Graph, x: usize, removed: &VertexSet, c: usize) -> bool {
    let cand = g.neighbors(x).difference(removed);
    find_within(g, &cand, 1, c - 1).is_some()
}

#[derive(Clone, Copy, Debug)]
pub struct BasicAuditOptions {
    /// Removal sets sampled per vertex for the post-removal membership check.
    pub samples_per_vertex: usize,
    /// Check every removal set when there are at most this many per vertex.
    pub exhaustive_limit: u64,
    pub seed: u64,
}

impl Default for BasicAuditOptions {
    fn default() -> Self {
        Self { samples_per_vertex: 200, exhaustive_limit: 1000, seed: 0x5eed }
    }
}

pub fn audit_basic(g: &Graph, params: FTParams) -> Result<AuditReport> {
    audit_basic_with(g, params, &BasicAuditOptions::default())
}

/// Degree at least c + k − 1, membership in a K_c, and membership in a K_c
/// after removing k other vertices (sampled).
pub fn audit_basic_with(g: &Graph, params: FTParams, opts: &BasicAuditOptions) -> Result<AuditReport> {
    let FTParams { k, c, .. } = premises(g, params)?;
    let n = g.n();
    let mut report = AuditReport::new();
    let required = c + k - 1;
    for x in 0..n {
        let violation = (g.degree(x) < required).then(|| Violation::LowDegree { vertex: x, degree: g.degree(x), required });
        report.record("min-degree", "every vertex has degree at least c + k - 1", violation);
    }
    for x in 0..n {
        let violation = (!in_clique_avoiding(g, x, &VertexSet::new(), c))
            .then(|| Violation::NoClique { vertex: x, removed: VertexSet::new(), size: c });
        report.record("kc-membership", "every vertex lies in a K_c", violation);
    }
    let per_vertex = binomial(n - 1, k);
    for x in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        let sets: Vec<VertexSet> = if per_vertex <= opts.exhaustive_limit {
            Combinations::new(n - 1, k).map(|s| s.into_iter().map(|i| others[i]).collect()).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (x as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            (0..opts.samples_per_vertex)
                .map(|_| sample(&mut rng, n - 1, k).into_iter().map(|i| others[i]).collect())
                .collect()
        };
        for s in sets {
            let violation =
                (!in_clique_avoiding(g, x, &s, c)).then(|| Violation::NoClique { vertex: x, removed: s, size: c });
            report.record(
                "kc-membership-after-removal",
                "every vertex lies in a K_c of G - S for every k-set S avoiding it",
                violation,
            );
        }
    }
    Ok(report)
}

/// Size-k vertex sets whose removal disconnects the graph, in lexicographic order.
pub fn separators_of_size(g: &Graph, k: usize, exec: Exec) -> Vec<VertexSet> {
    let sets: Vec<VertexSet> = Combinations::new(g.n(), k).map(|s| s.into_iter().collect()).collect();
    exec::map_vec(exec, sets, |s| is_separator(g, &s).then_some(s)).into_iter().flatten().collect()
}

/// Closed neighbourhoods of degree-(c + k − 1) vertices are cliques, and so is
/// W ∪ A for every size-k separator W and every component A of order c.
pub fn audit_low_degree_cliques(g: &Graph, params: FTParams) -> Result<AuditReport> {
    let FTParams { k, c, .. } = premises(g, params)?;
    let required = c + k - 1;
    let mut report = AuditReport::new();
    for x in 0..g.n() {
        let violation = (g.degree(x) < required).then(|| Violation::LowDegree { vertex: x, degree: g.degree(x), required });
        report.record("min-degree", "every vertex has degree at least c + k - 1", violation);
    }
    for x in (0..g.n()).filter(|&x| g.degree(x) == required) {
        let closed = g.closed_neighborhood(x)?;
        let violation = g.missing_edge_in(&closed).map(|missing| Violation::NotAClique { set: closed, missing });
        report.record(
            "low-degree-closed-neighborhood",
            "N[x] is a clique whenever d(x) = c + k - 1",
            violation,
        );
    }
    for w in separators_of_size(g, k, Exec::default()) {
        let rest = g.vertices().difference(&w);
        for comp in components_within(g, &rest).into_iter().filter(|a| a.len() == c) {
            let set = comp.union(&w);
            let violation = g.missing_edge_in(&set).map(|missing| Violation::NotAClique { set, missing });
            report.record(
                "separator-small-component",
                "W ∪ A is a clique for a size-k separator W and a component A of order c",
                violation,
            );
        }
    }
    Ok(report)
}

/// λ ≥ c + k − 1 and κ ≥ k.
pub fn audit_connectivity(g: &Graph, params: FTParams) -> Result<AuditReport> {
    let FTParams { k, c, .. } = premises(g, params)?;
    let mut report = AuditReport::new();
    let lambda = edge_connectivity(g);
    report.record(
        "edge-connectivity",
        "G is (c + k - 1)-edge-connected",
        (lambda < c + k - 1).then_some(Violation::LowConnectivity { value: lambda, required: c + k - 1 }),
    );
    let kappa = vertex_connectivity(g);
    report.record(
        "vertex-connectivity",
        "G is k-connected",
        (kappa < k).then_some(Violation::LowConnectivity { value: kappa, required: k }),
    );
    Ok(report)
}

/// Checks what a size-k separator W forces: component orders divisible by
/// c summing to pc, each G[A ∪ W] fault tolerant for its share, every
/// x ∈ W completing a K_c inside each component, and every component full.
pub fn audit_separator(g: &Graph, params: FTParams, w: &VertexSet) -> Result<AuditReport> {
    let FTParams { k, p, c } = premises(g, params)?;
    params.require_k_below_c()?;
    g.check_set(w)?;
    if w.len() != k {
        return Err(Error::Premise(format!("separator must have k = {k} vertices, got {}", w.len())));
    }
    if !is_separator(g, w) {
        return Err(Error::NotASeparator(w.to_vec()));
    }
    let mut report = AuditReport::new();
    let comps = components_within(g, &g.vertices().difference(w));
    let mut quota = 0;
    for a in &comps {
        let divisible = a.len() % c == 0;
        report.record(
            "component-order",
            "every component of G - W has order divisible by c",
            (!divisible).then(|| Violation::ComponentOrder {
                separator: w.clone(),
                component: a.clone(),
                order: a.len(),
            }),
        );
        quota += a.len() / c;
    }
    report.record(
        "component-quota",
        "the component quotas |A_i| / c sum to p",
        (quota != p || comps.iter().any(|a| a.len() % c != 0)).then(|| Violation::QuotaSum {
            separator: w.clone(),
            sum: quota,
            expected: p,
        }),
    );
    for a in comps.iter().filter(|a| a.len() % c == 0 && !a.is_empty()) {
        let sub = g.induced(&a.union(w))?;
        let verdict = verify_ft(&sub.graph, FTParams::new(k, a.len() / c, c)?)?;
        report.record(
            "component-fault-tolerance",
            "G[A_i ∪ W] is k-FT(p_i K_c)",
            (!verdict.holds).then(|| Violation::ComponentNotFaultTolerant {
                separator: w.clone(),
                component: a.clone(),
                counterexample: verdict.counterexample.map(|s| sub.to_original(&s)),
            }),
        );
    }
    for x in w {
        for a in &comps {
            let cand = g.neighbors(x).intersection(a);
            let ok = find_within(g, &cand, 1, c - 1).is_some();
            report.record(
                "separator-vertex-clique",
                "each x in W completes a K_c with c - 1 vertices of every component",
                (!ok).then(|| Violation::NoCliqueIntoComponent {
                    separator: w.clone(),
                    vertex: x,
                    component: a.clone(),
                }),
            );
        }
    }
    for a in &comps {
        let nb = g.set_neighborhood(a)?;
        report.record(
            "full-component",
            "every component of G - W has neighbourhood exactly W",
            (&nb != w).then(|| Violation::NotFull {
                separator: w.clone(),
                component: a.clone(),
                neighborhood: nb,
            }),
        );
    }
    Ok(report)
}

/// Runs [`audit_separator`] over every size-k separator.
pub fn audit_all_separators(g: &Graph, params: FTParams, exec: Exec) -> Result<AuditReport> {
    let params = premises(g, params)?;
    params.require_k_below_c()?;
    let seps = separators_of_size(g, params.k, exec);
    let mut report = AuditReport::new();
    report.record("separators-enumerated", "size-k separators were enumerated", None);
    for r in exec::map_vec(exec, seps, |w| audit_separator(g, params, &w)) {
        report.merge(r?);
    }
    Ok(report)
}

/// Every audit that applies to the parameters, merged.
pub fn full_audit(g: &Graph, params: FTParams) -> Result<AuditReport> {
    let mut report = audit_basic(g, params)?;
    report.merge(audit_low_degree_cliques(g, params)?);
    report.merge(audit_connectivity(g, params)?);
    if params.k < params.c {
        report.merge(audit_all_separators(g, params, Exec::default())?);
    }
    Ok(report)
}

/// Hypotheses under which a chordal graph is k-FT(pK_c) with the hub edge
/// count: order pc + k, every maximal clique of size k + c and every
/// minimal separator of size k.
pub fn check_tree_of_cliques_hypotheses(g: &Graph, k: usize, c: usize) -> Result<AuditReport> {
    if c < 3 {
        return Err(Error::Premise(format!("requires c >= 3, got c={c}")));
    }
    let mut report = AuditReport::new();
    let n = g.n();
    let p = n.checked_sub(k).filter(|r| r % c == 0 && *r >= c).map(|r| r / c);
    report.record(
        "order",
        "|V| = pc + k for some p >= 1",
        p.is_none().then(|| Violation::Order { vertices: n, expected: format!("pc + {k}") }),
    );
    match chordality(g) {
        Chordality::NotChordal { chordless_cycle } => {
            report.record("chordal", "G is chordal", Some(Violation::NotChordal { chordless_cycle }));
        }
        Chordality::Chordal(tree) => {
            report.record("chordal", "G is chordal", None);
            for part in &tree.parts {
                report.record(
                    "maximal-clique-size",
                    "every maximal clique has k + c vertices",
                    (part.len() != k + c).then(|| Violation::CliqueSize { part: part.clone(), expected: k + c }),
                );
            }
            for adhesion in tree.adhesions() {
                report.record(
                    "minimal-separator-size",
                    "every minimal separator has k vertices",
                    (adhesion.len() != k)
                        .then(|| Violation::SeparatorSize { adhesion: adhesion.clone(), expected: k }),
                );
            }
        }
    }
    if let Some(p) = p {
        let expected = FTParams::new(k, p, c)?.star_edge_count();
        report.record(
            "edge-count",
            "|E| = (C(c,2) + ck)p + C(k,2)",
            (g.m() as u64 != expected).then_some(Violation::EdgeCount { edges: g.m(), expected }),
        );
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub recognized: bool,
    pub explanation: String,
    pub offending_block: Option<VertexSet>,
}

/// Recognises minimum 1-FT(pK_c) graphs: order pc + 1, connected, and every
/// block a K_{c+1}. Runs in time linear in the block decomposition.
pub fn recognize_min_1ft(g: &Graph, p: usize, c: usize) -> Recognition {
    let no = |explanation: String, offending_block: Option<VertexSet>| Recognition {
        recognized: false,
        explanation,
        offending_block,
    };
    if c < 3 || p < 1 {
        return no(format!("requires p >= 1 and c >= 3, got p={p}, c={c}"), None);
    }
    if g.n() != p * c + 1 {
        return no(format!("order {} ≠ pc + 1 = {}", g.n(), p * c + 1), None);
    }
    if !is_connected(g) {
        return no("graph is disconnected".into(), None);
    }
    let clique_edges = c * (c + 1) / 2;
    for b in blocks(g).blocks {
        if b.len() != c + 1 {
            return no(format!("block of size {} ≠ {}: {:?}", b.len(), c + 1, b), Some(b));
        }
        let m = g.edges_within(&b);
        if m != clique_edges {
            return no(format!("block {b:?} has {m} edges ≠ {clique_edges}"), Some(b));
        }
    }
    Recognition {
        recognized: true,
        explanation: format!("every block is K_{}; minimum 1-FT({p}K_{c}) with {} edges", c + 1, g.m()),
        offending_block: None,
    }
}
