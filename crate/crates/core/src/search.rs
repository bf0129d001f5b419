//! Exhaustive minimum-edge search over graphs on pc + k vertices.
//!
//! For each edge count m from the degree-sum bound upward, every labelled
//! graph with m edges and minimum degree at least c + k − 1 is generated
//! by walking the C(n, 2) edge slots in order. Survivors are reduced to
//! canonical forms, filtered by the connectivity lemmas, and verified.
//! The first m with a verified graph is the minimum.
//!
//! Work is split by slot-decision prefixes. Each worker keeps its own set
//! of canonical forms; the sets are merged in sorted order, so the result
//! does not depend on scheduling.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize, Serializer};

use crate::canon::{canonical_form, CanonicalForm};
use crate::connectivity::{edge_connectivity, vertex_connectivity};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::format::from_graph6;
use crate::graph::Graph;
use crate::packing::find_within;
use crate::verify::{oracle_verify_ft, verify_ft_with, FTParams, VerifyOptions};

/// Largest order searched exhaustively without opting in.
pub const EXHAUSTIVE_LIMIT: usize = 10;
/// Hard ceiling on the order, even when opted in.
pub const LARGE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub seconds: Option<f64>,
    /// Cap on labelled graphs reaching the canonical-form stage.
    pub graphs: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    pub exec: Exec,
    /// Permit orders above [`EXHAUSTIVE_LIMIT`] (up to [`LARGE_LIMIT`]).
    pub allow_large: bool,
    /// Completed layers are written here and skipped on the next run.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetState {
    WithinBudget,
    TimeExhausted,
    GraphsExhausted,
}

/// Bookkeeping for one edge count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerReport {
    pub edges: usize,
    /// Labelled graphs meeting the degree bound.
    pub labelled: u64,
    /// Isomorphism classes among those also passing the clique-membership test.
    pub classes: usize,
    /// Classes left after the connectivity filters.
    pub verified: usize,
    /// Canonical graph6 strings of classes that are fault tolerant.
    pub solutions: Vec<String>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub params: FTParams,
    pub n: usize,
    pub target_bound: u64,
    pub degree_lower_bound: u64,
    pub max_edges: usize,
    #[serde(serialize_with = "minimum_as_json")]
    pub minimum_found: Option<usize>,
    pub exemplars: Vec<CanonicalForm>,
    pub graphs_examined: u64,
    /// Every edge count from the lower bound up to the minimum (or to
    /// `max_edges` when none was found) was fully covered.
    pub exhaustive: bool,
    pub wall_budget_state: BudgetState,
    pub elapsed_seconds: f64,
    pub resumed_layers: usize,
    pub layers: Vec<LayerReport>,
}

fn minimum_as_json<S: Serializer>(m: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => s.serialize_u64(*m as u64),
        None => s.serialize_str("none ≤ budget"),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Checkpoint {
    params: FTParams,
    layers: Vec<LayerReport>,
}

fn load_checkpoint(path: &Path, params: FTParams) -> Result<Vec<LayerReport>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::Checkpoint(format!("{}: {e}", path.display()))),
    };
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    if cp.params != params {
        return Err(Error::Checkpoint(format!("{} holds a run for {}, not {params}", path.display(), cp.params)));
    }
    Ok(cp.layers.into_iter().filter(|l| l.complete).collect())
}

fn save_checkpoint(path: &Path, params: FTParams, layers: &[LayerReport]) -> Result<()> {
    let cp = Checkpoint { params, layers: layers.iter().filter(|l| l.complete).cloned().collect() };
    let text = serde_json::to_string_pretty(&cp).expect("checkpoint serializes");
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
}

struct Limits {
    start: Instant,
    seconds: Option<Duration>,
    graphs: Option<u64>,
    examined: AtomicU64,
    stop: AtomicBool,
    time_out: AtomicBool,
}

impl Limits {
    fn new(budget: Budget) -> Self {
        Self {
            start: Instant::now(),
            seconds: budget.seconds.map(Duration::from_secs_f64),
            graphs: budget.graphs,
            examined: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            time_out: AtomicBool::new(false),
        }
    }

    /// Adds `count` examined graphs; false once the budget is spent.
    fn charge(&self, count: u64) -> bool {
        let total = self.examined.fetch_add(count, Ordering::Relaxed) + count;
        if self.graphs.is_some_and(|g| total > g) {
            self.stop.store(true, Ordering::Relaxed);
        }
        if self.seconds.is_some_and(|s| self.start.elapsed() > s) {
            self.time_out.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn state(&self) -> BudgetState {
        if !self.stopped() {
            BudgetState::WithinBudget
        } else if self.time_out.load(Ordering::Relaxed) {
            BudgetState::TimeExhausted
        } else {
            BudgetState::GraphsExhausted
        }
    }
}

/// Partial labelled graph during the slot walk.
#[derive(Clone)]
struct State {
    rows: Vec<u64>,
    deg: Vec<usize>,
    /// Undecided slots incident to each vertex.
    rem: Vec<usize>,
    chosen: usize,
    slot: usize,
}

struct Walk<'a> {
    n: usize,
    m: usize,
    d: usize,
    slots: Vec<(usize, usize)>,
    limits: &'a Limits,
}

const CHARGE_EVERY: u64 = 256;

impl Walk<'_> {
    fn root(&self) -> State {
        State {
            rows: vec![0; self.n],
            deg: vec![0; self.n],
            rem: vec![self.n - 1; self.n],
            chosen: 0,
            slot: 0,
        }
    }

    fn feasible(&self, s: &State) -> bool {
        let left = self.m - s.chosen;
        if left > self.slots.len() - s.slot {
            return false;
        }
        let mut deficit = 0;
        for v in 0..self.n {
            let short = self.d.saturating_sub(s.deg[v]);
            if short > s.rem[v] {
                return false;
            }
            deficit += short;
        }
        deficit <= 2 * left
    }

    fn step(&self, s: &State, include: bool) -> Option<State> {
        let (u, v) = self.slots[s.slot];
        let mut t = s.clone();
        t.slot += 1;
        t.rem[u] -= 1;
        t.rem[v] -= 1;
        if include {
            if t.chosen == self.m {
                return None;
            }
            t.chosen += 1;
            t.deg[u] += 1;
            t.deg[v] += 1;
            t.rows[u] |= 1 << v;
            t.rows[v] |= 1 << u;
        }
        self.feasible(&t).then_some(t)
    }

    /// States after deciding the first `depth` slots, in walk order.
    fn prefixes(&self, depth: usize) -> Vec<State> {
        let mut layer = vec![self.root()];
        for _ in 0..depth.min(self.slots.len()) {
            layer = layer.iter().flat_map(|s| [self.step(s, false), self.step(s, true)]).flatten().collect();
        }
        layer
    }

    /// Completes `s` and feeds every finished graph to `leaf`.
    fn run(&self, s: State, pending: &mut u64, leaf: &mut dyn FnMut(&[u64])) -> bool {
        if s.chosen == self.m {
            // Remaining slots must all be empty; the degrees are final.
            if s.deg.iter().all(|&x| x >= self.d) {
                leaf(&s.rows);
                *pending += 1;
                if *pending >= CHARGE_EVERY {
                    let ok = self.limits.charge(*pending);
                    *pending = 0;
                    return ok;
                }
            }
            return !self.limits.stopped();
        }
        if s.slot == self.slots.len() {
            return true;
        }
        for include in [false, true] {
            if let Some(t) = self.step(&s, include) {
                if !self.run(t, pending, leaf) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Default)]
struct LayerScan {
    labelled: u64,
    forms: BTreeSet<CanonicalForm>,
}

/// Labelled graphs on `n` vertices with `m` edges and minimum degree
/// at least `d`, reduced to canonical forms that pass `keep`.
fn scan_layer(
    n: usize,
    m: usize,
    d: usize,
    exec: Exec,
    limits: &Limits,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
) -> (LayerScan, bool) {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let walk = Walk { n, m, d, slots, limits };
    let root = walk.root();
    if !walk.feasible(&root) {
        return (LayerScan::default(), true);
    }
    let depth = 12.min(walk.slots.len());
    let prefixes = walk.prefixes(depth);
    let parts = exec::map_vec(exec, prefixes, |s| {
        let mut scan = LayerScan::default();
        let mut pending = 0;
        let finished = walk.run(s, &mut pending, &mut |rows| {
            scan.labelled += 1;
            let g = Graph::from_adjacency_words(rows);
            if keep(&g) {
                scan.forms.insert(canonical_form(&g).expect("order checked against the canonical limit"));
            }
        });
        if pending > 0 {
            limits.charge(pending);
        }
        (scan, finished)
    });
    let mut total = LayerScan::default();
    let mut complete = true;
    for (scan, finished) in parts {
        total.labelled += scan.labelled;
        total.forms.extend(scan.forms);
        complete &= finished;
    }
    (total, complete)
}

fn every_vertex_in_clique(g: &Graph, c: usize) -> bool {
    (0..g.n()).all(|x| find_within(g, g.neighbors(x), 1, c - 1).is_some())
}

/// Searches edge counts from the degree-sum bound up to `max_edges` for the
/// fewest edges of a k-FT(pK_c) graph on pc + k vertices.
pub fn search_minimum(params: FTParams, max_edges: usize, opts: &SearchOptions) -> Result<SearchReport> {
    let params = FTParams::new(params.k, params.p, params.c)?;
    let FTParams { k, c, .. } = params;
    let n = params.order();
    let limit = if opts.allow_large { LARGE_LIMIT } else { EXHAUSTIVE_LIMIT };
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let lower = params.degree_sum_bound();
    let slots = n * (n - 1) / 2;
    let d = c + k - 1;

    let mut layers = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, params)?,
        None => Vec::new(),
    };
    layers.retain(|l| l.edges as u64 >= lower && l.edges <= max_edges);
    layers.sort_by_key(|l| l.edges);
    let resumed_layers = layers.len();
    let limits = Limits::new(opts.budget);

    let keep = |g: &Graph| every_vertex_in_clique(g, c);
    let mut minimum = None;
    let mut exhaustive = true;
    for m in (lower as usize)..=max_edges.min(slots) {
        if let Some(done) = layers.iter().find(|l| l.edges == m) {
            if !done.solutions.is_empty() {
                minimum = Some(m);
                break;
            }
            continue;
        }
        if !limits.charge(0) {
            exhaustive = false;
            break;
        }
        let (scan, complete) = scan_layer(n, m, d, opts.exec, &limits, &keep);
        let classes = scan.forms.len();
        let candidates: Vec<CanonicalForm> = scan
            .forms
            .into_iter()
            .filter(|f| {
                // The connectivity lemmas are proved for c >= 3 only.
                c < 3 || {
                    let g = f.to_graph();
                    vertex_connectivity(&g) >= k && edge_connectivity(&g) >= d
                }
            })
            .collect();
        let verified = candidates.len();
        let verdicts = exec::map_vec(opts.exec, candidates, |f| {
            let holds = verify_ft_with(&f.to_graph(), params, &VerifyOptions::sequential()).map(|v| v.holds);
            (f, holds)
        });
        let mut solutions = Vec::new();
        for (f, holds) in verdicts {
            if holds? {
                solutions.push(f.to_graph6());
            }
        }
        let found = !solutions.is_empty();
        layers.push(LayerReport { edges: m, labelled: scan.labelled, classes, verified, solutions, complete });
        if let Some(path) = &opts.checkpoint {
            save_checkpoint(path, params, &layers)?;
        }
        if !complete {
            exhaustive = false;
            if found {
                // A solution from a partial layer is still a solution, but
                // smaller counts are settled, so this is the minimum.
                minimum = Some(m);
            }
            break;
        }
        if found {
            minimum = Some(m);
            break;
        }
    }
    if lower as usize > max_edges.min(slots) {
        exhaustive = true;
    }

    let exemplars: Vec<CanonicalForm> = match minimum {
        Some(m) => {
            let layer = layers.iter().find(|l| l.edges == m).expect("layer recorded");
            let mut forms = layer
                .solutions
                .iter()
                .map(|s| from_graph6(s).and_then(|g| canonical_form(&g)))
                .collect::<Result<Vec<_>>>()?;
            forms.sort();
            forms
        }
        None => Vec::new(),
    };
    let graphs_examined = layers.iter().map(|l| l.labelled).sum();
    Ok(SearchReport {
        params,
        n,
        target_bound: params.star_edge_count(),
        degree_lower_bound: lower,
        max_edges,
        minimum_found: minimum,
        exemplars,
        graphs_examined,
        exhaustive,
        wall_budget_state: limits.state(),
        elapsed_seconds: limits.start.elapsed().as_secs_f64(),
        resumed_layers,
        layers,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// No graph below the bound; the bound itself is attained.
    Supported,
    /// A graph below the bound, re-checked with the brute-force verifier.
    Refuted { counterexample: CanonicalForm, oracle_confirmed: bool },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    #[serde(flatten)]
    pub outcome: ProbeOutcome,
    pub search: SearchReport,
}

/// Tests whether the hub-construction edge count is the minimum for
/// k >= 2 and k < c, by searching every edge count up to it.
pub fn probe_conjecture(k: usize, p: usize, c: usize, opts: &SearchOptions) -> Result<ProbeReport> {
    let params = FTParams::new(k, p, c)?;
    if k < 2 {
        return Err(Error::Premise(format!("probe needs k >= 2, got k={k}")));
    }
    params.require_c_at_least_3()?;
    params.require_k_below_c()?;
    let target = params.star_edge_count() as usize;
    let search = search_minimum(params, target, opts)?;
    let outcome = match search.minimum_found {
        Some(m) if m < target => {
            let counterexample = search.exemplars[0].clone();
            let oracle_confirmed = oracle_verify_ft(&counterexample.to_graph(), params)?;
            ProbeOutcome::Refuted { counterexample, oracle_confirmed }
        }
        Some(_) if search.exhaustive => ProbeOutcome::Supported,
        Some(_) => ProbeOutcome::Inconclusive { reason: "bound layer only partly covered".into() },
        None if search.exhaustive => {
            ProbeOutcome::Inconclusive { reason: "no graph found at the bound, which the hub construction attains".into() }
        }
        None => ProbeOutcome::Inconclusive {
            reason: format!("budget exhausted ({:?}) before reaching the bound", search.wall_budget_state),
        },
    };
    Ok(ProbeReport { outcome, search })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::blocks;
    use crate::combin::Combinations;

    fn params(k: usize, p: usize, c: usize) -> FTParams {
        FTParams::new(k, p, c).unwrap()
    }

    fn seq() -> SearchOptions {
        SearchOptions { exec: Exec::Sequential, ..SearchOptions::default() }
    }

    /// Brute force over every edge subset.
    fn brute_layer(n: usize, m: usize, d: usize) -> (u64, BTreeSet<CanonicalForm>) {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut count = 0;
        let mut forms = BTreeSet::new();
        for pick in Combinations::new(slots.len(), m) {
            let g = Graph::from_edges(n, pick.iter().map(|&i| slots[i])).unwrap();
            if g.min_degree().unwrap_or(0) >= d {
                count += 1;
                forms.insert(canonical_form(&g).unwrap());
            }
        }
        (count, forms)
    }

    #[test]
    fn slot_walk_matches_brute_force() {
        for (n, m, d) in [(5, 6, 2), (6, 9, 3), (6, 8, 2), (6, 7, 3), (7, 11, 3), (4, 6, 3)] {
            let limits = Limits::new(Budget::unlimited());
            for exec in [Exec::Sequential, Exec::Parallel] {
                let (scan, complete) = scan_layer(n, m, d, exec, &limits, &|_| true);
                let (count, forms) = brute_layer(n, m, d);
                assert!(complete);
                assert_eq!(scan.labelled, count, "n={n} m={m} d={d}");
                assert_eq!(scan.forms, forms);
            }
        }
    }

    #[test]
    fn small_minimums() {
        let r = search_minimum(params(1, 1, 3), 6, &seq()).unwrap();
        assert_eq!(r.minimum_found, Some(6));
        assert_eq!(r.exemplars, vec![canonical_form(&Graph::complete(4)).unwrap()]);
        assert!(r.exhaustive);

        let r = search_minimum(params(2, 1, 3), 10, &seq()).unwrap();
        assert_eq!(r.minimum_found, Some(10));
        assert_eq!(r.exemplars[0].to_graph().m(), 10);

        let r = search_minimum(params(2, 1, 4), 15, &SearchOptions::default()).unwrap();
        assert_eq!(r.minimum_found, Some(15));
    }

    #[test]
    fn one_fault_two_triangles() {
        let r = search_minimum(params(1, 2, 3), 12, &SearchOptions::default()).unwrap();
        assert_eq!(r.minimum_found, Some(12));
        assert!(r.exhaustive);
        assert_eq!(r.exemplars.len(), 1);
        let g = r.exemplars[0].to_graph();
        assert!(blocks(&g).blocks.iter().all(|b| b.len() == 4 && g.edges_within(b) == 6));
        assert!(r.layers.iter().all(|l| l.complete));
        assert_eq!(r.layers[0].edges, 11);
        assert!(r.layers[0].solutions.is_empty());
        assert!(r.minimum_found.unwrap() as u64 >= r.degree_lower_bound);
    }

    #[test]
    fn odd_cycle_minimum() {
        let r = search_minimum(params(1, 2, 2), 5, &seq()).unwrap();
        assert_eq!(r.minimum_found, Some(5));
        assert_eq!(r.exemplars, vec![canonical_form(&Graph::cycle(5).unwrap()).unwrap()]);
    }

    #[test]
    fn nothing_below_range() {
        let r = search_minimum(params(1, 2, 3), 11, &seq()).unwrap();
        assert_eq!(r.minimum_found, None);
        assert!(r.exhaustive);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["minimum_found"], "none ≤ budget");
    }

    #[test]
    fn budget_is_reported() {
        let opts = SearchOptions { budget: Budget { graphs: Some(10), seconds: None }, ..seq() };
        let r = search_minimum(params(1, 2, 3), 12, &opts).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.wall_budget_state, BudgetState::GraphsExhausted);
        let opts = SearchOptions { budget: Budget { graphs: None, seconds: Some(0.0) }, ..seq() };
        let r = search_minimum(params(1, 2, 3), 12, &opts).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.wall_budget_state, BudgetState::TimeExhausted);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(search_minimum(params(1, 3, 4), 30, &seq()), Err(Error::TooLarge { n: 13, limit: 10 })));
        let opts = SearchOptions { allow_large: true, ..seq() };
        assert!(matches!(search_minimum(params(1, 3, 4), 30, &opts), Err(Error::TooLarge { n: 13, limit: 12 })));
    }

    #[test]
    fn checkpoint_resume() {
        let dir = std::env::temp_dir().join(format!("kft-search-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cp.json");
        let _ = fs::remove_file(&path);
        let opts = SearchOptions { checkpoint: Some(path.clone()), ..seq() };
        let first = search_minimum(params(1, 2, 3), 12, &opts).unwrap();
        assert_eq!(first.resumed_layers, 0);
        let second = search_minimum(params(1, 2, 3), 12, &opts).unwrap();
        assert_eq!(second.resumed_layers, 2);
        assert_eq!(second.minimum_found, first.minimum_found);
        assert_eq!(second.exemplars, first.exemplars);
        assert_eq!(second.graphs_examined, first.graphs_examined);
        assert!(matches!(search_minimum(params(1, 1, 3), 6, &opts), Err(Error::Checkpoint(_))));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn probe_preconditions() {
        assert!(matches!(probe_conjecture(1, 2, 3, &seq()), Err(Error::Premise(_))));
        assert!(matches!(probe_conjecture(3, 1, 3, &seq()), Err(Error::Premise(_))));
        let r = probe_conjecture(2, 1, 3, &seq()).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::Supported);
        assert_eq!(r.search.minimum_found, Some(10));
    }
}
