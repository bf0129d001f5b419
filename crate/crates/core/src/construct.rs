//! Graph families: the hub construction, trees of cliques, the
//! closed-neighbourhood contraction and the c = 2 families.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::set::VertexSet;
use crate::verify::FTParams;

/// p disjoint copies of K_c all joined to one K_k.
///
/// Layout: the hub occupies labels `0..k`, then copy `i` of K_c occupies
/// `k + ic .. k + (i+1)c`.
pub fn star_construction(k: usize, p: usize, c: usize) -> Result<Graph> {
    FTParams::new(k, p, c)?;
    let n = p * c + k;
    let mut b = GraphBuilder::new(n);
    let hub: Vec<usize> = (0..k).collect();
    b.join_all(&hub);
    for i in 0..p {
        let block: Vec<usize> = (k + i * c..k + (i + 1) * c).collect();
        b.join_all(&block);
        for &u in &block {
            for &h in &hub {
                b.join(u, h);
            }
        }
    }
    Ok(b.build())
}

/// Attachment of part `child` to `k` slots of part `parent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateEdge {
    pub parent: usize,
    pub child: usize,
    pub slots: Vec<usize>,
}

/// Shape of a tree of (k + c)-cliques.
///
/// Each part has k + c slots. The root's slots are all fresh vertices; a
/// child's slots `0..k` are its attachment vertices (in the order listed)
/// and slots `k..k + c` are fresh.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeTemplate {
    pub p: usize,
    pub k: usize,
    pub c: usize,
    pub edges: Vec<TemplateEdge>,
}

impl TreeTemplate {
    pub fn new(p: usize, k: usize, c: usize, edges: Vec<TemplateEdge>) -> Result<Self> {
        let t = Self { p, k, c, edges };
        t.validate()?;
        Ok(t)
    }

    /// Parts in a chain; each child hangs off its parent's k newest slots.
    pub fn path(p: usize, k: usize, c: usize) -> Result<Self> {
        let slots: Vec<usize> = (c..k + c).collect();
        let edges = (1..p).map(|i| TemplateEdge { parent: i - 1, child: i, slots: slots.clone() }).collect();
        Self::new(p, k, c, edges)
    }

    /// Every child hangs off the root's first k slots.
    pub fn star(p: usize, k: usize, c: usize) -> Result<Self> {
        let edges = (1..p).map(|i| TemplateEdge { parent: 0, child: i, slots: (0..k).collect() }).collect();
        Self::new(p, k, c, edges)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTemplate(msg));
        if self.p < 1 {
            return bad("p must be at least 1".into());
        }
        if self.edges.len() + 1 != self.p {
            return bad(format!("{} parts need {} tree edges, got {}", self.p, self.p - 1, self.edges.len()));
        }
        let width = self.k + self.c;
        let mut has_parent = vec![false; self.p];
        for e in &self.edges {
            if e.parent >= self.p || e.child >= self.p {
                return bad(format!("edge {}-{} names a part outside 0..{}", e.parent, e.child, self.p));
            }
            if e.child == 0 {
                return bad("the root (part 0) cannot be a child".into());
            }
            if e.parent == e.child {
                return bad(format!("part {} is its own parent", e.child));
            }
            if std::mem::replace(&mut has_parent[e.child], true) {
                return bad(format!("part {} has two parents", e.child));
            }
            if e.slots.len() != self.k {
                return bad(format!("part {} attaches to {} slots, expected {}", e.child, e.slots.len(), self.k));
            }
            let distinct: VertexSet = e.slots.iter().copied().collect();
            if distinct.len() != e.slots.len() {
                return bad(format!("part {} repeats an attachment slot", e.child));
            }
            if let Some(&s) = e.slots.iter().find(|&&s| s >= width) {
                return bad(format!("slot {s} out of range 0..{width}"));
            }
        }
        if self.bfs_order().len() != self.p {
            return bad("tree edges do not connect every part to the root".into());
        }
        Ok(())
    }

    fn children(&self, part: usize) -> Vec<&TemplateEdge> {
        let mut out: Vec<&TemplateEdge> = self.edges.iter().filter(|e| e.parent == part).collect();
        out.sort_by_key(|e| e.child);
        out
    }

    /// Root-first breadth order, children in ascending index.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.p];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for e in self.children(x) {
                if !seen[e.child] {
                    seen[e.child] = true;
                    queue.push_back(e.child);
                }
            }
        }
        order
    }

    /// Text form: `p k c`, then one `parent child slot…` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.p, self.k, self.c);
        for e in &self.edges {
            s.push_str(&format!("{} {}", e.parent, e.child));
            for slot in &e.slots {
                s.push_str(&format!(" {slot}"));
            }
            s.push('\n');
        }
        s
    }
}

impl FromStr for TreeTemplate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_line = |line: usize, l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("not an integer: {t:?}") }))
                .collect()
        };
        let (i, head) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing \"p k c\" header".into() })?;
        let [p, k, c] = parse_line(i + 1, head)?[..] else {
            return Err(Error::Parse { line: i + 1, msg: "header must be \"p k c\"".into() });
        };
        let mut edges = Vec::new();
        for (i, l) in lines {
            let nums = parse_line(i + 1, l)?;
            if nums.len() < 2 {
                return Err(Error::Parse { line: i + 1, msg: "expected \"parent child a_1..a_k\"".into() });
            }
            edges.push(TemplateEdge { parent: nums[0], child: nums[1], slots: nums[2..].to_vec() });
        }
        TreeTemplate::new(p, k, c, edges)
    }
}

/// Chordal graph whose maximal cliques are the template's parts.
///
/// Parts are built in root-first breadth order; the root takes labels
/// `0..k+c` and each later part takes the next c fresh labels.
pub fn tree_of_cliques(k: usize, c: usize, template: &TreeTemplate) -> Result<Graph> {
    if k < 1 || c < 3 {
        return Err(Error::InvalidParams(format!("tree of cliques needs k >= 1 and c >= 3, got k={k}, c={c}")));
    }
    if template.k != k || template.c != c {
        return Err(Error::InvalidTemplate(format!(
            "template is for k={}, c={}, asked for k={k}, c={c}",
            template.k, template.c
        )));
    }
    template.validate()?;
    let p = template.p;
    let n = p * c + k;
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); p];
    let mut next = 0;
    let mut b = GraphBuilder::new(n);
    for part in template.bfs_order() {
        if part == 0 {
            slots[0] = (0..k + c).collect();
            next = k + c;
        }
        let clique = slots[part].clone();
        debug_assert_eq!(clique.len(), k + c);
        b.join_all(&clique);
        for e in template.children(part) {
            let mut child: Vec<usize> = e.slots.iter().map(|&s| clique[s]).collect();
            child.extend(next..next + c);
            next += c;
            slots[e.child] = child;
        }
    }
    Ok(b.build())
}

/// Result of replacing N[x] by a fresh K_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Graph,
    /// Labels of the fresh K_k (the last k labels).
    pub fresh: VertexSet,
    /// `original[i]` is the source label of surviving vertex `i`.
    pub original: Vec<usize>,
    /// Only k = 1 carries the fault-tolerance guarantee.
    pub proven: bool,
}

/// Deletes N[x], inserts a fresh K_k and joins it to every vertex of N(N[x]).
///
/// Survivors keep their relative order; the fresh vertices come last.
pub fn contract_neighborhood(g: &Graph, params: FTParams, x: usize) -> Result<Contraction> {
    let FTParams { k, p, c } = FTParams::new(params.k, params.p, params.c)?;
    g.check_vertex(x)?;
    params.require_order(g)?;
    if p < 2 {
        return Err(Error::Premise("contraction needs p >= 2".into()));
    }
    if g.degree(x) != c + k - 1 {
        return Err(Error::Premise(format!("vertex {x} has degree {}, expected c + k - 1 = {}", g.degree(x), c + k - 1)));
    }
    let closed = g.closed_neighborhood(x)?;
    if let Some((u, v)) = g.missing_edge_in(&closed) {
        return Err(Error::Premise(format!("N[{x}] is not a clique: {u} and {v} are not adjacent")));
    }
    let boundary = g.set_neighborhood(&closed)?;
    let rest = g.remove_vertices(&closed)?;
    let survivors = rest.graph.n();
    let mut b = GraphBuilder::new(survivors + k);
    for (u, v) in rest.graph.edges() {
        b.join(u, v);
    }
    let fresh: Vec<usize> = (survivors..survivors + k).collect();
    b.join_all(&fresh);
    for (i, &orig) in rest.original.iter().enumerate() {
        if boundary.contains(orig) {
            for &f in &fresh {
                b.join(i, f);
            }
        }
    }
    Ok(Contraction {
        graph: b.build(),
        fresh: fresh.into_iter().collect(),
        original: rest.original,
        proven: k == 1,
    })
}

/// C_{2p+1}.
pub fn odd_cycle(p: usize) -> Result<Graph> {
    if p < 1 {
        return Err(Error::InvalidParams("odd cycle needs p >= 1".into()));
    }
    Graph::cycle(2 * p + 1)
}

/// Harary graph H_{m,n}: m-connected on n vertices with ⌈mn/2⌉ edges.
pub fn harary(m: usize, n: usize) -> Result<Graph> {
    if m < 2 || m >= n {
        return Err(Error::InvalidParams(format!("harary needs 2 <= m < n, got m={m}, n={n}")));
    }
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for d in 1..=m / 2 {
            b.join(i, (i + d) % n);
        }
    }
    if m % 2 == 1 {
        if n.is_multiple_of(2) {
            for i in 0..n / 2 {
                b.join(i, i + n / 2);
            }
        } else {
            let half = (n - 1) / 2;
            for i in 0..=half {
                b.join(i, i + half);
            }
        }
    }
    Ok(b.build())
}

/// H_{k+1, 2p+k}, for even k with 2p + k <= 2k − 2.
pub fn c2_even_k_construction(k: usize, p: usize) -> Result<Graph> {
    if !k.is_multiple_of(2) || p < 1 || 2 * p + k > 2 * k - 2 {
        return Err(Error::InvalidParams(format!(
            "needs even k, p >= 1 and 2p + k <= 2k - 2, got k={k}, p={p}"
        )));
    }
    harary(k + 1, 2 * p + k)
}
