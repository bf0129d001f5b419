//! Chordal graph recognition and clique trees.
//!
//! Recognition runs maximum-cardinality search and then checks that the
//! reverse visit order is a perfect elimination order. Non-chordal graphs
//! come back with a chordless cycle of length at least four.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueTreeEdge {
    pub a: usize,
    pub b: usize,
    pub adhesion: VertexSet,
}

/// Tree decomposition whose parts are the maximal cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueTree {
    pub parts: Vec<VertexSet>,
    pub tree_edges: Vec<CliqueTreeEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Chordality {
    Chordal(CliqueTree),
    NotChordal { chordless_cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }

    pub fn clique_tree(&self) -> Option<&CliqueTree> {
        match self {
            Chordality::Chordal(t) => Some(t),
            Chordality::NotChordal { .. } => None,
        }
    }
}

impl CliqueTree {
    pub fn adhesions(&self) -> impl Iterator<Item = &VertexSet> {
        self.tree_edges.iter().map(|e| &e.adhesion)
    }

    /// Checks the tree-decomposition axioms plus cliqueness of every part.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let p = self.parts.len();
        if g.n() == 0 {
            return p == 0;
        }
        let covered = self.parts.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
        if covered != g.vertices() {
            return false;
        }
        if !g.edges().all(|(u, v)| self.parts.iter().any(|s| s.contains(u) && s.contains(v))) {
            return false;
        }
        if !self.parts.iter().all(|s| g.is_clique(s)) {
            return false;
        }
        if self.tree_edges.len() + 1 != p {
            return false;
        }
        let mut adj = vec![Vec::new(); p];
        for e in &self.tree_edges {
            if e.a >= p || e.b >= p || e.adhesion != self.parts[e.a].intersection(&self.parts[e.b]) {
                return false;
            }
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        // each vertex's parts must induce a connected subtree
        g.vertices().iter().all(|v| {
            let holding: Vec<usize> = (0..p).filter(|&i| self.parts[i].contains(v)).collect();
            let mut seen = vec![false; p];
            let mut queue = VecDeque::from([holding[0]]);
            seen[holding[0]] = true;
            let mut reached = 1;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] && self.parts[y].contains(v) {
                        seen[y] = true;
                        reached += 1;
                        queue.push_back(y);
                    }
                }
            }
            reached == holding.len()
        }) && {
            // and the tree itself must be connected
            let mut seen = vec![false; p];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        }
    }
}

/// Maximum-cardinality search visit order; ties go to the least label.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = VertexSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done.contains(v))
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .unwrap();
        order.push(v);
        done.insert(v);
        for w in g.neighbors(v) {
            if !done.contains(w) {
                weight[w] += 1;
            }
        }
    }
    order
}

/// Returns the first vertex (in elimination order) at which `peo` fails.
fn peo_violation(g: &Graph, peo: &[usize]) -> Option<(usize, usize, usize)> {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in peo {
        let later: Vec<usize> = g.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).collect();
        if let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) {
            for &w in &later {
                if w != parent && !g.has_edge(parent, w) {
                    return Some((v, parent, w));
                }
            }
        }
    }
    None
}

/// Shortest path from `from` to `to` inside `within`.
fn shortest_path(g: &Graph, within: &VertexSet, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut y = to;
            while y != from {
                y = prev[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x).intersection(within).iter() {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Chordless cycle through `v` and its non-adjacent neighbours `x`, `y`.
fn cycle_through(g: &Graph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut within = g.vertices().difference(g.neighbors(v));
    within.remove(v);
    within.insert(x);
    within.insert(y);
    let path = shortest_path(g, &within, x, y)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_chordless_cycle(g: &Graph, hint: (usize, usize, usize)) -> Vec<usize> {
    let (v, x, y) = hint;
    if let Some(c) = cycle_through(g, v, x, y) {
        return c;
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v).to_vec();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if !g.has_edge(x, y) {
                    if let Some(c) = cycle_through(g, v, x, y) {
                        return c;
                    }
                }
            }
        }
    }
    unreachable!("a graph without a perfect elimination order has a chordless cycle")
}

pub fn chordality(g: &Graph) -> Chordality {
    let mut peo = mcs_order(g);
    peo.reverse();
    if let Some(hint) = peo_violation(g, &peo) {
        return Chordality::NotChordal { chordless_cycle: find_chordless_cycle(g, hint) };
    }
    Chordality::Chordal(build_clique_tree(g, &peo))
}

fn build_clique_tree(g: &Graph, peo: &[usize]) -> CliqueTree {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let candidates: Vec<VertexSet> = peo
        .iter()
        .map(|&v| {
            let mut c: VertexSet = g.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).collect();
            c.insert(v);
            c
        })
        .collect();
    let mut parts: Vec<VertexSet> = candidates
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            !candidates.iter().enumerate().any(|(j, d)| {
                j != *i && c.is_subset(d) && (c.len() < d.len() || j < *i)
            })
        })
        .map(|(_, c)| c.clone())
        .collect();
    parts.sort();

    // maximum-weight spanning tree of the clique intersection graph
    let p = parts.len();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..p {
        for b in a + 1..p {
            pairs.push((parts[a].intersection_len(&parts[b]), a, b));
        }
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut root: Vec<usize> = (0..p).collect();
    fn find(r: &mut [usize], mut x: usize) -> usize {
        while r[x] != x {
            r[x] = r[r[x]];
            x = r[x];
        }
        x
    }
    let mut tree_edges = Vec::new();
    for (_, a, b) in pairs {
        let (x, y) = (find(&mut root, a), find(&mut root, b));
        if x != y {
            root[x] = y;
            tree_edges.push(CliqueTreeEdge { a, b, adhesion: parts[a].intersection(&parts[b]) });
        }
    }
    CliqueTree { parts, tree_edges }
}
