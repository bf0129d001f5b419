//! Components, vertex connectivity and edge connectivity.
//!
//! Both connectivities are computed with unit-capacity augmenting paths.
//! κ uses the usual vertex-splitting network over non-adjacent pairs, λ
//! fixes vertex 0 as the source and minimises over all sinks.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub components: Vec<VertexSet>,
    pub vertex_connectivity: usize,
    pub edge_connectivity: usize,
}

pub fn connectivity(g: &Graph) -> Connectivity {
    Connectivity {
        components: components(g),
        vertex_connectivity: vertex_connectivity(g),
        edge_connectivity: edge_connectivity(g),
    }
}

/// Components of the subgraph induced by `within`, ordered by least vertex.
pub fn components_within(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let mut left = within.clone();
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in &frontier {
                next.union_with(g.neighbors(v));
            }
            next.intersect_with(within);
            next.subtract(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        left.subtract(&comp);
        out.push(comp);
    }
    out
}

pub fn components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, &g.vertices())
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// Whether deleting `set` leaves at least two components.
pub fn is_separator(g: &Graph, set: &VertexSet) -> bool {
    components_within(g, &g.vertices().difference(set)).len() >= 2
}

/// Residual network with unit capacities on arcs.
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        Self { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Max flow from `s` to `t`, stopping early once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut prev = vec![usize::MAX; self.out.len()];
        while flow < limit {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.out.len()];
            seen[s] = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        prev[y] = a;
                        if y == t {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut y = t;
            while y != s {
                let a = prev[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally disjoint `s`–`t` paths, for non-adjacent `s`, `t`.
pub fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    // vertex v splits into v_in = 2v and v_out = 2v + 1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { u32::MAX / 2 } else { 1 };
        net.arc(2 * v, 2 * v + 1, cap);
    }
    for (u, v) in g.edges() {
        net.arc(2 * u + 1, 2 * v, 1);
        net.arc(2 * v + 1, 2 * u, 1);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

pub fn local_edge_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let mut net = FlowNet::new(g.n());
    for (u, v) in g.edges() {
        net.arc(u, v, 1);
        net.arc(v, u, 1);
    }
    net.max_flow(s, t, limit)
}

/// κ(G). Disconnected graphs give 0 and κ(K_n) = n − 1.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if !is_connected(g) {
        return 0;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_vertex_connectivity(g, s, t, best));
                if best == 0 {
                    return 0;
                }
            }
        }
    }
    best
}

/// λ(G). Disconnected graphs and the single vertex give 0.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !is_connected(g) {
        return 0;
    }
    let mut best = g.min_degree().unwrap_or(0);
    for t in 1..n {
        best = best.min(local_edge_connectivity(g, 0, t, best));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::star_construction;
    use crate::graph::GraphBuilder;
    use proptest::prelude::*;

    /// Smallest number of edges whose removal disconnects `g`, by brute force.
    fn brute_edge_connectivity(g: &Graph, max: usize) -> usize {
        fn disconnects(g: &Graph, edges: &[(usize, usize)], from: usize, left: usize, cut: &mut Vec<(usize, usize)>) -> bool {
            if left == 0 {
                let rest = Graph::from_edges(g.n(), edges.iter().copied().filter(|e| !cut.contains(e))).unwrap();
                return !is_connected(&rest);
            }
            for i in from..edges.len() {
                cut.push(edges[i]);
                if disconnects(g, edges, i + 1, left - 1, cut) {
                    return true;
                }
                cut.pop();
            }
            false
        }
        let edges: Vec<_> = g.edges().collect();
        (0..=max).find(|&s| disconnects(g, &edges, 0, s, &mut Vec::new())).unwrap_or(max + 1)
    }

    /// κ by deleting every vertex subset in increasing size.
    fn brute_vertex_connectivity(g: &Graph) -> usize {
        let n = g.n();
        let mut best = n.saturating_sub(1);
        for mask in 0u32..(1 << n) {
            let s: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if s.len() < best && s.len() + 2 <= n && is_separator(g, &s) {
                best = s.len();
            }
        }
        best
    }

    #[test]
    fn complete_and_cycle() {
        let k4 = Graph::complete(4);
        assert_eq!(vertex_connectivity(&k4), 3);
        assert_eq!(edge_connectivity(&k4), 3);
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(vertex_connectivity(&c7), 2);
        assert_eq!(edge_connectivity(&c7), 2);
    }

    #[test]
    fn star_edge_connectivity_matches_brute_force() {
        let g = star_construction(1, 2, 3).unwrap();
        assert_eq!(brute_edge_connectivity(&g, 4), 3);
        assert_eq!(edge_connectivity(&g), 3);
        assert_eq!(vertex_connectivity(&g), 1);
    }

    #[test]
    fn disconnected_is_zero() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&g).len(), 2);
        assert_eq!(vertex_connectivity(&g), 0);
        assert_eq!(edge_connectivity(&g), 0);
        assert!(is_separator(&Graph::path(3), &VertexSet::singleton(1)));
        assert!(!is_separator(&Graph::path(3), &VertexSet::singleton(0)));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..9).prop_flat_map(|n| {
            proptest::collection::vec(prop::bool::weighted(0.6), n * (n - 1) / 2).prop_map(
                move |bits| {
                    let mut b = GraphBuilder::new(n);
                    let mut i = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[i] {
                                b.join(u, v);
                            }
                            i += 1;
                        }
                    }
                    b.build()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn whitney_chain(g in arb_graph()) {
            if is_connected(&g) {
                let k = vertex_connectivity(&g);
                let l = edge_connectivity(&g);
                prop_assert!(k <= l);
                prop_assert!(l <= g.min_degree().unwrap());
            }
        }

        #[test]
        fn vertex_connectivity_matches_brute_force(g in arb_graph()) {
            prop_assert_eq!(vertex_connectivity(&g), brute_vertex_connectivity(&g));
        }

        #[test]
        fn edge_connectivity_matches_brute_force(g in arb_graph()) {
            prop_assume!(g.m() <= 16);
            let l = edge_connectivity(&g);
            prop_assert_eq!(l, brute_edge_connectivity(&g, l + 1));
        }
    }
}
