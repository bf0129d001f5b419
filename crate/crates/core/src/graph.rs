//! Simple undirected graphs on vertices `0..n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::VertexSet;

/// A simple undirected graph on the vertex labels `0..n`.
///
/// Graphs are immutable once built; use [`GraphBuilder`] to assemble one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

/// A graph obtained by deleting or keeping a vertex subset, together with
/// the map from new labels back to the original ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    /// `original[i]` is the label in the source graph of new vertex `i`.
    pub original: Vec<usize>,
}

impl Relabeled {
    pub fn to_original(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.original[v]).collect()
    }
}

#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![VertexSet::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds the edge `uv`, rejecting loops, duplicates and bad labels.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(self)
    }

    /// Adds `uv` unless it is already present. Labels must be in range and distinct.
    pub(crate) fn join(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.adj.len() && v < self.adj.len());
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    /// Makes `set` a clique.
    pub(crate) fn join_all(&mut self, set: &[usize]) {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                self.join(u, v);
            }
        }
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj, m: self.m }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds a graph from adjacency words, for `n <= 64`. Rows must be
    /// symmetric with a zero diagonal.
    pub(crate) fn from_adjacency_words(rows: &[u64]) -> Self {
        let adj: Vec<VertexSet> = rows.iter().map(|&w| VertexSet::from_word(w)).collect();
        let m = rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2;
        Self { adj, m }
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        b.join_all(&(0..n).collect::<Vec<_>>());
        b.build()
    }

    /// The cycle `0 − 1 − … − (n−1) − 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.join(i - 1, i);
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n()).map(|v| self.degree(v)).min()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.last() {
            Some(v) if v >= self.n() => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// N(v).
    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.adj[v].clone())
    }

    /// N[v] = N(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    /// N(U): vertices outside `U` with a neighbor in `U`.
    pub fn set_neighborhood(&self, set: &VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        let mut out = VertexSet::new();
        for v in set {
            out.union_with(&self.adj[v]);
        }
        out.subtract(set);
        Ok(out)
    }

    /// N[U] = N(U) ∪ U.
    pub fn closed_set_neighborhood(&self, set: &VertexSet) -> Result<VertexSet> {
        let mut out = self.set_neighborhood(set)?;
        out.union_with(set);
        Ok(out)
    }

    /// Whether every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut rest = set.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    /// First non-adjacent pair inside `set`, if any.
    pub fn missing_edge_in(&self, set: &VertexSet) -> Option<(usize, usize)> {
        set.iter().find_map(|u| {
            set.iter().filter(|&v| v > u).find(|&v| !self.adj[u].contains(v)).map(|v| (u, v))
        })
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).sum::<usize>() / 2
    }

    /// G[U], relabeled to `0..|U|` by ascending original label.
    pub fn induced(&self, keep: &VertexSet) -> Result<Relabeled> {
        self.check_set(keep)?;
        let original = keep.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| self.adj[v].intersection(keep).iter().map(|u| index[u]).collect())
            .collect::<Vec<VertexSet>>();
        let m = self.edges_within(keep);
        Ok(Relabeled { graph: Graph { adj, m }, original })
    }

    /// G − S, relabeled to `0..n−|S|` by ascending original label.
    pub fn remove_vertices(&self, removed: &VertexSet) -> Result<Relabeled> {
        self.check_set(removed)?;
        self.induced(&self.vertices().difference(removed))
    }

    /// Applies `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = VertexSet::new();
        if perm.len() != n || !perm.iter().all(|&x| x < n && seen.insert(x)) {
            return Err(Error::InvalidParams("relabeling is not a permutation".into()));
        }
        let mut adj = vec![VertexSet::new(); n];
        for (u, row) in self.adj.iter().enumerate() {
            adj[perm[u]] = row.iter().map(|v| perm[v]).collect();
        }
        Ok(Graph { adj, m: self.m })
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj: Vec<VertexSet> = (0..self.n())
            .map(|v| {
                let mut s = all.difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        let n = self.n();
        Graph { adj, m: n * n.saturating_sub(1) / 2 - self.m }
    }

    /// Adjacency rows as words; only meaningful for `n <= 64`.
    pub(crate) fn adjacency_words(&self) -> Vec<u64> {
        self.adj.iter().map(|s| s.low_word()).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Compact summary used in JSON reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
}

impl From<&Graph> for GraphSummary {
    fn from(g: &Graph) -> Self {
        Self { n: g.n(), m: g.m() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::star_construction;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = GraphBuilder::new(3);
        assert_eq!(b.add_edge(0, 0).unwrap_err(), Error::SelfLoop(0));
        assert_eq!(b.add_edge(0, 3).unwrap_err(), Error::VertexOutOfRange { vertex: 3, n: 3 });
        b.add_edge(0, 1).unwrap();
        assert_eq!(b.add_edge(1, 0).unwrap_err(), Error::DuplicateEdge(0, 1));
    }

    #[test]
    fn neighborhoods() {
        let tri = Graph::complete(3);
        assert_eq!(tri.open_neighborhood(0).unwrap(), set(&[1, 2]));
        let p3 = Graph::path(3);
        assert_eq!(p3.closed_set_neighborhood(&set(&[0, 2])).unwrap(), set(&[0, 1, 2]));
        assert_eq!(p3.set_neighborhood(&set(&[0, 2])).unwrap(), set(&[1]));
        assert_eq!(p3.closed_neighborhood(1).unwrap(), set(&[0, 1, 2]));
        assert!(matches!(p3.open_neighborhood(3), Err(Error::VertexOutOfRange { .. })));
        assert!(p3.set_neighborhood(&set(&[5])).is_err());
    }

    #[test]
    fn star_hub_sees_everything() {
        let g = star_construction(1, 2, 3).unwrap();
        assert_eq!(g.open_neighborhood(0).unwrap(), set(&[1, 2, 3, 4, 5, 6]));
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
    }

    #[test]
    fn removal_examples() {
        let k3 = Graph::complete(4).remove_vertices(&set(&[2])).unwrap();
        assert_eq!(k3.graph, Graph::complete(3));
        assert_eq!(k3.original, vec![0, 1, 3]);

        let p4 = Graph::cycle(5).unwrap().remove_vertices(&set(&[0])).unwrap();
        assert_eq!(p4.graph, Graph::path(4));

        let g = star_construction(1, 2, 3).unwrap();
        let rest = g.remove_vertices(&set(&[0])).unwrap();
        assert_eq!(rest.graph.m(), 6);
        let comps = crate::connectivity::components(&rest.graph);
        assert_eq!(comps, vec![set(&[0, 1, 2]), set(&[3, 4, 5])]);
        assert!(comps.iter().all(|c| rest.graph.is_clique(c)));
    }

    #[test]
    fn complement_of_cycle() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        assert_eq!(co.m(), 5);
        assert!(co.has_edge(0, 2) && !co.has_edge(0, 1));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
            })
        })
    }

    proptest! {
        #[test]
        fn removal_keeps_exactly_the_untouched_edges(g in arb_graph(), mask in any::<u16>()) {
            let s: VertexSet = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
            let r = g.remove_vertices(&s).unwrap();
            let mut expected: Vec<(usize, usize)> =
                g.edges().filter(|&(u, v)| !s.contains(u) && !s.contains(v)).collect();
            let mut got: Vec<(usize, usize)> =
                r.graph.edges().map(|(u, v)| (r.original[u], r.original[v])).collect();
            expected.sort();
            got.sort();
            prop_assert_eq!(got, expected);
            prop_assert!(r.original.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn handshake(g in arb_graph()) {
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
            for v in 0..g.n() {
                prop_assert!(!g.has_edge(v, v));
                for u in g.neighbors(v) {
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
    }
}
