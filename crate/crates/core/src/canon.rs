//! Canonical labelling by partition refinement and individualisation.
//!
//! The certificate is the lexicographically greatest relabelled adjacency
//! matrix over the leaves of the search tree. Automorphisms found between
//! equal leaves prune sibling branches (orbit pruning) and let the search
//! jump back to the point where the current path left an equivalent one.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::to_graph6;
use crate::graph::Graph;

/// Default vertex limit for canonical labelling.
pub const DEFAULT_CANON_LIMIT: usize = 16;
/// Hard limit imposed by the word-per-row certificate.
pub const MAX_CANON_LIMIT: usize = 64;

/// Isomorphism certificate: equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonically labelled graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_adjacency_words(&self.rows)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(&self.to_graph())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph6())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalForm> {
    let limit = limit.min(MAX_CANON_LIMIT);
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    let (rows, _) = Canonizer::new(g).run();
    Ok(CanonicalForm { n: g.n(), rows })
}

/// Canonical form plus a labelling `perm` with `perm[position] = vertex`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    if g.n() > MAX_CANON_LIMIT {
        return Err(Error::TooLarge { n: g.n(), limit: MAX_CANON_LIMIT });
    }
    let (rows, perm) = Canonizer::new(g).run();
    Ok((CanonicalForm { n: g.n(), rows }, perm))
}

type Partition = Vec<Vec<usize>>;

struct Leaf {
    rows: Vec<u64>,
    perm: Vec<usize>,
    path: Vec<usize>,
}

struct Canonizer {
    n: usize,
    adj: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Canonizer {
    fn new(g: &Graph) -> Self {
        Self { n: g.n(), adj: g.adjacency_words(), first: None, best: None, generators: Vec::new() }
    }

    fn run(mut self) -> (Vec<u64>, Vec<usize>) {
        if self.n == 0 {
            return (Vec::new(), Vec::new());
        }
        let mut root = vec![(0..self.n).collect::<Vec<_>>()];
        self.refine(&mut root);
        let mut path = Vec::new();
        self.search(root, &mut path);
        let best = self.best.unwrap();
        (best.rows, best.perm)
    }

    /// Splits cells by neighbour counts into each splitter cell until stable.
    /// The result depends only on the ordered partition, not on labels.
    fn refine(&self, part: &mut Partition) {
        'outer: loop {
            for s in 0..part.len() {
                let splitter = part[s].iter().fold(0u64, |acc, &v| acc | 1 << v);
                for i in 0..part.len() {
                    if part[i].len() < 2 {
                        continue;
                    }
                    let count = |v: usize| (self.adj[v] & splitter).count_ones();
                    let c0 = count(part[i][0]);
                    if part[i].iter().all(|&v| count(v) == c0) {
                        continue;
                    }
                    let mut cell = std::mem::take(&mut part[i]);
                    cell.sort_by_key(|&v| (count(v), v));
                    let mut groups: Vec<Vec<usize>> = Vec::new();
                    let mut last = None;
                    for v in cell {
                        let c = count(v);
                        if last != Some(c) {
                            groups.push(Vec::new());
                            last = Some(c);
                        }
                        groups.last_mut().unwrap().push(v);
                    }
                    part.splice(i..=i, groups);
                    continue 'outer;
                }
            }
            break;
        }
    }

    fn leaf_rows(&self, perm: &[usize]) -> Vec<u64> {
        let mut pos = vec![0usize; self.n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        perm.iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut bits = self.adj[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1 << pos[w];
                }
                row
            })
            .collect()
    }

    /// Automorphism sending `from.perm[i]` to `to.perm[i]`.
    fn automorphism(&self, from: &[usize], to: &[usize]) -> Vec<usize> {
        let mut g = vec![0; self.n];
        for (a, b) in from.iter().zip(to) {
            g[*a] = *b;
        }
        g
    }

    fn divergence(a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn search(&mut self, part: Partition, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = part.iter().position(|c| c.len() > 1) else {
            return self.visit_leaf(part.into_iter().map(|c| c[0]).collect(), path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &part[target] {
            if !explored.is_empty() && self.same_orbit(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child = part.clone();
            let mut rest = child[target].clone();
            rest.retain(|&x| x != v);
            child.splice(target..=target, [vec![v], rest]);
            self.refine(&mut child);
            path.push(v);
            let jump = self.search(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, perm: Vec<usize>, path: &[usize]) -> Option<usize> {
        let rows = self.leaf_rows(&perm);
        let leaf = Leaf { rows, perm, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.first = Some(Leaf { rows: leaf.rows.clone(), perm: leaf.perm.clone(), path: leaf.path.clone() });
            self.best = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let gen = self.automorphism(&first.perm, &leaf.perm);
            let level = Self::divergence(&first.path, &leaf.path);
            self.generators.push(gen);
            return Some(level);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                let gen = self.automorphism(&best.perm, &leaf.perm);
                let level = Self::divergence(&best.path, &leaf.path);
                self.generators.push(gen);
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Whether `v` shares an orbit with an explored sibling, under the group
    /// generated by known automorphisms fixing the current path pointwise.
    fn same_orbit(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let mut root: Vec<usize> = (0..self.n).collect();
        fn find(r: &mut [usize], mut x: usize) -> usize {
            while r[x] != x {
                r[x] = r[r[x]];
                x = r[x];
            }
            x
        }
        let mut any = false;
        for gen in &self.generators {
            if path.iter().all(|&p| gen[p] == p) {
                any = true;
                for (x, &y) in gen.iter().enumerate() {
                    let (a, b) = (find(&mut root, x), find(&mut root, y));
                    if a != b {
                        root[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut root, v);
        explored.iter().any(|&e| find(&mut root, e) == rv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{tree_of_cliques, TreeTemplate};
    use crate::graph::GraphBuilder;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == a.n() {
                return true;
            }
            for j in 0..b.n() {
                if used[j] || a.degree(i) != b.degree(j) {
                    continue;
                }
                if (0..i).all(|x| a.has_edge(x, i) == b.has_edge(map[x], j)) {
                    map.push(j);
                    used[j] = true;
                    if extend(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        a.n() == b.n() && a.m() == b.m() && extend(a, b, &mut Vec::new(), &mut vec![false; b.n()])
    }

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm).unwrap()
    }

    #[test]
    fn cycle_relabelings_agree() {
        let c5 = Graph::cycle(5).unwrap();
        let base = canonical_form(&c5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            assert_eq!(canonical_form(&shuffled(&c5, &mut rng)).unwrap(), base);
        }
    }

    #[test]
    fn complete_minus_edge_differs() {
        let k4 = Graph::complete(4);
        let k4e = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_ne!(canonical_form(&k4).unwrap(), canonical_form(&k4e).unwrap());
    }

    #[test]
    fn certificate_round_trips_to_an_isomorphic_graph() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let (cf, perm) = canonical_labeling(&g).unwrap();
        assert!(brute_isomorphic(&g, &cf.to_graph()));
        let mut inverse = vec![0; g.n()];
        for (i, &v) in perm.iter().enumerate() {
            inverse[v] = i;
        }
        assert_eq!(g.relabel(&inverse).unwrap(), cf.to_graph());
    }

    #[test]
    fn figure_templates_are_distinct() {
        let star = tree_of_cliques(2, 3, &TreeTemplate::star(5, 2, 3).unwrap()).unwrap();
        let path = tree_of_cliques(2, 3, &TreeTemplate::path(5, 2, 3).unwrap()).unwrap();
        let a = canonical_form_with_limit(&star, 17).unwrap();
        let b = canonical_form_with_limit(&path, 17).unwrap();
        assert_ne!(a, b);
        assert!(matches!(canonical_form(&star), Err(Error::TooLarge { n: 17, limit: 16 })));
    }

    #[test]
    fn symmetric_graphs_finish() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in [Graph::complete(16), Graph::empty(16), Graph::cycle(16).unwrap()] {
            let base = canonical_form(&g).unwrap();
            for _ in 0..5 {
                assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), base);
            }
        }
        // Petersen graph and a relabelling
        let pet = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        let base = canonical_form(&pet).unwrap();
        for _ in 0..20 {
            assert_eq!(canonical_form(&shuffled(&pet, &mut rng)).unwrap(), base);
        }
    }

    #[test]
    fn random_pairs_match_brute_force_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        use rand::Rng;
        let mut agreements = 0;
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let m_cap = n * (n - 1) / 2;
            let m = rng.gen_range(0..=m_cap);
            let random_graph = |rng: &mut ChaCha8Rng| {
                let mut slots: Vec<(usize, usize)> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                slots.shuffle(rng);
                Graph::from_edges(n, slots.into_iter().take(m)).unwrap()
            };
            let a = random_graph(&mut rng);
            // half the time compare against a relabelled copy
            let b = if rng.gen_bool(0.5) { shuffled(&a, &mut rng) } else { random_graph(&mut rng) };
            let same = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
            assert_eq!(same, brute_isomorphic(&a, &b), "{a:?} vs {b:?}");
            agreements += 1;
        }
        assert_eq!(agreements, 1000);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12, 0.1f64..0.9).prop_flat_map(|(n, d)| {
            proptest::collection::vec(prop::bool::weighted(d), n * (n - 1) / 2).prop_map(move |bits| {
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
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
            let base = canonical_form(&g).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..100 {
                prop_assert_eq!(&canonical_form(&shuffled(&g, &mut rng)).unwrap(), &base);
            }
        }
    }
}
