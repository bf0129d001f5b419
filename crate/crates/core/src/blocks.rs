//! Blocks and the block-cut tree (Hopcroft–Tarjan).

use serde::Serialize;

use crate::graph::Graph;
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Blocks in lexicographic order of their vertex sets.
    pub blocks: Vec<VertexSet>,
    pub cutvertices: VertexSet,
    /// Block-cut incidences `(block index, cutvertex)`.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Whether the block-cut graph (blocks plus cutvertices as nodes) is a tree.
    pub fn is_tree(&self) -> bool {
        let nb = self.blocks.len();
        let cuts = self.cutvertices.to_vec();
        let nodes = nb + cuts.len();
        if nodes == 0 || self.tree_edges.len() + 1 != nodes {
            return false;
        }
        let cut_index = |v: usize| nb + cuts.binary_search(&v).unwrap();
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(b, v) in &self.tree_edges {
            let (x, y) = (find(&mut parent, b), find(&mut parent, cut_index(v)));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        true
    }
}

struct Dfs<'g> {
    g: &'g Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    cut: VertexSet,
}

impl Dfs<'_> {
    fn visit(&mut self, v: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[v] = self.time;
        self.low[v] = self.time;
        let mut children = 0;
        for w in self.g.neighbors(v).iter() {
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push((v, w));
                self.visit(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent.is_some() || children > 1 {
                        self.cut.insert(v);
                    }
                    let mut block = VertexSet::new();
                    while let Some((a, b)) = self.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[v] {
                self.stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::new(),
    };
    for v in 0..n {
        if dfs.disc[v] == 0 {
            if g.degree(v) == 0 {
                dfs.disc[v] = usize::MAX;
                dfs.blocks.push(VertexSet::singleton(v));
            } else {
                dfs.visit(v, None);
            }
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    let cutvertices = dfs.cut;
    let tree_edges = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.intersection(&cutvertices).iter().map(move |v| (i, v)).collect::<Vec<_>>())
        .collect();
    BlockDecomposition { blocks, cutvertices, tree_edges }
}
