//! Signed multigraphs and digraphs built from diagrams.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::uf::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: i8,
    pub crossing: usize,
}

/// Undirected signed multigraph on vertices `0..vertex_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignedGraph {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub cut_vertices: Vec<usize>,
    /// Edge indices of each block, ordered by smallest edge index.
    pub blocks: Vec<Vec<usize>>,
}

impl SignedGraph {
    pub fn new(vertex_count: usize) -> Self {
        SignedGraph { vertex_count, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, sign: i8, crossing: usize) {
        assert!(u < self.vertex_count && v < self.vertex_count, "edge endpoint out of range");
        self.edges.push(Edge { u, v, sign, crossing });
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Same graph with every sign negated.
    pub fn negated(&self) -> SignedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.sign = -e.sign;
        }
        g
    }

    /// Biconnected blocks by the Hopcroft-Tarjan edge-stack method. A loop
    /// forms a block of its own.
    pub fn blocks(&self) -> Result<BlockDecomposition> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.blocks_of_components())
    }

    /// Blocks of every connected component.
    pub fn blocks_of_components(&self) -> BlockDecomposition {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                blocks.push(vec![i]);
            } else {
                adj[e.u].push((e.v, i));
                adj[e.v].push((e.u, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, edge used to enter, next adjacency index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, in_edge, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let (w, ei) = adj[v][*next];
                    *next += 1;
                    if ei == in_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(ei);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, ei, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(ei);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == in_edge {
                                    break;
                                }
                            }
                            blocks.push(block);
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        // A vertex carrying a loop and any other edge is a cut vertex.
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v && self.edges.iter().enumerate().any(|(j, f)| j != i && (f.u == e.u || f.v == e.u)) {
                is_cut[e.u] = true;
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        BlockDecomposition {
            cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
            blocks,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": (0..self.vertex_count).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "u": e.u, "v": e.v, "sign": e.sign, "crossing": e.crossing + 1,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: i8,
    pub crossing: usize,
}

/// How walks may traverse edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WalkMode {
    /// Edges are followed tail to head only.
    #[default]
    Directed,
    /// Edges may be followed in either direction.
    SemiWalk,
}

/// Signed digraph on colored vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignedDigraph {
    pub colors: Vec<Color>,
    pub edges: Vec<Arrow>,
}

impl SignedDigraph {
    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// `reach[u][v]`: a walk (possibly empty) leads from `u` to `v`.
    pub fn reachability(&self, mode: WalkMode) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for a in &self.edges {
            adj[a.tail].push(a.head);
            if mode == WalkMode::SemiWalk {
                adj[a.head].push(a.tail);
            }
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                seen[s] = true;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for &w in &adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// A walk uses edge `e` and later edge `f` exactly when `f` can be reached
    /// after traversing `e`.
    pub fn has_mixed_walk(&self, mode: WalkMode) -> bool {
        let reach = self.reachability(mode);
        let ends = |a: &Arrow| -> Vec<(usize, usize)> {
            match mode {
                WalkMode::Directed => vec![(a.tail, a.head)],
                WalkMode::SemiWalk => vec![(a.tail, a.head), (a.head, a.tail)],
            }
        };
        for e in &self.edges {
            for f in &self.edges {
                if e.sign == f.sign {
                    continue;
                }
                for (_, eh) in ends(e) {
                    for (ft, _) in ends(f) {
                        if reach[eh][ft] {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.colors.iter().enumerate().map(|(i, c)| serde_json::json!({"id": i, "color": c})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|a| serde_json::json!({
                "tail": a.tail, "head": a.head, "sign": a.sign, "crossing": a.crossing + 1,
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize, i8)]) -> SignedGraph {
        let mut g = SignedGraph::new(n);
        for (i, &(u, v, s)) in edges.iter().enumerate() {
            g.add_edge(u, v, s, i);
        }
        g
    }

    #[test]
    fn triangle_is_one_block() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        let b = g.blocks().unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 2]]);
        assert!(b.cut_vertices.is_empty());
    }

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = graph(5, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, -1), (3, 4, -1), (4, 2, -1)]);
        let b = g.blocks().unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(b.cut_vertices, vec![2]);
    }

    #[test]
    fn parallel_edges_share_a_block() {
        let g = graph(3, &[(0, 1, 1), (0, 1, 1), (1, 2, -1), (1, 2, -1)]);
        let b = g.blocks().unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(b.cut_vertices, vec![1]);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = graph(3, &[(0, 1, 1)]);
        assert_eq!(g.blocks(), Err(Error::Disconnected));
    }

    #[test]
    fn mixed_walks() {
        let all_pos = SignedDigraph {
            colors: vec![Color::White; 3],
            edges: vec![Arrow { tail: 0, head: 1, sign: 1, crossing: 0 }, Arrow { tail: 1, head: 2, sign: 1, crossing: 1 }],
        };
        assert!(!all_pos.has_mixed_walk(WalkMode::Directed));
        let mut path = all_pos.clone();
        path.edges[1].sign = -1;
        assert!(path.has_mixed_walk(WalkMode::Directed));
        // opposite directions: no directed mixed walk, but a semi-walk
        let mut fork = path.clone();
        fork.edges[1] = Arrow { tail: 2, head: 1, sign: -1, crossing: 1 };
        assert!(!fork.has_mixed_walk(WalkMode::Directed));
        assert!(fork.has_mixed_walk(WalkMode::SemiWalk));
    }

    /// Brute-force oracle: extend walks edge by edge up to `|E|` edges.
    fn brute_mixed(g: &SignedDigraph) -> bool {
        let m = g.edges.len();
        // state: (current vertex, seen positive, seen negative)
        let mut frontier: Vec<(usize, bool, bool)> =
            g.edges.iter().map(|a| (a.head, a.sign > 0, a.sign < 0)).collect();
        for _ in 0..m {
            let mut next = Vec::new();
            for &(v, p, n) in &frontier {
                if p && n {
                    return true;
                }
                for a in g.edges.iter().filter(|a| a.tail == v) {
                    next.push((a.head, p || a.sign > 0, n || a.sign < 0));
                }
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        frontier.iter().any(|&(_, p, n)| p && n)
    }

    fn arb_digraph() -> impl Strategy<Value = SignedDigraph> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, prop::bool::ANY), 0..=8).prop_map(move |es| SignedDigraph {
                colors: vec![Color::White; n],
                edges: es
                    .into_iter()
                    .enumerate()
                    .map(|(i, (t, h, s))| Arrow { tail: t, head: h, sign: if s { 1 } else { -1 }, crossing: i })
                    .collect(),
            })
        })
    }

    fn arb_connected_graph() -> impl Strategy<Value = SignedGraph> {
        (1usize..7).prop_flat_map(|n| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n), 0..8);
            (tree, extra).prop_map(move |(tree, extra)| {
                let mut g = SignedGraph::new(n);
                for (i, idx) in tree.iter().enumerate() {
                    g.add_edge(i + 1, idx.index(i + 1), 1, g.edge_count());
                }
                for (u, v) in extra {
                    g.add_edge(u, v, -1, g.edge_count());
                }
                g
            })
        })
    }

    /// Oracle via Menger: subdivide `a` and `b` by midpoints; they share a
    /// block iff no single original vertex separates the two midpoints.
    fn same_block_oracle(g: &SignedGraph, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let (ea, eb) = (g.edges[a], g.edges[b]);
        if ea.u == ea.v || eb.u == eb.v {
            return false;
        }
        let (ma, mb) = (g.vertex_count, g.vertex_count + 1);
        for x in 0..g.vertex_count {
            let mut uf = UnionFind::new(g.vertex_count + 2);
            for (i, e) in g.edges.iter().enumerate() {
                let (p, q) = (e.u, e.v);
                let mid = if i == a { Some(ma) } else if i == b { Some(mb) } else { None };
                match mid {
                    Some(m) => {
                        for end in [p, q] {
                            if end != x {
                                uf.union(m, end);
                            }
                        }
                    }
                    None if p != x && q != x => {
                        uf.union(p, q);
                    }
                    None => {}
                }
            }
            if uf.find(ma) != uf.find(mb) {
                return false;
            }
        }
        true
    }

    proptest! {
        #[test]
        fn reachability_matches_walk_enumeration(g in arb_digraph()) {
            prop_assert_eq!(g.has_mixed_walk(WalkMode::Directed), brute_mixed(&g));
        }

        #[test]
        fn blocks_partition_edges(g in arb_connected_graph()) {
            let b = g.blocks().unwrap();
            let mut all: Vec<usize> = b.blocks.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
            let mut block_of = vec![0; g.edge_count()];
            for (k, bl) in b.blocks.iter().enumerate() {
                for &e in bl {
                    block_of[e] = k;
                }
            }
            for a in 0..g.edge_count() {
                for c in 0..g.edge_count() {
                    prop_assert_eq!(block_of[a] == block_of[c], same_block_oracle(&g, a, c), "edges {} {}", a, c);
                }
            }
        }
    }
}
