//! Simple graphs, bipartite graphs with an ordered bipartition, twin-free
//! quotients, canonical forms and exact treewidth.
//!
//! Vertices are dense integers `0..n`. Adjacency is stored as one bitset per
//! vertex; all values are immutable once built and every operation returns a
//! fresh value.

mod canon;
mod treewidth;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use canon::{
    bip_canonical_form, canonical_form, canonical_graph, canonical_labelling, is_isomorphic,
    CanonicalForm,
};
pub use treewidth::{
    optimal_elimination_order, tree_decomposition, treewidth_exact, NiceDecomposition, NiceNode,
    TreeDecomposition,
};

/// An undirected graph without self-loops on the vertex set `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn clique(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn independent(n: usize) -> Self {
        Graph::new(n)
    }

    /// The path with `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    /// The star with centre `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge(0, v);
        }
        g
    }

    /// Builds a graph on at most 64 vertices from the upper-triangle bits of
    /// an adjacency matrix, enumerated as `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn from_column_bits(n: usize, bits: &[u64]) -> Self {
        let mut g = Graph::new(n);
        let mut idx = 0usize;
        for j in 1..n {
            for i in 0..j {
                if bits[idx / 64] >> (idx % 64) & 1 == 1 {
                    g.insert_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }

    /// Builds a graph whose edges are the set bits of `mask` over the
    /// lexicographic pair order `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::new(n);
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> idx & 1 == 1 {
                    g.insert_edge(u, v);
                }
                idx += 1;
            }
        }
        g
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge_mut(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    /// A copy of the graph with the edge `{u, v}` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge_mut(u, v);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub(crate) fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Neighbourhood of `v` as a bit mask. Only valid for `n <= 64`.
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[v].ones().fold(0u64, |m, u| m | 1 << u)
    }

    pub(crate) fn masks(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.neighbor_mask(v)).collect()
    }

    /// The subgraph induced by `subset`. Vertices are renumbered `0..|S|` in
    /// ascending order of their original labels; duplicates are ignored.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::input(format!(
                "vertex {bad} out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.induced_sorted(&s))
    }

    /// Induced subgraph on an already sorted, deduplicated, in-range list.
    pub(crate) fn induced_sorted(&self, s: &[usize]) -> Graph {
        let mut g = Graph::new(s.len());
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate().skip(i + 1) {
                if self.adj[u].contains(v) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// The graph obtained by deleting the given vertices.
    pub fn without_vertices(&self, removed: &[usize]) -> Result<Graph> {
        let mut drop = FixedBitSet::with_capacity(self.n);
        for &v in removed {
            if v >= self.n {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            drop.insert(v);
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop.contains(v)).collect();
        Ok(self.induced_sorted(&keep))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabels the vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("not a permutation"));
            }
        }
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + self.n, v + self.n);
        }
        g
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|a| a.is_clear())
    }

    /// Connected components, each sorted, ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.adj[u].ones() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Partitions the vertices into false-twin classes and returns the
    /// quotient graph with one vertex per block.
    pub fn twin_free_quotient(&self) -> (Graph, BlockPartition) {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![usize::MAX; self.n];
        for v in 0..self.n {
            if block_of[v] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![v];
            block_of[v] = id;
            for u in v + 1..self.n {
                if block_of[u] == usize::MAX && self.adj[u] == self.adj[v] {
                    block.push(u);
                }
            }
            for &u in &block {
                block_of[u] = id;
            }
            blocks.push(block);
        }
        let mut q = Graph::new(blocks.len());
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if self.has_edge(blocks[i][0], blocks[j][0]) {
                    q.insert_edge(i, j);
                }
            }
        }
        (q, BlockPartition { blocks, block_of })
    }

    /// `true` if `u` and `v` have identical neighbourhoods.
    pub fn are_false_twins(&self, u: usize, v: usize) -> bool {
        self.adj[u] == self.adj[v]
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// The false-twin classes of a graph.
///
/// Blocks are sorted internally and ordered by their least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A bipartite graph `(V1, V2, E)` with a fixed, ordered bipartition.
///
/// Left vertices are `0..n1`, right vertices `0..n2`. When a single index
/// space is needed (underlying graph, colourings) left vertex `i` is `i` and
/// right vertex `j` is `n1 + j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    adj: Vec<FixedBitSet>,
}

impl BipartiteGraph {
    pub fn new(n1: usize, n2: usize) -> Self {
        BipartiteGraph {
            n1,
            n2,
            adj: vec![FixedBitSet::with_capacity(n2); n1],
        }
    }

    pub fn from_edges(n1: usize, n2: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = BipartiteGraph::new(n1, n2);
        for &(u, v) in edges {
            if u >= n1 || v >= n2 {
                return Err(Error::input(format!(
                    "bipartite edge ({u}, {v}) out of range for sides {n1}, {n2}"
                )));
            }
            b.adj[u].insert(v);
        }
        Ok(b)
    }

    pub fn complete(n1: usize, n2: usize) -> Self {
        let mut b = BipartiteGraph::new(n1, n2);
        for row in &mut b.adj {
            row.insert_range(..);
        }
        b
    }

    /// The `(k, k)`-biclique.
    pub fn biclique(k: usize) -> Self {
        BipartiteGraph::complete(k, k)
    }

    /// `k` left and `k` right vertices and no edges.
    pub fn independent(k: usize) -> Self {
        BipartiteGraph::new(k, k)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum()
    }

    /// Edges `(left, right)` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.ones().map(|v| (u, v)));
        }
        out
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn right_degree(&self, v: usize) -> usize {
        self.adj.iter().filter(|row| row.contains(v)).count()
    }

    /// The underlying graph; left vertex `i` is `i`, right vertex `j` is
    /// `n1 + j`.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.insert_edge(u, self.n1 + v);
        }
        g
    }

    /// `true` if the global vertex index lies on the left side.
    pub fn is_left(&self, global: usize) -> bool {
        global < self.n1
    }

    /// Adjacency in the global index space.
    pub fn has_edge_global(&self, a: usize, b: usize) -> bool {
        match (a < self.n1, b < self.n1) {
            (true, false) => self.adj[a].contains(b - self.n1),
            (false, true) => self.adj[b].contains(a - self.n1),
            _ => false,
        }
    }

    /// The induced subgraph on a set of global vertex indices. Each side keeps
    /// its relative order.
    pub fn induced(&self, subset: &[usize]) -> Result<BipartiteGraph> {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&v| v >= self.n()) {
            return Err(Error::input(format!("vertex {bad} out of range")));
        }
        Ok(self.induced_sorted(&s))
    }

    pub(crate) fn induced_sorted(&self, s: &[usize]) -> BipartiteGraph {
        let left: Vec<usize> = s.iter().copied().filter(|&v| v < self.n1).collect();
        let right: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&v| v >= self.n1)
            .map(|v| v - self.n1)
            .collect();
        let mut b = BipartiteGraph::new(left.len(), right.len());
        for (i, &u) in left.iter().enumerate() {
            for (j, &v) in right.iter().enumerate() {
                if self.adj[u].contains(v) {
                    b.adj[i].insert(j);
                }
            }
        }
        b
    }

    /// The edge-subgraph keeping only the listed edges (same vertex sets).
    pub fn edge_subgraph(&self, keep: &[(usize, usize)]) -> Result<BipartiteGraph> {
        let mut b = BipartiteGraph::new(self.n1, self.n2);
        for &(u, v) in keep {
            if u >= self.n1 || v >= self.n2 || !self.has_edge(u, v) {
                return Err(Error::input(format!("({u}, {v}) is not an edge")));
            }
            b.adj[u].insert(v);
        }
        Ok(b)
    }

    /// The edge-subgraph selected by a bit mask over [`Self::edges`].
    pub fn edge_subgraph_mask(&self, edges: &[(usize, usize)], mask: u64) -> BipartiteGraph {
        let mut b = BipartiteGraph::new(self.n1, self.n2);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.adj[u].insert(v);
            }
        }
        b
    }

    /// The same edges with the two sides exchanged.
    pub fn swap_sides(&self) -> BipartiteGraph {
        let mut b = BipartiteGraph::new(self.n2, self.n1);
        for (u, v) in self.edges() {
            b.adj[v].insert(u);
        }
        b
    }

    /// Relabels each side independently: left `u` becomes `left[u]`, right
    /// `v` becomes `right[v]`.
    pub fn relabel(&self, left: &[usize], right: &[usize]) -> Result<BipartiteGraph> {
        if left.len() != self.n1 || right.len() != self.n2 {
            return Err(Error::input("side permutation has wrong length"));
        }
        let mut b = BipartiteGraph::new(self.n1, self.n2);
        for (u, v) in self.edges() {
            b.adj[left[u]].insert(right[v]);
        }
        Ok(b)
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BipartiteGraph(n1={}, n2={}, edges={:?})",
            self.n1,
            self.n2,
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::clique(4);
        let k3 = k4.induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(k3, Graph::clique(3));
        assert_eq!(k4.induced_subgraph(&[]).unwrap(), Graph::new(0));
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced_subgraph(&[0, 1, 2]).unwrap(), Graph::path(3));
        assert!(matches!(c5.induced_subgraph(&[0, 7]), Err(Error::Input(_))));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::independent(4).complement(), Graph::clique(4));
        let g = Graph::from_edges(5, &[(0, 1), (1, 3), (2, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn self_loops_rejected() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let (q, blocks) = Graph::clique(4).twin_free_quotient();
        assert_eq!(q, Graph::clique(4));
        assert_eq!(blocks.len(), 4);

        for n in 1..6 {
            let (q, blocks) = Graph::independent(n).twin_free_quotient();
            assert_eq!(q, Graph::new(1));
            assert_eq!(blocks.blocks(), &[(0..n).collect::<Vec<_>>()]);
        }

        let (q, blocks) = Graph::cycle(4).twin_free_quotient();
        assert_eq!(q, Graph::clique(2));
        assert_eq!(blocks.blocks(), &[vec![0, 2], vec![1, 3]]);

        let (q, blocks) = Graph::new(0).twin_free_quotient();
        assert_eq!(q, Graph::new(0));
        assert!(blocks.is_empty());
    }

    #[test]
    fn quotient_is_twin_free_and_idempotent() {
        let g = Graph::from_edges(7, &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let (q, _) = g.twin_free_quotient();
        let (qq, b) = q.twin_free_quotient();
        assert_eq!(q, qq);
        assert_eq!(b.len(), q.n());
    }

    #[test]
    fn bipartite_constructors() {
        let b = BipartiteGraph::biclique(2);
        assert_eq!((b.n(), b.edge_count()), (4, 4));
        let i = BipartiteGraph::independent(3);
        assert_eq!((i.n(), i.edge_count()), (6, 0));
        assert_eq!(BipartiteGraph::biclique(1).underlying(), Graph::clique(2));
    }

    #[test]
    fn bipartite_induced_keeps_sides() {
        let b = BipartiteGraph::from_edges(2, 3, &[(0, 0), (1, 2)]).unwrap();
        let s = b.induced(&[1, 2, 4]).unwrap();
        assert_eq!((s.n1(), s.n2()), (1, 2));
        assert_eq!(s.edges(), vec![(0, 1)]);
        assert!(b.has_edge_global(1, 4));
        assert!(!b.has_edge_global(0, 1));
    }
}
