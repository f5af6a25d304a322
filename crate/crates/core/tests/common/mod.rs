#![allow(dead_code)]

use motifkit::{BipartiteGraph, ConsistentColouring, Graph};
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_bipartite(rng: &mut impl Rng, n1: usize, n2: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::from_edges(n1, n2, &edges).unwrap()
}

/// Path with `m` edges as a bipartite graph; vertex `i` of the path is on
/// the left iff `i` is even (odd when `left_first` is false).
pub fn bip_path(m: usize, left_first: bool) -> BipartiteGraph {
    let side = |i: usize| i.is_multiple_of(2) == left_first;
    let n = m + 1;
    let n1 = (0..n).filter(|&i| side(i)).count();
    let mut edges = Vec::new();
    for i in 0..m {
        let (l, r) = if side(i) { (i, i + 1) } else { (i + 1, i) };
        edges.push((l / 2, r / 2));
    }
    BipartiteGraph::from_edges(n1, n - n1, &edges).unwrap()
}

/// A random host coloured by `pattern`, with at most `max_vertices`
/// vertices in total.
pub fn random_coloured(
    rng: &mut impl Rng,
    pattern: &BipartiteGraph,
    max_vertices: usize,
) -> ConsistentColouring {
    let h = pattern.n();
    let budget = max_vertices.max(h);
    let mut sizes = vec![1usize; h];
    for _ in h..budget {
        if rng.gen_bool(0.6) {
            sizes[rng.gen_range(0..h)] += 1;
        }
    }
    if rng.gen_bool(0.1) {
        sizes[rng.gen_range(0..h)] = 0;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (v, &s) in sizes.iter().enumerate() {
        let side = if pattern.is_left(v) {
            &mut left
        } else {
            &mut right
        };
        side.extend(std::iter::repeat_n(v, s));
    }
    let p = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for (i, &a) in left.iter().enumerate() {
        for (j, &b) in right.iter().enumerate() {
            if pattern.has_edge_global(a, b) && rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let host = BipartiteGraph::from_edges(left.len(), right.len(), &edges).unwrap();
    let map = left.into_iter().chain(right).collect();
    ConsistentColouring::new(pattern.clone(), host, map).unwrap()
}
