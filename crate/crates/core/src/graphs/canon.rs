//! Canonical forms for small graphs.
//!
//! The canonical string is the lexicographically least upper-triangle
//! adjacency string over all vertex orders that respect an initial colour
//! refinement. The search prunes on prefixes and collapses interchangeable
//! twins, which keeps graphs of up to ten vertices fast.

use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, Graph};
use crate::error::{Caps, Error, Result};

/// Canonical key of a graph or bipartite graph. Two keys are equal exactly
/// when the inputs are isomorphic (side-preserving for bipartite graphs).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    kind: u8,
    n: u16,
    n1: u16,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn is_bipartite(&self) -> bool {
        self.kind == 1
    }

    /// Rebuilds the canonical representative. For bipartite keys this is the
    /// underlying graph with the left side first.
    pub fn to_graph(&self) -> Graph {
        Graph::from_column_bits(self.n(), &self.bits)
    }

    pub fn to_bipartite(&self) -> Option<BipartiteGraph> {
        if self.kind != 1 {
            return None;
        }
        let g = self.to_graph();
        let n1 = self.n1 as usize;
        let mut b = BipartiteGraph::new(n1, self.n() - n1);
        for (u, v) in g.edges() {
            b.adj[u].insert(v - n1);
        }
        Some(b)
    }

    /// Hex rendering of the adjacency bits, stable across runs.
    pub fn hex(&self) -> String {
        let mut s = format!("{}:{}:{}:", self.kind, self.n, self.n1);
        for w in &self.bits {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    cells: Vec<Vec<usize>>,
    cell_at: Vec<usize>,
    twins: Vec<u64>,
    perm: Vec<usize>,
    used: u64,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.cur < *b,
            };
            if better {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            return;
        }
        let cell = self.cell_at[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            // Interchangeable twins: only the least unused one is tried.
            if self.twins[v] & !self.used & ((1u64 << v) - 1) != 0 {
                continue;
            }
            let start = self.cur.len();
            for i in 0..pos {
                self.cur.push((self.adj[self.perm[i]] >> v & 1) as u8);
            }
            let keep = match &self.best {
                None => true,
                Some((b, _)) => self.cur[..] <= b[..self.cur.len()],
            };
            if keep {
                self.perm.push(v);
                self.used |= 1 << v;
                self.run(pos + 1);
                self.used &= !(1 << v);
                self.perm.pop();
            }
            self.cur.truncate(start);
        }
    }
}

/// Colour refinement with isomorphism-invariant colour names.
fn refine(adj: &[u64], init: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut col = init.to_vec();
    let mut classes = {
        let mut c = col.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = (0..n)
                    .filter(|&u| adj[v] >> u & 1 == 1)
                    .map(|u| col[u])
                    .collect();
                nb.sort_unstable();
                (col[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| uniq.binary_search(s).unwrap() as u32)
            .collect();
        col = next;
        if uniq.len() == classes {
            return col;
        }
        classes = uniq.len();
    }
}

fn search(adj: &[u64], init: &[u32]) -> (Vec<u8>, Vec<usize>) {
    let n = adj.len();
    let col = refine(adj, init);
    let ncol = col.iter().copied().max().map_or(0, |c| c as usize + 1);
    let mut cells = vec![Vec::new(); ncol];
    for v in 0..n {
        cells[col[v] as usize].push(v);
    }
    let mut cell_at = Vec::with_capacity(n);
    for (c, cell) in cells.iter().enumerate() {
        cell_at.extend(std::iter::repeat_n(c, cell.len()));
    }
    let mut twins = vec![0u64; n];
    for v in 0..n {
        for u in 0..n {
            if u == v || col[u] != col[v] {
                continue;
            }
            let strip = !(1u64 << u | 1u64 << v);
            if adj[u] & strip == adj[v] & strip {
                twins[v] |= 1 << u;
            }
        }
    }
    let mut s = Search {
        n,
        adj,
        cells,
        cell_at,
        twins,
        perm: Vec::with_capacity(n),
        used: 0,
        cur: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    s.run(0);
    s.best.unwrap_or_default()
}

fn pack(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

/// Canonical form and labelling. The labelling maps each original vertex to
/// its position in the canonical representative.
pub fn canonical_labelling(g: &Graph, caps: &Caps) -> Result<(CanonicalForm, Vec<usize>)> {
    Error::check_cap("canonical form vertices", g.n(), caps.canon.min(64))?;
    let adj = g.masks();
    let (bits, order) = search(&adj, &vec![0; g.n()]);
    let mut label = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        label[v] = pos;
    }
    let key = CanonicalForm {
        kind: 0,
        n: g.n() as u16,
        n1: 0,
        bits: pack(&bits),
    };
    Ok((key, label))
}

pub fn canonical_form(g: &Graph, caps: &Caps) -> Result<CanonicalForm> {
    canonical_labelling(g, caps).map(|(k, _)| k)
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph, caps: &Caps) -> Result<Graph> {
    canonical_form(g, caps).map(|k| k.to_graph())
}

/// Canonical form under isomorphisms that map each side onto itself.
pub fn bip_canonical_form(b: &BipartiteGraph, caps: &Caps) -> Result<CanonicalForm> {
    Error::check_cap("canonical form vertices", b.n(), caps.canon.min(64))?;
    let g = b.underlying();
    let init: Vec<u32> = (0..b.n()).map(|v| u32::from(v >= b.n1())).collect();
    let (bits, _) = search(&g.masks(), &init);
    Ok(CanonicalForm {
        kind: 1,
        n: b.n() as u16,
        n1: b.n1() as u16,
        bits: pack(&bits),
    })
}

pub fn is_isomorphic(a: &Graph, b: &Graph, caps: &Caps) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a, caps)? == canonical_form(b, caps)?)
}
