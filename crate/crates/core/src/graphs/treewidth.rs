//! Exact treewidth by dynamic programming over vertex subsets, plus the
//! tree decompositions derived from an optimal elimination order.

use super::Graph;
use crate::error::{Caps, Error, Result};

/// Vertices outside `s ∪ {v}` reachable from `v` through paths whose internal
/// vertices lie in `s`.
fn q_size(adj: &[u64], s: u64, v: usize) -> u32 {
    let mut seen = 1u64 << v;
    let mut stack = vec![v];
    let mut outside = 0u64;
    while let Some(u) = stack.pop() {
        let mut nb = adj[u] & !seen;
        seen |= nb;
        outside |= nb & !s;
        nb &= s;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            stack.push(w);
        }
    }
    outside.count_ones()
}

/// Treewidth together with an elimination order attaining it. The order
/// lists vertices from first eliminated to last.
pub fn optimal_elimination_order(g: &Graph, caps: &Caps) -> Result<(i32, Vec<usize>)> {
    let n = g.n();
    Error::check_cap("treewidth vertices", n, caps.treewidth.min(20))?;
    if n == 0 {
        return Ok((-1, Vec::new()));
    }
    let adj = g.masks();
    let full = (1u64 << n) - 1;
    let mut tw = vec![i32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    tw[0] = i32::MIN;
    for s in 1..=full {
        let mut best = i32::MAX;
        let mut arg = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1u64 << v);
            let cand = tw[without as usize].max(q_size(&adj, without, v) as i32);
            if cand < best {
                best = cand;
                arg = v;
            }
        }
        tw[s as usize] = best;
        choice[s as usize] = arg as u8;
    }
    // choice[S] is the vertex of S eliminated last among S.
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1u64 << v);
    }
    order.reverse();
    Ok((tw[full as usize].max(0), order))
}

/// Exact treewidth; `-1` for the empty graph.
pub fn treewidth_exact(g: &Graph, caps: &Caps) -> Result<i32> {
    optimal_elimination_order(g, caps).map(|(w, _)| w)
}

/// A rooted tree decomposition. Node `i` has bag `bags[i]` and parent
/// `parent[i]`; the root has no parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    /// Largest bag size minus one.
    pub fn width(&self) -> i32 {
        self.bags.iter().map(|b| b.len() as i32).max().unwrap_or(0) - 1
    }

    /// Checks vertex coverage, edge coverage and connectivity of every
    /// vertex's occurrences.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let contains = |b: &Vec<usize>, v: usize| b.binary_search(&v).is_ok();
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| contains(b, u) && contains(b, v)) {
                return false;
            }
        }
        for v in 0..g.n() {
            let nodes: Vec<usize> = (0..self.bags.len())
                .filter(|&i| contains(&self.bags[i], v))
                .collect();
            if nodes.is_empty() {
                return false;
            }
            // Occurrences are connected iff exactly one of them has a parent
            // outside the set.
            let tops = nodes
                .iter()
                .filter(|&&i| match self.parent[i] {
                    Some(p) => !contains(&self.bags[p], v),
                    None => true,
                })
                .count();
            if tops != 1 {
                return false;
            }
        }
        true
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    /// Converts to a nice decomposition whose root bag is empty.
    pub fn to_nice(&self) -> NiceDecomposition {
        let mut nice = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
            root: 0,
        };
        let children = self.children();
        let roots: Vec<usize> = (0..self.bags.len())
            .filter(|&i| self.parent[i].is_none())
            .collect();
        let mut tops = Vec::new();
        for r in roots {
            let top = build(self, &children, r, &mut nice);
            tops.push(nice.retarget(top, &[]));
        }
        nice.root = match tops.len() {
            0 => nice.push(NiceNode::Leaf, Vec::new()),
            _ => nice.join_all(tops, Vec::new()),
        };
        nice
    }
}

fn build(
    td: &TreeDecomposition,
    children: &[Vec<usize>],
    x: usize,
    nice: &mut NiceDecomposition,
) -> usize {
    let bag = &td.bags[x];
    let mut heads = Vec::new();
    for &c in &children[x] {
        let sub = build(td, children, c, nice);
        heads.push(nice.retarget(sub, bag));
    }
    if heads.is_empty() {
        let leaf = nice.push(NiceNode::Leaf, Vec::new());
        return nice.retarget(leaf, bag);
    }
    nice.join_all(heads, bag.clone())
}

/// A node of a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

/// Nice tree decomposition. Children always precede their parents in
/// `nodes`, so a forward pass is a valid bottom-up order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    /// Sorted bag of each node.
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

impl NiceDecomposition {
    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Chains forget and introduce nodes on top of `from` until the bag is
    /// `target`.
    fn retarget(&mut self, from: usize, target: &[usize]) -> usize {
        let mut cur = from;
        let have = self.bags[from].clone();
        for &v in have.iter().filter(|v| !target.contains(v)) {
            let bag: Vec<usize> = self.bags[cur].iter().copied().filter(|&w| w != v).collect();
            cur = self.push(
                NiceNode::Forget {
                    vertex: v,
                    child: cur,
                },
                bag,
            );
        }
        for &v in target.iter().filter(|v| !have.contains(v)) {
            let mut bag = self.bags[cur].clone();
            bag.push(v);
            bag.sort_unstable();
            cur = self.push(
                NiceNode::Introduce {
                    vertex: v,
                    child: cur,
                },
                bag,
            );
        }
        cur
    }

    fn join_all(&mut self, heads: Vec<usize>, bag: Vec<usize>) -> usize {
        let mut it = heads.into_iter();
        let mut acc = it.next().expect("at least one head");
        for h in it {
            acc = self.push(
                NiceNode::Join {
                    left: acc,
                    right: h,
                },
                bag.clone(),
            );
        }
        acc
    }

    pub fn width(&self) -> i32 {
        self.bags.iter().map(|b| b.len() as i32).max().unwrap_or(0) - 1
    }
}

/// Tree decomposition of optimal width, one node per vertex.
pub fn tree_decomposition(g: &Graph, caps: &Caps) -> Result<TreeDecomposition> {
    let (_, order) = optimal_elimination_order(g, caps)?;
    Ok(decomposition_from_order(g, &order))
}

pub(crate) fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = g.masks();
    let mut bags = vec![Vec::new(); n];
    let mut parent = vec![None; n];
    for &v in order {
        let mut later = Vec::new();
        let mut m = adj[v];
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if pos[w] > pos[v] {
                later.push(w);
            }
        }
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a] |= 1 << b;
                }
            }
        }
        parent[v] = later.iter().copied().min_by_key(|&w| pos[w]);
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags[v] = bag;
    }
    TreeDecomposition { bags, parent }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_treewidths() {
        let caps = Caps::DEFAULT;
        assert_eq!(treewidth_exact(&Graph::new(0), &caps).unwrap(), -1);
        assert_eq!(treewidth_exact(&Graph::new(5), &caps).unwrap(), 0);
        assert_eq!(treewidth_exact(&Graph::path(6), &caps).unwrap(), 1);
        assert_eq!(treewidth_exact(&Graph::cycle(7), &caps).unwrap(), 2);
        assert_eq!(treewidth_exact(&Graph::clique(6), &caps).unwrap(), 5);
        let k33 = crate::graphs::BipartiteGraph::biclique(3).underlying();
        assert_eq!(treewidth_exact(&k33, &caps).unwrap(), 3);
        // 3x3 grid
        let mut grid = Graph::new(9);
        for r in 0..3 {
            for c in 0..3 {
                let v = r * 3 + c;
                if c < 2 {
                    grid.insert_edge(v, v + 1);
                }
                if r < 2 {
                    grid.insert_edge(v, v + 3);
                }
            }
        }
        assert_eq!(treewidth_exact(&grid, &caps).unwrap(), 3);
        // Petersen graph
        let mut pet = Graph::new(10);
        for i in 0..5 {
            pet.insert_edge(i, (i + 1) % 5);
            pet.insert_edge(i, i + 5);
            pet.insert_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(treewidth_exact(&pet, &caps).unwrap(), 4);
    }

    #[test]
    fn decompositions_are_valid_and_optimal() {
        let caps = Caps::DEFAULT;
        for m in (0u64..1 << 10).step_by(37) {
            let g = Graph::from_pair_mask(5, m);
            let td = tree_decomposition(&g, &caps).unwrap();
            assert!(td.is_valid_for(&g), "{g:?}");
            let w = treewidth_exact(&g, &caps).unwrap();
            assert_eq!(td.width(), w);
            let nice = td.to_nice();
            assert_eq!(nice.width(), w.max(0));
            assert!(nice.bags[nice.root].is_empty());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            treewidth_exact(&Graph::new(13), &Caps::DEFAULT),
            Err(Error::Capacity { .. })
        ));
    }
}
