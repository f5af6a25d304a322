//! Built-in properties with direct decision procedures.

use std::collections::VecDeque;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::{bip_class_hash, class_hash, splitmix, BipartitePropertyOracle, PropertyOracle};
use crate::error::{Caps, Error, Result};
use crate::graphs::{BipartiteGraph, Graph};

pub fn has_triangle(g: &Graph) -> bool {
    g.edges().into_iter().any(|(u, v)| {
        let mut common = g.neighbor_set(u).clone();
        common.intersect_with(g.neighbor_set(v));
        !common.is_clear()
    })
}

pub fn has_claw(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nb: Vec<usize> = g.neighbors(c).collect();
        nb.iter().enumerate().any(|(i, &a)| {
            nb[i + 1..].iter().enumerate().any(|(j, &b)| {
                !g.has_edge(a, b)
                    && nb[i + j + 2..]
                        .iter()
                        .any(|&d| !g.has_edge(a, d) && !g.has_edge(b, d))
            })
        })
    })
}

/// Every component is a clique.
pub fn is_cluster(g: &Graph) -> bool {
    g.edges().into_iter().all(|(u, v)| {
        let mut a = g.neighbor_set(u).clone();
        a.insert(u);
        let mut b = g.neighbor_set(v).clone();
        b.insert(v);
        a == b
    })
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Length of the shortest odd cycle, `None` for bipartite graphs.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    let len = 2 * dist[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Induced cycle on at least five vertices.
pub fn has_hole(g: &Graph) -> bool {
    fn extend(g: &Graph, path: &mut Vec<usize>, on: &mut FixedBitSet) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        for v in g.neighbors(last) {
            if v <= start || on.contains(v) {
                continue;
            }
            // v may touch only the last vertex and, when closing, the start.
            let inner = &path[1..path.len() - 1];
            if inner.iter().any(|&p| g.has_edge(p, v)) {
                continue;
            }
            if g.has_edge(start, v) {
                if path.len() + 1 >= 5 {
                    return true;
                }
                continue;
            }
            path.push(v);
            on.insert(v);
            let found = extend(g, path, on);
            on.set(v, false);
            path.pop();
            if found {
                return true;
            }
        }
        false
    }
    let mut on = FixedBitSet::with_capacity(g.n());
    for s in 0..g.n() {
        for t in g.neighbors(s).filter(|&t| t > s) {
            let mut path = vec![s, t];
            on.insert(s);
            on.insert(t);
            let found = extend(g, &mut path, &mut on);
            on.clear();
            if found {
                return true;
            }
        }
    }
    false
}

pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, cand: FixedBitSet, size: usize, best: &mut usize) {
        if size + cand.count_ones(..) <= *best {
            return;
        }
        if cand.is_clear() {
            *best = size;
            return;
        }
        let mut rest = cand;
        while let Some(v) = rest.ones().next() {
            if size + rest.count_ones(..) <= *best {
                return;
            }
            let mut next = rest.clone();
            next.intersect_with(g.neighbor_set(v));
            grow(g, next, size + 1, best);
            rest.set(v, false);
        }
    }
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut best = 0;
    grow(g, all, 0, &mut best);
    best
}

fn colourable(g: &Graph, colours: usize) -> bool {
    fn place(
        g: &Graph,
        order: &[usize],
        i: usize,
        col: &mut [usize],
        colours: usize,
        used: usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // Symmetry breaking: at most one fresh colour per step.
        for c in 0..colours.min(used + 1) {
            if g.neighbors(v).all(|w| col[w] != c) {
                col[v] = c;
                if place(g, order, i + 1, col, colours, used.max(c + 1)) {
                    return true;
                }
                col[v] = usize::MAX;
            }
        }
        false
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut col = vec![usize::MAX; g.n()];
    place(g, &order, 0, &mut col, colours, 0)
}

pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.n()).find(|&c| colourable(g, c)).unwrap_or(g.n())
}

/// Parameterised property names end in `-<d>`.
fn parameter(name: &str, prefix: &str) -> Option<Result<usize>> {
    name.strip_prefix(prefix).map(|d| {
        d.parse::<usize>()
            .map_err(|_| Error::input(format!("bad parameter in property name {name:?}")))
    })
}

fn make(name: &str) -> Result<PropertyOracle> {
    let p = match name {
        "true" => PropertyOracle::new(name, true, true, |_| true),
        "edgeless" => PropertyOracle::new(name, true, true, Graph::is_edgeless),
        "complete" => PropertyOracle::new(name, true, false, Graph::is_complete),
        "triangle-free" => PropertyOracle::new(name, true, true, |g| !has_triangle(g)),
        "claw-free" => PropertyOracle::new(name, true, false, |g| !has_claw(g)),
        "cluster" => PropertyOracle::new(name, true, false, is_cluster),
        "bipartite" => PropertyOracle::new(name, true, true, is_bipartite),
        "hole-free" => PropertyOracle::new(name, true, true, |g| !has_hole(g)),
        "disconnected" => PropertyOracle::new(name, false, true, |g| g.components().len() >= 2),
        "connected" => PropertyOracle::new(name, false, true, |g| g.components().len() == 1),
        _ => {
            if let Some(d) = parameter(name, "chromatic-number-") {
                let d = d?;
                PropertyOracle::new(name, false, true, move |g| chromatic_number(g) == d)
            } else if let Some(d) = parameter(name, "clique-number-") {
                let d = d?;
                PropertyOracle::new(name, false, true, move |g| clique_number(g) == d)
            } else if let Some(d) = parameter(name, "odd-girth-") {
                let d = d?;
                PropertyOracle::new(name, false, true, move |g| odd_girth(g) == Some(d))
            } else {
                return Err(Error::input(format!("unknown property {name:?}")));
            }
        }
    };
    p
}

const DEFAULT_NAMES: [&str; 13] = [
    "true",
    "edgeless",
    "complete",
    "triangle-free",
    "claw-free",
    "cluster",
    "bipartite",
    "hole-free",
    "disconnected",
    "connected",
    "chromatic-number-3",
    "clique-number-2",
    "odd-girth-5",
];

/// The built-in graph properties, each registered once.
pub fn builtin_catalogue() -> &'static [PropertyOracle] {
    static CAT: OnceLock<Vec<PropertyOracle>> = OnceLock::new();
    CAT.get_or_init(|| {
        DEFAULT_NAMES
            .iter()
            .map(|n| make(n).expect("built-in properties are invariant"))
            .collect()
    })
}

/// Looks up a built-in property; parameterised ones such as
/// `chromatic-number-4` accept any `d`.
pub fn builtin(name: &str) -> Result<PropertyOracle> {
    match builtin_catalogue().iter().find(|p| p.name() == name) {
        Some(p) => Ok(p.clone()),
        None => make(name),
    }
}

fn has_perfect_matching(b: &BipartiteGraph) -> bool {
    fn augment(b: &BipartiteGraph, u: usize, seen: &mut [bool], mate: &mut [usize]) -> bool {
        for v in 0..b.n2() {
            if b.has_edge(u, v) && !seen[v] {
                seen[v] = true;
                if mate[v] == usize::MAX || augment(b, mate[v], seen, mate) {
                    mate[v] = u;
                    return true;
                }
            }
        }
        false
    }
    if b.n1() != b.n2() {
        return false;
    }
    let mut mate = vec![usize::MAX; b.n2()];
    (0..b.n1()).all(|u| augment(b, u, &mut vec![false; b.n2()], &mut mate))
}

fn make_bip(name: &str) -> Result<BipartitePropertyOracle> {
    match name {
        "true" => BipartitePropertyOracle::new(name, |_| true),
        "false" => BipartitePropertyOracle::new(name, |_| false),
        "has-edge" => BipartitePropertyOracle::new(name, |b| b.edge_count() > 0),
        "perfect-matching" => BipartitePropertyOracle::new(name, has_perfect_matching),
        "left-size-1" => BipartitePropertyOracle::new(name, |b| b.n1() == 1),
        "left-dominating" => {
            BipartitePropertyOracle::new(name, |b| (0..b.n1()).all(|u| b.left_degree(u) > 0))
        }
        _ => Err(Error::input(format!("unknown bipartite property {name:?}"))),
    }
}

const BIP_NAMES: [&str; 6] = [
    "true",
    "false",
    "has-edge",
    "perfect-matching",
    "left-size-1",
    "left-dominating",
];

pub fn builtin_bip_catalogue() -> &'static [BipartitePropertyOracle] {
    static CAT: OnceLock<Vec<BipartitePropertyOracle>> = OnceLock::new();
    CAT.get_or_init(|| {
        BIP_NAMES
            .iter()
            .map(|n| make_bip(n).expect("built-in properties are invariant"))
            .collect()
    })
}

pub fn builtin_bip(name: &str) -> Result<BipartitePropertyOracle> {
    builtin_bip_catalogue()
        .iter()
        .find(|p| p.name() == name)
        .cloned()
        .ok_or_else(|| Error::input(format!("unknown bipartite property {name:?}")))
}

/// A pseudo-random graph property: one seeded coin per isomorphism class.
/// Only defined on graphs within the canonical-form cap.
pub fn random_property(seed: u64) -> PropertyOracle {
    let caps = Caps::DEFAULT;
    PropertyOracle::trusted(format!("random-{seed}"), false, false, move |g| {
        splitmix(seed ^ class_hash(g, &caps)) & 1 == 1
    })
}

/// A pseudo-random bipartite property: one seeded coin per consistent
/// isomorphism class.
pub fn random_bip_property(seed: u64) -> BipartitePropertyOracle {
    let caps = Caps::DEFAULT;
    BipartitePropertyOracle::trusted(format!("random-bip-{seed}"), move |b| {
        splitmix(seed ^ bip_class_hash(b, &caps)) & 1 == 1
    })
}

/// A cheaper random bipartite property that only looks at the side sizes
/// and the sorted degree sequences of both sides. Invariant under
/// consistent isomorphism, and usable on hosts of any size.
pub fn random_bip_property_by_degrees(seed: u64) -> BipartitePropertyOracle {
    BipartitePropertyOracle::trusted(format!("random-bip-deg-{seed}"), move |b| {
        let mut left: Vec<usize> = (0..b.n1()).map(|u| b.left_degree(u)).collect();
        let mut right: Vec<usize> = (0..b.n2()).map(|v| b.right_degree(v)).collect();
        left.sort_unstable();
        right.sort_unstable();
        let mut h = splitmix(seed ^ (b.n1() as u64) << 32 ^ b.n2() as u64);
        for d in left
            .into_iter()
            .chain(std::iter::once(usize::MAX))
            .chain(right)
        {
            h = splitmix(h ^ d as u64);
        }
        h & 1 == 1
    })
}
