//! Homomorphism, embedding and strong-embedding counts, their
//! colour-prescribed variants, and colour-prescribed tensor products.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Caps, Error, Result};
use crate::graphs::{tree_decomposition, BipartiteGraph, Graph, NiceNode};

/// Exact nonnegative count.
pub type Count = BigUint;

/// An `H`-colouring: a homomorphism from a host graph into a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pattern: Graph,
    host: Graph,
    map: Vec<usize>,
}

impl Colouring {
    pub fn new(pattern: Graph, host: Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != host.n() {
            return Err(Error::input(format!(
                "colouring has {} entries for {} host vertices",
                map.len(),
                host.n()
            )));
        }
        if let Some(v) = map.iter().position(|&c| c >= pattern.n()) {
            return Err(Error::input(format!(
                "vertex {v} has colour {} outside the pattern",
                map[v]
            )));
        }
        for (u, v) in host.edges() {
            if !pattern.has_edge(map[u], map[v]) {
                return Err(Error::input(format!(
                    "host edge ({u}, {v}) is not mapped to a pattern edge"
                )));
            }
        }
        Ok(Colouring { pattern, host, map })
    }

    /// The identity colouring of a pattern by itself.
    pub fn identity(pattern: &Graph) -> Self {
        Colouring {
            pattern: pattern.clone(),
            host: pattern.clone(),
            map: (0..pattern.n()).collect(),
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn colour(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.pattern.n()];
        for &c in &self.map {
            hit[c] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Host vertices of each colour, as bitsets over the host.
    pub fn classes(&self) -> Vec<FixedBitSet> {
        let mut out = vec![FixedBitSet::with_capacity(self.host.n()); self.pattern.n()];
        for (v, &c) in self.map.iter().enumerate() {
            out[c].insert(v);
        }
        out
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.pattern.n()];
        for &c in &self.map {
            out[c] += 1;
        }
        out
    }
}

/// A colouring of a bipartite host by a bipartite pattern that maps each
/// side into the same side. The map is given on global host indices and
/// returns global pattern indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistentColouring {
    pattern: BipartiteGraph,
    host: BipartiteGraph,
    map: Vec<usize>,
}

impl ConsistentColouring {
    pub fn new(pattern: BipartiteGraph, host: BipartiteGraph, map: Vec<usize>) -> Result<Self> {
        if map.len() != host.n() {
            return Err(Error::input("colouring length differs from host size"));
        }
        for (v, &c) in map.iter().enumerate() {
            if c >= pattern.n() {
                return Err(Error::input(format!("colour {c} outside the pattern")));
            }
            if host.is_left(v) != pattern.is_left(c) {
                return Err(Error::input(format!(
                    "vertex {v} is coloured across the bipartition"
                )));
            }
        }
        for (u, v) in host.edges() {
            let (a, b) = (map[u], map[host.n1() + v]);
            if !pattern.has_edge(a, b - pattern.n1()) {
                return Err(Error::input(format!(
                    "host edge ({u}, {v}) is not mapped to a pattern edge"
                )));
            }
        }
        Ok(ConsistentColouring { pattern, host, map })
    }

    pub fn identity(pattern: &BipartiteGraph) -> Self {
        ConsistentColouring {
            pattern: pattern.clone(),
            host: pattern.clone(),
            map: (0..pattern.n()).collect(),
        }
    }

    pub fn pattern(&self) -> &BipartiteGraph {
        &self.pattern
    }

    pub fn host(&self) -> &BipartiteGraph {
        &self.host
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// The same map viewed as a colouring of the underlying graphs.
    pub fn underlying(&self) -> Colouring {
        Colouring {
            pattern: self.pattern.underlying(),
            host: self.host.underlying(),
            map: self.map.clone(),
        }
    }
}

/// The spanning subgraph of `h` keeping the edges selected by `mask` over
/// `h.edges()`.
pub fn edge_subgraph(h: &Graph, mask: u64) -> Graph {
    let mut g = Graph::new(h.n());
    for (i, (u, v)) in h.edges().into_iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.insert_edge(u, v);
        }
    }
    g
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Hom,
    Injective,
    Strong,
}

/// Backtracking matcher mapping pattern vertices into a host, one pattern
/// vertex per level.
struct Matcher<'a> {
    host: &'a Graph,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    back_non: Vec<Vec<usize>>,
    domains: Vec<Option<FixedBitSet>>,
    mode: Mode,
    images: Vec<usize>,
    used: FixedBitSet,
}

impl<'a> Matcher<'a> {
    fn new(
        pattern: &Graph,
        verts: &[usize],
        host: &'a Graph,
        domains: Option<&[FixedBitSet]>,
        mode: Mode,
    ) -> Self {
        let dom_size = |v: usize| domains.map_or(host.n(), |d| d[v].count_ones(..));
        let mut order: Vec<usize> = Vec::with_capacity(verts.len());
        let mut placed = vec![false; pattern.n()];
        while order.len() < verts.len() {
            let next = verts
                .iter()
                .copied()
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = pattern.neighbors(v).filter(|&u| placed[u]).count();
                    (back, std::cmp::Reverse(dom_size(v)), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut back = Vec::with_capacity(order.len());
        let mut back_non = Vec::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            back.push((0..i).filter(|&j| pattern.has_edge(order[j], v)).collect());
            back_non.push((0..i).filter(|&j| !pattern.has_edge(order[j], v)).collect());
        }
        let domains = order
            .iter()
            .map(|&v| domains.map(|d| d[v].clone()))
            .collect();
        Matcher {
            host,
            back,
            back_non,
            domains,
            mode,
            images: vec![0; order.len()],
            used: FixedBitSet::with_capacity(host.n()),
            order,
        }
    }

    fn candidates(&self, pos: usize) -> FixedBitSet {
        let mut cand = match &self.domains[pos] {
            Some(d) => d.clone(),
            None => {
                let mut all = FixedBitSet::with_capacity(self.host.n());
                all.insert_range(..);
                all
            }
        };
        for &j in &self.back[pos] {
            cand.intersect_with(self.host.neighbor_set(self.images[j]));
        }
        if self.mode != Mode::Hom {
            cand.difference_with(&self.used);
        }
        if self.mode == Mode::Strong {
            for &j in &self.back_non[pos] {
                cand.difference_with(self.host.neighbor_set(self.images[j]));
            }
        }
        cand
    }

    fn count(&mut self, pos: usize) -> Count {
        if self.order.is_empty() {
            return Count::one();
        }
        let cand = self.candidates(pos);
        if pos + 1 == self.order.len() {
            return Count::from(cand.count_ones(..));
        }
        let mut total = Count::zero();
        for w in cand.ones() {
            self.images[pos] = w;
            self.used.insert(w);
            total += self.count(pos + 1);
            self.used.set(w, false);
        }
        total
    }

    fn exists(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let cand = self.candidates(pos);
        for w in cand.ones() {
            self.images[pos] = w;
            self.used.insert(w);
            let found = self.exists(pos + 1);
            self.used.set(w, false);
            if found {
                return true;
            }
        }
        false
    }
}

/// Product of per-component counts; valid whenever the constraints do not
/// couple components (homomorphisms, colour-prescribed maps).
fn count_by_components(pattern: &Graph, host: &Graph, domains: Option<&[FixedBitSet]>) -> Count {
    let mut total = Count::one();
    for comp in pattern.components() {
        let part = Matcher::new(pattern, &comp, host, domains, Mode::Hom).count(0);
        if part.is_zero() {
            return part;
        }
        total *= part;
    }
    total
}

/// Homomorphisms by backtracking search, without any size cap.
pub fn count_homs_brute(h: &Graph, g: &Graph) -> Count {
    count_by_components(h, g, None)
}

/// Number of homomorphisms from `h` to `g`.
///
/// Patterns up to `caps.brute_pattern` vertices are counted by search,
/// larger ones by dynamic programming over an optimal tree decomposition.
pub fn count_homs(h: &Graph, g: &Graph, caps: &Caps) -> Result<Count> {
    if h.n() <= caps.brute_pattern {
        Ok(count_homs_brute(h, g))
    } else {
        count_homs_dp(h, g, caps)
    }
}

/// Homomorphisms via a nice tree decomposition of `h` of optimal width.
pub fn count_homs_dp(h: &Graph, g: &Graph, caps: &Caps) -> Result<Count> {
    let td = tree_decomposition(h, caps)?;
    let nice = td.to_nice();
    let base = g.n();
    let widest = nice.bags.iter().map(Vec::len).max().unwrap_or(0);
    let cells = (base as u128)
        .checked_pow(widest as u32)
        .unwrap_or(u128::MAX);
    Error::check_cap(
        "homomorphism DP table",
        cells.min(usize::MAX as u128) as usize,
        caps.dp_table,
    )?;
    if base == 0 {
        return Ok(if h.n() == 0 {
            Count::one()
        } else {
            Count::zero()
        });
    }
    let mut tables: Vec<Vec<Count>> = vec![Vec::new(); nice.nodes.len()];
    let digits = |idx: usize, len: usize| -> Vec<usize> {
        let mut d = Vec::with_capacity(len);
        let mut x = idx;
        for _ in 0..len {
            d.push(x % base);
            x /= base;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &x| acc * base + x);
    for i in 0..nice.nodes.len() {
        let bag = &nice.bags[i];
        let size = base.pow(bag.len() as u32);
        let table = match nice.nodes[i] {
            NiceNode::Leaf => vec![Count::one()],
            NiceNode::Introduce { vertex, child } => {
                let at = bag.binary_search(&vertex).unwrap();
                let nbrs: Vec<usize> = (0..bag.len())
                    .filter(|&j| h.has_edge(bag[j], vertex))
                    .collect();
                let mut t = vec![Count::zero(); size];
                for (idx, cell) in t.iter_mut().enumerate() {
                    let mut d = digits(idx, bag.len());
                    let img = d[at];
                    if nbrs.iter().all(|&j| g.has_edge(d[j], img)) {
                        d.remove(at);
                        *cell = tables[child][encode(&d)].clone();
                    }
                }
                t
            }
            NiceNode::Forget { vertex, child } => {
                let child_bag = &nice.bags[child];
                let at = child_bag.binary_search(&vertex).unwrap();
                let mut t = vec![Count::zero(); size];
                for (idx, val) in tables[child].iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    let mut d = digits(idx, child_bag.len());
                    d.remove(at);
                    t[encode(&d)] += val;
                }
                t
            }
            NiceNode::Join { left, right } => tables[left]
                .iter()
                .zip(&tables[right])
                .map(|(a, b)| a * b)
                .collect(),
        };
        tables[i] = table;
        // Children are never read again once their parent is built.
        match nice.nodes[i] {
            NiceNode::Introduce { child, .. } | NiceNode::Forget { child, .. } => {
                tables[child] = Vec::new()
            }
            NiceNode::Join { left, right } => {
                tables[left] = Vec::new();
                tables[right] = Vec::new();
            }
            NiceNode::Leaf => {}
        }
    }
    Ok(tables[nice.root][0].clone())
}

/// Injective homomorphisms.
pub fn count_embeddings(h: &Graph, g: &Graph, caps: &Caps) -> Result<Count> {
    Error::check_cap("embedding pattern vertices", h.n(), caps.brute_pattern)?;
    let all: Vec<usize> = (0..h.n()).collect();
    Ok(Matcher::new(h, &all, g, None, Mode::Injective).count(0))
}

/// Injective maps preserving both edges and non-edges.
pub fn count_strong_embeddings(h: &Graph, g: &Graph, caps: &Caps) -> Result<Count> {
    Error::check_cap("embedding pattern vertices", h.n(), caps.brute_pattern)?;
    let all: Vec<usize> = (0..h.n()).collect();
    Ok(Matcher::new(h, &all, g, None, Mode::Strong).count(0))
}

/// `true` if `h` is isomorphic to an induced subgraph of `g`.
pub fn has_induced_copy(h: &Graph, g: &Graph, caps: &Caps) -> Result<bool> {
    Error::check_cap("induced pattern vertices", h.n(), caps.canon)?;
    if h.n() > g.n() {
        return Ok(false);
    }
    let all: Vec<usize> = (0..h.n()).collect();
    Ok(Matcher::new(h, &all, g, None, Mode::Strong).exists(0))
}

/// Number of automorphisms of `h`.
pub fn count_automorphisms(h: &Graph, caps: &Caps) -> Result<Count> {
    Error::check_cap("automorphism graph vertices", h.n(), caps.canon)?;
    let all: Vec<usize> = (0..h.n()).collect();
    Ok(Matcher::new(h, &all, h, None, Mode::Strong).count(0))
}

fn check_pattern(h: &Graph, c: &Colouring, a: u64) -> Result<()> {
    if c.pattern() != h {
        return Err(Error::input("colouring is not over the given pattern"));
    }
    let m = h.edge_count();
    if m < 64 && a >> m != 0 {
        return Err(Error::input(
            "edge subset has bits beyond the pattern's edges",
        ));
    }
    Ok(())
}

/// Colour-prescribed homomorphisms from `h[A]` into the host of `c`: maps
/// `φ` with `c(φ(v)) = v` for every pattern vertex that preserve the edges
/// of `A` (a mask over `h.edges()`).
pub fn count_cp_homs(h: &Graph, a: u64, c: &Colouring) -> Result<Count> {
    check_pattern(h, c, a)?;
    let sub = edge_subgraph(h, a);
    Ok(count_by_components(&sub, c.host(), Some(&c.classes())))
}

/// Vertex sets meeting every colour class once whose induced subgraph is
/// mapped by `c` isomorphically onto `h[A]`.
pub fn count_cp_indsubs(h: &Graph, a: u64, c: &Colouring) -> Result<Count> {
    check_pattern(h, c, a)?;
    let sub = edge_subgraph(h, a);
    let all: Vec<usize> = (0..h.n()).collect();
    let classes = c.classes();
    Ok(Matcher::new(&sub, &all, c.host(), Some(&classes), Mode::Strong).count(0))
}

/// The colour-prescribed tensor product of two colourings over the same
/// pattern. Product vertices `(v, v̂)` with equal colours are numbered in
/// lexicographic order; the result colours `(v, v̂)` by `c(v)`.
pub fn cp_tensor(c: &Colouring, chat: &Colouring) -> Result<Colouring> {
    if c.pattern() != chat.pattern() {
        return Err(Error::input(
            "tensor factors are coloured by different patterns",
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..c.host().n())
        .flat_map(|v| {
            (0..chat.host().n())
                .filter(move |&w| c.colour(v) == chat.colour(w))
                .map(move |w| (v, w))
        })
        .collect();
    let mut g = Graph::new(pairs.len());
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ((u, uh), (v, vh)) = (pairs[i], pairs[j]);
            if c.host().has_edge(u, v) && chat.host().has_edge(uh, vh) {
                g.insert_edge(i, j);
            }
        }
    }
    let map = pairs.iter().map(|&(v, _)| c.colour(v)).collect();
    Ok(Colouring {
        pattern: c.pattern().clone(),
        host: g,
        map,
    })
}

/// Bipartite colour-prescribed tensor product. Left product vertices are the
/// pairs whose first coordinate is a left vertex, right ones the rest; both
/// sides keep lexicographic pair order.
pub fn bip_cp_tensor(
    c: &ConsistentColouring,
    chat: &ConsistentColouring,
) -> Result<ConsistentColouring> {
    if c.pattern() != chat.pattern() {
        return Err(Error::input(
            "tensor factors are coloured by different patterns",
        ));
    }
    let (g, gh) = (c.host(), chat.host());
    let pairs_on = |left: bool| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in (0..g.n()).filter(|&v| g.is_left(v) == left) {
            for w in 0..gh.n() {
                if c.map[v] == chat.map[w] {
                    out.push((v, w));
                }
            }
        }
        out
    };
    let left = pairs_on(true);
    let right = pairs_on(false);
    let mut host = BipartiteGraph::new(left.len(), right.len());
    for (i, &(u, uh)) in left.iter().enumerate() {
        for (j, &(v, vh)) in right.iter().enumerate() {
            if g.has_edge_global(u, v) && gh.has_edge_global(uh, vh) {
                host.insert_edge(i, j);
            }
        }
    }
    let map = left.iter().chain(&right).map(|&(v, _)| c.map[v]).collect();
    Ok(ConsistentColouring {
        pattern: c.pattern().clone(),
        host,
        map,
    })
}
