//! Graph and bipartite properties, hereditary properties given by forbidden
//! induced subgraphs, implants, and brute-force counting oracles.

mod catalogue;

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Caps, Error, Result};
use crate::graphs::{bip_canonical_form, canonical_form, BipartiteGraph, Graph};
use crate::homomorphisms::{ConsistentColouring, Count};

pub use catalogue::{
    builtin, builtin_bip, builtin_bip_catalogue, builtin_catalogue, random_bip_property,
    random_bip_property_by_degrees, random_property,
};

type GraphFn = dyn Fn(&Graph) -> bool + Send + Sync;
type BipFn = dyn Fn(&BipartiteGraph) -> bool + Send + Sync;

const SPOT_GRAPHS: usize = 20;
const SPOT_PERMS: usize = 5;

/// A graph property: a 0/1 function invariant under isomorphism.
#[derive(Clone)]
pub struct PropertyOracle {
    name: String,
    hereditary: bool,
    twin_invariant: bool,
    eval: Arc<GraphFn>,
}

impl PropertyOracle {
    /// Registers a property after spot-checking isomorphism invariance on
    /// random relabelings of random graphs.
    pub fn new(
        name: impl Into<String>,
        hereditary: bool,
        twin_invariant: bool,
        eval: impl Fn(&Graph) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let p = Self::trusted(name, hereditary, twin_invariant, eval);
        p.spot_check()?;
        Ok(p)
    }

    /// Registers a property whose invariance follows from its construction.
    pub(crate) fn trusted(
        name: impl Into<String>,
        hereditary: bool,
        twin_invariant: bool,
        eval: impl Fn(&Graph) -> bool + Send + Sync + 'static,
    ) -> Self {
        PropertyOracle {
            name: name.into(),
            hereditary,
            twin_invariant,
            eval: Arc::new(eval),
        }
    }

    fn spot_check(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SPOT_GRAPHS {
            let n = rng.gen_range(0..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let base = self.eval(&g);
            for _ in 0..SPOT_PERMS {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                if self.eval(&g.relabel(&perm)?) != base {
                    return Err(Error::input(format!(
                        "property {} is not invariant under relabeling of {g:?}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, g: &Graph) -> bool {
        (self.eval)(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_hereditary(&self) -> bool {
        self.hereditary
    }

    pub fn is_twin_invariant(&self) -> bool {
        self.twin_invariant
    }
}

impl fmt::Debug for PropertyOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PropertyOracle({})", self.name)
    }
}

/// A bipartite property: a 0/1 function invariant under side-preserving
/// isomorphism.
#[derive(Clone)]
pub struct BipartitePropertyOracle {
    name: String,
    eval: Arc<BipFn>,
}

impl BipartitePropertyOracle {
    /// Registers a property after spot-checking invariance under
    /// side-respecting relabelings.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&BipartiteGraph) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let p = Self::trusted(name, eval);
        let mut rng = ChaCha8Rng::seed_from_u64(0xb1b);
        for _ in 0..SPOT_GRAPHS {
            let (n1, n2) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
            let b = random_bipartite(&mut rng, n1, n2, 0.5);
            let base = p.eval(&b);
            for _ in 0..SPOT_PERMS {
                let mut l: Vec<usize> = (0..n1).collect();
                let mut r: Vec<usize> = (0..n2).collect();
                l.shuffle(&mut rng);
                r.shuffle(&mut rng);
                if p.eval(&b.relabel(&l, &r)?) != base {
                    return Err(Error::input(format!(
                        "bipartite property {} is not invariant under relabeling of {b:?}",
                        p.name
                    )));
                }
            }
        }
        Ok(p)
    }

    pub(crate) fn trusted(
        name: impl Into<String>,
        eval: impl Fn(&BipartiteGraph) -> bool + Send + Sync + 'static,
    ) -> Self {
        BipartitePropertyOracle {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, b: &BipartiteGraph) -> bool {
        (self.eval)(b)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for BipartitePropertyOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartitePropertyOracle({})", self.name)
    }
}

pub(crate) fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

pub(crate) fn random_bipartite(rng: &mut impl Rng, n1: usize, n2: usize, p: f64) -> BipartiteGraph {
    let mut b = BipartiteGraph::new(n1, n2);
    for u in 0..n1 {
        for v in 0..n2 {
            if rng.gen_bool(p) {
                b.insert_edge(u, v);
            }
        }
    }
    b
}

/// A finite set of forbidden induced subgraphs: canonical representatives,
/// pairwise non-isomorphic, none an induced subgraph of another, sorted by
/// canonical key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    members: Vec<Graph>,
}

impl ForbiddenSet {
    /// Accepts an already minimal list; duplicates or comparable members are
    /// an input error.
    pub fn new(members: &[Graph], caps: &Caps) -> Result<Self> {
        let canon = canonical_members(members, caps)?;
        for i in 0..canon.len() {
            for j in 0..canon.len() {
                if i != j && canon[i].0 == canon[j].0 {
                    return Err(Error::input("forbidden set contains isomorphic members"));
                }
                if i != j && is_induced_subgraph(&canon[i].1, &canon[j].1, caps)? {
                    return Err(Error::input(format!(
                        "forbidden set is not minimal: {:?} is induced in {:?}",
                        canon[i].1, canon[j].1
                    )));
                }
            }
        }
        Ok(ForbiddenSet {
            members: canon.into_iter().map(|(_, g)| g).collect(),
        })
    }

    pub fn empty() -> Self {
        ForbiddenSet {
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Largest member size.
    pub fn max_order(&self) -> usize {
        self.members.iter().map(Graph::n).max().unwrap_or(0)
    }

    /// The hereditary property defined by this set.
    pub fn oracle(&self, caps: &Caps) -> Result<PropertyOracle> {
        for m in &self.members {
            Error::check_cap("forbidden member vertices", m.n(), caps.canon)?;
        }
        let set = self.clone();
        let caps = *caps;
        let name = format!("forbidden[{}]", self.describe());
        Ok(PropertyOracle::trusted(name, true, false, move |g| {
            eval_hereditary(&set, g, &caps).expect("member sizes checked at construction")
        }))
    }

    /// Short human-readable description listing member sizes.
    pub fn describe(&self) -> String {
        self.members
            .iter()
            .map(|g| format!("n{}m{}", g.n(), g.edge_count()))
            .join(",")
    }
}

fn canonical_members(
    members: &[Graph],
    caps: &Caps,
) -> Result<Vec<(crate::graphs::CanonicalForm, Graph)>> {
    let mut canon = Vec::with_capacity(members.len());
    for g in members {
        if g.n() == 0 {
            return Err(Error::input(
                "forbidden members must have at least one vertex",
            ));
        }
        let key = canonical_form(g, caps)?;
        let rep = key.to_graph();
        canon.push((key, rep));
    }
    canon.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(canon)
}

fn is_induced_subgraph(small: &Graph, big: &Graph, caps: &Caps) -> Result<bool> {
    crate::homomorphisms::has_induced_copy(small, big, caps)
}

/// Drops duplicates and every member that contains another member as an
/// induced subgraph.
pub fn minimalize_forbidden_set(members: &[Graph], caps: &Caps) -> Result<ForbiddenSet> {
    let mut canon = canonical_members(members, caps)?;
    canon.dedup_by(|a, b| a.0 == b.0);
    let mut keep = Vec::new();
    for i in 0..canon.len() {
        let mut minimal = true;
        for j in 0..canon.len() {
            if i != j && is_induced_subgraph(&canon[j].1, &canon[i].1, caps)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            keep.push(canon[i].1.clone());
        }
    }
    Ok(ForbiddenSet { members: keep })
}

/// `true` iff no member of `pi` is an induced subgraph of `g`.
pub fn eval_hereditary(pi: &ForbiddenSet, g: &Graph, caps: &Caps) -> Result<bool> {
    for h in &pi.members {
        if is_induced_subgraph(h, g, caps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The property `G ↦ Φ(complement(G))`.
pub fn inverse_property(phi: &PropertyOracle) -> PropertyOracle {
    let inner = phi.clone();
    let name = match phi.name.strip_prefix("inverse:") {
        Some(orig) => orig.to_string(),
        None => format!("inverse:{}", phi.name),
    };
    PropertyOracle::trusted(name, phi.hereditary, false, move |g| {
        inner.eval(&g.complement())
    })
}

/// Complements every member; complementation preserves minimality.
pub fn inverse_forbidden_set(pi: &ForbiddenSet, caps: &Caps) -> Result<ForbiddenSet> {
    let comp: Vec<Graph> = pi.members.iter().map(Graph::complement).collect();
    minimalize_forbidden_set(&comp, caps)
}

/// A host graph with two disjoint non-empty sets of false twins. The
/// remaining vertices form `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplantSpec {
    host: Graph,
    b1: Vec<usize>,
    b2: Vec<usize>,
    rest: Vec<usize>,
}

impl ImplantSpec {
    pub fn new(host: Graph, b1: &[usize], b2: &[usize]) -> Result<Self> {
        let n = host.n();
        let mut side = vec![0u8; n];
        for (tag, set) in [(1u8, b1), (2u8, b2)] {
            if set.is_empty() {
                return Err(Error::input("implant blocks must be non-empty"));
            }
            for &v in set {
                if v >= n {
                    return Err(Error::input(format!("block vertex {v} out of range")));
                }
                if side[v] != 0 {
                    return Err(Error::input(format!(
                        "vertex {v} is listed twice in the implant blocks"
                    )));
                }
                side[v] = tag;
            }
            if set.iter().any(|&v| !host.are_false_twins(v, set[0])) {
                return Err(Error::input("implant block contains non-twins"));
            }
        }
        let mut b1 = b1.to_vec();
        let mut b2 = b2.to_vec();
        b1.sort_unstable();
        b2.sort_unstable();
        let rest = (0..n).filter(|&v| side[v] == 0).collect();
        Ok(ImplantSpec { host, b1, b2, rest })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn b1(&self) -> &[usize] {
        &self.b1
    }

    pub fn b2(&self) -> &[usize] {
        &self.b2
    }

    pub fn rest(&self) -> &[usize] {
        &self.rest
    }
}

/// The implant of `g` into the blocks of `spec`.
///
/// Vertices are numbered: left side of `g`, then right side, then `R` in
/// ascending host order.
pub fn implant_graph(spec: &ImplantSpec, g: &BipartiteGraph) -> Graph {
    let (n1, n2) = (g.n1(), g.n2());
    let base = n1 + n2;
    let mut f = Graph::new(base + spec.rest.len());
    for (u, v) in g.edges() {
        f.insert_edge(u, n1 + v);
    }
    let h = &spec.host;
    for (i, &r) in spec.rest.iter().enumerate() {
        for (j, &s) in spec.rest.iter().enumerate().skip(i + 1) {
            if h.has_edge(r, s) {
                f.insert_edge(base + i, base + j);
            }
        }
        if h.has_edge(r, spec.b1[0]) {
            for u in 0..n1 {
                f.insert_edge(base + i, u);
            }
        }
        if h.has_edge(r, spec.b2[0]) {
            for v in 0..n2 {
                f.insert_edge(base + i, n1 + v);
            }
        }
    }
    f
}

/// The bipartite property `G ↦ Φ(implant_graph(spec, G))`.
pub fn implant_property(phi: &PropertyOracle, spec: &ImplantSpec) -> BipartitePropertyOracle {
    let phi = phi.clone();
    let spec = spec.clone();
    let name = format!("implant:{}", phi.name);
    BipartitePropertyOracle::trusted(name, move |g| phi.eval(&implant_graph(&spec, g)))
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub(crate) fn binomial_saturating(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `|{S ⊆ V(G) : |S| = k, Φ(G[S])}|` by enumeration.
pub fn count_indsub(phi: &PropertyOracle, k: usize, g: &Graph, caps: &Caps) -> Result<Count> {
    if k > g.n() {
        return Ok(Count::default());
    }
    let subsets = binomial_saturating(g.n(), k);
    if subsets > caps.enumeration {
        return Err(Error::Capacity {
            what: "vertex subsets",
            limit: caps.enumeration as usize,
            got: subsets.min(usize::MAX as u64) as usize,
        });
    }
    let mut total = 0u64;
    for s in (0..g.n()).combinations(k) {
        if phi.eval(&g.induced_sorted(&s)) {
            total += 1;
        }
    }
    Ok(Count::from(total))
}

/// `k`-vertex induced bipartite subgraphs satisfying `psi`.
pub fn count_bip_indsub(
    psi: &BipartitePropertyOracle,
    k: usize,
    g: &BipartiteGraph,
    caps: &Caps,
) -> Result<Count> {
    if k > g.n() {
        return Ok(Count::default());
    }
    let subsets = binomial_saturating(g.n(), k);
    if subsets > caps.enumeration {
        return Err(Error::Capacity {
            what: "vertex subsets",
            limit: caps.enumeration as usize,
            got: subsets.min(usize::MAX as u64) as usize,
        });
    }
    let mut total = 0u64;
    for s in (0..g.n()).combinations(k) {
        if psi.eval(&g.induced_sorted(&s)) {
            total += 1;
        }
    }
    Ok(Count::from(total))
}

/// Vertex sets with exactly one vertex of each colour whose induced
/// subgraph satisfies `psi`.
pub fn count_cp_bip_indsub(
    psi: &BipartitePropertyOracle,
    c: &ConsistentColouring,
    caps: &Caps,
) -> Result<Count> {
    let h = c.pattern();
    let mut classes = vec![Vec::new(); h.n()];
    for (v, &col) in c.map().iter().enumerate() {
        classes[col].push(v);
    }
    let product = classes
        .iter()
        .try_fold(1u64, |acc, cl| acc.checked_mul(cl.len() as u64))
        .unwrap_or(u64::MAX);
    if product > caps.enumeration {
        return Err(Error::Capacity {
            what: "colourful vertex sets",
            limit: caps.enumeration as usize,
            got: product.min(usize::MAX as u64) as usize,
        });
    }
    if product == 0 {
        return Ok(Count::default());
    }
    let g = c.host();
    let mut total = 0u64;
    for pick in classes
        .iter()
        .map(|cl| cl.iter().copied())
        .multi_cartesian_product()
    {
        let mut s = pick;
        s.sort_unstable();
        if psi.eval(&g.induced_sorted(&s)) {
            total += 1;
        }
    }
    if h.n() == 0 && psi.eval(&BipartiteGraph::new(0, 0)) {
        total = 1;
    }
    Ok(Count::from(total))
}

/// Counts for properties certified meagre by the classifier: the constant
/// property, the Ramsey cut-off, or enumeration below it.
pub fn meagre_fast_count(pi: &ForbiddenSet, k: usize, g: &Graph, caps: &Caps) -> Result<Count> {
    let cert = crate::hardness_lab::meagre_certificate(pi, caps)?.ok_or_else(|| {
        Error::Contract("forbidden set is not certified meagre by the classifier".into())
    })?;
    match cert.ramsey_bound {
        None => Ok(binomial_big(g.n(), k)),
        Some(n0) if k >= n0 => Ok(Count::default()),
        Some(_) => count_indsub(&pi.oracle(caps)?, k, g, caps),
    }
}

pub(crate) fn binomial_big(n: usize, k: usize) -> Count {
    if k > n {
        return Count::default();
    }
    let mut acc = Count::from(1u8);
    for i in 0..k {
        acc = acc * Count::from(n - i) / Count::from(i + 1);
    }
    acc
}

/// Canonical key used to make invariant random properties.
pub(crate) fn class_hash(g: &Graph, caps: &Caps) -> u64 {
    let key = canonical_form(g, caps).expect("random properties are limited to small graphs");
    fnv(key.hex().as_bytes())
}

pub(crate) fn bip_class_hash(b: &BipartiteGraph, caps: &Caps) -> u64 {
    let key = bip_canonical_form(b, caps).expect("random properties are limited to small graphs");
    fnv(key.hex().as_bytes())
}

pub(crate) fn fnv(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub(crate) fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests;
