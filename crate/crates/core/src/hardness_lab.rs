//! Executable versions of the hardness constructions: side-preserving
//! automorphisms of bicliques and their Sylow subgroups, orbit analysis of
//! edge subsets, the biclique-coefficient congruence, witness selection,
//! inclusion-exclusion reductions and the classifier for hereditary
//! properties.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Caps, Error, Result};
use crate::graphs::{BipartiteGraph, Graph};
use crate::homomorphisms::{ConsistentColouring, Count};
use crate::io::GraphRecord;
use crate::motif_basis::{bip_coefficients, top_bip_coefficient};
use crate::properties::{
    implant_graph, implant_property, inverse_forbidden_set, BipartitePropertyOracle, ForbiddenSet,
    ImplantSpec, PropertyOracle,
};

/// Largest biclique side handled by the group routines.
pub const MAX_GROUP_K: usize = 5;

/// A permutation group given by generators, acting on `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        for g in &generators {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::input("generator is not a permutation of the degree"));
            }
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// All group elements, by breadth-first closure. Fails once more than
    /// `cap` elements are found.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let id: Vec<usize> = (0..self.degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if seen.insert(q.clone()) {
                    Error::check_cap("group order", out.len() + 1, cap)?;
                    out.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        self.elements(cap).map(|e| e.len())
    }

    /// Orbits of single points.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    if !seen[g[x]] {
                        seen[g[x]] = true;
                        orbit.push(g[x]);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbits().len() <= 1
    }
}

/// Edge `(i, j)` of the `(k, k)`-biclique has index `i·k + j`.
fn biclique_edge_perm(k: usize, left: &[usize], right: &[usize]) -> Vec<usize> {
    let mut p = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            p[i * k + j] = left[i] * k + right[j];
        }
    }
    p
}

fn check_group_k(k: usize) -> Result<()> {
    Error::check_cap("biclique side", k, MAX_GROUP_K)
}

/// Side-preserving automorphisms of the `(k, k)`-biclique acting on its
/// edges, generated by adjacent transpositions on either side.
pub fn consistent_automorphism_group(k: usize) -> Result<PermGroup> {
    check_group_k(k)?;
    let id: Vec<usize> = (0..k).collect();
    let mut gens = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let mut t = id.clone();
        t.swap(i, i + 1);
        gens.push(biclique_edge_perm(k, &t, &id));
        gens.push(biclique_edge_perm(k, &id, &t));
    }
    let g = PermGroup::new(k * k, gens)?;
    if k > 0 && !g.is_transitive() {
        return Err(Error::consistency(
            "automorphism group is not edge-transitive",
        ));
    }
    Ok(g)
}

pub fn is_prime(k: usize) -> bool {
    k >= 2
        && (2..k)
            .take_while(|d| d * d <= k)
            .all(|d| !k.is_multiple_of(d))
}

/// The subgroup generated by one `k`-cycle on each side; its order is `k²`.
pub fn sylow_k_subgroup(k: usize) -> Result<PermGroup> {
    if !is_prime(k) {
        return Err(Error::input(format!("{k} is not prime")));
    }
    check_group_k(k)?;
    let id: Vec<usize> = (0..k).collect();
    let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let g = PermGroup::new(
        k * k,
        vec![
            biclique_edge_perm(k, &cycle, &id),
            biclique_edge_perm(k, &id, &cycle),
        ],
    )?;
    if !g.is_transitive() {
        return Err(Error::consistency("Sylow subgroup is not edge-transitive"));
    }
    Ok(g)
}

/// Applies a point permutation to bit masks via per-byte lookup tables.
struct MaskPermuter {
    tables: Vec<[u64; 256]>,
}

impl MaskPermuter {
    fn new(perm: &[usize]) -> Self {
        let bytes = perm.len().div_ceil(8);
        let mut tables = vec![[0u64; 256]; bytes];
        for (b, table) in tables.iter_mut().enumerate() {
            for (v, slot) in table.iter_mut().enumerate() {
                let mut img = 0u64;
                for bit in 0..8 {
                    let x = b * 8 + bit;
                    if v >> bit & 1 == 1 && x < perm.len() {
                        img |= 1 << perm[x];
                    }
                }
                *slot = img;
            }
        }
        MaskPermuter { tables }
    }

    #[inline]
    fn apply(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (b, t)| acc | t[(mask >> (8 * b)) as usize & 0xff])
    }
}

/// Orbits of the induced action on edge subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub group_order: usize,
    pub degree: usize,
    pub orbit_count: usize,
    /// Subsets fixed by every group element.
    pub fixed_points: Vec<u64>,
    /// Orbit size to number of orbits of that size.
    pub orbit_size_histogram: BTreeMap<usize, usize>,
    /// Least mask of each orbit with the orbit size, in mask order.
    #[serde(skip)]
    pub representatives: Vec<(u64, u32)>,
}

impl OrbitReport {
    /// `true` if the sizes of all orbits sum to `2^degree`.
    pub fn is_partition(&self) -> bool {
        let total: u128 = self
            .orbit_size_histogram
            .iter()
            .map(|(&s, &c)| s as u128 * c as u128)
            .sum();
        total == 1u128 << self.degree
    }
}

/// Orbit decomposition by streaming over all masks: a mask is a
/// representative iff no group element maps it to a smaller mask.
pub fn orbit_decompose(group: &PermGroup, caps: &Caps) -> Result<OrbitReport> {
    let m = group.degree();
    Error::check_cap("orbit mask bits", m, caps.mask_bits.min(40))?;
    if (1u64 << m) > caps.enumeration.max(1 << 25) {
        return Err(Error::Capacity {
            what: "edge subsets",
            limit: caps.enumeration as usize,
            got: 1usize << m,
        });
    }
    let elements = group.elements(1 << 16)?;
    let movers: Vec<MaskPermuter> = elements
        .iter()
        .filter(|p| p.iter().enumerate().any(|(i, &x)| i != x))
        .map(|p| MaskPermuter::new(p))
        .collect();
    let order = elements.len();
    let mut fixed = Vec::new();
    let mut hist = BTreeMap::new();
    let mut reps = Vec::new();
    let mut images = Vec::with_capacity(order);
    'mask: for a in 0..1u64 << m {
        for p in &movers {
            if p.apply(a) < a {
                continue 'mask;
            }
        }
        images.clear();
        images.push(a);
        images.extend(movers.iter().map(|p| p.apply(a)));
        images.sort_unstable();
        images.dedup();
        let size = images.len();
        if size == 1 {
            fixed.push(a);
        }
        *hist.entry(size).or_insert(0) += 1;
        reps.push((a, size as u32));
    }
    Ok(OrbitReport {
        group_order: order,
        degree: m,
        orbit_count: reps.len(),
        fixed_points: fixed,
        orbit_size_histogram: hist,
        representatives: reps,
    })
}

/// Outcome of checking the top coefficient of the `(k, k)`-biclique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueCheck {
    pub k: usize,
    pub coefficient: i64,
    pub residue: i64,
    pub expected_residue: i64,
    pub nonzero: bool,
    pub psi_biclique: bool,
    pub psi_independent: bool,
}

fn finish_biclique_check(psi: &BipartitePropertyOracle, k: usize, a: i64) -> Result<BicliqueCheck> {
    let kk = k as i64;
    let pb = psi.eval(&BipartiteGraph::biclique(k));
    let pi = psi.eval(&BipartiteGraph::independent(k));
    let sign = if (k * k).is_multiple_of(2) { 1 } else { -1 };
    let expected = (i64::from(pb) + sign * i64::from(pi)).rem_euclid(kk);
    let residue = a.rem_euclid(kk);
    if residue != expected {
        return Err(Error::consistency(format!(
            "top coefficient {a} is {residue} mod {k}, expected {expected}"
        )));
    }
    if pb != pi && a == 0 {
        return Err(Error::consistency(
            "top coefficient vanishes although the property separates biclique and independent set",
        ));
    }
    Ok(BicliqueCheck {
        k,
        coefficient: a,
        residue,
        expected_residue: expected,
        nonzero: a != 0,
        psi_biclique: pb,
        psi_independent: pi,
    })
}

/// Computes the coefficient of the full edge set of the `(k, k)`-biclique
/// and checks it against `Ψ(B) + (-1)^{k²} Ψ(I) mod k`.
pub fn biclique_coeff_check(
    psi: &BipartitePropertyOracle,
    k: usize,
    caps: &Caps,
) -> Result<BicliqueCheck> {
    if !is_prime(k) {
        return Err(Error::input(format!("{k} is not prime")));
    }
    check_group_k(k)?;
    let host = BipartiteGraph::biclique(k);
    let a = if k * k <= 16 {
        bip_coefficients(psi, &host, caps)?.top()
    } else {
        top_bip_coefficient(psi, &host, caps)?
    };
    finish_biclique_check(psi, k, a)
}

/// As [`biclique_coeff_check`], summing over orbit representatives of a
/// precomputed decomposition weighted by orbit size. `Ψ` is constant on
/// orbits because the group consists of side-preserving automorphisms.
pub fn biclique_coeff_check_orbits(
    psi: &BipartitePropertyOracle,
    k: usize,
    orbits: &OrbitReport,
) -> Result<BicliqueCheck> {
    if orbits.degree != k * k || !orbits.is_partition() {
        return Err(Error::input(
            "orbit report does not cover the biclique's edge subsets",
        ));
    }
    let host = BipartiteGraph::biclique(k);
    let edges = host.edges();
    let m = (k * k) as u32;
    let mut a = 0i64;
    for &(rep, size) in &orbits.representatives {
        if psi.eval(&host.edge_subgraph_mask(&edges, rep)) {
            let sign = if (m - rep.count_ones()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            a += sign * size as i64;
        }
    }
    finish_biclique_check(psi, k, a)
}

/// One verified separation of biclique and independent set by an implant
/// property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub k: usize,
    pub psi_biclique: bool,
    pub psi_independent: bool,
    /// `|E(F↓)|` of the implant of the independent set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independent_quotient_edges: Option<usize>,
}

/// A host graph with blocks whose implant property separates bicliques from
/// independent sets, or a certificate that none was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub host: Option<GraphRecord>,
    #[serde(rename = "B1")]
    pub b1: Vec<usize>,
    #[serde(rename = "B2")]
    pub b2: Vec<usize>,
    pub edge: Option<(usize, usize)>,
    pub quotient_edges: Option<usize>,
    pub verified_k: Vec<usize>,
    pub checks: Vec<Separation>,
    pub verified: bool,
    pub negative: Option<String>,
    #[serde(skip)]
    pub spec: Option<ImplantSpec>,
}

impl WitnessReport {
    fn negative(reason: String) -> Self {
        WitnessReport {
            host: None,
            b1: Vec::new(),
            b2: Vec::new(),
            edge: None,
            quotient_edges: None,
            verified_k: Vec::new(),
            checks: Vec::new(),
            verified: false,
            negative: Some(reason),
            spec: None,
        }
    }
}

/// Picks `H ∈ Π` whose twin-free quotient has fewest edges (then fewest
/// vertices, then least canonical key), takes the first adjacent pair of
/// blocks, and checks the implant property on `k ∈ (|V(H)|, |V(H)| + 3]`.
pub fn hereditary_witness(pi: &ForbiddenSet, caps: &Caps) -> Result<WitnessReport> {
    if pi.is_empty() {
        return Err(Error::input("empty forbidden set has no witness"));
    }
    if let Some(m) = pi.members().iter().find(|m| m.edge_count() == 0) {
        return Err(Error::input(format!(
            "member I_{} has no edge; take the witness of the inverse property instead",
            m.n()
        )));
    }
    // Members are sorted by canonical key, so the first minimum wins ties.
    let (host, quotient_edges) = pi
        .members()
        .iter()
        .map(|h| (h, h.twin_free_quotient().0.edge_count()))
        .min_by_key(|&(h, e)| (e, h.n()))
        .expect("non-empty");
    let (q, blocks) = host.twin_free_quotient();
    let (i, j) = (0..q.n())
        .flat_map(|i| (i + 1..q.n()).map(move |j| (i, j)))
        .find(|&(i, j)| q.has_edge(i, j))
        .expect("members with an edge have adjacent blocks");
    let b1 = blocks.blocks()[i].clone();
    let b2 = blocks.blocks()[j].clone();
    let spec = ImplantSpec::new(host.clone(), &b1, &b2)?;
    let phi = pi.oracle(caps)?;
    let psi = implant_property(&phi, &spec);
    let n = host.n();
    let mut checks = Vec::new();
    let mut verified = true;
    for k in n + 1..=n + 3 {
        let pb = psi.eval(&BipartiteGraph::biclique(k));
        let ind = BipartiteGraph::independent(k);
        let pind = psi.eval(&ind);
        let fq = implant_graph(&spec, &ind)
            .twin_free_quotient()
            .0
            .edge_count();
        verified &= !pb && pind && fq < quotient_edges;
        checks.push(Separation {
            k,
            psi_biclique: pb,
            psi_independent: pind,
            independent_quotient_edges: Some(fq),
        });
    }
    Ok(WitnessReport {
        host: Some(GraphRecord::from_graph(host)),
        b1,
        b2,
        edge: None,
        quotient_edges: Some(quotient_edges),
        verified_k: if verified {
            (n + 1..=n + 3).collect()
        } else {
            Vec::new()
        },
        checks,
        verified,
        negative: None,
        spec: Some(spec),
    })
}

/// Largest `n` searched by [`twin_invariant_witness`].
pub const MAX_TWIN_SEARCH: usize = 7;

/// Searches labelled graphs on `2..=n_max` vertices, in edge-mask order, for
/// the first `H` and edge `e` with `Φ(H) ≠ Φ(H - e)`, then checks the
/// implant into the endpoints of `e` for `k = 1..=4`.
pub fn twin_invariant_witness(phi: &PropertyOracle, n_max: usize) -> Result<WitnessReport> {
    Error::check_cap("twin witness search size", n_max, MAX_TWIN_SEARCH)?;
    for n in 2..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 1u64..1 << pairs.len() {
            let h = Graph::from_pair_mask(n, mask);
            let val = phi.eval(&h);
            for (idx, &(u, v)) in pairs.iter().enumerate() {
                if mask >> idx & 1 == 0 {
                    continue;
                }
                if phi.eval(&h.without_edge(u, v)) == val {
                    continue;
                }
                let spec = ImplantSpec::new(h.clone(), &[u], &[v])?;
                let psi = implant_property(phi, &spec);
                let mut checks = Vec::new();
                let mut verified = true;
                for k in 1..=4 {
                    let pb = psi.eval(&BipartiteGraph::biclique(k));
                    let pind = psi.eval(&BipartiteGraph::independent(k));
                    verified &= pb != pind;
                    checks.push(Separation {
                        k,
                        psi_biclique: pb,
                        psi_independent: pind,
                        independent_quotient_edges: None,
                    });
                }
                return Ok(WitnessReport {
                    host: Some(GraphRecord::from_graph(&h)),
                    b1: vec![u],
                    b2: vec![v],
                    edge: Some((u, v)),
                    quotient_edges: Some(h.twin_free_quotient().0.edge_count()),
                    verified_k: if verified {
                        (1..=4).collect()
                    } else {
                        Vec::new()
                    },
                    checks,
                    verified,
                    negative: None,
                    spec: Some(spec),
                });
            }
        }
    }
    Ok(WitnessReport::negative(format!(
        "Φ(H) = Φ(H - e) for every graph H on at most {n_max} vertices and every edge e"
    )))
}

/// Outcome of the inclusion-exclusion over subsets of `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub value: String,
    pub oracle_calls: usize,
    pub max_host_vertices: usize,
    pub implant_vertices: usize,
    #[serde(skip)]
    pub count: Count,
}

/// `Σ_{J ⊆ R} (-1)^{|J|} · oracle(Φ, k + |R|, F_G - J)`, which equals the
/// number of `k`-vertex induced subgraphs of `G` satisfying the implant
/// property.
pub fn reduce_bip_to_indsub(
    phi: &PropertyOracle,
    spec: &ImplantSpec,
    g: &BipartiteGraph,
    k: usize,
    oracle: &mut dyn FnMut(&PropertyOracle, usize, &Graph) -> Result<Count>,
) -> Result<ReductionReport> {
    let f = implant_graph(spec, g);
    let base = g.n();
    let r = spec.rest().len();
    Error::check_cap("implant rest vertices", r, 24)?;
    let mut total = BigInt::zero();
    let mut calls = 0;
    let mut max_host = 0;
    for j in 0u64..1 << r {
        let removed: Vec<usize> = (0..r)
            .filter(|&i| j >> i & 1 == 1)
            .map(|i| base + i)
            .collect();
        let host = f.without_vertices(&removed)?;
        max_host = max_host.max(host.n());
        let v = BigInt::from(oracle(phi, k + r, &host)?);
        calls += 1;
        if removed.len().is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    if total.is_negative() {
        return Err(Error::consistency(format!(
            "inclusion-exclusion produced negative count {total}"
        )));
    }
    let count = total.magnitude().clone();
    Ok(ReductionReport {
        value: count.to_string(),
        oracle_calls: calls,
        max_host_vertices: max_host,
        implant_vertices: f.n(),
        count,
    })
}

/// Colour-prescribed count from uncoloured counts:
/// `Σ_{C ⊆ V(H)} (-1)^{|V(H)| - |C|} · oracle(Ψ, |V(H)|, G[c⁻¹(C)])`.
/// Returns the count and the number of oracle calls.
pub fn colourful_from_uncoloured(
    psi: &BipartitePropertyOracle,
    c: &ConsistentColouring,
    oracle: &mut dyn FnMut(&BipartitePropertyOracle, usize, &BipartiteGraph) -> Result<Count>,
) -> Result<(Count, usize)> {
    let h = c.pattern().n();
    Error::check_cap("colour classes", h, 24)?;
    let g = c.host();
    let mut total = BigInt::zero();
    let mut calls = 0;
    for cmask in 0u64..1 << h {
        let keep: Vec<usize> = (0..g.n())
            .filter(|&v| cmask >> c.map()[v] & 1 == 1)
            .collect();
        let sub = g.induced(&keep)?;
        let v = BigInt::from(oracle(psi, h, &sub)?);
        calls += 1;
        if (h - cmask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    if total.is_negative() {
        return Err(Error::consistency(format!(
            "inclusion-exclusion produced negative count {total}"
        )));
    }
    Ok((total.magnitude().clone(), calls))
}

/// Exact Ramsey numbers for small arguments, the binomial bound otherwise.
pub fn ramsey_bound(s: usize, t: usize) -> usize {
    let (a, b) = (s.min(t), s.max(t));
    match (a, b) {
        (0, _) => 0,
        (1, _) => 1,
        (2, b) => b,
        (3, 3) => 6,
        (3, 4) => 9,
        (3, 5) => 14,
        (4, 4) => 18,
        (4, 5) => 25,
        _ => crate::properties::binomial_saturating(s + t - 2, s - 1) as usize,
    }
}

/// The rows of the complexity table for hereditary properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Row {
    ConstantTrue,
    FiniteSatisfiable,
    ForallCliquesAndIndependents,
    Otherwise,
}

impl Row {
    pub fn id(self) -> &'static str {
        match self {
            Row::ConstantTrue => "constant-true",
            Row::FiniteSatisfiable => "finite-satisfiable",
            Row::ForallCliquesAndIndependents => "forall-cliques-and-independents",
            Row::Otherwise => "otherwise",
        }
    }

    pub fn decision(self) -> &'static str {
        match self {
            Row::ConstantTrue | Row::FiniteSatisfiable => "P",
            Row::ForallCliquesAndIndependents => "FPT",
            Row::Otherwise => "W[1]-hard",
        }
    }

    pub fn exact_counting(self) -> &'static str {
        match self {
            Row::ConstantTrue | Row::FiniteSatisfiable => "P",
            _ => "#W[1]-complete; no f(k)·|G|^o(k) algorithm under ETH",
        }
    }
}

/// Evidence that a forbidden set defines a property false on all large
/// graphs (or one that is constant true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeagreCertificate {
    pub s: Option<usize>,
    pub t: Option<usize>,
    /// `None` for the constant-true property.
    pub ramsey_bound: Option<usize>,
}

fn clique_and_independent_sizes(pi: &ForbiddenSet) -> (Option<usize>, Option<usize>) {
    let s = pi
        .members()
        .iter()
        .filter(|m| m.is_complete())
        .map(Graph::n)
        .min();
    let t = pi
        .members()
        .iter()
        .filter(|m| m.is_edgeless())
        .map(Graph::n)
        .min();
    (s, t)
}

/// The meagre certificate, if the forbidden set has one.
pub fn meagre_certificate(pi: &ForbiddenSet, _caps: &Caps) -> Result<Option<MeagreCertificate>> {
    if pi.is_empty() {
        return Ok(Some(MeagreCertificate {
            s: None,
            t: None,
            ramsey_bound: None,
        }));
    }
    let (s, t) = clique_and_independent_sizes(pi);
    Ok(match (s, t) {
        (Some(s), Some(t)) => Some(MeagreCertificate {
            s: Some(s),
            t: Some(t),
            ramsey_bound: Some(ramsey_bound(s, t)),
        }),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub row: Row,
    pub members: Vec<GraphRecord>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub ramsey_bound: Option<usize>,
    pub witness: Option<WitnessReport>,
    /// The witness was taken for the complement property.
    pub via_inverse: bool,
    pub decision: String,
    pub exact_counting: String,
    pub statement: String,
}

/// Places the hereditary property defined by `pi` in its table row and
/// gathers the evidence for that row.
pub fn classify_hereditary(pi: &ForbiddenSet, caps: &Caps) -> Result<ClassificationReport> {
    let (s, t) = clique_and_independent_sizes(pi);
    let row = if pi.is_empty() {
        Row::ConstantTrue
    } else if s.is_some() && t.is_some() {
        Row::FiniteSatisfiable
    } else if s.is_none() && t.is_none() {
        Row::ForallCliquesAndIndependents
    } else {
        Row::Otherwise
    };
    let ramsey = match (s, t) {
        (Some(s), Some(t)) => Some(ramsey_bound(s, t)),
        _ => None,
    };
    let (witness, via_inverse) = match row {
        Row::ConstantTrue | Row::FiniteSatisfiable => (None, false),
        _ if t.is_some() => (
            Some(hereditary_witness(&inverse_forbidden_set(pi, caps)?, caps)?),
            true,
        ),
        _ => (Some(hereditary_witness(pi, caps)?), false),
    };
    let statement = match row {
        Row::ConstantTrue => "every k-subset qualifies; the count is C(n, k)".to_string(),
        Row::FiniteSatisfiable => format!(
            "K_{} and I_{} are forbidden, so no graph on {} or more vertices qualifies",
            s.unwrap(),
            t.unwrap(),
            ramsey.unwrap()
        ),
        Row::ForallCliquesAndIndependents => {
            "all cliques and independent sets qualify; detection is fixed-parameter tractable \
             but exact counting is #W[1]-complete"
                .to_string()
        }
        Row::Otherwise => "detection is W[1]-hard and exact counting is #W[1]-complete".to_string(),
    };
    Ok(ClassificationReport {
        row,
        members: pi.members().iter().map(GraphRecord::from_graph).collect(),
        s,
        t,
        ramsey_bound: ramsey,
        witness,
        via_inverse,
        decision: row.decision().to_string(),
        exact_counting: row.exact_counting().to_string(),
        statement,
    })
}

/// Row predicted by probing the property on small cliques and independent
/// sets, independent of the structural rule used by the classifier.
pub fn probe_row(pi: &ForbiddenSet, caps: &Caps) -> Result<Row> {
    if pi.is_empty() {
        return Ok(Row::ConstantTrue);
    }
    let phi = pi.oracle(caps)?;
    let limit = pi.max_order() + 1;
    let clique_fails = (1..=limit).any(|s| !phi.eval(&Graph::clique(s)));
    let indep_fails = (1..=limit).any(|t| !phi.eval(&Graph::new(t)));
    Ok(match (clique_fails, indep_fails) {
        (true, true) => Row::FiniteSatisfiable,
        (false, false) => Row::ForallCliquesAndIndependents,
        _ => Row::Otherwise,
    })
}

/// The two graphs of the standard two-member example: `K_4`, and the graph
/// obtained from `K_4` by replacing one edge with the `(2, 2)` independent
/// bipartite graph.
pub fn k4_pair() -> (Graph, Graph) {
    // Vertices 0..4 replace the endpoints of the removed edge, 4 and 5 are
    // the two untouched vertices of K_4.
    let mut h2 = Graph::new(6);
    for u in 0..4 {
        h2.insert_edge(u, 4);
        h2.insert_edge(u, 5);
    }
    h2.insert_edge(4, 5);
    (Graph::clique(4), h2)
}

/// Named forbidden sets used by the self-test, the conformance checks and
/// the browser demo. The first seven are the classifier fixtures.
pub fn fixture_catalogue(caps: &Caps) -> Result<Vec<(String, ForbiddenSet)>> {
    let (k4, h2) = k4_pair();
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)])?;
    let sets: Vec<(&str, Vec<Graph>)> = vec![
        ("empty", vec![]),
        ("K3+I3", vec![Graph::clique(3), Graph::new(3)]),
        ("P3", vec![Graph::path(3)]),
        ("K3", vec![Graph::clique(3)]),
        ("I3", vec![Graph::new(3)]),
        ("claw", vec![Graph::star(3)]),
        ("K4+H2", vec![k4, h2]),
        ("K4", vec![Graph::clique(4)]),
        ("P4", vec![Graph::path(4)]),
        ("C4", vec![Graph::cycle(4)]),
        ("C5", vec![Graph::cycle(5)]),
        ("2K2", vec![two_k2]),
        ("K2", vec![Graph::clique(2)]),
        ("K2+I2", vec![Graph::clique(2), Graph::new(2)]),
    ];
    sets.into_iter()
        .map(|(name, m)| Ok((name.to_string(), ForbiddenSet::new(&m, caps)?)))
        .collect()
}

/// Sizes of orbits that are not multiples of `k`, apart from fixed points.
pub fn orbit_sizes_not_divisible(report: &OrbitReport, k: usize) -> BTreeSet<usize> {
    report
        .orbit_size_histogram
        .keys()
        .copied()
        .filter(|&s| s != 1 && s % k != 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::{builtin, builtin_bip};

    fn caps() -> Caps {
        Caps::DEFAULT
    }

    #[test]
    fn group_examples() {
        let big = 1 << 16;
        assert_eq!(
            consistent_automorphism_group(2)
                .unwrap()
                .order(big)
                .unwrap(),
            4
        );
        assert_eq!(
            consistent_automorphism_group(1)
                .unwrap()
                .order(big)
                .unwrap(),
            1
        );
        let g3 = consistent_automorphism_group(3).unwrap();
        assert_eq!(g3.order(big).unwrap(), 36);
        assert_eq!(g3.point_orbits().len(), 1);
        assert_eq!(
            consistent_automorphism_group(4)
                .unwrap()
                .order(big)
                .unwrap(),
            576
        );
        assert!(consistent_automorphism_group(6).is_err());
    }

    #[test]
    fn sylow_examples() {
        let big = 1 << 16;
        let s2 = sylow_k_subgroup(2).unwrap();
        assert_eq!(s2.order(big).unwrap(), 4);
        assert!(s2.is_transitive());
        assert_eq!(sylow_k_subgroup(3).unwrap().order(big).unwrap(), 9);
        assert_eq!(sylow_k_subgroup(5).unwrap().order(big).unwrap(), 25);
        assert!(matches!(sylow_k_subgroup(4), Err(Error::Input(_))));
    }

    #[test]
    fn orbit_examples() {
        let r2 = orbit_decompose(&sylow_k_subgroup(2).unwrap(), &caps()).unwrap();
        assert_eq!(r2.orbit_count, 7);
        assert_eq!(r2.fixed_points, vec![0, 15]);
        assert!(r2
            .orbit_size_histogram
            .keys()
            .all(|s| [1, 2, 4].contains(s)));
        let r3 = orbit_decompose(&sylow_k_subgroup(3).unwrap(), &caps()).unwrap();
        assert_eq!(r3.fixed_points, vec![0, 511]);
        assert!(orbit_sizes_not_divisible(&r3, 3).is_empty());
        assert!(r3.is_partition());
        let triv = orbit_decompose(&PermGroup::trivial(4), &caps()).unwrap();
        assert_eq!(triv.orbit_count, 16);
    }

    #[test]
    fn biclique_coefficient_examples() {
        let e = builtin_bip("has-edge").unwrap();
        let c = biclique_coeff_check(&e, 2, &caps()).unwrap();
        assert_eq!((c.coefficient, c.residue, c.nonzero), (-1, 1, true));
        let pm = builtin_bip("perfect-matching").unwrap();
        let c = biclique_coeff_check(&pm, 3, &caps()).unwrap();
        assert_ne!(c.residue, 0);
        for k in [2, 3] {
            let t = biclique_coeff_check(&builtin_bip("true").unwrap(), k, &caps()).unwrap();
            assert_eq!(t.coefficient, 0);
            let f = biclique_coeff_check(&builtin_bip("false").unwrap(), k, &caps()).unwrap();
            assert_eq!(f.coefficient, 0);
        }
    }

    #[test]
    fn orbit_route_matches_direct_route() {
        let orbits = orbit_decompose(&sylow_k_subgroup(3).unwrap(), &caps()).unwrap();
        for name in ["has-edge", "perfect-matching", "left-dominating"] {
            let psi = builtin_bip(name).unwrap();
            assert_eq!(
                biclique_coeff_check_orbits(&psi, 3, &orbits).unwrap(),
                biclique_coeff_check(&psi, 3, &caps()).unwrap()
            );
        }
    }

    #[test]
    fn hereditary_witness_examples() {
        let k3 = ForbiddenSet::new(&[Graph::clique(3)], &caps()).unwrap();
        let w = hereditary_witness(&k3, &caps()).unwrap();
        assert!(w.verified);
        assert_eq!(w.verified_k, vec![4, 5, 6]);
        assert_eq!((w.b1.len(), w.b2.len()), (1, 1));

        let p3 = ForbiddenSet::new(&[Graph::path(3)], &caps()).unwrap();
        let w = hereditary_witness(&p3, &caps()).unwrap();
        assert!(w.verified);
        assert_eq!(w.quotient_edges, Some(1));
        assert_eq!(w.b1, vec![0, 1]);
        assert_eq!(w.b2, vec![2]);

        let (h1, h2) = k4_pair();
        let pair = ForbiddenSet::new(&[h1, h2.clone()], &caps()).unwrap();
        let w = hereditary_witness(&pair, &caps()).unwrap();
        assert!(w.verified);
        assert_eq!(w.quotient_edges, Some(3));
        assert_eq!(
            w.host.as_ref().map(|h| match h {
                GraphRecord::Graph { n, .. } => *n,
                _ => 0,
            }),
            Some(6)
        );

        let i3 = ForbiddenSet::new(&[Graph::new(3)], &caps()).unwrap();
        assert!(matches!(
            hereditary_witness(&i3, &caps()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn twin_witness_examples() {
        let w = twin_invariant_witness(&builtin("disconnected").unwrap(), 5).unwrap();
        assert!(w.verified);
        assert_eq!(w.edge, Some((0, 1)));
        assert!(w
            .checks
            .iter()
            .all(|c| !c.psi_biclique && c.psi_independent));

        let w = twin_invariant_witness(&builtin("true").unwrap(), 5).unwrap();
        assert!(w.negative.is_some());

        let w = twin_invariant_witness(&builtin("chromatic-number-3").unwrap(), 5).unwrap();
        assert!(w.verified);
        assert_eq!(w.host, Some(GraphRecord::from_graph(&Graph::clique(3))));
    }

    #[test]
    fn reduction_examples() {
        let tf = builtin("triangle-free").unwrap();
        let spec = ImplantSpec::new(Graph::clique(3), &[0], &[1]).unwrap();
        let psi = implant_property(&tf, &spec);
        let g = BipartiteGraph::from_edges(3, 3, &[(0, 0), (1, 1), (2, 0), (2, 2)]).unwrap();
        let mut oracle =
            |p: &PropertyOracle, k, h: &Graph| crate::properties::count_indsub(p, k, h, &caps());
        for k in 0..=4 {
            let rep = reduce_bip_to_indsub(&tf, &spec, &g, k, &mut oracle).unwrap();
            assert_eq!(rep.oracle_calls, 2);
            assert_eq!(
                rep.count,
                crate::properties::count_bip_indsub(&psi, k, &g, &caps()).unwrap()
            );
        }

        let p3 = ImplantSpec::new(Graph::path(3), &[0, 2], &[1]).unwrap();
        let cl = builtin("cluster").unwrap();
        let rep = reduce_bip_to_indsub(&cl, &p3, &g, 3, &mut oracle).unwrap();
        assert_eq!(rep.oracle_calls, 1);
        assert_eq!(
            rep.count,
            crate::properties::count_indsub(&cl, 3, &g.underlying(), &caps()).unwrap()
        );
    }

    #[test]
    fn colourful_examples() {
        let e = builtin_bip("has-edge").unwrap();
        let h = BipartiteGraph::biclique(1);
        let c = ConsistentColouring::new(h.clone(), BipartiteGraph::biclique(2), vec![0, 0, 1, 1])
            .unwrap();
        let mut oracle = |p: &BipartitePropertyOracle, k, g: &BipartiteGraph| {
            crate::properties::count_bip_indsub(p, k, g, &caps())
        };
        assert_eq!(
            colourful_from_uncoloured(&e, &c, &mut oracle).unwrap(),
            (Count::from(4u8), 4)
        );
        let t = builtin_bip("true").unwrap();
        let g = BipartiteGraph::from_edges(3, 2, &[(0, 1)]).unwrap();
        let c = ConsistentColouring::new(h.clone(), g, vec![0, 0, 0, 1, 1]).unwrap();
        assert_eq!(
            colourful_from_uncoloured(&t, &c, &mut oracle).unwrap().0,
            Count::from(6u8)
        );
        let empty = ConsistentColouring::new(h, BipartiteGraph::new(2, 0), vec![0, 0]).unwrap();
        assert_eq!(
            colourful_from_uncoloured(&t, &empty, &mut oracle)
                .unwrap()
                .0,
            Count::from(0u8)
        );
    }

    #[test]
    fn ramsey_values() {
        assert_eq!(ramsey_bound(3, 3), 6);
        assert_eq!(ramsey_bound(2, 7), 7);
        assert_eq!(ramsey_bound(4, 3), 9);
        assert_eq!(ramsey_bound(1, 9), 1);
        assert_eq!(ramsey_bound(4, 5), 25);
        assert_eq!(ramsey_bound(5, 5), 70);
    }

    #[test]
    fn probing_agrees_with_structure() {
        for (name, pi) in fixture_catalogue(&caps()).unwrap() {
            let r = classify_hereditary(&pi, &caps()).unwrap();
            assert_eq!(r.row, probe_row(&pi, &caps()).unwrap(), "{name}");
        }
    }

    #[test]
    fn classifier_examples() {
        let c = |members: &[Graph]| {
            classify_hereditary(&ForbiddenSet::new(members, &caps()).unwrap(), &caps()).unwrap()
        };
        assert_eq!(c(&[]).row, Row::ConstantTrue);
        let r = c(&[Graph::clique(3), Graph::new(3)]);
        assert_eq!((r.row, r.ramsey_bound), (Row::FiniteSatisfiable, Some(6)));
        let r = c(&[Graph::path(3)]);
        assert_eq!(r.row, Row::ForallCliquesAndIndependents);
        assert!(r.witness.as_ref().unwrap().verified);
        let r = c(&[Graph::new(3)]);
        assert_eq!(r.row, Row::Otherwise);
        assert!(r.via_inverse);
        assert!(r.witness.unwrap().verified);
    }
}
