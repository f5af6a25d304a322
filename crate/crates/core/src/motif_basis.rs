//! Homomorphism-basis coefficients.
//!
//! Two expansions are provided. For a bipartite pattern `H` with a
//! consistent colouring `c`, colour-prescribed induced counts are integer
//! combinations of colour-prescribed homomorphism counts from edge-subgraphs
//! `H[T]`, with
//!
//! ```text
//! a_T = Σ_{A ⊆ T} Ψ(H[A]) · (-1)^{|T| - |A|}.
//! ```
//!
//! For plain graphs, `#IndSub(Φ, k, G)` is a finite rational combination of
//! `#Hom(F, G)` over small graphs `F`. That basis is computed by expanding
//! induced copies into embeddings of edge supersets and embeddings into
//! homomorphisms from vertex quotients.

use std::collections::BTreeMap;
use std::ops::{AddAssign, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Caps, Error, Result};
use crate::graphs::{canonical_form, treewidth_exact, BipartiteGraph, CanonicalForm, Graph};
use crate::homomorphisms::{
    bip_cp_tensor, count_cp_homs, count_homs, edge_subgraph, Colouring, ConsistentColouring, Count,
};
use crate::io::GraphRecord;
use crate::properties::{BipartitePropertyOracle, PropertyOracle};

/// Bit mask over a pattern's edges in lexicographic order.
pub type EdgeSubset = u64;

/// Replaces `v[S]` by `Σ_{T ⊆ S} v[T]`.
pub fn zeta_transform<T>(v: &mut [T])
where
    T: Clone + for<'a> AddAssign<&'a T>,
{
    let n = v.len();
    assert!(
        n.is_power_of_two(),
        "transform length must be a power of two"
    );
    let mut bit = 1;
    while bit < n {
        for s in 0..n {
            if s & bit != 0 {
                let lower = v[s ^ bit].clone();
                v[s] += &lower;
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`zeta_transform`]: `v[S]` becomes
/// `Σ_{T ⊆ S} (-1)^{|S| - |T|} v[T]`.
pub fn mobius_transform<T>(v: &mut [T])
where
    T: Clone + for<'a> SubAssign<&'a T>,
{
    let n = v.len();
    assert!(
        n.is_power_of_two(),
        "transform length must be a power of two"
    );
    let mut bit = 1;
    while bit < n {
        for s in 0..n {
            if s & bit != 0 {
                let lower = v[s ^ bit].clone();
                v[s] -= &lower;
            }
        }
        bit <<= 1;
    }
}

/// Coefficients `a_T` for every edge subset of a bipartite pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipCoefficients {
    host: BipartiteGraph,
    edges: Vec<(usize, usize)>,
    values: Vec<i32>,
}

impl BipCoefficients {
    pub fn host(&self) -> &BipartiteGraph {
        &self.host
    }

    /// Edge order indexing the masks.
    pub fn edge_order(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn get(&self, t: EdgeSubset) -> i64 {
        self.values[t as usize] as i64
    }

    /// The coefficient of the full edge set.
    pub fn top(&self) -> i64 {
        *self.values.last().expect("table is never empty") as i64
    }

    /// Nonzero entries in mask order.
    pub fn support(&self) -> impl Iterator<Item = (EdgeSubset, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(t, &a)| (t as EdgeSubset, a as i64))
    }

    pub fn to_table(&self) -> CoefficientTable {
        CoefficientTable {
            mode: TableMode::BipartiteColoured,
            host: Some(GraphRecord::from_bipartite(&self.host)),
            edge_order: self.edges.clone(),
            entries: self
                .support()
                .map(|(t, a)| TableEntry {
                    key: t.to_string(),
                    graph: None,
                    numerator: a.to_string(),
                    denominator: "1".into(),
                })
                .collect(),
        }
    }
}

/// `a_T` for all `T ⊆ E(H)` by one Möbius pass over the truth table of
/// `Ψ(H[A])`.
pub fn bip_coefficients(
    psi: &BipartitePropertyOracle,
    host: &BipartiteGraph,
    caps: &Caps,
) -> Result<BipCoefficients> {
    let edges = host.edges();
    Error::check_cap("pattern edges", edges.len(), caps.mask_bits.min(30))?;
    let mut values: Vec<i32> = (0..1u64 << edges.len())
        .map(|a| i32::from(psi.eval(&host.edge_subgraph_mask(&edges, a))))
        .collect();
    mobius_transform(&mut values);
    Ok(BipCoefficients {
        host: host.clone(),
        edges,
        values,
    })
}

/// The coefficient of the full edge set, streamed without storing a table.
pub fn top_bip_coefficient(
    psi: &BipartitePropertyOracle,
    host: &BipartiteGraph,
    caps: &Caps,
) -> Result<i64> {
    let edges = host.edges();
    let m = edges.len();
    Error::check_cap("pattern edges", m, caps.mask_bits.min(40))?;
    let mut total = 0i64;
    for a in 0..1u64 << m {
        if psi.eval(&host.edge_subgraph_mask(&edges, a)) {
            let sign = if (m as u32 - a.count_ones()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            total += sign;
        }
    }
    Ok(total)
}

fn to_count(v: BigInt, what: &str) -> Result<Count> {
    match v.sign() {
        Sign::Minus => Err(Error::consistency(format!(
            "{what} evaluated to negative {v}"
        ))),
        _ => Ok(v.magnitude().clone()),
    }
}

/// `Σ_T a_T · #cpHom(H[T] →_c G)` over the support of the coefficients.
pub fn eval_via_bip_basis(coeffs: &BipCoefficients, c: &ConsistentColouring) -> Result<Count> {
    if c.pattern() != coeffs.host() {
        return Err(Error::input(
            "colouring pattern differs from coefficient host",
        ));
    }
    let col = c.underlying();
    let h = col.pattern().clone();
    let mut total = BigInt::zero();
    for (t, a) in coeffs.support() {
        let homs = count_cp_homs(&h, t, &col)?;
        total += BigInt::from(a) * BigInt::from(homs);
    }
    to_count(total, "bipartite basis sum")
}

/// `M(T, T̂)` for all pairs: the number of colour-prescribed homomorphisms
/// from `H[T]` to `H[T̂]` under the identity colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMatrix {
    m: usize,
    rows: Vec<Vec<u8>>,
}

impl SystemMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, t: EdgeSubset, t_hat: EdgeSubset) -> u8 {
        self.rows[t as usize][t_hat as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }
}

/// Largest pattern accepted by [`system_matrix`]; the matrix has
/// `4^m` entries.
pub const SYSTEM_MATRIX_MAX_EDGES: usize = 10;

pub fn system_matrix(h: &Graph, caps: &Caps) -> Result<SystemMatrix> {
    let m = h.edge_count();
    Error::check_cap(
        "system matrix edges",
        m,
        caps.mask_bits.min(SYSTEM_MATRIX_MAX_EDGES),
    )?;
    let size = 1usize << m;
    let mut rows = vec![vec![0u8; size]; size];
    for t_hat in 0..size as u64 {
        let target = edge_subgraph(h, t_hat);
        let id = Colouring::new(h.clone(), target, (0..h.n()).collect())?;
        for t in 0..size as u64 {
            let v = count_cp_homs(h, t, &id)?;
            let expect = u8::from(t & !t_hat == 0);
            if v != Count::from(expect) {
                return Err(Error::consistency(format!(
                    "M({t}, {t_hat}) = {v}, expected {expect}"
                )));
            }
            rows[t as usize][t_hat as usize] = expect;
        }
    }
    Ok(SystemMatrix { m, rows })
}

/// One oracle call made during extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub t_hat: EdgeSubset,
    pub vertices: usize,
    pub bound: usize,
    pub answer: String,
}

/// Result of recovering colour-prescribed homomorphism counts from an
/// oracle for the induced counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionReport {
    /// `#cpHom(H[T] →_c G)` for every `T` with `a_T ≠ 0`.
    pub recovered: BTreeMap<EdgeSubset, Count>,
    /// `b_T = a_T · #cpHom(H[T] →_c G)` for every `T`.
    pub b: Vec<BigInt>,
    pub queries: Vec<QueryRecord>,
}

/// Queries `oracle` on `(G, c) × (H[T̂], id)` for every `T̂`, inverts the
/// zeta system, and divides by the coefficients.
pub fn mobius_extract(
    oracle: &mut dyn FnMut(&ConsistentColouring) -> Result<Count>,
    coeffs: &BipCoefficients,
    c: &ConsistentColouring,
) -> Result<ExtractionReport> {
    let h = coeffs.host();
    if c.pattern() != h {
        return Err(Error::input(
            "colouring pattern differs from coefficient host",
        ));
    }
    let m = coeffs.edges.len();
    let bound = h.n() * c.host().n();
    let mut y = Vec::with_capacity(1 << m);
    let mut queries = Vec::with_capacity(1 << m);
    for t_hat in 0..1u64 << m {
        let sub = h.edge_subgraph_mask(&coeffs.edges, t_hat);
        let id = ConsistentColouring::new(h.clone(), sub, (0..h.n()).collect())?;
        let query = bip_cp_tensor(c, &id)?;
        let vertices = query.host().n();
        if vertices > bound {
            return Err(Error::consistency(format!(
                "query on {vertices} vertices exceeds the bound {bound}"
            )));
        }
        let answer = oracle(&query)?;
        queries.push(QueryRecord {
            t_hat,
            vertices,
            bound,
            answer: answer.to_string(),
        });
        y.push(BigInt::from(answer));
    }
    mobius_transform(&mut y);
    let mut recovered = BTreeMap::new();
    for (t, a) in coeffs.support() {
        let a = BigInt::from(a);
        let (q, r) = y[t as usize].div_rem(&a);
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "b_{t} = {} is not divisible by a_{t} = {a}",
                y[t as usize]
            )));
        }
        recovered.insert(t, to_count(q, "recovered homomorphism count")?);
    }
    Ok(ExtractionReport {
        recovered,
        b: y,
        queries,
    })
}

/// Rational coefficients of `#IndSub(Φ, k, ·)` in the homomorphism basis,
/// keyed by canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomBasis {
    k: usize,
    property: String,
    entries: BTreeMap<CanonicalForm, BigRational>,
}

impl HomBasis {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &BTreeMap<CanonicalForm, BigRational> {
        &self.entries
    }

    /// Coefficient of the class of `f` (zero outside the support).
    pub fn coefficient(&self, f: &Graph, caps: &Caps) -> Result<BigRational> {
        let key = canonical_form(f, caps)?;
        Ok(self
            .entries
            .get(&key)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    pub fn support(&self) -> impl Iterator<Item = Graph> + '_ {
        self.entries.keys().map(CanonicalForm::to_graph)
    }

    pub fn to_table(&self) -> CoefficientTable {
        CoefficientTable {
            mode: TableMode::Uncoloured,
            host: None,
            edge_order: Vec::new(),
            entries: self
                .entries
                .iter()
                .map(|(key, a)| TableEntry {
                    key: key.hex(),
                    graph: Some(GraphRecord::from_graph(&key.to_graph())),
                    numerator: a.numer().to_string(),
                    denominator: a.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn property(&self) -> &str {
        &self.property
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Set partitions of `0..k` as block-label vectors with labels in order of
/// first appearance.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, k: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(i + 1, k, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::with_capacity(k), 0, &mut out);
    out
}

/// `μ(0̂, ρ) = Π_B (-1)^{|B|-1} (|B|-1)!` in the partition lattice.
fn partition_mobius(labels: &[usize]) -> BigInt {
    let blocks = labels.iter().copied().max().map_or(0, |b| b + 1);
    let mut sizes = vec![0usize; blocks];
    for &b in labels {
        sizes[b] += 1;
    }
    sizes.iter().fold(BigInt::one(), |acc, &s| {
        let term = factorial(s - 1);
        if (s - 1) % 2 == 1 {
            acc * -term
        } else {
            acc * term
        }
    })
}

/// The uncoloured basis for `Φ` at size `k`.
pub fn uncoloured_hom_basis(phi: &PropertyOracle, k: usize, caps: &Caps) -> Result<HomBasis> {
    let pairs = k * k.saturating_sub(1) / 2;
    let order: Vec<u64> = (0..1u64 << pairs).collect();
    hom_basis_in_order(phi, k, &order, caps)
}

/// As [`uncoloured_hom_basis`], visiting labelled graphs in the given mask
/// order (a permutation of `0..2^C(k,2)`). The result does not depend on
/// the order.
pub fn hom_basis_in_order(
    phi: &PropertyOracle,
    k: usize,
    order: &[u64],
    caps: &Caps,
) -> Result<HomBasis> {
    Error::check_cap("basis pattern size", k, caps.basis_k)?;
    let pairs = k * k.saturating_sub(1) / 2;
    if order.len() != 1 << pairs {
        return Err(Error::input("mask order has the wrong length"));
    }
    // c(F') = Σ_{F ⊆ F'} Φ(F) (-1)^{|F' \ F|}: induced copies of F expand
    // into embeddings of every edge superset.
    let mut c: Vec<i64> = (0..1u64 << pairs)
        .map(|m| i64::from(phi.eval(&Graph::from_pair_mask(k, m))))
        .collect();
    mobius_transform(&mut c);

    let pair_list: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect();
    let partitions: Vec<(Vec<usize>, BigInt)> = set_partitions(k)
        .into_iter()
        .map(|p| {
            let mu = partition_mobius(&p);
            (p, mu)
        })
        .collect();
    let mut sums: BTreeMap<CanonicalForm, BigInt> = BTreeMap::new();
    for &mask in order {
        let cf = c[mask as usize];
        if cf == 0 {
            continue;
        }
        for (labels, mu) in &partitions {
            let blocks = labels.iter().copied().max().map_or(0, |b| b + 1);
            let mut q = Graph::new(blocks);
            let mut loop_found = false;
            for (i, &(u, v)) in pair_list.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = (labels[u], labels[v]);
                    if a == b {
                        loop_found = true;
                        break;
                    }
                    q.insert_edge(a, b);
                }
            }
            if loop_found {
                continue;
            }
            let key = canonical_form(&q, caps)?;
            *sums.entry(key).or_insert_with(BigInt::zero) += mu * BigInt::from(cf);
        }
    }
    let denom = factorial(k);
    let entries = sums
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(key, s)| (key, BigRational::new(s, denom.clone())))
        .collect();
    Ok(HomBasis {
        k,
        property: phi.name().to_string(),
        entries,
    })
}

/// `Σ_F a(F) · #Hom(F, G)`, checked to be a nonnegative integer.
pub fn eval_via_hom_basis(basis: &HomBasis, g: &Graph, caps: &Caps) -> Result<Count> {
    let mut total = BigRational::zero();
    for (key, a) in &basis.entries {
        let homs = count_homs(&key.to_graph(), g, caps)?;
        total += a * BigRational::from_integer(BigInt::from(homs));
    }
    if !total.is_integer() {
        return Err(Error::consistency(format!(
            "homomorphism basis sum {total} is not an integer"
        )));
    }
    if total.is_negative() {
        return Err(Error::consistency(format!(
            "homomorphism basis sum {total} is negative"
        )));
    }
    to_count(total.to_integer(), "homomorphism basis sum")
}

/// Largest treewidth in the support of the basis; `-1` for an empty
/// support.
pub fn t_phi(basis: &HomBasis, caps: &Caps) -> Result<i32> {
    let mut best = -1;
    for f in basis.support() {
        best = best.max(treewidth_exact(&f, caps)?);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableMode {
    BipartiteColoured,
    Uncoloured,
}

/// Serializable form of either coefficient table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub mode: TableMode,
    pub host: Option<GraphRecord>,
    pub edge_order: Vec<(usize, usize)>,
    pub entries: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<GraphRecord>,
    pub numerator: String,
    pub denominator: String,
}
