//! Seeded cross-checks of the fast paths against brute force.

use motifkit::hardness_lab::{biclique_coeff_check, hereditary_witness, reduce_bip_to_indsub};
use motifkit::homomorphisms::count_cp_homs;
use motifkit::motif_basis::{
    bip_coefficients, eval_via_bip_basis, eval_via_hom_basis, mobius_extract, uncoloured_hom_basis,
};
use motifkit::properties::{
    builtin_bip_catalogue, builtin_catalogue, count_bip_indsub, count_cp_bip_indsub, count_indsub,
    implant_property, random_bip_property,
};
use motifkit::{BipartiteGraph, Caps, ConsistentColouring, Error, ForbiddenSet, Graph, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).expect("edges in range")
}

fn random_bipartite(rng: &mut ChaCha8Rng, n1: usize, n2: usize) -> BipartiteGraph {
    let p = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> = (0..n1)
        .flat_map(|u| (0..n2).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::from_edges(n1, n2, &edges).expect("edges in range")
}

/// Random host over the biclique `B_{2,2}` pattern with up to 8 vertices.
fn random_coloured(rng: &mut ChaCha8Rng) -> Result<ConsistentColouring> {
    let h = BipartiteGraph::biclique(2);
    let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=2)).collect();
    let left: Vec<usize> = (0..2)
        .flat_map(|v| std::iter::repeat_n(v, sizes[v]))
        .collect();
    let right: Vec<usize> = (2..4)
        .flat_map(|v| std::iter::repeat_n(v, sizes[v]))
        .collect();
    let g = random_bipartite(rng, left.len(), right.len());
    let map = left.into_iter().chain(right).collect();
    ConsistentColouring::new(h, g, map)
}

struct Suite {
    checks: Vec<Value>,
    failures: Vec<String>,
}

impl Suite {
    fn record(&mut self, name: &str, cases: usize, bad: Vec<String>) {
        self.checks
            .push(json!({ "name": name, "cases": cases, "passed": bad.is_empty() }));
        self.failures
            .extend(bad.into_iter().map(|b| format!("{name}: {b}")));
    }
}

pub fn run(seed: u64, rounds: usize, caps: &Caps) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite {
        checks: Vec::new(),
        failures: Vec::new(),
    };

    let mut bad = Vec::new();
    let mut cases = 0;
    for phi in builtin_catalogue() {
        for k in 1..=4 {
            let basis = uncoloured_hom_basis(phi, k, caps)?;
            for _ in 0..rounds {
                let n = rng.gen_range(0..=8);
                let g = random_graph(&mut rng, n);
                let (fast, slow) = (
                    eval_via_hom_basis(&basis, &g, caps)?,
                    count_indsub(phi, k, &g, caps)?,
                );
                if fast != slow {
                    bad.push(format!("{} k={k}: {fast} vs {slow}", phi.name()));
                }
                cases += 1;
            }
        }
    }
    suite.record("homomorphism basis", cases, bad);

    let mut bad = Vec::new();
    for i in 0..rounds {
        let psi = random_bip_property(rng.gen());
        let c = random_coloured(&mut rng)?;
        let coeffs = bip_coefficients(&psi, c.pattern(), caps)?;
        let slow = count_cp_bip_indsub(&psi, &c, caps)?;
        if eval_via_bip_basis(&coeffs, &c)? != slow {
            bad.push(format!("instance {i}: expansion"));
        }
        let mut oracle = |q: &ConsistentColouring| count_cp_bip_indsub(&psi, q, caps);
        let rep = mobius_extract(&mut oracle, &coeffs, &c)?;
        let (h, col) = (c.pattern().underlying(), c.underlying());
        for (t, v) in &rep.recovered {
            if &count_cp_homs(&h, *t, &col)? != v {
                bad.push(format!("instance {i}: extraction T={t}"));
            }
        }
    }
    suite.record("bipartite expansion and extraction", rounds, bad);

    let mut bad = Vec::new();
    let pi = ForbiddenSet::new(&[Graph::clique(3)], caps)?;
    let phi = pi.oracle(caps)?;
    let spec = hereditary_witness(&pi, caps)?
        .spec
        .expect("positive witness");
    let psi = implant_property(&phi, &spec);
    for i in 0..rounds {
        let (n1, n2) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let g = random_bipartite(&mut rng, n1, n2);
        let k = rng.gen_range(0..=g.n());
        let mut oracle =
            |p: &motifkit::PropertyOracle, k: usize, h: &Graph| count_indsub(p, k, h, caps);
        let rep = reduce_bip_to_indsub(&phi, &spec, &g, k, &mut oracle)?;
        if rep.count != count_bip_indsub(&psi, k, &g, caps)? {
            bad.push(format!("instance {i}"));
        }
    }
    suite.record("implant reduction", rounds, bad);

    let mut bad = Vec::new();
    for psi in builtin_bip_catalogue() {
        for k in [2, 3] {
            if let Err(e) = biclique_coeff_check(psi, k, caps) {
                bad.push(format!("{} k={k}: {e}", psi.name()));
            }
        }
    }
    suite.record(
        "biclique congruence",
        builtin_bip_catalogue().len() * 2,
        bad,
    );

    if !suite.failures.is_empty() {
        return Err(Error::consistency(suite.failures.join("; ")));
    }
    Ok(json!({ "rounds": rounds, "checks": suite.checks, "all_passed": true }))
}
