mod common;

use std::collections::HashMap;

use common::{random_bipartite, random_coloured, random_graph};
use motifkit::graphs::{canonical_form, treewidth_exact};
use motifkit::homomorphisms::{
    bip_cp_tensor, count_cp_homs, count_homs, count_homs_brute, count_homs_dp, Colouring,
};
use motifkit::io::{parse_bipgraph, parse_graph, write_bipgraph, write_graph};
use motifkit::motif_basis::{hom_basis_in_order, uncoloured_hom_basis};
use motifkit::properties::builtin_catalogue;
use motifkit::{BipartiteGraph, Caps, ConsistentColouring, Graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn caps() -> Caps {
    Caps::DEFAULT
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &b)| m | (b as u64) << i);
            Graph::from_pair_mask(n, mask)
        })
    })
}

#[test]
fn twin_invariance_flags_are_exact() {
    // Group every labelled graph on 2..=6 vertices by the class of its
    // twin-free quotient.
    let mut classes: HashMap<_, Vec<Graph>> = HashMap::new();
    for n in 2..=6usize {
        for mask in 0u64..1 << (n * (n - 1) / 2) {
            let g = Graph::from_pair_mask(n, mask);
            let q = canonical_form(&g.twin_free_quotient().0, &caps()).unwrap();
            classes.entry(q).or_default().push(g);
        }
    }
    for phi in builtin_catalogue() {
        let constant = classes
            .values()
            .all(|gs| gs.iter().all(|g| phi.eval(g) == phi.eval(&gs[0])));
        assert_eq!(constant, phi.is_twin_invariant(), "{}", phi.name());
    }
}

#[test]
fn tensor_multiplies_homomorphism_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let patterns = [
        BipartiteGraph::biclique(2),
        common::bip_path(3, true),
        common::bip_path(4, false),
    ];
    for h in &patterns {
        let und = h.underlying();
        let edges = h.edges();
        for _ in 0..10 {
            let c = random_coloured(&mut rng, h, 7);
            for t_hat in 0..1u64 << edges.len() {
                let sub = h.edge_subgraph_mask(&edges, t_hat);
                let id = ConsistentColouring::new(h.clone(), sub, (0..h.n()).collect()).unwrap();
                let prod = bip_cp_tensor(&c, &id).unwrap();
                for t in 0..1u64 << edges.len() {
                    let lhs = count_cp_homs(&und, t, &prod.underlying()).unwrap();
                    let rhs = count_cp_homs(&und, t, &c.underlying()).unwrap()
                        * count_cp_homs(&und, t, &id.underlying()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn basis_does_not_depend_on_enumeration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for phi in builtin_catalogue().iter().take(5) {
        let base = uncoloured_hom_basis(phi, 4, &caps()).unwrap();
        let mut order: Vec<u64> = (0..64).collect();
        order.shuffle(&mut rng);
        assert_eq!(hom_basis_in_order(phi, 4, &order, &caps()).unwrap(), base);
    }
}

#[test]
fn identity_colouring_has_one_hom_per_subset() {
    let h = Graph::cycle(4);
    let id = Colouring::identity(&h);
    for t in 0..16 {
        assert_eq!(count_cp_homs(&h, t, &id).unwrap(), 1u8.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn dp_agrees_with_backtracking(h in graph_strategy(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 6, 0.5);
        prop_assert_eq!(count_homs_dp(&h, &g, &caps()).unwrap(), count_homs_brute(&h, &g));
        prop_assert_eq!(count_homs(&h, &g, &caps()).unwrap(), count_homs_brute(&h, &g));
    }

    #[test]
    fn text_round_trip(g in graph_strategy(10), seed in any::<u64>()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_bipartite(&mut rng, 3, 4, 0.5);
        prop_assert_eq!(parse_bipgraph(&write_bipgraph(&b)).unwrap(), b);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(9), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g, &caps()).unwrap(), canonical_form(&h, &caps()).unwrap());
        prop_assert_eq!(treewidth_exact(&g, &caps()).unwrap(), treewidth_exact(&h, &caps()).unwrap());
    }

    #[test]
    fn quotient_never_gains_edges(g in graph_strategy(8), keep in any::<u8>()) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| keep >> v & 1 == 1).collect();
        let sub = g.induced_subgraph(&s).unwrap();
        prop_assert!(sub.twin_free_quotient().0.edge_count() <= g.twin_free_quotient().0.edge_count());
    }
}
