use super::*;
use crate::graphs::is_isomorphic;

fn caps() -> Caps {
    Caps::DEFAULT
}

fn claw() -> Graph {
    Graph::star(3)
}

#[test]
fn hereditary_examples() {
    let pi = ForbiddenSet::new(&[Graph::clique(3)], &caps()).unwrap();
    assert!(eval_hereditary(&pi, &Graph::cycle(5), &caps()).unwrap());
    assert!(!eval_hereditary(&pi, &Graph::clique(4), &caps()).unwrap());
    assert!(eval_hereditary(&ForbiddenSet::empty(), &Graph::clique(6), &caps()).unwrap());
}

#[test]
fn minimalize_examples() {
    let m = minimalize_forbidden_set(&[Graph::clique(3), Graph::clique(4)], &caps()).unwrap();
    assert_eq!(m.members(), &[Graph::clique(3)]);
    let m = minimalize_forbidden_set(&[Graph::path(3), Graph::cycle(4)], &caps()).unwrap();
    assert_eq!(m.len(), 1);
    assert!(is_isomorphic(&m.members()[0], &Graph::path(3), &caps()).unwrap());
    let m = minimalize_forbidden_set(&[Graph::clique(3), Graph::new(3)], &caps()).unwrap();
    assert_eq!(m.len(), 2);
    let dup = minimalize_forbidden_set(&[Graph::path(3), Graph::path(3)], &caps()).unwrap();
    assert_eq!(dup.len(), 1);
    assert!(ForbiddenSet::new(&[Graph::clique(3), Graph::clique(4)], &caps()).is_err());
}

#[test]
fn inverse_examples() {
    let edgeless = ForbiddenSet::new(&[Graph::clique(2)], &caps()).unwrap();
    let inv = inverse_forbidden_set(&edgeless, &caps()).unwrap();
    assert_eq!(inv.members(), &[Graph::new(2)]);
    let both = ForbiddenSet::new(&[Graph::clique(3), Graph::new(3)], &caps()).unwrap();
    assert_eq!(inverse_forbidden_set(&both, &caps()).unwrap(), both);

    let phi = builtin("claw-free").unwrap();
    let twice = inverse_property(&inverse_property(&phi));
    assert_eq!(twice.name(), phi.name());
    for n in 0..=6usize {
        for m in (0u64..1 << (n * n.saturating_sub(1) / 2)).step_by(7) {
            let g = Graph::from_pair_mask(n, m);
            assert_eq!(twice.eval(&g), phi.eval(&g));
        }
    }
}

#[test]
fn implant_examples() {
    let spec = ImplantSpec::new(Graph::clique(3), &[0], &[1]).unwrap();
    let f = implant_graph(&spec, &BipartiteGraph::biclique(2));
    assert_eq!((f.n(), f.edge_count()), (5, 8));
    let f = implant_graph(&spec, &BipartiteGraph::independent(2));
    assert!(is_isomorphic(&f, &Graph::star(4), &caps()).unwrap());

    let p3 = Graph::path(3);
    let spec = ImplantSpec::new(p3, &[0, 2], &[1]).unwrap();
    assert!(spec.rest().is_empty());
    let f = implant_graph(&spec, &BipartiteGraph::independent(2));
    assert_eq!(f, Graph::new(4));
}

#[test]
fn implant_spec_validation() {
    let p3 = Graph::path(3);
    assert!(ImplantSpec::new(p3.clone(), &[0, 1], &[2]).is_err());
    assert!(ImplantSpec::new(p3.clone(), &[], &[1]).is_err());
    assert!(ImplantSpec::new(p3.clone(), &[0], &[0]).is_err());
    assert!(ImplantSpec::new(p3, &[0], &[5]).is_err());
}

#[test]
fn implant_property_examples() {
    let tf = builtin("triangle-free").unwrap();
    let spec = ImplantSpec::new(Graph::clique(3), &[0], &[1]).unwrap();
    let psi = implant_property(&tf, &spec);
    for k in 1..=4 {
        assert!(!psi.eval(&BipartiteGraph::biclique(k)));
        assert!(psi.eval(&BipartiteGraph::independent(k)));
    }
    let t = implant_property(&builtin("true").unwrap(), &spec);
    assert!(t.eval(&BipartiteGraph::biclique(3)));
}

#[test]
fn count_examples() {
    let t = builtin("true").unwrap();
    assert_eq!(
        count_indsub(&t, 3, &Graph::cycle(5), &caps()).unwrap(),
        Count::from(10u8)
    );
    let e = builtin("edgeless").unwrap();
    assert_eq!(
        count_indsub(&e, 2, &Graph::clique(5), &caps()).unwrap(),
        Count::from(0u8)
    );
    let tf = builtin("triangle-free").unwrap();
    assert_eq!(
        count_indsub(&tf, 3, &Graph::clique(4), &caps()).unwrap(),
        Count::from(0u8)
    );
    assert_eq!(
        count_indsub(&t, 7, &Graph::cycle(5), &caps()).unwrap(),
        Count::from(0u8)
    );

    let has_edge = builtin_bip("has-edge").unwrap();
    let b22 = BipartiteGraph::biclique(2);
    assert_eq!(
        count_bip_indsub(&has_edge, 2, &b22, &caps()).unwrap(),
        Count::from(4u8)
    );
    let bt = builtin_bip("true").unwrap();
    assert_eq!(
        count_bip_indsub(&bt, 2, &b22, &caps()).unwrap(),
        Count::from(6u8)
    );

    let c = ConsistentColouring::new(BipartiteGraph::biclique(1), b22, vec![0, 0, 1, 1]).unwrap();
    assert_eq!(
        count_cp_bip_indsub(&has_edge, &c, &caps()).unwrap(),
        Count::from(4u8)
    );
}

#[test]
fn enumeration_cap() {
    let small = Caps {
        enumeration: 10,
        ..Caps::DEFAULT
    };
    let t = builtin("true").unwrap();
    assert!(matches!(
        count_indsub(&t, 3, &Graph::new(6), &small),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn meagre_examples() {
    assert_eq!(
        meagre_fast_count(&ForbiddenSet::empty(), 4, &Graph::new(6), &caps()).unwrap(),
        Count::from(15u8)
    );
    let pi = ForbiddenSet::new(&[Graph::clique(2), Graph::new(3)], &caps()).unwrap();
    for g in [Graph::cycle(5), Graph::new(4), Graph::clique(4)] {
        assert_eq!(
            meagre_fast_count(&pi, 3, &g, &caps()).unwrap(),
            Count::from(0u8)
        );
    }
    assert_eq!(
        meagre_fast_count(&pi, 2, &Graph::path(3), &caps()).unwrap(),
        Count::from(1u8)
    );
    let hard = ForbiddenSet::new(&[Graph::clique(3)], &caps()).unwrap();
    assert!(matches!(
        meagre_fast_count(&hard, 2, &Graph::path(3), &caps()),
        Err(Error::Contract(_))
    ));
}

#[test]
fn catalogue_examples() {
    assert!(builtin("disconnected").unwrap().eval(&Graph::new(2)));
    assert!(!builtin("bipartite").unwrap().eval(&Graph::cycle(5)));
    assert!(!builtin("claw-free").unwrap().eval(&claw()));
    assert!(!builtin("hole-free").unwrap().eval(&Graph::cycle(5)));
    assert!(builtin("hole-free").unwrap().eval(&Graph::cycle(4)));
    assert!(builtin("chromatic-number-3")
        .unwrap()
        .eval(&Graph::cycle(5)));
    assert!(builtin("clique-number-2").unwrap().eval(&Graph::cycle(5)));
    assert!(builtin("odd-girth-5").unwrap().eval(&Graph::cycle(5)));
    assert!(builtin("chromatic-number-4")
        .unwrap()
        .eval(&Graph::clique(4)));
    assert!(builtin("no-such").is_err());
    assert!(builtin_bip("perfect-matching")
        .unwrap()
        .eval(&BipartiteGraph::biclique(3)));
    assert!(!builtin_bip("perfect-matching")
        .unwrap()
        .eval(&BipartiteGraph::independent(3)));
}

#[test]
fn non_invariant_oracle_rejected() {
    let bad = PropertyOracle::new("vertex-0-isolated", false, false, |g| {
        g.n() > 0 && g.degree(0) == 0
    });
    assert!(matches!(bad, Err(Error::Input(_))));
    let bad =
        BipartitePropertyOracle::new("left-0-isolated", |b| b.n1() > 0 && b.left_degree(0) == 0);
    assert!(bad.is_err());
}

#[test]
fn catalogue_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for phi in builtin_catalogue() {
        for _ in 0..20 {
            let n = rng.gen_range(0..=8);
            let g = random_graph(&mut rng, n, 0.45);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                assert_eq!(
                    phi.eval(&g),
                    phi.eval(&g.relabel(&perm).unwrap()),
                    "{}",
                    phi.name()
                );
            }
        }
    }
}

#[test]
fn hereditary_flags_hold() {
    for phi in builtin_catalogue().iter().filter(|p| p.is_hereditary()) {
        for n in 0..=7usize {
            let pairs = n * n.saturating_sub(1) / 2;
            let step = if n == 7 { 4099 } else { 13 };
            for m in (0u64..1 << pairs).step_by(step) {
                let g = Graph::from_pair_mask(n, m);
                if !phi.eval(&g) {
                    continue;
                }
                for mask in 0u32..1 << n {
                    let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    assert!(phi.eval(&g.induced_sorted(&s)), "{} {g:?}", phi.name());
                }
            }
        }
    }
}

#[test]
fn complement_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for phi in builtin_catalogue() {
        let inv = inverse_property(phi);
        for _ in 0..10 {
            let n = rng.gen_range(0..=8);
            let g = random_graph(&mut rng, n, 0.5);
            for k in 0..=4 {
                assert_eq!(
                    count_indsub(phi, k, &g, &caps()).unwrap(),
                    count_indsub(&inv, k, &g.complement(), &caps()).unwrap()
                );
            }
        }
    }
}

#[test]
fn implant_count_identity() {
    // Induced bipartite subgraphs of G correspond to induced subgraphs of
    // the implant that contain all of R.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let specs = [
        ImplantSpec::new(Graph::clique(3), &[0], &[1]).unwrap(),
        ImplantSpec::new(Graph::path(3), &[0, 2], &[1]).unwrap(),
        ImplantSpec::new(Graph::clique(4), &[0], &[1]).unwrap(),
    ];
    for phi in builtin_catalogue().iter().filter(|p| p.is_hereditary()) {
        for spec in &specs {
            let psi = implant_property(phi, spec);
            for _ in 0..6 {
                let (n1, n2) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
                let g = random_bipartite(&mut rng, n1, n2, 0.5);
                let f = implant_graph(spec, &g);
                let r = spec.rest().len();
                let base = g.n();
                for k in 0..=g.n() {
                    let lhs = count_bip_indsub(&psi, k, &g, &caps()).unwrap();
                    let mut rhs = 0u64;
                    for s in (0..base).combinations(k) {
                        let mut all = s.clone();
                        all.extend(base..base + r);
                        if phi.eval(&f.induced_sorted(&all)) {
                            rhs += 1;
                        }
                    }
                    assert_eq!(lhs, Count::from(rhs));
                }
            }
        }
    }
}
