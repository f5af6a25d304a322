use std::collections::BTreeMap;

use motifkit::graphs::{canonical_form, optimal_elimination_order, tree_decomposition};
use motifkit::hardness_lab::{
    biclique_coeff_check, biclique_coeff_check_orbits, classify_hereditary,
    consistent_automorphism_group, hereditary_witness, orbit_decompose, reduce_bip_to_indsub,
    sylow_k_subgroup, twin_invariant_witness,
};
use motifkit::homomorphisms::count_cp_homs;
use motifkit::io::GraphRecord;
use motifkit::motif_basis::{
    bip_coefficients, eval_via_bip_basis, eval_via_hom_basis, mobius_extract, t_phi,
    uncoloured_hom_basis,
};
use motifkit::properties::{
    count_bip_indsub, count_cp_bip_indsub, count_indsub, implant_graph, inverse_forbidden_set,
    meagre_fast_count,
};
use motifkit::{
    BipartiteGraph, BipartitePropertyOracle, Caps, ConsistentColouring, Count, Error, ImplantSpec,
    Result,
};
use serde_json::{json, Value};

use crate::select::{vertex_list, Inputs};
use crate::{selftest, Command, GroupKind, Method};

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::consistency(e.to_string()))
}

fn mismatch(what: &str, fast: &Count, brute: &Count) -> Error {
    Error::consistency(format!(
        "{what}: fast path gave {fast}, brute force gave {brute}"
    ))
}

/// Direct enumeration of vertex subsets, kept separate from the library
/// counter so the check is independent of it.
fn naive_bip_count(
    psi: &BipartitePropertyOracle,
    k: usize,
    g: &BipartiteGraph,
    caps: &Caps,
) -> Result<Count> {
    let n = g.n();
    if n > 30 {
        return Err(Error::Capacity {
            what: "vertices for the naive subset scan",
            limit: 30,
            got: n,
        });
    }
    if (1u64 << n) > caps.enumeration {
        return Err(Error::Capacity {
            what: "vertex subsets",
            limit: caps.enumeration as usize,
            got: 1 << n,
        });
    }
    let mut total = 0u64;
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if psi.eval(&g.induced(&s)?) {
            total += 1;
        }
    }
    Ok(Count::from(total))
}

fn spec_json(spec: &ImplantSpec) -> Value {
    json!({
        "host": GraphRecord::from_graph(spec.host()),
        "B1": spec.b1(),
        "B2": spec.b2(),
        "R": spec.rest(),
    })
}

pub fn dispatch(cmd: &Command, inputs: &mut Inputs, caps: &Caps, seed: u64) -> Result<Value> {
    match cmd {
        Command::Count {
            property,
            graph,
            k,
            method,
            check_bruteforce,
        } => {
            let (phi, pi) = inputs.property(property, caps)?;
            let g = inputs.graph(graph)?;
            let method = match method {
                Method::Auto if pi.is_some() && *k > 0 => {
                    let cert =
                        motifkit::hardness_lab::meagre_certificate(pi.as_ref().unwrap(), caps)?;
                    if cert.is_some() {
                        Method::Meagre
                    } else if *k <= caps.basis_k {
                        Method::Basis
                    } else {
                        Method::Brute
                    }
                }
                Method::Auto if *k <= caps.basis_k => Method::Basis,
                Method::Auto => Method::Brute,
                m => *m,
            };
            let count = match method {
                Method::Basis => {
                    eval_via_hom_basis(&uncoloured_hom_basis(&phi, *k, caps)?, &g, caps)?
                }
                Method::Meagre => {
                    let pi = pi.as_ref().ok_or_else(|| {
                        Error::input("the meagre method needs a forbidden: selector")
                    })?;
                    meagre_fast_count(pi, *k, &g, caps)?
                }
                _ => count_indsub(&phi, *k, &g, caps)?,
            };
            if *check_bruteforce {
                let brute = count_indsub(&phi, *k, &g, caps)?;
                if brute != count {
                    return Err(mismatch("count", &count, &brute));
                }
            }
            Ok(json!({
                "property": phi.name(),
                "k": k,
                "n": g.n(),
                "method": format!("{method:?}").to_lowercase(),
                "count": count.to_string(),
                "checked": check_bruteforce,
            }))
        }
        Command::CountBip {
            psi,
            graph,
            k,
            check_bruteforce,
        } => {
            let psi = inputs.bip_property(psi)?;
            let g = inputs.bipgraph(graph)?;
            let count = count_bip_indsub(&psi, *k, &g, caps)?;
            if *check_bruteforce {
                let brute = naive_bip_count(&psi, *k, &g, caps)?;
                if brute != count {
                    return Err(mismatch("count-bip", &count, &brute));
                }
            }
            Ok(json!({
                "property": psi.name(),
                "k": k,
                "n1": g.n1(),
                "n2": g.n2(),
                "count": count.to_string(),
                "checked": check_bruteforce,
            }))
        }
        Command::CountCp {
            psi,
            pattern,
            graph,
            colouring,
            check_bruteforce,
        } => {
            let psi = inputs.bip_property(psi)?;
            let c = inputs.colouring(pattern, graph, colouring)?;
            let coeffs = bip_coefficients(&psi, c.pattern(), caps)?;
            let count = eval_via_bip_basis(&coeffs, &c)?;
            if *check_bruteforce {
                let brute = count_cp_bip_indsub(&psi, &c, caps)?;
                if brute != count {
                    return Err(mismatch("count-cp", &count, &brute));
                }
            }
            Ok(json!({
                "property": psi.name(),
                "count": count.to_string(),
                "support_size": coeffs.support().count(),
                "checked": check_bruteforce,
            }))
        }
        Command::Coeffs {
            psi,
            host,
            host_biclique,
        } => {
            let psi = inputs.bip_property(psi)?;
            let h = match (host, host_biclique) {
                (Some(p), None) => inputs.bipgraph(p)?,
                (None, Some(k)) => BipartiteGraph::biclique(*k),
                _ => {
                    return Err(Error::input(
                        "give exactly one of --host and --host-biclique",
                    ))
                }
            };
            let coeffs = bip_coefficients(&psi, &h, caps)?;
            Ok(json!({
                "property": psi.name(),
                "full_edge_set": coeffs.top().to_string(),
                "table": to_json(&coeffs.to_table())?,
            }))
        }
        Command::Basis { property, k } => {
            let (phi, _) = inputs.property(property, caps)?;
            let basis = uncoloured_hom_basis(&phi, *k, caps)?;
            Ok(json!({
                "property": phi.name(),
                "k": k,
                "support_size": basis.entries().len(),
                "table": to_json(&basis.to_table())?,
            }))
        }
        Command::Tphi { property, k } => {
            let (phi, _) = inputs.property(property, caps)?;
            let basis = uncoloured_hom_basis(&phi, *k, caps)?;
            Ok(json!({
                "property": phi.name(),
                "k": k,
                "support_size": basis.entries().len(),
                "t_phi": t_phi(&basis, caps)?,
            }))
        }
        Command::Extract {
            psi,
            pattern,
            graph,
            colouring,
            check_bruteforce,
        } => {
            let psi = inputs.bip_property(psi)?;
            let c = inputs.colouring(pattern, graph, colouring)?;
            let coeffs = bip_coefficients(&psi, c.pattern(), caps)?;
            let mut oracle = |q: &ConsistentColouring| count_cp_bip_indsub(&psi, q, caps);
            let rep = mobius_extract(&mut oracle, &coeffs, &c)?;
            if *check_bruteforce {
                let h = c.pattern().underlying();
                let col = c.underlying();
                for (t, got) in &rep.recovered {
                    let brute = count_cp_homs(&h, *t, &col)?;
                    if &brute != got {
                        return Err(mismatch(&format!("extract T={t}"), got, &brute));
                    }
                }
            }
            let recovered: BTreeMap<String, String> = rep
                .recovered
                .iter()
                .map(|(t, v)| (t.to_string(), v.to_string()))
                .collect();
            Ok(json!({
                "property": psi.name(),
                "edge_order": coeffs.edge_order(),
                "recovered": recovered,
                "b": rep.b.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "queries": to_json(&rep.queries)?,
                "checked": check_bruteforce,
            }))
        }
        Command::Quotient { graph } => {
            let g = inputs.graph(graph)?;
            let (q, blocks) = g.twin_free_quotient();
            Ok(json!({
                "quotient": GraphRecord::from_graph(&q),
                "blocks": blocks.blocks(),
                "edges": q.edge_count(),
                "canonical": canonical_form(&q, caps)?.hex(),
            }))
        }
        Command::Implant { host, b1, b2, bip } => {
            let h = inputs.graph(host)?;
            let g = inputs.bipgraph(bip)?;
            let spec = ImplantSpec::new(h, &vertex_list(b1)?, &vertex_list(b2)?)?;
            let f = implant_graph(&spec, &g);
            Ok(json!({
                "spec": spec_json(&spec),
                "implant": GraphRecord::from_graph(&f),
            }))
        }
        Command::Witness { forbidden, inverse } => {
            let mut pi = inputs.forbidden(forbidden, caps)?;
            if *inverse {
                pi = inverse_forbidden_set(&pi, caps)?;
            }
            let w = hereditary_witness(&pi, caps)?;
            Ok(json!({ "inverse": inverse, "witness": to_json(&w)? }))
        }
        Command::WitnessTwin { property, n_max } => {
            let (phi, _) = inputs.property(property, caps)?;
            let w = twin_invariant_witness(&phi, *n_max)?;
            Ok(json!({ "property": phi.name(), "witness": to_json(&w)? }))
        }
        Command::Classify { forbidden } => {
            let pi = inputs.forbidden(forbidden, caps)?;
            to_json(&classify_hereditary(&pi, caps)?)
        }
        Command::ReduceVerify {
            forbidden,
            graph,
            k,
        } => {
            let pi = inputs.forbidden(forbidden, caps)?;
            let g = inputs.bipgraph(graph)?;
            let phi = pi.oracle(caps)?;
            let w = hereditary_witness(&pi, caps)?;
            let spec = w.spec.clone().expect("positive witness carries its spec");
            let mut oracle = |p: &motifkit::PropertyOracle, k: usize, h: &motifkit::Graph| {
                count_indsub(p, k, h, caps)
            };
            let rep = reduce_bip_to_indsub(&phi, &spec, &g, *k, &mut oracle)?;
            let psi = motifkit::properties::implant_property(&phi, &spec);
            let direct = count_bip_indsub(&psi, *k, &g, caps)?;
            if direct != rep.count {
                return Err(mismatch("reduce-verify", &rep.count, &direct));
            }
            Ok(json!({
                "spec": spec_json(&spec),
                "k": k,
                "reduction": to_json(&rep)?,
                "direct": direct.to_string(),
                "agree": true,
            }))
        }
        Command::Orbits { k, group, psi } => {
            let g = match group {
                GroupKind::Sylow => sylow_k_subgroup(*k)?,
                GroupKind::Full => {
                    if *k > 4 {
                        return Err(Error::Capacity {
                            what: "biclique side for the full automorphism group",
                            limit: 4,
                            got: *k,
                        });
                    }
                    consistent_automorphism_group(*k)?
                }
            };
            let rep = orbit_decompose(&g, caps)?;
            let check = match psi {
                None => Value::Null,
                Some(sel) => {
                    let psi = inputs.bip_property(sel)?;
                    let c = if matches!(group, GroupKind::Sylow) {
                        biclique_coeff_check_orbits(&psi, *k, &rep)?
                    } else {
                        biclique_coeff_check(&psi, *k, caps)?
                    };
                    to_json(&c)?
                }
            };
            let mut fixed = rep.fixed_points.clone();
            fixed.truncate(64);
            Ok(json!({
                "k": k,
                "group": format!("{group:?}").to_lowercase(),
                "group_order": rep.group_order,
                "orbit_count": rep.orbit_count,
                "fixed_points": fixed,
                "orbit_size_histogram": rep
                    .orbit_size_histogram
                    .iter()
                    .map(|(s, c)| (s.to_string(), *c))
                    .collect::<BTreeMap<_, _>>(),
                "coefficient_check": check,
            }))
        }
        Command::Treewidth { graph } => {
            let g = inputs.graph(graph)?;
            let (width, order) = optimal_elimination_order(&g, caps)?;
            let td = tree_decomposition(&g, caps)?;
            Ok(json!({
                "treewidth": width,
                "elimination_order": order,
                "bags": td.bags,
                "parent": td.parent,
                "valid": td.is_valid_for(&g),
            }))
        }
        Command::Selftest { rounds } => selftest::run(seed, *rounds, caps),
    }
}
