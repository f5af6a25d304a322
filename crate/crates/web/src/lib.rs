//! Browser bindings. Each exported function takes plain text and returns a
//! JSON string; the same functions are callable natively for testing.

use motifkit::hardness_lab::{
    biclique_coeff_check, classify_hereditary, orbit_decompose, sylow_k_subgroup,
};
use motifkit::io::{parse_graph, GraphRecord};
use motifkit::motif_basis::{eval_via_hom_basis, uncoloured_hom_basis};
use motifkit::properties::{builtin, builtin_bip, count_indsub, minimalize_forbidden_set};
use motifkit::{Caps, Error, Graph, Result};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest host accepted from the page; keeps the brute-force check quick.
const MAX_HOST: usize = 16;

/// Splits a text area holding several `graph n m` blocks.
fn parse_many(text: &str) -> Result<Vec<Graph>> {
    let mut chunks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with("graph") {
            chunks.push(String::new());
        }
        match chunks.last_mut() {
            Some(c) => {
                c.push_str(line);
                c.push('\n');
            }
            None if line.trim().is_empty() || line.trim_start().starts_with('#') => {}
            None => {
                return Err(Error::input(format!(
                    "text before the first graph header: {line:?}"
                )))
            }
        }
    }
    chunks
        .iter()
        .map(|c| parse_graph(c).map_err(Error::from))
        .collect()
}

pub fn classify_text(forbidden: &str) -> Result<String> {
    let caps = Caps::DEFAULT;
    let pi = minimalize_forbidden_set(&parse_many(forbidden)?, &caps)?;
    let report = classify_hereditary(&pi, &caps)?;
    serde_json::to_string(&report).map_err(|e| Error::consistency(e.to_string()))
}

pub fn count_text(property: &str, graph: &str, k: usize) -> Result<String> {
    let caps = Caps::DEFAULT;
    let phi = builtin(property)?;
    let g = parse_graph(graph)?;
    if g.n() > MAX_HOST {
        return Err(Error::Capacity {
            what: "demo host vertices",
            limit: MAX_HOST,
            got: g.n(),
        });
    }
    let basis = uncoloured_hom_basis(&phi, k, &caps)?;
    let via_basis = eval_via_hom_basis(&basis, &g, &caps)?;
    let brute = count_indsub(&phi, k, &g, &caps)?;
    let terms: Vec<_> = basis
        .entries()
        .iter()
        .map(|(key, a)| json!({ "graph": GraphRecord::from_graph(&key.to_graph()), "coefficient": a.to_string() }))
        .collect();
    Ok(json!({
        "property": phi.name(),
        "k": k,
        "count": via_basis.to_string(),
        "brute_force": brute.to_string(),
        "agree": via_basis == brute,
        "terms": terms,
    })
    .to_string())
}

pub fn biclique_text(psi: &str, k: usize) -> Result<String> {
    let caps = Caps::DEFAULT;
    if k > 3 {
        return Err(Error::Capacity {
            what: "demo biclique side",
            limit: 3,
            got: k,
        });
    }
    let psi = builtin_bip(psi)?;
    let check = biclique_coeff_check(&psi, k, &caps)?;
    let orbits = orbit_decompose(&sylow_k_subgroup(k)?, &caps)?;
    Ok(json!({
        "check": check,
        "group_order": orbits.group_order,
        "orbit_count": orbits.orbit_count,
        "fixed_points": orbits.fixed_points,
        "orbit_size_histogram": orbits.orbit_size_histogram,
    })
    .to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Classifies the hereditary property forbidding the given graphs.
#[wasm_bindgen]
pub fn classify(forbidden: &str) -> std::result::Result<String, JsError> {
    js(classify_text(forbidden))
}

/// Counts induced subgraphs through the homomorphism basis and by brute force.
#[wasm_bindgen]
pub fn count(property: &str, graph: &str, k: usize) -> std::result::Result<String, JsError> {
    js(count_text(property, graph, k))
}

/// Top coefficient of a bipartite property on the `(k, k)`-biclique.
#[wasm_bindgen]
pub fn biclique(psi: &str, k: usize) -> std::result::Result<String, JsError> {
    js(biclique_text(psi, k))
}

#[wasm_bindgen]
pub fn property_names() -> String {
    let names: Vec<&str> = motifkit::properties::builtin_catalogue()
        .iter()
        .map(|p| p.name())
        .collect();
    let bip: Vec<&str> = motifkit::properties::builtin_bip_catalogue()
        .iter()
        .map(|p| p.name())
        .collect();
    json!({ "graph": names, "bipartite": bip }).to_string()
}
