//! Property selectors and input files.

use std::path::{Path, PathBuf};

use motifkit::io::{parse_bipgraph, parse_colouring, parse_graph};
use motifkit::properties::{builtin, builtin_bip, minimalize_forbidden_set};
use motifkit::{
    BipartiteGraph, BipartitePropertyOracle, Caps, ConsistentColouring, Error, ForbiddenSet, Graph,
    PropertyOracle, Result,
};
use sha2::{Digest, Sha256};

/// Reads files and keeps a running digest of everything read.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(config: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config.as_bytes());
        Inputs { hasher }
    }

    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    pub fn graph(&mut self, path: &Path) -> Result<Graph> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| located(path, e))
    }

    pub fn bipgraph(&mut self, path: &Path) -> Result<BipartiteGraph> {
        let text = self.read(path)?;
        parse_bipgraph(&text).map_err(|e| located(path, e))
    }

    pub fn colouring(
        &mut self,
        pattern: &Path,
        host: &Path,
        colouring: &Path,
    ) -> Result<ConsistentColouring> {
        let h = self.bipgraph(pattern)?;
        let g = self.bipgraph(host)?;
        let text = self.read(colouring)?;
        let map = parse_colouring(&text).map_err(|e| located(colouring, e))?;
        ConsistentColouring::new(h, g, map)
    }

    pub fn forbidden(&mut self, paths: &[PathBuf], caps: &Caps) -> Result<ForbiddenSet> {
        let members = paths
            .iter()
            .map(|p| self.graph(p))
            .collect::<Result<Vec<_>>>()?;
        minimalize_forbidden_set(&members, caps)
    }

    /// A graph property from `builtin:<name>` or `forbidden:<path>[,<path>...]`.
    pub fn property(
        &mut self,
        selector: &str,
        caps: &Caps,
    ) -> Result<(PropertyOracle, Option<ForbiddenSet>)> {
        if let Some(name) = selector.strip_prefix("builtin:") {
            return Ok((builtin(name)?, None));
        }
        if let Some(list) = selector.strip_prefix("forbidden:") {
            let pi = self.forbidden(&split_paths(list), caps)?;
            return Ok((pi.oracle(caps)?, Some(pi)));
        }
        Err(Error::input(format!(
            "unknown property selector {selector:?}; expected builtin:<name> or forbidden:<paths>"
        )))
    }

    pub fn bip_property(&mut self, selector: &str) -> Result<BipartitePropertyOracle> {
        match selector.strip_prefix("builtin-bip:") {
            Some(name) => builtin_bip(name),
            None => Err(Error::input(format!(
                "unknown bipartite property selector {selector:?}; expected builtin-bip:<name>"
            ))),
        }
    }

    pub fn digest(&self) -> String {
        self.hasher
            .clone()
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

fn located(path: &Path, e: motifkit::io::ParseError) -> Error {
    Error::input(format!("{}: {e}", path.display()))
}

pub fn split_paths(list: &str) -> Vec<PathBuf> {
    list.split(',')
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
        .collect()
}

/// Comma-separated vertex list such as `0,2,5`.
pub fn vertex_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::input(format!("{p:?} is not a vertex index")))
        })
        .collect()
}
