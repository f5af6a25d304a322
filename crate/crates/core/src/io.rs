//! Line-oriented text formats and JSON graph records.
//!
//! ```text
//! graph <n> <m>          bipgraph <n1> <n2> <m>     colouring <n>
//! <u> <v>   (m lines)    <u> <v>   (m lines)        <c_0> ... <c_{n-1}>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Graph edges may
//! list their endpoints in either order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::graphs::{BipartiteGraph, Graph};

/// Why a text file was rejected. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line {text:?}: {reason}")]
    Malformed {
        line: usize,
        text: String,
        reason: String,
    },
    #[error("line {line}: endpoint {vertex} out of range (limit {limit})")]
    OutOfRange {
        line: usize,
        vertex: usize,
        limit: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Input(e.to_string())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, text: &str, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        text: text.to_string(),
        reason: reason.into(),
    }
}

fn numbers(line: usize, text: &str, count: usize) -> Result<Vec<usize>, ParseError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != count {
        return Err(malformed(
            line,
            text,
            format!("expected {count} integers, found {} fields", parts.len()),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| malformed(line, text, format!("{p:?} is not a nonnegative integer")))
        })
        .collect()
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    fields: usize,
) -> Result<Vec<usize>, ParseError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| malformed(1, "", format!("missing `{keyword}` header")))?;
    let rest = text
        .strip_prefix(keyword)
        .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        .ok_or_else(|| malformed(line, text, format!("expected `{keyword}` header")))?;
    numbers(line, rest.trim(), fields)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let h = header(&mut lines, "graph", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, t) in lines {
        let uv = numbers(line, t, 2)?;
        let (u, v) = (uv[0], uv[1]);
        for x in [u, v] {
            if x >= n {
                return Err(ParseError::OutOfRange {
                    line,
                    vertex: x,
                    limit: n,
                });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if g.has_edge(u, v) {
            return Err(ParseError::Duplicate { line, u, v });
        }
        g.insert_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(ParseError::CountMismatch {
            what: "edges",
            expected: m,
            found: seen,
        });
    }
    Ok(g)
}

pub fn parse_bipgraph(text: &str) -> Result<BipartiteGraph, ParseError> {
    let mut lines = content_lines(text);
    let h = header(&mut lines, "bipgraph", 3)?;
    let (n1, n2, m) = (h[0], h[1], h[2]);
    let mut b = BipartiteGraph::new(n1, n2);
    let mut seen = 0;
    for (line, t) in lines {
        let uv = numbers(line, t, 2)?;
        let (u, v) = (uv[0], uv[1]);
        if u >= n1 {
            return Err(ParseError::OutOfRange {
                line,
                vertex: u,
                limit: n1,
            });
        }
        if v >= n2 {
            return Err(ParseError::OutOfRange {
                line,
                vertex: v,
                limit: n2,
            });
        }
        if b.has_edge(u, v) {
            return Err(ParseError::Duplicate { line, u, v });
        }
        b.insert_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(ParseError::CountMismatch {
            what: "edges",
            expected: m,
            found: seen,
        });
    }
    Ok(b)
}

/// A colouring file: `colouring <n>` followed by `n` integers, spread over
/// any number of lines.
pub fn parse_colouring(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut lines = content_lines(text);
    let h = header(&mut lines, "colouring", 1)?;
    let n = h[0];
    let mut out = Vec::with_capacity(n);
    for (line, t) in lines {
        for p in t.split_whitespace() {
            out.push(
                p.parse::<usize>()
                    .map_err(|_| malformed(line, t, format!("{p:?} is not a colour")))?,
            );
        }
    }
    if out.len() != n {
        return Err(ParseError::CountMismatch {
            what: "colours",
            expected: n,
            found: out.len(),
        });
    }
    Ok(out)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn write_bipgraph(b: &BipartiteGraph) -> String {
    let mut s = format!("bipgraph {} {} {}\n", b.n1(), b.n2(), b.edge_count());
    for (u, v) in b.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn write_colouring(map: &[usize]) -> String {
    let body: Vec<String> = map.iter().map(usize::to_string).collect();
    format!("colouring {}\n{}\n", map.len(), body.join(" "))
}

/// JSON form of a graph or bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphRecord {
    Graph {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    Bipgraph {
        n1: usize,
        n2: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl GraphRecord {
    pub fn from_graph(g: &Graph) -> Self {
        GraphRecord::Graph {
            n: g.n(),
            edges: g.edges(),
        }
    }

    pub fn from_bipartite(b: &BipartiteGraph) -> Self {
        GraphRecord::Bipgraph {
            n1: b.n1(),
            n2: b.n2(),
            edges: b.edges(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_graph("graph 3 3\n0 1\n1 2\n0 2\n").unwrap(),
            Graph::clique(3)
        );
        assert_eq!(
            parse_bipgraph("bipgraph 2 2 4\n0 0\n0 1\n1 0\n1 1\n").unwrap(),
            BipartiteGraph::biclique(2)
        );
        assert_eq!(
            parse_graph("graph 2 1\n0 0\n"),
            Err(ParseError::SelfLoop { line: 2, vertex: 0 })
        );
    }

    #[test]
    fn errors_are_distinct_and_located() {
        assert!(matches!(
            parse_graph("graph 3 1\n0 x\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3 1\n0 3\n"),
            Err(ParseError::OutOfRange {
                line: 2,
                vertex: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_graph("graph 3 2\n0 1\n\n1 0\n"),
            Err(ParseError::Duplicate { line: 4, .. })
        ));
        assert!(matches!(
            parse_graph("graph 3 2\n0 1\n"),
            Err(ParseError::CountMismatch { .. })
        ));
        assert!(matches!(
            parse_bipgraph("bipgraph 1 1 1\n0 1\n"),
            Err(ParseError::OutOfRange {
                line: 2,
                vertex: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_graph("grph 1 0\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_colouring("colouring 3\n0 1\n2\n").unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(0..12);
            let g = crate::properties::random_graph(&mut rng, n, 0.3);
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
            let b = crate::properties::random_bipartite(&mut rng, n / 2, n - n / 2, 0.4);
            assert_eq!(parse_bipgraph(&write_bipgraph(&b)).unwrap(), b);
        }
    }
}
