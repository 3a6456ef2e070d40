//! Plain-text edge lists.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v        (m lines, one arc u -> v each)
//! ```
//!
//! Three comment lines carry metadata for planted instances:
//! `# source S`, `# sink T` and `# planted_k R`. Blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing \"n m\" header line")]
    MissingHeader,
    #[error("line {line}: cannot parse {content:?}")]
    BadLine { line: usize, content: String },
    #[error("header declares {declared} arcs but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeList {
    pub graph: Digraph,
    pub source: Option<VertexId>,
    pub sink: Option<VertexId>,
    pub planted_k: Option<i64>,
}

fn two_numbers<T: std::str::FromStr>(line: &str) -> Option<(T, T)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

fn metadata(comment: &str, out: &mut EdgeList) {
    let mut it = comment.split_whitespace();
    let (Some(key), Some(value), None) = (it.next(), it.next(), it.next()) else {
        return;
    };
    match key {
        "source" => out.source = value.parse().ok().map(VertexId),
        "sink" => out.sink = value.parse().ok().map(VertexId),
        "planted_k" => out.planted_k = value.parse().ok(),
        _ => {}
    }
}

pub fn parse(text: &str) -> Result<EdgeList, ParseError> {
    let mut out = EdgeList::default();
    let mut declared = None;
    let mut found = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            metadata(comment, &mut out);
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let bad = || ParseError::BadLine {
            line: i + 1,
            content: raw.to_string(),
        };
        match declared {
            None => {
                let (n, m): (usize, usize) = two_numbers(line).ok_or_else(bad)?;
                out.graph = Digraph::with_vertices(n);
                declared = Some(m);
            }
            Some(_) => {
                let (u, v): (u32, u32) = two_numbers(line).ok_or_else(bad)?;
                out.graph
                    .add_edge(VertexId(u), VertexId(v))
                    .map_err(|source| ParseError::Graph { line: i + 1, source })?;
                found += 1;
            }
        }
    }
    let declared = declared.ok_or(ParseError::MissingHeader)?;
    if declared != found {
        return Err(ParseError::EdgeCountMismatch { declared, found });
    }
    Ok(out)
}

/// Serialises a graph whose vertices are all alive. Metadata comments are
/// appended after the arcs.
pub fn write(list: &EdgeList) -> String {
    let g = &list.graph;
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.capacity(), g.num_edges());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    if let Some(v) = list.source {
        let _ = writeln!(s, "# source {v}");
    }
    if let Some(v) = list.sink {
        let _ = writeln!(s, "# sink {v}");
    }
    if let Some(k) = list.planted_k {
        let _ = writeln!(s, "# planted_k {k}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_and_metadata() {
        let text = "# a pumpkin\n4 4\n0 2\n2 1\n\n0 3\n3 1\n# source 0\n# sink 1\n# planted_k 0\n";
        let list = parse(text).unwrap();
        assert_eq!(list.graph.num_vertices(), 4);
        assert_eq!(list.graph.num_edges(), 4);
        assert_eq!(list.source, Some(VertexId(0)));
        assert_eq!(list.sink, Some(VertexId(1)));
        assert_eq!(list.planted_k, Some(0));
        assert_eq!(parse(&write(&list)).unwrap(), list);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("# nothing\n"), Err(ParseError::MissingHeader));
        assert_eq!(
            parse("2 2\n0 1\n"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        );
        assert!(matches!(parse("2 1\n0 x\n"), Err(ParseError::BadLine { line: 2, .. })));
        assert!(matches!(parse("2 1 7\n0 1\n"), Err(ParseError::BadLine { line: 1, .. })));
        assert_eq!(
            parse("2 1\n1 1\n"),
            Err(ParseError::Graph {
                line: 2,
                source: GraphError::SelfLoop(VertexId(1))
            })
        );
        assert!(matches!(
            parse("2 2\n0 1\n0 1\n"),
            Err(ParseError::Graph {
                source: GraphError::DuplicateEdge(..),
                ..
            })
        ));
        assert!(matches!(
            parse("2 1\n0 5\n"),
            Err(ParseError::Graph {
                source: GraphError::OutOfRange { .. },
                ..
            })
        ));
    }
}
