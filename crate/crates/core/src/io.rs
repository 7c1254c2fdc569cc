//! graph6 and plain edge-list text formats.
//!
//! graph6 follows the format shipped with nauty: a size header followed by
//! the upper triangle of the adjacency matrix read column by column,
//! `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte (most
//! significant bit first), zero-padded, each byte offset by 63. Orders up to
//! 62 use a one-byte header; orders up to 258047 use `~` plus three bytes.
//!
//! The edge-list format is a header line `n m` followed by `m` lines `u v`
//! with 0-based endpoints. Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::enumerate::pair_order;
use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";
const SMALL_ORDER_MAX: usize = 62;
const MEDIUM_ORDER_MAX: usize = 258_047;

/// Parses one graph6 record. An optional `>>graph6<<` prefix and trailing
/// whitespace are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::format(None, "empty graph6 record"));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::format(
            None,
            format!("byte {:#04x} at offset {pos} is outside the graph6 range 63..=126", bytes[pos]),
        ));
    }

    let (n, payload) = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(Error::Capability("graph6 orders above 258047 are not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::format(None, "truncated graph6 size header"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    } else {
        (usize::from(bytes[0] - 63), &bytes[1..])
    };
    if n == 0 {
        return Err(Error::format(None, "graph6 record describes a graph with no vertices"));
    }

    let pair_count = n * (n - 1) / 2;
    let expected = pair_count.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::format(
            None,
            format!("graph6 payload has {} bytes, order {n} needs {expected}", payload.len()),
        ));
    }

    let bit = |k: usize| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (pair_count..expected * 6).any(bit) {
        return Err(Error::format(None, "nonzero graph6 padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Parses a stream of graph6 records, one per non-blank line. Errors carry
/// 1-based line numbers.
pub fn parse_graph6_lines(text: &str) -> impl Iterator<Item = Result<Graph>> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| match e {
                Error::Format { message, .. } => Error::format(Some(i + 1), message),
                other => other,
            })
        })
}

/// Canonical graph6 encoding, without header or newline.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    let mut out = String::new();
    if n <= SMALL_ORDER_MAX {
        out.push(char::from(n as u8 + 63));
    } else if n <= MEDIUM_ORDER_MAX {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(char::from((n >> shift & 0x3f) as u8 + 63));
        }
    } else {
        return Err(Error::Capability(format!("graph6 encoding of order {n} is not supported")));
    }

    let mut group = 0u8;
    let mut filled = 0;
    for (u, v) in pair_order(n) {
        group = (group << 1) | u8::from(g.has_edge(u, v));
        filled += 1;
        if filled == 6 {
            out.push(char::from(group + 63));
            group = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(char::from((group << (6 - filled)) + 63));
    }
    Ok(out)
}

/// Result of [`parse_edge_list`]: the graph plus the number of repeated edge
/// lines that were collapsed.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::format(None, "missing `n m` header"))?;
    let [n, m] = parse_pair(header_line, header, "header `n m`")?;
    if n == 0 {
        return Err(Error::format(Some(header_line), "graph must have at least one vertex"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::new();
    let mut duplicate_edges = 0;
    for (line_no, line) in lines {
        if edges.len() == m {
            return Err(Error::format(Some(line_no), format!("more than the declared {m} edges")));
        }
        let [u, v] = parse_pair(line_no, line, "edge `u v`")?;
        if u >= n || v >= n {
            return Err(Error::format(
                Some(line_no),
                format!("endpoint {} out of range for {n} vertices", u.max(v)),
            ));
        }
        if u == v {
            return Err(Error::format(Some(line_no), format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            duplicate_edges += 1;
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::format(
            None,
            format!("header declares {m} edges but {} were found", edges.len()),
        ));
    }
    Ok(ParsedEdgeList {
        graph: Graph::from_edges(n, edges)?,
        duplicate_edges,
    })
}

fn parse_pair(line_no: usize, line: &str, what: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || Error::format(Some(line_no), format!("expected {what}, found `{line}`"));
    if fields.len() != 2 {
        return Err(bad());
    }
    let a = fields[0].parse().map_err(|_| bad())?;
    let b = fields[1].parse().map_err(|_| bad())?;
    Ok([a, b])
}

/// Writes `g` in the edge-list format accepted by [`parse_edge_list`].
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, Family};

    #[test]
    fn graph6_known_strings() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(parse_graph6("A_").unwrap(), k2);
        assert_eq!(encode_graph6(&k2).unwrap(), "A_");
        assert_eq!(parse_graph6("Bw").unwrap(), named_graph(Family::Complete, 3).unwrap());
        assert_eq!(parse_graph6("A?").unwrap(), Graph::edgeless(2).unwrap());
        assert_eq!(encode_graph6(&Graph::edgeless(2).unwrap()).unwrap(), "A?");
        // six set bits fill exactly one payload byte
        assert_eq!(encode_graph6(&named_graph(Family::Complete, 4).unwrap()).unwrap(), "C~");
        // petgraph's documented example: edges a-c, a-e, b-d, d-e on 5 vertices
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_header_and_whitespace() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap().edge_count(), 3);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6("A "), Err(Error::Format { .. })));
        assert!(matches!(parse_graph6("B"), Err(Error::Format { .. })));
        assert!(matches!(parse_graph6("Bww"), Err(Error::Format { .. })));
        assert!(matches!(parse_graph6("?"), Err(Error::Format { .. })));
        // K_2 payload with a padding bit set
        assert!(matches!(parse_graph6("A`"), Err(Error::Format { .. })));
    }

    #[test]
    fn graph6_medium_order() {
        let g = named_graph(Family::Cycle, 70).unwrap();
        let text = encode_graph6(&g).unwrap();
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn graph6_stream_line_numbers() {
        let results: Vec<_> = parse_graph6_lines("A_\n\nBw\nB\n").collect();
        assert_eq!(results.len(), 3);
        assert!(matches!(results[2], Err(Error::Format { line: Some(4), .. })));
    }

    #[test]
    fn edge_list_examples() {
        let k2 = parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(k2.graph, Graph::from_edges(2, [(0, 1)]).unwrap());
        let p4 = parse_edge_list("4 3\n0 1\n1 2\n2 3").unwrap();
        assert_eq!(p4.graph, named_graph(Family::Path, 4).unwrap());
        assert_eq!(p4.duplicate_edges, 0);
        let err = parse_edge_list("3 1\n0 3").unwrap_err();
        assert!(matches!(err, Error::Format { line: Some(2), .. }), "{err}");
    }

    #[test]
    fn edge_list_comments_duplicates_and_errors() {
        let parsed = parse_edge_list("# a triangle\n3 4\n\n0 1\n1 2\n# again\n2 0\n1 0\n").unwrap();
        assert_eq!(parsed.graph, named_graph(Family::Complete, 3).unwrap());
        assert_eq!(parsed.duplicate_edges, 1);

        assert!(matches!(parse_edge_list("3 1\n1 1"), Err(Error::Format { line: Some(2), .. })));
        assert!(matches!(parse_edge_list("3\n"), Err(Error::Format { line: Some(1), .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x"), Err(Error::Format { line: Some(2), .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1"), Err(Error::Format { line: None, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1\n1 2"), Err(Error::Format { line: Some(3), .. })));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn edge_list_encoding_parses_back() {
        let g = named_graph(Family::Star, 6).unwrap();
        assert_eq!(parse_edge_list(&encode_edge_list(&g)).unwrap().graph, g);
    }
}
