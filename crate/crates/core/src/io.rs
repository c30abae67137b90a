//! graph6, edge-list and DOT encodings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable with the one- and four-byte graph6 headers.
pub const GRAPH6_MAX_N: usize = 258_047;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Standard graph6 encoding (no `>>graph6<<` header, no trailing newline).
pub fn to_graph6(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::UnsupportedSize {
            what: "graph6 encoding",
            n,
            max: GRAPH6_MAX_N,
        });
    }
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|c| c as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

pub fn to_graph6_string(g: &Graph) -> Result<String> {
    to_graph6(g).map(|b| String::from_utf8(b).expect("graph6 bytes are printable ASCII"))
}

/// Strict graph6 decoder; byte offsets in errors are 0-based into `bytes`.
pub fn from_graph6(bytes: &[u8]) -> Result<Graph> {
    for (i, &c) in bytes.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(parse_err(i, format!("byte {c} outside the graph6 range 63..=126")));
        }
    }
    let (n, body_start) = match bytes.first() {
        None => return Err(parse_err(0, "empty input")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(parse_err(1, "eight-byte header (n > 258047) is not supported"));
            }
            if bytes.len() < 4 {
                return Err(parse_err(bytes.len(), "truncated four-byte header"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &c| acc << 6 | (c - 63) as usize);
            if n < 63 {
                return Err(parse_err(1, format!("n = {n} must use the one-byte header")));
            }
            (n, 4)
        }
        Some(&c) => ((c - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != need {
        let offset = body_start + body.len().min(need);
        return Err(parse_err(
            offset,
            format!("expected {need} adjacency bytes for n = {n}, found {}", body.len()),
        ));
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = body[need - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(body_start + need - 1, "non-zero padding bits"));
        }
    }
    let mut b = Graph::builder(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

/// One `u v` line per edge, `u < v`, sorted.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses `u v` lines. Blank lines and `#` comments are skipped; the order is
/// one past the largest id mentioned, or `n` when given.
pub fn from_edge_list(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            let mut it = body.split_whitespace();
            let mut next_id = || -> Result<usize> {
                let tok = it.next().ok_or_else(|| parse_err(offset, "expected two vertex ids"))?;
                tok.parse()
                    .map_err(|_| parse_err(offset, format!("bad vertex id {tok:?}")))
            };
            let (u, v) = (next_id()?, next_id()?);
            if it.next().is_some() {
                return Err(parse_err(offset, "trailing tokens after edge"));
            }
            max_id = max_id.max(Some(u.max(v)));
            edges.push((u, v, offset));
        }
        offset += line.len();
    }
    let order = match (n, max_id) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    let mut b = Graph::builder(order);
    for (u, v, at) in edges {
        b.add_edge(u, v).map_err(|e| parse_err(at, e.to_string()))?;
    }
    Ok(b.build())
}

/// Undirected DOT; isolated vertices are listed as bare node statements.
pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph {\n");
    for v in 0..g.n() {
        if g.neighbors(v).next().is_none() {
            let _ = writeln!(s, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

/// Reads the subset of DOT written by [`to_dot`]: numeric node statements and
/// `u -- v` edge statements inside one `graph { }` block.
pub fn from_dot(text: &str) -> Result<Graph> {
    let open = text
        .find('{')
        .ok_or_else(|| parse_err(0, "missing '{'"))?;
    let head = text[..open].trim();
    if !(head == "graph" || head.starts_with("graph ") || head.starts_with("strict graph")) {
        return Err(parse_err(0, "expected an undirected `graph` block"));
    }
    let close = text
        .rfind('}')
        .filter(|&c| c > open)
        .ok_or_else(|| parse_err(text.len(), "missing '}'"))?;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut offset = open + 1;
    for stmt in text[open + 1..close].split_inclusive([';', '\n']) {
        let body = stmt.trim().trim_end_matches(';').trim();
        let at = offset + stmt.len() - stmt.trim_start().len();
        offset += stmt.len();
        if body.is_empty() || body.starts_with("//") {
            continue;
        }
        let id = |tok: &str| -> Result<usize> {
            tok.trim()
                .trim_matches('"')
                .parse()
                .map_err(|_| parse_err(at, format!("bad node id {:?}", tok.trim())))
        };
        if body.contains("->") {
            return Err(parse_err(at, "directed edge in an undirected graph"));
        }
        let parts: Vec<&str> = body.split("--").collect();
        match parts.as_slice() {
            [v] => {
                let v = id(v)?;
                max_id = max_id.max(Some(v));
            }
            [u, v] => {
                let (u, v) = (id(u)?, id(v)?);
                max_id = max_id.max(Some(u.max(v)));
                edges.push((u, v, at));
            }
            _ => return Err(parse_err(at, "edge chains are not supported")),
        }
    }
    let mut b = Graph::builder(max_id.map_or(0, |m| m + 1));
    for (u, v, at) in edges {
        b.add_edge(u, v).map_err(|e| parse_err(at, e.to_string()))?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_is_question_mark() {
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), b"?");
        assert_eq!(from_graph6(b"?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn single_edge() {
        let g = Graph::complete(2);
        assert_eq!(to_graph6(&g).unwrap(), vec![65, 95]);
        assert_eq!(from_graph6(b"A_").unwrap(), g);
    }

    #[test]
    fn known_strings() {
        // Reference strings as printed by nauty's geng/showg.
        assert_eq!(to_graph6_string(&Graph::complete(4)).unwrap(), "C~");
        assert_eq!(to_graph6_string(&Graph::complete(5)).unwrap(), "D~{");
        assert_eq!(to_graph6_string(&Graph::cycle(5).unwrap()).unwrap(), "Dhc");
        let petgraph_case =
            Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6_string(&petgraph_case).unwrap(), "DQc");
    }

    #[test]
    fn long_header() {
        let g = Graph::empty(63);
        let bytes = to_graph6(&g).unwrap();
        assert_eq!(&bytes[..4], &[126, 63, 63, 126]);
        assert_eq!(from_graph6(&bytes).unwrap(), g);
        let big = Graph::complete(100);
        assert_eq!(from_graph6(&to_graph6(&big).unwrap()).unwrap(), big);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(from_graph6(b""), Err(Error::Parse { offset: 0, .. })));
        // K4 needs one body byte; two given.
        assert!(matches!(from_graph6(b"C~~"), Err(Error::Parse { offset: 2, .. })));
        // truncated body
        assert!(matches!(from_graph6(b"D~"), Err(Error::Parse { offset: 2, .. })));
        // n=2 has one data bit; the five padding bits must be zero
        assert!(matches!(from_graph6(b"A`"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(from_graph6(b"A\n"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(from_graph6(b"~?"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(from_graph6(b"~~??????"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete(3).disjoint_union(&Graph::star(2));
        let text = to_edge_list(&g);
        assert_eq!(text, "0 1\n0 2\n1 2\n3 4\n3 5\n");
        assert_eq!(from_edge_list(&text, None).unwrap(), g);
        let padded = from_edge_list("# header\n0 1\n\n", Some(4)).unwrap();
        assert_eq!(padded.n(), 4);
        assert!(matches!(
            from_edge_list("0 1\n1 x\n", None),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(
            from_edge_list("0 1\n1 0\n", None),
            Err(Error::Parse { offset: 4, .. })
        ));
    }

    #[test]
    fn dot_lists_isolated_vertices() {
        let g = Graph::complete(2).disjoint_union(&Graph::empty(1));
        let dot = to_dot(&g);
        assert_eq!(dot, "graph {\n  2;\n  0 -- 1;\n}\n");
        assert_eq!(from_dot(&dot).unwrap(), g);
        assert!(from_dot("digraph { 0 -> 1; }").is_err());
    }
}
