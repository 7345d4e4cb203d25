//! Graph codecs: a plain edge list, graph6, and write-only DOT.

use std::fmt::{self, Write as _};
use std::path::Path;

use clap::ValueEnum;
use qsym_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Header `n m`, then one `u v` line per edge, 0-based.
    Edges,
    Graph6,
    /// Graphviz, write-only.
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Edges => "edges",
            Format::Graph6 => "graph6",
            Format::Dot => "dot",
        }
    }

    /// `.g6` and `.graph6` files are graph6; anything else is an edge list.
    pub fn detect(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => Format::Graph6,
            _ => Format::Edges,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{format}{}: {message}", location(*line, *byte))]
pub struct ParseError {
    pub format: &'static str,
    /// 1-based line of the edge list.
    pub line: Option<usize>,
    /// 0-based byte offset into a graph6 string.
    pub byte: Option<usize>,
    pub message: String,
}

fn location(line: Option<usize>, byte: Option<usize>) -> String {
    match (line, byte) {
        (Some(l), _) => format!(" line {l}"),
        (None, Some(b)) => format!(" byte {b}"),
        (None, None) => String::new(),
    }
}

impl ParseError {
    fn edges(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            format: "edges",
            line: Some(line),
            byte: None,
            message: message.into(),
        }
    }

    fn graph6(byte: usize, message: impl Into<String>) -> Self {
        ParseError {
            format: "graph6",
            line: None,
            byte: Some(byte),
            message: message.into(),
        }
    }
}

pub fn parse_graph(format: Format, text: &str) -> Result<Graph, ParseError> {
    match format {
        Format::Edges => parse_edges(text),
        Format::Graph6 => parse_graph6(text),
        Format::Dot => Err(ParseError {
            format: "dot",
            line: None,
            byte: None,
            message: "DOT is an export format and cannot be read".into(),
        }),
    }
}

pub fn write_graph(format: Format, g: &Graph) -> String {
    match format {
        Format::Edges => write_edges(g),
        Format::Graph6 => {
            let mut s = write_graph6(g);
            s.push('\n');
            s
        }
        Format::Dot => write_dot(g),
    }
}

/// Edge list given on one line with `;` separating the header and edges,
/// e.g. `4;0 1;1 2;2 3;3 0`.
pub fn parse_inline_edges(s: &str) -> Result<Graph, ParseError> {
    parse_edges(&s.replace(';', "\n"))
}

/// Reads an edge list. Blank lines and `#` comments are skipped; the edge
/// count in the header is optional but checked when present.
pub fn parse_edges(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| ParseError::edges(1, "missing header line"))?;
    let fields = numbers(header_line, header)?;
    let (n, m) = match fields[..] {
        [n] => (n, None),
        [n, m] => (n, Some(m)),
        _ => return Err(ParseError::edges(header_line, "header must be `n` or `n m`")),
    };
    if n > MAX_VERTICES {
        return Err(ParseError::edges(header_line, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let mut edges = Vec::new();
    for (line, l) in lines {
        let (u, v) = match numbers(line, l)?[..] {
            [u, v] => (u, v),
            _ => return Err(ParseError::edges(line, "expected two vertex indices")),
        };
        if u == v {
            return Err(ParseError::edges(line, format!("loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(ParseError::edges(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        edges.push((u, v));
    }
    if let Some(m) = m {
        if m != edges.len() {
            return Err(ParseError::edges(
                header_line,
                format!("header announces {m} edges but {} follow", edges.len()),
            ));
        }
    }
    Graph::new(n, edges).map_err(|e| ParseError::edges(header_line, e.to_string()))
}

fn numbers(line: usize, l: &str) -> Result<Vec<usize>, ParseError> {
    l.split_whitespace()
        .map(|t| t.parse().map_err(|_| ParseError::edges(line, format!("`{t}` is not a vertex index"))))
        .collect()
}

pub fn write_edges(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

const G6_HEADER: &str = ">>graph6<<";

/// Largest order accepted by the readers.
pub const MAX_VERTICES: usize = 1 << 16;

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let body = text.trim_end_matches(['\n', '\r']);
    let (offset, body) = match body.strip_prefix(G6_HEADER) {
        Some(rest) => (G6_HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::graph6(offset + i, format!("byte {b} outside 63..=126")));
        }
    }
    let (n, start) = decode_order(bytes).map_err(|(i, m)| ParseError::graph6(offset + i, m))?;
    if n > MAX_VERTICES {
        return Err(ParseError::graph6(offset, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != needed {
        return Err(ParseError::graph6(
            offset + start,
            format!("expected {needed} data bytes for n = {n}, found {}", data.len()),
        ));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (k..needed * 6).any(bit) {
        return Err(ParseError::graph6(offset + start + needed - 1, "padding bits are not zero"));
    }
    Graph::new(n, edges).map_err(|e| ParseError::graph6(offset, e.to_string()))
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), (usize, String)> {
    let value = |range: std::ops::Range<usize>| {
        bytes
            .get(range.clone())
            .map(|b| b.iter().fold(0usize, |acc, &x| acc << 6 | (x - 63) as usize))
            .ok_or((range.start, "truncated size prefix".to_string()))
    };
    match bytes {
        [] => Err((0, "empty input".into())),
        [126, 126, ..] => Ok((value(2..8)?, 8)),
        [126, ..] => Ok((value(1..4)?, 4)),
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push6 = |out: &mut Vec<u8>, v: usize, groups: u32| {
        for k in (0..groups).rev() {
            out.push((v >> (6 * k) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push6(&mut out, n, 6);
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn write_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match g.labels() {
            Some(labels) => {
                let _ = writeln!(s, "  {v} [label=\"{}\"];", labels[v].replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_edge_list() {
        assert_eq!(write_edges(&Graph::cycle(4)), "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_inline_edges("4;0 1;1 2;2 3;3 0").unwrap(), Graph::cycle(4));
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        let e = parse_edges("3 1\n0 1\n\n1 x\n").unwrap_err();
        assert_eq!(e.line, Some(4));
        assert_eq!(parse_edges("3 2\n0 1\n").unwrap_err().line, Some(1));
        assert!(parse_edges("2\n0 0\n").is_err());
        assert!(parse_edges("2\n0 2\n").is_err());
        assert!(parse_edges("").is_err());
        assert_eq!(parse_edges("# comment\n2 1\n0 1 # edge\n").unwrap(), Graph::complete(2));
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(write_graph6(&Graph::edgeless(0)), "?");
        assert_eq!(write_graph6(&Graph::complete(1)), "@");
        assert_eq!(write_graph6(&Graph::complete(2)), "A_");
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc\n").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn graph6_large_prefix() {
        let g = Graph::path(99);
        let s = write_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(parse_graph6("").is_err());
        assert_eq!(parse_graph6("D Qc").unwrap_err().byte, Some(1));
        assert!(parse_graph6("DQ").is_err());
        assert!(parse_graph6("A`").is_err());
    }

    #[test]
    fn dot_is_write_only() {
        let s = write_dot(&Graph::complete(2));
        assert_eq!(s, "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
        assert!(parse_graph(Format::Dot, &s).is_err());
    }
}
