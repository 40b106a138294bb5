//! Graph file formats.
//!
//! The native text format is a header line `n m` followed by `m` lines
//! `u v` with 0-based vertex ids. The graph6 reader accepts the compact
//! printable encoding produced by common enumeration tools, with or
//! without the `>>graph6<<` header.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn to_text(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn from_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let (n, m) = parse_pair(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        edges.push(parse_pair(line, idx + 1)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were listed",
            edges.len()
        )));
    }
    Graph::new(n, &edges)
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse(format!("line {line_no}: expected two integers")))?
            .parse()
            .map_err(|_| Error::Parse(format!("line {line_no}: not a non-negative integer")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse(format!("line {line_no}: trailing tokens")));
    }
    Ok((a, b))
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6: byte outside 63..=126".into()));
    }
    let (n, body) = decode_n(bytes)?;
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed_bytes = needed_bits.div_ceil(6);
    if body.len() != needed_bytes {
        return Err(Error::Parse(format!(
            "graph6: expected {needed_bytes} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| -> bool {
        let byte = body[k / 6] - 63;
        (byte >> (5 - k % 6)) & 1 == 1
    };
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
    Graph::new(n, &edges)
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let short = || Error::Parse("graph6: truncated size field".into());
    let first = *bytes.first().ok_or_else(short)?;
    if first != 126 {
        return Ok(((first - 63) as usize, &bytes[1..]));
    }
    let (width, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let field = bytes.get(start..start + width).ok_or_else(short)?;
    let n = field
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, &bytes[start + width..]))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_format_layout() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_text(&g), "3 2\n0 1\n1 2\n");
        assert_eq!(from_text("3 2\n0 1\n1 2\n").unwrap(), g);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(from_text(""), Err(Error::Parse(_))));
        assert!(matches!(from_text("3 2\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(from_text("2 1\n0 x\n"), Err(Error::Parse(_))));
        assert_eq!(from_text("2 1\n1 1\n"), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn graph6_known_strings() {
        // Standard encodings: K4 is "C~", the path 0-1-2 is "Bg" (edges 01, 12).
        let k4 = from_graph6("C~").unwrap();
        assert_eq!(k4.edge_count(), 6);
        let p3 = from_graph6(">>graph6<<Bg").unwrap();
        assert_eq!(p3.edge_list(), vec![(0, 1), (1, 2)]);
        assert_eq!(to_graph6(&p3), "Bg");
        assert!(from_graph6("C~~").is_err());
    }

    #[test]
    fn graph6_large_n_header() {
        let g = Graph::new(70, &[(0, 69), (5, 6)]).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn formats_round_trip(n in 1usize..20, raw in proptest::collection::vec((0usize..20, 0usize..20), 0..60)) {
            let edges: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(from_text(&to_text(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
