//! graph6 encoding for graphs on at most 62 vertices.
//!
//! Only the single-byte order prefix is supported. The body packs the upper
//! triangle column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) into
//! 6-bit groups, each offset by 63, with the final group zero-padded.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order expressible with a one-byte prefix.
pub const MAX_GRAPH6_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: 0x{byte:02x} is not a graph6 character")]
    NonPrintable { offset: usize, byte: u8 },
    #[error(
        "byte 0: order prefix 0x{byte:02x} is not a short-form length (orders above {MAX_GRAPH6_ORDER} unsupported)"
    )]
    BadLength { byte: u8 },
    #[error("expected {expected} bytes for order {n}, found {found}")]
    WrongSize { n: usize, expected: usize, found: usize },
    #[error("byte {offset}: padding bits in final group are not zero")]
    TrailingBits { offset: usize },
    #[error("order {0} cannot be written in short-form graph6")]
    OrderTooLarge(usize),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&first, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::NonPrintable { offset, byte });
        }
    }
    if first > 63 + MAX_GRAPH6_ORDER as u8 {
        return Err(Graph6Error::BadLength { byte: first });
    }
    let n = (first - 63) as usize;
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::WrongSize {
            n,
            expected: expected + 1,
            found: bytes.len(),
        });
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let (mut i, mut j) = (0usize, 1usize);
    for (idx, &byte) in body.iter().enumerate() {
        let chunk = byte - 63;
        for bit in 0..6 {
            let pos = idx * 6 + bit;
            let set = chunk >> (5 - bit) & 1 == 1;
            if pos >= pairs {
                if set {
                    return Err(Graph6Error::TrailingBits { offset: idx + 1 });
                }
                continue;
            }
            if set {
                g.add_edge(i, j);
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(g)
}

pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(63 + n as u8);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (chunk << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses one graph per non-blank line. Errors carry the 1-based line number.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(String, Graph), (usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err((i + 1, e.to_string()))),
        Ok(l) => {
            let l = l.trim().to_string();
            if l.is_empty() {
                return None;
            }
            Some(parse_graph6(&l).map(|g| (l, g)).map_err(|e| (i + 1, e.to_string())))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference strings produced by networkx `to_graph6_bytes`.
    const REFERENCE: &[(&str, &str)] = &[
        ("K2", "A_"),
        ("K3", "Bw"),
        ("K1,6", "FsaC?"),
        ("P5", "DhC"),
        ("C5", "Dhc"),
        ("Petersen", "IheA@GUAo"),
        ("K1", "@"),
        ("K0", "?"),
    ];

    fn reference_graph(name: &str) -> Graph {
        match name {
            "K2" => Graph::complete(2),
            "K3" => Graph::complete(3),
            "K1,6" => Graph::complete(1).join(&Graph::empty(6)),
            "P5" => Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap(),
            "C5" => Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap(),
            "Petersen" => {
                let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
                e.extend((0..5).map(|i| (i, i + 5)));
                e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
                Graph::from_edges(10, e).unwrap()
            }
            "K1" => Graph::complete(1),
            "K0" => Graph::empty(0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn matches_reference_encoder() {
        for &(name, code) in REFERENCE {
            let g = reference_graph(name);
            assert_eq!(emit_graph6(&g).unwrap(), code, "{name}");
            assert_eq!(parse_graph6(code).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn order_62_extremes() {
        let k = Graph::complete(62);
        let s = emit_graph6(&k).unwrap();
        assert_eq!(s.len(), 317);
        assert!(s.starts_with("}~~~~") && s.ends_with("~~_"));
        assert_eq!(parse_graph6(&s).unwrap(), k);
        assert!(emit_graph6(&Graph::empty(63)).is_err());
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("~??"), Err(Graph6Error::BadLength { byte: b'~' }));
        assert_eq!(
            parse_graph6("B w"),
            Err(Graph6Error::NonPrintable { offset: 1, byte: b' ' })
        );
        assert!(matches!(parse_graph6("Bww"), Err(Graph6Error::WrongSize { n: 3, .. })));
        assert!(matches!(parse_graph6("B"), Err(Graph6Error::WrongSize { .. })));
        // K3 uses 3 of 6 bits; setting a padding bit must be rejected.
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::TrailingBits { offset: 1 }));
    }

    #[test]
    fn line_reader_skips_blanks_and_reports_lines() {
        let input = "A_\n\nBw\nB!\n";
        let got: Vec<_> = read_graph6_lines(input.as_bytes()).collect();
        assert_eq!(got.len(), 3);
        assert_eq!(got[1].as_ref().unwrap().1, Graph::complete(3));
        assert_eq!(got[2].as_ref().unwrap_err().0, 4);
    }
}
