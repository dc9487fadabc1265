//! graph6 encoding.
//!
//! The upper triangle is packed column by column (`(0,1), (0,2), (1,2),
//! (0,3), ...`) into 6-bit groups, each stored as a byte offset by 63.

use super::LabeledGraph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn malformed(offset: usize, reason: impl Into<String>) -> Error {
    Error::MalformedEncoding {
        offset,
        reason: reason.into(),
    }
}

fn sixbit(bytes: &[u8], at: usize) -> Result<u8> {
    match bytes.get(at) {
        None => Err(malformed(at, "unexpected end of input")),
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(malformed(at, format!("byte 0x{b:02x} outside the printable range 63..=126"))),
    }
}

fn parse_size(bytes: &[u8]) -> Result<(usize, usize)> {
    match bytes.first() {
        None => Err(malformed(0, "empty input")),
        Some(b'~') if bytes.get(1) == Some(&b'~') => {
            let mut n = 0usize;
            for i in 0..6 {
                n = (n << 6) | sixbit(bytes, 2 + i)? as usize;
            }
            Ok((n, 8))
        }
        Some(b'~') => {
            let mut n = 0usize;
            for i in 0..3 {
                n = (n << 6) | sixbit(bytes, 1 + i)? as usize;
            }
            Ok((n, 4))
        }
        Some(_) => Ok((sixbit(bytes, 0)? as usize, 1)),
    }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing
/// newline are accepted.
pub fn parse_graph6(text: &str) -> Result<LabeledGraph> {
    let body_start = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let body = text[body_start..].trim_end_matches(['\n', '\r']);
    let bytes = body.as_bytes();
    let at = |i: usize| i + body_start;
    let (n, mut pos) = parse_size(bytes).map_err(|e| match e {
        Error::MalformedEncoding { offset, reason } => malformed(at(offset), reason),
        other => other,
    })?;
    let bits = n * n.saturating_sub(1) / 2;
    let groups = bits.div_ceil(6);
    if bytes.len() != pos + groups {
        let offset = at(bytes.len().min(pos + groups));
        return Err(malformed(
            offset,
            format!(
                "expected {} bytes for {n} vertices, found {}",
                pos + groups,
                bytes.len()
            ),
        ));
    }
    let mut g = LabeledGraph::empty(n);
    let mut bit = 0;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                current = sixbit(bytes, pos).map_err(|_| {
                    malformed(at(pos), format!("byte 0x{:02x} outside the printable range 63..=126", bytes[pos]))
                })?;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 {
        let mask = (1u8 << (6 - bit % 6)) - 1;
        if current & mask != 0 {
            return Err(malformed(at(pos - 1), "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Canonical graph6 text (no header, no newline).
pub fn emit_graph6(g: &LabeledGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(b'~');
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(b"~~");
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut current = 0u8;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                current |= 1 << (5 - bit % 6);
            }
            bit += 1;
            if bit % 6 == 0 {
                out.push(current + 63);
                current = 0;
            }
        }
    }
    if bit % 6 != 0 {
        out.push(current + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_star() {
        // D?{ : bits 000000 111100 -> edges (0,4),(1,4),(2,4),(3,4)
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(emit_graph6(&g), "D?{");
    }

    #[test]
    fn header_and_newline() {
        let g = parse_graph6(">>graph6<<A_\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn petersen_known_string() {
        let g = crate::graph::families::petersen();
        let s = emit_graph6(&g);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_graph6(""), Err(Error::MalformedEncoding { offset: 0, .. })));
        assert!(matches!(parse_graph6("D?"), Err(Error::MalformedEncoding { offset: 2, .. })));
        assert!(matches!(parse_graph6("D?{?"), Err(Error::MalformedEncoding { offset: 3, .. })));
        assert!(matches!(parse_graph6("D? "), Err(Error::MalformedEncoding { offset: 2, .. })));
        // A with padding bit set: "A" then 0b000001 + 63
        assert!(matches!(parse_graph6("A@"), Err(Error::MalformedEncoding { offset: 1, .. })));
        assert!(matches!(parse_graph6("~?"), Err(Error::MalformedEncoding { offset: 2, .. })));
    }

    #[test]
    fn large_size_prefix() {
        let g = LabeledGraph::from_edges(63, &[(0, 62), (5, 7)]).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
