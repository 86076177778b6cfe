//! graph6 encoding (printable bytes 63..=126), restricted to `n <= 64`.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed six bits per byte, most significant bit first, zero-padded.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

const OPTIONAL_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed size header at byte {pos}: {reason}")]
    MalformedHeader { pos: usize, reason: &'static str },
    #[error("graph6 input has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(u64),
    #[error("byte {byte:#04x} at position {pos} is outside the graph6 range 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("truncated edge data: expected {expected} bytes after the header, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data starting at byte {pos}")]
    TrailingData { pos: usize },
    #[error("non-zero padding bits in final byte at position {pos}")]
    NonZeroPadding { pos: usize },
}

fn sextet(bytes: &[u8], pos: usize) -> Result<u64, Graph6Error> {
    match bytes.get(pos) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(Graph6Error::InvalidByte { pos, byte: b }),
        None => Err(Graph6Error::MalformedHeader {
            pos,
            reason: "header ends early",
        }),
    }
}

/// Parses the size header; returns `(n, header_len)`.
fn decode_header(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let first = sextet(bytes, 0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if bytes.get(1) == Some(&126) {
        let mut n = 0u64;
        for pos in 2..8 {
            n = n << 6 | sextet(bytes, pos)?;
        }
        if n < 258_048 {
            return Err(Graph6Error::MalformedHeader {
                pos: 0,
                reason: "8-byte form used for a small order",
            });
        }
        return Ok((n, 8));
    }
    let mut n = 0u64;
    for pos in 1..4 {
        n = n << 6 | sextet(bytes, pos)?;
    }
    if n < 63 {
        return Err(Graph6Error::MalformedHeader {
            pos: 0,
            reason: "4-byte form used for an order below 63",
        });
    }
    Ok((n, 4))
}

/// Decodes one graph6 string. Surrounding ASCII whitespace and the optional
/// `>>graph6<<` prefix are ignored.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_matches(|c: char| c.is_ascii_whitespace());
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header) = decode_header(bytes)?;
    if n == 0 {
        return Err(Graph6Error::MalformedHeader {
            pos: 0,
            reason: "graph must have at least one vertex",
        });
    }
    if n > MAX_VERTICES as u64 {
        return Err(Graph6Error::TooLarge(n));
    }
    let n = n as usize;
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < nbytes {
        return Err(Graph6Error::Truncated {
            expected: nbytes,
            found: body.len(),
        });
    }
    if body.len() > nbytes {
        return Err(Graph6Error::TrailingData { pos: header + nbytes });
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let pos = header + k / 6;
            let word = sextet(bytes, pos)?;
            if word >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let pos = header + nbytes - 1;
        let word = sextet(bytes, pos)?;
        if word & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding { pos });
        }
    }
    Ok(g)
}

/// Encodes `g` as graph6 (no header prefix, no newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(decode("C~").unwrap(), Graph::complete(4));
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3));
        let single = decode("@").unwrap();
        assert_eq!((single.order(), single.size()), (1, 0));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&Graph::complete(3)), "Bw");
        assert_eq!(encode(&Graph::complete(4)), "C~");
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn long_header_round_trip() {
        for n in [62, 63, 64] {
            let g = Graph::path(n);
            let s = encode(&g);
            assert_eq!(s.starts_with('~'), n >= 63);
            assert_eq!(decode(&s).unwrap(), g);
        }
    }

    #[test]
    fn optional_prefix_and_whitespace() {
        assert_eq!(decode(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("??"), Err(Graph6Error::MalformedHeader { .. })));
        assert_eq!(decode("C"), Err(Graph6Error::Truncated { expected: 1, found: 0 }));
        assert_eq!(decode("C~~"), Err(Graph6Error::TrailingData { pos: 2 }));
        assert_eq!(decode("C\x7f"), Err(Graph6Error::InvalidByte { pos: 1, byte: 0x7f }));
        assert_eq!(decode("Bx"), Err(Graph6Error::NonZeroPadding { pos: 1 }));
        // 65 vertices via the 4-byte header
        assert_eq!(decode("~?@@"), Err(Graph6Error::TooLarge(65)));
        assert!(matches!(decode("~??@"), Err(Graph6Error::MalformedHeader { .. })));
    }
}
