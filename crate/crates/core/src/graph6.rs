//! graph6 encoding.
//!
//! Layout: a size prefix (one byte `n + 63` for `n <= 62`, otherwise `126`
//! followed by three bytes holding 18 bits of `n`), then the upper triangle
//! of the adjacency matrix in column-major order (`x(0,1) x(0,2) x(1,2)
//! x(0,3) ..`), six bits per byte, most significant first, each byte offset
//! by 63. Unused bits in the final byte are zero.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const OFFSET: u8 = 63;
const LONG_SIZE_MARKER: u8 = 126;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

/// Encodes `g` as graph6 bytes (printable ASCII 63..=126).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let bit_count = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(4 + bit_count.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_SIZE_MARKER);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    out
}

/// Encodes `g` as a graph6 string.
pub fn encode_string(g: &Graph) -> String {
    // every byte is printable ASCII
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

/// Decodes one graph6 record. The input must be exactly one record with no
/// surrounding whitespace or `>>graph6<<` header.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    if let Some(&b) = bytes.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(malformed(format!(
            "byte {b} outside the printable range 63..=126"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(malformed("empty input")),
        [LONG_SIZE_MARKER, LONG_SIZE_MARKER, ..] => {
            return Err(malformed("eight-byte size form exceeds the order cap"))
        }
        [LONG_SIZE_MARKER, a, b, c, rest @ ..] => {
            let n = ((a - OFFSET) as usize) << 12
                | ((b - OFFSET) as usize) << 6
                | (c - OFFSET) as usize;
            if n <= 62 {
                return Err(malformed(format!(
                    "non-minimal size encoding for order {n}"
                )));
            }
            (n, rest)
        }
        [LONG_SIZE_MARKER, ..] => return Err(malformed("truncated size prefix")),
        [first, rest @ ..] => ((first - OFFSET) as usize, rest),
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let padding = expected * 6 - bit_count;
    if padding > 0 {
        let last = body[expected - 1] - OFFSET;
        if last & ((1u8 << padding) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Decodes a graph6 string, ignoring surrounding whitespace.
pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.trim().as_bytes())
}
