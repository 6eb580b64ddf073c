//! graph6 encoding (one simple graph per line).
//!
//! Supports the 1-byte size header (`n <= 62`) and the 4-byte `~` header up to
//! [`MAX_GRAPH6_VERTICES`]. Decoding is strict: bytes outside `63..=126`,
//! wrong body length and non-zero padding bits are all errors carrying the
//! byte offset at which the problem was detected.

use thiserror::Error;

use super::{Graph, GraphError};

pub const MAX_GRAPH6_VERTICES: usize = 4096;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 parse error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} is outside the printable graph6 range")]
    BadByte(u8),
    #[error("truncated size header")]
    TruncatedHeader,
    #[error("8-byte size headers are not supported")]
    UnsupportedSize,
    #[error("graph with {0} vertices exceeds the supported size")]
    TooManyVertices(usize),
    #[error("body has {actual} bytes, expected {expected}")]
    BodyLength { expected: usize, actual: usize },
    #[error("non-zero padding bits")]
    Padding,
}

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

/// Decode a single graph6 line. A trailing `\n` / `\r\n` and the optional
/// `>>graph6<<` header are accepted.
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    decode_graph6_bytes(text.as_bytes())
}

pub fn decode_graph6_bytes(data: &[u8]) -> Result<Graph, Graph6Error> {
    let mut start = 0;
    if data.starts_with(HEADER.as_bytes()) {
        start = HEADER.len();
    }
    let mut end = data.len();
    while end > start && (data[end - 1] == b'\n' || data[end - 1] == b'\r') {
        end -= 1;
    }
    let bytes = &data[start..end];
    if bytes.is_empty() {
        return Err(err(start, Graph6ErrorKind::Empty));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(start + i, Graph6ErrorKind::BadByte(b)));
        }
    }
    let (n, header_len) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err(start + bytes.len(), Graph6ErrorKind::TruncatedHeader));
        }
        if bytes[1] == 126 {
            return Err(err(start + 1, Graph6ErrorKind::UnsupportedSize));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_GRAPH6_VERTICES {
        return Err(err(start, Graph6ErrorKind::TooManyVertices(n)));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != expected {
        return Err(err(
            start + header_len + body.len().min(expected),
            Graph6ErrorKind::BodyLength {
                expected,
                actual: body.len(),
            },
        ));
    }
    let pad = expected * 6 - nbits;
    if pad > 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(start + header_len + expected - 1, Graph6ErrorKind::Padding));
        }
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(u, v).expect("valid");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encode a simple graph.
pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    g.require_simple()?;
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(GraphError::TooLarge {
            what: "vertex count",
            actual: n,
            cap: MAX_GRAPH6_VERTICES,
        });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let masks: Vec<Vec<bool>> = {
        let mut m = vec![vec![false; n]; n];
        for e in g.edges() {
            m[e.u][e.v] = true;
            m[e.v][e.u] = true;
        }
        m
    };
    let mut acc = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(masks[u][v]);
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}
