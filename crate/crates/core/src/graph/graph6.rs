//! graph6 encoding (McKay's format): a size header followed by the upper
//! triangle of the adjacency matrix, column by column, six bits per byte
//! offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const OPTIONAL_HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn six_bits(bytes: &[u8], at: usize) -> Result<u64> {
    match bytes.get(at) {
        None => Err(err(at, "unexpected end of input")),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(err(at, format!("byte 0x{b:02x} is not a graph6 character"))),
    }
}

/// Decode the vertex count; returns `(n, header_len)`.
fn parse_size(bytes: &[u8], base: usize) -> Result<(u64, usize)> {
    let first = *bytes.first().ok_or_else(|| err(base, "empty input"))?;
    if first != 126 {
        let v = six_bits(bytes, 0).map_err(|_| err(base, format!("invalid header byte 0x{first:02x}")))?;
        return Ok((v, 1));
    }
    let (start, groups) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    let mut n = 0u64;
    for i in 0..groups {
        let v = six_bits(bytes, start + i).map_err(|e| match e {
            Error::Graph6 { offset, reason } => err(base + offset, reason),
            other => other,
        })?;
        n = (n << 6) | v;
    }
    Ok((n, start + groups))
}

/// Parse one graph6 line. A trailing newline and the optional `>>graph6<<`
/// prefix are accepted; byte offsets in errors refer to the input as given.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(OPTIONAL_HEADER) {
        Some(rest) => (OPTIONAL_HEADER.len(), rest),
        None => (0, trimmed),
    };
    let bytes = body.as_bytes();
    let (n, header) = parse_size(bytes, base)?;
    // the bit vector has n(n-1)/2 bits; reject sizes we could never hold
    let nbits = n
        .checked_mul(n.saturating_sub(1))
        .map(|x| x / 2)
        .ok_or_else(|| err(base, "vertex count too large"))?;
    let nbytes = nbits.div_ceil(6);
    let available = (bytes.len() - header) as u64;
    if available < nbytes {
        // report the first missing byte, or the first bad one before it
        for i in header..bytes.len() {
            six_bits(bytes, i).map_err(|_| err(base + i, format!("byte 0x{:02x} is not a graph6 character", bytes[i])))?;
        }
        return Err(err(
            base + bytes.len(),
            format!("truncated bit vector: need {nbytes} data bytes, found {available}"),
        ));
    }
    let n = n as usize;
    let mut edges = Vec::new();
    let mut bit = 0u64;
    for i in 0..nbytes as usize {
        let at = header + i;
        let v = six_bits(bytes, at).map_err(|_| err(base + at, format!("byte 0x{:02x} is not a graph6 character", bytes[at])))?;
        for k in (0..6).rev() {
            if bit >= nbits {
                break;
            }
            if (v >> k) & 1 == 1 {
                // bit index -> (i, j) with i < j, column-major over j
                edges.push(bit);
            }
            bit += 1;
        }
    }
    if bytes.len() as u64 > header as u64 + nbytes {
        let at = header + nbytes as usize;
        return Err(err(base + at, "trailing data after the bit vector"));
    }
    let mut pairs = Vec::with_capacity(edges.len());
    let mut j = 1u64;
    let mut col_start = 0u64;
    for b in edges {
        while b >= col_start + j {
            col_start += j;
            j += 1;
        }
        pairs.push(((b - col_start) as usize, j as usize));
    }
    Graph::from_edges(n, &pairs)
}

/// Encode a graph in graph6 (no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n() as u64;
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..g.n() {
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}
