//! Header-free graph6 encoding.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn graph6_decode(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::ParseError("empty string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::ParseError(format!("byte {b} outside the graph6 range")));
    }
    let (n, body) = if bytes[0] == b'~' {
        if bytes.len() < 4 || bytes[1] == b'~' {
            return Err(Error::ParseError("truncated or unsupported size header".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > MAX_VERTICES {
        return Err(Error::CapacityExceeded(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::ParseError(format!("expected {expected} data bytes for n = {n}, found {}", body.len())));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Error::ParseError("nonzero padding bits".into()));
        }
    }
    Ok(g)
}
