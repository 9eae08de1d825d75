//! Bit-exact serialization of colorings and witnesses.
//!
//! Text format: a UTF-8 JSON object `{"k":3,"n_vertices":N,"red_edges":[[a,b,c],...]}`
//! with each triple ascending and the list sorted by colex rank; triples not
//! listed are blue.
//!
//! Bitmap format: ASCII header `LRK1 <N>:` followed by ceil(C(N,3)/4)
//! uppercase hex characters; bit `r mod 4` of character `r / 4` is 1 iff the
//! edge of colex rank `r` is red.

use crate::coloring::{binomial, rank, unrank, Color, TwoColoring};
use crate::extractor::Witness;
use crate::hypergraph::{Edge, LoosePath};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("malformed input at byte {offset}: {reason}")]
    Malformed { offset: usize, reason: String },
    #[error("unsupported value: {0}")]
    Unsupported(String),
}

fn malformed(offset: usize, reason: impl Into<String>) -> CodecError {
    CodecError::Malformed { offset, reason: reason.into() }
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    k: usize,
    n_vertices: usize,
    red_edges: Vec<[usize; 3]>,
}

/// Byte offset of a 1-based (line, column) position in `text`.
fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let mut remaining = line.saturating_sub(1);
    let mut offset = 0;
    for (i, ch) in text.char_indices() {
        if remaining == 0 {
            return i + column.saturating_sub(1);
        }
        if ch == '\n' {
            remaining -= 1;
            offset = i + 1;
        }
    }
    offset + column.saturating_sub(1)
}

pub fn encode_json(c: &TwoColoring) -> String {
    let doc = ColoringDoc {
        k: 3,
        n_vertices: c.n_vertices(),
        red_edges: c.red_edges().iter().map(|e| e.vertices()).collect(),
    };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

pub fn decode_json(text: &str) -> Result<TwoColoring, CodecError> {
    let doc: ColoringDoc = serde_json::from_str(text)
        .map_err(|e| malformed(offset_of(text, e.line(), e.column()), e.to_string()))?;
    if doc.k != 3 {
        return Err(CodecError::Unsupported(format!("k={} (only k=3 colorings)", doc.k)));
    }
    let mut c = TwoColoring::monochromatic(doc.n_vertices, Color::Blue)
        .map_err(|e| malformed(0, e.to_string()))?;
    let mut prev_rank = None;
    for (i, t) in doc.red_edges.iter().enumerate() {
        if !(t[0] < t[1] && t[1] < t[2]) {
            return Err(malformed(0, format!("red_edges[{i}] = {t:?} is not strictly ascending")));
        }
        if t[2] >= doc.n_vertices {
            return Err(malformed(0, format!("red_edges[{i}] = {t:?} exceeds vertex range")));
        }
        let e = Edge::new(t[0], t[1], t[2]).expect("ascending triple");
        let r = rank(e);
        if let Some(p) = prev_rank {
            if r <= p {
                return Err(malformed(
                    0,
                    format!("red_edges[{i}] = {t:?} out of colex order (rank {r} after {p})"),
                ));
            }
        }
        prev_rank = Some(r);
        c.set_color(e, Color::Red);
    }
    Ok(c)
}

pub fn encode_bits(c: &TwoColoring) -> String {
    let edges = c.edge_count();
    let mut nibbles = vec![0u8; edges.div_ceil(4)];
    for e in c.red_edges() {
        let r = rank(e);
        nibbles[r / 4] |= 1 << (r % 4);
    }
    let mut out = format!("LRK1 {}:", c.n_vertices());
    for nib in nibbles {
        out.push(char::from_digit(nib as u32, 16).unwrap().to_ascii_uppercase());
    }
    out
}

pub fn decode_bits(text: &str) -> Result<TwoColoring, CodecError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let rest = text
        .strip_prefix("LRK1 ")
        .ok_or_else(|| malformed(0, "missing 'LRK1 ' header"))?;
    let colon = rest
        .find(':')
        .ok_or_else(|| malformed(5, "missing ':' after vertex count"))?;
    let n: usize = rest[..colon]
        .parse()
        .map_err(|e| malformed(5, format!("bad vertex count: {e}")))?;
    let body = &rest[colon + 1..];
    let body_start = 5 + colon + 1;
    let edges = binomial(n, 3);
    let want = edges.div_ceil(4);
    if body.len() != want {
        return Err(malformed(
            body_start + body.len().min(want),
            format!("expected {want} hex characters for {edges} edges, found {}", body.len()),
        ));
    }
    let mut c = TwoColoring::monochromatic(n, Color::Blue)
        .map_err(|e| malformed(0, e.to_string()))?;
    for (i, ch) in body.chars().enumerate() {
        let nib = ch
            .to_digit(16)
            .ok_or_else(|| malformed(body_start + i, format!("invalid hex character {ch:?}")))?;
        if ch.is_ascii_lowercase() {
            return Err(malformed(body_start + i, "hex characters must be uppercase"));
        }
        for bit in 0..4 {
            let r = 4 * i + bit;
            if r >= edges {
                if nib >> bit & 1 == 1 {
                    return Err(malformed(body_start + i, "nonzero padding bits"));
                }
                continue;
            }
            if nib >> bit & 1 == 1 {
                c.set_color(unrank(r, n).unwrap(), Color::Red);
            }
        }
    }
    Ok(c)
}

/// On-disk coloring formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Bits,
}

pub fn encode(c: &TwoColoring, format: Format) -> String {
    match format {
        Format::Json => encode_json(c),
        Format::Bits => encode_bits(c),
    }
}

/// Decodes either format, sniffing the bitmap header.
pub fn decode(text: &str) -> Result<TwoColoring, CodecError> {
    if text.starts_with("LRK1") {
        decode_bits(text)
    } else {
        decode_json(text)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    color: Color,
    vertices: Vec<usize>,
}

pub fn encode_witness(w: &Witness) -> String {
    let doc = WitnessDoc { color: w.color, vertices: w.path.vertices().to_vec() };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

pub fn decode_witness(text: &str) -> Result<Witness, CodecError> {
    let doc: WitnessDoc = serde_json::from_str(text)
        .map_err(|e| malformed(offset_of(text, e.line(), e.column()), e.to_string()))?;
    let path = LoosePath::new(doc.vertices).map_err(|e| malformed(0, e.to_string()))?;
    Ok(Witness { color: doc.color, path })
}
