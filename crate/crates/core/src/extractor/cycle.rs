//! Converts a red loose cycle into a usable witness: probing a ladder of
//! substitute edges through the free vertices either opens the cycle into a
//! red path of the same length or assembles a blue path from the substitutes.

use super::trace::ExtractionTrace;
use super::{ExtractError, Witness};
use crate::coloring::{Color, TwoColoring};
use crate::hypergraph::{Edge, LooseCycle, LoosePath};
use serde_json::json;

/// Substitute edge `i`: the cycle edge `e_i` with one of its connectors
/// swapped for a free vertex. Even-indexed edges drop their trailing
/// connector, odd-indexed (and edge 0) their leading one.
fn substitute(cyc: &LooseCycle, free: &[usize], i: usize) -> (Edge, usize) {
    let cv = cyc.vertices();
    let len = cv.len();
    if i == 0 {
        let x = free[0];
        (Edge::new(cv[1], cv[2], x).unwrap(), x)
    } else if i % 2 == 1 {
        let x = free[(i - 1) / 2];
        (Edge::new(cv[2 * i + 1], cv[(2 * i + 2) % len], x).unwrap(), x)
    } else {
        let x = free[i / 2];
        (Edge::new(cv[2 * i], cv[2 * i + 1], x).unwrap(), x)
    }
}

/// Given a red cycle of length `n_cyc >= m` and at least `floor((m+1)/2)`
/// free vertices, returns a red loose path of length `n_cyc` or a blue loose
/// path of length `m`.
pub fn cycle_to_path(
    c: &TwoColoring,
    cyc: &LooseCycle,
    free: &[usize],
    m: usize,
    trace: &mut ExtractionTrace,
) -> Result<Witness, ExtractError> {
    let n_cyc = cyc.len();
    if m < 1 || m > n_cyc {
        return Err(ExtractError::Precondition(format!(
            "target blue length {m} must be in 1..={n_cyc}"
        )));
    }
    if free.len() < m.div_ceil(2) {
        return Err(ExtractError::Precondition(format!(
            "need {} free vertices, got {}",
            m.div_ceil(2),
            free.len()
        )));
    }
    {
        let mut distinct = free.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != free.len() || free.iter().any(|&v| cyc.contains(v)) {
            return Err(ExtractError::Precondition(
                "free vertices must be distinct and disjoint from the cycle".into(),
            ));
        }
    }
    for e in cyc.edges() {
        if c.color(e) != Color::Red {
            return Err(ExtractError::Precondition(format!("cycle edge {e:?} is not red")));
        }
    }

    let cv = cyc.vertices();
    let len = cv.len();
    let mut first_red = None;
    for i in 0..m {
        let (e, x) = substitute(cyc, free, i);
        if c.color(e) == Color::Red {
            first_red = Some((i, x));
            break;
        }
    }

    let witness = match first_red {
        Some((i, x)) => {
            // Opening the cycle at the connector the substitute replaced:
            // walk all cycle vertices from that point, with x at the cut.
            let mut seq = Vec::with_capacity(len + 1);
            if i == 0 || i % 2 == 1 {
                seq.push(x);
                let from = if i == 0 { 1 } else { 2 * i + 1 };
                seq.extend((0..len).map(|d| cv[(from + d) % len]));
            } else {
                let from = 2 * i + 2;
                seq.extend((0..len).map(|d| cv[(from + d) % len]));
                seq.push(x);
            }
            Witness { color: Color::Red, path: LoosePath::new(seq)? }
        }
        None => {
            // Every substitute is blue; they chain into a blue path,
            // alternating connectors between free and cycle vertices.
            let mut seq = vec![cv[1], cv[2], free[0]];
            for i in 1..m {
                if i % 2 == 1 {
                    seq.push(cv[2 * i + 1]);
                    seq.push(cv[(2 * i + 2) % len]);
                } else {
                    seq.push(cv[2 * i + 1]);
                    seq.push(free[i / 2]);
                }
            }
            Witness { color: Color::Blue, path: LoosePath::new(seq)? }
        }
    };

    let want = match witness.color {
        Color::Red => n_cyc,
        Color::Blue => m,
    };
    if witness.path.len() != want
        || witness.path.edges().iter().any(|&e| c.color(e) != witness.color)
    {
        return Err(ExtractError::Internal(format!(
            "cycle conversion produced an invalid {} path",
            witness.color
        )));
    }
    trace.push(
        "NoCn",
        json!({"cycle_len": n_cyc, "m": m}),
        "goal",
        json!({"first_red": first_red.map(|(i, _)| i)}),
    );
    Ok(witness)
}
