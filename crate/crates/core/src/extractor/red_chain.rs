//! From a blue path one edge short of the blue target, builds a red path one
//! edge short of the red target, or escapes with a blue path that meets the
//! blue target outright.
//!
//! Works segment by segment: connectors from [`find_connector`] over runs of
//! four host edges are chained end-to-end through shared free vertices, the
//! schedule advancing 4 edges after a five-edge connector and 3 after a
//! four-edge one. The leftover `r <= 3` host edges at the tail are closed out
//! with direct end extensions and, for r in {2,3}, an opposite-color gadget
//! from [`find_omega`] over the two host edges before the last.

use super::connector::{find_connector, ConnectorKind, ConnectorOutcome, ConnectorRequest};
use super::omega::{find_omega, OmegaOutcome};
use super::trace::ExtractionTrace;
use super::{ExtractError, GoalEscape};
use crate::coloring::{Color, TwoColoring};
use crate::hypergraph::{LoosePath, VertexWindow};
use serde_json::json;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub enum RedChainOutcome {
    /// A red path of at least `n - 1` edges.
    Red(LoosePath),
    /// A blue path of at least `m` edges.
    Goal(GoalEscape),
}

struct Finish<'a> {
    c: &'a TwoColoring,
    host: &'a LoosePath,
}

impl Finish<'_> {
    /// Blue host with its last edge re-entered through the interior vertex,
    /// then extended by `[a, b]`.
    fn tail_escape(&self, a: usize, b: usize) -> Result<RedChainOutcome, ExtractError> {
        let hv = self.host.vertices();
        let mut seq = hv[..hv.len() - 2].to_vec();
        seq.extend([hv[hv.len() - 1], hv[hv.len() - 2], a, b]);
        self.blue_goal(seq)
    }

    /// Blue host extended past its last vertex by `[a, b]`.
    fn end_escape(&self, a: usize, b: usize) -> Result<RedChainOutcome, ExtractError> {
        let mut seq = self.host.vertices().to_vec();
        seq.extend([a, b]);
        self.blue_goal(seq)
    }

    fn blue_goal(&self, seq: Vec<usize>) -> Result<RedChainOutcome, ExtractError> {
        let path = LoosePath::new(seq)?;
        let ok = path.len() == self.host.len() + 1
            && path.edges().iter().all(|&e| self.c.color(e) == Color::Blue);
        if !ok {
            return Err(ExtractError::Internal("malformed blue finish escape".into()));
        }
        Ok(RedChainOutcome::Goal(GoalEscape { color: Color::Blue, path }))
    }
}

/// Builds a red path of length >= n-1 from a blue path of length m-1, or a
/// blue goal escape. Requires n = floor(5m/4), m >= 5, and a coloring on
/// exactly 2n + floor((m+1)/2) vertices.
pub fn red_from_max_blue(
    c: &TwoColoring,
    host: &LoosePath,
    n: usize,
    m: usize,
    trace: &mut ExtractionTrace,
) -> Result<RedChainOutcome, ExtractError> {
    if m < 5 || n != (5 * m) / 4 {
        return Err(ExtractError::Precondition(format!(
            "need m >= 5 and n = floor(5m/4), got n={n} m={m}"
        )));
    }
    let total = 2 * n + m.div_ceil(2);
    if c.n_vertices() != total {
        return Err(ExtractError::Precondition(format!(
            "expected exactly {total} vertices, coloring has {}",
            c.n_vertices()
        )));
    }
    if host.len() != m - 1 {
        return Err(ExtractError::Precondition(format!(
            "host must have {} edges, got {}",
            m - 1,
            host.len()
        )));
    }
    for e in host.edges() {
        if c.color(e) != Color::Blue {
            return Err(ExtractError::Precondition(format!("host edge {e:?} is not blue")));
        }
    }

    let w: Vec<usize> = (0..total).filter(|&x| !host.contains(x)).collect();
    let w_set: BTreeSet<usize> = w.iter().copied().collect();

    let mut chain: Vec<usize> = Vec::new();
    let mut chain_w: BTreeSet<usize> = BTreeSet::new();
    let mut l1 = 0usize;
    let mut l2 = 0usize;
    let mut segments: Vec<usize> = Vec::new();

    // Segment starts are 1-based host edge numbers; only segments whose four
    // edges stay clear of the final host edge are attempted, so the counter
    // identity 4*l1 + 3*l2 + r = m - 2 holds exactly.
    let mut i = 1usize;
    while i + 5 <= m {
        let moving = chain.last().copied();
        let avail: Vec<usize> = w
            .iter()
            .copied()
            .filter(|x| !chain_w.contains(x) || Some(*x) == moving)
            .collect();
        let request = ConnectorRequest {
            coloring: c,
            host,
            seg_start: i - 1,
            w: &avail,
            required_end: moving,
            forbidden_end: None,
        };
        match find_connector(&request, trace)? {
            ConnectorOutcome::Escape(g) => {
                trace.push(
                    "L4",
                    json!({"n": n, "m": m}),
                    "goal",
                    json!({"l1": l1, "l2": l2, "r": null, "segments": segments, "plen": null, "w_in_chain": chain_w.len()}),
                );
                return Ok(RedChainOutcome::Goal(g));
            }
            ConnectorOutcome::Connector(q) => {
                segments.push(i);
                if chain.is_empty() {
                    chain = q.path.vertices().to_vec();
                } else {
                    debug_assert_eq!(q.path.first(), moving.unwrap());
                    chain.extend_from_slice(&q.path.vertices()[1..]);
                }
                chain_w.extend(q.w_used.iter().copied());
                match q.kind {
                    ConnectorKind::P5 => {
                        l1 += 1;
                        i += 4;
                    }
                    ConnectorKind::P4 => {
                        l2 += 1;
                        i += 3;
                    }
                }
            }
        }
    }

    let r = m - 1 - i;
    if 4 * l1 + 3 * l2 + r != m - 2 || r > 3 {
        return Err(ExtractError::Internal(format!(
            "segment accounting broke: l1={l1} l2={l2} r={r} m={m}"
        )));
    }
    if chain_w.len() > m - 1 - r {
        return Err(ExtractError::Internal(format!(
            "chain consumed {} free vertices, cap is {}",
            chain_w.len(),
            m - 1 - r
        )));
    }

    let t_free: Vec<usize> = w_set.iter().copied().filter(|x| !chain_w.contains(x)).collect();
    let attach = chain.last().copied();
    let hv = host.vertices();
    let last = hv[hv.len() - 1]; // final host vertex
    let mid = hv[hv.len() - 2]; // interior of the final host edge
    let fin = Finish { c, host };

    let goal = |g: RedChainOutcome, trace: &mut ExtractionTrace, counters: serde_json::Value| {
        trace.push("L4", json!({"n": n, "m": m}), "goal", counters);
        Ok(g)
    };
    let counters = |plen: Option<usize>| {
        json!({"l1": l1, "l2": l2, "r": r, "segments": segments, "plen": plen, "w_in_chain": chain_w.len()})
    };

    let red_path = match r {
        0 => {
            let x = attach.expect("r=0 implies at least one connector");
            let u = t_free[0];
            if c.color_of(last, x, u) == Color::Blue {
                return goal(fin.end_escape(x, u)?, trace, counters(None));
            }
            let mut seq = chain;
            seq.extend([last, u]);
            seq
        }
        1 => {
            let x = attach.expect("r=1 implies at least one connector");
            let (u, vv) = (t_free[0], t_free[1]);
            if c.color_of(mid, x, u) == Color::Blue {
                return goal(fin.tail_escape(x, u)?, trace, counters(None));
            }
            if c.color_of(last, u, vv) == Color::Blue {
                return goal(fin.end_escape(u, vv)?, trace, counters(None));
            }
            let mut seq = chain;
            seq.extend([mid, u, last, vv]);
            seq
        }
        _ => {
            // r = 2, or r = 3: close through a red gadget over the two host
            // edges preceding the last one.
            let window = VertexWindow { start: 2 * m - 8 };
            let w3 = [t_free[0], t_free[1], t_free[2]];
            let cfg = match find_omega(c, host, Color::Blue, window, w3, trace)? {
                OmegaOutcome::Escape(g) => {
                    return goal(RedChainOutcome::Goal(g), trace, counters(None));
                }
                OmegaOutcome::Config(cfg) => cfg,
            };
            let (ca, cb) = cfg.ends();
            let third = *w3.iter().find(|&&x| x != ca && x != cb).unwrap();
            if r == 3 && m % 4 <= 1 {
                // Five fresh vertices: a three-edge bridge into the gadget.
                let z = t_free[3];
                let tt = t_free[4];
                let y = match attach {
                    Some(x) => x,
                    None => *t_free.get(5).ok_or_else(|| {
                        ExtractError::Internal("missing spare vertex for empty chain".into())
                    })?,
                };
                if c.color_of(y, third, mid) == Color::Blue {
                    return goal(fin.tail_escape(third, y)?, trace, counters(None));
                }
                if c.color_of(mid, z, tt) == Color::Blue {
                    return goal(fin.tail_escape(z, tt)?, trace, counters(None));
                }
                if c.color_of(last, tt, ca) == Color::Blue {
                    return goal(fin.end_escape(tt, ca)?, trace, counters(None));
                }
                let mut seq = if chain.is_empty() { vec![y] } else { chain };
                seq.extend([third, mid, z, tt, last]);
                seq.extend_from_slice(cfg.path.vertices());
                seq
            } else {
                let x = attach.expect("r=2 style finish implies a nonempty chain");
                if c.color_of(mid, x, ca) == Color::Blue {
                    return goal(fin.tail_escape(x, ca)?, trace, counters(None));
                }
                if c.color_of(last, cb, third) == Color::Blue {
                    return goal(fin.end_escape(cb, third)?, trace, counters(None));
                }
                let mut seq = chain;
                seq.push(mid);
                seq.extend_from_slice(cfg.path.vertices());
                seq.extend([last, third]);
                seq
            }
        }
    };

    let path = LoosePath::new(red_path)?;
    let ok = path.len() >= n - 1 && path.edges().iter().all(|&e| c.color(e) == Color::Red);
    if !ok {
        return Err(ExtractError::Internal(format!(
            "red chain has {} edges (need >= {}) or a non-red edge",
            path.len(),
            n - 1
        )));
    }
    trace.push("L4", json!({"n": n, "m": m}), "struct", counters(Some(path.len())));
    Ok(RedChainOutcome::Red(path))
}
