//! From a red path one edge short of the red target, assembles a blue path
//! meeting the blue target, or a red path meeting the red target.
//!
//! The host's vertices (minus its first one or two, depending on m mod 4)
//! are cut into windows of five consecutive vertices; each window yields a
//! blue two-edge gadget via [`find_omega`], and the gadgets grow at most two
//! blue chains that share end vertices. Closing edges through the host's
//! extreme vertices then join the chains into the blue target. Any closing
//! edge that comes out red either extends the host to the red target
//! directly or closes a red loose cycle, which [`cycle_to_path`] converts.

use super::cycle::cycle_to_path;
use super::omega::{find_omega, OmegaOutcome};
use super::trace::ExtractionTrace;
use super::{ExtractError, Witness};
use crate::coloring::{Color, TwoColoring};
use crate::hypergraph::{LooseCycle, LoosePath, VertexWindow};
use serde_json::json;
use std::collections::BTreeSet;

struct State<'a> {
    c: &'a TwoColoring,
    host: &'a LoosePath,
    n: usize,
    m: usize,
}

impl State<'_> {
    fn red(&self, a: usize, b: usize, c: usize) -> bool {
        self.c.color_of(a, b, c) == Color::Red
    }

    /// Red host re-entered through its last edge's interior, extended by
    /// `[a, b]`: a red path of full target length.
    fn red_tail(&self, a: usize, b: usize) -> Result<Witness, ExtractError> {
        let hv = self.host.vertices();
        let mut seq = hv[..hv.len() - 2].to_vec();
        seq.extend([hv[hv.len() - 1], hv[hv.len() - 2], a, b]);
        self.red_witness(seq)
    }

    /// Red host extended backwards past its first vertex by `[a, b]`.
    fn red_head(&self, a: usize, b: usize) -> Result<Witness, ExtractError> {
        let mut seq = vec![a, b];
        seq.extend_from_slice(self.host.vertices());
        self.red_witness(seq)
    }

    fn red_witness(&self, seq: Vec<usize>) -> Result<Witness, ExtractError> {
        let path = LoosePath::new(seq)?;
        let ok =
            path.len() == self.n && path.edges().iter().all(|&e| self.c.color(e) == Color::Red);
        if !ok {
            return Err(ExtractError::Internal("malformed red goal path".into()));
        }
        Ok(Witness { color: Color::Red, path })
    }

    /// The host closed into a red cycle through one extra vertex, handed to
    /// the cycle converter with everything outside the cycle as free set.
    fn cycle_close(
        &self,
        extra: usize,
        trace: &mut ExtractionTrace,
    ) -> Result<Witness, ExtractError> {
        let mut seq = self.host.vertices().to_vec();
        seq.push(extra);
        self.via_cycle(seq, trace)
    }

    /// Red cycle joining the interiors of the host's first and last edges
    /// through `extra`, dropping no host vertex.
    fn cycle_mid(&self, extra: usize, trace: &mut ExtractionTrace) -> Result<Witness, ExtractError> {
        let hv = self.host.vertices();
        let len = hv.len();
        let mut seq = vec![hv[1], hv[0]];
        seq.extend_from_slice(&hv[2..len - 3]);
        seq.extend([hv[len - 3], hv[len - 1], hv[len - 2], extra]);
        self.via_cycle(seq, trace)
    }

    fn via_cycle(
        &self,
        seq: Vec<usize>,
        trace: &mut ExtractionTrace,
    ) -> Result<Witness, ExtractError> {
        let cyc = LooseCycle::new(seq)?;
        let outside: Vec<usize> =
            (0..self.c.n_vertices()).filter(|&x| !cyc.contains(x)).collect();
        cycle_to_path(self.c, &cyc, &outside, self.m, trace)
    }
}

/// Builds a blue witness of exactly length `m` (or a red one of exactly
/// length `n`) from a red host of length `n - 1`. Requires m >= 3,
/// n >= floor(5m/4), and a coloring on exactly 2n + floor((m+1)/2) vertices.
pub fn blue_from_max_red(
    c: &TwoColoring,
    host: &LoosePath,
    n: usize,
    m: usize,
    trace: &mut ExtractionTrace,
) -> Result<Witness, ExtractError> {
    if m < 3 || n < (5 * m) / 4 {
        return Err(ExtractError::Precondition(format!(
            "need m >= 3 and n >= floor(5m/4), got n={n} m={m}"
        )));
    }
    let total = 2 * n + m.div_ceil(2);
    if c.n_vertices() != total {
        return Err(ExtractError::Precondition(format!(
            "expected exactly {total} vertices, coloring has {}",
            c.n_vertices()
        )));
    }
    if host.len() != n - 1 {
        return Err(ExtractError::Precondition(format!(
            "host must have {} edges, got {}",
            n - 1,
            host.len()
        )));
    }
    for e in host.edges() {
        if c.color(e) != Color::Red {
            return Err(ExtractError::Precondition(format!("host edge {e:?} is not red")));
        }
    }

    let st = State { c, host, n, m };
    let w: BTreeSet<usize> = (0..total).filter(|&x| !host.contains(x)).collect();
    debug_assert_eq!(w.len(), m.div_ceil(2) + 1);

    let r = m % 4;
    let k = m / 4;
    // The r=3 run reserves the host's second vertex for its finish, so its
    // windows start one step later.
    let offset = if r == 3 { 2 } else { 1 };
    let avail = 2 * n - 1 - offset;
    let q = avail / 5;
    let h = avail % 5;
    let q_target = match r {
        0 => 2 * k - 1,
        _ => 2 * k,
    };
    if q_target > q {
        return Err(ExtractError::Precondition(format!(
            "host too short for {q_target} windows (have {q})"
        )));
    }

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut free: BTreeSet<usize> = w.clone();

    for j in 1..=q_target {
        let window = VertexWindow { start: 5 * (j - 1) + offset };
        // Chain vertices are removed from `free` as they are consumed, so
        // everything here is genuinely fresh.
        let fresh: Vec<usize> = free.iter().copied().take(3).collect();
        if fresh.len() + chains.len() < 3 {
            return Err(ExtractError::Internal(format!(
                "ran out of free vertices at gadget {j} of {q_target}"
            )));
        }
        let w3 = match chains.as_slice() {
            [] => [fresh[0], fresh[1], fresh[2]],
            [c1] => [*c1.last().unwrap(), fresh[0], fresh[1]],
            [c1, c2, ..] => [*c1.last().unwrap(), *c2.last().unwrap(), fresh[0]],
        };
        let cfg = match find_omega(c, host, Color::Red, window, w3, trace)? {
            OmegaOutcome::Escape(g) => {
                trace.push(
                    "L5",
                    json!({"n": n, "m": m}),
                    "goal",
                    json!({"q": q, "h": h, "q_prime": j - 1, "variant": r == 3}),
                );
                return st.red_witness(g.path.into_vertices());
            }
            OmegaOutcome::Config(cfg) => cfg,
        };
        let (a, b) = cfg.ends();
        let cv = cfg.path.vertices().to_vec();
        let ends_of = |ch: &Vec<usize>| *ch.last().unwrap();
        let attach_idx = chains.iter().position(|ch| ends_of(ch) == a || ends_of(ch) == b);
        match attach_idx {
            None => {
                free.remove(&a);
                free.remove(&b);
                chains.push(cv);
            }
            Some(idx) => {
                let end = ends_of(&chains[idx]);
                let oriented: Vec<usize> =
                    if cv[0] == end { cv } else { cv.into_iter().rev().collect() };
                let far = *oriented.last().unwrap();
                let other = chains.iter().position(|ch| ends_of(ch) == far);
                match other {
                    Some(jdx) if jdx != idx => {
                        // The gadget bridges both chains into one.
                        let mut merged = chains[idx].clone();
                        merged.extend_from_slice(&oriented[1..]);
                        let tail: Vec<usize> =
                            chains[jdx].iter().rev().skip(1).copied().collect();
                        merged.extend(tail);
                        chains = vec![merged];
                    }
                    _ => {
                        free.remove(&far);
                        chains[idx].extend_from_slice(&oriented[1..]);
                    }
                }
            }
        }
    }

    // Longest chain first; its far end is where the closing edges attach.
    chains.sort_by_key(|ch| std::cmp::Reverse(ch.len()));
    let (l_long, l_short) = match chains.as_slice() {
        [] => (0, 0),
        [c1] => ((c1.len() - 1) / 2, 0),
        [c1, c2, ..] => ((c1.len() - 1) / 2, (c2.len() - 1) / 2),
    };
    if l_long + l_short != 2 * q_target {
        return Err(ExtractError::Internal(format!(
            "chain accounting broke: {l_long} + {l_short} != 2*{q_target}"
        )));
    }
    let t_free: Vec<usize> = free.iter().copied().collect();
    let i_count = if chains.len() == 2 { 2 } else { 1 };
    if !chains.is_empty() && t_free.len() != m.div_ceil(2) + 1 - (q_target + i_count) {
        return Err(ExtractError::Internal(format!(
            "free-set accounting broke: {} left at q'={q_target}, i={i_count}",
            t_free.len()
        )));
    }

    let hv = host.vertices();
    let v1 = hv[0];
    let v2 = hv[1];
    let last = hv[hv.len() - 1];
    let mid = hv[hv.len() - 2];

    let counters = |finish: &str| {
        json!({
            "q": q, "h": h, "q_prime": q_target, "l_long": l_long, "l_short": l_short,
            "t_left": t_free.len(), "i": i_count, "variant": r == 3, "finish": finish,
        })
    };
    let blue = |st: &State, seq: Vec<usize>| -> Result<Witness, ExtractError> {
        let path = LoosePath::new(seq)?;
        let ok = path.len() == m && path.edges().iter().all(|&e| st.c.color(e) == Color::Blue);
        if !ok {
            return Err(ExtractError::Internal("assembled blue path is invalid".into()));
        }
        Ok(Witness { color: Color::Blue, path })
    };

    let single = chains.len() < 2;
    let (witness, finish) = match (r, single) {
        (0, true) | (2, true) => {
            let cl = &chains[0];
            let y2 = *cl.last().unwrap();
            let u = t_free[0];
            if st.red(mid, y2, u) {
                (st.red_tail(y2, u)?, "tail-extend")
            } else if st.red(last, u, v1) {
                (st.cycle_close(u, trace)?, "cycle")
            } else {
                let mut seq = cl.clone();
                seq.extend([mid, u, last, v1]);
                (blue(&st, seq)?, "two-edge-close")
            }
        }
        (0, false) | (2, false) => {
            let (cl, cs) = (&chains[0], &chains[1]);
            let y2 = *cl.last().unwrap();
            let x1 = *cs.last().unwrap();
            let y1 = cs[0];
            if st.red(mid, y2, x1) {
                (st.red_tail(y2, x1)?, "tail-extend")
            } else if st.red(last, y1, v1) {
                (st.cycle_close(y1, trace)?, "cycle")
            } else {
                let mut seq = cl.clone();
                seq.push(mid);
                seq.extend(cs.iter().rev().copied());
                seq.extend([last, v1]);
                (blue(&st, seq)?, "bridge-close")
            }
        }
        (1, true) => {
            let cl = &chains[0];
            let y2 = *cl.last().unwrap();
            let u = t_free[0];
            if st.red(v1, u, y2) {
                (st.red_head(y2, u)?, "head-extend")
            } else {
                let mut seq = cl.clone();
                seq.extend([u, v1]);
                (blue(&st, seq)?, "one-edge-close")
            }
        }
        (1, false) => {
            let (cl, cs) = (&chains[0], &chains[1]);
            let y2 = *cl.last().unwrap();
            let x1 = *cs.last().unwrap();
            if st.red(v1, y2, x1) {
                (st.red_head(x1, y2)?, "head-extend")
            } else {
                let mut seq = cl.clone();
                seq.push(v1);
                seq.extend(cs.iter().rev().copied());
                (blue(&st, seq)?, "one-bridge-close")
            }
        }
        (3, _) => {
            // Reserved v2 joins the closing run of three edges.
            let (base, y2, x1y1): (Vec<usize>, usize, Option<(usize, usize)>) = if single {
                match chains.first() {
                    Some(cl) => (cl.clone(), *cl.last().unwrap(), None),
                    None => {
                        // m = 3: no gadgets at all, the run is built bare.
                        let y = t_free[2];
                        (vec![y], y, None)
                    }
                }
            } else {
                let (cl, cs) = (&chains[0], &chains[1]);
                (cl.clone(), *cl.last().unwrap(), Some((*cs.last().unwrap(), cs[0])))
            };
            if st.red(mid, v2, y2) {
                (st.cycle_mid(y2, trace)?, "mid-cycle")
            } else {
                match x1y1 {
                    None => {
                        let (u, vv) = (t_free[0], t_free[1]);
                        if st.red(mid, vv, u) {
                            (st.red_tail(vv, u)?, "tail-extend")
                        } else if st.red(u, v1, last) {
                            (st.cycle_close(u, trace)?, "cycle")
                        } else {
                            let mut seq = base;
                            seq.extend([v2, mid, vv, u, last, v1]);
                            (blue(&st, seq)?, "three-edge-close")
                        }
                    }
                    Some((x1, y1)) => {
                        let u = t_free[0];
                        if st.red(mid, x1, u) {
                            (st.red_tail(x1, u)?, "tail-extend")
                        } else if st.red(y1, v1, last) {
                            (st.cycle_close(y1, trace)?, "cycle")
                        } else {
                            let mut seq = base;
                            seq.extend([v2, mid, u]);
                            seq.extend(chains[1].iter().rev().copied());
                            seq.extend([v1, last]);
                            (blue(&st, seq)?, "three-bridge-close")
                        }
                    }
                }
            }
        }
        _ => unreachable!("r is m % 4"),
    };

    trace.push(
        "L5",
        json!({"n": n, "m": m}),
        if witness.color == Color::Blue { "struct" } else { "goal" },
        counters(finish),
    );
    Ok(witness)
}
