//! Finds a two-edge gadget in the opposite color around five consecutive
//! vertices of a host path, or reroutes the host into a strictly longer path
//! of its own color.
//!
//! The gadget is a loose two-edge path whose three interior vertices lie in
//! the window and whose two ends come from the supplied free triple. Two
//! window shapes occur: an even offset covers two whole host edges, an odd
//! offset straddles three.

use super::trace::ExtractionTrace;
use super::{ExtractError, GoalEscape};
use crate::coloring::{Color, TwoColoring};
use crate::hypergraph::{LoosePath, VertexWindow};
use serde_json::json;

/// A two-edge loose path `{x, s0, s1}, {s1, s2, y}` in `color`, with interior
/// trio inside a host window and end vertices `x`, `y` off the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaConfiguration {
    pub path: LoosePath,
    pub color: Color,
}

impl OmegaConfiguration {
    pub fn ends(&self) -> (usize, usize) {
        (self.path.first(), self.path.last())
    }

    pub fn interior(&self) -> [usize; 3] {
        let v = self.path.vertices();
        [v[1], v[2], v[3]]
    }
}

#[derive(Debug, Clone)]
pub enum OmegaOutcome {
    Config(OmegaConfiguration),
    Escape(GoalEscape),
}

struct Ctx<'a> {
    c: &'a TwoColoring,
    host: &'a LoosePath,
    host_color: Color,
    w3: [usize; 3],
}

impl Ctx<'_> {
    fn hostish(&self, a: usize, b: usize, c: usize) -> bool {
        self.c.color_of(a, b, c) == self.host_color
    }

    fn config(&self, seq: [usize; 5], window: &[usize; 5]) -> Result<OmegaOutcome, ExtractError> {
        let path = LoosePath::new(seq.to_vec())?;
        let cfg_color = self.host_color.opposite();
        let ok = path.edges().iter().all(|&e| self.c.color(e) == cfg_color)
            && seq[1..4].iter().all(|v| window.contains(v))
            && self.w3.contains(&seq[0])
            && self.w3.contains(&seq[4]);
        if !ok {
            return Err(ExtractError::Internal("malformed omega configuration".into()));
        }
        Ok(OmegaOutcome::Config(OmegaConfiguration { path, color: cfg_color }))
    }

    /// Host with `insert` spliced between vertex indices `cut` and `resume`;
    /// must come out one edge longer, monochromatic in the host color.
    fn escape(&self, cut: usize, insert: &[usize], resume: usize) -> Result<OmegaOutcome, ExtractError> {
        let hv = self.host.vertices();
        let mut seq = hv[..=cut].to_vec();
        seq.extend_from_slice(insert);
        seq.extend_from_slice(&hv[resume..]);
        let path = LoosePath::new(seq)?;
        let ok = path.len() == self.host.len() + 1
            && path.edges().iter().all(|&e| self.c.color(e) == self.host_color);
        if !ok {
            return Err(ExtractError::Internal("malformed host reroute".into()));
        }
        Ok(OmegaOutcome::Escape(GoalEscape { color: self.host_color, path }))
    }
}

/// Searches the window for an opposite-color configuration with ends in `w3`.
/// Any probe that would contradict host maximality instead returns the
/// witnessing longer host-colored path as an escape.
pub fn find_omega(
    c: &TwoColoring,
    host: &LoosePath,
    host_color: Color,
    window: VertexWindow,
    w3: [usize; 3],
    trace: &mut ExtractionTrace,
) -> Result<OmegaOutcome, ExtractError> {
    if c.n_vertices() < 10 {
        return Err(ExtractError::Precondition(format!(
            "need at least 10 vertices, got {}",
            c.n_vertices()
        )));
    }
    let wv = window.vertices(host).map_err(|e| ExtractError::Precondition(e.to_string()))?;
    {
        let mut d = w3.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.len() != 3 || w3.iter().any(|&x| x >= c.n_vertices() || host.contains(x)) {
            return Err(ExtractError::Precondition(
                "w3 must be three distinct vertices off the host".into(),
            ));
        }
    }
    for e in host.edges() {
        if c.color(e) != host_color {
            return Err(ExtractError::Precondition(format!(
                "host edge {e:?} is not {host_color}"
            )));
        }
    }

    let ctx = Ctx { c, host, host_color, w3 };
    let s = window.start;
    let [v1, v2, v3, v4, v5] = wv;
    let [x1, x2, x3] = w3;

    let (outcome, case) = if s.is_multiple_of(2) {
        // Window is two whole host edges {v1,v2,v3}, {v3,v4,v5}.
        let e1_cfg = !ctx.hostish(x1, v1, v2);
        let e2_cfg = !ctx.hostish(v2, v3, x2);
        match (e1_cfg, e2_cfg) {
            (true, true) => (ctx.config([x1, v1, v2, v3, x2], &wv)?, "aligned-both"),
            (true, false) => {
                if !ctx.hostish(x2, v1, v4) {
                    (ctx.config([x1, v2, v1, v4, x2], &wv)?, "aligned-inner")
                } else if !ctx.hostish(x3, v2, v5) {
                    (ctx.config([x1, v1, v2, v5, x3], &wv)?, "aligned-outer")
                } else {
                    (ctx.escape(s, &[v4, x2, v3, v2, x3], s + 4)?, "aligned-reroute")
                }
            }
            (false, true) => {
                if !ctx.hostish(v2, v4, x3) {
                    (ctx.config([x2, v3, v2, v4, x3], &wv)?, "aligned-skip")
                } else {
                    (ctx.escape(s, &[x1, v2, x3, v4, v3], s + 4)?, "aligned-skip-reroute")
                }
            }
            (false, false) => (ctx.escape(s, &[x1, v2, x2], s + 2)?, "aligned-split"),
        }
    } else {
        // Window straddles three host edges; v2 and v4 are connectors.
        let low = (0..3).find(|&i| ctx.hostish(w3[i], v2, v3));
        let high = (0..3).find(|&i| ctx.hostish(w3[i], v3, v4));
        if let Some(i) = low {
            let mut rest = (0..3).filter(|&j| j != i);
            let (j, k) = (rest.next().unwrap(), rest.next().unwrap());
            if ctx.hostish(v3, v4, w3[j]) {
                (ctx.escape(s + 1, &[w3[i], v3, w3[j]], s + 3)?, "straddle-low-reroute")
            } else if ctx.hostish(v3, v5, w3[k]) {
                (
                    ctx.escape(s + 1, &[w3[i], v3, w3[k], v5, v4], s + 5)?,
                    "straddle-low-reroute-far",
                )
            } else {
                (ctx.config([w3[j], v4, v3, v5, w3[k]], &wv)?, "straddle-low")
            }
        } else if let Some(i) = high {
            let mut rest = (0..3).filter(|&j| j != i);
            let (j, k) = (rest.next().unwrap(), rest.next().unwrap());
            if ctx.hostish(v2, v3, w3[j]) {
                (ctx.escape(s + 1, &[w3[j], v3, w3[i]], s + 3)?, "straddle-high-reroute")
            } else if ctx.hostish(v1, v3, w3[k]) {
                (
                    ctx.escape(s - 1, &[v2, v1, w3[k], v3, w3[i]], s + 3)?,
                    "straddle-high-reroute-far",
                )
            } else {
                (ctx.config([w3[j], v2, v3, v1, w3[k]], &wv)?, "straddle-high")
            }
        } else {
            (ctx.config([x1, v2, v3, v4, x2], &wv)?, "straddle-open")
        }
    };

    trace.push(
        "Omega",
        json!({"window_start": s, "w3": w3, "host_color": host_color.to_string()}),
        match outcome {
            OmegaOutcome::Config(_) => "struct",
            OmegaOutcome::Escape(_) => "goal",
        },
        json!({"case": case}),
    );
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::TwoColoring;
    use crate::hypergraph::Edge;

    fn red_host(n_verts: usize, host_len: usize) -> (TwoColoring, LoosePath) {
        let mut c = TwoColoring::monochromatic(n_verts, Color::Blue).unwrap();
        let host = LoosePath::new((0..2 * host_len + 1).collect()).unwrap();
        for e in host.edges() {
            c.set_color(e, Color::Red);
        }
        (c, host)
    }

    fn trace() -> ExtractionTrace {
        ExtractionTrace::default()
    }

    #[test]
    fn aligned_immediate_configuration() {
        // Everything off the host is blue, so the first probe pair works.
        let (c, host) = red_host(14, 5);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 0 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Config(cfg) => {
                assert_eq!(cfg.color, Color::Blue);
                assert_eq!(cfg.path.vertices(), &[11, 0, 1, 2, 12]);
            }
            OmegaOutcome::Escape(_) => panic!("expected a configuration"),
        }
    }

    #[test]
    fn aligned_reroute_when_probes_red() {
        let (mut c, host) = red_host(14, 5);
        // e1 blue stays, e2 red, and both alternatives red: reroute fires.
        c.set_color(Edge::new(1, 2, 12).unwrap(), Color::Red);
        c.set_color(Edge::new(12, 0, 3).unwrap(), Color::Red);
        c.set_color(Edge::new(13, 1, 4).unwrap(), Color::Red);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 0 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Escape(g) => {
                assert_eq!(g.color, Color::Red);
                assert_eq!(g.path.len(), host.len() + 1);
            }
            OmegaOutcome::Config(_) => panic!("expected an escape"),
        }
    }

    #[test]
    fn aligned_split_escape() {
        let (mut c, host) = red_host(14, 5);
        c.set_color(Edge::new(11, 0, 1).unwrap(), Color::Red);
        c.set_color(Edge::new(1, 2, 12).unwrap(), Color::Red);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 0 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Escape(g) => {
                assert_eq!(g.path.vertices(), &[0, 11, 1, 12, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
            }
            OmegaOutcome::Config(_) => panic!("expected an escape"),
        }
    }

    #[test]
    fn straddle_open_configuration() {
        let (c, host) = red_host(14, 5);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 1 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Config(cfg) => {
                assert_eq!(cfg.path.vertices(), &[11, 2, 3, 4, 12]);
            }
            OmegaOutcome::Escape(_) => panic!("expected a configuration"),
        }
    }

    #[test]
    fn straddle_low_branches() {
        // {x1,v2,v3} red forces the alternate pair; make both blue: config.
        let (mut c, host) = red_host(14, 5);
        c.set_color(Edge::new(11, 2, 3).unwrap(), Color::Red);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 1 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Config(cfg) => {
                // Ends are the two remaining free vertices.
                assert_eq!(cfg.path.vertices(), &[12, 4, 3, 5, 13]);
            }
            OmegaOutcome::Escape(_) => panic!("expected a configuration"),
        }

        // Now also make {v3,v4,x2} red: the short reroute fires.
        c.set_color(Edge::new(3, 4, 12).unwrap(), Color::Red);
        let out =
            find_omega(&c, &host, Color::Red, VertexWindow { start: 1 }, [11, 12, 13], &mut trace())
                .unwrap();
        match out {
            OmegaOutcome::Escape(g) => assert_eq!(g.path.len(), 6),
            OmegaOutcome::Config(_) => panic!("expected an escape"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let (c, host) = red_host(14, 5);
        // w3 touching the host.
        assert!(find_omega(
            &c,
            &host,
            Color::Red,
            VertexWindow { start: 0 },
            [3, 12, 13],
            &mut trace()
        )
        .is_err());
        // Window out of range.
        assert!(find_omega(
            &c,
            &host,
            Color::Red,
            VertexWindow { start: 7 },
            [11, 12, 13],
            &mut trace()
        )
        .is_err());
        // Host not monochromatic in the claimed color.
        assert!(find_omega(
            &c,
            &host,
            Color::Blue,
            VertexWindow { start: 0 },
            [11, 12, 13],
            &mut trace()
        )
        .is_err());
    }
}
