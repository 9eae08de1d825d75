//! Builds a red connector path across four consecutive edges of a blue host
//! path, drawing end vertices from the free set, or reroutes the host into a
//! strictly longer blue path.
//!
//! The connector comes in two kinds: a five-edge path spanning four host
//! edges (never touching the last vertex of the fourth), or a four-edge path
//! spanning three (never touching the last vertex of the third). Either way
//! both ends are free vertices, at most 5 (resp. 4) free vertices are
//! consumed, and the caller may demand a particular end vertex and veto
//! another.

use super::trace::ExtractionTrace;
use super::{ExtractError, GoalEscape};
use crate::coloring::{Color, TwoColoring};
use crate::hypergraph::LoosePath;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectorKind {
    P5,
    P4,
}

#[derive(Debug, Clone)]
pub struct Connector {
    pub kind: ConnectorKind,
    pub path: LoosePath,
    /// First host edge of the spanned segment (0-based).
    pub seg_start: usize,
    /// Host edges consumed: 4 for P5, 3 for P4.
    pub span: usize,
    /// Free vertices appearing in the path.
    pub w_used: Vec<usize>,
}

impl Connector {
    pub fn end_a(&self) -> usize {
        self.path.first()
    }

    pub fn end_b(&self) -> usize {
        self.path.last()
    }
}

#[derive(Debug, Clone)]
pub enum ConnectorOutcome {
    Connector(Connector),
    Escape(GoalEscape),
}

pub struct ConnectorRequest<'a> {
    pub coloring: &'a TwoColoring,
    pub host: &'a LoosePath,
    /// 0-based index of the first of four consecutive host edges.
    pub seg_start: usize,
    /// Available free vertices (distinct, off the host).
    pub w: &'a [usize],
    /// This vertex, when given, is made an end of the connector.
    pub required_end: Option<usize>,
    /// This vertex, when given, is never an end of the connector.
    pub forbidden_end: Option<usize>,
}

/// One candidate position for an end of the connector path.
#[derive(Debug, Clone, Copy)]
enum EndOpt {
    Slot(usize),
    Fixed(usize),
}

struct Ctx<'a> {
    c: &'a TwoColoring,
    host: &'a LoosePath,
    seg: usize,
    w: &'a [usize],
    /// Segment vertices, 1-based as v[1..=9].
    v: [usize; 10],
    required: Option<usize>,
    forbidden: Option<usize>,
}

impl Ctx<'_> {
    fn blue(&self, a: usize, b: usize, c: usize) -> bool {
        self.c.color_of(a, b, c) == Color::Blue
    }

    /// First free index whose edge with the given pair is blue.
    fn scan(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.w.len()).find(|&i| self.blue(a, b, self.w[i]))
    }

    /// Host vertex index of segment vertex `p` (1-based).
    fn hidx(&self, p: usize) -> usize {
        2 * self.seg + p - 1
    }

    /// Longer blue host: splice `insert` between segment vertices `cut_p`
    /// and `resume_p`.
    fn escape(&self, cut_p: usize, insert: &[usize], resume_p: usize) -> Result<ConnectorOutcome, ExtractError> {
        let hv = self.host.vertices();
        let mut seq = hv[..=self.hidx(cut_p)].to_vec();
        seq.extend_from_slice(insert);
        seq.extend_from_slice(&hv[self.hidx(resume_p)..]);
        let path = LoosePath::new(seq)?;
        let ok = path.len() == self.host.len() + 1
            && path.edges().iter().all(|&e| self.c.color(e) == Color::Blue);
        if !ok {
            return Err(ExtractError::Internal("malformed blue reroute".into()));
        }
        Ok(ConnectorOutcome::Escape(GoalEscape { color: Color::Blue, path }))
    }

    /// Lexicographically first assignment of distinct free indices to slots,
    /// honoring per-slot exclusions, template-fixed indices, and the
    /// required/forbidden end constraints over the candidate end positions.
    fn choose(
        &self,
        slots: usize,
        excl: &[&[usize]],
        fixed: &[usize],
        end_a: &[EndOpt],
        end_b: &[EndOpt],
    ) -> Result<(Vec<usize>, usize, usize), ExtractError> {
        let t = self.w.len();
        let req = match self.required {
            Some(v) => Some(
                self.w
                    .iter()
                    .position(|&x| x == v)
                    .ok_or_else(|| ExtractError::Precondition("required end not in W".into()))?,
            ),
            None => None,
        };
        let forb = self.forbidden.and_then(|v| self.w.iter().position(|&x| x == v));
        let mut asg = vec![0usize; slots];
        loop {
            let distinct = (0..slots).all(|i| {
                !fixed.contains(&asg[i])
                    && !excl[i].contains(&asg[i])
                    && asg[i + 1..].iter().all(|&o| o != asg[i])
            });
            if distinct {
                let resolve = |opt: &EndOpt| match *opt {
                    EndOpt::Slot(s) => asg[s],
                    EndOpt::Fixed(widx) => widx,
                };
                for ea in end_a {
                    for eb in end_b {
                        let (a, b) = (resolve(ea), resolve(eb));
                        let req_ok = req.is_none_or(|r| r == a || r == b);
                        let forb_ok = forb.is_none_or(|f| f != a && f != b);
                        if req_ok && forb_ok {
                            return Ok((asg.clone(), a, b));
                        }
                    }
                }
            }
            // Next assignment in lexicographic order.
            let mut i = slots;
            loop {
                if i == 0 {
                    return Err(ExtractError::Precondition(format!(
                        "no feasible end-vertex assignment over {t} free vertices"
                    )));
                }
                i -= 1;
                asg[i] += 1;
                if asg[i] < t {
                    break;
                }
                asg[i] = 0;
            }
        }
    }

    fn connector(
        &self,
        kind: ConnectorKind,
        seq: Vec<usize>,
        w_used: Vec<usize>,
    ) -> Result<ConnectorOutcome, ExtractError> {
        let span = match kind {
            ConnectorKind::P5 => 4,
            ConnectorKind::P4 => 3,
        };
        let mut path = LoosePath::new(seq)?;
        if let Some(r) = self.required {
            if path.last() == r {
                path = path.reversed();
            }
        }
        let lo = self.hidx(1);
        let barred = self.hidx(2 * span + 1);
        let ok = path.edges().iter().all(|&e| self.c.color(e) == Color::Red)
            && path.vertices().iter().all(|&x| {
                if self.w.contains(&x) {
                    true
                } else {
                    let p = self.host.vertices().iter().position(|&h| h == x);
                    p.is_some_and(|p| p >= lo && p < barred)
                }
            })
            && self.required.is_none_or(|r| path.first() == r)
            && self.forbidden.is_none_or(|f| path.first() != f && path.last() != f)
            && w_used.len() <= span + 1;
        if !ok {
            return Err(ExtractError::Internal("connector violates its contract".into()));
        }
        Ok(ConnectorOutcome::Connector(Connector {
            kind,
            path,
            seg_start: self.seg,
            span,
            w_used,
        }))
    }
}

pub fn find_connector(
    req: &ConnectorRequest<'_>,
    trace: &mut ExtractionTrace,
) -> Result<ConnectorOutcome, ExtractError> {
    let c = req.coloring;
    let host = req.host;
    let seg = req.seg_start;
    if seg + 4 > host.len() {
        return Err(ExtractError::Precondition(format!(
            "segment {seg} needs four host edges, host has {}",
            host.len()
        )));
    }
    for e in host.edges() {
        if c.color(e) != Color::Blue {
            return Err(ExtractError::Precondition(format!("host edge {e:?} is not blue")));
        }
    }
    {
        let mut d = req.w.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.len() != req.w.len()
            || req.w.iter().any(|&x| x >= c.n_vertices() || host.contains(x))
        {
            return Err(ExtractError::Precondition(
                "free vertices must be distinct and off the host".into(),
            ));
        }
        if req.w.len() < 4 {
            return Err(ExtractError::Precondition(format!(
                "need at least 4 free vertices, got {}",
                req.w.len()
            )));
        }
    }
    if let (Some(r), Some(f)) = (req.required_end, req.forbidden_end) {
        if r == f {
            return Err(ExtractError::Precondition(
                "required and forbidden end coincide".into(),
            ));
        }
    }

    let mut v = [0usize; 10];
    for (p, slot) in v.iter_mut().enumerate().skip(1) {
        *slot = host.vertices()[2 * seg + p - 1];
    }
    let ctx = Ctx {
        c,
        host,
        seg,
        w: req.w,
        v,
        required: req.required_end,
        forbidden: req.forbidden_end,
    };

    let (outcome, case, subcase) = run_cases(&ctx)?;
    trace.push(
        "Connector",
        json!({
            "seg_start": seg,
            "t": req.w.len(),
            "required": req.required_end,
            "forbidden": req.forbidden_end,
        }),
        match outcome {
            ConnectorOutcome::Connector(_) => "struct",
            ConnectorOutcome::Escape(_) => "goal",
        },
        json!({"case": case, "subcase": subcase}),
    );
    Ok(outcome)
}

fn run_cases(ctx: &Ctx<'_>) -> Result<(ConnectorOutcome, u8, &'static str), ExtractError> {
    let v = &ctx.v;
    let w = ctx.w;

    if let Some(i) = ctx.scan(v[1], v[2]) {
        return case2(ctx, i);
    }
    if let Some(i) = ctx.scan(v[2], v[3]) {
        return case3(ctx, i);
    }

    // Case 1: every edge {v1,v2,x} and {v2,v3,x} is red.
    if let Some(k) = ctx.scan(v[3], v[4]) {
        // Subcase 2.
        let (s, ..) = ctx.choose(3, &[&[], &[k], &[k]], &[], &[EndOpt::Slot(0)], &[EndOpt::Slot(2)])?;
        if ctx.blue(v[4], v[5], w[s[1]]) {
            return Ok((ctx.escape(3, &[w[k], v[4], w[s[1]]], 5)?, 1, "2"));
        }
        if ctx.blue(v[4], v[6], w[s[2]]) {
            return Ok((ctx.escape(3, &[w[k], v[4], w[s[2]], v[6], v[5]], 7)?, 1, "2"));
        }
        let seq = vec![w[s[0]], v[1], v[2], v[3], w[s[1]], v[5], v[4], v[6], w[s[2]]];
        let used = vec![w[s[0]], w[s[1]], w[s[2]]];
        return Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 1, "2"));
    }
    if let Some(k) = ctx.scan(v[4], v[5]) {
        // Subcase 3, split on the colors toward v6 and v7.
        if let Some(l) = ctx.scan(v[5], v[6]) {
            let (s, ..) = ctx.choose(
                4,
                &[&[], &[], &[k, l], &[l]],
                &[],
                &[EndOpt::Slot(0)],
                &[EndOpt::Slot(3)],
            )?;
            if ctx.blue(v[6], v[7], w[s[2]]) {
                return Ok((ctx.escape(5, &[w[l], v[6], w[s[2]]], 7)?, 1, "3a"));
            }
            if ctx.blue(v[6], v[8], w[s[3]]) {
                return Ok((ctx.escape(5, &[w[l], v[6], w[s[3]], v[8], v[7]], 9)?, 1, "3a"));
            }
            let seq = vec![
                w[s[0]], v[1], v[2], w[s[1]], v[3], v[4], w[s[2]], v[7], v[6], v[8], w[s[3]],
            ];
            let used = vec![w[s[0]], w[s[1]], w[s[2]], w[s[3]]];
            return Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 1, "3a"));
        }
        if let Some(l) = ctx.scan(v[6], v[7]) {
            let (s, _, eb) = ctx.choose(
                3,
                &[&[l], &[l], &[l]],
                &[l],
                &[EndOpt::Slot(0)],
                &[EndOpt::Slot(2), EndOpt::Fixed(l)],
            )?;
            if ctx.blue(v[5], w[s[2]], w[l]) {
                return Ok((ctx.escape(5, &[w[s[2]], w[l]], 6)?, 1, "3b"));
            }
            let tail = if eb == l { [w[s[2]], w[l]] } else { [w[l], w[s[2]]] };
            let seq = vec![
                w[s[0]], v[1], v[2], v[3], w[s[1]], v[6], v[5], tail[0], tail[1],
            ];
            let used = vec![w[s[0]], w[s[1]], w[s[2]], w[l]];
            return Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 1, "3b"));
        }
        let (s, ..) = ctx.choose(4, &[&[], &[], &[k], &[]], &[], &[EndOpt::Slot(0)], &[EndOpt::Slot(3)])?;
        let seq = vec![
            w[s[0]], v[1], v[2], w[s[1]], v[3], v[4], w[s[2]], v[5], v[6], v[7], w[s[3]],
        ];
        let used = vec![w[s[0]], w[s[1]], w[s[2]], w[s[3]]];
        return Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 1, "3"));
    }

    // Subcase 1: all four families red; a four-edge ladder always exists.
    let (s, ..) = ctx.choose(4, &[&[], &[], &[], &[]], &[], &[EndOpt::Slot(0)], &[EndOpt::Slot(3)])?;
    let seq = vec![w[s[0]], v[1], v[2], w[s[1]], v[3], w[s[2]], v[4], v[5], w[s[3]]];
    let used = vec![w[s[0]], w[s[1]], w[s[2]], w[s[3]]];
    Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 1, "1"))
}

/// Some {v1,v2,w[i]} is blue.
fn case2(ctx: &Ctx<'_>, i: usize) -> Result<(ConnectorOutcome, u8, &'static str), ExtractError> {
    let v = &ctx.v;
    let w = ctx.w;
    let ends_a = [EndOpt::Slot(0), EndOpt::Fixed(i)];

    // Shared head checks; each blue finding reroutes through {v1,v2,w[i]}.
    let head = |s: &[usize], ea: usize| -> Vec<usize> {
        let (first, second) = if ea == i { (w[i], w[s[0]]) } else { (w[s[0]], w[i]) };
        vec![first, second]
    };
    let head_checks = |s: &[usize]| -> Option<(usize, Vec<usize>, usize)> {
        if ctx.blue(w[s[0]], w[i], v[3]) {
            return Some((1, vec![v[2], w[i], w[s[0]]], 3));
        }
        if ctx.blue(v[2], v[3], w[s[1]]) {
            return Some((1, vec![w[i], v[2], w[s[1]]], 3));
        }
        if ctx.blue(v[2], v[4], w[s[2]]) {
            return Some((1, vec![w[i], v[2], w[s[2]], v[4], v[3]], 5));
        }
        None
    };

    if let Some(k) = ctx.scan(v[5], v[6]) {
        let (s, ea, _) = ctx.choose(
            4,
            &[&[i], &[i], &[i, k], &[i, k]],
            &[i],
            &ends_a,
            &[EndOpt::Slot(3)],
        )?;
        if let Some((cut, ins, res)) = head_checks(&s) {
            return Ok((ctx.escape(cut, &ins, res)?, 2, "2"));
        }
        if ctx.blue(v[6], v[7], w[s[2]]) {
            return Ok((ctx.escape(5, &[w[k], v[6], w[s[2]]], 7)?, 2, "2"));
        }
        if ctx.blue(v[6], v[8], w[s[3]]) {
            return Ok((ctx.escape(5, &[w[k], v[6], w[s[3]], v[8], v[7]], 9)?, 2, "2"));
        }
        let mut seq = head(&s, ea);
        seq.extend([v[3], w[s[1]], v[2], v[4], w[s[2]], v[7], v[6], v[8], w[s[3]]]);
        let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]], w[s[3]]];
        return Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 2, "2"));
    }
    if let Some(k) = ctx.scan(v[6], v[7]) {
        let (s, ea, _) = ctx.choose(
            3,
            &[&[i], &[i, k], &[i, k]],
            &[i],
            &ends_a,
            &[EndOpt::Slot(2)],
        )?;
        if ctx.blue(w[s[0]], w[i], v[3]) {
            return Ok((ctx.escape(1, &[v[2], w[i], w[s[0]]], 3)?, 2, "3"));
        }
        if ctx.blue(v[2], v[3], w[s[1]]) {
            return Ok((ctx.escape(1, &[w[i], v[2], w[s[1]]], 3)?, 2, "3"));
        }
        if ctx.blue(v[4], v[6], w[s[1]]) {
            return Ok((ctx.escape(3, &[v[5], v[4], w[s[1]], v[6], w[k]], 7)?, 2, "3"));
        }
        let mut seq = head(&s, ea);
        seq.extend([v[3], v[2], w[s[1]], v[4], v[6], v[5], w[s[2]]]);
        let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]]];
        return Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 2, "3"));
    }

    // Subcase 1: every {v5,v6,x} and {v6,v7,x} is red.
    let (s, ea, _) = ctx.choose(4, &[&[i], &[i], &[i], &[i]], &[i], &ends_a, &[EndOpt::Slot(3)])?;
    if let Some((cut, ins, res)) = head_checks(&s) {
        return Ok((ctx.escape(cut, &ins, res)?, 2, "1"));
    }
    let mut seq = head(&s, ea);
    seq.extend([v[3], w[s[1]], v[2], v[4], w[s[2]], v[5], v[6], v[7], w[s[3]]]);
    let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]], w[s[3]]];
    Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 2, "1"))
}

/// Every {v1,v2,x} is red and some {v2,v3,w[i]} is blue.
fn case3(ctx: &Ctx<'_>, i: usize) -> Result<(ConnectorOutcome, u8, &'static str), ExtractError> {
    let v = &ctx.v;
    let w = ctx.w;
    let ends_a = [EndOpt::Slot(0), EndOpt::Fixed(i)];
    let head = |s: &[usize], ea: usize| -> Vec<usize> {
        let (first, second) = if ea == i { (w[i], w[s[0]]) } else { (w[s[0]], w[i]) };
        vec![first, second, v[1]]
    };
    // {w[s0],w[i],v1} blue reroutes through the case edge {v2,v3,w[i]}.
    let head_check = |s: &[usize]| -> Option<(usize, Vec<usize>, usize)> {
        if ctx.blue(w[s[0]], w[i], v[1]) {
            return Some((1, vec![w[s[0]], w[i], v[2]], 3));
        }
        None
    };

    if let Some(k) = ctx.scan(v[3], v[4]) {
        let (s, ea, _) = ctx.choose(
            3,
            &[&[i], &[i, k], &[i, k]],
            &[i],
            &ends_a,
            &[EndOpt::Slot(2)],
        )?;
        if let Some((cut, ins, res)) = head_check(&s) {
            return Ok((ctx.escape(cut, &ins, res)?, 3, "2"));
        }
        if ctx.blue(v[4], v[5], w[s[1]]) {
            return Ok((ctx.escape(3, &[w[k], v[4], w[s[1]]], 5)?, 3, "2"));
        }
        if ctx.blue(v[4], v[6], w[s[2]]) {
            return Ok((ctx.escape(3, &[w[k], v[4], w[s[2]], v[6], v[5]], 7)?, 3, "2"));
        }
        let mut seq = head(&s, ea);
        seq.extend([v[2], w[s[1]], v[5], v[4], v[6], w[s[2]]]);
        let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]]];
        return Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 3, "2"));
    }
    if let Some(k) = ctx.scan(v[4], v[5]) {
        if let Some(l) = ctx.scan(v[5], v[6]) {
            let (s, ea, _) = ctx.choose(
                4,
                &[&[i], &[i], &[i, k, l], &[i, l]],
                &[i],
                &ends_a,
                &[EndOpt::Slot(3)],
            )?;
            if let Some((cut, ins, res)) = head_check(&s) {
                return Ok((ctx.escape(cut, &ins, res)?, 3, "3a"));
            }
            if ctx.blue(v[2], v[4], w[s[2]]) {
                return Ok((ctx.escape(1, &[v[3], v[2], w[s[2]], v[4], w[k]], 5)?, 3, "3a"));
            }
            if ctx.blue(v[6], v[7], w[s[2]]) {
                return Ok((ctx.escape(5, &[w[l], v[6], w[s[2]]], 7)?, 3, "3a"));
            }
            if ctx.blue(v[6], v[8], w[s[3]]) {
                return Ok((ctx.escape(5, &[w[l], v[6], w[s[3]], v[8], v[7]], 9)?, 3, "3a"));
            }
            let mut seq = head(&s, ea);
            seq.extend([w[s[1]], v[2], v[4], w[s[2]], v[7], v[6], v[8], w[s[3]]]);
            let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]], w[s[3]]];
            return Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 3, "3a"));
        }
        if let Some(l) = ctx.scan(v[6], v[7]) {
            let (s, ea, _) = ctx.choose(
                3,
                &[&[i], &[i, l], &[i, l]],
                &[i],
                &ends_a,
                &[EndOpt::Slot(2)],
            )?;
            if let Some((cut, ins, res)) = head_check(&s) {
                return Ok((ctx.escape(cut, &ins, res)?, 3, "3b"));
            }
            if ctx.blue(v[4], v[6], w[s[1]]) {
                return Ok((ctx.escape(3, &[v[5], v[4], w[s[1]], v[6], w[l]], 7)?, 3, "3b"));
            }
            let mut seq = head(&s, ea);
            seq.extend([v[2], w[s[1]], v[4], v[6], v[5], w[s[2]]]);
            let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]]];
            return Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 3, "3b"));
        }
        let (s, ea, _) = ctx.choose(
            4,
            &[&[i], &[i], &[i, k], &[i]],
            &[i],
            &ends_a,
            &[EndOpt::Slot(3)],
        )?;
        if let Some((cut, ins, res)) = head_check(&s) {
            return Ok((ctx.escape(cut, &ins, res)?, 3, "3"));
        }
        if ctx.blue(v[2], v[4], w[s[2]]) {
            return Ok((ctx.escape(1, &[v[3], v[2], w[s[2]], v[4], w[k]], 5)?, 3, "3"));
        }
        let mut seq = head(&s, ea);
        seq.extend([w[s[1]], v[2], v[4], w[s[2]], v[5], v[6], v[7], w[s[3]]]);
        let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]], w[s[3]]];
        return Ok((ctx.connector(ConnectorKind::P5, seq, used)?, 3, "3"));
    }

    // Subcase 1: every {v3,v4,x} and {v4,v5,x} is red.
    let (s, ea, _) = ctx.choose(3, &[&[i], &[i], &[i]], &[i], &ends_a, &[EndOpt::Slot(2)])?;
    if let Some((cut, ins, res)) = head_check(&s) {
        return Ok((ctx.escape(cut, &ins, res)?, 3, "1"));
    }
    let mut seq = head(&s, ea);
    seq.extend([v[2], w[s[1]], v[3], v[4], v[5], w[s[2]]]);
    let used = vec![w[s[0]], w[i], w[s[1]], w[s[2]]];
    Ok((ctx.connector(ConnectorKind::P4, seq, used)?, 3, "1"))
}
