//! Exact exponential-time reference algorithms. Their job is to be obviously
//! correct at desk scale: plain depth-first extension over vertex sequences,
//! pruning only on already-used vertices, with an explicit node budget so an
//! overrun is an error and never a silent underestimate.

use crate::coloring::{binomial, Color, TwoColoring};
use crate::hypergraph::LoosePath;
use thiserror::Error;

/// Hard cap on exhaustive enumeration: at most 2^30 colorings.
pub const RAMSEY_EDGE_CAP: usize = 30;

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: DEFAULT_MAX_NODES }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget exhausted after {visited} nodes")]
    BudgetExhausted { visited: u64 },
    #[error("instance has {edges} edges, above the exhaustive cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("invalid oracle parameters: {0}")]
    BadParams(String),
}

struct Search<'a> {
    c: &'a TwoColoring,
    color: Color,
    used: Vec<bool>,
    seq: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    /// Stop as soon as a path of exactly this many edges appears.
    target: Option<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::BudgetExhausted { visited: self.nodes });
        }
        Ok(())
    }

    /// Extends the sequence ending at `last`; returns true to stop the search.
    fn extend(&mut self) -> Result<bool, OracleError> {
        self.tick()?;
        let edges = (self.seq.len() - 1) / 2;
        if self.seq.len() >= 3 && edges > (self.best.len().saturating_sub(1)) / 2 {
            self.best = self.seq.clone();
        }
        if let Some(t) = self.target {
            if edges == t {
                return Ok(true);
            }
        }
        let n = self.c.n_vertices();
        let last = *self.seq.last().unwrap();
        for a in 0..n {
            if self.used[a] {
                continue;
            }
            for b in a + 1..n {
                if self.used[b] || self.c.color_of(last, a, b) != self.color {
                    continue;
                }
                for (interior, connector) in [(a, b), (b, a)] {
                    self.used[interior] = true;
                    self.used[connector] = true;
                    self.seq.push(interior);
                    self.seq.push(connector);
                    let stop = self.extend()?;
                    self.seq.pop();
                    self.seq.pop();
                    self.used[interior] = false;
                    self.used[connector] = false;
                    if stop {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    fn run(&mut self) -> Result<(), OracleError> {
        for start in 0..self.c.n_vertices() {
            self.tick()?;
            self.used[start] = true;
            self.seq.push(start);
            let stop = self.extend()?;
            self.seq.pop();
            self.used[start] = false;
            if stop {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn search(
    c: &TwoColoring,
    color: Color,
    target: Option<usize>,
    budget: OracleBudget,
) -> Result<Option<LoosePath>, OracleError> {
    let mut s = Search {
        c,
        color,
        used: vec![false; c.n_vertices()],
        seq: Vec::with_capacity(c.n_vertices()),
        nodes: 0,
        max_nodes: budget.max_nodes,
        target,
        best: Vec::new(),
    };
    s.run()?;
    if s.best.is_empty() {
        return Ok(None);
    }
    if let Some(t) = target {
        if (s.best.len() - 1) / 2 != t {
            return Ok(None);
        }
    }
    Ok(Some(LoosePath::new(s.best).expect("search emits valid sequences")))
}

/// A maximum-length loose path with all edges of `color`, or `None` when the
/// coloring has no edge of that color at all.
pub fn longest_mono_path(
    c: &TwoColoring,
    color: Color,
    budget: OracleBudget,
) -> Result<Option<LoosePath>, OracleError> {
    search(c, color, None, budget)
}

/// Decision form with early exit: some loose path of exactly `len` edges in
/// `color`, or `None` once the full search space is exhausted.
pub fn has_mono_path(
    c: &TwoColoring,
    color: Color,
    len: usize,
    budget: OracleBudget,
) -> Result<Option<LoosePath>, OracleError> {
    if len < 1 {
        return Err(OracleError::BadParams("path length must be >= 1".into()));
    }
    search(c, color, Some(len), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyVerdict {
    Holds,
    Counterexample(TwoColoring),
}

/// Enumerates every coloring of `K^3` on `n_vertices` (bitmap counter order,
/// bit r = rank-r edge red) and reports whether each one contains a red loose
/// path of length `n` or a blue one of length `m`.
///
/// With `color_swap_symmetry` (valid only when `n == m`) the rank-0 edge is
/// fixed blue and only half the bitmaps are visited; the reported
/// counterexample is then the first within that half.
pub fn ramsey_check_exhaustive(
    n: usize,
    m: usize,
    n_vertices: usize,
    budget: OracleBudget,
    color_swap_symmetry: bool,
) -> Result<RamseyVerdict, OracleError> {
    let edges = binomial(n_vertices, 3);
    ramsey_check_range(n, m, n_vertices, 0, 1u64 << edges, budget, color_swap_symmetry)
}

/// Shard of the exhaustive check over bitmaps in `[lo, hi)`.
pub fn ramsey_check_range(
    n: usize,
    m: usize,
    n_vertices: usize,
    lo: u64,
    hi: u64,
    budget: OracleBudget,
    color_swap_symmetry: bool,
) -> Result<RamseyVerdict, OracleError> {
    if n_vertices < 3 {
        return Err(OracleError::BadParams(format!("need >= 3 vertices, got {n_vertices}")));
    }
    if n < 1 || m < 1 {
        return Err(OracleError::BadParams("path lengths must be >= 1".into()));
    }
    let edges = binomial(n_vertices, 3);
    if edges > RAMSEY_EDGE_CAP {
        return Err(OracleError::CapExceeded { edges, cap: RAMSEY_EDGE_CAP });
    }
    if color_swap_symmetry && n != m {
        return Err(OracleError::BadParams(
            "color-swap symmetry is sound only when n == m".into(),
        ));
    }
    let total = 1u64 << edges;
    if hi > total || lo > hi {
        return Err(OracleError::BadParams(format!(
            "bitmap range [{lo}, {hi}) outside [0, {total})"
        )));
    }
    let mut nodes_left = budget.max_nodes;
    for bitmap in lo..hi {
        if color_swap_symmetry && bitmap & 1 == 1 {
            continue;
        }
        let c = TwoColoring::from_bitmap(n_vertices, bitmap)
            .map_err(|e| OracleError::BadParams(e.to_string()))?;
        let per = OracleBudget { max_nodes: nodes_left };
        let mut spent = 0;
        let red = {
            let r = search_counted(&c, Color::Red, n, per, &mut spent)?;
            nodes_left = nodes_left.saturating_sub(spent);
            r
        };
        if red {
            continue;
        }
        let per = OracleBudget { max_nodes: nodes_left };
        let mut spent = 0;
        let blue = search_counted(&c, Color::Blue, m, per, &mut spent)?;
        nodes_left = nodes_left.saturating_sub(spent);
        if !blue {
            return Ok(RamseyVerdict::Counterexample(c));
        }
    }
    Ok(RamseyVerdict::Holds)
}

fn search_counted(
    c: &TwoColoring,
    color: Color,
    len: usize,
    budget: OracleBudget,
    spent: &mut u64,
) -> Result<bool, OracleError> {
    let mut s = Search {
        c,
        color,
        used: vec![false; c.n_vertices()],
        seq: Vec::with_capacity(c.n_vertices()),
        nodes: 0,
        max_nodes: budget.max_nodes,
        target: Some(len),
        best: Vec::new(),
    };
    let out = s.run();
    *spent = s.nodes;
    out?;
    Ok(!s.best.is_empty() && (s.best.len() - 1) / 2 == len)
}
