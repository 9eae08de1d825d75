//! Constructive witness extraction: given any total 2-coloring of the
//! complete 3-uniform hypergraph on `2n + floor((m+1)/2)` vertices with
//! `n >= floor(5m/4)`, produce a red loose path of length `n` or a blue loose
//! path of length `m`, certified by [`verify_witness`].
//!
//! The step procedures never assume a host path is globally maximum. Each one
//! promises either the structure it is named for or a `GoalEscape`: a strictly
//! longer monochromatic path in the host's color, which at the lengths the
//! driver uses already contains the final answer.

mod blue_chain;
mod connector;
mod cycle;
mod omega;
mod red_chain;
mod trace;

pub use blue_chain::blue_from_max_red;
pub use connector::{find_connector, Connector, ConnectorKind, ConnectorOutcome, ConnectorRequest};
pub use cycle::cycle_to_path;
pub use omega::{find_omega, OmegaConfiguration, OmegaOutcome};
pub use red_chain::{red_from_max_blue, RedChainOutcome};
pub use trace::{ExtractionTrace, TraceEvent};

use crate::coloring::{Color, ColoringError, TwoColoring};
use crate::hypergraph::{prefix, HypergraphError, LoosePath};
use crate::oracle::{has_mono_path, OracleBudget, OracleError};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal contract violation: {0}")]
    Internal(String),
}

impl From<HypergraphError> for ExtractError {
    fn from(e: HypergraphError) -> Self {
        ExtractError::Internal(e.to_string())
    }
}

impl From<ColoringError> for ExtractError {
    fn from(e: ColoringError) -> Self {
        ExtractError::Precondition(e.to_string())
    }
}

/// A monochromatic loose path of the demanded exact length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub color: Color,
    pub path: LoosePath,
}

/// A monochromatic path that already meets or exceeds the global target in
/// its color; callers trim it with [`prefix`] before emitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoalEscape {
    pub color: Color,
    pub path: LoosePath,
}

/// True iff `w` is a valid loose path of exactly the demanded length (`n` for
/// red, `m` for blue) whose edges all have `w.color` under `c`.
pub fn verify_witness(c: &TwoColoring, w: &Witness, n: usize, m: usize) -> bool {
    let want = match w.color {
        Color::Red => n,
        Color::Blue => m,
    };
    if w.path.len() != want {
        return false;
    }
    if w.path.vertices().iter().any(|&v| v >= c.n_vertices()) {
        return false;
    }
    w.path.edges().iter().all(|&e| c.color(e) == w.color)
}

/// Instances at or below this target are answered by exhaustive search; the
/// step procedures need hosts of at least four edges and seven-ish free
/// vertices, which only exist from m = 5 upward.
const BASE_M: usize = 4;

pub fn required_vertices(n: usize, m: usize) -> usize {
    2 * n + m.div_ceil(2)
}

fn check_instance(c: &TwoColoring, n: usize, m: usize) -> Result<usize, ExtractError> {
    if m < 1 || n < (5 * m) / 4 {
        return Err(ExtractError::Precondition(format!(
            "need n >= floor(5m/4) >= 1, got n={n} m={m}"
        )));
    }
    let need = required_vertices(n, m);
    if c.n_vertices() < need {
        return Err(ExtractError::Precondition(format!(
            "need {need} vertices for (n={n}, m={m}), coloring has {}",
            c.n_vertices()
        )));
    }
    Ok(need)
}

/// Extracts a red length-`n` or blue length-`m` loose path from the lowest
/// `2n + floor((m+1)/2)` vertices of `c`, logging one event per step.
pub fn extract(
    c: &TwoColoring,
    n: usize,
    m: usize,
    budget: OracleBudget,
    trace: &mut ExtractionTrace,
) -> Result<Witness, ExtractError> {
    let need = check_instance(c, n, m)?;
    let cc = c.restrict(need)?;

    if m <= BASE_M {
        trace.push(
            "Driver",
            json!({"n": n, "m": m, "vertices": need, "branch": "base"}),
            "goal",
            json!({}),
        );
        if let Some(p) = has_mono_path(&cc, Color::Red, n, budget)? {
            return Ok(Witness { color: Color::Red, path: p });
        }
        if let Some(p) = has_mono_path(&cc, Color::Blue, m, budget)? {
            return Ok(Witness { color: Color::Blue, path: p });
        }
        return Err(ExtractError::Internal(format!(
            "exhaustive search found neither a red P_{n} nor a blue P_{m} on {need} vertices"
        )));
    }

    let witness = if n == (5 * m) / 4 {
        trace.push(
            "Driver",
            json!({"n": n, "m": m, "vertices": need, "branch": "descend-both"}),
            "goal",
            json!({}),
        );
        let sub = extract(&cc, n - 1, m - 1, budget, trace)?;
        match sub.color {
            Color::Red => blue_from_max_red(&cc, &sub.path, n, m, trace)?,
            Color::Blue => {
                let red = match red_from_max_blue(&cc, &sub.path, n, m, trace)? {
                    RedChainOutcome::Red(p) => prefix(&p, n - 1)?,
                    RedChainOutcome::Goal(g) => {
                        return normalize(g, n, m);
                    }
                };
                blue_from_max_red(&cc, &red, n, m, trace)?
            }
        }
    } else {
        trace.push(
            "Driver",
            json!({"n": n, "m": m, "vertices": need, "branch": "descend-red"}),
            "goal",
            json!({}),
        );
        let sub = extract(&cc, n - 1, m, budget, trace)?;
        match sub.color {
            Color::Blue => sub,
            Color::Red => blue_from_max_red(&cc, &sub.path, n, m, trace)?,
        }
    };

    let witness = normalize(GoalEscape { color: witness.color, path: witness.path }, n, m)?;
    if !verify_witness(&cc, &witness, n, m) {
        return Err(ExtractError::Internal(format!(
            "extracted witness fails its own checker at (n={n}, m={m})"
        )));
    }
    Ok(witness)
}

/// Trims an over-long monochromatic path to the exact demanded length.
fn normalize(g: GoalEscape, n: usize, m: usize) -> Result<Witness, ExtractError> {
    let want = match g.color {
        Color::Red => n,
        Color::Blue => m,
    };
    if g.path.len() < want {
        return Err(ExtractError::Internal(format!(
            "goal path of length {} is below the {} target {want}",
            g.path.len(),
            g.color
        )));
    }
    Ok(Witness { color: g.color, path: prefix(&g.path, want)? })
}
