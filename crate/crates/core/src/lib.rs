//! Combinatorial toolkit around monochromatic loose paths in 2-colored
//! complete 3-uniform hypergraphs: core types, coloring generators and
//! codecs, exact brute-force oracles, and a certified witness extractor.

#![forbid(unsafe_code)]

pub mod codec;
pub mod coloring;
pub mod extractor;
pub mod hypergraph;
pub mod oracle;

pub use coloring::{
    extremal_coloring, extremal_edge_list, plant_red_cycle, random_coloring, rank, unrank, Color,
    ColoringError, ExtremalSpec, SplitMix64, TwoColoring,
};
pub use extractor::{
    cycle_to_path, extract, find_connector, find_omega, verify_witness, Connector, ConnectorKind,
    ConnectorOutcome, ConnectorRequest, ExtractError, ExtractionTrace, GoalEscape,
    OmegaConfiguration, OmegaOutcome, Witness,
};
pub use hypergraph::{
    concat, is_loose_path, prefix, Edge, HypergraphError, LooseCycle, LoosePath, VertexWindow,
};
pub use oracle::{
    has_mono_path, longest_mono_path, ramsey_check_exhaustive, ramsey_check_range, OracleBudget,
    OracleError, RamseyVerdict,
};
