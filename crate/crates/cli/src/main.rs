//! Command-line surface for the loose-path toolkit: generators, the witness
//! extractor, exact oracles, and the witness checker, wired for reproducible
//! batch runs. Machine output goes to files; stdout carries one summary line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 verification failure,
//! 4 counterexample found.

use clap::{Args, Parser, Subcommand, ValueEnum};
use loosepath_core::codec::{self, Format};
use loosepath_core::{
    extract, extremal_coloring, extremal_edge_list, has_mono_path, longest_mono_path,
    ramsey_check_range, random_coloring, verify_witness, Color, ExtractError, ExtractionTrace,
    ExtremalSpec, OracleBudget, OracleError, RamseyVerdict, TwoColoring,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_INVALID: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "loosepath",
    version,
    about = "Monochromatic loose paths in 2-colored complete 3-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the lower-bound coloring for path lengths n >= m.
    Extremal(ExtremalArgs),
    /// Write a seeded pseudo-random coloring.
    Random(RandomArgs),
    /// Extract a red length-n or blue length-m witness from a coloring.
    Extract(ExtractArgs),
    /// Exact brute-force oracles.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Check a witness file against a coloring.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Edge size; extraction-compatible output needs k = 3.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    vertices: usize,
    #[arg(long)]
    seed: u64,
    /// An edge is red iff its 64-bit draw is below this numerator.
    #[arg(long = "red-prob", default_value_t = 1u64 << 63)]
    red_prob: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// JSON-lines log of the extraction steps.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = loosepath_core::oracle::DEFAULT_MAX_NODES)]
    budget: u64,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Length of a maximum monochromatic loose path.
    Longest {
        #[arg(long, value_enum)]
        color: ColorArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = loosepath_core::oracle::DEFAULT_MAX_NODES)]
        budget: u64,
    },
    /// Decide whether a monochromatic loose path of a given length exists.
    Exists {
        #[arg(long, value_enum)]
        color: ColorArg,
        #[arg(long)]
        length: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = loosepath_core::oracle::DEFAULT_MAX_NODES)]
        budget: u64,
    },
    /// Exhaustively check all colorings of a small complete hypergraph.
    Ramsey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = loosepath_core::oracle::DEFAULT_MAX_NODES)]
        budget: u64,
        /// Fix the color of the rank-0 edge (sound only for n = m).
        #[arg(long)]
        symmetry: bool,
        /// Partition the bitmap space into this many contiguous shards.
        #[arg(long)]
        shards: Option<u64>,
        #[arg(long = "shard-id")]
        shard_id: Option<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    witness: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Bits,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Bits => Format::Bits,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Red,
    Blue,
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Color {
        match c {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::invalid(e.to_string())
    }
}

impl From<ExtractError> for Failure {
    fn from(e: ExtractError) -> Self {
        match e {
            ExtractError::Internal(_) => Failure { code: EXIT_VERIFY, message: e.to_string() },
            _ => Failure::invalid(e.to_string()),
        }
    }
}

fn read_coloring(path: &Path) -> Result<TwoColoring, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    codec::decode(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Extremal(a) => cmd_extremal(a),
        Cmd::Random(a) => cmd_random(a),
        Cmd::Extract(a) => cmd_extract(a),
        Cmd::Oracle { cmd } => cmd_oracle(cmd),
        Cmd::Verify(a) => cmd_verify(a),
    }
}

fn cmd_extremal(a: ExtremalArgs) -> Result<u8, Failure> {
    let spec = ExtremalSpec { k: a.k, n: a.n, m: a.m };
    spec.validate().map_err(|e| Failure::invalid(e.to_string()))?;
    if a.k == 3 {
        let c = extremal_coloring(a.n, a.m).map_err(|e| Failure::invalid(e.to_string()))?;
        write_file(&a.out, &codec::encode(&c, a.format.into()))?;
        println!(
            "extremal: k=3 n={} m={} -> {} vertices, {} red edges -> {}",
            a.n,
            a.m,
            c.n_vertices(),
            c.count(Color::Red),
            a.out.display()
        );
    } else {
        if matches!(a.format, FormatArg::Bits) {
            return Err(Failure::invalid("bitmap format is defined only for k = 3"));
        }
        let list = extremal_edge_list(spec).map_err(|e| Failure::invalid(e.to_string()))?;
        let red: Vec<&Vec<usize>> =
            list.iter().filter(|(_, c)| *c == Color::Red).map(|(e, _)| e).collect();
        let doc = serde_json::json!({
            "k": a.k,
            "n_vertices": spec.total_vertices(),
            "red_edges": red,
        });
        write_file(&a.out, &doc.to_string())?;
        println!(
            "extremal: k={} n={} m={} -> {} vertices, {} red edges -> {}",
            a.k,
            a.n,
            a.m,
            spec.total_vertices(),
            red.len(),
            a.out.display()
        );
    }
    Ok(0)
}

fn cmd_random(a: RandomArgs) -> Result<u8, Failure> {
    let c = random_coloring(a.vertices, a.seed, a.red_prob)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    write_file(&a.out, &codec::encode(&c, a.format.into()))?;
    println!(
        "random: vertices={} seed={} red-prob={} -> {} red / {} blue -> {}",
        a.vertices,
        a.seed,
        a.red_prob,
        c.count(Color::Red),
        c.count(Color::Blue),
        a.out.display()
    );
    Ok(0)
}

fn cmd_extract(a: ExtractArgs) -> Result<u8, Failure> {
    let c = read_coloring(&a.input)?;
    let mut trace = ExtractionTrace::default();
    let started = Instant::now();
    let witness = extract(&c, a.n, a.m, OracleBudget { max_nodes: a.budget }, &mut trace)?;
    let elapsed = started.elapsed();
    if !verify_witness(&c, &witness, a.n, a.m) {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: "extracted witness failed verification".into(),
        });
    }
    write_file(&a.out, &codec::encode_witness(&witness))?;
    if let Some(tp) = &a.trace {
        write_file(tp, &trace.to_jsonl())?;
    }
    println!(
        "extract: n={} m={} vertices={} -> {} witness of length {} in {:.1?} -> {}",
        a.n,
        a.m,
        c.n_vertices(),
        witness.color,
        witness.path.len(),
        elapsed,
        a.out.display()
    );
    Ok(0)
}

fn cmd_oracle(cmd: OracleCmd) -> Result<u8, Failure> {
    match cmd {
        OracleCmd::Longest { color, input, out, budget } => {
            let c = read_coloring(&input)?;
            let color: Color = color.into();
            let found = longest_mono_path(&c, color, OracleBudget { max_nodes: budget })?;
            match found {
                Some(p) => {
                    if let Some(out) = out {
                        let w = loosepath_core::Witness { color, path: p.clone() };
                        write_file(&out, &codec::encode_witness(&w))?;
                    }
                    println!("oracle longest: {color} -> {} {:?}", p.len(), p.vertices());
                }
                None => println!("oracle longest: {color} -> no {color} edge"),
            }
            Ok(0)
        }
        OracleCmd::Exists { color, length, input, out, budget } => {
            let c = read_coloring(&input)?;
            let color: Color = color.into();
            let found = has_mono_path(&c, color, length, OracleBudget { max_nodes: budget })?;
            match found {
                Some(p) => {
                    if let Some(out) = out {
                        let w = loosepath_core::Witness { color, path: p.clone() };
                        write_file(&out, &codec::encode_witness(&w))?;
                    }
                    println!("oracle exists: {color} length {length} -> found {:?}", p.vertices());
                }
                None => println!("oracle exists: {color} length {length} -> absent (search exhausted)"),
            }
            Ok(0)
        }
        OracleCmd::Ramsey { n, m, vertices, out, budget, symmetry, shards, shard_id } => {
            let edges = loosepath_core::coloring::binomial(vertices, 3);
            if edges > loosepath_core::oracle::RAMSEY_EDGE_CAP {
                return Err(Failure::invalid(format!(
                    "{edges} edges exceeds the exhaustive cap of {}",
                    loosepath_core::oracle::RAMSEY_EDGE_CAP
                )));
            }
            let total = 1u64 << edges;
            let (lo, hi, shard_note) = match (shards, shard_id) {
                (None, None) => (0, total, String::new()),
                (Some(s), Some(id)) => {
                    if s == 0 || id >= s {
                        return Err(Failure::invalid("need shards >= 1 and shard-id < shards"));
                    }
                    if symmetry {
                        return Err(Failure::invalid("--symmetry cannot be combined with shards"));
                    }
                    let chunk = total / s;
                    let rem = total % s;
                    let lo = id * chunk + id.min(rem);
                    let hi = lo + chunk + u64::from(id < rem);
                    (lo, hi, format!(" shard {id}/{s}"))
                }
                _ => return Err(Failure::invalid("--shards and --shard-id go together")),
            };
            let verdict = ramsey_check_range(
                n,
                m,
                vertices,
                lo,
                hi,
                OracleBudget { max_nodes: budget },
                symmetry,
            )?;
            match verdict {
                RamseyVerdict::Holds => {
                    println!(
                        "oracle ramsey: n={n} m={m} vertices={vertices}{shard_note} -> holds over {} colorings",
                        hi - lo
                    );
                    Ok(0)
                }
                RamseyVerdict::Counterexample(c) => {
                    if let Some(out) = out {
                        write_file(&out, &codec::encode(&c, Format::Bits))?;
                        println!(
                            "oracle ramsey: n={n} m={m} vertices={vertices}{shard_note} -> counterexample -> {}",
                            out.display()
                        );
                    } else {
                        println!(
                            "oracle ramsey: n={n} m={m} vertices={vertices}{shard_note} -> counterexample {}",
                            codec::encode(&c, Format::Bits)
                        );
                    }
                    Ok(EXIT_COUNTEREXAMPLE)
                }
            }
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let c = read_coloring(&a.input)?;
    let text = std::fs::read_to_string(&a.witness)
        .map_err(|e| Failure::invalid(format!("{}: {e}", a.witness.display())))?;
    let w = codec::decode_witness(&text)
        .map_err(|e| Failure::invalid(format!("{}: {e}", a.witness.display())))?;
    if verify_witness(&c, &w, a.n, a.m) {
        println!("verify: {} witness of length {} -> valid", w.color, w.path.len());
        Ok(0)
    } else {
        println!("verify: {} witness of length {} -> INVALID", w.color, w.path.len());
        Ok(EXIT_VERIFY)
    }
}
