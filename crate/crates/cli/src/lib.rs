//! The `doodle` command line: argument grammar, dispatch and JSON reports.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use doodle_blocks::{auxiliary_column, census, BlocksError, Context};
use doodle_cliques::{
    degeneration_modes, degeneration_process_count, enumerate_classes, mode_count, CliqueClass,
    CliqueError, MultFilter,
};
use doodle_complex::{collide, relative_complex, ComplexError};
use doodle_diagram::{
    parse_gauss_code, parse_polyline_json, polyline_to_diagram, Basepoint, DiagramError,
    PlanarDiagram,
};
use doodle_homology::{HomologyError, Ring};
use doodle_invariants::{
    moment, moment_at_all_basepoints, order_upper_test, strangeness, InvariantError, Moment,
    SampleSpec,
};
use doodle_moves::{merkov_candidates, random_trace_with, simplify, MoveError, TraceConfig};

mod corpus;

pub use corpus::{generate_corpus, CorpusItem, CorpusManifest, CorpusSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    /// A computation contradicted itself; never a user error.
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::InconsistentProcess(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::SymbolInconsistent(_) => CliError::Internal(e.to_string()),
            InvariantError::Move(m) => m.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CliqueError> for CliError {
    fn from(e: CliqueError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<BlocksError> for CliError {
    fn from(e: BlocksError) -> Self {
        match e {
            BlocksError::Unsupported(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "doodle",
    version,
    about = "Plane curves, doodles and their finite-order invariants"
)]
pub struct Cli {
    /// Recorded in every report; drives all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, validate and describe a curve.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Index moments and the order test.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Random traces, simplification and the four-candidate pipeline.
    #[command(subcommand)]
    Moves(MovesCmd),
    /// Clique classes and their degeneration modes.
    #[command(subcommand)]
    Cliques(CliquesCmd),
    /// Relative order complexes and collision maps.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Columns of blocks of the resolved discriminant.
    #[command(subcommand)]
    Blocks(BlocksCmd),
    #[command(subcommand)]
    Report(ReportCmd),
    /// Reproducible test corpora.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Debug, Args)]
pub struct DiagramInput {
    /// A file holding a Gauss code or a polyline (JSON).
    #[arg(long, conflicts_with = "code")]
    pub input: Option<PathBuf>,
    /// A Gauss code given inline.
    #[arg(long)]
    pub code: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum DiagramCmd {
    Info(DiagramInput),
    Validate(DiagramInput),
}

#[derive(Debug, Subcommand)]
pub enum InvariantCmd {
    Moment {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value_t = 1)]
        beta: u32,
        /// Arc carrying the basepoint; every arc when omitted.
        #[arg(long)]
        arc: Option<usize>,
    },
    Strangeness(DiagramInput),
    OrderTest {
        #[arg(long, default_value_t = 1)]
        beta: u32,
        /// Claimed upper bound on the order; defaults to β + 1.
        #[arg(long)]
        order: Option<usize>,
        /// Complexity of the tested configurations; defaults to order + 1.
        #[arg(long)]
        complexity: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        seeds: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MovesCmd {
    Trace {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 10)]
        max_crossings: usize,
        /// Kinks and tangencies only.
        #[arg(long)]
        doodle: bool,
    },
    Simplify {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    Merkov {
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CliquesCmd {
    Enumerate {
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 4)]
        max_complexity: usize,
        /// Exact number of double points; any (with triple points) when omitted.
        #[arg(long)]
        doubles: Option<usize>,
    },
    Modes {
        #[arg(long)]
        class: String,
        /// List every mode, not just the counts.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComplexCmd {
    Homology {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "Z")]
        ring: Ring,
    },
    Collision {
        #[arg(long)]
        class: String,
        #[arg(long)]
        site: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlocksCmd {
    Column {
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value = "doodle")]
        context: Context,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value = "Z")]
        ring: Ring,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    Census {
        #[arg(long, default_value = "doodle")]
        context: Context,
        #[arg(long, default_value = "Z")]
        ring: Ring,
        /// Defaults to 4, or 5 for the fourfold context.
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    Generate {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_diagram(input: &DiagramInput) -> Result<PlanarDiagram, CliError> {
    let text = match (&input.input, &input.code) {
        (Some(path), _) => fs::read_to_string(path)?,
        (None, Some(code)) => code.clone(),
        (None, None) => {
            return Err(CliError::Invalid(
                "one of --input or --code is required".into(),
            ))
        }
    };
    let t = text.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        let pts = parse_polyline_json(t)?;
        Ok(polyline_to_diagram(&pts, 1e-9)?)
    } else {
        Ok(parse_gauss_code(&text)?)
    }
}

fn parse_class(s: &str) -> Result<CliqueClass, CliError> {
    Ok(s.parse()?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Diagram(DiagramCmd::Info(_)) => "diagram info",
        Command::Diagram(DiagramCmd::Validate(_)) => "diagram validate",
        Command::Invariant(InvariantCmd::Moment { .. }) => "invariant moment",
        Command::Invariant(InvariantCmd::Strangeness(_)) => "invariant strangeness",
        Command::Invariant(InvariantCmd::OrderTest { .. }) => "invariant order-test",
        Command::Moves(MovesCmd::Trace { .. }) => "moves trace",
        Command::Moves(MovesCmd::Simplify { .. }) => "moves simplify",
        Command::Moves(MovesCmd::Merkov { .. }) => "moves merkov",
        Command::Cliques(CliquesCmd::Enumerate { .. }) => "cliques enumerate",
        Command::Cliques(CliquesCmd::Modes { .. }) => "cliques modes",
        Command::Complex(ComplexCmd::Homology { .. }) => "complex homology",
        Command::Complex(ComplexCmd::Collision { .. }) => "complex collision",
        Command::Blocks(BlocksCmd::Column { .. }) => "blocks column",
        Command::Report(ReportCmd::Census { .. }) => "report census",
        Command::Corpus(CorpusCmd::Generate { .. }) => "corpus generate",
    }
}

/// Runs one parsed command, returning its result object.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Diagram(DiagramCmd::Info(input)) => {
            let d = read_diagram(input)?;
            Ok(json!({
                "gauss_code": d.to_gauss_code(),
                "crossings": d.crossing_count(),
                "diagram": to_value(&d.to_json()),
            }))
        }
        Command::Diagram(DiagramCmd::Validate(input)) => match read_diagram(input) {
            Ok(d) => Ok(json!({ "valid": true, "crossings": d.crossing_count() })),
            Err(CliError::Invalid(msg)) => {
                Err(CliError::Invalid(format!("invalid diagram: {msg}")))
            }
            Err(e) => Err(e),
        },
        Command::Invariant(InvariantCmd::Moment { input, beta, arc }) => {
            let d = read_diagram(input)?;
            match arc {
                Some(a) => Ok(
                    json!({ "beta": beta, "arc": a, "value": moment(&d, Basepoint::on_arc(*a), *beta)? }),
                ),
                None => {
                    let all = moment_at_all_basepoints(&d, *beta)?;
                    if all.windows(2).any(|w| w[0] != w[1]) {
                        return Err(CliError::Internal(format!(
                            "moment depends on the basepoint: {all:?}"
                        )));
                    }
                    Ok(
                        json!({ "beta": beta, "value": all.first().copied().unwrap_or(0), "per_arc": all }),
                    )
                }
            }
        }
        Command::Invariant(InvariantCmd::Strangeness(input)) => {
            Ok(json!({ "value": strangeness(&read_diagram(input)?)? }))
        }
        Command::Invariant(InvariantCmd::OrderTest {
            beta,
            order,
            complexity,
            seeds,
        }) => {
            let order = order.unwrap_or(*beta as usize + 1);
            let complexity = complexity.unwrap_or(order + 1);
            let spec = SampleSpec::configurations(complexity, seeds.clone());
            let report = order_upper_test(&Moment { beta: *beta }, order, &spec)?;
            Ok(json!({ "complexity": complexity, "report": to_value(&report) }))
        }
        Command::Moves(MovesCmd::Trace {
            input,
            steps,
            max_crossings,
            doodle,
        }) => {
            let d = read_diagram(input)?;
            let mut cfg = if *doodle {
                TraceConfig::doodle(*steps)
            } else {
                TraceConfig::new(*steps)
            };
            cfg.max_crossings = *max_crossings;
            let trace = random_trace_with(&d, &cfg, seed);
            let path = trace.replay()?;
            let counts: Vec<usize> = path.iter().map(PlanarDiagram::crossing_count).collect();
            Ok(json!({
                "trace": to_value(&trace),
                "end": path.last().map(PlanarDiagram::to_gauss_code),
                "crossings": counts,
            }))
        }
        Command::Moves(MovesCmd::Simplify { input, budget }) => {
            let d = read_diagram(input)?;
            let r = simplify(&d, *budget, seed);
            Ok(json!({
                "start_crossings": d.crossing_count(),
                "result": r.result.to_gauss_code(),
                "crossings": r.result.crossing_count(),
                "moves": r.moves,
                "restarts": r.restarts,
                "reached_circle": r.reached_circle,
            }))
        }
        Command::Moves(MovesCmd::Merkov { budget }) => {
            let c = merkov_candidates()?;
            let code = c.source.to_gauss_code();
            let round_trip = parse_gauss_code(&code)?.is_isomorphic(&c.source);
            let candidates: Vec<Value> = c
                .candidates
                .iter()
                .enumerate()
                .map(|(i, (sides, d))| {
                    let r = simplify(d, *budget, seed.wrapping_add(i as u64));
                    json!({
                        "sides": sides,
                        "gauss_code": d.to_gauss_code(),
                        "crossings": d.crossing_count(),
                        "is_source": d.is_isomorphic(&c.source),
                        "reduced_crossings": r.result.crossing_count(),
                        "reached_circle": r.reached_circle,
                        "moves": r.moves,
                    })
                })
                .collect();
            let trivial = candidates
                .iter()
                .filter(|v| v["reached_circle"] == true)
                .count();
            Ok(json!({
                "source": code,
                "source_crossings": c.source.crossing_count(),
                "round_trip": round_trip,
                "pattern": c.pattern,
                "candidates": candidates,
                "reached_circle": trivial,
            }))
        }
        Command::Cliques(CliquesCmd::Enumerate {
            arity,
            max_complexity,
            doubles,
        }) => {
            let filter = doubles.map_or(MultFilter::all(), MultFilter::doubles);
            let classes = enumerate_classes(*arity, *max_complexity, filter);
            let mut by_complexity = std::collections::BTreeMap::<usize, Vec<String>>::new();
            for c in &classes {
                by_complexity
                    .entry(c.complexity())
                    .or_default()
                    .push(c.to_string());
            }
            Ok(json!({ "arity": arity, "total": classes.len(), "by_complexity": by_complexity }))
        }
        Command::Cliques(CliquesCmd::Modes { class, list }) => {
            let c = parse_class(class)?;
            let mut out = json!({
                "class": c.to_string(),
                "modes": mode_count(&c)?,
                "processes": degeneration_process_count(&c)?,
            });
            if *list {
                out["mode_list"] = to_value(&degeneration_modes(&c)?);
            }
            Ok(out)
        }
        Command::Complex(ComplexCmd::Homology { class, ring }) => {
            let c = parse_class(class)?;
            let oc = relative_complex(&c);
            let groups: Vec<Value> = oc
                .homology(*ring)?
                .into_iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(d, g)| json!({ "dim": d, "group": to_value(&g), "pretty": g.pretty(*ring) }))
                .collect();
            Ok(json!({
                "class": c.to_string(),
                "ring": ring,
                "dim": oc.dim(),
                "vertices": oc.poset().len(),
                "simplices": (0..=oc.dim()).map(|d| oc.simplices(d).len()).collect::<Vec<_>>(),
                "homology": groups,
            }))
        }
        Command::Complex(ComplexCmd::Collision { class, site }) => {
            let c = parse_class(class)?;
            let col = collide(&c, *site)?;
            let (src, dst) = (relative_complex(&c), relative_complex(&col.target));
            let d = src.dim().min(dst.dim());
            let m = col.chain_map(&src, &dst, d);
            Ok(json!({
                "source": c.to_string(),
                "site": site,
                "target": col.target.to_string(),
                "same_group": col.same_group,
                "slot_map": col.slot_map,
                "chain_map_dim": d,
                "chain_map": to_value(&doodle_complex::matrix_json(&m)),
            }))
        }
        Command::Blocks(BlocksCmd::Column {
            arity,
            context,
            p,
            ring,
        }) => Ok(to_value(&auxiliary_column(*p, *arity, *context, *ring)?)),
        Command::Report(ReportCmd::Census {
            context,
            ring,
            max_order,
        }) => {
            let max = max_order.unwrap_or(if *context == Context::Fourfold { 5 } else { 4 });
            Ok(to_value(&census(*context, max, *ring)?))
        }
        Command::Corpus(CorpusCmd::Generate {
            out,
            count,
            max_crossings,
            steps,
        }) => {
            let spec = CorpusSpec {
                count: *count,
                max_crossings: *max_crossings,
                steps: *steps,
            };
            Ok(to_value(&generate_corpus(out, &spec, seed)?))
        }
    }
}

fn envelope(cli: &Cli, result: Value) -> Value {
    json!({
        "tool": "doodle",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": SCHEMA_VERSION,
        "command": command_name(&cli.command),
        "seed": cli.seed,
        "result": result,
    })
}

fn text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            if k == "result" {
                continue;
            }
            out.push_str(&format!("{k}: {}\n", compact(x)));
        }
        if let Some(Value::Object(r)) = m.get("result") {
            for (k, x) in r {
                out.push_str(&format!("  {k}: {}\n", compact(x)));
            }
        }
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

/// Parses `argv` (program name first) and runs it.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(result) => {
            let v = envelope(&cli, result);
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
                Format::Text => text(&v),
            };
            RunOutput {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let v = envelope(
                &cli,
                json!({ "error": e.to_string(), "exit_code": e.exit_code() }),
            );
            RunOutput {
                code: e.exit_code(),
                stdout: serde_json::to_string_pretty(&v).expect("json") + "\n",
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
