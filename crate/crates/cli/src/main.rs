//! `statesurf` command-line tool.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use statesurf::corpus::parse_corpus;
use statesurf::graphs::ReducedGraphJson;
use statesurf::kauffman::StateComplexJson;
use statesurf::search::exhaustive_search_with_sink;
use statesurf::surface::surface_invariants;
use statesurf::{
    apply_state, build_state_graph, classify, jones::jones_with_cap, jones::DEFAULT_CROSSING_CAP, parse_pd,
    probe_special_states, reduce, run_batch, verify_polyhedral_claims, Budget, BraidWord, CorpusError,
    DiagramError, JonesError, LinkDiagram, Orientation, StateError, StateSpec,
};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "statesurf", version, about = "Kauffman states and state surfaces of link diagrams")]
struct Cli {
    /// Output format. `csv` is only meaningful for `batch`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// PD code, e.g. "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"
    #[arg(long)]
    pd: Option<String>,
    /// Braid word "strands: letters", e.g. "2: 1 1 1"
    #[arg(long)]
    braid: Option<String>,
}

#[derive(Args)]
struct StateArg {
    /// all-a, all-b, seifert, or one A/B letter per crossing
    #[arg(long, default_value = "all-a")]
    state: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and report its basic properties.
    Parse {
        #[command(flatten)]
        input: Input,
    },
    /// Apply a state: circles, segments, state graph and surface.
    State {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        state: StateArg,
    },
    /// Enumerate all states and list the adequate homogeneous ones.
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_states: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
        /// Only test all-A, all-B and the Seifert states.
        #[arg(long)]
        probe: bool,
    },
    /// Jones polynomial for the reference orientation.
    Jones {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
    },
    /// Hypotheses, surface invariants and geometric type of a state surface.
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        state: StateArg,
    },
    /// Polyhedral decomposition claims for a state.
    Polyhedra {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        state: StateArg,
    },
    /// Run classification over every entry of a corpus file.
    Batch {
        file: PathBuf,
        #[command(flatten)]
        state: StateArg,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Jones(#[from] JonesError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Data(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 3,
            _ => 2,
        }
    }
}

impl Input {
    fn diagram(&self) -> Result<LinkDiagram, CliError> {
        match (&self.pd, &self.braid) {
            (Some(pd), None) => Ok(parse_pd(pd)?),
            (None, Some(b)) => Ok(b.parse::<BraidWord>()?.closure()?),
            _ => Err(CliError::Usage("give exactly one of --pd and --braid".into())),
        }
    }
}

impl StateArg {
    fn spec(&self) -> Result<StateSpec, CliError> {
        self.state.parse().map_err(|e: StateError| CliError::Usage(e.to_string()))
    }
}

#[derive(Serialize)]
struct ParseOutput {
    crossings: usize,
    components: usize,
    writhe: i64,
    alternating: bool,
    reduced: bool,
    prime: Option<bool>,
    pd: String,
    component_labels: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct StateOutput {
    complex: StateComplexJson,
    /// Absent when the state is inadequate.
    reduced_graph: Option<ReducedGraphJson>,
    surface: statesurf::SurfaceReport,
}

#[derive(Serialize)]
struct JonesOutput {
    crossings: usize,
    writhe: i64,
    polynomial: String,
    /// `[exponent, coefficient]` pairs in decreasing order.
    terms: statesurf::JonesPolynomial,
}

fn emit<T: Serialize>(value: &T, format: Format) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
    match format {
        Format::Json => serde_json::to_string_pretty(&v).map_err(|e| CliError::Internal(e.to_string())),
        Format::Text => Ok(render::text(&v)),
        Format::Csv => Err(CliError::Usage("--format csv is only supported by batch".into())),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Parse { input } => {
            let d = input.diagram()?;
            let out = ParseOutput {
                crossings: d.crossing_count(),
                components: d.component_count(),
                writhe: d.writhe(&Orientation::reference(&d))?,
                alternating: d.is_alternating(),
                reduced: d.is_reduced(),
                prime: d.is_prime().ok(),
                pd: d.to_pd_string(),
                component_labels: d.component_labels(),
            };
            emit(&out, format)
        }
        Command::State { input, state } => {
            let d = input.diagram()?;
            let s = state.spec()?.resolve(&d)?;
            let sc = apply_state(&d, &s)?;
            let out = StateOutput {
                complex: StateComplexJson::new(&d, &sc),
                reduced_graph: reduce(&build_state_graph(&sc)).ok().map(|g| ReducedGraphJson::from(&g)),
                surface: surface_invariants(&sc, &d),
            };
            emit(&out, format)
        }
        Command::Search {
            input,
            max_states,
            max_seconds,
            cap,
            probe,
        } => {
            let d = input.diagram()?;
            if probe {
                return emit(&probe_special_states(&d), format);
            }
            let budget = Budget { max_states, max_seconds };
            let result = exhaustive_search_with_sink(&d, budget, cap, |_| {})
                .map_err(|e| CliError::Data(e.to_string()))?;
            emit(&result, format)
        }
        Command::Jones { input, cap } => {
            let d = input.diagram()?;
            let o = Orientation::reference(&d);
            let j = jones_with_cap(&d, &o, cap)?;
            let out = JonesOutput {
                crossings: d.crossing_count(),
                writhe: d.writhe(&o)?,
                polynomial: j.to_text(),
                terms: j,
            };
            emit(&out, format)
        }
        Command::Classify { input, state } => {
            let d = input.diagram()?;
            let s = state.spec()?.resolve(&d)?;
            emit(&classify(&d, &s)?, format)
        }
        Command::Polyhedra { input, state } => {
            let d = input.diagram()?;
            let s = state.spec()?.resolve(&d)?;
            emit(&verify_polyhedral_claims(&d, &s)?, format)
        }
        Command::Batch { file, state } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Data(format!("{}: {e}", file.display())))?;
            let entries = parse_corpus(&text).map_err(|e| CliError::Data(format!("{}: {e}", file.display())))?;
            let rows = run_batch(&entries, &state.spec()?);
            for r in &rows {
                if let Some(err) = &r.error {
                    eprintln!("statesurf: {}: {err}", r.name);
                }
            }
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&rows).map_err(|e| CliError::Internal(e.to_string()))?,
                Format::Text | Format::Csv => render::csv(&rows)?,
            };
            if rows.iter().any(|r| r.error.is_some()) {
                print!("{out}");
                return Err(CliError::Data("some entries failed".into()));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("statesurf: internal error: {info}")));
    let result = std::panic::catch_unwind(|| run(cli))
        .unwrap_or_else(|_| Err(CliError::Internal("panic".into())));
    match result {
        Ok(out) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("statesurf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
