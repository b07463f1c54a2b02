//! `gpm`: analyze persistence modules over finite posets and check the
//! graded-module constructions from text files.
//!
//! Exit codes: 0 ok, 1 a checked property failed, 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpm_core::io::Workspace;
use gpm_core::verify::{self, VerifyConfig};
use gpm_core::{Error, FieldSpec};
use serde_json::Value;

mod report;

#[derive(Parser, Debug)]
#[command(name = "gpm", version, about = "Births, deaths and presentations of poset modules")]
struct Cli {
    /// Prime field used where a file does not name one.
    #[arg(long, global = true, default_value_t = 101)]
    field: u64,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit `key: value` lines instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Input files; later files may refer to ids from earlier ones.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Module id, needed when several are loaded.
    #[arg(long)]
    module: Option<String>,
    /// Comma-separated elements; defaults to the whole poset.
    #[arg(long)]
    set: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate files, then summarize what was loaded.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Print the canonical text form instead of a summary.
        #[arg(long)]
        normalize: bool,
    },
    /// Births, deaths, splitting dimensions and the derived predicates.
    Analyze(ModuleArgs),
    /// Minimal presentation: generator and relation degrees.
    Present(ModuleArgs),
    /// Finite support of presentation from a determining set, or the least
    /// presenting set when no set is given.
    Fsp(ModuleArgs),
    /// The colimit of the module over `{d ∈ S : d < c}` (or `d <= c`).
    Colim {
        #[command(flatten)]
        target: ModuleArgs,
        /// The element `c`.
        #[arg(long)]
        at: String,
        /// Include `c` itself in the window.
        #[arg(long)]
        inclusive: bool,
    },
    /// The canonical morphism from `ind_S res_S M` to `M`.
    Mu(ModuleArgs),
    /// Order-theoretic queries.
    Poset {
        #[arg(value_enum)]
        query: PosetQuery,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        poset: Option<String>,
        #[arg(long)]
        set: Option<String>,
        /// Largest subset size examined by `propm`.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Checks on a loaded graded algebra and act.
    Graded {
        #[arg(value_enum)]
        query: GradedQuery,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        act: Option<String>,
        /// Seed for the random module used by the round trips.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Elements `sym:point` of the smash product, for `local-unit`.
        #[arg(long)]
        set: Option<String>,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_elements: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum PosetQuery {
    Mub,
    Hat,
    Propm,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum GradedQuery {
    PhiPsi,
    GammaLambda,
    Smash,
    LocalUnit,
}

/// What a command produced: a report and whether its checks passed.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

/// A usage or input error, reported with exit code 2.
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn load(field: FieldSpec, files: &[PathBuf]) -> Result<Workspace, Failure> {
    let mut ws = Workspace::with_default_field(field);
    for f in files {
        ws.load_file(f).map_err(|e| Failure(format!("{}: {e}", f.display())))?;
    }
    Ok(ws)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let field = FieldSpec::new(cli.field)?;
    match &cli.command {
        Command::Check { files, normalize } => {
            let ws = load(field, files)?;
            if *normalize {
                return Ok(Outcome {
                    value: Value::String(ws.serialize()),
                    ok: true,
                });
            }
            Ok(report::check(&ws))
        }
        Command::Analyze(a) => {
            let ws = load(field, &a.files)?;
            report::analyze(&ws, a.module.as_deref(), a.set.as_deref())
        }
        Command::Present(a) => {
            let ws = load(field, &a.files)?;
            report::present(&ws, a.module.as_deref(), a.set.as_deref())
        }
        Command::Fsp(a) => {
            let ws = load(field, &a.files)?;
            report::fsp(&ws, a.module.as_deref(), a.set.as_deref())
        }
        Command::Colim { target, at, inclusive } => {
            let ws = load(field, &target.files)?;
            report::colim(&ws, target.module.as_deref(), target.set.as_deref(), at, !inclusive)
        }
        Command::Mu(a) => {
            let ws = load(field, &a.files)?;
            report::mu(&ws, a.module.as_deref(), a.set.as_deref())
        }
        Command::Poset {
            query,
            files,
            poset,
            set,
            max_size,
        } => {
            let ws = load(field, files)?;
            let (_, p) = ws.poset(poset.as_deref())?;
            match query {
                PosetQuery::Mub => report::mub(p, set.as_deref()),
                PosetQuery::Hat => report::hat(p, set.as_deref()),
                PosetQuery::Propm => Ok(report::propm(p, *max_size)),
            }
        }
        Command::Graded {
            query,
            files,
            algebra,
            act,
            seed,
            set,
        } => {
            let ws = load(field, files)?;
            report::graded(&ws, *query, algebra.as_deref(), act.as_deref(), *seed, set.as_deref())
        }
        Command::Verify {
            suite,
            cases,
            seed,
            max_elements,
            max_dim,
        } => {
            let config = VerifyConfig {
                suite: suite.clone(),
                seed: *seed,
                cases: *cases,
                max_elements: *max_elements,
                max_dim: *max_dim,
                field,
            };
            let r = verify::run(&config)?;
            for (seed, msg) in &r.messages {
                eprintln!("seed {seed}: {msg}");
            }
            Ok(Outcome {
                ok: r.passed(),
                value: report::verify(&r),
            })
        }
    }
}

fn render_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
        other => format!("{other}\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.text {
                print!("{}", render_text(&out.value));
            } else if let Value::String(s) = &out.value {
                print!("{s}");
            } else {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("values serialize"));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
