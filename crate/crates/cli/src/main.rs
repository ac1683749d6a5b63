//! `lml`: run ℒ-module tasks from a problem file or from flags.
//!
//! Exit status is 0 on success, 1 when a checked property fails and 2 on
//! malformed input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lmod_core::io::{
    build_module, deserialize_lmodule, parse_construction, parse_problem, render_json, render_table, run,
    run_validate, serialize_lmodule, sha256_hex, Outcome, ProblemSpec, Task,
};
use lmod_core::{Caps, Weight};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lml", version, about = "ℒ-module calculus engine")]
struct Cli {
    /// kostant, microsupport, vanishing, verify-lemma, oracle-compare,
    /// ic-purity, validate or build.
    task: String,

    /// TOML problem file; flags below override its fields.
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Cartan type such as `C2` or `A1xG2`.
    #[arg(long = "type")]
    cartan_type: Option<String>,

    /// Highest weight in Dynkin labels, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<i64>>,

    /// Parabolic as a list of Levi nodes (`0,2`), `[]` for the Borel or `*`.
    #[arg(long)]
    parabolic: Option<String>,

    /// igstar, ic or wc.
    #[arg(long)]
    construction: Option<String>,

    /// upper or lower (for ic).
    #[arg(long)]
    perversity: Option<String>,

    /// upper or lower (for wc).
    #[arg(long)]
    profile: Option<String>,

    /// Coordinate bound for the verify-lemma grid.
    #[arg(long)]
    grid: Option<i64>,

    /// Module file for `validate`.
    #[arg(long)]
    lmod: Option<PathBuf>,

    /// Where `build` writes its module file.
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Input(String),
}

impl From<lmod_core::Error> for Failure {
    fn from(e: lmod_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn resolve(cli: &Cli, task: Task) -> Result<ProblemSpec, Failure> {
    let mut spec = match &cli.input {
        Some(path) => {
            let mut s = parse_problem(&read(path)?)?;
            s.task = task;
            s
        }
        None => {
            let group = cli
                .cartan_type
                .as_deref()
                .ok_or_else(|| Failure::Input("either --input or --type is required".into()))?;
            let mut s = ProblemSpec::new(group, task);
            s.caps = Caps::from_env()?;
            s
        }
    };
    if let Some(t) = &cli.cartan_type {
        spec.group = t.clone();
    }
    if let Some(l) = &cli.lambda {
        spec.lambda = Some(Weight(l.clone()));
    }
    if let Some(p) = &cli.parabolic {
        spec.parabolic = Some(p.clone());
    }
    if let Some(g) = cli.grid {
        spec.grid = g;
    }
    let variant = cli.perversity.as_deref().or(cli.profile.as_deref());
    if let Some(c) = &cli.construction {
        spec.construction = parse_construction(c, variant)?;
    } else if variant.is_some() {
        let name = spec.construction.to_string();
        let base = name.split('/').next().unwrap_or("igstar");
        spec.construction = parse_construction(base, variant)?;
    }
    Ok(spec)
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let task: Task = cli.task.parse()?;
    if task == Task::Validate {
        let path = cli
            .lmod
            .as_ref()
            .ok_or_else(|| Failure::Input("validate needs --lmod FILE".into()))?;
        let text = read(path)?;
        let module = deserialize_lmodule(&text)?;
        return Ok(run_validate(&module, &Caps::from_env()?, sha256_hex(text.as_bytes()))?);
    }
    let spec = resolve(cli, task)?;
    if task == Task::Build {
        if let Some(path) = &cli.output {
            let text = serialize_lmodule(&build_module(&spec)?)?;
            std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(run(&spec)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => render_json(&outcome.report),
                Format::Table => render_table(&outcome.report),
            };
            print!("{text}");
            ExitCode::from(u8::from(outcome.findings))
        }
        Err(Failure::Input(msg)) => {
            eprintln!("lml: {msg}");
            ExitCode::from(2)
        }
    }
}
