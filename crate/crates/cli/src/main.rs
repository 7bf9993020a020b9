use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nccurv::io::{
    parse_model, render, render_model, run_pipeline, validate_model, verification_report, Format, PipelineOptions,
    Target, TensorReport,
};
use nccurv::models::bicrossproduct_model;
use nccurv::Error;

#[derive(Parser)]
#[command(name = "nccurv", version, about = "First-order curvature of Lie-algebraic noncommutative spacetimes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and check its algebra and calculus
    Validate(ModelArgs),
    /// Check that the metric is central
    Centrality(ModelArgs),
    /// Solve the centrality condition for the symmetric constants
    SolveS(ModelArgs),
    /// Christoffel symbols, corrected to first order unless `--order 0`
    Christoffel {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        order: u8,
    },
    /// Riemann tensor
    Riemann(ModelArgs),
    /// Ricci tensor, and the scalar when a metric is given
    Ricci(ModelArgs),
    /// Einstein tensor
    Einstein(ModelArgs),
    /// Reproduce the published bicrossproduct results
    VerifyBicrossproduct(OutputArgs),
    /// Print the built-in bicrossproduct model file
    ExportModel {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    file: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fail on Jacobi or antisymmetry violations instead of warning
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Engine(Error),
}

fn error_json(f: &Failure) -> serde_json::Value {
    match f {
        Failure::Io(path, e) => json!({
            "error": { "kind": "io", "message": format!("{}: {e}", path.display()) }
        }),
        Failure::Engine(e) => {
            let (stage, inner) = match e {
                Error::Stage { stage, source } => (Some(stage.as_str()), source.as_ref()),
                other => (None, other),
            };
            let locations: Vec<_> = match inner {
                Error::Model(errs) => errs
                    .iter()
                    .map(|p| json!({ "line": p.line, "column": p.column, "message": p.message }))
                    .collect(),
                Error::Parse(p) => vec![json!({ "line": p.line, "column": p.column, "message": p.message })],
                _ => Vec::new(),
            };
            json!({
                "error": {
                    "kind": e.kind(),
                    "stage": stage,
                    "message": inner.to_string(),
                    "locations": locations,
                }
            })
        }
    }
}

fn load(path: &Path) -> Result<nccurv::io::ParsedModel, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    parse_model(&text).map_err(Failure::Engine)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.to_owned(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn model_report(args: &ModelArgs, targets: &[Target], classical: bool) -> Result<TensorReport, Failure> {
    let parsed = load(&args.file)?;
    let opts = PipelineOptions { strict: args.output.strict, classical_christoffel: classical };
    let mut report = if targets.is_empty() {
        validate_model(&parsed.spec, &opts)
    } else {
        run_pipeline(&parsed.spec, targets, &opts)
    }
    .map_err(Failure::Engine)?;
    report.provenance.extend(parsed.notices.into_iter().map(|n| format!("notice: {n}")));
    Ok(report)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (report, output) = match &cli.command {
        Command::ExportModel { out } => {
            emit(&render_model(&bicrossproduct_model()), out.as_deref())?;
            return Ok(true);
        }
        Command::VerifyBicrossproduct(o) => (verification_report().map_err(Failure::Engine)?, o),
        Command::Validate(m) => (model_report(m, &[], false)?, &m.output),
        Command::Centrality(m) => (model_report(m, &[Target::Centrality], false)?, &m.output),
        Command::SolveS(m) => (model_report(m, &[Target::SolveS], false)?, &m.output),
        Command::Christoffel { model, order } => {
            (model_report(model, &[Target::Christoffel], *order == 0)?, &model.output)
        }
        Command::Riemann(m) => (model_report(m, &[Target::Riemann], false)?, &m.output),
        Command::Ricci(m) => {
            let parsed_has_metric = load(&m.file)?.spec.metric.is_some();
            let targets: &[Target] =
                if parsed_has_metric { &[Target::Ricci, Target::Scalar] } else { &[Target::Ricci] };
            (model_report(m, targets, false)?, &m.output)
        }
        Command::Einstein(m) => (model_report(m, &[Target::Einstein], false)?, &m.output),
    };
    emit(&render(&report, output.format.into()), output.out.as_deref())?;
    Ok(report.ok())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", error_json(&f));
            ExitCode::from(2)
        }
    }
}
