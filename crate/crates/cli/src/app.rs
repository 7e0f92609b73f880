// SPDX-License-Identifier: Apache-2.0

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spapt::classify::{Classifier, DEFAULT_EPS};
use spapt::ptranspose::Qubit;
use spapt::states::{parse_state_file, StateSpec};
use spapt::SpaParameter;

use crate::report::{build_report, render_json, render_pretty, ClassifyOptions};
use crate::reproduce::{reproduce, Target};
use crate::scan::{parse_grid, scan, Family};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "spapt", version, about = "Three-qubit entanglement triage by approximate partial transposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one state given as a JSON file (or `-` for stdin) or a catalog entry.
    Classify(ClassifyArgs),
    /// Recompute a printed table or the worked examples as CSV.
    Reproduce {
        #[arg(value_enum)]
        target: TargetArg,
    },
    /// Sweep a catalog family over a parameter grid, as CSV.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TargetArg {
    Table1,
    Table2,
    Examples,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum QubitArg {
    A,
    B,
    C,
}

impl From<QubitArg> for Qubit {
    fn from(q: QubitArg) -> Self {
        match q {
            QubitArg::A => Qubit::A,
            QubitArg::B => Qubit::B,
            QubitArg::C => Qubit::C,
        }
    }
}

#[derive(Debug, Args)]
pub struct SpaFlags {
    /// SPA weight p; the threshold becomes p/8.
    #[arg(long, default_value_t = 0.8)]
    pub p: f64,
    /// Tolerance of the threshold comparison.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Include the pure-state three-tangle.
    #[arg(long)]
    pub tangle: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// State file, `-` for stdin.
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub input: Option<String>,
    /// Catalog entry and parameters, e.g. `--catalog ghz 0.6 0.8`.
    #[arg(long, num_args = 1.., allow_negative_numbers = true, value_name = "NAME [PARAMS]")]
    pub catalog: Option<Vec<String>>,
    /// Report only this cut.
    #[arg(long, value_enum, ignore_case = true)]
    pub qubit: Option<QubitArg>,
    #[command(flatten)]
    pub spa: SpaFlags,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Catalog name, or `rho2-n` for rho2 along q2 = (1 - q1)/n.
    pub family: String,
    /// One grid per family parameter, in order: start:stop:count or a comma list.
    #[arg(long = "param", allow_hyphen_values = true)]
    pub params: Vec<String>,
    #[command(flatten)]
    pub spa: SpaFlags,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn catalog_spec(words: &[String]) -> Result<StateSpec, CliError> {
    let (name, rest) = words.split_first().ok_or_else(|| CliError::Input("--catalog needs a name".into()))?;
    let params = rest
        .iter()
        .map(|w| w.parse::<f64>().map_err(|_| CliError::Input(format!("catalog parameter `{w}` is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StateSpec::catalog(name, &params))
}

fn spa_parameter(p: f64) -> Result<SpaParameter, CliError> {
    Ok(SpaParameter::new(p)?)
}

pub fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify(args) => {
            let spec = match (&args.input, &args.catalog) {
                (_, Some(words)) => catalog_spec(words)?,
                (Some(path), None) => parse_state_file(&read_input(path)?)?,
                (None, None) => return Err(CliError::Input("no input given".into())),
            };
            let opts = ClassifyOptions {
                qubit: args.qubit.map(Qubit::from),
                p: spa_parameter(args.spa.p)?,
                eps: args.spa.eps,
                tangle: args.spa.tangle,
            };
            let report = build_report(spec, &opts)?;
            Ok(if args.pretty { render_pretty(&report) } else { render_json(&report) + "\n" })
        }
        Command::Reproduce { target } => reproduce(match target {
            TargetArg::Table1 => Target::Table1,
            TargetArg::Table2 => Target::Table2,
            TargetArg::Examples => Target::Examples,
        }),
        Command::Scan(args) => {
            let family = Family::parse(&args.family)?;
            let grids = args.params.iter().map(|g| parse_grid(g)).collect::<Result<Vec<_>, _>>()?;
            if args.spa.eps.is_nan() || args.spa.eps < 0.0 {
                return Err(CliError::Input(format!("--eps must be non-negative, got {}", args.spa.eps)));
            }
            let classifier = Classifier {
                p: spa_parameter(args.spa.p)?,
                eps: args.spa.eps,
            };
            scan(family, &grids, &classifier, args.spa.tangle)
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spapt: {e}");
            e.exit_code()
        }
    }
}
