//! `bitload`: build, lower, simulate and account for data-loading circuits.
//!
//! Exit status: 0 when the command succeeds (and any assertion holds), 1 when
//! an assertion fails, 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod circuit_cmds;
mod codec_cmds;
mod output;
mod table_cmds;

use output::Format;

#[derive(Parser)]
#[command(name = "bitload", version, about = "Quantum data-loading circuit compiler and exact simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a loader circuit and write it in text form.
    Build(circuit_cmds::BuildArgs),
    /// Simulate a circuit file.
    Sim(circuit_cmds::SimArgs),
    /// Apply decomposition passes to a circuit file.
    Lower(circuit_cmds::LowerArgs),
    /// Compare a gate decomposition with the gate it replaces.
    VerifyDecomp(circuit_cmds::VerifyArgs),
    /// Closed-form versus measured resource counts.
    Resources(table_cmds::ResourcesArgs),
    /// Measured depths against the closed-form depth formulas.
    Depth(table_cmds::DepthArgs),
    /// Binary entropy, compressed length and qubit savings.
    Entropy(table_cmds::EntropyArgs),
    /// Encode a block with the bounded-weight enumerative code.
    Compress(codec_cmds::CompressArgs),
    /// Encode, load, decode reversibly and simulate.
    Pipeline(codec_cmds::PipelineArgs),
    /// Print the classical decoder netlist for a code.
    DecodeNetlist(codec_cmds::DecodeNetlistArgs),
}

/// Whether the command's checks held.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Args, Clone)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Writes `text` to `path`, or to stdout when `path` is absent.
pub fn emit(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Build(a) => circuit_cmds::build(a, out),
        Command::Sim(a) => circuit_cmds::sim(a, out),
        Command::Lower(a) => circuit_cmds::lower(a, out),
        Command::VerifyDecomp(a) => circuit_cmds::verify(a, out),
        Command::Resources(a) => table_cmds::resources(a, out),
        Command::Depth(a) => table_cmds::depth(a, out),
        Command::Entropy(a) => table_cmds::entropy(a, out),
        Command::Compress(a) => codec_cmds::compress(a, out),
        Command::Pipeline(a) => codec_cmds::pipeline(a, out),
        Command::DecodeNetlist(a) => codec_cmds::decode_netlist(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
