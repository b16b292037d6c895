use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;

use bitload::compressor::{run_pipeline, CodecSpec};
use bitload::families::BitVector;

use crate::Outcome;

/// Codes are built so that a source block exceeds the weight bound with at
/// most this probability.
const WEIGHT_TAIL: f64 = 1e-3;

#[derive(Args)]
pub struct CompressArgs {
    /// Block to encode.
    #[arg(long)]
    bits: String,
    /// Source probability of a one; sets the weight bound unless --weight is given.
    #[arg(long)]
    p: Option<f64>,
    /// Block length (defaults to the length of --bits).
    #[arg(long)]
    n: Option<usize>,
    /// Largest admissible block weight.
    #[arg(long)]
    weight: Option<usize>,
}

pub fn compress(a: CompressArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let bits: BitVector = a.bits.parse()?;
    let n = a.n.unwrap_or(bits.len());
    if n != bits.len() {
        bail!("--n is {n} but --bits has {} bits", bits.len());
    }
    let mut spec = match (a.weight, a.p) {
        (Some(w), _) => CodecSpec::enumerative(n, w)?,
        (None, Some(p)) => CodecSpec::for_source(p, n, WEIGHT_TAIL)?,
        (None, None) => bail!("give --p or --weight"),
    };
    if let Some(p) = a.p {
        bitload::resources::entropy_l(p)?;
        spec.p = Some(p);
    }
    let code = spec.encode(&bits)?;
    write!(out, "{spec}")?;
    writeln!(out, "codeword {code}")?;
    writeln!(out, "admissible {}", spec.admissible_count())?;
    if let Some(p) = spec.p {
        let plan = bitload::resources::savings(p, n)?;
        writeln!(out, "entropy-model L={} M={} savings={}", plan.entropy, plan.compressed_len, plan.savings)?;
    }
    writeln!(out, "code-savings {}", n - spec.codeword_len)?;
    Ok(Outcome::Pass)
}

fn read_spec(path: &PathBuf) -> anyhow::Result<CodecSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(CodecSpec::parse(&text)?)
}

#[derive(Args)]
pub struct PipelineArgs {
    /// Code description (`key = value` lines).
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    bits: String,
}

pub fn pipeline(a: PipelineArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let spec = read_spec(&a.spec)?;
    let report = run_pipeline(&a.bits.parse()?, &spec)?;
    writeln!(out, "input {}", report.input)?;
    writeln!(out, "codeword {}", report.codeword)?;
    writeln!(out, "recovered {}", report.recovered)?;
    writeln!(out, "loaded-qubits {} uncompressed-qubits {}", report.loaded_qubits, report.uncompressed_qubits)?;
    writeln!(
        out,
        "total-qubits {} decoder-gates {} decoder-ancillas {} decoder-serialized-depth {}",
        report.total_qubits, report.decoder_gates, report.decoder_ancillas, report.decoder_serialized_depth
    )?;
    if let Some(plan) = &report.plan {
        writeln!(out, "entropy-model M={} savings={}", plan.compressed_len, plan.savings)?;
    }
    writeln!(out, "{}", if report.success { "PASS" } else { "FAIL" })?;
    Ok(if report.success { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Args)]
pub struct DecodeNetlistArgs {
    #[arg(long)]
    spec: PathBuf,
}

pub fn decode_netlist(a: DecodeNetlistArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let spec = read_spec(&a.spec)?;
    write!(out, "{}", spec.decode_netlist())?;
    Ok(Outcome::Pass)
}
