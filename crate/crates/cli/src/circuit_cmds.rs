use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};

use bitload::families::{BitVector, Family};
use bitload::ir::{self, Circuit, Gate};
use bitload::passes::{self, CswapLowering, PassReport};
use bitload::resources::empirical_for;
use bitload::sim::{self, BasisLabel, UnitaryComparison, FIDELITY_TOL};

use crate::{emit, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PassName {
    SwapToCnot,
    CswapThreeToffoli,
    CswapToffoliSandwich,
    ToffoliPhase,
}

fn apply_pass(c: &Circuit, p: PassName) -> (Circuit, PassReport) {
    match p {
        PassName::SwapToCnot => passes::lower_swap_to_cnot(c),
        PassName::CswapThreeToffoli => passes::lower_cswap(c, CswapLowering::ThreeToffoli),
        PassName::CswapToffoliSandwich => passes::lower_cswap(c, CswapLowering::ToffoliSandwich),
        PassName::ToffoliPhase => passes::lower_toffoli(c),
    }
}

fn describe(report: &PassReport) -> String {
    let fmt = |m: &std::collections::BTreeMap<ir::GateKind, usize>| {
        m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    };
    let mut s = format!("# pass {}: before [{}] after [{}]", report.pass, fmt(&report.before), fmt(&report.after));
    if let Some(v) = &report.verdict {
        s.push_str(&format!(" verdict {}", verdict_text(v)));
    }
    s
}

pub fn verdict_text(v: &UnitaryComparison) -> String {
    match v {
        UnitaryComparison::Exact => "exact".to_string(),
        UnitaryComparison::GlobalPhase { phase } => format!("global-phase {} {}", phase.re, phase.im),
        UnitaryComparison::Differs { max_deviation, entries } => {
            format!("differs max-deviation {max_deviation} entries {}", entries.len())
        }
    }
}

pub fn read_bits(bits: Option<&str>, file: Option<&PathBuf>) -> anyhow::Result<BitVector> {
    match (bits, file) {
        (Some(s), None) => Ok(s.parse()?),
        (None, Some(p)) => {
            let bytes = std::fs::read(p).with_context(|| format!("cannot read {}", p.display()))?;
            Ok(BitVector::from_bytes(&bytes)?)
        }
        _ => bail!("give exactly one of --bits and --bits-file"),
    }
}

fn read_circuit(path: &PathBuf) -> anyhow::Result<Circuit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ir::parse(&text).with_context(|| format!("{}", path.display()))
}

#[derive(Args)]
pub struct BuildArgs {
    /// Loader family: 1, 2ne, 2e or 3.
    #[arg(long)]
    family: Family,
    /// Bits as a string of 0/1 characters.
    #[arg(long)]
    bits: Option<String>,
    /// Raw binary file, most significant bit of each byte first.
    #[arg(long)]
    bits_file: Option<PathBuf>,
    /// Circuit output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decomposition passes applied in order.
    #[arg(long = "pass", value_enum)]
    passes: Vec<PassName>,
}

pub fn build(a: BuildArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let bits = read_bits(a.bits.as_deref(), a.bits_file.as_ref())?;
    let result = a.family.build(&bits);
    let report = empirical_for(&result);
    let mut circuit = result.circuit.clone();
    let mut notes = Vec::new();
    for p in &a.passes {
        let (c, rep) = apply_pass(&circuit, *p);
        notes.push(describe(&rep));
        circuit = c;
    }
    let mut summary = format!(
        "# family {} bits {} padded {} qubits {} gates {} slice-depth {} serialized-depth {}\n",
        result.family,
        result.input_len,
        result.input_len + result.padding,
        circuit.num_qubits(),
        circuit.gate_count(),
        circuit.slice_depth(),
        circuit.serialized_depth()
    );
    let counts: Vec<String> = report.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    summary.push_str(&format!(
        "# counts {} resets {} final-qubits {} peak-qubits {}\n",
        counts.join(" "),
        report.reset_flips,
        report.final_total_qubits.unwrap_or(0),
        report.peak_total_qubits.unwrap_or(0)
    ));
    let outputs: Vec<String> = result.output_qubits.iter().map(|q| q.to_string()).collect();
    summary.push_str(&format!("# output-qubits {}\n", outputs.join(" ")));
    for n in notes {
        summary.push_str(&n);
        summary.push('\n');
    }
    let text = ir::to_text(&circuit);
    match &a.out {
        Some(_) => {
            emit(a.out.as_ref(), &text, out)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            // Comments first so the whole stream still parses as a circuit.
            out.write_all(summary.as_bytes())?;
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    /// `sqrt(<t|ρ|t>)` of the output register's reduced state.
    Coherent,
    /// Overlap of measurement distributions.
    Basis,
}

#[derive(Args)]
pub struct SimArgs {
    /// Circuit file.
    circuit: PathBuf,
    /// Input basis label (all zeros when absent).
    #[arg(long)]
    input: Option<String>,
    /// Print every nonzero amplitude as `bitstring re im`.
    #[arg(long)]
    dump: bool,
    /// Print the measurement distribution of these qubits (comma separated).
    #[arg(long, value_delimiter = ',')]
    marginal: Vec<usize>,
    /// `FAMILY:BITS`; checks the output register of that build against its
    /// target state.
    #[arg(long)]
    assert_target: Option<String>,
    #[arg(long, value_enum, default_value = "coherent")]
    metric: Metric,
}

pub fn sim(a: SimArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let circuit = read_circuit(&a.circuit)?;
    let input = match &a.input {
        Some(s) => s.parse::<BasisLabel>()?,
        None => BasisLabel::zeros(circuit.num_qubits()),
    };
    let state = sim::run(&circuit, &input)?;
    if a.dump {
        out.write_all(state.dump().as_bytes())?;
    }
    if !a.marginal.is_empty() {
        for (label, p) in state.marginal(&a.marginal)? {
            writeln!(out, "{label} {p}")?;
        }
    }
    let Some(spec) = &a.assert_target else {
        return Ok(Outcome::Pass);
    };
    let (fam, bits) = spec.split_once(':').context("--assert-target expects FAMILY:BITS")?;
    let result = fam.parse::<Family>()?.build(&bits.parse()?);
    if result.circuit.num_qubits() != circuit.num_qubits() {
        bail!(
            "circuit has {} qubits but a {fam} build of {bits} has {}",
            circuit.num_qubits(),
            result.circuit.num_qubits()
        );
    }
    let f = match a.metric {
        Metric::Coherent => sim::retained_fidelity(&state, &result.output_qubits, &result.target_state)?,
        Metric::Basis => sim::basis_fidelity(&state, &result.output_qubits, &result.target_state)?,
    };
    let pass = f >= 1.0 - FIDELITY_TOL;
    writeln!(out, "fidelity {f} {}", if pass { "PASS" } else { "FAIL" })?;
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Args)]
pub struct LowerArgs {
    /// Circuit file.
    circuit: PathBuf,
    #[arg(long = "pass", value_enum, required = true)]
    passes: Vec<PassName>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn lower(a: LowerArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let mut circuit = read_circuit(&a.circuit)?;
    let mut notes = String::new();
    for p in &a.passes {
        let (c, rep) = apply_pass(&circuit, *p);
        notes.push_str(&describe(&rep));
        notes.push('\n');
        circuit = c;
    }
    let text = ir::to_text(&circuit);
    if a.out.is_some() {
        emit(a.out.as_ref(), &text, out)?;
        out.write_all(notes.as_bytes())?;
    } else {
        out.write_all(notes.as_bytes())?;
        out.write_all(text.as_bytes())?;
    }
    Ok(Outcome::Pass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decomposition {
    /// SWAP as three CNOTs.
    Swap,
    /// CSWAP as three Toffolis.
    CswapThreeToffoli,
    /// CSWAP as CNOT, Toffoli, CNOT.
    CswapToffoliSandwich,
    /// Toffoli from Hadamards, controlled phases and CNOTs.
    ToffoliPhase,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    gate: Decomposition,
}

pub fn verify(a: VerifyArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let (reference, seq, k) = match a.gate {
        Decomposition::Swap => (Gate::Swap(0, 1), passes::swap_as_cnots(0, 1), 2),
        Decomposition::CswapThreeToffoli => {
            (Gate::Cswap(0, 1, 2), passes::cswap_sequence(CswapLowering::ThreeToffoli, 0, 1, 2), 3)
        }
        Decomposition::CswapToffoliSandwich => {
            (Gate::Cswap(0, 1, 2), passes::cswap_sequence(CswapLowering::ToffoliSandwich, 0, 1, 2), 3)
        }
        Decomposition::ToffoliPhase => (Gate::Ccnot(0, 1, 2), passes::toffoli_sequence(0, 1, 2), 3),
    };
    let mut c = Circuit::new(k);
    for g in &seq {
        c.push_slice(vec![*g]);
    }
    let v = sim::compare_unitaries(&sim::unitary_of(&c)?, &sim::gate_unitary(reference, k)?)?;
    let seq_text: Vec<String> = seq.iter().map(|g| g.to_string()).collect();
    writeln!(out, "reference {reference}")?;
    writeln!(out, "sequence {}", seq_text.join("; "))?;
    writeln!(out, "verdict {}", verdict_text(&v))?;
    if let UnitaryComparison::Differs { entries, .. } = &v {
        for (r, c, x, y) in entries {
            writeln!(out, "entry {r} {c} got {} {} want {} {}", x.re, x.im, y.re, y.im)?;
        }
    }
    Ok(if v.is_equivalent() { Outcome::Pass } else { Outcome::Fail })
}
