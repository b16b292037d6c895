use std::io::Write;

use anyhow::bail;
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use bitload::families::{BitVector, Family};
use bitload::ir::GateKind;
use bitload::resources::{self, empirical_for, formula_report};

use crate::output::Table;
use crate::{FormatArg, Outcome};

#[derive(Args)]
pub struct ResourcesArgs {
    #[arg(long)]
    family: Family,
    /// Single address width.
    #[arg(long, conflicts_with = "n_max")]
    n: Option<usize>,
    /// Address widths 1 through this value.
    #[arg(long)]
    n_max: Option<usize>,
    /// Seed for the random bit-strings measured.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    format: FormatArg,
}

fn range(n: Option<usize>, n_max: Option<usize>) -> anyhow::Result<std::ops::RangeInclusive<usize>> {
    let r = match (n, n_max) {
        (Some(n), None) => n..=n,
        (None, Some(m)) => 1..=m,
        _ => bail!("give --n or --n-max"),
    };
    if *r.end() > 20 {
        bail!("address width above 20 is not supported");
    }
    Ok(r)
}

fn opt(v: Option<usize>) -> Value {
    v.map_or(Value::Null, |x| json!(x))
}

/// One row per compared quantity: formula value, measured value and status.
pub fn resources(a: ResourcesArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut table = Table::new(vec!["family", "n", "bits", "quantity", "formula", "measured", "status"]);
    for n in range(a.n, a.n_max)? {
        let len = 1usize << n;
        let bits = BitVector::new((0..len).map(|_| rng.gen_bool(0.5)).collect())?;
        let formula = formula_report(a.family, len)?;
        let measured = empirical_for(&a.family.build(&bits));
        let mut kinds: Vec<GateKind> = formula.counts.keys().chain(measured.counts.keys()).copied().collect();
        kinds.sort();
        kinds.dedup();
        let mut rows: Vec<(String, Option<usize>, Option<usize>, bool)> = kinds
            .into_iter()
            .map(|k| (k.mnemonic().to_string(), formula.counts.get(&k).copied(), Some(measured.count(k)), true))
            .collect();
        rows.extend([
            ("resets".to_string(), None, Some(measured.reset_flips), false),
            ("slice_depth".to_string(), formula.slice_depth, measured.slice_depth, false),
            ("depth_with_mirror".to_string(), formula.depth_with_mirror, measured.depth_with_mirror, false),
            ("serialized_depth".to_string(), formula.serialized_depth, measured.serialized_depth, false),
            ("final_state_qubits".to_string(), formula.final_state_qubits, measured.final_state_qubits, true),
            ("final_ancilla_qubits".to_string(), formula.final_ancilla_qubits, measured.final_ancilla_qubits, true),
            ("final_total_qubits".to_string(), formula.final_total_qubits, measured.final_total_qubits, true),
            ("peak_total_qubits".to_string(), formula.peak_total_qubits, measured.peak_total_qubits, false),
        ]);
        for (name, f, m, compared) in rows {
            if f.is_none() && m.is_none() {
                continue;
            }
            let status = match (f, m, compared) {
                (Some(f), Some(m), true) if f == m => "match",
                (Some(_), Some(_), true) => "MISMATCH",
                _ => "info",
            };
            table.push(vec![json!(a.family.name()), json!(n), json!(len), json!(name), opt(f), opt(m), json!(status)]);
        }
    }
    out.write_all(table.render(a.format.format).as_bytes())?;
    Ok(Outcome::Pass)
}

#[derive(Args)]
pub struct DepthArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, conflicts_with = "n_max")]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    format: FormatArg,
}

pub fn depth(a: DepthArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let mut table = Table::new(vec![
        "n",
        "bits",
        "slice_depth",
        "serialized_depth",
        "formula",
        "formula_with_mirror",
        "log2_log2_bits",
    ]);
    for row in resources::depth_scaling_table(a.family, range(a.n, a.n_max)?) {
        table.push(vec![
            json!(row.address_bits),
            json!(row.bits),
            json!(row.slice_depth),
            json!(row.serialized_depth),
            json!(row.formula),
            opt(row.formula_with_mirror),
            json!(row.log2_log2_bits),
        ]);
    }
    out.write_all(table.render(a.format.format).as_bytes())?;
    Ok(Outcome::Pass)
}

#[derive(Args)]
pub struct EntropyArgs {
    /// Probability of a one.
    #[arg(long, required_unless_present = "curve")]
    p: Option<f64>,
    /// Block length for the savings computation.
    #[arg(long)]
    n: Option<usize>,
    /// Emit the entropy curve as `p,L` CSV with this many intervals.
    #[arg(long, conflicts_with = "p")]
    curve: Option<usize>,
}

pub fn entropy(a: EntropyArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if let Some(steps) = a.curve {
        if steps == 0 {
            bail!("--curve needs at least one interval");
        }
        writeln!(out, "p,L")?;
        for (p, l) in resources::entropy_curve(steps) {
            writeln!(out, "{p},{l}")?;
        }
        return Ok(Outcome::Pass);
    }
    let p = a.p.expect("required by clap");
    let l = resources::entropy_l(p)?;
    writeln!(out, "L={l}")?;
    if let Some(n) = a.n {
        let plan = resources::savings(p, n)?;
        writeln!(out, "N={} M={} savings={}", plan.block_len, plan.compressed_len, plan.savings)?;
    }
    Ok(Outcome::Pass)
}
