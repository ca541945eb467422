//! Output plumbing: run configuration, the result-record schema, and the
//! CSV/JSON writers.
//!
//! Every emitted numeric row pairs a computed value with a reference value,
//! a provenance label for where the reference comes from, and the deviation
//! between the two; there are no bare numbers. Rows with `gating = true`
//! drive the process exit status. Output is byte-deterministic for a given
//! configuration and seed: records are assembled in input order on one
//! thread and floats are written by the shortest-roundtrip formatter.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;
use twomode::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Shared run settings, combined from global flags and the environment.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// When set, replaces the default tolerance on every gating row the
    /// command emits.
    pub tolerance: Option<f64>,
    /// Truncated-space dimension cap; the TWOMODE_DIM_CAP environment
    /// variable raises or lowers it.
    pub dimension_cap: usize,
}

impl RunConfig {
    pub fn gate_tolerance(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

/// One verified (or surfaced) quantity.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: String,
    pub quantity: String,
    pub computed_re: f64,
    pub computed_im: f64,
    pub reference_re: f64,
    pub reference_im: f64,
    /// Route that produced the reference value, e.g. "closed_form_symmetric",
    /// "fd_oracle", "formula", "exact_identity",
    /// "printed_closed_form_typo_suspect".
    pub provenance: String,
    pub abs_deviation: f64,
    pub rel_deviation: f64,
    /// Bound applied to the row's deviation measure; empty for purely
    /// informative rows.
    pub tolerance: Option<f64>,
    /// Whether a failed tolerance here makes the process exit nonzero.
    pub gating: bool,
    pub pass: bool,
}

fn base(
    command: &str,
    inputs: String,
    quantity: &str,
    computed: Complex64,
    reference: Complex64,
    provenance: &str,
) -> ResultRecord {
    let abs_deviation = (computed - reference).norm();
    ResultRecord {
        command: command.to_string(),
        inputs,
        quantity: quantity.to_string(),
        computed_re: computed.re,
        computed_im: computed.im,
        reference_re: reference.re,
        reference_im: reference.im,
        provenance: provenance.to_string(),
        abs_deviation,
        rel_deviation: abs_deviation / reference.norm().max(1e-12),
        tolerance: None,
        gating: false,
        pass: true,
    }
}

impl ResultRecord {
    /// Gating row: `measure` (the command's deviation metric for this
    /// quantity) must stay within `tolerance`, or the run exits nonzero.
    #[allow(clippy::too_many_arguments)]
    pub fn verified(
        command: &str,
        inputs: String,
        quantity: &str,
        computed: Complex64,
        reference: Complex64,
        provenance: &str,
        measure: f64,
        tolerance: f64,
    ) -> Self {
        let mut r = base(command, inputs, quantity, computed, reference, provenance);
        r.tolerance = Some(tolerance);
        r.gating = true;
        r.pass = measure <= tolerance;
        r
    }

    /// Non-gating row with a stated bound: pass/fail is reported but never
    /// affects the exit status (statistical per-bin checks, sub-classical
    /// regimes).
    #[allow(clippy::too_many_arguments)]
    pub fn advisory(
        command: &str,
        inputs: String,
        quantity: &str,
        computed: Complex64,
        reference: Complex64,
        provenance: &str,
        measure: f64,
        tolerance: f64,
    ) -> Self {
        let mut r = base(command, inputs, quantity, computed, reference, provenance);
        r.tolerance = Some(tolerance);
        r.pass = measure <= tolerance;
        r
    }

    /// Purely informative row: the deviation columns carry the content and
    /// no tolerance applies.
    pub fn informative(
        command: &str,
        inputs: String,
        quantity: &str,
        computed: Complex64,
        reference: Complex64,
        provenance: &str,
    ) -> Self {
        base(command, inputs, quantity, computed, reference, provenance)
    }
}

pub fn emit_records(config: &RunConfig, records: &[ResultRecord]) -> anyhow::Result<()> {
    let mut out: Box<dyn Write> = match &config.output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("creating output file {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    match config.format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for record in records {
                writer.serialize(record).context("writing CSV record")?;
            }
            writer.flush().context("flushing CSV output")?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records).context("writing JSON records")?;
            out.write_all(b"\n").context("finishing JSON output")?;
        }
    }
    Ok(())
}
