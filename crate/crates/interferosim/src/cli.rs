//! Batch front end: simulate interferograms to CSV, analyze existing traces,
//! and run the calibration procedures. See the crate README for the config
//! schema.

use std::fmt::Write as _;
use std::path::Path;

use crate::calibration::{
    double_pass_transmission, klyshko_efficiencies, zero_delay_from_dips, CountRates,
};
use crate::coherence::{summarize_samples, Channel, ExtremumKind, TraceSummary};
use crate::config::{CalibrateConfig, ConfigError, SimulateConfig};
use crate::interferometers::{simulate, InterferogramTrace, TraceMode};

pub const CSV_SCHEMA_COMMENT: &str = "# interferosim trace v1";
pub const CSV_HEADER: &str = "delay_ps,singles_a,singles_b,coincidences";

/// CLI failure with its process exit code: 1 for config/input problems,
/// 2 for output I/O problems.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Output(_) => 2,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Serialize a trace in the stable CSV schema.
pub fn trace_to_csv(trace: &InterferogramTrace) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA_COMMENT);
    out.push('\n');
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..trace.len() {
        writeln!(
            out,
            "{},{},{},{}",
            trace.delays()[i],
            trace.singles_a()[i],
            trace.singles_b()[i],
            trace.coincidences()[i]
        )
        .expect("writing to String cannot fail");
    }
    out
}

/// Parsed CSV columns. Values are not range-checked so that externally
/// produced traces (e.g. raw count rates) can still be analyzed.
#[derive(Debug)]
pub struct CsvTrace {
    pub delays: Vec<f64>,
    pub singles_a: Vec<f64>,
    pub singles_b: Vec<f64>,
    pub coincidences: Vec<f64>,
}

/// Parse the emitted CSV schema; errors name the offending line (1-based).
pub fn parse_trace_csv(text: &str) -> Result<CsvTrace> {
    let mut delays = Vec::new();
    let mut singles_a = Vec::new();
    let mut singles_b = Vec::new();
    let mut coincidences = Vec::new();
    let mut header_seen = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != CSV_HEADER {
                return Err(CliError::Input(format!(
                    "line {lineno}: expected header `{CSV_HEADER}`, got `{line}`"
                )));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::Input(format!(
                "line {lineno}: expected 4 comma-separated fields, got {}",
                fields.len()
            )));
        }
        let mut parsed = [0.0f64; 4];
        for (slot, field) in parsed.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| {
                CliError::Input(format!("line {lineno}: `{field}` is not a number"))
            })?;
        }
        delays.push(parsed[0]);
        singles_a.push(parsed[1]);
        singles_b.push(parsed[2]);
        coincidences.push(parsed[3]);
    }
    if !header_seen {
        return Err(CliError::Input("missing CSV header row".into()));
    }
    if delays.is_empty() {
        return Err(CliError::Input("CSV contains no data rows".into()));
    }
    Ok(CsvTrace {
        delays,
        singles_a,
        singles_b,
        coincidences,
    })
}

fn summary_table(summaries: &[(Channel, TraceSummary)]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<14}{:>12}{:>12}{:>14}{:>6}{:>18}",
        "channel", "visibility", "fwhm_ps", "extremum_ps", "kind", "fringe_period_ps"
    )
    .unwrap();
    for (channel, s) in summaries {
        let fwhm = s
            .fwhm
            .map(|v| format!("{v:.4}"))
            .unwrap_or_else(|| "-".into());
        let period = s
            .fringe_period
            .map(|v| format!("{v:.6}"))
            .unwrap_or_else(|| "-".into());
        let kind = match s.extremum_kind {
            ExtremumKind::Dip => "dip",
            ExtremumKind::Peak => "peak",
        };
        writeln!(
            out,
            "{:<14}{:>12.4}{:>12}{:>14.4}{:>6}{:>18}",
            channel.name(),
            s.visibility,
            fwhm,
            s.extremum_position,
            kind,
            period
        )
        .unwrap();
    }
    out
}

fn machine_block(summaries: &[(Channel, TraceSummary)]) -> String {
    let map: serde_json::Map<String, serde_json::Value> = summaries
        .iter()
        .map(|(c, s)| {
            (
                c.name().to_string(),
                serde_json::to_value(s).expect("summary serializes"),
            )
        })
        .collect();
    serde_json::to_string(&serde_json::Value::Object(map)).expect("json serializes")
}

fn summarize_all(trace: &CsvTrace) -> Result<Vec<(Channel, TraceSummary)>> {
    let mut out = Vec::with_capacity(3);
    for channel in Channel::ALL {
        let values = match channel {
            Channel::SinglesA => &trace.singles_a,
            Channel::SinglesB => &trace.singles_b,
            Channel::Coincidences => &trace.coincidences,
        };
        let summary = summarize_samples(&trace.delays, values)
            .map_err(|e| CliError::Input(format!("{}: {e}", channel.name())))?;
        out.push((channel, summary));
    }
    Ok(out)
}

/// `simulate` subcommand: run the configured interferometer, write the CSV
/// trace and return the printable summary.
pub fn run_simulate(
    config_text: &str,
    out_path: &Path,
    envelope_only_flag: bool,
    machine: bool,
) -> Result<String> {
    let cfg = SimulateConfig::parse(config_text)?;
    let (inter, grid, evaluation, mode) = cfg.resolve()?;
    let mode = if envelope_only_flag {
        TraceMode::EnvelopeOnly
    } else {
        mode
    };
    let trace =
        simulate(&inter, &grid, evaluation, mode).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::write(out_path, trace_to_csv(&trace))
        .map_err(|e| CliError::Output(format!("{}: {e}", out_path.display())))?;

    let csv = CsvTrace {
        delays: trace.delays().to_vec(),
        singles_a: trace.singles_a().to_vec(),
        singles_b: trace.singles_b().to_vec(),
        coincidences: trace.coincidences().to_vec(),
    };
    let summaries = summarize_all(&csv)?;
    let mut report = summary_table(&summaries);
    if machine {
        report.push_str(&machine_block(&summaries));
        report.push('\n');
    }
    Ok(report)
}

/// `analyze` subcommand: summarize each channel of an existing trace.
pub fn run_analyze(csv_text: &str, machine: bool) -> Result<String> {
    let trace = parse_trace_csv(csv_text)?;
    let summaries = summarize_all(&trace)?;
    let mut report = summary_table(&summaries);
    if machine {
        report.push_str(&machine_block(&summaries));
        report.push('\n');
    }
    Ok(report)
}

/// `calibrate` subcommand: zero-delay solution, Klyshko efficiencies and
/// double-pass transmissions, depending on which inputs the config supplies.
pub fn run_calibrate(config_text: &str, machine: bool) -> Result<String> {
    let cfg = CalibrateConfig::parse(config_text)?;
    let mut report = String::new();
    let mut json = serde_json::Map::new();

    if let Some(dips) = &cfg.dips {
        let result = zero_delay_from_dips(dips.single_pass_ps, dips.double_pass_ps)
            .map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(report, "zero_position_ps    {:>12.6}", result.zero_position).unwrap();
        writeln!(report, "walkoff_estimate_ps {:>12.6}", result.walkoff_estimate).unwrap();
        json.insert(
            "zero_delay".into(),
            serde_json::to_value(result).expect("serializes"),
        );
    }

    if let Some(rates) = &cfg.rates {
        let single = CountRates::new(
            rates.single_pass.singles_a,
            rates.single_pass.singles_b,
            rates.single_pass.coincidences,
        )
        .map_err(|e| CliError::Input(format!("rates.single_pass: {e}")))?;
        let eta_single =
            klyshko_efficiencies(&single).map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(
            report,
            "klyshko_single_pass {:>12.4} {:>12.4}",
            eta_single.0, eta_single.1
        )
        .unwrap();
        json.insert(
            "klyshko_single_pass".into(),
            serde_json::json!([eta_single.0, eta_single.1]),
        );

        if let Some(double) = &rates.double_pass {
            let double = CountRates::new(double.singles_a, double.singles_b, double.coincidences)
                .map_err(|e| CliError::Input(format!("rates.double_pass: {e}")))?;
            let eta_double =
                klyshko_efficiencies(&double).map_err(|e| CliError::Input(e.to_string()))?;
            let trans = double_pass_transmission(eta_single, eta_double)
                .map_err(|e| CliError::Input(e.to_string()))?;
            writeln!(
                report,
                "klyshko_double_pass {:>12.4} {:>12.4}",
                eta_double.0, eta_double.1
            )
            .unwrap();
            writeln!(
                report,
                "transmission        {:>12.4} {:>12.4}",
                trans.0, trans.1
            )
            .unwrap();
            json.insert(
                "klyshko_double_pass".into(),
                serde_json::json!([eta_double.0, eta_double.1]),
            );
            json.insert(
                "transmission".into(),
                serde_json::json!([trans.0, trans.1]),
            );
        }
    }

    if machine {
        report.push_str(&serde_json::to_string(&serde_json::Value::Object(json)).unwrap());
        report.push('\n');
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interferometers::{hom_semi_nonlinear, Evaluation};
    use crate::numerics::DelayGrid;
    use crate::spectra::EffectiveJsa;

    #[test]
    fn csv_round_trip() {
        let jsa = EffectiveJsa::new(0.28, 2.2).unwrap();
        let delays = DelayGrid::new(-10.0, 15.0, 501).unwrap();
        let trace = hom_semi_nonlinear(&jsa, &delays, Evaluation::ClosedForm).unwrap();
        let csv = trace_to_csv(&trace);
        assert!(csv.starts_with(CSV_SCHEMA_COMMENT));
        let parsed = parse_trace_csv(&csv).unwrap();
        assert_eq!(parsed.delays, trace.delays());
        assert_eq!(parsed.coincidences, trace.coincidences());
    }

    #[test]
    fn malformed_csv_names_line() {
        let text = format!("{CSV_SCHEMA_COMMENT}\n{CSV_HEADER}\n0.0,0.5,0.5,0.0\n1.0,oops,0.5,0.0\n");
        let err = parse_trace_csv(&text).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn wrong_header_rejected() {
        let err = parse_trace_csv("delay,sa,sb,cc\n0,0,0,0\n").unwrap_err();
        assert!(err.to_string().contains("expected header"), "{err}");
    }

    #[test]
    fn calibrate_reference_report() {
        let cfg = r#"
            [dips]
            single_pass_ps = 1.1
            double_pass_ps = 3.3

            [rates.single_pass]
            singles_a = 100000.0
            singles_b = 123809.52
            coincidences = 26000.0

            [rates.double_pass]
            singles_a = 100000.0
            singles_b = 116666.67
            coincidences = 7000.0
        "#;
        let report = run_calibrate(cfg, false).unwrap();
        assert!(report.contains("walkoff_estimate_ps"), "{report}");
        assert!(report.contains("2.200000"), "{report}");
        assert!(report.contains("0.2100"), "{report}");
        assert!(report.contains("0.2600"), "{report}");
    }
}
