//! Audit reports and their CSV/JSON/SVG serializations.
//!
//! A report bundles everything one experiment produced: the two binary64
//! orbits, the reference orbit, the three error series, the threshold
//! crossings and the environment needed to reproduce all of it. Exports
//! are deterministic: equal reports serialize to identical bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    deviation_series, first_crossing, log10_series, lower_bound_series, CrossingResult,
    ErrorSeries,
};
use crate::decimal::DecimalValue;
use crate::error::{Error, Result};
use crate::highprec::{iterate_reference, ReferenceOrbit, DEFAULT_REFERENCE_DIGITS};
use crate::maps::{iterate_fixed, EvaluationForm, FixedOrbit, MapParameters};
use crate::plot;

/// Reproduction preset: the classic divergence experiment on the logistic
/// map. Running it certifies that the two evaluation forms drift past the
/// 1e-8 shadowing distance within ~50 iterates.
pub const PRESET_R: &str = "3.8";
pub const PRESET_X0: &str = "0.4";
pub const PRESET_ITERATES: usize = 100;
pub const PRESET_THRESHOLD: &str = "1e-8";

/// Default number of significant digits used when serializing reference
/// values. Thirty digits exceed any comparison need against binary64
/// orbits while keeping files small.
pub const DEFAULT_REFERENCE_OUTPUT_DIGITS: u32 = 30;

/// 1-based sample positions at which the preset's summary values are
/// read; sample k holds iterate k-1. This numbering matches the
/// convention the original experiment reported its results in.
pub const HEADLINE_LOWER_BOUND_SAMPLE: usize = 51;
pub const HEADLINE_DEVIATION_SAMPLE: usize = 43;

/// Values the reproduction preset is expected to yield (three decimals).
/// A run that misses these has a broken step kernel; check for fused
/// multiply-add contraction or extended intermediate precision first.
pub const EXPECTED_LOG10_LOWER_BOUND: f64 = -7.638;
pub const EXPECTED_LOG10_DEVIATION_G: f64 = -7.921;
pub const EXPECTED_LOG10_DEVIATION_H: f64 = -7.954;

/// Precision settings and tool identity that pin down a run completely.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub tool_version: String,
    /// Working precision of the reference orbit, in decimal digits.
    pub digits: u32,
    /// Shadowing distance, exactly as supplied (e.g. "1e-8").
    pub threshold: String,
    /// Significant digits used when serializing reference values.
    pub reference_output_digits: u32,
}

/// Threshold crossings of the three error series.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossings {
    pub lower_bound: CrossingResult,
    pub deviation_g: CrossingResult,
    pub deviation_h: CrossingResult,
}

/// Complete result of one audit run.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub params: MapParameters,
    pub orbit_g: FixedOrbit,
    pub orbit_h: FixedOrbit,
    pub reference: ReferenceOrbit,
    pub lower_bound: ErrorSeries,
    pub deviation_g: ErrorSeries,
    pub deviation_h: ErrorSeries,
    pub crossings: Crossings,
    pub environment: Environment,
}

/// Runs both evaluation forms plus the reference orbit and assembles the
/// full report.
pub fn build_report(
    params: &MapParameters,
    digits: u32,
    threshold: &str,
    reference_output_digits: u32,
) -> Result<AuditReport> {
    let threshold_value = DecimalValue::parse(threshold)?;
    let threshold_f64 = threshold_value.to_f64_nearest();
    if threshold_f64 <= 0.0 {
        return Err(Error::ParameterRange {
            name: "threshold",
            low: "0 (exclusive)",
            high: "inf",
            value: threshold.to_string(),
        });
    }
    let orbit_g = iterate_fixed(EvaluationForm::G, params)?;
    let orbit_h = iterate_fixed(EvaluationForm::H, params)?;
    let reference = iterate_reference(params, digits)?;

    let lower_bound = lower_bound_series(&orbit_g, &orbit_h)?;
    let deviation_g = deviation_series(&orbit_g, &reference)?;
    let deviation_h = deviation_series(&orbit_h, &reference)?;

    let crossings = Crossings {
        lower_bound: first_crossing(&lower_bound, threshold_f64),
        deviation_g: first_crossing(&deviation_g, threshold_f64),
        deviation_h: first_crossing(&deviation_h, threshold_f64),
    };

    Ok(AuditReport {
        params: params.clone(),
        orbit_g,
        orbit_h,
        reference,
        lower_bound,
        deviation_g,
        deviation_h,
        crossings,
        environment: Environment {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            digits,
            threshold: threshold.to_string(),
            reference_output_digits,
        },
    })
}

/// Runs the reproduction preset: r = 3.8, x0 = 0.4, 100 iterates,
/// 1000-digit reference, threshold 1e-8.
pub fn reproduce_paper() -> Result<AuditReport> {
    let params = MapParameters::new(PRESET_R, PRESET_X0, PRESET_ITERATES)?;
    build_report(
        &params,
        DEFAULT_REFERENCE_DIGITS,
        PRESET_THRESHOLD,
        DEFAULT_REFERENCE_OUTPUT_DIGITS,
    )
}

/// The three summary values a preset run is judged by, read at the
/// canonical 1-based sample positions (51 for the lower bound, 43 for the
/// deviations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Headline {
    pub lower_bound_sample: usize,
    pub log10_lower_bound: f64,
    pub deviation_sample: usize,
    pub log10_deviation_g: f64,
    pub log10_deviation_h: f64,
}

/// Extracts the headline values, or `None` when the run is too short to
/// contain the canonical samples.
pub fn headline(report: &AuditReport) -> Option<Headline> {
    let lb_index = HEADLINE_LOWER_BOUND_SAMPLE - 1; // sample k is iterate k-1
    let dev_index = HEADLINE_DEVIATION_SAMPLE - 1;
    let lb = *report.lower_bound.values().get(lb_index)?;
    let dg = *report.deviation_g.values().get(dev_index)?;
    let dh = *report.deviation_h.values().get(dev_index)?;
    Some(Headline {
        lower_bound_sample: HEADLINE_LOWER_BOUND_SAMPLE,
        log10_lower_bound: lb.log10(),
        deviation_sample: HEADLINE_DEVIATION_SAMPLE,
        log10_deviation_g: dg.log10(),
        log10_deviation_h: dh.log10(),
    })
}

// ---------------------------------------------------------------------------
// value formatting

/// Formats a binary64 with exactly 17 significant digits in positional
/// notation; 17 digits round-trip every binary64 bit-exactly.
pub fn format_binary64_17(x: f64) -> String {
    debug_assert!(x.is_finite());
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    debug_assert_eq!(digits.len(), 17);
    let exp: i32 = exp.parse().expect("exponent");
    let sign = if x.is_sign_negative() { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) + 1 >= digits.len() {
        format!("{}{}", digits, "0".repeat(exp as usize + 1 - digits.len()))
    } else {
        format!("{}.{}", &digits[..exp as usize + 1], &digits[exp as usize + 1..])
    };
    format!("{sign}{body}")
}

/// Shortest round-trip rendering for error values: "0" for zero,
/// scientific notation otherwise.
pub fn format_binary64_compact(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:e}")
    }
}

fn format_log10(x: f64) -> Option<String> {
    if x == f64::NEG_INFINITY {
        None
    } else {
        Some(format!("{x}"))
    }
}

// ---------------------------------------------------------------------------
// CSV

/// Writes the report as CSV: one header row, then one row per iterate.
/// Orbit columns carry 17 significant digits, the reference column the
/// configured digit count; log10 sentinels become empty fields. Separator
/// ",", decimal point ".", LF line endings.
pub fn export_csv<W: Write>(report: &AuditReport, target: &mut W) -> Result<()> {
    let ctx = "csv export";
    let out_digits = report.environment.reference_output_digits;
    let log_lb = log10_series(&report.lower_bound);
    let log_dg = log10_series(&report.deviation_g);
    let log_dh = log10_series(&report.deviation_h);
    let mut write = |line: String| -> Result<()> {
        target
            .write_all(line.as_bytes())
            .and_then(|_| target.write_all(b"\n"))
            .map_err(|e| Error::io(ctx, e))
    };
    write(
        "n,x_G,x_H,x_P,delta_alpha,delta_GP,delta_HP,\
         log10_delta_alpha,log10_delta_GP,log10_delta_HP"
            .to_string(),
    )?;
    for n in 0..report.orbit_g.len() {
        write(format!(
            "{},{},{},{},{},{},{},{},{},{}",
            n,
            format_binary64_17(report.orbit_g.values()[n]),
            format_binary64_17(report.orbit_h.values()[n]),
            report.reference.value_decimal_string(n, out_digits),
            format_binary64_compact(report.lower_bound.values()[n]),
            format_binary64_compact(report.deviation_g.values()[n]),
            format_binary64_compact(report.deviation_h.values()[n]),
            format_log10(log_lb[n]).unwrap_or_default(),
            format_log10(log_dg[n]).unwrap_or_default(),
            format_log10(log_dh[n]).unwrap_or_default(),
        ))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// JSON

/// Version of the JSON document layout below.
pub const JSON_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub version: String,
    pub params: ParamsDoc,
    pub environment: Environment,
    pub orbits: OrbitsDoc,
    pub series: SeriesDoc,
    pub crossings: CrossingsDoc,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub r: String,
    pub x0: String,
    pub iterates: usize,
}

/// Orbit values as strings: binary64 columns round-trip bit-exactly, the
/// reference column keeps its configured digit count.
#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitsDoc {
    pub g: Vec<String>,
    pub h: Vec<String>,
    pub p: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub lower_bound: Vec<String>,
    pub deviation_g: Vec<String>,
    pub deviation_h: Vec<String>,
    /// log10 values; `null` marks a zero in the underlying series.
    pub log10_lower_bound: Vec<Option<f64>>,
    pub log10_deviation_g: Vec<Option<f64>>,
    pub log10_deviation_h: Vec<Option<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CrossingDoc {
    pub threshold: String,
    pub iterate: Option<usize>,
    pub delta_at_crossing: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CrossingsDoc {
    pub lower_bound: CrossingDoc,
    pub deviation_g: CrossingDoc,
    pub deviation_h: CrossingDoc,
}

fn crossing_doc(crossing: &CrossingResult, threshold_text: &str) -> CrossingDoc {
    CrossingDoc {
        threshold: threshold_text.to_string(),
        iterate: crossing.iterate,
        delta_at_crossing: crossing.delta_at_crossing.map(format_binary64_compact),
    }
}

fn log10_doc(series: &ErrorSeries) -> Vec<Option<f64>> {
    log10_series(series)
        .into_iter()
        .map(|v| if v == f64::NEG_INFINITY { None } else { Some(v) })
        .collect()
}

/// Builds the JSON document for a report.
pub fn report_doc(report: &AuditReport) -> ReportDoc {
    let out_digits = report.environment.reference_output_digits;
    let threshold_text = &report.environment.threshold;
    ReportDoc {
        version: JSON_SCHEMA_VERSION.to_string(),
        params: ParamsDoc {
            r: report.params.r().text().to_string(),
            x0: report.params.x0().text().to_string(),
            iterates: report.params.iterates(),
        },
        environment: report.environment.clone(),
        orbits: OrbitsDoc {
            g: report.orbit_g.values().iter().copied().map(format_binary64_17).collect(),
            h: report.orbit_h.values().iter().copied().map(format_binary64_17).collect(),
            p: (0..report.reference.len())
                .map(|n| report.reference.value_decimal_string(n, out_digits))
                .collect(),
        },
        series: SeriesDoc {
            lower_bound: report
                .lower_bound
                .values()
                .iter()
                .copied()
                .map(format_binary64_compact)
                .collect(),
            deviation_g: report
                .deviation_g
                .values()
                .iter()
                .copied()
                .map(format_binary64_compact)
                .collect(),
            deviation_h: report
                .deviation_h
                .values()
                .iter()
                .copied()
                .map(format_binary64_compact)
                .collect(),
            log10_lower_bound: log10_doc(&report.lower_bound),
            log10_deviation_g: log10_doc(&report.deviation_g),
            log10_deviation_h: log10_doc(&report.deviation_h),
        },
        crossings: CrossingsDoc {
            lower_bound: crossing_doc(&report.crossings.lower_bound, threshold_text),
            deviation_g: crossing_doc(&report.crossings.deviation_g, threshold_text),
            deviation_h: crossing_doc(&report.crossings.deviation_h, threshold_text),
        },
    }
}

/// Writes the report as a single JSON object.
pub fn export_json<W: Write>(report: &AuditReport, target: &mut W) -> Result<()> {
    let doc = report_doc(report);
    serde_json::to_writer_pretty(&mut *target, &doc)
        .map_err(|e| Error::io("json export", std::io::Error::other(e)))?;
    target
        .write_all(b"\n")
        .map_err(|e| Error::io("json export", e))
}

// ---------------------------------------------------------------------------
// figures

/// Writes the four figures as SVG files into `directory` and returns
/// their paths:
///
/// * `fig1.svg` — G and H values over samples 41..=101
/// * `fig2.svg` — log10 of the lower-bound series over samples 31..=70,
///   with a horizontal line at log10(threshold)
/// * `fig3.svg` — G, H and the reference P over samples 41..=101
/// * `fig4.svg` — log10 of both deviation series, same window as fig2
///
/// Sample numbering on the x axis is 1-based: sample k is iterate k-1.
pub fn emit_plots(report: &AuditReport, directory: &Path) -> Result<Vec<PathBuf>> {
    plot::emit_figures(report, directory)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digit_formatting() {
        assert_eq!(format_binary64_17(0.4), "0.40000000000000002");
        assert_eq!(format_binary64_17(1.0), "1.0000000000000000");
        assert_eq!(format_binary64_17(0.5), "0.50000000000000000");
        assert_eq!(format_binary64_17(0.0), "0.0000000000000000");
        assert_eq!(format_binary64_17(2.2204460492503132e-17).parse::<f64>().unwrap(),
                   2.2204460492503132e-17);
    }

    #[test]
    fn seventeen_digit_formatting_round_trips() {
        for x in [0.4, 0.912, 0.9119999999999999, 1.0, 0.0, 3.8, 1e-300] {
            let s = format_binary64_17(x);
            assert!(!s.contains('e'));
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn compact_formatting() {
        assert_eq!(format_binary64_compact(0.0), "0");
        assert_eq!(format_binary64_compact(1e-8), "1e-8");
        let v = 2.3008681682146204e-8;
        assert_eq!(format_binary64_compact(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn preset_report_has_consistent_lengths() {
        let report = reproduce_paper().unwrap();
        let n = report.params.iterates() + 1;
        assert_eq!(report.orbit_g.len(), n);
        assert_eq!(report.orbit_h.len(), n);
        assert_eq!(report.reference.len(), n);
        assert_eq!(report.lower_bound.len(), n);
        assert_eq!(report.deviation_g.len(), n);
        assert_eq!(report.deviation_h.len(), n);
    }

    #[test]
    fn empty_run_exports() {
        let params = MapParameters::new("3.8", "0.4", 0).unwrap();
        let report = build_report(&params, 50, "1e-8", 30).unwrap();
        assert_eq!(report.lower_bound.len(), 1);
        assert_eq!(report.crossings.lower_bound.iterate, None);
        let mut csv = Vec::new();
        export_csv(&report, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), 2); // header + n=0
        let mut json = Vec::new();
        export_json(&report, &mut json).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(doc["series"]["lower_bound"].as_array().unwrap().len(), 1);
        assert_eq!(doc["crossings"]["lower_bound"]["iterate"], serde_json::Value::Null);
    }

    #[test]
    fn json_threshold_is_verbatim_text() {
        let params = MapParameters::new("3.8", "0.4", 0).unwrap();
        let report = build_report(&params, 50, "1e-8", 30).unwrap();
        let doc = report_doc(&report);
        assert_eq!(doc.crossings.lower_bound.threshold, "1e-8");
        assert_eq!(doc.version, "1");
    }

    #[test]
    fn csv_first_row_fields() {
        let params = MapParameters::new("3.8", "0.4", 1).unwrap();
        let report = build_report(&params, 50, "1e-8", 30).unwrap();
        let mut csv = Vec::new();
        export_csv(&report, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[0], "0");
        assert_eq!(row[1], "0.40000000000000002"); // x_G
        assert_eq!(row[2], "0.40000000000000002"); // x_H
        assert_eq!(row[3], "0.400000000000000000000000000000"); // x_P, 30 digits
        assert_eq!(row[4], "0"); // delta_alpha
        assert_eq!(row[7], ""); // log10 of zero renders empty
    }

    #[test]
    fn nonpositive_threshold_rejected() {
        let params = MapParameters::new("3.8", "0.4", 1).unwrap();
        assert!(matches!(
            build_report(&params, 50, "0", 30),
            Err(Error::ParameterRange { name: "threshold", .. })
        ));
        assert!(matches!(
            build_report(&params, 50, "-1e-8", 30),
            Err(Error::ParameterRange { name: "threshold", .. })
        ));
    }
}
