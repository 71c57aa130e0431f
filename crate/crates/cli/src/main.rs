//! Command-line front end: simulate, audit and reproduce-paper.
//!
//! Exit codes: 0 success (no certified divergence), 1 runtime failure,
//! 2 invalid configuration, 3 divergence certified — the lower-bound
//! error reached the threshold, a scientific outcome scripts can branch
//! on.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Overrides, OutputFormat, RunConfig};
use orbitcert::{
    build_report, emit_plots, export_csv, export_json, headline, iterate_fixed, AuditReport,
    Error, FixedOrbit,
};

const EXIT_OK: u8 = 0;
const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGENCE_CERTIFIED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "orbitcert",
    version,
    about = "Certify divergence of binary64 chaotic-map simulations",
    after_help = "ENVIRONMENT:\n  ORBITCERT_OUT  default output directory when --out is not given\n\n\
EXIT CODES:\n  0  success, no divergence certified\n  1  runtime failure\n  \
2  invalid configuration\n  3  divergence certified (lower-bound error reached the threshold)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute fixed-precision pseudo-orbits and write them out
    Simulate(RunArgs),
    /// Full audit: both forms, reference orbit, error series, crossings
    Audit(RunArgs),
    /// Run the bundled reproduction preset (r=3.8, x0=0.4, N=100,
    /// 1000-digit reference, threshold 1e-8) and emit all four figures
    #[command(name = "reproduce-paper")]
    ReproducePaper(ReproduceArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Map parameter r (decimal string in `[0,4]`)
    #[arg(long)]
    r: Option<String>,
    /// Initial condition x0 (decimal string in `[0,1]`)
    #[arg(long)]
    x0: Option<String>,
    /// Number of iterates N
    #[arg(long)]
    n: Option<usize>,
    /// Reference-orbit precision in decimal digits (>= 50)
    #[arg(long)]
    digits: Option<u32>,
    /// Shadowing distance, e.g. 1e-8
    #[arg(long)]
    threshold: Option<String>,
    /// Evaluation forms, comma separated (G,H)
    #[arg(long)]
    forms: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output formats, comma separated (csv,json,svg)
    #[arg(long)]
    formats: Option<String>,
    /// JSON config file; explicit flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit
    #[arg(long)]
    dump_config: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(self) -> Overrides {
        Overrides {
            r: self.r,
            x0: self.x0,
            iterates: self.n,
            digits: self.digits,
            threshold: self.threshold,
            forms: self.forms,
            out: self.out,
            formats: self.formats,
            config: self.config,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Audit(args) => run_audit(args),
        Command::ReproducePaper(args) => run_reproduce(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            code: if error.is_usage() { EXIT_USAGE } else { EXIT_RUNTIME },
            message: error.to_string(),
        }
    }
}

fn resolve_config(args: RunArgs) -> Result<(RunConfig, bool), Failure> {
    let dump = args.dump_config;
    let config = RunConfig::resolve(&args.overrides()).map_err(Failure::usage)?;
    Ok((config, dump))
}

fn dump_config(config: &RunConfig) -> Result<u8, Failure> {
    let text = serde_json::to_string_pretty(config)
        .map_err(|e| Failure::runtime(format!("serializing config: {e}")))?;
    println!("{text}");
    Ok(EXIT_OK)
}

fn run_simulate(args: RunArgs) -> Result<u8, Failure> {
    let (config, dump) = resolve_config(args)?;
    if dump {
        return dump_config(&config);
    }
    if config.wants(OutputFormat::Svg) {
        return Err(Failure::usage(
            "simulate writes orbit data only; svg output needs `audit --formats svg`",
        ));
    }
    let params = config.map_parameters()?;
    let forms = config.parsed_forms();
    let mut orbits = Vec::new();
    for form in &forms {
        orbits.push(iterate_fixed(*form, &params)?);
    }
    ensure_out_dir(&config.out)?;
    if config.wants(OutputFormat::Csv) {
        let path = config.out.join("orbits.csv");
        write_file(&path, |w| write_orbits_csv(&orbits, w))?;
        println!("wrote {}", path.display());
    }
    if config.wants(OutputFormat::Json) {
        let path = config.out.join("orbits.json");
        write_file(&path, |w| write_orbits_json(&config, &orbits, w))?;
        println!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

fn run_audit(args: RunArgs) -> Result<u8, Failure> {
    let (config, dump) = resolve_config(args)?;
    if dump {
        return dump_config(&config);
    }
    if config.parsed_forms().len() != 2 {
        return Err(Failure::usage(
            "audit compares both evaluation forms; pass --forms G,H",
        ));
    }
    let report = build_audit_report(&config)?;
    write_audit_outputs(&config, &report)?;
    Ok(summarize_crossing(&report))
}

fn run_reproduce(args: ReproduceArgs) -> Result<u8, Failure> {
    let config = RunConfig::resolve(&Overrides {
        out: args.out,
        formats: Some("csv,json,svg".to_string()),
        ..Overrides::default()
    })
    .map_err(Failure::usage)?;
    let report = build_audit_report(&config)?;
    write_audit_outputs(&config, &report)?;

    let headline = headline(&report)
        .ok_or_else(|| Failure::runtime("preset run too short for headline samples"))?;
    println!(
        "log10 delta_alpha at sample {:>2}: {:8.3}  (expected {:.3})",
        headline.lower_bound_sample,
        headline.log10_lower_bound,
        orbitcert::report::EXPECTED_LOG10_LOWER_BOUND
    );
    println!(
        "log10 delta_GP    at sample {:>2}: {:8.3}  (expected {:.3})",
        headline.deviation_sample,
        headline.log10_deviation_g,
        orbitcert::report::EXPECTED_LOG10_DEVIATION_G
    );
    println!(
        "log10 delta_HP    at sample {:>2}: {:8.3}  (expected {:.3})",
        headline.deviation_sample,
        headline.log10_deviation_h,
        orbitcert::report::EXPECTED_LOG10_DEVIATION_H
    );
    Ok(summarize_crossing(&report))
}

fn build_audit_report(config: &RunConfig) -> Result<AuditReport, Failure> {
    let params = config.map_parameters()?;
    Ok(build_report(
        &params,
        config.digits,
        &config.threshold,
        orbitcert::report::DEFAULT_REFERENCE_OUTPUT_DIGITS,
    )?)
}

fn write_audit_outputs(config: &RunConfig, report: &AuditReport) -> Result<(), Failure> {
    ensure_out_dir(&config.out)?;
    if config.wants(OutputFormat::Csv) {
        let path = config.out.join("report.csv");
        write_file(&path, |w| export_csv(report, w))?;
        println!("wrote {}", path.display());
    }
    if config.wants(OutputFormat::Json) {
        let path = config.out.join("report.json");
        write_file(&path, |w| export_json(report, w))?;
        println!("wrote {}", path.display());
    }
    if config.wants(OutputFormat::Svg) {
        for path in emit_plots(report, &config.out)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

/// Prints the lower-bound summary line and maps the outcome to an exit
/// code: 3 when a crossing is certified, 0 otherwise.
fn summarize_crossing(report: &AuditReport) -> u8 {
    let crossing = &report.crossings.lower_bound;
    match crossing.iterate {
        Some(iterate) => {
            println!(
                "divergence certified: lower-bound error reaches {} at iterate {} (delta = {})",
                report.environment.threshold,
                iterate,
                orbitcert::report::format_binary64_compact(
                    crossing.delta_at_crossing.unwrap_or(f64::NAN)
                ),
            );
            EXIT_DIVERGENCE_CERTIFIED
        }
        None => {
            println!(
                "no divergence certified: lower-bound error stays below {} through iterate {}",
                report.environment.threshold,
                report.params.iterates()
            );
            EXIT_OK
        }
    }
}

fn ensure_out_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| {
        Failure::runtime(format!(
            "cannot create output directory {}: {e}",
            dir.display()
        ))
    })
}

fn write_file<F>(path: &Path, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut std::io::BufWriter<std::fs::File>) -> orbitcert::Result<()>,
{
    let file = std::fs::File::create(path)
        .map_err(|e| Failure::runtime(format!("cannot create {}: {e}", path.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    write(&mut writer)?;
    writer
        .flush()
        .map_err(|e| Failure::runtime(format!("flushing {}: {e}", path.display())))?;
    Ok(())
}

fn write_orbits_csv<W: Write>(orbits: &[FixedOrbit], w: &mut W) -> orbitcert::Result<()> {
    let io_err = |e| Error::Io {
        context: "orbit csv export".into(),
        source: e,
    };
    let mut header = String::from("n");
    for orbit in orbits {
        header.push_str(",x_");
        header.push_str(&orbit.form().to_string());
    }
    writeln!(w, "{header}").map_err(io_err)?;
    let len = orbits.first().map(|o| o.len()).unwrap_or(0);
    for n in 0..len {
        let mut row = n.to_string();
        for orbit in orbits {
            row.push(',');
            row.push_str(&orbitcert::report::format_binary64_17(orbit.values()[n]));
        }
        writeln!(w, "{row}").map_err(io_err)?;
    }
    Ok(())
}

fn write_orbits_json<W: Write>(
    config: &RunConfig,
    orbits: &[FixedOrbit],
    w: &mut W,
) -> orbitcert::Result<()> {
    use serde_json::{json, Map, Value};
    let io_err = |e| Error::Io {
        context: "orbit json export".into(),
        source: e,
    };
    let mut orbit_map = Map::new();
    for orbit in orbits {
        orbit_map.insert(
            orbit.form().to_string().to_ascii_lowercase(),
            Value::Array(
                orbit
                    .values()
                    .iter()
                    .map(|&v| Value::String(orbitcert::report::format_binary64_17(v)))
                    .collect(),
            ),
        );
    }
    let doc = json!({
        "version": orbitcert::report::JSON_SCHEMA_VERSION,
        "params": { "r": config.r, "x0": config.x0, "iterates": config.iterates },
        "orbits": orbit_map,
    });
    serde_json::to_writer_pretty(&mut *w, &doc)
        .map_err(|e| io_err(std::io::Error::other(e)))?;
    writeln!(w).map_err(io_err)
}
