//! `dunkl`: tables and verification reports for Sheffer-Dunkl families.
//!
//! Exit status: 0 on success, 1 when a verification fails (the report is still
//! written), 2 on usage or domain errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dunkl_core::moments::{equivalence_verify, preset_thorne_measure, sheffer_moments, thorne_moments, thorne_verify};
use dunkl_core::numeric::{crosscheck_moments, DensityEval, DensityKind};
use dunkl_core::rational::format_rational;
use dunkl_core::series::DEFAULT_ORDER;
use dunkl_core::sheffer::{generate_sequence, preset_family, FamilySpec, Preset};
use dunkl_core::{DunklParam, Error};

#[derive(Parser)]
#[command(name = "dunkl", version, about = "Sheffer-Dunkl polynomial families and their moment functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Series truncation order
    #[arg(long, global = true, env = "DUNKL_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Dunkl factorials gamma(0) ..= gamma(max)
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Polynomials s_0 ..= s_n of a named family
    Sequence {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Highest index; defaults to the truncation order
        #[arg(long)]
        n: Option<usize>,
    },
    /// Thorne table of the family's closed-form functional
    VerifyThorne {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Rebuild the family from its Thorne and Sheffer moments and compare
    VerifySheffer {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Thorne moments of g and Sheffer moments of 1/g
    Moments {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Quadrature moments of a Bessel-K density against their exact targets
    BesselkCheck {
        /// signed or even
        #[arg(long)]
        density: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// A verb's result: JSON document plus the same content as a flat table.
struct Report {
    json: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    pass: bool,
}

fn family(name: &str, nu: &DunklParam, order: usize, n: usize) -> Result<FamilySpec, Error> {
    let preset: Preset = name.parse()?;
    if n > order {
        return Err(Error::Precision { needed: n, available: order });
    }
    Ok(preset_family(preset, nu, order))
}

fn run(command: &Command, order: usize) -> Result<Report, Error> {
    match command {
        Command::Gamma { nu, max } => {
            let nu = DunklParam::parse(nu)?;
            let values: Vec<String> = (0..=*max).map(|n| format_rational(&nu.gamma(n))).collect();
            Ok(Report {
                json: json!({ "nu": nu.to_string(), "gamma": values }),
                headers: vec!["n", "gamma"],
                rows: values.iter().enumerate().map(|(n, v)| vec![n.to_string(), v.clone()]).collect(),
                pass: true,
            })
        }
        Command::Sequence { family: name, nu, n } => {
            let nu = DunklParam::parse(nu)?;
            let n = n.unwrap_or(order);
            let spec = family(name, &nu, order, n)?;
            let seq = generate_sequence(&spec, n)?;
            let json = serde_json::to_value(seq.to_json()).expect("sequence serializes");
            let rows = seq.polys().iter().enumerate().map(|(k, p)| vec![k.to_string(), p.to_string()]).collect();
            Ok(Report { json, headers: vec!["n", "s_n"], rows, pass: true })
        }
        Command::VerifyThorne { family: name, nu, n_max } => {
            let nu = DunklParam::parse(nu)?;
            let preset: Preset = name.parse()?;
            let spec = family(name, &nu, order, *n_max)?;
            let seq = generate_sequence(&spec, *n_max)?;
            let report = thorne_verify(&preset_thorne_measure(preset, &nu), &seq)?;
            let rows = report
                .pairs
                .iter()
                .map(|p| {
                    vec![p.n.to_string(), p.r.to_string(), p.value.clone(), p.expected.clone(), p.pass.to_string()]
                })
                .collect();
            Ok(Report {
                json: serde_json::to_value(&report).expect("report serializes"),
                headers: vec!["n", "r", "value", "expected", "pass"],
                rows,
                pass: report.all_pass,
            })
        }
        Command::VerifySheffer { family: name, nu, n_max } => {
            let nu = DunklParam::parse(nu)?;
            let spec = family(name, &nu, order, *n_max)?;
            let report = equivalence_verify(&spec, *n_max)?;
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.generated.clone(),
                        r.from_thorne.clone(),
                        r.from_sheffer.clone(),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            Ok(Report {
                json: serde_json::to_value(&report).expect("report serializes"),
                headers: vec!["n", "generated", "from_thorne", "from_sheffer", "pass"],
                rows,
                pass: report.all_pass,
            })
        }
        Command::Moments { family: name, nu, n_max } => {
            let nu = DunklParam::parse(nu)?;
            let spec = family(name, &nu, order, *n_max)?;
            let mu: Vec<String> = thorne_moments(&spec).iter().take(n_max + 1).map(format_rational).collect();
            let omega: Vec<String> = sheffer_moments(&spec)?.iter().take(n_max + 1).map(format_rational).collect();
            let rows = (0..=*n_max).map(|n| vec![n.to_string(), mu[n].clone(), omega[n].clone()]).collect();
            Ok(Report {
                json: json!({ "family": name, "nu": nu.to_string(), "mu": mu, "omega": omega }),
                headers: vec!["n", "mu", "omega"],
                rows,
                pass: true,
            })
        }
        Command::BesselkCheck { density, nu, n_max, tol } => {
            let nu = DunklParam::parse(nu)?;
            let d = DensityEval::from_param(DensityKind::parse(density)?, &nu)?;
            let report = crosscheck_moments(&d, *n_max, *tol)?;
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format!("{:.12e}", r.numeric),
                        format!("{:.12e}", r.target),
                        format!("{:.3e}", r.rel_err),
                    ]
                })
                .collect();
            Ok(Report {
                json: serde_json::to_value(&report).expect("report serializes"),
                headers: vec!["n", "numeric", "target", "rel_err"],
                rows,
                pass: report.pass,
            })
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&report.json).expect("json renders");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&report.headers).expect("in-memory write");
            for row in &report.rows {
                writer.write_record(row).expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Pretty => {
            let mut widths: Vec<usize> = report.headers.iter().map(|h| h.len()).collect();
            for row in &report.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(report.headers.clone());
            for row in &report.rows {
                out += &line(row.iter().map(String::as_str).collect());
            }
            if !report.pass {
                out += "verification FAILED\n";
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command, cli.order) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = render(&report, cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
