//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 invalid
//! arguments.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charts::{ExtensionKind, EXTENSION_NAMES};
use crate::scalar::{format_rational, parse_rational, q, Q};
use crate::sl2cat::{
    casimir_scalar, composition_factors, coset_representative, identify, is_simple_in_window,
    make_catalog, signature, CatalogName,
};
use crate::verify::{compute, verify_all, verify_criterion, VerifyConfig, CRITERIA};
use crate::weights::{WeightModule, WeightWindow, DEFAULT_HALF_WIDTH, MIN_HALF_WIDTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "dcech",
    version,
    about = "Cech cohomology of twisted D-modules on P^1 as sl2 weight modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute and identify H0 and H1 of an extension.
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        /// One of: omega, j_x_dot, j_x_shriek, iota_x, iota_z, j_z_dot,
        /// j_z_shriek, j_dot, j_shriek, j_shriek_x_dot_z, j_dot_x_shriek_z.
        #[arg(long)]
        extension: String,
        /// Rational `p/q`; required for j_dot, j_shriek and the mixed kinds.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Window half-width in weight steps.
        #[arg(long, env = "DCECH_WINDOW", default_value_t = DEFAULT_HALF_WIDTH)]
        window: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a catalog module's weight table.
    Module {
        /// e.g. "R(1,>)", "M(-2)^∨", "L(3)", "M(0)+M(0)^-".
        #[arg(long, allow_hyphen_values = true)]
        name: String,
        #[arg(long, env = "DCECH_WINDOW", default_value_t = DEFAULT_HALF_WIDTH)]
        window: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the verification table.
    Verify {
        #[arg(long, allow_hyphen_values = true, default_value_t = -4)]
        lambda_min: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 4)]
        lambda_max: i64,
        /// Only rows of this criterion (1-9).
        #[arg(long)]
        criterion: Option<u8>,
        #[arg(long, env = "DCECH_WINDOW", default_value_t = DEFAULT_HALF_WIDTH)]
        window: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

/// Output of a run: text for stdout and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    /// Goes to stderr; names failing rows.
    pub diagnostics: String,
    pub exit_code: u8,
}

/// The parsed command line is the run configuration.
pub type RunConfig = Cli;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InputJson {
    pub lambda: i64,
    pub alpha: Option<String>,
    pub extension: String,
    pub window: i64,
    /// `−2α−λ`; weight spaces are reported by index `n`, weight `offset + 2n`.
    pub offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorJson {
    pub name: String,
    pub mult: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub identified: String,
    pub casimir: Option<String>,
    pub dims: Vec<(i64, usize)>,
    pub factors: Vec<FactorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyJson {
    pub input: InputJson,
    pub h0: ModuleJson,
    pub h1: ModuleJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogJson {
    pub name: String,
    pub offset: String,
    pub casimir: Option<String>,
    pub simple: bool,
    pub dims: Vec<(i64, usize)>,
    /// `[n, rank of e from n+1 to n]`.
    pub e_ranks: Vec<(i64, usize)>,
    /// `[n, rank of f from n to n+1]`.
    pub f_ranks: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RowJson {
    pub criterion: u8,
    pub lambda: i64,
    pub extension: String,
    pub alpha: Option<String>,
    pub row: String,
    pub passed: bool,
    pub detail: String,
}

fn check_window(window: i64) -> Result<i64, CliError> {
    if window < MIN_HALF_WIDTH {
        return Err(CliError::Usage(format!(
            "--window must be at least {MIN_HALF_WIDTH}, got {window}"
        )));
    }
    Ok(window)
}

fn parse_kind(extension: &str, alpha: Option<&str>) -> Result<ExtensionKind, CliError> {
    let alpha = alpha
        .map(parse_rational)
        .transpose()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    ExtensionKind::from_name(extension, alpha).map_err(|e| {
        CliError::Usage(format!(
            "{e} (known extensions: {})",
            EXTENSION_NAMES.join(", ")
        ))
    })
}

fn describe(m: &WeightModule, lambda: i64, shift: i64) -> Result<ModuleJson, CliError> {
    let fail = |e: crate::sl2cat::Sl2Error| CliError::Failure(e.to_string());
    let identified = identify(m, lambda).map_err(fail)?;
    let casimir = casimir_scalar(m).map_err(fail)?;
    let factors = composition_factors(m, lambda).map_err(fail)?;
    Ok(ModuleJson {
        identified: identified.to_string(),
        casimir: casimir.as_ref().map(format_rational),
        dims: m
            .interior_dims()
            .into_iter()
            .map(|(n, d)| (n - shift, d))
            .collect(),
        factors: factors
            .into_iter()
            .map(|(name, mult)| FactorJson {
                name: name.to_string(),
                mult,
            })
            .collect(),
    })
}

/// Computes the cohomology report for one extension.
pub fn cohomology_report(
    kind: &ExtensionKind,
    lambda: i64,
    window: i64,
) -> Result<CohomologyJson, CliError> {
    let (h0, h1) = compute(kind, lambda, window).map_err(CliError::Failure)?;
    let alpha = kind.coset_alpha();
    let shift = h0
        .window()
        .parameter_shift(lambda, &alpha)
        .expect("window built for this coset");
    Ok(CohomologyJson {
        input: InputJson {
            lambda,
            alpha: kind.alpha().map(format_rational),
            extension: kind.name().to_string(),
            window,
            offset: format_rational(&(-q(2) * &alpha - q(lambda))),
        },
        h0: describe(&h0, lambda, shift)?,
        h1: describe(&h1, lambda, shift)?,
    })
}

fn module_text(out: &mut String, label: &str, m: &ModuleJson, offset: &Q) {
    let _ = writeln!(out, "{label}: {}", m.identified);
    if let Some(c) = &m.casimir {
        let _ = writeln!(out, "  casimir: {c}");
    }
    if !m.factors.is_empty() {
        let fs: Vec<String> = m
            .factors
            .iter()
            .map(|f| format!("{} x{}", f.name, f.mult))
            .collect();
        let _ = writeln!(out, "  composition factors: {}", fs.join(", "));
    }
    if !m.dims.is_empty() {
        let _ = writeln!(out, "  {:>5} {:>8} {:>4}", "n", "weight", "dim");
        for &(n, d) in &m.dims {
            let w = offset + q(2 * n);
            let _ = writeln!(out, "  {n:>5} {:>8} {d:>4}", format_rational(&w));
        }
    }
}

fn catalog_report(name: &CatalogName, window: i64) -> Result<CatalogJson, CliError> {
    let rep = coset_representative(name);
    let win = WeightWindow::centered(&rep, window);
    let m = make_catalog(name, &win).map_err(|e| CliError::Usage(e.to_string()))?;
    let sig = signature(&m);
    let casimir = casimir_scalar(&m).map_err(|e| CliError::Failure(e.to_string()))?;
    let edges = |ranks: &[usize]| -> Vec<(i64, usize)> {
        (sig.lo..sig.hi)
            .zip(ranks.iter().copied())
            .filter(|&(n, _)| m.dim(n) > 0 || m.dim(n + 1) > 0)
            .collect()
    };
    Ok(CatalogJson {
        name: name.to_string(),
        offset: format_rational(win.offset()),
        casimir: casimir.as_ref().map(format_rational),
        simple: is_simple_in_window(&m),
        dims: m.interior_dims(),
        e_ranks: edges(&sig.e_ranks),
        f_ranks: edges(&sig.f_ranks),
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

/// Executes a parsed command line.
pub fn run(cli: &RunConfig) -> Result<Report, CliError> {
    match &cli.command {
        Command::Cohomology {
            lambda,
            extension,
            alpha,
            window,
            format,
        } => {
            let window = check_window(*window)?;
            let kind = parse_kind(extension, alpha.as_deref())?;
            let rep = cohomology_report(&kind, *lambda, window)?;
            let output = match format {
                Format::Json => to_json(&rep),
                Format::Text => {
                    let offset = parse_rational(&rep.input.offset).expect("own output");
                    let mut out = String::new();
                    let _ = writeln!(out, "extension: {kind}, λ = {lambda}, window ±{window}");
                    let _ = writeln!(out, "weights: {} + 2n", rep.input.offset);
                    module_text(&mut out, "H0", &rep.h0, &offset);
                    module_text(&mut out, "H1", &rep.h1, &offset);
                    out
                }
            };
            Ok(Report {
                output,
                diagnostics: String::new(),
                exit_code: 0,
            })
        }
        Command::Module {
            name,
            window,
            format,
        } => {
            let window = check_window(*window)?;
            let name: CatalogName = name
                .parse()
                .map_err(|e: crate::sl2cat::Sl2Error| CliError::Usage(e.to_string()))?;
            let rep = catalog_report(&name, window)?;
            let output = match format {
                Format::Json => to_json(&rep),
                Format::Text => {
                    let offset = parse_rational(&rep.offset).expect("own output");
                    let mut out = String::new();
                    let _ = writeln!(out, "{}", rep.name);
                    if let Some(c) = &rep.casimir {
                        let _ = writeln!(out, "casimir: {c}");
                    }
                    let _ = writeln!(out, "simple in window: {}", rep.simple);
                    let _ = writeln!(
                        out,
                        "{:>5} {:>8} {:>4} {:>12} {:>12}",
                        "n", "weight", "dim", "e to n-1", "f to n+1"
                    );
                    let rank = |list: &[(i64, usize)], n: i64| {
                        list.iter()
                            .find(|&&(k, _)| k == n)
                            .map_or("-".to_string(), |&(_, r)| r.to_string())
                    };
                    for &(n, d) in &rep.dims {
                        let w = &offset + q(2 * n);
                        let _ = writeln!(
                            out,
                            "{n:>5} {:>8} {d:>4} {:>12} {:>12}",
                            format_rational(&w),
                            rank(&rep.e_ranks, n - 1),
                            rank(&rep.f_ranks, n)
                        );
                    }
                    out
                }
            };
            Ok(Report {
                output,
                diagnostics: String::new(),
                exit_code: 0,
            })
        }
        Command::Verify {
            lambda_min,
            lambda_max,
            criterion,
            window,
            format,
        } => {
            let window = check_window(*window)?;
            if lambda_min > lambda_max {
                return Err(CliError::Usage("--lambda-min exceeds --lambda-max".into()));
            }
            let cfg = VerifyConfig {
                lambdas: (*lambda_min..=*lambda_max).collect(),
                half_width: window,
                ..VerifyConfig::default()
            };
            let rows = match criterion {
                Some(c) if CRITERIA.contains(c) => verify_criterion(*c, &cfg),
                Some(c) => return Err(CliError::Usage(format!("no criterion {c}"))),
                None => verify_all(&cfg),
            };
            let failed = rows.iter().filter(|r| !r.passed).count();
            let output = match format {
                Format::Json => {
                    let rows: Vec<RowJson> = rows
                        .iter()
                        .map(|r| RowJson {
                            criterion: r.criterion,
                            lambda: r.lambda,
                            extension: r.extension.clone(),
                            alpha: r.alpha.as_ref().map(format_rational),
                            row: r.row.clone(),
                            passed: r.passed,
                            detail: r.detail.clone(),
                        })
                        .collect();
                    to_json(&rows)
                }
                Format::Text => {
                    let mut out = String::new();
                    for r in &rows {
                        let alpha = r
                            .alpha
                            .as_ref()
                            .map(|a| format!(" α={}", format_rational(a)))
                            .unwrap_or_default();
                        let status = if r.passed { "ok  " } else { "FAIL" };
                        let _ = write!(
                            out,
                            "{status} [{}] λ={} {}{alpha}: {}",
                            r.criterion, r.lambda, r.extension, r.row
                        );
                        if !r.passed {
                            let _ = write!(out, " -- {}", r.detail);
                        }
                        out.push('\n');
                    }
                    let _ = writeln!(out, "{} rows, {failed} failed", rows.len());
                    out
                }
            };
            let mut diagnostics = String::new();
            for r in rows.iter().filter(|r| !r.passed) {
                let alpha = r.alpha.as_ref().map(format_rational).unwrap_or("-".into());
                let _ = writeln!(
                    diagnostics,
                    "failed: criterion {} λ={} {} α={}: {}: {}",
                    r.criterion, r.lambda, r.extension, alpha, r.row, r.detail
                );
            }
            Ok(Report {
                output,
                diagnostics,
                exit_code: u8::from(failed > 0),
            })
        }
    }
}

/// Entry point shared by the binary: parses `args`, prints, returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(rep) => {
            print!("{}", rep.output);
            eprint!("{}", rep.diagnostics);
            rep.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("dcech").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn negative_numbers_parse() {
        let cli = parse(&[
            "cohomology",
            "--lambda",
            "-3",
            "--extension",
            "j_dot",
            "--alpha",
            "-7/2",
        ]);
        match cli.command {
            Command::Cohomology { lambda, alpha, .. } => {
                assert_eq!(lambda, -3);
                assert_eq!(alpha.as_deref(), Some("-7/2"));
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn small_window_is_usage_error() {
        let cli = parse(&[
            "cohomology",
            "--lambda",
            "0",
            "--extension",
            "omega",
            "--window",
            "4",
        ]);
        assert_eq!(run(&cli).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_alpha_is_usage_error() {
        let cli = parse(&["cohomology", "--lambda", "0", "--extension", "j_dot"]);
        assert_eq!(run(&cli).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn omega_report() {
        let rep = cohomology_report(&ExtensionKind::Omega, 0, 12).unwrap();
        assert_eq!(rep.h0.identified, "Zero");
        assert_eq!(rep.h1.identified, "L(0)");
        assert_eq!(rep.h1.dims, vec![(0, 1)]);
        assert_eq!(rep.h1.casimir.as_deref(), Some("0"));
    }
}
