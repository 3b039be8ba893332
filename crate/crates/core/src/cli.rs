//! Command-line surface.
//!
//! Exit codes: 0 success, 1 a claim failed to verify, 2 usage error,
//! 3 resource bound exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{OutputFormat, RunConfig, CONFIG_ENV};
use crate::error::{Error, Result};
use crate::genfun::{brute_genfun, closed_form_m2, closed_form_m6, transfer_genfun, GenPoly};
use crate::group::GroupCtx;
use crate::matching::{acyclicity_report, enumerate_matchings, SubsetPair};
use crate::report::{
    build_report, Metadata, RangeFilter, Report, ReportRow, REPORT_SCHEMA_VERSION,
};
use crate::verifier::{
    certify_amp, certify_coprime6, classify, nonprime_counterexample, Certificate, Claim,
    GroupDescriptor,
};

#[derive(Debug, Parser)]
#[command(name = "amplab", version)]
#[command(about = "Exact verification of the (acyclic) matching property in Z and Z/nZ")]
pub struct Cli {
    /// TOML file with run defaults
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    /// Largest |A| for which matchings are enumerated
    #[arg(long, global = true)]
    bound: Option<usize>,

    /// Largest group order for exhaustive pair sweeps
    #[arg(long, global = true)]
    group_bound: Option<u32>,

    /// Disable unit-scaling symmetry reduction in exhaustive sweeps
    #[arg(long, global = true)]
    no_symmetry: bool,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled spot checks in Z
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Acyclic matching property verdict for Z/nZ (n >= 1) or Z
    Classify { group: GroupDescriptor },
    /// Exhaustively check every valid pair of Z/nZ
    VerifyAmp { n: u32 },
    /// List all matchings of a pair and their multiplicity classes
    Enumerate {
        /// Group order n, or Z
        group: GroupDescriptor,
        /// Comma-separated elements of A
        #[arg(required_unless_present = "construction", allow_hyphen_values = true)]
        a: Option<String>,
        /// Comma-separated elements of B
        #[arg(required_unless_present = "construction", allow_hyphen_values = true)]
        b: Option<String>,
        /// Use A = Z/nZ \ {0,1,3}, B = Z/nZ \ {0,1,M}
        #[arg(long, value_name = "M", conflicts_with_all = ["a", "b"])]
        construction: Option<u32>,
    },
    /// Generating function of matchings for A = Z/nZ \ {0,1,3}, B = Z/nZ \ {0,1,m}
    Genfun {
        n: u32,
        m: u32,
        #[arg(long, value_enum, default_value_t = Method::Transfer)]
        method: Method,
        /// Cross-validate every method applicable to (n, m)
        #[arg(long)]
        check: bool,
    },
    /// Emit a certificate
    Certify { kind: CertKind, n: u32 },
    /// Verdict table for n in FROM..=TO
    Report {
        from: u32,
        to: u32,
        #[arg(long, value_enum, default_value_t = RangeFilter::All)]
        filter: RangeFilter,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Transfer,
    Brute,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertKind {
    Coprime6,
    Nonprime,
    Amp,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() {
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(b) = cli.bound {
        cfg.enumeration_bound = b;
    }
    if let Some(b) = cli.group_bound {
        cfg.exhaustive_group_bound = b;
    }
    if cli.no_symmetry {
        cfg.symmetry_reduction = false;
    }
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    if let Some(o) = &cli.out {
        cfg.output_path = Some(o.clone());
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(Error::Precondition)?;
    Ok(cfg)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Sends `content` to the configured output path, or to stdout.
fn emit(cfg: &RunConfig, stdout: &mut dyn Write, content: &str) -> Result<()> {
    match &cfg.output_path {
        Some(p) => write_file(p, content),
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8> {
    let cfg = resolve_config(&cli)?;
    match cli.command {
        Command::Classify { group } => {
            let cert = classify(group, &cfg.classify_options())?;
            emit_certificate(&cfg, &cert, stdout, stderr)
        }
        Command::VerifyAmp { n } => {
            let cert = certify_amp(n, cfg.symmetry_reduction, &cfg.bounds())?;
            emit_certificate(&cfg, &cert, stdout, stderr)
        }
        Command::Certify { kind, n } => {
            let cert = match kind {
                CertKind::Coprime6 => certify_coprime6(n, &cfg.bounds())?,
                CertKind::Nonprime => nonprime_counterexample(n)?,
                CertKind::Amp => certify_amp(n, cfg.symmetry_reduction, &cfg.bounds())?,
            };
            emit_certificate(&cfg, &cert, stdout, stderr)
        }
        Command::Enumerate {
            group,
            a,
            b,
            construction,
        } => {
            let pair = match (construction, group) {
                (Some(m), GroupDescriptor::Cyclic { n }) => SubsetPair::construction(n, m)?,
                (Some(_), GroupDescriptor::Integers) => {
                    return Err(Error::Precondition(
                        "--construction needs a cyclic group".into(),
                    ))
                }
                (None, g) => {
                    let ctx = match g {
                        GroupDescriptor::Cyclic { n } => GroupCtx::cyclic(n)?,
                        GroupDescriptor::Integers => GroupCtx::integers(),
                    };
                    SubsetPair::new(
                        ctx,
                        parse_list(a.as_deref().unwrap_or(""))?,
                        parse_list(b.as_deref().unwrap_or(""))?,
                    )?
                }
            };
            cmd_enumerate(&cfg, &pair, stdout)
        }
        Command::Genfun {
            n,
            m,
            method,
            check,
        } => cmd_genfun(&cfg, n, m, method, check, stdout),
        Command::Report { from, to, filter } => {
            let report = build_report(from, to, filter, &cfg)?;
            let body = match cfg.output_format {
                OutputFormat::Json => with_newline(serde_json::to_string_pretty(&report)?),
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Text => report.to_text(),
            };
            emit(&cfg, stdout, &body)?;
            Ok(if report.all_verified() { 0 } else { 1 })
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Precondition(format!("not an integer: {t:?}")))
        })
        .collect()
}

fn emit_certificate(
    cfg: &RunConfig,
    cert: &Certificate,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8> {
    let json = with_newline(cert.to_json_pretty());
    match (cfg.output_format, &cfg.output_path) {
        (OutputFormat::Text, Some(path)) => {
            write_file(path, &json)?;
            let _ = writeln!(stdout, "{}", cert.summary());
            let _ = writeln!(stdout, "certificate: {}", path.display());
        }
        (OutputFormat::Text, None) => {
            let _ = writeln!(stdout, "{}", cert.summary());
            let _ = write!(stdout, "{json}");
        }
        (OutputFormat::Json, _) => emit(cfg, stdout, &json)?,
        (OutputFormat::Csv, _) => {
            let n = match cert.claim {
                Claim::Coprime6Failure { n }
                | Claim::NonprimeFailure { n }
                | Claim::AmpHolds { n }
                | Claim::Classification {
                    group: GroupDescriptor::Cyclic { n },
                } => n,
                Claim::Classification {
                    group: GroupDescriptor::Integers,
                } => 0,
            };
            let row = ReportRow::from_certificate(n, cert);
            let report = Report {
                schema_version: REPORT_SCHEMA_VERSION,
                seed: cfg.seed,
                enumeration_bound: cfg.enumeration_bound,
                exhaustive_group_bound: cfg.exhaustive_group_bound,
                symmetry_reduction: cfg.symmetry_reduction,
                rows: vec![row],
                metadata: Metadata {
                    wall_time_ms: vec![],
                    total_wall_time_ms: 0.0,
                },
            };
            emit(cfg, stdout, &report.to_csv())?;
        }
    }
    if cert.verified {
        Ok(0)
    } else {
        let _ = writeln!(stderr, "verification failed for {}", cert.summary());
        let _ = writeln!(stderr, "{json}");
        Ok(1)
    }
}

fn cmd_enumerate(cfg: &RunConfig, pair: &SubsetPair, stdout: &mut dyn Write) -> Result<u8> {
    let matchings: Vec<_> = enumerate_matchings(pair, cfg.enumeration_bound)?.collect();
    let report = acyclicity_report(pair, cfg.enumeration_bound)?;
    let body = match cfg.output_format {
        OutputFormat::Json => with_newline(serde_json::to_string_pretty(&json!({
            "pair": pair,
            "matchings": matchings
                .iter()
                .map(|m| m.assignment().iter().map(|e| e.0).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "classes": report.table(),
            "acyclic_witness": report
                .acyclic_witness
                .as_ref()
                .map(|m| m.assignment().iter().map(|e| e.0).collect::<Vec<_>>()),
        }))?),
        OutputFormat::Csv => {
            let mut s = String::from("index,assignment,multiplicity\n");
            for (i, m) in matchings.iter().enumerate() {
                let assignment: Vec<String> =
                    m.assignment().iter().map(|e| e.to_string()).collect();
                let mv = crate::matching::multiplicity(m);
                let mv: Vec<String> = mv
                    .entries()
                    .iter()
                    .map(|(e, c)| format!("{e}:{c}"))
                    .collect();
                s.push_str(&format!("{i},{},{}\n", assignment.join(" "), mv.join(" ")));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!("{pair}\n{} matchings\n", report.total_matchings);
            for m in &matchings {
                s.push_str(&format!("  {m}\n"));
            }
            s.push_str(&format!("{} multiplicity classes\n", report.classes.len()));
            for c in &report.classes {
                s.push_str(&format!("  {} x{}\n", c.multiplicity, c.count));
            }
            match &report.acyclic_witness {
                Some(w) => s.push_str(&format!("acyclic: {w}\n")),
                None => s.push_str("acyclic: none\n"),
            }
            s
        }
    };
    emit(cfg, stdout, &body)?;
    Ok(0)
}

fn closed_form(n: u32, m: u32) -> Result<GenPoly> {
    match m {
        2 => closed_form_m2(n),
        6 => closed_form_m6(n),
        _ => Err(Error::Precondition(format!(
            "no closed form for m={m}; closed forms exist for m = 2 and m = 6"
        ))),
    }
}

fn compute(method: Method, n: u32, m: u32, bound: usize) -> Result<GenPoly> {
    match method {
        Method::Transfer => transfer_genfun(n, m),
        Method::Brute => brute_genfun(n, m, bound),
        Method::Closed => closed_form(n, m),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Transfer => "transfer",
        Method::Brute => "brute",
        Method::Closed => "closed",
    }
}

fn cmd_genfun(
    cfg: &RunConfig,
    n: u32,
    m: u32,
    method: Method,
    check: bool,
    stdout: &mut dyn Write,
) -> Result<u8> {
    let primary = compute(method, n, m, cfg.enumeration_bound)?;
    let mut agreement: Vec<(&'static str, bool)> = Vec::new();
    if check {
        for other in [Method::Transfer, Method::Brute, Method::Closed] {
            // skip methods whose preconditions rule out (n, m)
            let Ok(p) = compute(other, n, m, cfg.enumeration_bound) else {
                continue;
            };
            agreement.push((method_name(other), p == primary));
        }
    }
    let all_agree = agreement.iter().all(|&(_, ok)| ok);
    let body = match cfg.output_format {
        OutputFormat::Json => {
            let mut v = json!({
                "n": n,
                "m": m,
                "method": method_name(method),
                "text": primary.to_string(),
                "terms": primary,
            });
            if check {
                v["check"] = json!(agreement
                    .iter()
                    .map(|(name, ok)| json!({"method": name, "agrees": ok}))
                    .collect::<Vec<_>>());
            }
            with_newline(serde_json::to_string_pretty(&v)?)
        }
        OutputFormat::Csv => {
            let mut s = String::from("w0,w1,w3,coefficient\n");
            for (t, c) in primary.terms() {
                s.push_str(&format!("{},{},{},{c}\n", t.w0, t.w1, t.w3));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!("{primary}\n");
            if check {
                for (name, ok) in &agreement {
                    s.push_str(&format!(
                        "{name}: {}\n",
                        if *ok { "agrees" } else { "DISAGREES" }
                    ));
                }
                s.push_str(if all_agree {
                    "all methods agree\n"
                } else {
                    "methods disagree\n"
                });
            }
            s
        }
    };
    emit(cfg, stdout, &body)?;
    Ok(if all_agree { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("amplab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn genfun_text() {
        let (code, out, _) = run_capture(&["genfun", "7", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "2*c0*c1*c3^2\n");
        let (_, out, _) = run_capture(&["genfun", "6", "2"]);
        assert_eq!(out, "c1^2*c3\n");
    }

    #[test]
    fn genfun_check_all_methods() {
        let (code, out, _) = run_capture(&["genfun", "10", "6", "--check"]);
        assert_eq!(code, 0, "{out}");
        for name in ["transfer", "brute", "closed"] {
            assert!(out.contains(&format!("{name}: agrees")), "{out}");
        }
    }

    #[test]
    fn genfun_closed_unavailable_is_usage_error() {
        let (code, _, err) = run_capture(&["genfun", "10", "3", "--method", "closed"]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn bad_descriptor_is_usage_error() {
        let (code, _, _) = run_capture(&["classify", "seven"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["classify", "0"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn resource_bound_exit_code() {
        let (code, _, err) = run_capture(&["verify-amp", "9"]);
        assert_eq!(code, 3, "{err}");
        let (code, _, _) = run_capture(&["genfun", "16", "2", "--method", "brute", "--bound", "5"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn enumerate_integers_with_negatives() {
        let (code, out, err) = run_capture(&["enumerate", "Z", "-3,1", "2,-1"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("acyclic:"), "{out}");
    }

    #[test]
    fn enumerate_construction() {
        let (code, out, _) = run_capture(&["enumerate", "7", "--construction", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("2 matchings"));
        assert!(out.contains("acyclic: none"));
    }
}
