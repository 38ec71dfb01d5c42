//! `riley` command-line tool.
//!
//! Exit codes: 0 pass, 1 scan violation or verification failure, 2 input error,
//! 3 I/O error, 4 numerical failure.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use riley::classify::{build_table, build_table_cached, full_report_from, CacheError, FullReport};
use riley::epimorphism::{detects_epimorphism, scan_epi_pairs_in, EpiPair};
use riley::rep_verify::{
    torus_real_root_check, verify_pair, RepCheckReport, RepError, RootError, DEFAULT_REP_TOLERANCE,
    DEFAULT_ROOT_TOLERANCE,
};
use riley::riley::RileyRecord;
use riley::two_bridge::TwoBridgePair;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "riley", version, about = "Riley polynomials of 2-bridge knots S(alpha,beta)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// JSON-lines cache of computed records (verified on every read)
    #[arg(long, global = true, env = "RILEY_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads; output is identical for every value
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Backward-error tolerance for polynomial roots
    #[arg(long = "root-tol", global = true, default_value_t = DEFAULT_ROOT_TOLERANCE)]
    root_tol: f64,

    /// Tolerance on the relator residual max|ρ(w)ρ(x) - ρ(y)ρ(w)|
    #[arg(long = "rep-tol", global = true, default_value_t = DEFAULT_REP_TOLERANCE)]
    rep_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Epsilon sequence and Riley polynomial of S(alpha,beta)
    Riley {
        #[arg(allow_negative_numbers = true)]
        alpha: i64,
        #[arg(allow_negative_numbers = true)]
        beta: i64,
    },
    /// Riley polynomials of every S(alpha,beta) with 0 < beta < alpha <= max-alpha
    Table {
        #[arg(long = "max-alpha")]
        max_alpha: i64,
        /// Also list the mirror images S(alpha,-beta)
        #[arg(long)]
        mirrors: bool,
    },
    /// Classes, injectivity on the transversal, and the equal-polynomial scan
    Classify {
        #[arg(long = "max-alpha")]
        max_alpha: i64,
    },
    /// Divisibility test phi_{S(a2,b2)} | phi_{S(a1,b1)}, or a scan with --scan
    Epi {
        #[arg(allow_negative_numbers = true)]
        pairs: Vec<i64>,
        #[arg(long)]
        scan: bool,
        #[arg(long = "max-alpha")]
        max_alpha: Option<i64>,
    },
    /// Root-by-root check of the parabolic representations of S(alpha,beta)
    Verify {
        #[arg(allow_negative_numbers = true)]
        alpha: i64,
        #[arg(allow_negative_numbers = true)]
        beta: i64,
        /// Also report whether every root is real
        #[arg(long = "torus-check")]
        torus_check: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
    Numeric(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| run(&cli, &mut buf));
    let mut stdout = io::stdout().lock();
    let flushed = stdout.write_all(&buf).and_then(|()| stdout.flush());
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        (Err(failure), _) => {
            let (code, msg) = match failure {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Io(m) => (EXIT_IO, m),
                Failure::Numeric(m) => (EXIT_NUMERIC, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    if !(cli.root_tol > 0.0) || !(cli.rep_tol > 0.0) {
        return Err(Failure::Input("tolerances must be positive".into()));
    }
    match &cli.command {
        Command::Riley { alpha, beta } => cmd_riley(cli, out, *alpha, *beta),
        Command::Table { max_alpha, mirrors } => cmd_table(cli, out, *max_alpha, *mirrors),
        Command::Classify { max_alpha } => cmd_classify(cli, out, *max_alpha),
        Command::Epi { pairs, scan, max_alpha } => cmd_epi(cli, out, pairs, *scan, *max_alpha),
        Command::Verify { alpha, beta, torus_check } => cmd_verify(cli, out, *alpha, *beta, *torus_check),
    }
}

fn parse_pair(alpha: i64, beta: i64) -> Result<TwoBridgePair, Failure> {
    let pair = TwoBridgePair::normalize_odd(alpha, beta).map_err(|e| Failure::Input(e.to_string()))?;
    if pair.beta() != beta {
        eprintln!("note: S({alpha},{beta}) uses even beta; normalized to {pair}");
    }
    Ok(pair)
}

/// Even bounds are rounded down to the nearest odd value with a warning.
fn parse_max_alpha(max_alpha: i64) -> Result<i64, Failure> {
    if max_alpha < 3 {
        return Err(Failure::Input(format!("max-alpha must be at least 3 (got {max_alpha})")));
    }
    if max_alpha % 2 == 0 {
        eprintln!("warning: max-alpha {max_alpha} is even; using {}", max_alpha - 1);
        return Ok(max_alpha - 1);
    }
    Ok(max_alpha)
}

fn write_json(out: &mut impl Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_riley(cli: &Cli, out: &mut impl Write, alpha: i64, beta: i64) -> Result<u8, Failure> {
    let pair = parse_pair(alpha, beta)?;
    let record = RileyRecord::compute(pair);
    match cli.format {
        Format::Text => {
            writeln!(out, "{pair}")?;
            writeln!(out, "eps = {}", record.eps)?;
            writeln!(out, "phi = {}", record.phi)?;
        }
        Format::Json => write_json(out, &record)?,
        Format::Csv => {
            riley::classify::RileyTable::from_records(pair.alpha(), vec![record]).write_csv(&mut *out)?;
        }
    }
    Ok(0)
}

fn load_table(cli: &Cli, max_alpha: i64, mirrors: bool) -> Result<riley::RileyTable, Failure> {
    match &cli.cache {
        Some(path) => Ok(build_table_cached(max_alpha, mirrors, path)?),
        None => Ok(build_table(max_alpha, mirrors)),
    }
}

fn cmd_table(cli: &Cli, out: &mut impl Write, max_alpha: i64, mirrors: bool) -> Result<u8, Failure> {
    let max_alpha = parse_max_alpha(max_alpha)?;
    let table = load_table(cli, max_alpha, mirrors)?;
    match cli.format {
        Format::Text => table.write_text(&mut *out)?,
        Format::Csv => table.write_csv(&mut *out)?,
        Format::Json => table.write_jsonl(&mut *out)?,
    }
    Ok(0)
}

fn cmd_classify(cli: &Cli, out: &mut impl Write, max_alpha: i64) -> Result<u8, Failure> {
    let max_alpha = parse_max_alpha(max_alpha)?;
    let report = full_report_from(load_table(cli, max_alpha, false)?);
    match cli.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            writeln!(out, "alpha,s_plus,sbar,classes")?;
            for a in &report.per_alpha {
                writeln!(out, "{},{},{},{}", a.alpha, a.s_plus, a.sbar, a.classes)?;
            }
        }
        Format::Text => write_classify_text(out, &report)?,
    }
    Ok(if report.passed() { 0 } else { EXIT_VIOLATION })
}

fn write_classify_text(out: &mut impl Write, report: &FullReport) -> io::Result<()> {
    writeln!(out, "max alpha: {}", report.max_alpha)?;
    writeln!(out, "alpha  S+  Sbar  classes")?;
    for a in &report.per_alpha {
        writeln!(out, "{:>5} {:>3} {:>5} {:>8}", a.alpha, a.s_plus, a.sbar, a.classes)?;
    }
    writeln!(out, "knot classes (up to mirror): {}", report.classes.len())?;
    writeln!(out, "Sbar size: {}", report.injectivity.sbar_size)?;
    writeln!(
        out,
        "injective on Sbar: {}",
        if report.injectivity.is_injective() { "yes" } else { "no" }
    )?;
    for g in &report.injectivity.duplicate_groups {
        let members: Vec<String> = g.members.iter().map(ToString::to_string).collect();
        writeln!(out, "  collision: {} share phi = {}", members.join(", "), g.phi)?;
    }
    writeln!(out, "equal-polynomial groups: {}", report.equal_polynomials.duplicate_groups.len())?;
    writeln!(out, "inequivalent pairs with equal polynomial: {}", report.equal_polynomials.violations.len())?;
    for v in &report.equal_polynomials.violations {
        writeln!(out, "  violation: {} and {} share phi = {}", v.first, v.second, v.phi)?;
    }
    writeln!(out, "epimorphisms detected across alpha: {}", report.epi_pairs.len())?;
    Ok(())
}

fn write_epi_csv(out: &mut impl Write, pairs: &[EpiPair]) -> Result<(), Failure> {
    writeln!(out, "alpha1,beta1,alpha2,beta2,cofactor")?;
    for e in pairs {
        let cofactor = serde_json::to_string(&e.cofactor).map_err(|e| Failure::Io(e.to_string()))?;
        writeln!(
            out,
            "{},{},{},{},\"{}\"",
            e.source.alpha(),
            e.source.beta(),
            e.target.alpha(),
            e.target.beta(),
            cofactor.replace('"', "\"\"")
        )?;
    }
    Ok(())
}

fn describe_cofactor(e: &EpiPair) -> String {
    match &e.cofactor {
        Some(psi) => psi.to_string(),
        None => "non-integral quotient over Q".to_string(),
    }
}

fn cmd_epi(
    cli: &Cli,
    out: &mut impl Write,
    pairs: &[i64],
    scan: bool,
    max_alpha: Option<i64>,
) -> Result<u8, Failure> {
    if scan {
        if !pairs.is_empty() {
            return Err(Failure::Input("--scan takes no positional pairs".into()));
        }
        let max_alpha = max_alpha.ok_or_else(|| Failure::Input("--scan needs --max-alpha".into()))?;
        let table = load_table(cli, parse_max_alpha(max_alpha)?, false)?;
        let found = scan_epi_pairs_in(&table.records);
        match cli.format {
            Format::Json => write_json(out, &found)?,
            Format::Csv => write_epi_csv(out, &found)?,
            Format::Text => {
                for e in &found {
                    writeln!(out, "{} -> {}  psi = {}", e.source, e.target, describe_cofactor(e))?;
                }
                writeln!(out, "{} pair(s)", found.len())?;
            }
        }
        return Ok(0);
    }
    let [a1, b1, a2, b2] = pairs[..] else {
        return Err(Failure::Input("epi expects ALPHA1 BETA1 ALPHA2 BETA2 or --scan --max-alpha N".into()));
    };
    let source = parse_pair(a1, b1)?;
    let target = parse_pair(a2, b2)?;
    let found = detects_epimorphism(&source, &target);
    match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Verdict<'a> {
                source: TwoBridgePair,
                target: TwoBridgePair,
                factor: bool,
                evidence: Option<&'a EpiPair>,
            }
            write_json(out, &Verdict { source, target, factor: found.is_some(), evidence: found.as_ref() })?;
        }
        Format::Csv => write_epi_csv(out, found.as_slice())?,
        Format::Text => {
            writeln!(out, "phi_{target} | phi_{source}?")?;
            match &found {
                Some(e) => {
                    let degree = e.cofactor.as_ref().map_or("?".to_string(), |p| p.degree().to_string());
                    writeln!(out, "factor: yes; psi = {} (degree {degree})", describe_cofactor(e))?;
                    writeln!(out, "epimorphism {source} -> {target} exists")?;
                }
                None => writeln!(out, "factor: no")?,
            }
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, out: &mut impl Write, alpha: i64, beta: i64, torus_check: bool) -> Result<u8, Failure> {
    let pair = parse_pair(alpha, beta)?;
    let report = match verify_pair(&pair, cli.root_tol, cli.rep_tol) {
        Ok(r) => r,
        Err(RootError::NoConvergence { iterations, best, residuals, worst_residual }) => {
            let mut msg = format!(
                "root finder did not converge for {pair} after {iterations} iterations (worst residual {worst_residual:e})"
            );
            for (z, r) in best.iter().zip(&residuals) {
                msg.push_str(&format!("\n  u = {:+.17e} {:+.17e}i  residual {r:e}", z.re, z.im));
            }
            return Err(Failure::Numeric(msg));
        }
        Err(e) => return Err(Failure::Numeric(e.to_string())),
    };
    let torus = if torus_check && pair.is_torus() {
        match torus_real_root_check(pair.alpha(), cli.root_tol) {
            Ok(v) => Some(v),
            Err(RepError::Root(e)) => return Err(Failure::Numeric(e.to_string())),
            Err(e) => return Err(Failure::Input(e.to_string())),
        }
    } else {
        None
    };
    match cli.format {
        Format::Json => write_verify_json(out, &report)?,
        Format::Csv => {
            writeln!(out, "re,im,multiplicity,phi_residual,relator_residual,passed")?;
            for r in &report.roots {
                writeln!(
                    out,
                    "{:e},{:e},{},{:e},{:e},{}",
                    r.u.re, r.u.im, r.multiplicity, r.phi_residual, r.relator_residual, r.passed
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "{pair}: {} root(s), degree {}", report.root_count(), report.degree)?;
            for r in &report.roots {
                writeln!(
                    out,
                    "u = {:+.12} {:+.12}i  mult {}  phi residual {:.3e}  relator residual {:.3e}  {}",
                    r.u.re,
                    r.u.im,
                    r.multiplicity,
                    r.phi_residual,
                    r.relator_residual,
                    if r.passed { "ok" } else { "FAIL" }
                )?;
            }
            if torus_check {
                writeln!(out, "all roots real: {}", if report.all_real { "yes" } else { "no" })?;
            }
            writeln!(out, "verified: {}", if report.passed { "yes" } else { "no" })?;
        }
    }
    let torus_failed = torus == Some(false);
    Ok(if report.passed && !torus_failed { 0 } else { EXIT_VIOLATION })
}

fn write_verify_json(out: &mut impl Write, report: &RepCheckReport) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct RootJson {
        re: f64,
        im: f64,
        multiplicity: usize,
        phi_residual: f64,
        relator_residual: f64,
        nonabelian: bool,
        passed: bool,
    }
    #[derive(Serialize)]
    struct ReportJson {
        alpha: i64,
        beta: i64,
        degree: usize,
        all_real: bool,
        passed: bool,
        roots: Vec<RootJson>,
    }
    let json = ReportJson {
        alpha: report.pair.alpha(),
        beta: report.pair.beta(),
        degree: report.degree,
        all_real: report.all_real,
        passed: report.passed,
        roots: report
            .roots
            .iter()
            .map(|r| RootJson {
                re: r.u.re,
                im: r.u.im,
                multiplicity: r.multiplicity,
                phi_residual: r.phi_residual,
                relator_residual: r.relator_residual,
                nonabelian: r.nonabelian,
                passed: r.passed,
            })
            .collect(),
    };
    write_json(out, &json)
}
