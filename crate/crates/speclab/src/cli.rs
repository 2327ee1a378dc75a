//! Command-line front end. Every subcommand reads formulas or tables
//! from files, runs one library operation, and prints a report whose
//! bytes depend only on the configuration: no timestamps, no hashing
//! order, no environment. Exit codes: 0 for sat or success, 1 for an
//! unsat or otherwise negative outcome, 2 for usage and validation
//! problems.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::combine::{run_engine_qf, Engine};
use crate::contracts::check_witness_contract;
use crate::error::{Error, Result};
use crate::logic::{QFFormula, Signature};
use crate::minmod::{minmod_qf, MinmodOutcome};
use crate::oracle::{make_oracle, OracleFamily, Provenance, BRUTE_SIZE_CAP};
use crate::params::{parse_params, ParamSet};
use crate::parse::parse_formula;
use crate::recover::{probe_f_infinity, recover_f, recover_g};
use crate::theory::theory_by_name;

/// Parsed command line: one subcommand plus the global knobs.
#[derive(Debug, Parser)]
#[command(
    name = "speclab",
    version,
    about = "Workbench for spectra, deciders, and combinations of parametric first-order theories"
)]
pub struct RunConfig {
    /// Model-size ceiling for witness-contract checking (1..=8).
    #[arg(long, global = true, default_value_t = 6)]
    pub max_size: u32,
    /// 0 prints verdict lines only, 1 adds summaries, 2 adds detail lines.
    #[arg(long, global = true, default_value_t = 1)]
    pub verbosity: u8,
    /// Parameter-table file (f:/g:/F:/h: lines).
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide satisfiability of each formula in the file.
    Decide {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Print the cardinality spectrum of each formula.
    Spectrum {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Print the finite-witness form of each cube and check its contract.
    Witness {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Print the minimal model cardinality of each formula.
    Minmod {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Run a combination engine on mixed formulas over two theories.
    Combine {
        /// One of: no, gentle-cfs, minmod-infdec, both-gentle.
        #[arg(long)]
        engine: String,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Rebuild a parameter-table prefix through a combined oracle and
    /// compare it against the configured table.
    Recover {
        /// tf-teq or tg-torb2.
        #[arg(long)]
        family: String,
        /// analytic or bruteforce.
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        upto: u32,
    },
    /// Compare two oracle tiers on one family's query stream: analytic
    /// vs bruteforce for the recovery families, analytic vs engine for
    /// the infinity-probe families.
    OracleCheck {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        upto: u32,
    },
}

/// A finished run: the full stdout text and the process exit code.
#[derive(Debug)]
pub struct RunOutput {
    pub report: String,
    pub code: i32,
}

impl RunOutput {
    fn new(report: String, negative: bool) -> RunOutput {
        RunOutput { report, code: if negative { 1 } else { 0 } }
    }
}

/// Entry point for the binary: parse, run, print, translate errors to
/// exit code 2.
pub fn run_main() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.report);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Executes the configured command and renders its report.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    if config.verbosity > 2 {
        return Err(Error::Usage(format!(
            "verbosity ranges over 0..=2, got {}",
            config.verbosity
        )));
    }
    if config.max_size == 0 || config.max_size > 8 {
        return Err(Error::Usage(format!(
            "max-size must lie in 1..=8, got {}",
            config.max_size
        )));
    }
    let params = match &config.params {
        Some(path) => parse_params(&read_file(path)?)?,
        None => ParamSet::default(),
    };
    match &config.command {
        Command::Decide { theory, formula } => {
            let handle = theory_by_name(theory, &params)?;
            let formulas = load_formulas(formula, handle.sig())?;
            let mut report = String::new();
            let mut negative = false;
            for f in &formulas {
                let v = handle.decide_qf(f)?;
                negative |= !v.is_sat();
                writeln(&mut report, format_args!("{v}"));
            }
            Ok(RunOutput::new(report, negative))
        }
        Command::Spectrum { theory, formula } => {
            let handle = theory_by_name(theory, &params)?;
            let formulas = load_formulas(formula, handle.sig())?;
            let mut report = String::new();
            let mut negative = false;
            for f in &formulas {
                let s = handle.display_spectrum_qf(f)?;
                negative |= s.is_empty();
                writeln(&mut report, format_args!("{s}"));
            }
            Ok(RunOutput::new(report, negative))
        }
        Command::Witness { theory, formula } => {
            let handle = theory_by_name(theory, &params)?;
            let formulas = load_formulas(formula, handle.sig())?;
            let mut report = String::new();
            let mut negative = false;
            for f in &formulas {
                let cube = f.as_cube().ok_or_else(|| {
                    Error::Usage("the witness transform takes conjunctions of literals".into())
                })?;
                let w = handle.witness(&cube)?;
                writeln(&mut report, format_args!("{}", w.cube));
                if config.verbosity >= 1 {
                    let r = check_witness_contract(&handle, &cube, config.max_size)?;
                    if r.passed() {
                        writeln(
                            &mut report,
                            format_args!(
                                "contract: pass ({} arrangements, sizes <= {})",
                                r.arrangements_checked, r.max_size
                            ),
                        );
                    } else {
                        negative = true;
                        writeln(
                            &mut report,
                            format_args!("contract: FAIL ({} violations)", r.violations.len()),
                        );
                        if config.verbosity >= 2 {
                            for v in &r.violations {
                                writeln(&mut report, format_args!("# {v}"));
                            }
                        }
                    }
                }
            }
            Ok(RunOutput::new(report, negative))
        }
        Command::Minmod { theory, formula } => {
            let handle = theory_by_name(theory, &params)?;
            let formulas = load_formulas(formula, handle.sig())?;
            let mut report = String::new();
            let mut negative = false;
            for f in &formulas {
                match minmod_qf(&handle, f)? {
                    MinmodOutcome::Unsat => {
                        negative = true;
                        writeln(&mut report, format_args!("unsat"));
                    }
                    MinmodOutcome::Model(r) => {
                        writeln(&mut report, format_args!("{}", r.value));
                        if config.verbosity >= 2 {
                            if let Some(arr) = &r.witness_arrangement {
                                writeln(
                                    &mut report,
                                    format_args!("# arrangement {}", arr.to_cube()),
                                );
                            }
                        }
                    }
                }
            }
            Ok(RunOutput::new(report, negative))
        }
        Command::Combine { engine, t1, t2, formula } => {
            let engine: Engine = engine.parse()?;
            let t1 = theory_by_name(t1, &params)?;
            let t2 = theory_by_name(t2, &params)?;
            let sig = t1.sig().union(t2.sig())?;
            let formulas = load_formulas(formula, &sig)?;
            let mut report = String::new();
            let mut negative = false;
            for f in &formulas {
                let rep = run_engine_qf(engine, &t1, &t2, f)?;
                negative |= !rep.verdict.is_sat();
                writeln(&mut report, format_args!("{}", rep.verdict));
                if config.verbosity >= 2 {
                    if let Some(arr) = &rep.arrangement {
                        writeln(&mut report, format_args!("# arrangement {}", arr.to_cube()));
                    }
                    for d in &rep.details {
                        writeln(&mut report, format_args!("# {d}"));
                    }
                }
            }
            Ok(RunOutput::new(report, negative))
        }
        Command::Recover { family, oracle, upto } => {
            let family: OracleFamily = family.parse()?;
            let provenance: Provenance = oracle.parse()?;
            let (bits, expected) = run_recovery(family, provenance, *upto, &params)?;
            let mut report = String::new();
            writeln(&mut report, format_args!("{}", format_bits(&bits)));
            let matched = bits == expected;
            writeln(&mut report, format_args!("{}", if matched { "MATCH" } else { "MISMATCH" }));
            Ok(RunOutput::new(report, !matched))
        }
        Command::OracleCheck { family, upto } => {
            let family: OracleFamily = family.parse()?;
            oracle_check(family, *upto, &params)
        }
    }
}

/// The highest prefix length whose recovery queries force model sizes
/// the brute-force tier can reach.
fn brute_recovery_ceiling(family: OracleFamily) -> u32 {
    match family {
        // The query for f(n+1) forces size n+1.
        OracleFamily::TfTeq => BRUTE_SIZE_CAP - 1,
        // The query for the pair at 2n+1, 2n+2 forces sizes up to 2n+2.
        OracleFamily::TgTorb2 => BRUTE_SIZE_CAP,
        OracleFamily::TinfTle | OracleFamily::TinfTleorb => 0,
    }
}

fn run_recovery(
    family: OracleFamily,
    provenance: Provenance,
    upto: u32,
    params: &ParamSet,
) -> Result<(Vec<bool>, Vec<bool>)> {
    if provenance == Provenance::Bruteforce && upto > brute_recovery_ceiling(family) {
        return Err(Error::Usage(format!(
            "the brute-force oracle only certifies {family} recovery up to {}",
            brute_recovery_ceiling(family)
        )));
    }
    let oracle = make_oracle(family, provenance, params)?;
    match family {
        OracleFamily::TfTeq => {
            let bits = recover_f(&oracle, upto)?;
            let table = params.require_f()?;
            let expected = (1..=upto).map(|n| table.value(n)).collect::<Result<Vec<_>>>()?;
            Ok((bits, expected))
        }
        OracleFamily::TgTorb2 => {
            let bits = recover_g(&oracle, upto)?;
            let table = params.require_g()?;
            let expected = (1..=upto).map(|n| table.value(n)).collect::<Result<Vec<_>>>()?;
            Ok((bits, expected))
        }
        other => Err(Error::Usage(format!(
            "recovery applies to the tf-teq and tg-torb2 families, not {other}"
        ))),
    }
}

fn oracle_check(family: OracleFamily, upto: u32, params: &ParamSet) -> Result<RunOutput> {
    let analytic = make_oracle(family, Provenance::Analytic, params)?;
    let (label, left, right) = match family {
        OracleFamily::TfTeq | OracleFamily::TgTorb2 => {
            let ceiling = brute_recovery_ceiling(family);
            if upto > ceiling {
                return Err(Error::Usage(format!(
                    "the brute-force oracle only certifies {family} recovery up to {ceiling}"
                )));
            }
            let brute = make_oracle(family, Provenance::Bruteforce, params)?;
            let (a, b) = if family == OracleFamily::TfTeq {
                (recover_f(&analytic, upto)?, recover_f(&brute, upto)?)
            } else {
                (recover_g(&analytic, upto)?, recover_g(&brute, upto)?)
            };
            ("bruteforce", a, b)
        }
        OracleFamily::TinfTle | OracleFamily::TinfTleorb => {
            let engine = make_oracle(family, Provenance::Engine, params)?;
            let mut a = Vec::new();
            let mut b = Vec::new();
            for n in 1..=upto {
                a.push(probe_f_infinity(&analytic, family, n)?);
                b.push(probe_f_infinity(&engine, family, n)?);
            }
            ("engine", a, b)
        }
    };
    let mut report = String::new();
    writeln(&mut report, format_args!("analytic: {}", format_bits(&left)));
    writeln(&mut report, format_args!("{label}: {}", format_bits(&right)));
    let agree = left == right;
    writeln(&mut report, format_args!("{}", if agree { "AGREE" } else { "DISAGREE" }));
    Ok(RunOutput::new(report, !agree))
}

fn format_bits(bits: &[bool]) -> String {
    let cells: Vec<&str> = bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
    cells.join(" ")
}

fn writeln(report: &mut String, args: std::fmt::Arguments<'_>) {
    report.write_fmt(args).expect("writing to a string cannot fail");
    report.push('\n');
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads a formula file: one formula per line, blank lines and `#`
/// comments skipped.
fn load_formulas(path: &Path, sig: &Signature) -> Result<Vec<QFFormula>> {
    let text = read_file(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse_formula(line, sig)
            .map_err(|e| Error::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(f);
    }
    if out.is_empty() {
        return Err(Error::Usage(format!("no formulas in {}", path.display())));
    }
    Ok(out)
}
