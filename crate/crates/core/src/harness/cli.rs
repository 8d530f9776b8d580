use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::checks::{run_suite, Status, Suite};
use super::compare::compare_family;
use super::report::{
    census_records, census_text, records_csv, sequence_records, CompareReport, EvalRecord, Verdict,
};
use crate::error::{Error, Result};
use crate::formulas::{count_sequence, Family, Method};
use crate::oracle::fixtures::Fixture;
use crate::oracle::{census_with, CensusOptions, DEFAULT_CAP};
use crate::BigInt;

/// Overrides the default oracle cap (in hyperarc-universe bits).
pub const CAP_ENV: &str = "DIHYPER_ORACLE_CAP";

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dihyper",
    version,
    about = "Exact counts of uniform labeled dihypergraphs, cross-checked by exhaustion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count polynomials from a formula pipeline.
    Formula(FormulaArgs),
    /// Exhaustive census of all dihypergraphs on n nodes.
    Oracle(OracleArgs),
    /// Formula vs. census, coefficient by coefficient.
    Compare(CompareArgs),
    /// Run a named check suite.
    Check(CheckArgs),
    /// Classify a fixture dihypergraph.
    Fixtures(FixtureArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct OracleOpts {
    /// Largest hyperarc universe (in bits) the census will sweep.
    #[arg(long)]
    cap: Option<u32>,
    /// Worker threads for the census.
    #[arg(long)]
    jobs: Option<usize>,
}

impl OracleOpts {
    fn options(&self) -> Result<CensusOptions> {
        let cap = match self.cap {
            Some(c) => c,
            None => match std::env::var(CAP_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| Error::UnknownName {
                    kind: "oracle cap",
                    value: v,
                })?,
                Err(_) => DEFAULT_CAP,
            },
        };
        if self.jobs == Some(0) {
            return Err(Error::UnknownName {
                kind: "job count",
                value: "0".into(),
            });
        }
        Ok(CensusOptions {
            cap,
            jobs: self.jobs,
        })
    }
}

#[derive(Args, Debug)]
struct FormulaArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    b: u32,
    /// Largest node count.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    method: Option<Method>,
    /// Print the counts at y = Y0 instead of the polynomials.
    #[arg(long, value_name = "Y0", allow_negative_numbers = true)]
    eval: Option<BigInt>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    b: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    oracle: OracleOpts,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    method: Option<Method>,
    #[command(flatten)]
    oracle: OracleOpts,
    /// Exit with status 1 on any mismatch.
    #[arg(long)]
    strict: bool,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_parser = ["identities", "marked-source", "fixtures", "lambda"])]
    suite: String,
    #[command(flatten)]
    oracle: OracleOpts,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct FixtureArgs {
    /// Built-in fixture.
    #[arg(long, value_parser = ["fig1", "fig2"], required_unless_present = "file", conflicts_with = "file")]
    name: Option<String>,
    /// Fixture JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::OracleCapExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Formula(a) => formula(a, out, err),
        Command::Oracle(a) => oracle(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Check(a) => check(a, out),
        Command::Fixtures(a) => fixtures(a, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn formula(a: FormulaArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let method = a.method.unwrap_or(a.family.default_method());
    let seq = count_sequence::<BigInt>(a.family, method, a.b, a.n)?;
    let implausible = seq.implausible_orders();
    if !implausible.is_empty() {
        writeln!(
            err,
            "note: counts at n = {:?} are not valid counting polynomials",
            implausible
        )?;
    }
    let text = match (a.eval, a.format) {
        (Some(y0), Format::Text) => {
            let values: Vec<String> = seq.eval(&y0).iter().map(BigInt::to_string).collect();
            values.join(" ")
        }
        (Some(y0), Format::Json) => serde_json::to_string_pretty(&EvalRecord::new(&seq, &y0))?,
        (Some(y0), Format::Csv) => EvalRecord::new(&seq, &y0).csv(),
        (None, Format::Text) => {
            let mut s = format!(
                "{} b={} method={} semantics=head-to-tail\n",
                seq.family, seq.b, seq.method
            );
            for (n, p) in seq.counts.iter().enumerate() {
                let _ = writeln!(s, "n={n}: {p}");
            }
            s
        }
        (None, Format::Json) => serde_json::to_string_pretty(&sequence_records(&seq))?,
        (None, Format::Csv) => records_csv(&sequence_records(&seq)),
    };
    emit(out, a.out.as_ref(), text)?;
    Ok(EXIT_OK)
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<u8> {
    let table = census_with(a.n, a.b, &a.oracle.options()?)?;
    let text = match a.format {
        Format::Text => census_text(&table),
        Format::Json => serde_json::to_string_pretty(&census_records(&table))?,
        Format::Csv => records_csv(&census_records(&table)),
    };
    emit(out, a.out.as_ref(), text)?;
    Ok(EXIT_OK)
}

fn compare_csv(r: &CompareReport) -> String {
    let mut s = String::from("b,n,family,method,q,formula,reference,status\n");
    for rec in &r.records {
        let reference = rec.reference.as_deref().unwrap_or(&[]);
        let len = rec.formula.len().max(reference.len()).max(1);
        for q in 0..len {
            let f = rec.formula.get(q).map_or("0", String::as_str);
            let o = match &rec.reference {
                Some(v) => v.get(q).map_or("0", String::as_str),
                None => "",
            };
            let status = match rec.status {
                Verdict::OracleUnavailable => "oracle-unavailable",
                _ if rec.reference.is_some() && f != o => "mismatch",
                _ => "match",
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.b, rec.n, r.family, r.method, q, f, o, status
            );
        }
    }
    s
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Result<u8> {
    let method = a.method.unwrap_or(a.family.default_method());
    let mut report = compare_family(a.b, a.n_max, a.family, method, &a.oracle.options()?)?;
    if !a.timing {
        report.timing = None;
    }
    let text = match a.format {
        Format::Text => report.to_string(),
        Format::Json => report.to_json()?,
        Format::Csv => compare_csv(&report),
    };
    emit(out, a.out.as_ref(), text)?;
    Ok(if a.strict && report.verdict == Verdict::Mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<u8> {
    let suite: Suite = a.suite.parse()?;
    let outcomes = run_suite(suite, &a.oracle.options()?)?;
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&outcomes)?,
        Format::Csv => {
            let mut s = String::from("name,status,detail\n");
            for o in &outcomes {
                let status = serde_json::to_value(o.status)?;
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    csv_field(&o.name),
                    status.as_str().unwrap_or(""),
                    csv_field(&o.detail)
                );
            }
            s
        }
        Format::Text => {
            let mut s: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            let _ = write!(s, "{} checks, {} failed", outcomes.len(), failed);
            s
        }
    };
    emit(out, None, text)?;
    Ok(if failed > 0 { EXIT_MISMATCH } else { EXIT_OK })
}

fn fixtures(a: FixtureArgs, out: &mut dyn Write) -> Result<u8> {
    let fixture = match (&a.name, &a.file) {
        (_, Some(path)) => Fixture::from_json(&fs::read_to_string(path)?)?,
        (Some(name), None) => Fixture::builtin(name)?,
        (None, None) => unreachable!("clap requires one of --name/--file"),
    };
    let report = fixture.classify()?;
    let text = match a.format {
        Format::Text => report.to_string(),
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => {
            let mut s = String::from("node,component\n");
            for (i, comp) in report.strong_components.iter().enumerate() {
                for v in comp {
                    let _ = writeln!(s, "{v},{i}");
                }
            }
            s
        }
    };
    emit(out, None, text)?;
    Ok(EXIT_OK)
}
