//! The `bipcount` command line.
//!
//! Every subcommand writes to the supplied streams and returns an exit code:
//! 0 on success, 1 when verification fails, 2 on usage or domain errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::Count;
use crate::bounds::{bound_reports, BoundRecord};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::formulas::{self, count_via_burnside, unlabeled_closed_form, Method};
use crate::oracle::{enumerate_classes, enumerate_counts, OracleConfig};
use crate::verify::{self, FormulaSource, Perturbed, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bipcount", version, about = "Count bipartite graphs up to isomorphism")]
pub struct Cli {
    /// File of `key=value` lines applied before the command-line flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one count as JSON.
    #[command(args_override_self = true)]
    Count(CountArgs),
    /// Print every bound defined at a point as JSON.
    #[command(args_override_self = true)]
    Bounds(PointArgs),
    /// Tabulate counts over ranges of n and r.
    #[command(args_override_self = true)]
    Table(TableArgs),
    /// Run the cross-checks and print one line per check.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Print one representative per class as JSON lines.
    #[command(name = "dump-classes", args_override_self = true)]
    DumpClasses(DumpArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Auto,
    Formula,
    Burnside,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct BudgetArgs {
    /// Largest n·r the brute-force oracle will enumerate.
    #[arg(long, default_value_t = OracleConfig::default().max_bits)]
    pub max_bits: u32,
    /// Largest side the oracle will permute.
    #[arg(long, default_value_t = OracleConfig::default().max_perm_side)]
    pub max_side: usize,
    /// Number of work chunks for the oracle; defaults to the thread count.
    #[arg(long)]
    pub workers: Option<usize>,
}

impl BudgetArgs {
    fn oracle(&self) -> OracleConfig {
        let mut cfg = OracleConfig {
            max_bits: self.max_bits,
            max_perm_side: self.max_side,
            ..OracleConfig::default()
        };
        if let Some(w) = self.workers {
            cfg.workers = w.max(1);
        }
        cfg
    }
}

#[derive(Clone, Copy, Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub r: u64,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, value_parser = parse_range)]
    pub n: Range,
    #[arg(long, value_parser = parse_range)]
    pub r: Range,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Add one to the count at `family:n:r`, to confirm the checks notice.
    #[arg(long, hide = true, value_parser = parse_fault)]
    pub inject_fault: Option<(Family, u64, u64)>,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Inclusive integer range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub start: u64,
    pub end: u64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad bound '{t}': {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Range { start, end })
    }
}

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    s.parse()
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_fault(s: &str) -> std::result::Result<(Family, u64, u64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [family, n, r] = parts[..] else {
        return Err(format!("expected family:n:r, got '{s}'"));
    };
    let num = |t: &str| t.parse::<u64>().map_err(|e| format!("bad number '{t}': {e}"));
    Ok((parse_family(family)?, num(n)?, num(r)?))
}

/// Count record as printed by `count` and `table`.
#[derive(Clone, Debug, Serialize)]
pub struct CountRecord {
    pub family: Family,
    pub n: u64,
    pub r: u64,
    pub count: String,
    pub method: Method,
}

/// Evaluates one cell with the requested method.
pub fn compute(family: Family, n: u64, r: u64, method: MethodChoice, oracle: &OracleConfig) -> Result<(Count, Method)> {
    match method {
        MethodChoice::Auto => formulas::count(family, n, r),
        MethodChoice::Formula => match family {
            Family::U => match unlabeled_closed_form(n, r) {
                Some(v) => Ok((crate::arith::rational_to_count(&v)?, Method::ClosedForm)),
                None => Err(Error::Domain(format!(
                    "no closed form for family u with both sides above 3 (n={n}, r={r})"
                ))),
            },
            _ => formulas::count(family, n, r),
        },
        MethodChoice::Burnside => Ok((count_via_burnside(family, n, r)?, Method::Burnside)),
        MethodChoice::Brute => {
            let bits = n.saturating_mul(r);
            if bits > oracle.max_bits as u64 {
                return Err(Error::LimitExceeded(format!(
                    "n·r = {n}·{r} exceeds the oracle budget of {} bits",
                    oracle.max_bits
                )));
            }
            Ok((enumerate_counts(n as usize, r as usize, family, oracle)?, Method::BruteForce))
        }
    }
}

/// Reads `key=value` lines into `--key=value` arguments. Blank lines and lines
/// starting with `#` are skipped; underscores in keys become dashes.
pub fn config_args(path: &Path) -> std::result::Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut args = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{}:{}: expected key=value", path.display(), lineno + 1));
        };
        let key = key.trim().replace('_', "-");
        args.push(format!("--{key}={}", value.trim()));
    }
    Ok(args)
}

/// Splices config-file arguments in after the subcommand name so that flags
/// given on the command line override them.
fn expand_config(args: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let mut path = None;
    let mut subcommand_at = None;
    let mut i = 1;
    while i < args.len() {
        let a = &args[i];
        if a == "--config" {
            path = args.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if !a.starts_with('-') && subcommand_at.is_none() {
            subcommand_at = Some(i);
        }
        i += 1;
    }
    let Some(path) = path else { return Ok(args) };
    let extra = config_args(Path::new(&path))?;
    let at = subcommand_at.map_or(args.len(), |i| i + 1);
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::DumpClasses(a) => cmd_dump(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Domain(format!("serialization failed: {e}")))
}

fn cmd_count(a: CountArgs, out: &mut dyn Write) -> Result<i32> {
    let PointArgs { family, n, r } = a.point;
    let (count, method) = compute(family, n, r, a.method, &a.budget.oracle())?;
    let record = CountRecord {
        family,
        n,
        r,
        count: count.to_string(),
        method,
    };
    writeln!(out, "{}", to_json(&record)?).map_err(io_err)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BoundsOutput {
    family: Family,
    n: u64,
    r: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    bounds: Vec<BoundRecord>,
}

fn cmd_bounds(a: PointArgs, out: &mut dyn Write) -> Result<i32> {
    let reports = bound_reports(a.family, a.n, a.r)?;
    let output = BoundsOutput {
        family: a.family,
        n: a.n,
        r: a.r,
        exact: reports.first().and_then(|r| r.exact.as_ref()).map(ToString::to_string),
        bounds: reports.iter().map(BoundRecord::from).collect(),
    };
    writeln!(out, "{}", to_json(&output)?).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn method_label(choice: MethodChoice, family: Family) -> Method {
    match choice {
        MethodChoice::Burnside => Method::Burnside,
        MethodChoice::Brute => Method::BruteForce,
        MethodChoice::Formula if family == Family::U => Method::ClosedForm,
        _ => Method::Recurrence,
    }
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let oracle = a.budget.oracle();
    let mut records = Vec::new();
    let mut any_ok = false;
    for n in a.n.start..=a.n.end {
        for r in a.r.start..=a.r.end {
            let record = match compute(a.family, n, r, a.method, &oracle) {
                Ok((count, method)) => {
                    any_ok = true;
                    CountRecord {
                        family: a.family,
                        n,
                        r,
                        count: count.to_string(),
                        method,
                    }
                }
                Err(e) => CountRecord {
                    family: a.family,
                    n,
                    r,
                    count: format!("ERROR:{e}"),
                    method: method_label(a.method, a.family),
                },
            };
            records.push(record);
        }
    }

    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("family,n,r,count,method\n");
            for rec in &records {
                let count = rec.count.replace([',', '\n'], ";");
                s.push_str(&format!("{},{},{},{},{}\n", rec.family, rec.n, rec.r, count, rec.method));
            }
            s
        }
        Format::Json => to_json(&records)?,
    };
    match &a.output {
        Some(path) => fs::write(path, &text).map_err(io_err)?,
        None => {
            out.write_all(text.as_bytes()).map_err(io_err)?;
            if a.format == Format::Json {
                writeln!(out).map_err(io_err)?;
            }
        }
    }
    Ok(if any_ok { EXIT_OK } else { EXIT_USAGE })
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if a.budget.max_bits == 0 || a.budget.max_side == 0 {
        return Err(Error::Domain("verification budgets must be at least 1".into()));
    }
    let cfg = VerifyConfig {
        oracle: a.budget.oracle(),
        ..VerifyConfig::default()
    };
    let results = match a.inject_fault {
        Some((family, n, r)) => {
            let source = Perturbed {
                inner: FormulaSource,
                family,
                n,
                r,
            };
            verify::run_all(&source, &cfg)
        }
        None => verify::run_all(&FormulaSource, &cfg),
    };
    let mut all_pass = true;
    for result in &results {
        all_pass &= result.passed();
        writeln!(out, "{result}").map_err(io_err)?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_dump(a: DumpArgs, out: &mut dyn Write) -> Result<i32> {
    let PointArgs { family, n, r } = a.point;
    let oracle = a.budget.oracle();
    if n.checked_mul(r).is_none_or(|bits| bits > oracle.max_bits as u64) {
        return Err(Error::LimitExceeded(format!(
            "n·r = {n}·{r} exceeds the oracle budget of {} bits",
            oracle.max_bits
        )));
    }
    for class in enumerate_classes(n as usize, r as usize, family, &oracle)? {
        writeln!(out, "{}", to_json(&class)?).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["bipcount"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!("2..5".parse::<Range>().unwrap(), Range { start: 2, end: 5 });
        assert_eq!("2..=5".parse::<Range>().unwrap(), Range { start: 2, end: 5 });
        assert_eq!("3".parse::<Range>().unwrap(), Range { start: 3, end: 3 });
        assert!("5..2".parse::<Range>().is_err());
        assert!("a..2".parse::<Range>().is_err());
    }

    #[test]
    fn count_record() {
        let (code, out, _) = run_capture(&["count", "--family", "x", "--n", "3", "--r", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"family\":\"x\",\"n\":3,\"r\":2,\"count\":\"25\",\"method\":\"recurrence\"}\n");
    }

    #[test]
    fn formula_method_for_large_unlabeled_is_a_domain_error() {
        let (code, _, err) = run_capture(&["count", "--family", "u", "--n", "4", "--r", "4", "--method", "formula"]);
        assert_eq!(code, 2);
        assert!(err.contains("no closed form"));
    }

    #[test]
    fn bad_family_is_usage_error() {
        let (code, _, err) = run_capture(&["count", "--family", "z", "--n", "1", "--r", "1"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn fault_parsing() {
        assert_eq!(parse_fault("xy:3:2").unwrap(), (Family::XY, 3, 2));
        assert!(parse_fault("xy:3").is_err());
    }
}
