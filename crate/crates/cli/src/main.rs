use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oel::entropy::{generalized_entropy, relative_entropy, tsallis_entropy};
use oel::harness::{self, fuzz_chain, GeneratorConfig, Report, ReportOptions, Status, Witness};
use oel::{Error, FunctionRef, Matrix, DEFAULT_TOL};
use serde::Serialize;
use serde_json::json;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "oel", version, about = "Relative operator entropies and their bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered chains.
    List,
    /// Compute S(A|B), T_t(A|B) or S_t(A|B) and print it as a matrix file.
    Compute {
        kind: Kind,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check one instance of a chain. Parameters are `key=value`; a value
    /// may be a number, a comma-separated vector or a function reference
    /// such as `power:2`.
    Verify {
        chain: String,
        params: Vec<String>,
        #[arg(long = "a-file")]
        a_file: Option<PathBuf>,
        #[arg(long = "b-file")]
        b_file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        #[arg(long)]
        pretty: bool,
    },
    /// Fuzz one chain, or `all`, and write a report.
    Fuzz {
        chain: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Report path; the slack CSV goes next to it. Prints to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        pretty: bool,
        /// Record elapsed time (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
    #[value(name = "St")]
    St,
}

/// Writes every float with 17 significant digits.
struct Digits17<F>(F);

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, w: &mut W, v: f64) -> std::io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + std::io::Write>(&mut self, w: &mut W, v: f32) -> std::io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn end_object_key<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object_key(w)
    }
    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut buf = Vec::new();
    let res = if pretty {
        value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new())))
    } else {
        value.serialize(&mut serde_json::Serializer::with_formatter(&mut buf, Digits17(CompactFormatter)))
    };
    res.expect("value serializes");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Failure that maps to a non-zero exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::NotApplicable(_)) { EXIT_NOT_APPLICABLE } else { EXIT_USAGE };
        Exit(code, e.to_string())
    }
}

fn default_tol() -> Result<f64, Exit> {
    match std::env::var("OEL_DEFAULT_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite())
            .ok_or_else(|| Exit(EXIT_USAGE, format!("OEL_DEFAULT_TOL is not a finite number: `{s}`"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Writes a line to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn read_matrix(path: &Path) -> Result<Matrix, Exit> {
    let text =
        fs::read_to_string(path).map_err(|e| Exit(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    Matrix::from_json(&text).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn cmd_list() -> Result<u8, Exit> {
    let mut out = std::io::stdout().lock();
    for c in harness::chains() {
        let _ = writeln!(out, "{}\t{}", c.id, c.anchor);
    }
    Ok(EXIT_PASS)
}

fn cmd_compute(kind: Kind, a: &Path, b: &Path, t: Option<f64>, pretty: bool) -> Result<u8, Exit> {
    let (a, b) = (read_matrix(a)?, read_matrix(b)?);
    let need_t = || t.ok_or_else(|| Exit(EXIT_USAGE, "--t is required for T and St".into()));
    let m = match kind {
        Kind::S => relative_entropy(&a, &b)?,
        Kind::T => tsallis_entropy(&a, &b, need_t()?)?,
        Kind::St => generalized_entropy(&a, &b, need_t()?)?,
    };
    emit(&to_json(&m, pretty));
    Ok(EXIT_PASS)
}

fn parse_params(params: &[String]) -> Result<Witness, Exit> {
    let mut w = Witness::default();
    for p in params {
        let (key, value) =
            p.split_once('=').ok_or_else(|| Exit(EXIT_USAGE, format!("expected key=value, got `{p}`")))?;
        if let Ok(x) = value.parse::<f64>() {
            w.params.insert(key.into(), x);
        } else if value.contains(',') {
            let v: Result<Vec<f64>, _> =
                value.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse::<f64>()).collect();
            let v = v.map_err(|_| Exit(EXIT_USAGE, format!("`{key}`: not a numeric vector: `{value}`")))?;
            w.vectors.insert(key.into(), v);
        } else {
            let r: FunctionRef = value.parse().map_err(|e: Error| Exit(EXIT_USAGE, format!("`{key}`: {e}")))?;
            w.functions.insert(key.into(), r);
        }
    }
    Ok(w)
}

fn cmd_verify(
    chain: &str,
    params: &[String],
    a_file: Option<&Path>,
    b_file: Option<&Path>,
    tol: Option<f64>,
    pretty: bool,
) -> Result<u8, Exit> {
    let def = harness::chain(chain).ok_or_else(|| Exit(EXIT_USAGE, format!("unknown chain `{chain}`")))?;
    let tol = match tol {
        Some(t) => t,
        None => default_tol()?,
    };
    let mut w = parse_params(params)?;
    if let Some(p) = a_file {
        w = w.matrix("A", &read_matrix(p)?);
    }
    if let Some(p) = b_file {
        w = w.matrix("B", &read_matrix(p)?);
    }
    let outcome = (def.evaluate)(&w, tol)?;
    let status = if outcome.pass { Status::Pass } else { Status::Fail };
    let doc = json!({ "chain": def.id, "status": status, "min_slack": outcome.min_slack, "verdict": outcome.detail });
    emit(&to_json(&doc, pretty));
    Ok(if outcome.pass { EXIT_PASS } else { EXIT_FAIL })
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    chain: &str,
    trials: usize,
    seed: u64,
    tol: Option<f64>,
    out: Option<&Path>,
    pretty: bool,
    timing: bool,
) -> Result<u8, Exit> {
    let ids: Vec<&str> = if chain == "all" {
        harness::chains().iter().map(|c| c.id).collect()
    } else {
        let def = harness::chain(chain).ok_or_else(|| Exit(EXIT_USAGE, format!("unknown chain `{chain}`")))?;
        vec![def.id]
    };
    let tol = match tol {
        Some(t) => t,
        None => default_tol()?,
    };
    let cfg = GeneratorConfig { seed, trials, tol, ..GeneratorConfig::default() };
    let reports = ids.iter().map(|id| fuzz_chain(id, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();

    let report = Report::from_fuzz(seed, &reports, ReportOptions { timing, pretty });
    let json = to_json(&report, pretty);
    match out {
        Some(path) => {
            let io = |e: std::io::Error| Exit(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
            fs::write(path, format!("{json}\n")).map_err(io)?;
            fs::write(path.with_extension("csv"), harness::slack_csv(&reports)).map_err(io)?;
        }
        None => emit(&json),
    }
    for r in &reports {
        if !r.failures.is_empty() {
            eprintln!("{}: {} of {} trials failed", r.chain_id, r.failures.len(), r.trials);
        }
    }
    Ok(if failures == 0 { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let result = match &cli.command {
        Command::List => cmd_list(),
        Command::Compute { kind, a, b, t, pretty } => cmd_compute(*kind, a, b, *t, *pretty),
        Command::Verify { chain, params, a_file, b_file, tol, pretty } => {
            cmd_verify(chain, params, a_file.as_deref(), b_file.as_deref(), *tol, *pretty)
        }
        Command::Fuzz { chain, trials, seed, tol, out, pretty, timing } => {
            cmd_fuzz(chain, *trials, *seed, *tol, out.as_deref(), *pretty, *timing)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::LN_2, -2.3611305, 1e-300, 6.02e23] {
            let s = to_json(&json!({ "x": x }), false);
            let back: Value = serde_json::from_str(&s).unwrap();
            assert_eq!(back["x"].as_f64().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn params_parse_by_shape() {
        let w = parse_params(&["t=0.25".into(), "w=0.5,0.5".into(), "f=power:2".into()]).unwrap();
        assert_eq!(w.params["t"], 0.25);
        assert_eq!(w.vectors["w"], vec![0.5, 0.5]);
        assert_eq!(w.functions["f"].to_string(), "power:2");
        assert!(parse_params(&["t".into()]).is_err());
    }
}
