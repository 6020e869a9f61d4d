//! Command-line front end. `run` parses arguments, executes one subcommand and
//! returns the process exit code.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 degenerate case without numeric fallback.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::linalg::{CVec, Complex};
use crate::optimality::{seesaw_minimize, spanning_report, OptimalityError, SearchConfig};
use crate::verify::{run_verify, VerifyConfig};
use crate::witness::{
    build_witness, classify, ellipse_from_a, ellipse_residual, Branch, EllipsePoint, WitnessError,
    WitnessParams, CLASSIFY_TOL, ELLIPSE_A_MAX,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qutrit-witness",
    version,
    about = "Classify and analyse the W[a,b,c] family of two-qutrit entanglement witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witness / decomposability / positivity verdict for W[a,b,c]
    Classify {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = CLASSIFY_TOL)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rank of the zero-expectation product vectors for an ellipse point (b, c)
    Span {
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi2: f64,
        /// Fall back to see-saw search where the closed forms do not apply
        #[arg(long)]
        numeric_fallback: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        /// Largest ellipse residual accepted before snapping onto the ellipse
        #[arg(long, default_value_t = 1e-4)]
        ellipse_tol: f64,
        /// Include the spanning vectors in the output
        #[arg(long)]
        vectors: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample the ellipse of optimal witnesses
    Ellipse {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// See-saw starts for points without closed-form zero vectors
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a grid over (b, c) in [0,2]^2 with a = max(0, 2 - b - c)
    Scan {
        #[arg(long, default_value_t = 41)]
        grid: usize,
        #[arg(long, default_value_t = CLASSIFY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// See-saw minimum of the expectation over product vectors
    Minimize {
        #[arg(allow_negative_numbers = true)]
        a: f64,
        #[arg(allow_negative_numbers = true)]
        b: f64,
        #[arg(allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the self-check suite and report per-claim results
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shrink grids and sample counts 4x
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true, value_parser = parse_pair)]
        tamper: Option<(usize, usize)>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or("expected i,j")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((parse(i)?, parse(j)?))
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Degenerate(String),
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<OptimalityError> for CliError {
    fn from(e: OptimalityError) -> Self {
        match e {
            OptimalityError::FallbackRequired { .. } | OptimalityError::Degenerate => {
                CliError::Degenerate(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Invalid(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Invalid(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invalid(format!("json error: {e}"))
    }
}

/// Reproducibility header written at the top of every output.
#[derive(Debug, Serialize)]
struct Meta {
    version: &'static str,
    command: String,
    seed: Option<u64>,
    tolerances: BTreeMap<&'static str, f64>,
}

#[derive(Serialize)]
struct JsonOut<T: Serialize> {
    meta: Meta,
    #[serde(flatten)]
    body: T,
}

/// 17 significant digits.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

fn complex_pairs(v: &CVec) -> Vec<[f64; 2]> {
    v.iter().map(|z: &Complex| [z.re, z.im]).collect()
}

struct Sink {
    target: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    fn new(target: Option<PathBuf>) -> Self {
        Sink {
            target,
            buf: Vec::new(),
        }
    }

    fn json<T: Serialize>(
        mut self,
        meta: Meta,
        body: T,
        stdout: &mut dyn Write,
    ) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut self.buf, &JsonOut { meta, body })?;
        self.buf.push(b'\n');
        self.finish(stdout)
    }

    fn csv(
        mut self,
        meta: &Meta,
        header: &[&str],
        rows: Vec<Vec<String>>,
        stdout: &mut dyn Write,
    ) -> Result<(), CliError> {
        writeln!(self.buf, "# version: {}", meta.version)?;
        writeln!(self.buf, "# command: {}", meta.command)?;
        if let Some(seed) = meta.seed {
            writeln!(self.buf, "# seed: {seed}")?;
        }
        for (k, v) in &meta.tolerances {
            writeln!(self.buf, "# {k}: {}", fmt_f64(*v))?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut self.buf);
            w.write_record(header)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()?;
        }
        self.finish(stdout)
    }

    fn finish(self, stdout: &mut dyn Write) -> Result<(), CliError> {
        match self.target {
            Some(path) => File::create(path)?.write_all(&self.buf)?,
            None => stdout.write_all(&self.buf)?,
        }
        Ok(())
    }
}

fn params(a: f64, b: f64, c: f64) -> Result<WitnessParams, CliError> {
    Ok(WitnessParams::new(a, b, c)?)
}

/// Nearest parametrized ellipse point to `(b, c)`, provided the residual is
/// within `tol`.
fn snap_to_ellipse(b: f64, c: f64, tol: f64) -> Result<WitnessParams, CliError> {
    if !b.is_finite() || !c.is_finite() || b < 0.0 || c < 0.0 {
        return Err(CliError::Invalid(format!(
            "b = {b}, c = {c} must be finite and nonnegative"
        )));
    }
    let residual = ellipse_residual(b, c);
    if residual.abs() > tol {
        return Err(CliError::Invalid(format!(
            "(b, c) = ({b}, {c}) is off the ellipse: residual {residual:e} exceeds {tol:e}"
        )));
    }
    let a = (2.0 - b - c).clamp(0.0, ELLIPSE_A_MAX);
    let branch = if b <= c { Branch::Lower } else { Branch::Upper };
    Ok(ellipse_from_a(a, branch)?)
}

fn search_config(seed: u64, starts: usize) -> SearchConfig {
    SearchConfig {
        n_starts: starts,
        seed,
        ..SearchConfig::default()
    }
}

fn search_tolerances(cfg: &SearchConfig) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("convergence_tol", cfg.convergence_tol),
        ("rank_tol", crate::linalg::DEFAULT_RANK_TOL),
        ("zero_tol", cfg.zero_tol),
    ])
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(cli.command, command_line, stdout) {
        Ok(code) => code,
        Err(CliError::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(CliError::Degenerate(msg)) => {
            let _ = writeln!(stderr, "error: {msg}; rerun with --numeric-fallback");
            EXIT_DEGENERATE
        }
    }
}

fn execute(cmd: Command, command: String, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let version = env!("CARGO_PKG_VERSION");
    match cmd {
        Command::Classify {
            a,
            b,
            c,
            tol,
            output,
        } => {
            let cl = classify(&params(a, b, c)?, tol)?;
            let meta = Meta {
                version,
                command,
                seed: None,
                tolerances: BTreeMap::from([("classify_tol", tol)]),
            };
            Sink::new(output).json(meta, cl, stdout)?;
            Ok(EXIT_OK)
        }

        Command::Span {
            b,
            c,
            phi1,
            phi2,
            numeric_fallback,
            seed,
            starts,
            ellipse_tol,
            vectors,
            output,
        } => {
            let p = snap_to_ellipse(b, c, ellipse_tol)?;
            let cfg = search_config(seed, starts);
            let rep = spanning_report(&p, phi1, phi2, numeric_fallback.then_some(&cfg))?;
            let mut tolerances = search_tolerances(&cfg);
            tolerances.insert("ellipse_tol", ellipse_tol);
            let meta = Meta {
                version,
                command,
                seed: Some(seed),
                tolerances,
            };
            let mut body = serde_json::Map::new();
            body.insert("a".into(), json!(p.a()));
            body.insert("b".into(), json!(p.b()));
            body.insert("c".into(), json!(p.c()));
            body.insert("gram_rank".into(), json!(rep.gram_rank));
            body.insert("spanning".into(), json!(rep.spanning));
            body.insert("method".into(), json!(rep.method));
            body.insert("degenerate".into(), json!(rep.degenerate));
            body.insert("notes".into(), json!(rep.notes));
            if vectors {
                let vs: Vec<Value> = rep
                    .vectors
                    .iter()
                    .map(|v| json!(complex_pairs(v)))
                    .collect();
                body.insert("vectors".into(), Value::Array(vs));
            }
            Sink::new(output).json(meta, body, stdout)?;
            Ok(EXIT_OK)
        }

        Command::Ellipse {
            samples,
            seed,
            starts,
            format,
            output,
        } => {
            if samples < 2 {
                return Err(CliError::Invalid("--samples must be at least 2".into()));
            }
            let cfg = search_config(seed, starts);
            let rows = ellipse_rows(samples, &cfg)?;
            let meta = Meta {
                version,
                command,
                seed: Some(seed),
                tolerances: search_tolerances(&cfg),
            };
            emit_rows(
                Sink::new(output),
                meta,
                format,
                &ELLIPSE_HEADER,
                rows,
                stdout,
            )?;
            Ok(EXIT_OK)
        }

        Command::Scan {
            grid,
            tol,
            format,
            output,
        } => {
            if grid < 2 {
                return Err(CliError::Invalid("--grid must be at least 2".into()));
            }
            let rows = scan_rows(grid, tol)?;
            let meta = Meta {
                version,
                command,
                seed: None,
                tolerances: BTreeMap::from([("classify_tol", tol)]),
            };
            emit_rows(Sink::new(output), meta, format, &SCAN_HEADER, rows, stdout)?;
            Ok(EXIT_OK)
        }

        Command::Minimize {
            a,
            b,
            c,
            starts,
            max_iters,
            seed,
            output,
        } => {
            if starts == 0 {
                return Err(CliError::Invalid("--starts must be positive".into()));
            }
            let cfg = SearchConfig {
                n_starts: starts,
                max_iters,
                seed,
                ..SearchConfig::default()
            };
            let res = seesaw_minimize(&build_witness(&params(a, b, c)?), &cfg)?;
            let meta = Meta {
                version,
                command,
                seed: Some(seed),
                tolerances: BTreeMap::from([("convergence_tol", cfg.convergence_tol)]),
            };
            let body = json!({
                "min_value": res.min_value,
                "x": complex_pairs(&res.argmin.x),
                "y": complex_pairs(&res.argmin.y),
                "best_start": res.best_start,
                "all_converged": res.all_converged(),
                "all_monotone": res.all_monotone(),
                "notes": res.notes,
            });
            Sink::new(output).json(meta, body, stdout)?;
            Ok(EXIT_OK)
        }

        Command::Verify {
            seed,
            quick,
            tamper,
            output,
        } => {
            let report = run_verify(&VerifyConfig {
                seed,
                quick,
                tamper,
            });
            let meta = Meta {
                version,
                command,
                seed: Some(seed),
                tolerances: BTreeMap::from([
                    ("classify_tol", CLASSIFY_TOL),
                    ("identity_tol", 1e-10),
                    ("projector_tol", 1e-12),
                    ("rank_tol", crate::linalg::DEFAULT_RANK_TOL),
                    ("seesaw_threshold", -1e-5),
                ]),
            };
            let passed = report.passed();
            Sink::new(output).json(meta, report, stdout)?;
            Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn emit_rows(
    sink: Sink,
    meta: Meta,
    format: Format,
    header: &[&str],
    rows: Vec<Vec<String>>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Csv => sink.csv(&meta, header, rows, stdout),
        Format::Json => {
            let objs: Vec<BTreeMap<&str, String>> = rows
                .into_iter()
                .map(|r| header.iter().copied().zip(r).collect())
                .collect();
            sink.json(meta, json!({ "columns": header, "rows": objs }), stdout)
        }
    }
}

const ELLIPSE_HEADER: [&str; 8] = [
    "tag",
    "a",
    "branch",
    "b",
    "c",
    "indecomposable",
    "span_rank",
    "a_le_one",
];

fn ellipse_row(
    tag: &str,
    a: f64,
    branch: &str,
    p: &WitnessParams,
    cfg: &SearchConfig,
) -> Result<Vec<String>, CliError> {
    let cl = classify(p, CLASSIFY_TOL)?;
    let rank = if cl.on_ellipse || ellipse_residual(p.b(), p.c()).abs() <= 1e-12 {
        spanning_report(p, 0.0, 0.0, Some(cfg))?
            .gram_rank
            .to_string()
    } else {
        String::new()
    };
    Ok(vec![
        tag.to_string(),
        fmt_f64(a),
        branch.to_string(),
        fmt_f64(p.b()),
        fmt_f64(p.c()),
        fmt_opt_bool(cl.indecomposable),
        rank,
        (a <= 1.0).to_string(),
    ])
}

fn ellipse_rows(samples: usize, cfg: &SearchConfig) -> Result<Vec<Vec<String>>, CliError> {
    let mut rows = Vec::with_capacity(2 * samples + 5);
    for k in 0..samples {
        let a = ELLIPSE_A_MAX * k as f64 / (samples - 1) as f64;
        for br in [Branch::Lower, Branch::Upper] {
            let pt = EllipsePoint::new(a, br)?;
            rows.push(ellipse_row("sample", a, br.as_str(), &pt.params(), cfg)?);
        }
    }
    let special = [
        ("i", 1.0, "upper", params(1.0, 1.0, 0.0)?),
        ("ii", 1.0, "lower", params(1.0, 0.0, 1.0)?),
        ("iii", 0.0, "lower", params(0.0, 1.0, 1.0)?),
        (
            "iv",
            ELLIPSE_A_MAX,
            "lower",
            ellipse_from_a(ELLIPSE_A_MAX, Branch::Lower)?,
        ),
        ("v", 2.0, "", params(2.0, 0.0, 0.0)?),
    ];
    for (tag, a, br, p) in special {
        rows.push(ellipse_row(tag, a, br, &p, cfg)?);
    }
    Ok(rows)
}

const SCAN_HEADER: [&str; 6] = ["b", "c", "a", "is_witness", "indecomposable", "is_psd"];

fn scan_rows(grid: usize, tol: f64) -> Result<Vec<Vec<String>>, CliError> {
    use rayon::prelude::*;
    let step = 2.0 / (grid - 1) as f64;
    (0..grid * grid)
        .into_par_iter()
        .map(|idx| {
            let (b, c) = ((idx / grid) as f64 * step, (idx % grid) as f64 * step);
            let a = (2.0 - b - c).max(0.0);
            let cl = classify(&params(a, b, c)?, tol)?;
            Ok(vec![
                fmt_f64(b),
                fmt_f64(c),
                fmt_f64(a),
                cl.is_witness.to_string(),
                fmt_opt_bool(cl.indecomposable),
                cl.is_psd.to_string(),
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qutrit-witness"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn json_of(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        let (code, out, _) = run_capture(&["classify", "1", "1", "0"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["is_witness"], true);
        assert_eq!(v["indecomposable"], true);
        assert!(out.trim_start().starts_with("{\n  \"meta\""));

        let v = json_of(&run_capture(&["classify", "2", "0", "0"]).1);
        assert_eq!(
            (v["is_witness"].clone(), v["is_psd"].clone()),
            (json!(false), json!(true))
        );

        let v = json_of(&run_capture(&["classify", "0", "1", "1"]).1);
        assert_eq!(
            (v["is_witness"].clone(), v["indecomposable"].clone()),
            (json!(true), json!(false))
        );
    }

    #[test]
    fn classify_rejects_bad_input() {
        let (code, out, err) = run_capture(&["classify", "-1", "1", "1"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(out.is_empty());
        assert!(!err.is_empty());
        assert_eq!(run_capture(&["classify", "x", "1", "1"]).0, EXIT_INVALID);
        assert_eq!(run_capture(&["classify", "NaN", "1", "1"]).0, EXIT_INVALID);
    }

    #[test]
    fn span_examples() {
        let v = json_of(&run_capture(&["span", "1", "1"]).1);
        assert_eq!(
            (v["gram_rank"].clone(), v["spanning"].clone()),
            (json!(9), json!(true))
        );
        let v = json_of(&run_capture(&["span", "0", "1"]).1);
        assert_eq!(
            (v["gram_rank"].clone(), v["spanning"].clone()),
            (json!(7), json!(false))
        );
        let v = json_of(&run_capture(&["span", "0.19098", "1.30902"]).1);
        assert_eq!(v["gram_rank"], 9);
        assert_eq!(v["method"], "closed_form");
    }

    #[test]
    fn span_exit_codes() {
        assert_eq!(run_capture(&["span", "0.5", "0.5"]).0, EXIT_INVALID);
        let third = (1.0f64 / 3.0).to_string();
        assert_eq!(run_capture(&["span", &third, &third]).0, EXIT_DEGENERATE);
        let (code, out, _) = run_capture(&[
            "span",
            &third,
            &third,
            "--numeric-fallback",
            "--starts",
            "32",
        ]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!(v["method"], "numeric_search");
        assert_eq!(v["degenerate"], true);
    }

    #[test]
    fn span_with_vectors() {
        let v = json_of(&run_capture(&["span", "1", "1", "--vectors"]).1);
        assert_eq!(v["vectors"].as_array().unwrap().len(), 9);
        assert_eq!(v["vectors"][0].as_array().unwrap().len(), 9);
    }

    #[test]
    fn ellipse_counts_and_points() {
        let (code, out, _) = run_capture(&["ellipse", "--samples", "5", "--starts", "16"]);
        assert_eq!(code, 0);
        let data: Vec<&str> = out
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(data.len(), 15);
        assert_eq!(data.iter().filter(|l| l.starts_with("sample,")).count(), 10);
        let ii = data.iter().find(|l| l.starts_with("ii,")).unwrap();
        assert!(ii.ends_with(",7,true"), "{ii}");
        let a0 = data[0].split(',').collect::<Vec<_>>();
        assert_eq!(a0[5], "false");
        assert_eq!(a0[6], "9");
    }

    #[test]
    fn scan_counts_and_points() {
        let (code, out, _) = run_capture(&["scan", "--grid", "2"]);
        assert_eq!(code, 0);
        let data: Vec<&str> = out
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(data.len(), 4);
        let out = run_capture(&["scan", "--grid", "3"]).1;
        let row = out
            .lines()
            .find(|l| l.starts_with(&format!("{},{},", fmt_f64(1.0), fmt_f64(0.0))))
            .unwrap();
        assert!(row.ends_with(",true,true,false"), "{row}");
    }

    #[test]
    fn minimize_reports_negative_minimum() {
        let (code, out, _) = run_capture(&["minimize", "0.5", "0.1", "1.4", "--starts", "16"]);
        assert_eq!(code, 0);
        assert!(json_of(&out)["min_value"].as_f64().unwrap() < -1e-4);
    }

    #[test]
    fn csv_header_and_digits() {
        let out = run_capture(&["scan", "--grid", "2", "--tol", "1e-9"]).1;
        assert!(out.starts_with("# version: "));
        assert!(out.contains("# classify_tol: 1.0000000000000001e-9"));
        assert!(out.contains("\nb,c,a,is_witness,indecomposable,is_psd\n"));
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("0,4"), Ok((0, 4)));
        assert!(parse_pair("04").is_err());
    }
}
