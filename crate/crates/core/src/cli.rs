//! Command-line front end shared by the `nmqc` binary and the tests.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse or usage error,
//! 3 verification failure, 4 resource cap, 5 infeasible when feasibility
//! was asserted.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::assignment::{
    assignment_from_poly, clifford_level, dense_expectation, sample_outcomes, AssignmentJson,
    MeasurementAssignment, DENSE_MAX_QUBITS,
};
use crate::boolfn::{parse_function, FunctionInput};
use crate::circuits::{emit_netlist, execute, total_cost, CircuitCost, CostConfig, GhzVariant};
use crate::constructions::{budget_from_env, compare_all, construct, Method};
use crate::error::{Error, Result};
use crate::feasibility::{
    conjecture_scan, decide_symmetric_support, minimal_profile, Decision, FeasibilityQuery, RowRule,
};
use crate::polynomial::PolyJson;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INFEASIBLE: i32 = 5;

/// Default seed for sampling.
pub const DEFAULT_SEED: u64 = 0;

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::ArityMismatch { .. } | Error::Json(_) => EXIT_PARSE,
        Error::Verification(_) | Error::NondeterministicPoint { .. } | Error::NonDyadic(_) => EXIT_VERIFY,
        Error::ResourceCap(_) | Error::ArityCap { .. } => EXIT_CAP,
        Error::Unsupported(_) | Error::Io(_) | Error::Csv(_) => EXIT_FAILURE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// CSF for symmetric inputs, KR otherwise.
    Auto,
    Fr,
    Ef,
    Csf,
    Kr,
    Sc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GhzArg {
    Log,
    Const,
}

impl From<GhzArg> for GhzVariant {
    fn from(g: GhzArg) -> Self {
        match g {
            GhzArg::Log => GhzVariant::Log,
            GhzArg::Const => GhzVariant::Const,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RowsArg {
    Profile,
    Literal,
}

impl From<RowsArg> for RowRule {
    fn from(r: RowsArg) -> Self {
        match r {
            RowsArg::Profile => RowRule::Profile,
            RowsArg::Literal => RowRule::Literal,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nmqc", version, about = "Compile Boolean functions into GHZ measurement patterns")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    /// Target accuracy of non-Clifford measurements.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Synthesis overhead constant.
    #[arg(long, default_value_t = 2.5)]
    pub c: f64,
    #[arg(long, value_enum, default_value = "log")]
    pub ghz: GhzArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polynomial and its measurement assignment.
    Compile {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Directory receiving poly.json and assignment.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include construction times.
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate an assignment exactly.
    Eval {
        #[arg(long)]
        assignment: PathBuf,
        /// Input bits, x1 first.
        #[arg(long, conflicts_with = "all")]
        x: Option<String>,
        #[arg(long)]
        all: bool,
        /// Check the outputs against this function.
        #[arg(long = "fn")]
        function: Option<String>,
    },
    /// Sample measurement outcomes.
    Simulate {
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Circuit cost of an assignment.
    Cost {
        #[arg(long)]
        assignment: PathBuf,
        #[command(flatten)]
        cost: CostArgs,
    },
    /// Gate-level program for an assignment.
    Netlist {
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long, value_enum, default_value = "log")]
        ghz: GhzArg,
        /// Simulate the program on every input and append the outputs.
        #[arg(long)]
        execute: bool,
    },
    /// Decide whether a symmetric function fits a set of subset sizes.
    Feasible {
        #[arg(long = "fn")]
        function: String,
        /// Growth exponent t: sizes {0} u {1..t} u {n-t..n}.
        #[arg(long, conflicts_with_all = ["allowed", "minimal"])]
        t: Option<usize>,
        /// Explicit allowed sizes, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "minimal")]
        allowed: Option<Vec<usize>>,
        /// Find the smallest feasible t.
        #[arg(long)]
        minimal: bool,
        #[arg(long, value_enum, default_value = "profile")]
        rows: RowsArg,
        /// Exit with status 5 when infeasible.
        #[arg(long)]
        assert_feasible: bool,
    },
    /// Feasibility at t = k/2 - 1 and k/2 for complete symmetric functions.
    Scan {
        /// Degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Input sizes: `a..b` (inclusive) or a comma list.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "profile")]
        rows: RowsArg,
        /// Exit with status 5 if any pair breaks the pattern.
        #[arg(long)]
        assert_pattern: bool,
    },
    /// Run every applicable construction and tabulate the results.
    Compare {
        #[arg(long = "fn")]
        function: String,
        /// Per-method budget; defaults to NMQC_TIME_BUDGET_MS or 30 s.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        timings: bool,
    },
}

/// Settings resolved from the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub cost: CostConfig,
    pub ghz: GhzVariant,
    pub seed: u64,
    pub budget: Duration,
}

impl RunConfig {
    fn for_command(cli: &Cli) -> Result<Self> {
        let default_format = match cli.command {
            Command::Scan { .. } => Format::Csv,
            _ => Format::Text,
        };
        let mut cfg = RunConfig {
            format: cli.format.unwrap_or(default_format),
            cost: CostConfig::default(),
            ghz: GhzVariant::Log,
            seed: DEFAULT_SEED,
            budget: budget_from_env(),
        };
        match &cli.command {
            Command::Cost { cost, .. } => {
                if !(cost.epsilon > 0.0 && cost.epsilon <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "--epsilon must lie in (0, 1], got {}",
                        cost.epsilon
                    )));
                }
                cfg.cost = CostConfig {
                    epsilon: cost.epsilon,
                    c: cost.c,
                };
                cfg.ghz = cost.ghz.into();
            }
            Command::Netlist { ghz, .. } => cfg.ghz = (*ghz).into(),
            Command::Simulate { seed, .. } => cfg.seed = *seed,
            Command::Compare {
                budget_ms: Some(ms),
                ..
            } => cfg.budget = Duration::from_millis(*ms),
            _ => {}
        }
        Ok(cfg)
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// result to `out`; diagnostics go to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let cfg = RunConfig::for_command(cli)?;
    match &cli.command {
        Command::Compile {
            function,
            method,
            out,
            timings,
        } => cmd_compile(&cfg, function, *method, out.as_deref(), *timings).map(|s| (s, EXIT_OK)),
        Command::Eval {
            assignment,
            x,
            all,
            function,
        } => cmd_eval(&cfg, assignment, x.as_deref(), *all, function.as_deref()).map(|s| (s, EXIT_OK)),
        Command::Simulate {
            assignment,
            x,
            shots,
            ..
        } => cmd_simulate(&cfg, assignment, x, *shots).map(|s| (s, EXIT_OK)),
        Command::Cost { assignment, .. } => cmd_cost(&cfg, assignment).map(|s| (s, EXIT_OK)),
        Command::Netlist {
            assignment,
            execute,
            ..
        } => cmd_netlist(&cfg, assignment, *execute).map(|s| (s, EXIT_OK)),
        Command::Feasible {
            function,
            t,
            allowed,
            minimal,
            rows,
            assert_feasible,
        } => {
            let (s, feasible) = cmd_feasible(&cfg, function, *t, allowed.as_deref(), *minimal, (*rows).into())?;
            Ok((s, if *assert_feasible && !feasible { EXIT_INFEASIBLE } else { EXIT_OK }))
        }
        Command::Scan {
            k,
            n,
            rows,
            assert_pattern,
        } => {
            let (s, clean) = cmd_scan(&cfg, k, n, (*rows).into())?;
            Ok((s, if *assert_pattern && !clean { EXIT_INFEASIBLE } else { EXIT_OK }))
        }
        Command::Compare {
            function, timings, ..
        } => cmd_compare(&cfg, function, *timings).map(|s| (s, EXIT_OK)),
    }
}

fn to_json_string<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_assignment(path: &Path) -> Result<MeasurementAssignment> {
    let text = std::fs::read_to_string(path)?;
    let j: AssignmentJson = serde_json::from_str(&text)?;
    MeasurementAssignment::from_json(&j)
}

/// `"101"` means `x1 = 1, x2 = 0, x3 = 1`.
pub fn parse_bits(s: &str, n: usize) -> Result<u128> {
    let s = s.trim();
    if s.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: s.len(),
        });
    }
    s.chars().enumerate().try_fold(0u128, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << i),
        _ => Err(Error::Parse(format!("input bit {c:?} is not 0 or 1"))),
    })
}

pub fn format_bits(x: u128, n: usize) -> String {
    (0..n).map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn resolve_method(m: MethodArg, f: &FunctionInput) -> Method {
    match m {
        MethodArg::Auto if f.symmetric().is_some() => Method::Csf,
        MethodArg::Auto => Method::Kr,
        MethodArg::Fr => Method::Fr,
        MethodArg::Ef => Method::Ef,
        MethodArg::Csf => Method::Csf,
        MethodArg::Kr => Method::Kr,
        MethodArg::Sc => Method::Sc,
    }
}

#[derive(Serialize)]
struct CompileJson {
    report: crate::constructions::ReportJson,
    clifford_level: u32,
    assignment: AssignmentJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<PolyJson>,
}

/// Builds the polynomial and assignment; with `out`, writes `poly.json`
/// and `assignment.json` there.
pub fn cmd_compile(cfg: &RunConfig, spec: &str, method: MethodArg, out: Option<&Path>, timings: bool) -> Result<String> {
    let f = parse_function(spec)?;
    let method = resolve_method(method, &f);
    let report = construct(method, &f)?;
    let a = assignment_from_poly(&report.poly)?;
    let level = clifford_level(&a)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("poly.json"), to_json_string(&report.poly.to_json())?)?;
        std::fs::write(dir.join("assignment.json"), to_json_string(&a.to_json())?)?;
    }
    match cfg.format {
        Format::Json => to_json_string(&CompileJson {
            report: report.to_json(false, timings),
            clifford_level: level,
            assignment: a.to_json(),
            poly: out.is_none().then(|| report.poly.to_json()),
        }),
        Format::Csv => {
            let mut s = String::from("method,n,sparsity,support,granularity,clifford_level\n");
            writeln!(
                s,
                "{},{},{},{},{},{}",
                method,
                f.arity(),
                report.sparsity,
                report.support,
                report.granularity,
                level
            )
            .unwrap();
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "method {method}").unwrap();
            writeln!(s, "n {}", f.arity()).unwrap();
            writeln!(s, "sparsity {}", report.sparsity).unwrap();
            writeln!(s, "support {}", report.support).unwrap();
            writeln!(s, "granularity {}", report.granularity).unwrap();
            writeln!(s, "clifford_level {level}").unwrap();
            if timings {
                writeln!(s, "elapsed_ms {:.3}", report.elapsed.as_secs_f64() * 1e3).unwrap();
            }
            for note in &report.notes {
                writeln!(s, "note {note}").unwrap();
            }
            if report.poly.support_size() <= 64 {
                writeln!(s, "poly {}", report.poly).unwrap();
            }
            if let Some(dir) = out {
                writeln!(s, "wrote {}", dir.join("poly.json").display()).unwrap();
                writeln!(s, "wrote {}", dir.join("assignment.json").display()).unwrap();
            }
            Ok(s)
        }
    }
}

/// Exact outputs at one input or all of them, optionally checked against
/// a function.
pub fn cmd_eval(cfg: &RunConfig, path: &Path, x: Option<&str>, all: bool, check: Option<&str>) -> Result<String> {
    let a = read_assignment(path)?;
    let n = a.arity();
    let inputs: Vec<u128> = match (x, all) {
        (Some(bits), _) => vec![parse_bits(bits, n)?],
        (None, true) => {
            if n > 20 {
                return Err(Error::ResourceCap(format!("--all over {n} inputs")));
            }
            (0..1u128 << n).collect()
        }
        (None, false) => return Err(Error::InvalidArgument("give --x or --all".into())),
    };
    let reference = check.map(parse_function).transpose()?;
    if let Some(r) = &reference {
        if r.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: r.arity(),
            });
        }
    }
    let mut outputs = Vec::with_capacity(inputs.len());
    for &x in &inputs {
        let v = a.evaluate_mask(x)?;
        if let Some(r) = &reference {
            if r.eval_mask(x) != v {
                return Err(Error::Verification(format!(
                    "assignment gives {} at x = {}",
                    v as u8,
                    format_bits(x, n)
                )));
            }
        }
        outputs.push(v);
    }
    let table: String = outputs.iter().map(|&b| if b { '1' } else { '0' }).collect();
    match cfg.format {
        Format::Json => to_json_string(&json!({
            "n": n,
            "inputs": inputs.iter().map(|&x| format_bits(x, n)).collect::<Vec<_>>(),
            "outputs": table,
            "checked": reference.is_some(),
        })),
        Format::Csv => {
            let mut s = String::from("x,output\n");
            for (x, b) in inputs.iter().zip(&outputs) {
                writeln!(s, "{},{}", format_bits(*x, n), *b as u8).unwrap();
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            for (x, b) in inputs.iter().zip(&outputs) {
                writeln!(s, "{} {}", format_bits(*x, n), *b as u8).unwrap();
            }
            if all {
                writeln!(s, "table {table}").unwrap();
            }
            Ok(s)
        }
    }
}

/// Samples outcomes at one input; reports the dense-state expectation too
/// when the assignment is small enough.
pub fn cmd_simulate(cfg: &RunConfig, path: &Path, x: &str, shots: u64) -> Result<String> {
    let a = read_assignment(path)?;
    let x = parse_bits(x, a.arity())?;
    let stats = sample_outcomes(&a, x, shots, cfg.seed)?;
    let deterministic = a.evaluate_mask(x).ok();
    let agreement = deterministic.map(|v| {
        let hits = if v { stats.output_ones } else { shots - stats.output_ones };
        hits as f64 / shots as f64
    });
    let oracle = if a.k() <= DENSE_MAX_QUBITS {
        Some(dense_expectation(&a, x)?)
    } else {
        None
    };
    let sigmas = if stats.sigma() > 0.0 {
        Some((stats.parity_rate() - stats.expected_parity_rate).abs() / stats.sigma())
    } else {
        None
    };
    match cfg.format {
        Format::Json | Format::Csv => to_json_string(&json!({
            "seed": cfg.seed,
            "shots": shots,
            "k": a.k(),
            "parity_ones": stats.parity_ones,
            "output_ones": stats.output_ones,
            "parity_rate": stats.parity_rate(),
            "expected_parity_rate": stats.expected_parity_rate,
            "deviation_sigmas": sigmas,
            "deterministic_output": deterministic,
            "agreement": agreement,
            "oracle_expectation": oracle,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "# seed {}", cfg.seed).unwrap();
            writeln!(s, "shots {shots}").unwrap();
            writeln!(s, "k {}", a.k()).unwrap();
            writeln!(s, "parity_ones {}", stats.parity_ones).unwrap();
            writeln!(s, "output_ones {}", stats.output_ones).unwrap();
            writeln!(s, "parity_rate {:.6}", stats.parity_rate()).unwrap();
            writeln!(s, "expected_parity_rate {:.6}", stats.expected_parity_rate).unwrap();
            if let Some(z) = sigmas {
                writeln!(s, "deviation_sigmas {z:.3}").unwrap();
            }
            if let Some(v) = deterministic {
                writeln!(s, "deterministic_output {}", v as u8).unwrap();
            }
            if let Some(g) = agreement {
                writeln!(s, "agreement {g:.6}").unwrap();
            }
            if let Some(e) = oracle {
                writeln!(s, "oracle_expectation {e:.12}").unwrap();
            }
            Ok(s)
        }
    }
}

fn cost_row(s: &mut String, name: &str, c: &CircuitCost) {
    writeln!(s, "{name:<12} {:>12} {:>12} {:>12}", fmt_num(c.depth), fmt_num(c.width), fmt_num(c.gates)).unwrap();
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.4}")
    }
}

pub fn cmd_cost(cfg: &RunConfig, path: &Path) -> Result<String> {
    let a = read_assignment(path)?;
    let t = total_cost(&a, &cfg.cost, cfg.ghz)?;
    match cfg.format {
        Format::Json => to_json_string(&json!({
            "k": a.k(),
            "epsilon": cfg.cost.epsilon,
            "c": cfg.cost.c,
            "cost": t,
        })),
        Format::Csv => {
            let mut s = String::from("stage,depth,width,gates\n");
            for (name, c) in [
                ("linear", &t.linear),
                ("ghz", &t.ghz),
                ("measurement", &t.measurement),
                ("post", &t.post),
                ("total", &t.total),
            ] {
                writeln!(s, "{name},{},{},{}", fmt_num(c.depth), fmt_num(c.width), fmt_num(c.gates)).unwrap();
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "k {} level {} exact {} ghz {}", a.k(), t.level, t.exact, t.variant).unwrap();
            if !t.exact {
                writeln!(s, "epsilon {} c {}", cfg.cost.epsilon, cfg.cost.c).unwrap();
            }
            writeln!(s, "{:<12} {:>12} {:>12} {:>12}", "stage", "depth", "width", "gates").unwrap();
            cost_row(&mut s, "linear", &t.linear);
            cost_row(&mut s, "ghz", &t.ghz);
            cost_row(&mut s, "measurement", &t.measurement);
            cost_row(&mut s, "post", &t.post);
            cost_row(&mut s, "total", &t.total);
            Ok(s)
        }
    }
}

pub fn cmd_netlist(cfg: &RunConfig, path: &Path, run_it: bool) -> Result<String> {
    let a = read_assignment(path)?;
    let net = emit_netlist(&a, cfg.ghz)?;
    let runs = if run_it {
        let n = a.arity();
        if n > 12 {
            return Err(Error::ResourceCap(format!("executing over {n} inputs")));
        }
        (0..1u128 << n)
            .map(|x| execute(&net, x).map(|e| (x, e.p_one)))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![]
    };
    match cfg.format {
        Format::Json | Format::Csv => {
            if run_it {
                to_json_string(&json!({
                    "netlist": net,
                    "executions": runs.iter().map(|(x, p)| json!({"x": format_bits(*x, a.arity()), "p_one": p})).collect::<Vec<_>>(),
                }))
            } else {
                to_json_string(&net)
            }
        }
        Format::Text => {
            let mut s = net.to_text();
            for (x, p) in runs {
                writeln!(s, "exec {} p_one {:.12}", format_bits(x, a.arity()), p).unwrap();
            }
            Ok(s)
        }
    }
}

fn decision_json(d: &Decision) -> serde_json::Value {
    json!({
        "feasible": d.feasible,
        "forbidden": d.forbidden,
        "rank": d.rank,
        "snf_max_diag_bits": d.snf_max_diag_bits,
        "certified_exhaustively": d.certified_exhaustively,
        "witness_sparsity": d.witness.as_ref().map(|w| w.sparsity().to_string()),
        "witness_v_h": d.witness.as_ref().map(|w| w.v_h.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    })
}

fn decision_text(s: &mut String, d: &Decision) {
    writeln!(s, "feasible {}", d.feasible).unwrap();
    let forb: Vec<String> = d.forbidden.iter().map(|i| i.to_string()).collect();
    writeln!(s, "forbidden {}", forb.join(",")).unwrap();
    writeln!(s, "rank {}", d.rank).unwrap();
    writeln!(s, "snf_max_diag_bits {}", d.snf_max_diag_bits).unwrap();
    if let Some(w) = &d.witness {
        writeln!(s, "witness_sparsity {}", w.sparsity()).unwrap();
        let vh: Vec<String> = w.v_h.iter().map(|v| v.to_string()).collect();
        writeln!(s, "witness_v_h {}", vh.join(",")).unwrap();
        writeln!(s, "certified_exhaustively {}", d.certified_exhaustively).unwrap();
    }
}

/// Returns the report and whether the answer was feasible.
pub fn cmd_feasible(
    cfg: &RunConfig,
    spec: &str,
    t: Option<usize>,
    allowed: Option<&[usize]>,
    minimal: bool,
    rule: RowRule,
) -> Result<(String, bool)> {
    let f = parse_function(spec)?
        .symmetric()
        .ok_or_else(|| Error::InvalidArgument("feasibility needs a symmetric function".into()))?;
    let n = f.arity();
    if minimal {
        let m = minimal_profile(&f)?;
        let s = match cfg.format {
            Format::Json | Format::Csv => {
                let mut v = decision_json(&m.decision);
                v["minimal_t"] = json!(m.t);
                v["tested"] = json!(m.tested);
                to_json_string(&v)?
            }
            Format::Text => {
                let mut s = format!("minimal_t {}\ntested {}\n", m.t, m.tested);
                decision_text(&mut s, &m.decision);
                s
            }
        };
        return Ok((s, true));
    }
    let q = match (t, allowed) {
        (_, Some(sizes)) => FeasibilityQuery::new(f, sizes.iter().copied())?,
        (Some(t), None) => {
            let forbidden = rule.forbidden(n, t, f.degree());
            FeasibilityQuery::with_forbidden(f, &forbidden)?
        }
        (None, None) => {
            return Err(Error::InvalidArgument("give --t, --allowed or --minimal".into()))
        }
    };
    let d = decide_symmetric_support(&q)?;
    let s = match cfg.format {
        Format::Json | Format::Csv => to_json_string(&decision_json(&d))?,
        Format::Text => {
            let mut s = String::new();
            decision_text(&mut s, &d);
            s
        }
    };
    Ok((s, d.feasible))
}

/// `"8..64"` (inclusive), `"8..=64"` or `"8,12,16"`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let num = |v: &str| -> Result<usize> {
        v.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size {v:?} in range {s:?}")))
    };
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        return Ok((a..=b).collect());
    }
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(num).collect()
}

/// Returns the report and whether no pair broke the pattern.
pub fn cmd_scan(cfg: &RunConfig, ks: &[usize], ns: &str, rule: RowRule) -> Result<(String, bool)> {
    let ns = parse_range(ns)?;
    let report = conjecture_scan(ks, ns, rule)?;
    let clean = report.counterexamples.is_empty();
    let s = match cfg.format {
        Format::Csv => report.to_csv()?,
        Format::Json => to_json_string(&report)?,
        Format::Text => {
            let mut s = report.to_csv()?;
            if clean {
                writeln!(s, "# counterexamples: none").unwrap();
            } else {
                let list: Vec<String> = report
                    .counterexamples
                    .iter()
                    .map(|(k, n)| format!("(k={k},n={n})"))
                    .collect();
                writeln!(s, "# counterexamples: {}", list.join(" ")).unwrap();
            }
            s
        }
    };
    Ok((s, clean))
}

pub fn cmd_compare(cfg: &RunConfig, spec: &str, timings: bool) -> Result<String> {
    let f = parse_function(spec)?;
    let table = compare_all(&f, cfg.budget);
    match cfg.format {
        Format::Csv => table.to_csv(timings),
        Format::Json => to_json_string(&json!({
            "n": f.arity(),
            "rows": table.rows.iter().map(|r| r.to_json(false, timings)).collect::<Vec<_>>(),
            "skipped": table.skipped,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{:<8} {:>10} {:>10} {:>12}", "method", "sparsity", "support", "granularity").unwrap();
            for r in &table.rows {
                write!(s, "{:<8} {:>10} {:>10} {:>12}", r.method.name(), r.sparsity, r.support, r.granularity).unwrap();
                if timings {
                    write!(s, " {:>10.3}ms", r.elapsed.as_secs_f64() * 1e3).unwrap();
                }
                s.push('\n');
            }
            for sk in &table.skipped {
                writeln!(s, "skipped {}: {}", sk.method, sk.reason).unwrap();
            }
            Ok(s)
        }
    }
}
