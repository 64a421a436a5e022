//! Command-line front end: `simulate`, `sweep`, `factor` and `verify`.
//!
//! Every command writes one artifact (JSON or CSV) to `--out` or stdout.
//! Exit codes: 0 success, 1 gated verification or factoring failure, 2
//! configuration error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::entanglement::{build_hamming_table, gamma_factor, GammaFactor, GammaKind};
use crate::error::{Error, Result};
use crate::measures::{l1p_coherence_pure, tsallis_coherence_pure, AlphaParam};
use crate::numtheory::{
    extract_factors, find_order_bruteforce, gcd, recover_order, register_sizes, ShorInstance,
};
use crate::statevec::{
    eq6_distribution, measurement_distribution_a, OutcomeDistribution, OutcomeSampler,
    PipelineStates,
};
use crate::theorems::{
    reports_to_json, variation_ledger, verify_all_stages, MeasureReport, ParamGrid, Stage,
    VariationLedger,
};
use crate::tolerances::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Largest register A the `--fast` sampler tabulates.
const FAST_MAX_Q: u64 = 1 << 24;

const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "shor-coherence",
    version,
    about = "Coherence and entanglement along Shor's order-finding circuit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the circuit and report every quantifier at every stage.
    Simulate(RunArgs),
    /// Tabulate one coherence quantifier against its parameter.
    Sweep(SweepArgs),
    /// Sample register A, recover the order and extract factors.
    Factor(FactorArgs),
    /// Run the verification matrix and report gated rows.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Modulus to factor.
    #[arg(long = "n")]
    pub n: u64,
    /// Base coprime to N; drawn from the seed when absent.
    #[arg(long)]
    pub x: Option<u64>,
    /// Register A qubits; derived from epsilon when absent.
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value_t = SweepMeasure::L1p)]
    pub measure: SweepMeasure,
    /// `LO:HI:STEP`; defaults to `1:2:0.05` for l1p and `0.05:2:0.05` for tsallis.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FactorArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = 10)]
    pub max_attempts: u32,
    /// Sample outcomes from the closed-form distribution instead of the statevector.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// `INDEX:DELTA`: add DELTA to one amplitude of every stage state before measuring.
    #[arg(long, hide = true)]
    pub debug_perturb: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMeasure {
    L1p,
    Tsallis,
}

/// Arguments resolved to a concrete instance.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub instance: ShorInstance,
    pub epsilon: f64,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<RunConfig> {
        let modulus = args.n;
        let sizes = register_sizes(modulus, args.epsilon)?;
        let t = args.t.unwrap_or(sizes.t);
        if t == 0 {
            return Err(Error::Domain("t must be at least 1".into()));
        }
        let base = match args.x {
            Some(x) => x,
            None => random_coprime(modulus, args.seed),
        };
        let instance = ShorInstance::new(modulus, base, t)?;
        Ok(RunConfig {
            instance,
            epsilon: args.epsilon,
            seed: args.seed,
            format: args.format,
            out: args.out.clone(),
        })
    }

    fn instance_json(&self) -> Value {
        let inst = &self.instance;
        json!({
            "n": inst.modulus,
            "x": inst.base,
            "t": inst.t,
            "l": inst.l,
            "q": inst.q(),
            "epsilon": self.epsilon,
            "seed": self.seed,
            "window_ok": inst.window_ok(),
        })
    }
}

/// Base in `[2, N)` coprime to `N`, drawn deterministically from `seed`.
fn random_coprime(modulus: u64, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let x = rng.random_range(2..modulus);
        if gcd(x, modulus) == 1 {
            return x;
        }
    }
    modulus - 1
}

/// Rendered artifact and whether the command succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub artifact: String,
    pub success: bool,
    pub warnings: Vec<String>,
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

fn format_pass(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses `LO:HI:STEP` into the points `LO, LO + STEP, ...` not exceeding `HI`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(Error::Domain(format!(
            "grid must be LO:HI:STEP, got {text:?}"
        )));
    };
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Domain(format!("not a number in grid: {s:?}")))
    };
    let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && lo <= hi) {
        return Err(Error::Domain(format!(
            "grid needs finite LO <= HI and STEP > 0, got {text:?}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(Error::Scale(format!("grid has {count} points")));
    }
    Ok((0..count).map(|i| (lo + step * i as f64).min(hi)).collect())
}

fn ledger_grid(
    instance: &ShorInstance,
    grid: &ParamGrid,
    table: &crate::entanglement::HammingTable,
) -> Result<Vec<VariationLedger>> {
    let r = instance.require_order()?;
    let mut out = Vec::new();
    for &p in &grid.ps {
        for &alpha in &grid.alphas {
            out.push(variation_ledger(instance.q(), r, p, alpha, Some(table))?);
        }
    }
    Ok(out)
}

fn gamma_json(g: &GammaFactor) -> Value {
    json!({
        "gamma": g.gamma,
        "bound": g.bound,
        "within_bounds": g.within_bounds(),
        "ordering": format!("{:?}", g.classify()),
    })
}

fn report_rows_csv(out: &mut String, reports: &[MeasureReport], gated_only: bool) {
    for report in reports {
        for row in report.rows.iter().filter(|r| !gated_only || r.gated) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                report.stage.name(),
                row.measure,
                format_real(row.numeric),
                format_opt(row.closed_form),
                format_opt(row.gap),
                format_pass(row.pass),
            );
        }
    }
}

fn collect_warnings(reports: &[MeasureReport]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| {
            r.warnings
                .iter()
                .map(move |w| format!("{}: {w}", r.stage.name()))
        })
        .collect()
}

pub fn cmd_simulate(config: &RunConfig) -> Result<Outcome> {
    let instance = config.instance.clone().with_oracle_order()?;
    let r = instance.require_order()?;
    let states = PipelineStates::run(&instance)?;
    let grid = ParamGrid::default();
    let reports = verify_all_stages(&instance, &states, &grid, &Tolerances::default())?;
    let table = build_hamming_table(&instance)?;
    let mut warnings = collect_warnings(&reports);

    let ledgers = if instance.quotient().is_some() {
        ledger_grid(&instance, &grid, &table)?
    } else {
        warnings.push("variation ledger skipped: r does not divide Q".into());
        Vec::new()
    };
    let gamma2 = gamma_factor(&table, GammaKind::Psi2).ok();
    let gamma3 = if instance.quotient().is_some() {
        gamma_factor(&table, GammaKind::Psi3).ok()
    } else {
        None
    };
    let hint = extract_factors(instance.base, r, instance.modulus)?;
    let success = reports.iter().all(MeasureReport::passed);

    let artifact = match config.format {
        Format::Json => {
            let mut inst = config.instance_json();
            inst["order"] = json!(r);
            inst["r_divides_q"] = json!(instance.quotient().is_some());
            render_json(&json!({
                "instance": inst,
                "stages": reports_to_json(&reports),
                "variations": serde_json::to_value(&ledgers).map_err(|e| Error::Internal(e.to_string()))?,
                "gamma": {
                    "psi2": gamma2.as_ref().map(gamma_json),
                    "psi3": gamma3.as_ref().map(gamma_json),
                },
                "factor_hint": hint.map(|(a, b)| vec![a, b]),
                "warnings": warnings,
                "pass": success,
            }))
        }
        Format::Csv => {
            let mut out = String::from("stage,measure,numeric,closed_form,gap,pass\n");
            report_rows_csv(&mut out, &reports, false);
            for l in &ledgers {
                let tag = format!("p={};alpha={}", l.p, l.alpha);
                let ops = &l.per_operator;
                let whole = &l.whole;
                let rows = [
                    ("delta_modexp", "C_1p", Some(ops.c1p_modexp)),
                    ("delta_inverse_qft", "C_1p", Some(ops.c1p_inverse_qft)),
                    ("delta_whole", "C_1p", Some(whole.c1p)),
                    ("delta_modexp", "C_alpha", Some(ops.calpha_modexp)),
                    ("delta_inverse_qft", "C_alpha", Some(ops.calpha_inverse_qft)),
                    ("delta_whole", "C_alpha", Some(whole.calpha)),
                    ("delta_modexp", "C_g", Some(ops.cg_modexp)),
                    ("delta_inverse_qft", "C_g", Some(ops.cg_inverse_qft)),
                    ("delta_whole", "C_g", Some(whole.cg)),
                    ("delta_modexp", "E_g", ops.eg_modexp),
                    (
                        "delta_inverse_qft",
                        "E_g",
                        ops.eg_inverse_qft.map(|e| e.canonical()),
                    ),
                    ("delta_whole", "E_g", whole.eg.map(|e| e.canonical())),
                ];
                for (stage, measure, value) in rows {
                    let _ = writeln!(out, "{stage},{measure}[{tag}],{},,,", format_opt(value));
                }
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        success,
        warnings,
    })
}

/// One row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub c_psi1: f64,
    pub c_psi2: f64,
    pub c_psi3: f64,
    pub delta: f64,
    /// Set when the point was evaluated on the `alpha -> 1` limit path.
    pub limit: bool,
}

pub const SWEEP_HEADER: &str = "param,C_psi1,C_psi2,C_psi3,delta,limit";

pub fn sweep_rows(
    states: &PipelineStates,
    measure: SweepMeasure,
    points: &[f64],
) -> Result<Vec<SweepRow>> {
    for &v in points {
        match measure {
            SweepMeasure::L1p if !(1.0..=2.0).contains(&v) => {
                return Err(Error::Domain(format!("p must lie in [1, 2], got {v}")))
            }
            SweepMeasure::Tsallis => {
                AlphaParam::new(v)?;
            }
            _ => {}
        }
    }
    points
        .par_iter()
        .map(|&v| {
            let (eval, limit): (Box<dyn Fn(Stage) -> Result<f64> + Sync>, bool) = match measure {
                SweepMeasure::L1p => (
                    Box::new(move |s: Stage| l1p_coherence_pure(s.state(states).amplitudes(), v)),
                    false,
                ),
                SweepMeasure::Tsallis => {
                    let alpha = AlphaParam::new(v)?;
                    (
                        Box::new(move |s: Stage| {
                            Ok(tsallis_coherence_pure(s.state(states).amplitudes(), alpha))
                        }),
                        alpha.is_limit(),
                    )
                }
            };
            let c_psi1 = eval(Stage::Psi1)?;
            let c_psi2 = eval(Stage::Psi2)?;
            let c_psi3 = eval(Stage::Psi3)?;
            Ok(SweepRow {
                param: v,
                c_psi1,
                c_psi2,
                c_psi3,
                delta: c_psi3 - c_psi1,
                limit,
            })
        })
        .collect()
}

pub fn cmd_sweep(config: &RunConfig, measure: SweepMeasure, grid: Option<&str>) -> Result<Outcome> {
    let default_grid = match measure {
        SweepMeasure::L1p => "1:2:0.05",
        SweepMeasure::Tsallis => "0.05:2:0.05",
    };
    let points = parse_grid(grid.unwrap_or(default_grid))?;
    let states = PipelineStates::run(&config.instance)?;
    let rows = sweep_rows(&states, measure, &points)?;
    let warnings: Vec<String> = rows
        .iter()
        .filter(|r| r.limit)
        .map(|r| format!("alpha = {} evaluated on the limit path", r.param))
        .collect();
    let artifact = match config.format {
        Format::Json => render_json(&json!({
            "instance": config.instance_json(),
            "measure": match measure { SweepMeasure::L1p => "l1p", SweepMeasure::Tsallis => "tsallis" },
            "rows": rows,
        })),
        Format::Csv => {
            let mut out = format!("{SWEEP_HEADER}\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    format_real(r.param),
                    format_real(r.c_psi1),
                    format_real(r.c_psi2),
                    format_real(r.c_psi3),
                    format_real(r.delta),
                    r.limit,
                );
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        success: true,
        warnings,
    })
}

/// One measurement in the factoring loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorAttempt {
    pub attempt: u32,
    pub k: u64,
    pub recovered_order: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorStatus {
    Factored,
    /// The order was found but is odd or has `x^{r/2} = -1 (mod N)`.
    MethodInapplicable,
    AttemptsExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub status: FactorStatus,
    pub factors: Option<(u64, u64)>,
    pub order: Option<u64>,
    pub attempts: Vec<FactorAttempt>,
}

/// Runs the sample / recover / extract loop against a fixed outcome distribution.
pub fn factor_loop(
    instance: &ShorInstance,
    distribution: &OutcomeDistribution,
    seed: u64,
    max_attempts: u32,
) -> Result<FactorReport> {
    let mut sampler = OutcomeSampler::new(distribution, seed);
    let mut attempts = Vec::new();
    for attempt in 1..=max_attempts {
        let k = sampler.next_outcome() as u64;
        let recovered = recover_order(k, instance);
        attempts.push(FactorAttempt {
            attempt,
            k,
            recovered_order: recovered,
        });
        if let Some(r) = recovered {
            let (status, factors) = match extract_factors(instance.base, r, instance.modulus)? {
                Some((a, b)) => (FactorStatus::Factored, Some((a.min(b), a.max(b)))),
                None => (FactorStatus::MethodInapplicable, None),
            };
            return Ok(FactorReport {
                status,
                factors,
                order: Some(r),
                attempts,
            });
        }
    }
    Ok(FactorReport {
        status: FactorStatus::AttemptsExhausted,
        factors: None,
        order: None,
        attempts,
    })
}

/// Register-A outcome distribution, from the statevector or (`fast`) the closed form.
pub fn outcome_distribution(instance: &ShorInstance, fast: bool) -> Result<OutcomeDistribution> {
    if fast {
        let q = instance.q();
        if q > FAST_MAX_Q {
            return Err(Error::Scale(format!(
                "Q = {q} exceeds the tabulation limit {FAST_MAX_Q}"
            )));
        }
        let r = find_order_bruteforce(instance.base, instance.modulus)?;
        eq6_distribution(r, q)
    } else {
        Ok(measurement_distribution_a(
            &PipelineStates::run(instance)?.psi3,
        ))
    }
}

pub fn cmd_factor(config: &RunConfig, max_attempts: u32, fast: bool) -> Result<Outcome> {
    let instance = &config.instance;
    let distribution = outcome_distribution(instance, fast)?;
    let report = factor_loop(instance, &distribution, config.seed, max_attempts)?;
    let success = report.status == FactorStatus::Factored;
    let mut warnings = Vec::new();
    match report.status {
        FactorStatus::MethodInapplicable => warnings.push(format!(
            "order {} of x = {} does not yield factors; choose another base",
            report.order.unwrap_or(0),
            instance.base
        )),
        FactorStatus::AttemptsExhausted => {
            warnings.push(format!("no order recovered in {max_attempts} attempts"))
        }
        FactorStatus::Factored => {}
    }
    let artifact = match config.format {
        Format::Json => {
            let mut v =
                serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            v["instance"] = config.instance_json();
            v["fast"] = json!(fast);
            render_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("attempt,k,recovered_order,status,factor_lo,factor_hi\n");
            let last = report.attempts.len();
            for (i, a) in report.attempts.iter().enumerate() {
                let final_row = i + 1 == last;
                let status = if final_row {
                    serde_json::to_value(report.status)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_owned))
                        .unwrap_or_default()
                } else {
                    String::new()
                };
                let (lo, hi) = match (final_row, report.factors) {
                    (true, Some((lo, hi))) => (lo.to_string(), hi.to_string()),
                    _ => (String::new(), String::new()),
                };
                let order = a.recovered_order.map(|r| r.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{order},{status},{lo},{hi}", a.attempt, a.k);
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        success,
        warnings,
    })
}

fn parse_perturb(text: &str) -> Result<(usize, f64)> {
    let (index, delta) = text
        .split_once(':')
        .ok_or_else(|| Error::Domain(format!("perturbation must be INDEX:DELTA, got {text:?}")))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("bad perturbation index {index:?}")))?;
    let delta = delta
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("bad perturbation delta {delta:?}")))?;
    Ok((index, delta))
}

pub fn cmd_verify(config: &RunConfig, perturb: Option<(usize, f64)>) -> Result<Outcome> {
    let instance = config.instance.clone().with_oracle_order()?;
    let mut states = PipelineStates::run(&instance)?;
    if let Some((index, delta)) = perturb {
        let dim = states.psi1.amplitudes().len();
        if index >= dim {
            return Err(Error::Domain(format!(
                "perturbation index {index} outside dimension {dim}"
            )));
        }
        states.psi1 = states.psi1.perturbed(index, delta);
        states.psi2 = states.psi2.perturbed(index, delta);
        states.psi3 = states.psi3.perturbed(index, delta);
    }
    let reports = verify_all_stages(
        &instance,
        &states,
        &ParamGrid::default(),
        &Tolerances::default(),
    )?;
    let success = reports.iter().all(MeasureReport::passed);
    let warnings = collect_warnings(&reports);
    let artifact = match config.format {
        Format::Json => {
            let failures: Vec<Value> = reports
                .iter()
                .flat_map(|r| {
                    r.failures().map(move |row| {
                        json!({
                            "stage": r.stage.name(),
                            "measure": row.measure,
                            "numeric": row.numeric,
                            "closed_form": row.closed_form,
                            "gap": row.gap,
                        })
                    })
                })
                .collect();
            render_json(&json!({
                "instance": config.instance_json(),
                "stages": reports_to_json(&reports),
                "failures": failures,
                "warnings": warnings,
                "pass": success,
            }))
        }
        Format::Csv => {
            let mut out = String::from("stage,measure,numeric,closed_form,gap,pass\n");
            report_rows_csv(&mut out, &reports, true);
            out
        }
    };
    Ok(Outcome {
        artifact,
        success,
        warnings,
    })
}

/// Executes a parsed command without touching the filesystem.
pub fn execute(command: &Command) -> Result<(Outcome, Option<PathBuf>)> {
    let (run, outcome) = match command {
        Command::Simulate(run) => {
            let cfg = RunConfig::resolve(run)?;
            (run, cmd_simulate(&cfg)?)
        }
        Command::Sweep(args) => {
            let cfg = RunConfig::resolve(&args.run)?;
            (
                &args.run,
                cmd_sweep(&cfg, args.measure, args.grid.as_deref())?,
            )
        }
        Command::Factor(args) => {
            let cfg = RunConfig::resolve(&args.run)?;
            (&args.run, cmd_factor(&cfg, args.max_attempts, args.fast)?)
        }
        Command::Verify(args) => {
            let cfg = RunConfig::resolve(&args.run)?;
            let perturb = args
                .debug_perturb
                .as_deref()
                .map(parse_perturb)
                .transpose()?;
            (&args.run, cmd_verify(&cfg, perturb)?)
        }
    };
    Ok((outcome, run.out.clone()))
}

pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_CONFIG,
    }
}

/// Parses `args`, runs the command, writes the artifact and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok((outcome, out)) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &outcome.artifact) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_CONFIG;
                    }
                }
                None => print!("{}", outcome.artifact),
            }
            if outcome.success {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
