//! `pnt`: compute prime sums, verify bound claims, work with zero tables.
//!
//! Exit codes: 0 success or certified, 1 violations found, 2 argument or
//! range error, 3 inconclusive points remain, 4 data error (unreadable or
//! corrupt input).

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use config::{ConfigError, ConfigProfile, Output, PrecisionMode, CONFIG_FILE, ZEROS_ENV};
use pnt_core::bounds::LehmanPhi;
use pnt_core::chebyshev::{enclose, enclose_dd, psi1_at, state_at, StepState};
use pnt_core::numeric::{CompensatedSum, DdInterval};
use pnt_core::sieve::PrimeEngine;
use pnt_core::verifier::{
    audit_constants, crossover_from, verify, verify_piecewise_table, ClaimSpec, CrossoverStatus, VerificationReport,
};
use pnt_core::zeros::{OmegaStatus, ZeroTable};

// A closed pipe (`pnt ... | head`) ends the process quietly.
macro_rules! outln {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0)
        }
    };
}

macro_rules! out {
    ($($t:tt)*) => {
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0)
        }
    };
}
use pnt_core::Error;

#[derive(Parser, Debug)]
#[command(name = "pnt", version, about = "Desk-scale verification of explicit prime number theorem bounds")]
struct Cli {
    /// Profile file of `key = value` lines [default: ./pnt.conf when present]
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    desk_max: Option<f64>,
    #[arg(long, global = true)]
    segment_size: Option<u64>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Zero table (text or ZTBL cache); PNT_ZEROS takes precedence
    #[arg(long, global = true)]
    zero_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    precision_mode: Option<PrecisionMode>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// Shorthand for `--output json`
    #[arg(long, global = true)]
    json: bool,
    /// Keep wall-clock timings in reports (they are zeroed otherwise so
    /// repeated runs give identical bytes)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a step function at x
    Compute {
        #[arg(value_enum)]
        function: Function,
        #[arg(long)]
        x: f64,
    },
    /// Check a claim over a range
    Verify {
        bound_id: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Also write the JSON report to this file
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Locate the last failure of a claim and round it up
    Crossover {
        bound_id: String,
        #[arg(long, default_value_t = 0.1)]
        resolution: f64,
        #[arg(long, default_value_t = 2.0)]
        from: f64,
        #[arg(long, default_value_t = 1000.0)]
        to: f64,
    },
    #[command(subcommand)]
    Zeros(ZerosCommand),
    #[command(subcommand)]
    Table(TableCommand),
    /// Constant inequalities used by the large-x argument
    Audit {
        /// Also list advisory checks
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ZerosCommand {
    /// Parse a table and optionally write a binary cache
    Ingest {
        file: PathBuf,
        #[arg(long)]
        precision: Option<f64>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// N(T) from the table
    Count {
        #[arg(long)]
        up_to: f64,
    },
    /// Sums over zero ordinates
    Sum(SumArgs),
    /// Truncated explicit formula for psi1, against the sieve value
    ExplicitPsi1 {
        #[arg(long)]
        x: f64,
        /// Truncation height [default: table maximum]
        #[arg(long)]
        height: Option<f64>,
    },
    /// N(T) envelope, Lehman sums and the sum of 1/gamma
    Check,
}

#[derive(Args, Debug)]
struct SumArgs {
    #[arg(long, value_enum, default_value_t = SumKind::InvGamma)]
    kind: SumKind,
    /// Truncation height (for `inv-gamma-sq-tail`, the lower end)
    #[arg(long)]
    up_to: f64,
    /// Point x for `xrho`
    #[arg(long)]
    x: Option<f64>,
    /// Count both rho and its conjugate (`inv-gamma`)
    #[arg(long)]
    both_signs: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SumKind {
    InvGamma,
    InvGammaSqTail,
    Xrho,
}

#[derive(Subcommand, Debug)]
enum TableCommand {
    /// Coefficients of the piecewise sufficient condition
    Suffcond,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Function {
    Psi,
    Theta,
    Pi,
    Psi1,
    Mertens,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.0)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(
                Error::ResourceGuard { .. } | Error::InvalidArgument(_) | Error::Range { .. } | Error::UnknownBound(_),
            ) => 2,
            Failure::Core(_) => 4,
        }
    }
}

fn profile(cli: &Cli) -> Result<ConfigProfile, Failure> {
    let mut p = ConfigProfile::default();
    match &cli.config {
        Some(path) => p.load_file(path)?,
        None => {
            let local = PathBuf::from(CONFIG_FILE);
            if local.is_file() {
                p.load_file(&local)?;
            }
        }
    }
    if let Some(v) = cli.desk_max {
        if !(v >= 0.0) {
            return Err(Failure::Usage(format!("bad --desk-max {v}")));
        }
        p.desk_max = v as u64;
    }
    if let Some(v) = cli.segment_size {
        p.segment_size = v;
    }
    if let Some(v) = cli.threads {
        p.threads = v;
    }
    if let Some(v) = &cli.zero_file {
        p.zero_file = Some(v.clone());
    }
    if let Some(v) = std::env::var_os(ZEROS_ENV).filter(|v| !v.is_empty()) {
        p.zero_file = Some(PathBuf::from(v));
    }
    if let Some(v) = cli.precision_mode {
        p.precision_mode = v;
    }
    if let Some(v) = cli.output {
        p.output = v;
    }
    if cli.json {
        p.output = Output::Json;
    }
    p.validate()?;
    Ok(p)
}

fn engine(p: &ConfigProfile) -> Result<PrimeEngine, Failure> {
    Ok(PrimeEngine::new(p.engine_config())?)
}

fn zero_table(p: &ConfigProfile) -> Result<ZeroTable, Failure> {
    let path = p
        .zero_file
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("no zero table: pass --zero-file or set {ZEROS_ENV}")))?;
    Ok(ZeroTable::ingest(path, None)?)
}

fn print_json<T: Serialize>(v: &T) {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_csv<T: Serialize>(rows: &[T]) {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    for r in rows {
        w.serialize(r).expect("csv row");
    }
    w.flush().expect("stdout");
}

/// One evaluated quantity, in whichever precision the profile asks for.
#[derive(Serialize)]
struct Quantity {
    name: &'static str,
    value: f64,
    err_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hi: Option<f64>,
    /// double-double endpoints as `[high, low]` pairs
    #[serde(skip_serializing_if = "Option::is_none")]
    dd_lo: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dd_hi: Option<[f64; 2]>,
}

fn quantity(name: &'static str, s: &CompensatedSum, mode: PrecisionMode) -> Quantity {
    let mut q =
        Quantity { name, value: s.value(), err_bound: s.err_bound(), lo: None, hi: None, dd_lo: None, dd_hi: None };
    match mode {
        PrecisionMode::Fast => {}
        PrecisionMode::Interval => {
            let i = enclose(s);
            q.lo = Some(i.lo);
            q.hi = Some(i.hi);
        }
        PrecisionMode::Extended => {
            let DdInterval { lo, hi } = enclose_dd(s);
            q.dd_lo = Some([lo.hi, lo.lo]);
            q.dd_hi = Some([hi.hi, hi.lo]);
        }
    }
    q
}

fn exact(name: &'static str, v: u64) -> Quantity {
    let v = v as f64;
    Quantity { name, value: v, err_bound: 0.0, lo: None, hi: None, dd_lo: None, dd_hi: None }
}

fn show_quantity(x: f64, q: &Quantity) -> String {
    let mut s = format!("{}({x}) = {}", q.name, q.value);
    if q.err_bound > 0.0 {
        s += &format!(" ± {:.3e}", q.err_bound);
    }
    if let (Some(lo), Some(hi)) = (q.lo, q.hi) {
        s += &format!("  in [{lo:.17e}, {hi:.17e}]");
    }
    if let (Some(lo), Some(hi)) = (q.dd_lo, q.dd_hi) {
        s += &format!("  in [{:.17e} {:+.3e}, {:.17e} {:+.3e}]", lo[0], lo[1], hi[0], hi[1]);
    }
    s
}

fn compute(p: &ConfigProfile, function: Function, x: f64) -> Result<u8, Failure> {
    let e = engine(p)?;
    let mode = p.precision_mode;
    let quantities: Vec<Quantity> = match function {
        Function::Psi => vec![quantity("psi", &state_at(&e, x)?.psi, mode)],
        Function::Theta => vec![quantity("theta", &state_at(&e, x)?.theta, mode)],
        Function::Pi => vec![exact("pi", state_at(&e, x)?.pi)],
        Function::Psi1 => {
            let v = psi1_at(&e, x)?;
            let mut q = Quantity {
                name: "psi1",
                value: v.psi1,
                err_bound: v.err_bound,
                lo: None,
                hi: None,
                dd_lo: None,
                dd_hi: None,
            };
            if mode != PrecisionMode::Fast {
                q.lo = Some((v.psi1 - v.err_bound).next_down());
                q.hi = Some((v.psi1 + v.err_bound).next_up());
            }
            vec![q]
        }
        Function::Mertens => {
            let s: StepState = state_at(&e, x)?;
            vec![
                quantity("sum_logp_over_p", &s.logp_over_p, mode),
                quantity("sum_recip", &s.recip, mode),
                quantity("log_prod", &s.log_prod, mode),
            ]
        }
    };
    match p.output {
        Output::Text => {
            for q in &quantities {
                outln!("{}", show_quantity(x, q));
            }
        }
        Output::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("x".into(), json!(x));
            for q in &quantities {
                obj.insert(q.name.into(), json!(q.value));
            }
            obj.insert("err_bound".into(), json!(quantities.iter().map(|q| q.err_bound).fold(0.0, f64::max)));
            obj.insert("enclosures".into(), json!(quantities));
            print_json(&obj);
        }
        Output::Csv => print_csv(&quantities),
    }
    Ok(0)
}

fn emit_report(p: &ConfigProfile, rep: &VerificationReport) {
    match p.output {
        Output::Json => outln!("{}", rep.to_json()),
        Output::Csv => out!("{}", rep.to_csv()),
        Output::Text => {
            let [lo, hi] = rep.claim.check_range;
            outln!("{} on [{lo}, {hi}]", rep.bound_id);
            outln!("  gaps checked   {}", rep.points_checked);
            outln!("  violations     {}", rep.violations.len());
            outln!("  inconclusive   {}", rep.inconclusive.len());
            if let Some(x) = rep.last_failure {
                outln!("  last failure   {x}");
            }
            if let Some(r) = rep.verified_range {
                outln!("  certified on   [{}, {}]", r[0], r[1]);
            }
            if let Some(m) = rep.margins {
                outln!("  min margin     {:.6e} (relative {:.3e}) at {}", m.absolute, m.relative, m.x);
            }
            for v in rep.violations.iter().rev().take(5) {
                let at = if v.left_limit { "just below" } else { "at" };
                outln!("  fails {at} {}: lhs {:.9} > rhs {:.9}", v.x, v.lhs.lo, v.rhs.hi);
            }
        }
    }
}

fn run_verify(
    p: &ConfigProfile,
    timing: bool,
    id: &str,
    from: f64,
    to: f64,
    report: Option<&PathBuf>,
) -> Result<u8, Failure> {
    let e = engine(p)?;
    let claim = ClaimSpec::new(id, from, to)?;
    let mut rep = verify(&e, &claim)?;
    if !timing {
        rep.wall_time_ms = 0;
    }
    if let Some(path) = report {
        std::fs::write(path, rep.to_json() + "\n").map_err(Error::from)?;
    }
    emit_report(p, &rep);
    Ok(rep.exit_code() as u8)
}

fn run_crossover(p: &ConfigProfile, id: &str, from: f64, to: f64, resolution: f64) -> Result<u8, Failure> {
    if !(resolution >= 1e-3) {
        return Err(Failure::Usage(format!("resolution must be at least 1e-3, got {resolution}")));
    }
    let e = engine(p)?;
    let rep = verify(&e, &ClaimSpec::new(id, from, to)?)?;
    let c = crossover_from(&rep, resolution);
    match p.output {
        Output::Json => print_json(&c),
        Output::Csv => print_csv(&[json!({
            "bound_id": c.bound_id,
            "status": c.status,
            "last_failure_x": c.last_failure_x,
            "failure_sup": c.failure_sup,
            "rounded_threshold": c.rounded_threshold,
            "resolution": c.resolution,
        })]),
        Output::Text => match (c.status, c.rounded_threshold) {
            (CrossoverStatus::NoFailureInRange, _) => outln!("{id}: no failure in [{from}, {to}]"),
            (_, Some(t)) => {
                outln!("{t}");
                if let Some(x) = c.last_failure_x {
                    eprintln!("{id}: last failure {x}, failures end by {}", c.failure_sup.unwrap_or(x));
                }
            }
            (_, None) => outln!("{id}: inconclusive"),
        },
    }
    Ok(if c.status == CrossoverStatus::Inconclusive { 3 } else { 0 })
}

fn run_zeros(p: &ConfigProfile, cmd: &ZerosCommand) -> Result<u8, Failure> {
    match cmd {
        ZerosCommand::Ingest { file, precision, cache } => {
            let t = ZeroTable::ingest(file, *precision)?;
            if let Some(out) = cache {
                t.write_cache(out)?;
            }
            let summary = json!({
                "count": t.count(),
                "max_height": t.max_height(),
                "input_precision": t.input_precision(),
                "cache": cache,
            });
            match p.output {
                Output::Text => {
                    outln!("{} zeros up to height {}, precision {:e}", t.count(), t.max_height(), t.input_precision());
                    if let Some(out) = cache {
                        outln!("cache written to {}", out.display());
                    }
                }
                Output::Csv => print_csv(&[summary]),
                Output::Json => print_json(&summary),
            }
        }
        ZerosCommand::Count { up_to } => {
            let n = zero_table(p)?.count_below(*up_to)?;
            match p.output {
                Output::Text => outln!("{n}"),
                Output::Csv => print_csv(&[json!({"up_to": up_to, "count": n})]),
                Output::Json => print_json(&json!({"up_to": up_to, "count": n})),
            }
        }
        ZerosCommand::Sum(a) => {
            let t = zero_table(p)?;
            let r = match a.kind {
                SumKind::InvGamma => t.sum_inv_gamma(a.up_to, a.both_signs)?,
                SumKind::InvGammaSqTail => t.sum_inv_gamma_sq_tail(a.up_to)?,
                SumKind::Xrho => {
                    let x = a.x.ok_or_else(|| Failure::Usage("`--kind xrho` needs --x".into()))?;
                    t.sum_xrho_over_rho(x, a.up_to)?
                }
            };
            match p.output {
                Output::Text => {
                    out!("{} ± {:.3e} ({} terms)", r.value, r.err_bound, r.term_count);
                    match r.tail_bound {
                        Some(tail) => outln!(", tail at most {tail:.6e}"),
                        None => outln!(),
                    }
                }
                Output::Csv => print_csv(&[r]),
                Output::Json => print_json(&r),
            }
        }
        ZerosCommand::ExplicitPsi1 { x, height } => {
            let t = zero_table(p)?;
            let h = height.unwrap_or(t.max_height());
            let ex = t.explicit_psi1(*x, h)?;
            let sieve = psi1_at(&engine(p)?, *x)?;
            let residual = sieve.psi1 - ex.value;
            let out = json!({
                "explicit": ex,
                "psi1": sieve.psi1,
                "psi1_err_bound": sieve.err_bound,
                "residual": residual,
            });
            match p.output {
                Output::Text => {
                    outln!("explicit  {} ± {:.3e} ({} zeros to {h})", ex.value, ex.err_bound, ex.term_count);
                    outln!("sieve     {} ± {:.3e}", sieve.psi1, sieve.err_bound);
                    outln!("residual  {residual:.9} (truncation tail at most {:.6e})", ex.truncation_tail);
                }
                Output::Csv => print_csv(&[json!({
                    "x": x, "height": h, "explicit": ex.value, "psi1": sieve.psi1,
                    "residual": residual, "truncation_tail": ex.truncation_tail,
                })]),
                Output::Json => print_json(&out),
            }
        }
        ZerosCommand::Check => {
            let t = zero_table(p)?;
            let nt = t.nt_envelope_check();
            let lehman = [t.lehman_check(LehmanPhi::One), t.lehman_check(LehmanPhi::Reciprocal)];
            let omega = t.omega1_check();
            let ok = nt.passed() && lehman.iter().all(|l| l.holds) && omega.status != OmegaStatus::Failed;
            match p.output {
                Output::Text => {
                    outln!(
                        "N(T) envelope: {} gaps, {} grid points, {} violations, min margin {:.6}",
                        nt.gaps_checked,
                        nt.grid_points_checked,
                        nt.envelope_violations.len() + nt.crude_violations.len(),
                        nt.min_margin
                    );
                    for l in &lehman {
                        outln!("Lehman phi = {}: {:.6} <= {:.6} {}", l.phi, l.lhs, l.rhs_finite, l.holds);
                    }
                    outln!("2 sum 1/gamma: {:.10} vs {} ({:?})", omega.sum.value, omega.omega1, omega.status);
                }
                _ => print_json(&json!({"nt": nt, "lehman": lehman, "omega1": omega})),
            }
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn run_table(p: &ConfigProfile) -> u8 {
    let rows = verify_piecewise_table();
    match p.output {
        Output::Json => print_json(&rows),
        Output::Csv => print_csv(
            &rows
                .iter()
                .map(|r| {
                    json!({
                        "l_from": r.l_from, "l_to": r.l_to, "claimed_coeff": r.claimed_coeff,
                        "sup_lo": r.computed_sup.lo, "sup_hi": r.computed_sup.hi,
                        "monotone": r.monotone, "pass": r.pass, "tight": r.tight,
                        "theta_extension": r.theta_extension,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Output::Text => {
            outln!("{:>16} {:>14} {:>9} {:>12}  result", "from L", "to L", "claimed", "computed");
            for r in &rows {
                let tag = if r.theta_extension { " (theta)" } else { "" };
                let verdict = match (r.pass, r.tight) {
                    (true, true) => "pass",
                    (true, false) => "pass, loose",
                    (false, _) => "FAIL",
                };
                outln!(
                    "{:>16.6} {:>14.3} {:>9} {:>12.7}  {verdict}{tag}",
                    r.l_from, r.l_to, r.claimed_coeff, r.computed_sup.hi
                );
                if let Some(d) = &r.diagnostic {
                    outln!("    {d}");
                }
            }
        }
    }
    if rows.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

fn run_audit(p: &ConfigProfile, all: bool) -> u8 {
    let checks: Vec<_> = audit_constants().into_iter().filter(|c| all || c.required).collect();
    match p.output {
        Output::Json => print_json(&checks),
        Output::Csv => print_csv(
            &checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name, "required": c.required, "pass": c.pass,
                        "lo": c.value.map(|v| v.lo), "hi": c.value.map(|v| v.hi), "detail": c.detail,
                    })
                })
                .collect::<Vec<_>>(),
        ),
        Output::Text => {
            for c in &checks {
                let verdict = if c.pass { "pass" } else { "FAIL" };
                let kind = if c.required { "" } else { " (advisory)" };
                outln!("{verdict:4} {}{kind}: {}", c.name, c.detail);
            }
        }
    }
    if checks.iter().filter(|c| c.required).all(|c| c.pass) {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let p = profile(&cli)?;
    match &cli.command {
        Command::Compute { function, x } => compute(&p, *function, *x),
        Command::Verify { bound_id, from, to, report } => {
            run_verify(&p, cli.timing, bound_id, *from, *to, report.as_ref())
        }
        Command::Crossover { bound_id, resolution, from, to } => run_crossover(&p, bound_id, *from, *to, *resolution),
        Command::Zeros(z) => run_zeros(&p, z),
        Command::Table(TableCommand::Suffcond) => Ok(run_table(&p)),
        Command::Audit { all } => Ok(run_audit(&p, *all)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("pnt: {m}"),
                Failure::Core(e) => eprintln!("pnt: {e}"),
            }
            f.code()
        }
    };
    std::io::stdout().flush().ok();
    ExitCode::from(code)
}
