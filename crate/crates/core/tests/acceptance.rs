//! Acceptance criteria, one line each.
//!
//! Runs as a plain binary so the lines reach the terminal. The process
//! fails when any criterion's outcome differs from the expected one; the
//! expected outcome is a pass everywhere except the θ half of the Büthe
//! envelope check, whose printed starting point 1423 is too low (the
//! envelope fails for 1423 <= x < 1427).

mod support;

use std::time::Instant;

use pnt_core::bounds::{corollary_tails, log_power_tail, w_rho_bound_check, LogPoint};
use pnt_core::chebyshev::{psi1_at, state_at};
use pnt_core::sieve::{EngineConfig, PrimeEngine};
use pnt_core::verifier::{
    audit_constants, crossover_from, verify, verify_piecewise_table, AuditCheck, ClaimSpec, CrossoverStatus,
    VerificationReport,
};
use pnt_core::zeros::{OmegaStatus, ZeroTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DESK: f64 = 1e8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn clean(r: &VerificationReport) -> bool {
    r.violations.is_empty() && r.inconclusive.is_empty() && r.certified
}

fn crossovers(e: &PrimeEngine) -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, want) in [("moi_1", 43.1), ("moi_2", 24.4), ("moi_3", 23.8), ("moi_4", 24.2)] {
        let scan = verify(e, &ClaimSpec::new(id, 2.0, 1e3).unwrap()).unwrap();
        let c = crossover_from(&scan, 0.1);
        let got = c.rounded_threshold.unwrap_or(f64::NAN);
        let above = verify(e, &ClaimSpec::new(id, got.max(2.0), 1e6).unwrap()).unwrap();
        let this = c.status == CrossoverStatus::FailureFound && (got - want).abs() < 1e-9 && clean(&above);
        ok &= this;
        parts.push(format!("{id} {got}{}", if this { "" } else { " (!)" }));
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(ok && secs < 30.0, format!("{}; {secs:.1} s", parts.join(", ")))
}

fn theorem2(e: &PrimeEngine) -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, from) in [("thm2_psi", 101.0), ("thm2_theta", 2657.0)] {
        let r = verify(e, &ClaimSpec::new(id, 2.0, DESK).unwrap()).unwrap();
        let last = r.last_failure.unwrap_or(f64::NAN);
        let certified = r.verified_range.is_some_and(|v| v[0] <= from && v[1] == DESK) && r.inconclusive.is_empty();
        ok &= certified && last < from;
        parts.push(format!("{id} last failure {last}, certified from {:?}", r.verified_range.map(|v| v[0])));
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(ok && secs < 300.0, format!("{}; {secs:.1} s", parts.join("; ")))
}

/// Returns the outcome and whether it matches the documented defect.
fn buthe(e: &PrimeEngine) -> (Outcome, bool) {
    let psi = verify(e, &ClaimSpec::new("buthe_psi", 11.0, DESK).unwrap()).unwrap();
    let theta = verify(e, &ClaimSpec::new("buthe_theta", 1423.0, DESK).unwrap()).unwrap();
    let theta_from_1427 = verify(e, &ClaimSpec::new("buthe_theta", 1427.0, DESK).unwrap()).unwrap();
    let pass = clean(&psi) && clean(&theta);
    let known = clean(&psi)
        && clean(&theta_from_1427)
        && theta.violations.len() == 1
        && theta.violations[0].left_limit
        && theta.violations[0].x == 1427.0
        && theta.inconclusive.is_empty();
    let detail = match theta.violations.first() {
        None => format!("psi {} violations, theta {} violations", psi.violations.len(), 0),
        Some(v) => format!(
            "psi certified on [11, 1e8]; theta fails just below {} (|theta - x| = {:.4} > 1.95 sqrt x = {:.4}), \
             certified on [1427, 1e8]",
            v.x, v.lhs.lo, v.rhs.hi
        ),
    };
    (outcome(pass, detail), known)
}

fn theorem1(e: &PrimeEngine) -> Outcome {
    let r = verify(e, &ClaimSpec::new("thm1", 11.0, DESK).unwrap()).unwrap();
    let m = r.margins.map(|m| m.relative).unwrap_or(f64::NAN);
    outcome(clean(&r), format!("{} gaps, smallest relative margin {m:.3}", r.points_checked))
}

fn zero_properties(z: &ZeroTable) -> Outcome {
    let nt = z.nt_envelope_check();
    let om = z.omega1_check();
    let limited = om.status == OmegaStatus::DataLimited;
    let pass = z.count() >= 100_000 && nt.passed() && om.status != OmegaStatus::Failed;
    outcome(
        pass,
        format!(
            "{} zeros to {:.2}: {} N(T) violations; 2 sum 1/gamma = {:.10} {} {}",
            z.count(),
            z.max_height(),
            nt.envelope_violations.len() + nt.crude_violations.len(),
            om.sum.value,
            if limited { "<" } else { "vs" },
            om.omega1,
        ) + if limited { " (data-limited)" } else { "" },
    )
}

fn explicit_residuals(e: &PrimeEngine, z: &ZeroTable) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut xs = vec![1000.5];
    while xs.len() < 11 {
        let x: f64 = rng.gen_range(100.0..5000.0);
        if x.fract() != 0.0 {
            xs.push(x);
        }
    }
    let mut ok = true;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in &xs {
        let ex = z.explicit_psi1(x, z.max_height()).unwrap();
        let p = psi1_at(e, x).unwrap();
        let r = p.psi1 - ex.value;
        let slack = ex.truncation_tail + ex.err_bound + p.err_bound;
        ok &= r.abs() <= slack + 2.069 && r > 1.545 - slack && r < 2.069 + slack;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    outcome(ok, format!("{} points, residuals in [{lo:.4}, {hi:.4}]", xs.len()))
}

fn piecewise() -> Outcome {
    let rows = verify_piecewise_table();
    let main = rows.iter().filter(|r| !r.theta_extension).count();
    let ok = main == 7
        && rows.iter().any(|r| r.theta_extension)
        && rows.iter().all(|r| r.pass && r.tight && r.computed_sup.hi <= r.claimed_coeff);
    let worst = rows.iter().map(|r| r.claimed_coeff - r.computed_sup.hi).fold(f64::INFINITY, f64::min);
    outcome(ok, format!("{main} rows plus theta row, smallest slack {worst:.2e}"))
}

fn audits() -> Outcome {
    let checks = audit_constants();
    let find = |name: &str| -> &AuditCheck { checks.iter().find(|c| c.name == name).expect(name) };
    let within = |name: &str, lo: f64, hi: f64| {
        let v = find(name).value.expect(name);
        v.lo >= lo && v.hi <= hi
    };
    let failed: Vec<_> = checks.iter().filter(|c| c.required && !c.pass).map(|c| c.name).collect();
    let ok = failed.is_empty()
        && within("thm1_to_thm2_sign_change", 30369.0, 30370.0)
        && within("theta_threshold_sign_change", 30456.0, 30457.0)
        && within("loglog_coeff_turning_point", 2.002e38, 2.004e38)
        && find("goldston_consolidation").pass
        && find("moi1_chain_constants").pass;
    let advisory_failed: Vec<_> = checks.iter().filter(|c| !c.required && !c.pass).map(|c| c.name).collect();
    outcome(
        ok,
        format!(
            "{} required checks, failed {:?}; advisory notes {:?}",
            checks.iter().filter(|c| c.required).count(),
            failed,
            advisory_failed
        ),
    )
}

fn oracle_equivalence(e: &PrimeEngine) -> Outcome {
    let primes = support::primes_upto(100_000);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(2.0..=1e5);
        let s = state_at(e, x).unwrap();
        let n = support::naive_sums(&primes, x);
        let close = |a: f64, ea: f64, b: support::Naive| (a - b.value).abs() <= ea + b.err;
        let all = s.pi == n.pi
            && close(s.psi.value(), s.psi.err_bound(), n.psi)
            && close(s.theta.value(), s.theta.err_bound(), n.theta)
            && close(s.logp_over_p.value(), s.logp_over_p.err_bound(), n.logp_over_p)
            && close(s.recip.value(), s.recip.err_bound(), n.recip)
            && close(s.log_prod.value(), s.log_prod.err_bound(), n.log_prod);
        bad += usize::from(!all);
    }
    let mut worst: f64 = 0.0;
    for x in [1e3, 1e6, 1e12] {
        let l = f64::ln(x);
        for j in 0..=2u32 {
            let closed = log_power_tail(j, l) / x.sqrt();
            let quad = support::tail_integral(&|t: f64| t.ln().powi(j as i32) * t.powf(-1.5), x, 1e-12);
            worst = worst.max((closed / quad - 1.0).abs());
        }
        let closed = corollary_tails(&LogPoint::new(l)).moi1_tail / x.sqrt();
        let e8 = 8.0 * std::f64::consts::PI;
        let quad = support::tail_integral(&|t: f64| t.ln() * (t.ln() - 3.77847) / (e8 * t.powf(1.5)), x, 1e-12);
        worst = worst.max((closed / quad - 1.0).abs());
    }
    outcome(bad == 0 && worst <= 1e-10, format!("{bad} grid mismatches; tail integrals within {worst:.1e} relative"))
}

fn w_rho_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..10_000 {
        let gamma = 10f64.powf(rng.gen_range(14f64.log10()..7.0));
        let u = 10f64.powf(rng.gen_range(-14.0..-7.0));
        bad += usize::from(!w_rho_bound_check(gamma, u));
    }
    outcome(bad == 0, format!("{bad} counterexamples in 10^4 samples"))
}

fn main() {
    let e = PrimeEngine::new(EngineConfig { max: DESK as u64, ..EngineConfig::default() }).unwrap();
    let z = ZeroTable::ingest(support::zeros_path(), None).unwrap();
    let (c3, c3_known) = buthe(&e);
    let results = [
        ("crossover reproduction", crossovers(&e), true),
        ("Theorem 2 desk verification", theorem2(&e), true),
        ("Buthe envelopes", c3, false),
        ("Theorem 1 desk verification", theorem1(&e), true),
        ("zero-table properties", zero_properties(&z), true),
        ("explicit-formula residual", explicit_residuals(&e, &z), true),
        ("piecewise table", piecewise(), true),
        ("constant audits", audits(), true),
        ("oracle equivalence", oracle_equivalence(&e), true),
        ("w_rho property sweep", w_rho_sweep(), true),
    ];
    let mut unexpected = 0;
    for (i, (name, o, expect_pass)) in results.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let as_expected = o.pass == *expect_pass && (o.pass || c3_known);
        let note = match (as_expected, o.pass) {
            (false, _) => " [unexpected]",
            (true, false) => " [known: printed threshold too low]",
            (true, true) => "",
        };
        unexpected += usize::from(!as_expected);
        println!("criterion {:>2} {verdict} {name}: {}{note}", i + 1, o.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from the expected outcome");
        std::process::exit(1);
    }
}
