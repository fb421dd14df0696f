//! Certified verification of the bound claims.
//!
//! A claim compares a step function (through its deviation, e.g.
//! `|psi(x) - x|`) with a smooth bound. Between consecutive jumps the step
//! function is constant, so every gap `[a, b]` is checked as a whole: the
//! deviation and the bound are evaluated over the interval `[a, b]`, which
//! encloses their ranges on the gap. At `b` the left limit is used. A gap
//! that does not separate is bisected; pieces that still do not separate
//! are re-run in double-double interval arithmetic, and anything left after
//! that is reported as inconclusive.

use crate::bounds::{
    constant_block, constants as k, corollary_tails, dropped_block, goldston_chain, loglog_coefficient_slope,
    log_1e19, lookup, smoothed_psi_bound, suffcond_coefficient, suffcond_margin, t0, BoundKind, BoundSpec,
    IntervalValue, LogPoint, TableRow, PIECEWISE_ROWS, THETA_EXTENSION_ROW,
};
use crate::chebyshev::{enclose, enclose_dd, euler_gamma_dd, mertens_constants, scan_gaps, Gap, GapVisitor, StepState};
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, Dd, DdInterval, Interval, Real};
use crate::sieve::PrimeEngine;
use serde::Serialize;
use std::time::Instant;

/// Default upper end of a desk verification.
pub const DEFAULT_CHECK_HI: f64 = 1e8;

/// Evaluations allowed per gap before the rest is declared inconclusive.
const EVAL_CAP: u64 = 10_000;

/// Pieces narrower than this (relative) are not split further.
const REL_TOL: f64 = 1e-9;

/// A claim restricted to a check range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClaimSpec {
    pub bound_id: &'static str,
    pub lhs_kind: BoundKind,
    pub claimed_from: f64,
    pub claimed_to: Option<f64>,
    pub check_range: [f64; 2],
}

impl ClaimSpec {
    pub fn new(bound_id: &str, lo: f64, hi: f64) -> Result<Self> {
        let spec = lookup(bound_id).ok_or_else(|| Error::UnknownBound(bound_id.to_string()))?;
        if !spec.is_claim() {
            return Err(Error::InvalidArgument(format!("`{bound_id}` is an auxiliary function, not a claim")));
        }
        if !(lo >= 2.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!("check range [{lo}, {hi}] needs 2 <= lo <= hi")));
        }
        Ok(ClaimSpec {
            bound_id: spec.id,
            lhs_kind: spec.kind,
            claimed_from: spec.validity_from,
            claimed_to: spec.validity_to,
            check_range: [lo, hi],
        })
    }

    pub fn spec(&self) -> BoundSpec {
        lookup(self.bound_id).expect("claim built from the registry")
    }

    fn needs_constants(&self) -> bool {
        matches!(
            self.lhs_kind,
            BoundKind::MertensLogp | BoundKind::MertensRecip | BoundKind::MertensProd | BoundKind::MertensProdInv
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    /// A point where the claim certainly fails; with `left_limit` the
    /// failure is for `x` just below this point.
    pub x: f64,
    pub left_limit: bool,
    /// When set, the failing region ends somewhere in `[x, crossing_hi]`.
    pub crossing_hi: Option<f64>,
    pub lhs: IntervalValue,
    pub rhs: IntervalValue,
}

impl Violation {
    /// Supremum bound of the failing stretch this violation belongs to.
    fn reach(&self) -> f64 {
        self.crossing_hi.unwrap_or(self.x)
    }

    /// The failing point itself (strictly below `x` for a left limit).
    fn failing_x(&self) -> f64 {
        if self.left_limit {
            self.x.next_down()
        } else {
            self.x
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inconclusive {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    pub x: f64,
    /// certified lower bound of `rhs - lhs` over a gap piece
    pub absolute: f64,
    /// `absolute / rhs`
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: ClaimSpec,
    pub bound_id: &'static str,
    /// Range on which the claim is certified, if any.
    pub verified_range: Option<[f64; 2]>,
    pub points_checked: u64,
    pub violations: Vec<Violation>,
    pub inconclusive: Vec<Inconclusive>,
    pub last_failure: Option<f64>,
    pub crossover: Option<CrossoverResult>,
    pub margins: Option<Margin>,
    pub certified: bool,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per violation.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for v in &self.violations {
            w.serialize(CsvRow {
                bound_id: self.bound_id,
                x: v.x,
                left_limit: v.left_limit,
                crossing_hi: v.crossing_hi,
                lhs_lo: v.lhs.lo,
                lhs_hi: v.lhs.hi,
                rhs_lo: v.rhs.lo,
                rhs_hi: v.rhs.hi,
            })
            .expect("csv row");
        }
        if self.violations.is_empty() {
            w.write_record(["bound_id", "x", "left_limit", "crossing_hi", "lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi"])
                .expect("csv header");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }

    /// 0 certified, 1 violations, 3 inconclusive only.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            1
        } else if !self.inconclusive.is_empty() {
            3
        } else {
            0
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    bound_id: &'static str,
    x: f64,
    left_limit: bool,
    crossing_hi: Option<f64>,
    lhs_lo: f64,
    lhs_hi: f64,
    rhs_lo: f64,
    rhs_hi: f64,
}

/// Certified Mertens constants shared by all claims of a scan.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceConstants {
    pub e: Interval,
    pub b: Interval,
    pub c: Interval,
    c_dd: DdInterval,
}

impl ReferenceConstants {
    /// Enclosures from primes up to `min(10^7, engine maximum)`.
    pub fn compute(engine: &PrimeEngine) -> Result<Self> {
        let x = (engine.config().max as f64).min(1e7);
        let m = mertens_constants(engine, x)?;
        Ok(ReferenceConstants { e: m.e, b: m.b, c: m.c, c_dd: euler_gamma_dd() })
    }
}

/// Interval types the checker runs in.
trait Encl: Real {
    fn sum(s: &CompensatedSum) -> Self;
    fn span(a: f64, b: f64) -> Self;
    fn widen(v: Interval) -> Self;
    fn gamma(r: &ReferenceConstants) -> Self;
}

impl Encl for Interval {
    fn sum(s: &CompensatedSum) -> Self {
        enclose(s)
    }
    fn span(a: f64, b: f64) -> Self {
        Interval::new(a, b)
    }
    fn widen(v: Interval) -> Self {
        v
    }
    fn gamma(r: &ReferenceConstants) -> Self {
        r.c
    }
}

impl Encl for DdInterval {
    fn sum(s: &CompensatedSum) -> Self {
        enclose_dd(s)
    }
    fn span(a: f64, b: f64) -> Self {
        DdInterval { lo: Dd::new(a), hi: Dd::new(b) }
    }
    fn widen(v: Interval) -> Self {
        DdInterval { lo: Dd::new(v.lo), hi: Dd::new(v.hi) }
    }
    fn gamma(r: &ReferenceConstants) -> Self {
        r.c_dd
    }
}

struct Checker {
    claim: ClaimSpec,
    spec: BoundSpec,
    refs: Option<ReferenceConstants>,
}

enum Outcome {
    Violation(Violation),
    Clear,
}

#[derive(Debug, Default)]
struct ClaimAcc {
    points: u64,
    violations: Vec<Violation>,
    inconclusive: Vec<Inconclusive>,
    margin: Option<Margin>,
}

impl ClaimAcc {
    fn note_margin(&mut self, m: Margin) {
        if self.margin.map_or(true, |old| m.relative < old.relative) {
            self.margin = Some(m);
        }
    }

    fn append(&mut self, later: ClaimAcc) {
        self.points += later.points;
        self.violations.extend(later.violations);
        self.inconclusive.extend(later.inconclusive);
        if let Some(m) = later.margin {
            self.note_margin(m);
        }
    }
}

impl Checker {
    fn lhs<T: Encl>(&self, s: &StepState, x: T) -> T {
        let one = T::exact(1.0);
        match self.claim.lhs_kind {
            BoundKind::PsiDeviation => (T::sum(&s.psi) - x).abs(),
            BoundKind::ThetaDeviation => (T::sum(&s.theta) - x).abs(),
            BoundKind::MertensLogp => {
                let e = T::widen(self.refs.expect("constants").e);
                (T::sum(&s.logp_over_p) - x.ln() - e).abs()
            }
            BoundKind::MertensRecip => {
                let b = T::widen(self.refs.expect("constants").b);
                (T::sum(&s.recip) - x.ln().ln() - b).abs()
            }
            BoundKind::MertensProd => {
                let c = T::gamma(self.refs.as_ref().expect("constants"));
                (c.exp() * x.ln() * T::sum(&s.log_prod).exp() - one).abs()
            }
            BoundKind::MertensProdInv => {
                let c = T::gamma(self.refs.as_ref().expect("constants"));
                ((-c).exp() / x.ln() * (-T::sum(&s.log_prod)).exp() - one).abs()
            }
            BoundKind::Auxiliary => unreachable!("auxiliary bounds are not claims"),
        }
    }

    /// `(rhs - lhs, lhs, rhs)` over `x`.
    fn margin<T: Encl>(&self, s: &StepState, x: T) -> (T, T, T) {
        let l = self.lhs(s, x);
        let r = self.spec.at_x(x);
        (r - l, l, r)
    }

    fn violation<T: Encl>(&self, s: &StepState, x: f64, left_limit: bool, crossing_hi: Option<f64>) -> Violation {
        let (_, l, r) = self.margin(s, T::exact(x));
        Violation { x, left_limit, crossing_hi, lhs: (&l).into(), rhs: (&r).into() }
    }

    /// Resolve `[a, b]`, rightmost piece first. Stops at the first (rightmost)
    /// certified failure.
    fn resolve<T: Encl>(&self, s: &StepState, a: f64, b: f64, gap_b: f64, acc: &mut ClaimAcc) -> (Outcome, Vec<(f64, f64)>) {
        let mut open = Vec::new();
        let mut stack = vec![(a, b)];
        let mut evals = 0u64;
        while let Some((c, d)) = stack.pop() {
            evals += 1;
            let (m, _, r) = self.margin(s, T::span(c, d));
            if m.lower() > 0.0 {
                let rel = m.lower() / r.upper();
                acc.note_margin(Margin { x: c, absolute: m.lower(), relative: rel });
                continue;
            }
            evals += 1;
            let (md, _, _) = self.margin(s, T::exact(d));
            if md.upper() < 0.0 {
                let left = d == gap_b && a < gap_b;
                acc.points += evals;
                return (Outcome::Violation(self.violation::<T>(s, d, left, None)), open);
            }
            let mid = 0.5 * c + 0.5 * d;
            let small = d - c <= REL_TOL * d.abs().max(1.0) || mid <= c || mid >= d;
            if small || evals >= EVAL_CAP {
                evals += 1;
                let (mc, _, _) = self.margin(s, T::exact(c));
                if mc.upper() < 0.0 {
                    acc.points += evals;
                    return (Outcome::Violation(self.violation::<T>(s, c, false, Some(d))), open);
                }
                open.push((c, d));
                continue;
            }
            stack.push((c, mid));
            stack.push((mid, d));
        }
        acc.points += evals;
        (Outcome::Clear, open)
    }

    fn check_gap(&self, gap: Gap<'_>, acc: &mut ClaimAcc) {
        let [lo, hi] = self.claim.check_range;
        let a = gap.a.max(lo);
        let b = gap.b.min(hi);
        // a lone left limit at the start of the range belongs to the previous step
        if a > b || (a == b && gap.a < gap.b && a == gap.b) {
            return;
        }
        let s = gap.state;
        let mut found = Vec::new();
        let (out, open) = self.resolve::<Interval>(s, a, b, gap.b, acc);
        if let Outcome::Violation(v) = out {
            found.push(v);
        }
        // open pieces lie to the right of any violation just found
        for (c, d) in open.into_iter().rev() {
            let (out2, still) = self.resolve::<DdInterval>(s, c, d, gap.b, acc);
            if let Outcome::Violation(v) = out2 {
                found.push(v);
            }
            acc.inconclusive.extend(still.into_iter().rev().map(|(lo, hi)| Inconclusive { lo, hi }));
        }
        found.sort_by(|p, q| p.x.total_cmp(&q.x));
        if let Some(v) = found.pop() {
            acc.violations.push(v);
        }
    }
}

struct ScanVisitor {
    checkers: Vec<Checker>,
}

impl GapVisitor for ScanVisitor {
    type Acc = Vec<ClaimAcc>;

    fn empty(&self) -> Self::Acc {
        self.checkers.iter().map(|_| ClaimAcc::default()).collect()
    }

    fn visit(&self, gap: Gap<'_>, acc: &mut Self::Acc) {
        for (c, a) in self.checkers.iter().zip(acc.iter_mut()) {
            c.check_gap(gap, a);
        }
    }

    fn merge(&self, into: &mut Self::Acc, later: Self::Acc) {
        for (a, b) in into.iter_mut().zip(later) {
            a.append(b);
        }
    }
}

/// Check several claims in one pass over the prime powers.
pub fn scan_claims(engine: &PrimeEngine, claims: &[ClaimSpec]) -> Result<Vec<VerificationReport>> {
    if claims.is_empty() {
        return Ok(vec![]);
    }
    let start = Instant::now();
    let refs = if claims.iter().any(ClaimSpec::needs_constants) {
        Some(ReferenceConstants::compute(engine)?)
    } else {
        None
    };
    let checkers: Vec<Checker> =
        claims.iter().map(|c| Checker { claim: *c, spec: c.spec(), refs }).collect();
    let lo = claims.iter().map(|c| c.check_range[0]).fold(f64::INFINITY, f64::min);
    let hi = claims.iter().map(|c| c.check_range[1]).fold(f64::NEG_INFINITY, f64::max);
    let visitor = ScanVisitor { checkers };
    let accs = scan_gaps(engine, lo, hi, &visitor)?;
    let ms = start.elapsed().as_millis() as u64;
    Ok(claims.iter().zip(accs).map(|(c, a)| build_report(*c, a, ms)).collect())
}

fn build_report(claim: ClaimSpec, acc: ClaimAcc, wall_time_ms: u64) -> VerificationReport {
    let [lo, hi] = claim.check_range;
    let last_failure = acc.violations.iter().map(Violation::failing_x).reduce(f64::max);
    let problem_end = acc
        .violations
        .iter()
        .map(Violation::reach)
        .chain(acc.inconclusive.iter().map(|i| i.hi))
        .reduce(f64::max);
    let verified_range = match problem_end {
        None => Some([lo, hi]),
        Some(e) if e < hi => Some([e, hi]),
        Some(_) => None,
    };
    let certified = acc.violations.is_empty() && acc.inconclusive.is_empty();
    VerificationReport {
        claim,
        bound_id: claim.bound_id,
        verified_range,
        points_checked: acc.points,
        violations: acc.violations,
        inconclusive: acc.inconclusive,
        last_failure,
        crossover: None,
        margins: acc.margin,
        certified,
        wall_time_ms,
    }
}

/// Verify one claim over its check range.
pub fn verify(engine: &PrimeEngine, claim: &ClaimSpec) -> Result<VerificationReport> {
    Ok(scan_claims(engine, std::slice::from_ref(claim))?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverStatus {
    FailureFound,
    NoFailureInRange,
    /// inconclusive points remain above the last failure
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverResult {
    pub bound_id: &'static str,
    pub status: CrossoverStatus,
    pub search_range: [f64; 2],
    /// Largest certified failing point.
    pub last_failure_x: Option<f64>,
    /// The failing stretch ends at or before this point.
    pub failure_sup: Option<f64>,
    /// `failure_sup` rounded up to a multiple of `resolution`.
    pub rounded_threshold: Option<f64>,
    pub resolution: f64,
}

/// Smallest multiple of `res` that is `>= v`.
pub fn round_up_to(v: f64, res: f64) -> f64 {
    let mut n = (v / res).ceil();
    while (n - 1.0) * res >= v {
        n -= 1.0;
    }
    while n * res < v {
        n += 1.0;
    }
    // print-friendly: n * res with the decimal digits of res
    let digits = (-res.log10()).ceil().max(0.0) as usize;
    format!("{:.*}", digits, n * res).parse::<f64>().map(|r| if r >= v { r } else { n * res }).unwrap_or(n * res)
}

/// Locate the last failure of a claim in `[lo, hi]`.
pub fn find_crossover(engine: &PrimeEngine, bound_id: &str, lo: f64, hi: f64, resolution: f64) -> Result<CrossoverResult> {
    if !(resolution >= 1e-3) {
        return Err(Error::InvalidArgument(format!("resolution must be at least 1e-3, got {resolution}")));
    }
    let claim = ClaimSpec::new(bound_id, lo, hi)?;
    let rep = verify(engine, &claim)?;
    Ok(crossover_from(&rep, resolution))
}

/// Crossover summary of a finished report.
pub fn crossover_from(rep: &VerificationReport, resolution: f64) -> CrossoverResult {
    let last = rep.violations.iter().max_by(|p, q| p.reach().total_cmp(&q.reach()));
    let incon_end = rep.inconclusive.iter().map(|i| i.hi).reduce(f64::max);
    let (status, sup) = match (last, incon_end) {
        (None, None) => (CrossoverStatus::NoFailureInRange, None),
        // undecided slivers past the last failure only matter if they move the rounded threshold
        (Some(v), Some(e)) if e > v.reach() => {
            if round_up_to(e, resolution) == round_up_to(v.reach(), resolution) {
                (CrossoverStatus::FailureFound, Some(e))
            } else {
                (CrossoverStatus::Inconclusive, Some(v.reach()))
            }
        }
        (None, Some(_)) => (CrossoverStatus::Inconclusive, None),
        (Some(v), _) => (CrossoverStatus::FailureFound, Some(v.reach())),
    };
    CrossoverResult {
        bound_id: rep.bound_id,
        status,
        search_range: rep.claim.check_range,
        last_failure_x: last.map(Violation::failing_x),
        failure_sup: sup,
        rounded_threshold: sup.map(|s| round_up_to(s, resolution)),
        resolution,
    }
}

/// One row of the table of sufficient-condition coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseTableRow {
    pub l_from: f64,
    pub l_to: f64,
    pub claimed_coeff: f64,
    pub computed_sup: IntervalValue,
    pub monotone: bool,
    pub pass: bool,
    /// `computed_sup.hi >= claimed_coeff - 10^-3`
    pub tight: bool,
    pub theta_extension: bool,
    pub diagnostic: Option<String>,
}

const MONOTONE_GRID: usize = 2000;

fn table_row(row: &TableRow, theta_extension: bool) -> PiecewiseTableRow {
    let from: Interval = match row.l_from {
        Some(s) => Interval::dec(s),
        None => log_1e19(),
    };
    let to = Interval::dec(row.l_to);
    let coeff = Interval::dec(row.coeff);
    let c = |l: Interval| suffcond_coefficient(&LogPoint::new(l));
    let mut monotone = true;
    let mut diagnostic = None;
    let mut prev = c(from);
    for i in 1..=MONOTONE_GRID {
        let l = if i == MONOTONE_GRID {
            to
        } else {
            Interval::point(from.lo + (to.hi - from.lo) * i as f64 / MONOTONE_GRID as f64)
        };
        let cur = c(l);
        if !(cur.lo > prev.hi) {
            monotone = false;
            diagnostic = Some(format!("coefficient not increasing near log x = {}", l.mid()));
            break;
        }
        prev = cur;
    }
    let sup = c(to);
    let pass = monotone && sup.hi <= coeff.lo;
    PiecewiseTableRow {
        l_from: from.mid(),
        l_to: to.mid(),
        claimed_coeff: coeff.mid(),
        computed_sup: sup.into(),
        monotone,
        pass,
        tight: sup.hi >= coeff.lo - 1e-3,
        theta_extension,
        diagnostic,
    }
}

/// Reproduce the seven printed rows and the theta extension row.
pub fn verify_piecewise_table() -> Vec<PiecewiseTableRow> {
    let mut rows: Vec<_> = PIECEWISE_ROWS.iter().map(|r| table_row(r, false)).collect();
    rows.push(table_row(&THETA_EXTENSION_ROW, true));
    rows
}

/// A named scalar check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    /// `false` for advisory checks that report on a printed value rather
    /// than on an inequality the argument needs.
    pub required: bool,
    pub pass: bool,
    pub value: Option<IntervalValue>,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, value: Option<Interval>, detail: String) -> AuditCheck {
    AuditCheck { name, required: true, pass, value: value.map(Into::into), detail }
}

fn advisory(name: &'static str, pass: bool, value: Option<Interval>, detail: String) -> AuditCheck {
    AuditCheck { name, required: false, pass, value: value.map(Into::into), detail }
}

/// Certified sign change of `f` on `[lo, hi]`, located by bisection.
/// Returns the bracket `[a, b]` with `f(a) < 0 < f(b)` (or reversed).
pub fn locate_sign_change(f: impl Fn(f64) -> Interval, lo: f64, hi: f64, tol: f64) -> Option<(f64, f64)> {
    let fl = f(lo);
    let fh = f(hi);
    let neg_lo = fl.hi < 0.0 && fh.lo > 0.0;
    let pos_lo = fl.lo > 0.0 && fh.hi < 0.0;
    if !(neg_lo || pos_lo) {
        return None;
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        let below = if neg_lo { fm.hi < 0.0 } else { fm.lo > 0.0 };
        let above = if neg_lo { fm.lo > 0.0 } else { fm.hi < 0.0 };
        if below {
            a = m;
        } else if above {
            b = m;
        } else {
            break;
        }
    }
    Some((a, b))
}

/// `1/(2 pi) + 1.465/L - 1.2325/log L - 1/(8 pi)`: Theorem 1 implies the
/// Theorem 2 bound where this is non-negative.
pub fn thm1_to_thm2_gap(l: Interval) -> Interval {
    let one = Interval::ONE;
    one / Interval::two_pi() + k::CONSOLIDATION_C.real::<Interval>() / l
        - k::THM1_C.real::<Interval>() / l.ln()
        - one / (Interval::point(8.0) * Interval::pi())
}

/// The same with the `psi - theta` terms subtracted as printed:
/// `- alpha1/L - alpha2/(x^(1/6) L)`.
pub fn thm1_to_thm2_theta_gap(l: Interval) -> Interval {
    let a1: Interval = k::ALPHA1.real();
    let a2: Interval = k::ALPHA2.real();
    thm1_to_thm2_gap(l) - a1 / l - a2 * (-l / Interval::point(6.0)).exp() / l
}

/// The theta condition divided through by `log L` as well.
fn thm1_to_thm2_theta_gap_exact(l: Interval) -> Interval {
    let a1: Interval = k::ALPHA1.real();
    let a2: Interval = k::ALPHA2.real();
    thm1_to_thm2_gap(l) - (a1 + a2 * (-l / Interval::point(6.0)).exp()) / (l * l.ln())
}

pub fn audit_constants() -> Vec<AuditCheck> {
    let mut out = Vec::new();
    let n = Interval::point;
    let l19: Interval = log_1e19();
    let p19 = LogPoint::new(l19);

    let block: Interval = constant_block();
    out.push(check(
        "smoothed_constant_block_negative",
        block.hi < 0.0,
        Some(block),
        format!("omega1 + (8 log H1 + 4)/H1 - (log(H1/2pi))^2/(2pi) = {block}"),
    ));

    // the coefficient decreases in x and y; grid over both as a check
    let cmax: Interval = k::CONSOLIDATION_C.real();
    let mut worst = goldston_chain(&p19, n(1e7)).consolidation_coeff;
    let mut ok = worst.hi <= cmax.lo;
    for i in 0..=60 {
        let y = 1e7 * 10f64.powf(i as f64 * 0.5);
        for &lx in &[l19.lo, 60.0, 100.0, 1000.0, 30000.0] {
            let x_at = LogPoint::new(n(lx).max(l19));
            let v = goldston_chain(&x_at, n(y)).consolidation_coeff;
            ok &= v.hi <= cmax.lo && v.hi <= worst.hi;
            if v.hi > worst.hi {
                worst = v;
            }
        }
    }
    out.push(check(
        "goldston_consolidation",
        ok,
        Some(worst),
        format!("largest consolidation coefficient {worst} (at y = 10^7, x = 10^19) against 1.465"),
    ));

    let g = goldston_chain(&p19, n(1e7));
    out.push(check(
        "zero_sum_square_at_1e19",
        g.zero_sum_square.hi < g.zero_sum_square_bound.lo,
        Some(g.zero_sum_square_bound - g.zero_sum_square),
        format!("(log(sqrt x/(2 pi log x)))^2 = {} < log x (log x/4 - log log x) = {}", g.zero_sum_square, g.zero_sum_square_bound),
    ));

    let slope = |x: f64| loglog_coefficient_slope(&LogPoint::from_x(n(x)));
    let turn = locate_sign_change(slope, 2.002e38, 2.004e38, 1e28);
    let turning: f64 = k::TURNING_X.value();
    out.push(check(
        "loglog_coeff_turning_point",
        turn.is_some(),
        turn.map(|(a, b)| Interval::new(a, b)),
        match turn {
            Some((a, b)) => format!("slope of the log log x coefficient changes sign in [{a:e}, {b:e}]"),
            None => "no certified sign change in (2.002e38, 2.004e38)".into(),
        },
    ));
    if let Some((a, b)) = turn {
        out.push(advisory(
            "loglog_coeff_turning_point_printed",
            (turning - 0.5 * (a + b)).abs() <= 5e32,
            Some(Interval::new(a, b)),
            format!("printed 2.00299e38, located {:.6e}", 0.5 * (a + b)),
        ));
    }

    let r1 = locate_sign_change(|l| thm1_to_thm2_gap(n(l)), 30369.0, 30370.0, 1e-7);
    out.push(check(
        "thm1_to_thm2_sign_change",
        r1.is_some(),
        r1.map(|(a, b)| Interval::new(a, b)),
        match r1 {
            Some((a, b)) => format!("root in log x: [{a:.7}, {b:.7}]"),
            None => "no certified sign change in [30369, 30370]".into(),
        },
    ));
    let printed = Interval::dec(k::THM1_TO_THM2_L.decimal);
    let at = thm1_to_thm2_gap(printed);
    out.push(advisory(
        "thm1_to_thm2_printed_threshold",
        at.lo > 0.0,
        Some(at),
        format!("gap at log x = 30369.582 is {at}; the gap increases in log x beyond it"),
    ));

    let r2 = locate_sign_change(|l| thm1_to_thm2_theta_gap(n(l)), 30456.0, 30457.0, 1e-7);
    out.push(check(
        "theta_threshold_sign_change",
        r2.is_some(),
        r2.map(|(a, b)| Interval::new(a, b)),
        match r2 {
            Some((a, b)) => format!("root in log x: [{a:.7}, {b:.7}]"),
            None => "no certified sign change in [30456, 30457]".into(),
        },
    ));
    let tp = Interval::dec(k::THETA_THRESHOLD_L.decimal);
    let at = thm1_to_thm2_theta_gap(tp);
    out.push(advisory(
        "theta_threshold_printed",
        at.lo >= 0.0,
        Some(at),
        format!("gap with -alpha1/L - alpha2/(x^(1/6) L) at log x = 30456.256 is {at}"),
    ));
    let at_exact = thm1_to_thm2_theta_gap_exact(tp);
    out.push(advisory(
        "theta_threshold_printed_divided",
        at_exact.lo > 0.0,
        Some(at_exact),
        format!("with the alpha terms divided by L log L instead, the gap at 30456.256 is {at_exact}"),
    ));

    // c(L) L <= L - log L - 4 on a 0.1 grid, then the theta extension with the constant coefficient
    let end = Interval::dec(k::THM1_TO_THM2_L.decimal);
    let mut worst = Interval::point(f64::INFINITY);
    let mut ok = true;
    let mut l = l19.hi;
    loop {
        let li = if l >= end.lo { end } else { n(l) };
        let m = suffcond_margin(&LogPoint::new(li), None);
        ok &= m.lo >= 0.0;
        if m.lo < worst.lo {
            worst = m;
        }
        if l >= end.lo {
            break;
        }
        l += 0.1;
    }
    let m0 = suffcond_margin(&LogPoint::new(l19), None);
    ok &= m0.lo >= 0.0;
    out.push(check(
        "suffcond_psi_branch",
        ok,
        Some(worst),
        "c(L) L <= L - log L - 4 on log 10^19 <= L <= 30369.582 (0.1 grid and endpoints); smallest margin".into(),
    ));
    let coeff = Interval::dec(THETA_EXTENSION_ROW.coeff);
    let tend = Interval::dec(THETA_EXTENSION_ROW.l_to);
    let mut ok = true;
    let mut worst = Interval::point(f64::INFINITY);
    let mut l = end.lo;
    loop {
        let li = if l >= tend.lo { tend } else { n(l) };
        let m = suffcond_margin(&LogPoint::new(li), Some(coeff));
        ok &= m.lo >= 0.0;
        if m.lo < worst.lo {
            worst = m;
        }
        if l >= tend.lo {
            break;
        }
        l += 0.1;
    }
    out.push(check(
        "suffcond_theta_branch",
        ok,
        Some(worst),
        "0.99865 L <= L - log L - 4 on 30369.582 <= L <= 30456.276; smallest margin".into(),
    ));

    let mut worst = dropped_block(&p19);
    for &l in &[60.0, 200.0, 1000.0, 10000.0, 30456.276] {
        let v = dropped_block(&LogPoint::new(n(l)));
        if v.hi > worst.hi {
            worst = v;
        }
    }
    out.push(check(
        "smoothed_dropped_block_negative",
        worst.hi < 0.0,
        Some(worst),
        "terms dropped in passing to the sufficient condition are negative".into(),
    ));

    let tv = t0(&p19).t0.expect("T0 at 10^19 is representable");
    let t1: Interval = k::T1_MIN.real();
    out.push(check("t0_at_1e19", tv.lo > t1.hi, Some(tv), format!("T0(10^19) = {tv} > 454161776")));

    let sm = smoothed_psi_bound(&p19);
    let thm2 = lookup("thm2_psi").expect("registry").normalized(&p19) * p19.inv_sqrt_x();
    out.push(check(
        "smoothed_below_thm2_at_1e19",
        sm.hi < thm2.lo,
        Some(sm),
        format!("smoothed bound {sm} against Theorem 2 / x = {thm2}"),
    ));

    let t19 = corollary_tails(&p19);
    let lin: Interval = k::MOI1_LIN.real();
    let cst: Interval = k::MOI1_CONST.real();
    out.push(check(
        "moi1_chain_constants",
        (t19.moi1_quad - n(3.0)).abs().hi <= 1e-4
            && (t19.moi1_lin + lin).abs().hi <= 1e-4
            && (t19.moi1_const - cst).abs().hi <= 1e-4,
        Some(t19.moi1_lin),
        format!(
            "closed-form chain is {} L^2 + {} L + {} (times 1/(8 pi)), c = 3.77847",
            t19.moi1_quad, t19.moi1_lin, t19.moi1_const
        ),
    ));
    out.push(check(
        "moi1_chain_at_1e19",
        t19.moi1_chain_printed.hi < t19.moi1_rhs.lo && t19.moi1_chain.hi < t19.moi1_rhs.lo,
        Some(t19.moi1_chain_printed),
        format!("(3L^2 - 3.33541 L + 0.88612)/(8 pi) = {} < 3L^2/(8 pi) = {}", t19.moi1_chain_printed, t19.moi1_rhs),
    ));
    let t6 = corollary_tails(&LogPoint::from_x(n(1e6)));
    out.push(check(
        "moi_mid_coefficients",
        t6.moi1_mid_coeff.hi <= 2.2 && t6.moi2_ratio.hi <= 1.08 && t6.moi2_far_coeff.hi <= 2.14 && t6.moi1_mid.hi < t6.moi1_rhs.lo,
        Some(t6.moi1_mid_coeff),
        format!(
            "P2(L19)/L19^2 = {}, (L+1)/L = {}, (P1 + P0)(L19)/L19 = {}",
            t6.moi1_mid_coeff, t6.moi2_ratio, t6.moi2_far_coeff
        ),
    ));
    let midc: Interval = k::RCAL_MIDC.real();
    out.push(check(
        "rcal_mid_consolidation",
        t6.moi2_mid_coeff.hi <= midc.lo,
        Some(t6.moi2_mid_coeff),
        format!("coefficient {} against 2.95139", t6.moi2_mid_coeff),
    ));
    let above = corollary_tails(&LogPoint::new(l19 + n(1e-9)));
    let exp_c: Interval = k::EXP_CHAIN_C.real();
    out.push(check(
        "product_chain",
        t6.product_chain.hi < t6.product_rhs.lo
            && above.product_chain.hi < above.product_rhs.lo
            && t6.exp_chain_ratio.hi <= exp_c.lo,
        Some(t6.product_chain),
        format!(
            "Theta0 + R + 0.501 (Theta0 + R)^2 at 10^6: {} < {}; above 10^19: {} < {}",
            t6.product_chain, t6.product_rhs, above.product_chain, above.product_rhs
        ),
    ));
    out.push(advisory(
        "rcal_shift_digits",
        above.product_chain_alt.hi < above.product_rhs.lo,
        Some(above.product_chain_alt),
        "the R(x) branch prints 3.37784 where log log 10^19 = 3.77847; the chain also holds with 3.77847".into(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_up() {
        assert_eq!(round_up_to(43.0981, 0.1), 43.1);
        assert_eq!(round_up_to(24.3025, 0.1), 24.4);
        assert_eq!(round_up_to(101.0, 0.1), 101.0);
        assert_eq!(round_up_to(23.7001, 0.01), 23.71);
        assert!(round_up_to(23.7001, 0.01) <= round_up_to(23.7001, 0.1));
    }

    #[test]
    fn sign_change_bracket() {
        let f = |x: f64| Interval::point(x) - Interval::point(2.0).sqrt();
        let (a, b) = locate_sign_change(f, 1.0, 2.0, 1e-12).unwrap();
        assert!(a <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= b);
        assert!(locate_sign_change(f, 2.0, 3.0, 1e-12).is_none());
    }

    #[test]
    fn claim_validation() {
        assert!(ClaimSpec::new("nt_envelope", 2.0, 10.0).is_err());
        assert!(ClaimSpec::new("nope", 2.0, 10.0).is_err());
        assert!(ClaimSpec::new("moi_1", 1.0, 10.0).is_err());
        let c = ClaimSpec::new("moi_1", 2.0, 10.0).unwrap();
        assert_eq!(c.claimed_from, 43.1);
    }
}
