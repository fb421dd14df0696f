//! Step functions over primes: ψ, θ, π, ψ₁ and the Mertens sums.
//!
//! All sums are carried in [`CompensatedSum`]s, so every value comes with
//! an absolute error bound. Range scans split the integers into
//! segment-aligned chunks, sieve them in parallel, fix each chunk's starting
//! state by an ordered prefix pass and then visit the chunks in parallel
//! again. Results are merged in chunk order, so they do not depend on the
//! number of threads.

use crate::bounds::{constants as k, log_power_tail, theta0, LogPoint};
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, Dd, DdInterval, Interval};
use crate::sieve::{Chunk, PrimeEngine, PrimePowerEvent};
use rayon::prelude::*;
use serde::Serialize;

/// Running sums of every step function, after some prefix of the events.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepState {
    pub psi: CompensatedSum,
    pub theta: CompensatedSum,
    pub pi: u64,
    pub logp_over_p: CompensatedSum,
    pub recip: CompensatedSum,
    /// `sum log(1 - 1/p)`
    pub log_prod: CompensatedSum,
    /// `sum Λ(n) n`, for ψ₁
    pub lambda_n: CompensatedSum,
    /// `sum log p / (p (p - 1))`, for the identity `E = -C - sum_p log p/(p(p-1))`
    pub logp_over_pp1: CompensatedSum,
    /// Last event applied (0 before any).
    pub last: u64,
}

impl StepState {
    pub fn apply(&mut self, e: &PrimePowerEvent) {
        // log p is within one ulp; products and quotients add half an ulp each
        self.psi.add_ulps(e.log_p, 1.0);
        self.lambda_n.add_ulps(e.log_p * e.n as f64, 1.5);
        if e.k == 1 {
            let p = e.p as f64;
            self.theta.add_ulps(e.log_p, 1.0);
            self.pi += 1;
            self.logp_over_p.add_ulps(e.log_p / p, 1.5);
            self.recip.add_ulps(1.0 / p, 0.5);
            self.log_prod.add_ulps((-1.0 / p).ln_1p(), 2.5);
            self.logp_over_pp1.add_ulps(e.log_p / (p * (p - 1.0)), 2.5);
        }
        self.last = e.n;
    }

    /// Append the effect of a later stretch of events.
    pub fn merge(&mut self, later: &StepState) {
        self.psi.merge(&later.psi);
        self.theta.merge(&later.theta);
        self.pi += later.pi;
        self.logp_over_p.merge(&later.logp_over_p);
        self.recip.merge(&later.recip);
        self.log_prod.merge(&later.log_prod);
        self.lambda_n.merge(&later.lambda_n);
        self.logp_over_pp1.merge(&later.logp_over_pp1);
        if later.last != 0 {
            self.last = later.last;
        }
    }
}

/// Enclosure of a tracked sum.
pub fn enclose(s: &CompensatedSum) -> Interval {
    Interval::around(s.value(), s.err_bound())
}

/// Double-double enclosure of a tracked sum.
pub fn enclose_dd(s: &CompensatedSum) -> DdInterval {
    let (hi, lo) = s.parts();
    DdInterval::around(Dd { hi, lo }, s.err_bound())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevPoint {
    pub x: f64,
    pub psi: f64,
    pub theta: f64,
    pub pi_count: u64,
    pub err_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensPoint {
    pub x: f64,
    pub sum_logp_over_p: f64,
    pub sum_recip: f64,
    pub log_prod: f64,
    pub err_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Psi1Point {
    pub x: f64,
    pub psi1: f64,
    pub err_bound: f64,
}

fn check_x(engine: &PrimeEngine, x: f64) -> Result<u64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("x must be at least 2, got {x}")));
    }
    let n = x.floor();
    if n > engine.config().max as f64 {
        return Err(Error::ResourceGuard { requested: n as u64, max: engine.config().max });
    }
    Ok(n as u64)
}

/// Totals for one chunk of integers.
fn chunk_totals(events: &[PrimePowerEvent]) -> StepState {
    let mut s = StepState::default();
    for e in events {
        s.apply(e);
    }
    s
}

fn batch_size(engine: &PrimeEngine) -> usize {
    engine.config().threads * 4
}

/// State after every event `n <= x`.
pub fn state_at(engine: &PrimeEngine, x: f64) -> Result<StepState> {
    let n = check_x(engine, x)?;
    let powers = engine.higher_powers(n);
    let chunks = engine.chunks(2, n + 1);
    let mut state = StepState::default();
    for batch in chunks.chunks(batch_size(engine)) {
        let totals: Vec<StepState> = engine.install(|| {
            batch.par_iter().map(|c| chunk_totals(&engine.events_in(c.lo, c.hi, &powers))).collect()
        });
        for t in &totals {
            state.merge(t);
        }
    }
    Ok(state)
}

pub fn chebyshev_at(engine: &PrimeEngine, x: f64) -> Result<ChebyshevPoint> {
    let s = state_at(engine, x)?;
    Ok(ChebyshevPoint {
        x,
        psi: s.psi.value(),
        theta: s.theta.value(),
        pi_count: s.pi,
        err_bound: s.psi.err_bound().max(s.theta.err_bound()),
    })
}

pub fn mertens_at(engine: &PrimeEngine, x: f64) -> Result<MertensPoint> {
    let s = state_at(engine, x)?;
    Ok(mertens_from(x, &s))
}

pub(crate) fn mertens_from(x: f64, s: &StepState) -> MertensPoint {
    MertensPoint {
        x,
        sum_logp_over_p: s.logp_over_p.value(),
        sum_recip: s.recip.value(),
        log_prod: s.log_prod.value(),
        err_bound: s.logp_over_p.err_bound().max(s.recip.err_bound()).max(s.log_prod.err_bound()),
    }
}

/// `ψ₁(x) = x ψ(x) - Σ Λ(n) n`, evaluated in double-double.
pub fn psi1_at(engine: &PrimeEngine, x: f64) -> Result<Psi1Point> {
    let s = state_at(engine, x)?;
    Ok(psi1_from(x, &s))
}

pub(crate) fn psi1_from(x: f64, s: &StepState) -> Psi1Point {
    let (ph, pl) = s.psi.parts();
    let (nh, nl) = s.lambda_n.parts();
    let v = Dd::new(x) * Dd { hi: ph, lo: pl } - Dd { hi: nh, lo: nl };
    let psi1 = v.to_f64();
    let err = x * s.psi.err_bound() + s.lambda_n.err_bound() + psi1.abs() * f64::EPSILON;
    Psi1Point { x, psi1, err_bound: err * (1.0 + 1e-12) }
}

/// A stretch `[a, b]` of the real line on which every step function is
/// constant (equal to `state`), except possibly at `b` itself, where the
/// visitor must use the left limit.
#[derive(Debug, Clone, Copy)]
pub struct Gap<'a> {
    pub a: f64,
    pub b: f64,
    pub state: &'a StepState,
}

/// Per-gap callback for [`scan_gaps`].
pub trait GapVisitor: Sync {
    type Acc: Send;
    fn empty(&self) -> Self::Acc;
    fn visit(&self, gap: Gap<'_>, acc: &mut Self::Acc);
    /// Append `later` (covering larger x) to `into`.
    fn merge(&self, into: &mut Self::Acc, later: Self::Acc);
}

fn visit_chunk<V: GapVisitor>(
    visitor: &V,
    chunk: &Chunk,
    events: &[PrimePowerEvent],
    start: &StepState,
    lo: f64,
    hi: f64,
) -> V::Acc {
    let mut acc = visitor.empty();
    let a = lo.max(chunk.lo as f64);
    let b = hi.min(chunk.hi as f64);
    if a > b {
        return acc;
    }
    let mut state = *start;
    let mut i = 0;
    while i < events.len() && events[i].n as f64 <= a {
        state.apply(&events[i]);
        i += 1;
    }
    let mut cur = a;
    let mut jumped_at_cur = i > 0 && events[i - 1].n as f64 == a;
    for e in &events[i..] {
        let n = e.n as f64;
        if n > b {
            break;
        }
        visitor.visit(Gap { a: cur, b: n, state: &state }, &mut acc);
        state.apply(e);
        cur = n;
        jumped_at_cur = true;
    }
    if cur < b || (cur == b && b == hi && (jumped_at_cur || lo == hi)) {
        visitor.visit(Gap { a: cur, b, state: &state }, &mut acc);
    }
    acc
}

/// Visit every gap of `[lo, hi]` in order; see [`Gap`].
pub fn scan_gaps<V: GapVisitor>(engine: &PrimeEngine, lo: f64, hi: f64, visitor: &V) -> Result<V::Acc> {
    if !(lo >= 2.0 && lo <= hi) {
        return Err(Error::InvalidArgument(format!("scan range [{lo}, {hi}] needs 2 <= lo <= hi")));
    }
    let n_hi = check_x(engine, hi)?;
    let powers = engine.higher_powers(n_hi);
    let chunks = engine.chunks(2, n_hi + 1);
    let mut running = StepState::default();
    let mut out = visitor.empty();
    for batch in chunks.chunks(batch_size(engine)) {
        let sieved: Vec<(Vec<PrimePowerEvent>, StepState)> = engine.install(|| {
            batch
                .par_iter()
                .map(|c| {
                    let ev = engine.events_in(c.lo, c.hi, &powers);
                    let t = chunk_totals(&ev);
                    (ev, t)
                })
                .collect()
        });
        let mut starts = Vec::with_capacity(batch.len());
        for (_, t) in &sieved {
            starts.push(running);
            running.merge(t);
        }
        let accs: Vec<V::Acc> = engine.install(|| {
            batch
                .par_iter()
                .zip(sieved.par_iter())
                .zip(starts.par_iter())
                .map(|((c, (ev, _)), st)| visit_chunk(visitor, c, ev, st, lo, hi))
                .collect()
        });
        for a in accs {
            visitor.merge(&mut out, a);
        }
    }
    Ok(out)
}

/// Check claims over their ranges in one pass; see [`crate::verifier`].
pub fn scan_claims(
    engine: &PrimeEngine,
    claims: &[crate::verifier::ClaimSpec],
) -> Result<Vec<crate::verifier::VerificationReport>> {
    crate::verifier::scan_claims(engine, claims)
}

/// Certified enclosures of the Mertens constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EbEstimate {
    pub x_max: f64,
    #[serde(rename = "E_est")]
    pub e_est: Interval,
    #[serde(rename = "B_est")]
    pub b_est: Interval,
}

/// `K1` and `K2` from the partial-summation identities truncated at
/// `x_max`, with the integral from `x_max` to infinity enclosed using
/// `|θ(t) - t| <= 1.95 sqrt(t)` up to `10^19` and the Theorem 2 bound beyond.
pub fn estimate_e_b(engine: &PrimeEngine, x_max: f64) -> Result<EbEstimate> {
    if !(x_max >= 1e4) {
        return Err(Error::InvalidArgument(format!("estimate_E_B needs x_max >= 10^4, got {x_max}")));
    }
    let s = state_at(engine, x_max)?;
    Ok(e_b_from_state(x_max, &s))
}

pub(crate) fn e_b_from_state(x_max: f64, s: &StepState) -> EbEstimate {
    let x = Interval::point(x_max);
    let one = Interval::ONE;
    let two = Interval::point(2.0);
    let l = x.ln();
    let theta = enclose(&s.theta);
    let dev = theta - x;
    let b95: Interval = k::BUTHE_THETA_C.real();
    let x19 = Interval::point(1e19);
    let l19 = x19.ln();
    let c: Interval = k::LOGLOG_1E19.real();
    let e8 = Interval::point(8.0) * Interval::pi();
    let mid = two * (one / x.sqrt() - one / x19.sqrt());
    // beyond 10^19: |θ(t) - t| <= sqrt(t) log t (log t - c)/(8 pi), c <= log log t
    let far1 = (log_power_tail(2, l19) - c * log_power_tail(1, l19)) / (e8 * x19.sqrt());
    let tail1 = b95 * mid + far1;
    // (log t + 1)/(log t)^2 <= 1/L + 1/L^2 on [x, 10^19]; (log t + 1)/log t <= 1 + 1/L19 beyond
    let w = one / l + one / l.sqr();
    let far2 = (one + one / l19) * (log_power_tail(1, l19) - c * log_power_tail(0, l19)) / (e8 * x19.sqrt());
    let tail2 = b95 * w * mid + far2;
    let sym = |t: Interval| Interval::new(-t.hi, t.hi);
    let k1 = enclose(&s.logp_over_p) - l - dev / x + sym(tail1);
    let k2 = enclose(&s.recip) - l.ln() - dev / (x * l) + sym(tail2);
    EbEstimate { x_max, e_est: k1, b_est: k2 }
}

/// Euler's constant by Euler-Maclaurin summation of the harmonic series.
pub fn euler_gamma_dd() -> DdInterval {
    const N: i64 = 100;
    let mut h = Dd::ZERO;
    for n in (1..=N).rev() {
        h = h + Dd::ONE / Dd::from_i64(n);
    }
    let nn = Dd::from_i64(N);
    let mut g = h - nn.ln() - Dd::ONE / (Dd::new(2.0) * nn);
    // B_2k / (2k) for k = 1..6
    let coeffs: [(i64, i64); 6] = [(1, 12), (-1, 120), (1, 252), (-1, 240), (1, 132), (-691, 32760)];
    let n2 = nn * nn;
    let mut pow = n2;
    for (num, den) in coeffs {
        g = g + Dd::from_i64(num) / (Dd::from_i64(den) * pow);
        pow = pow * n2;
    }
    // next term is B_14/(14 N^14) = 1/(12 N^14)
    DdInterval::around(g, 1e-29)
}

/// Certified Mertens constants, intersecting two independent enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensConstants {
    pub x_max: f64,
    pub e: Interval,
    pub b: Interval,
    pub c: Interval,
    /// from the partial-summation identities (the `estimate_E_B` intervals)
    pub e_partial_summation: Interval,
    pub b_partial_summation: Interval,
    /// `E = -C - Σ_p log p/(p(p-1))`, prime tail as a Stieltjes integral against θ
    pub e_identity: Interval,
    /// `B = C + Σ_p (log(1 - 1/p) + 1/p)`, tail in `(-Θ0(x), 0)`
    pub b_identity: Interval,
}

pub fn mertens_constants(engine: &PrimeEngine, x_max: f64) -> Result<MertensConstants> {
    if !(x_max >= 1e4) {
        return Err(Error::InvalidArgument(format!("mertens constants need x_max >= 10^4, got {x_max}")));
    }
    let s = state_at(engine, x_max)?;
    let eb = e_b_from_state(x_max, &s);
    let c = euler_gamma_dd().to_interval();
    let xi = Interval::point(x_max.floor());
    let one = Interval::ONE;
    let xm1 = xi - one;
    // Σ_{p > x} log p/(p(p-1)) = -θ(x)/(x(x-1)) + ∫_x^∞ θ(t)(2t-1)/(t²(t-1)²) dt, and with
    // θ(t) = t the integral is log(x/(x-1)) + 1/(x-1); |θ(t) - t| <= 1.95√t up to 10^19
    // and <= t^0.6 beyond, while (2t-1)/(t²(t-1)²) <= 2κ/t³ with κ = (x/(x-1))²
    let kappa = (xi / xm1).sqr();
    let near = k::BUTHE_THETA_C.real::<Interval>() * Interval::point(4.0) * kappa
        / (Interval::point(3.0) * xi * xi.sqrt());
    let far = Interval::point(2.0) * kappa / Interval::point(1.4) * (Interval::point(-1.4) * Interval::point(1e19).ln()).exp();
    let err = near + far;
    let main = -enclose(&s.theta) / (xi * xm1) + (xi / xm1).ln() + one / xm1;
    let e_tail = main + Interval::new(-err.hi, err.hi);
    let e_identity = -c - enclose(&s.logp_over_pp1) - e_tail;
    let th0 = theta0(&LogPoint::from_x(Interval::point(x_max)));
    let b_identity = c + enclose(&s.log_prod) + enclose(&s.recip) + Interval::new(-th0.hi, 0.0);
    let e = eb.e_est.intersect(&e_identity).ok_or_else(|| {
        Error::InvalidArgument(format!("E enclosures disagree: {} vs {}", eb.e_est, e_identity))
    })?;
    let b = eb.b_est.intersect(&b_identity).ok_or_else(|| {
        Error::InvalidArgument(format!("B enclosures disagree: {} vs {}", eb.b_est, b_identity))
    })?;
    Ok(MertensConstants {
        x_max,
        e,
        b,
        c,
        e_partial_summation: eb.e_est,
        b_partial_summation: eb.b_est,
        e_identity,
        b_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::EngineConfig;

    fn engine() -> PrimeEngine {
        PrimeEngine::new(EngineConfig { max: 100_000_000, segment_size: 1 << 12, threads: 2 }).unwrap()
    }

    #[test]
    fn chebyshev_at_ten() {
        let p = chebyshev_at(&engine(), 10.0).unwrap();
        assert!((p.psi - 2520f64.ln()).abs() < 1e-14);
        assert!((p.theta - 210f64.ln()).abs() < 1e-14);
        assert_eq!(p.pi_count, 4);
        assert!(p.err_bound < 1e-13);
        let q = chebyshev_at(&engine(), 2.0).unwrap();
        assert_eq!(q.pi_count, 1);
        assert_eq!(q.psi, 2f64.ln());
        assert_eq!(q.theta, q.psi);
    }

    #[test]
    fn eleven_is_inside_buthe() {
        let p = chebyshev_at(&engine(), 11.0).unwrap();
        assert!(((p.psi - 11.0).abs() - 0.770).abs() < 1e-3);
        assert!((p.psi - 11.0).abs() <= 0.94 * 11f64.sqrt());
    }

    #[test]
    fn mertens_at_ten() {
        let m = mertens_at(&engine(), 10.0).unwrap();
        assert!((m.sum_recip - (0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0)).abs() < 1e-15);
        assert!((m.log_prod - (8.0f64 / 35.0).ln()).abs() < 1e-15);
        let m2 = mertens_at(&engine(), 2.0).unwrap();
        assert!((m2.sum_logp_over_p - 2f64.ln() / 2.0).abs() < 1e-16);
    }

    #[test]
    fn psi1_small() {
        let e = engine();
        let p = psi1_at(&e, 4.0).unwrap();
        assert!((p.psi1 - (2.0 * 2f64.ln() + 3f64.ln())).abs() < 1e-14);
        assert_eq!(psi1_at(&e, 2.0).unwrap().psi1, 0.0);
    }

    #[test]
    fn out_of_range() {
        let e = PrimeEngine::new(EngineConfig { max: 1000, segment_size: 1024, threads: 1 }).unwrap();
        assert!(matches!(chebyshev_at(&e, 5000.0), Err(Error::ResourceGuard { .. })));
        assert!(chebyshev_at(&e, 1.5).is_err());
    }

    #[test]
    fn euler_gamma() {
        let g = euler_gamma_dd();
        let r = Dd::parse("0.57721566490153286060651209008240243").unwrap();
        assert!(g.lo <= r && r <= g.hi);
        assert!((g.hi - g.lo).to_f64() < 1e-27);
    }

    #[test]
    fn e_b_contain_printed_values() {
        let est = estimate_e_b(&engine(), 1e6).unwrap();
        assert!(est.e_est.contains(-1.33258));
        assert!(est.b_est.contains(0.26149));
        let w = 2.0 * 3.0 * 1e6f64.ln() / (8.0 * std::f64::consts::PI * 1e3);
        assert!(est.b_est.width() <= w, "{}", est.b_est);
    }

    #[derive(Default)]
    struct Collect;
    impl GapVisitor for Collect {
        type Acc = Vec<(f64, f64, u64)>;
        fn empty(&self) -> Self::Acc {
            Vec::new()
        }
        fn visit(&self, g: Gap<'_>, acc: &mut Self::Acc) {
            acc.push((g.a, g.b, g.state.pi));
        }
        fn merge(&self, into: &mut Self::Acc, later: Self::Acc) {
            into.extend(later);
        }
    }

    #[test]
    fn gaps_cover_range() {
        let g = scan_gaps(&engine(), 2.0, 12.0, &Collect).unwrap();
        let expect = vec![
            (2.0, 3.0, 1),
            (3.0, 4.0, 2),
            (4.0, 5.0, 2),
            (5.0, 7.0, 3),
            (7.0, 8.0, 4),
            (8.0, 9.0, 4),
            (9.0, 11.0, 4),
            (11.0, 12.0, 5),
        ];
        assert_eq!(g, expect);
        // closing point when hi is a jump
        let g = scan_gaps(&engine(), 9.5, 11.0, &Collect).unwrap();
        assert_eq!(g, vec![(9.5, 11.0, 4), (11.0, 11.0, 5)]);
    }

    #[test]
    fn gaps_across_chunks_are_contiguous() {
        let g = scan_gaps(&engine(), 24.4, 20_000.0, &Collect).unwrap();
        assert_eq!(g.first().unwrap().0, 24.4);
        assert_eq!(g.last().unwrap().1, 20_000.0);
        for w in g.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
