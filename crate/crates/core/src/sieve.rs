//! Segmented sieve of Eratosthenes and the von Mangoldt event stream.
//!
//! Segments are sieved independently on a worker pool and handed out in
//! index order, so every stream is identical for any thread count.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::VecDeque;
use std::sync::Arc;

/// Default number of integers per segment (fits comfortably in L2).
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 18;
/// Smallest accepted segment size.
pub const MIN_SEGMENT_SIZE: u64 = 1 << 10;
/// Default resource guard.
pub const DEFAULT_MAX: u64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest integer any stream may reach (inclusive).
    pub max: u64,
    pub segment_size: u64,
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max: DEFAULT_MAX,
            segment_size: DEFAULT_SEGMENT_SIZE,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

/// Composite marks for the integers in `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    // bit i set <=> lo + i is not prime
    composite_marks: Vec<u64>,
}

impl SieveSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n >= self.lo && n < self.hi, "{n} outside segment [{}, {})", self.lo, self.hi);
        let i = n - self.lo;
        self.composite_marks[(i / 64) as usize] & (1 << (i % 64)) == 0
    }

    /// Primes of the segment in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let len = self.len();
        self.composite_marks.iter().enumerate().flat_map(move |(w, &bits)| {
            let mut free = !bits;
            let base = w as u64 * 64;
            if base + 64 > len {
                let valid = len - base;
                free &= (1u64 << valid) - 1;
            }
            std::iter::from_fn(move || {
                if free == 0 {
                    return None;
                }
                let t = free.trailing_zeros() as u64;
                free &= free - 1;
                Some(self.lo + base + t)
            })
        })
    }

    pub fn count_primes(&self) -> u64 {
        let len = self.len();
        let mut count = 0u64;
        for (w, &bits) in self.composite_marks.iter().enumerate() {
            let base = w as u64 * 64;
            let mut free = !bits;
            if base + 64 > len {
                free &= (1u64 << (len - base)) - 1;
            }
            count += free.count_ones() as u64;
        }
        count
    }
}

/// One term of the von Mangoldt function: `Λ(n) = log p` at `n = p^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimePowerEvent {
    pub n: u64,
    pub p: u64,
    pub k: u32,
    pub log_p: f64,
}

impl PrimePowerEvent {
    pub fn is_prime(&self) -> bool {
        self.k == 1
    }
}

/// Half-open integer range handled as one unit of parallel work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chunk {
    pub index: usize,
    pub lo: u64,
    pub hi: u64,
}

/// Owner of the base primes and worker pool.
pub struct PrimeEngine {
    config: EngineConfig,
    base_primes: Vec<u64>,
    pool: Arc<rayon::ThreadPool>,
}

impl std::fmt::Debug for PrimeEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeEngine").field("config", &self.config).finish()
    }
}

impl PrimeEngine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        if config.segment_size < MIN_SEGMENT_SIZE {
            return Err(Error::InvalidArgument(format!(
                "segment size {} below minimum {}",
                config.segment_size, MIN_SEGMENT_SIZE
            )));
        }
        if config.threads == 0 {
            return Err(Error::InvalidArgument("thread count must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        // primes up to sqrt(max) plus a margin so next_prime_power(max - 1) still works
        let base_limit = isqrt(config.max.saturating_add(1)) + 2;
        Ok(PrimeEngine { config, base_primes: small_primes(base_limit), pool: Arc::new(pool) })
    }

    pub fn with_defaults() -> Self {
        Self::new(EngineConfig::default()).expect("default engine config is valid")
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Run `f` on this engine's worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    fn guard(&self, hi_inclusive: u64) -> Result<()> {
        if hi_inclusive > self.config.max {
            Err(Error::ResourceGuard { requested: hi_inclusive, max: self.config.max })
        } else {
            Ok(())
        }
    }

    /// Split `[lo, hi)` into segment-aligned chunks.
    pub fn chunks(&self, lo: u64, hi: u64) -> Vec<Chunk> {
        let s = self.config.segment_size;
        let mut out = Vec::new();
        let mut a = lo;
        let mut index = 0;
        while a < hi {
            let b = (a + s).min(hi);
            out.push(Chunk { index, lo: a, hi: b });
            index += 1;
            a = b;
        }
        out
    }

    /// Sieve a single segment `[lo, hi)`.
    pub fn sieve_segment(&self, lo: u64, hi: u64) -> SieveSegment {
        debug_assert!(lo <= hi);
        let len = hi - lo;
        let mut marks = vec![0u64; len.div_ceil(64) as usize];
        // even numbers (2 is restored below)
        let even_pattern = if lo % 2 == 0 { 0x5555_5555_5555_5555 } else { 0xAAAA_AAAA_AAAA_AAAA };
        marks.fill(even_pattern);
        for n in [0u64, 1, 2] {
            if n >= lo && n < hi {
                let i = n - lo;
                if n == 2 {
                    marks[(i / 64) as usize] &= !(1 << (i % 64));
                } else {
                    marks[(i / 64) as usize] |= 1 << (i % 64);
                }
            }
        }
        for &p in self.base_primes.iter().skip(1) {
            let pp = p * p;
            if pp >= hi {
                break;
            }
            // first odd multiple of p that is >= max(p^2, lo)
            let mut m = pp.max(lo.div_ceil(p) * p);
            if m & 1 == 0 {
                m += p;
            }
            let step = 2 * p;
            let mut i = m - lo;
            while i < len {
                marks[(i / 64) as usize] |= 1 << (i % 64);
                i += step;
            }
        }
        SieveSegment { lo, hi, composite_marks: marks }
    }

    /// Ordered stream of segments tiling `[lo, hi)`.
    pub fn sieve_range(&self, lo: u64, hi: u64) -> Result<SegmentStream<'_>> {
        if lo < 2 || lo >= hi {
            return Err(Error::InvalidArgument(format!("sieve range needs 2 <= lo < hi, got [{lo}, {hi})")));
        }
        self.guard(hi - 1)?;
        Ok(SegmentStream { engine: self, pending: self.chunks(lo, hi).into(), ready: VecDeque::new() })
    }

    /// Primes in `[lo, hi)` in increasing order.
    pub fn primes(&self, lo: u64, hi: u64) -> Result<impl Iterator<Item = u64> + '_> {
        let lo = lo.max(2);
        let segs = if lo < hi { Some(self.sieve_range(lo, hi)?) } else { None };
        Ok(segs.into_iter().flatten().flat_map(|seg| seg.primes().collect::<Vec<_>>()))
    }

    /// Prime powers `p^k` (k >= 2) up to `limit`, sorted by value.
    pub fn higher_powers(&self, limit: u64) -> Vec<PrimePowerEvent> {
        let mut out = Vec::new();
        for &p in &self.base_primes {
            if p.saturating_mul(p) > limit {
                break;
            }
            let log_p = (p as f64).ln();
            let mut q = p * p;
            let mut k = 2;
            loop {
                out.push(PrimePowerEvent { n: q, p, k, log_p });
                match q.checked_mul(p) {
                    Some(next) if next <= limit => {
                        q = next;
                        k += 1;
                    }
                    _ => break,
                }
            }
        }
        out.sort_by_key(|e| e.n);
        out
    }

    /// Events `(n, Λ(n))` for prime powers `n` in one chunk `[lo, hi)`,
    /// ascending. `powers` must come from [`Self::higher_powers`] with a
    /// limit of at least `hi - 1`.
    pub fn events_in(&self, lo: u64, hi: u64, powers: &[PrimePowerEvent]) -> Vec<PrimePowerEvent> {
        let lo = lo.max(2);
        if lo >= hi {
            return Vec::new();
        }
        let seg = self.sieve_segment(lo, hi);
        let start = powers.partition_point(|e| e.n < lo);
        let end = powers.partition_point(|e| e.n < hi);
        let mut extra = powers[start..end].iter().peekable();
        let mut out = Vec::with_capacity((seg.len() / 8) as usize + 8);
        for p in seg.primes() {
            while let Some(e) = extra.next_if(|e| e.n < p) {
                out.push(*e);
            }
            out.push(PrimePowerEvent { n: p, p, k: 1, log_p: (p as f64).ln() });
        }
        out.extend(extra.copied());
        out
    }

    /// Every prime power `n <= limit` in increasing order.
    pub fn lambda_stream(&self, limit: u64) -> Result<LambdaStream<'_>> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!("lambda_stream needs limit >= 2, got {limit}")));
        }
        self.guard(limit)?;
        let powers = self.higher_powers(limit);
        Ok(LambdaStream {
            engine: self,
            powers,
            pending: self.chunks(2, limit + 1).into(),
            ready: VecDeque::new(),
        })
    }

    /// Smallest prime power strictly greater than `n`.
    pub fn next_prime_power(&self, n: u64) -> Result<u64> {
        if n < 1 {
            return Err(Error::InvalidArgument("next_prime_power needs n >= 1".into()));
        }
        let mut lo = n + 1;
        loop {
            self.guard(lo)?;
            let hi = (lo + 4096).min(self.config.max + 1);
            let powers = self.higher_powers(hi - 1);
            if let Some(e) = self.events_in(lo, hi, &powers).first() {
                return Ok(e.n);
            }
            lo = hi;
        }
    }
}

/// Parallel batches of work are this many chunks per worker.
const BATCH_PER_THREAD: usize = 4;

pub struct SegmentStream<'a> {
    engine: &'a PrimeEngine,
    pending: VecDeque<Chunk>,
    ready: VecDeque<SieveSegment>,
}

impl Iterator for SegmentStream<'_> {
    type Item = SieveSegment;

    fn next(&mut self) -> Option<SieveSegment> {
        if self.ready.is_empty() {
            let take = (self.engine.config.threads * BATCH_PER_THREAD).min(self.pending.len());
            if take == 0 {
                return None;
            }
            let batch: Vec<Chunk> = self.pending.drain(..take).collect();
            let engine = self.engine;
            let segs: Vec<SieveSegment> =
                engine.install(|| batch.par_iter().map(|c| engine.sieve_segment(c.lo, c.hi)).collect());
            self.ready.extend(segs);
        }
        self.ready.pop_front()
    }
}

pub struct LambdaStream<'a> {
    engine: &'a PrimeEngine,
    powers: Vec<PrimePowerEvent>,
    pending: VecDeque<Chunk>,
    ready: VecDeque<PrimePowerEvent>,
}

impl Iterator for LambdaStream<'_> {
    type Item = PrimePowerEvent;

    fn next(&mut self) -> Option<PrimePowerEvent> {
        while self.ready.is_empty() {
            let take = (self.engine.config.threads * BATCH_PER_THREAD).min(self.pending.len());
            if take == 0 {
                return None;
            }
            let batch: Vec<Chunk> = self.pending.drain(..take).collect();
            let engine = self.engine;
            let powers = &self.powers;
            let lists: Vec<Vec<PrimePowerEvent>> =
                engine.install(|| batch.par_iter().map(|c| engine.events_in(c.lo, c.hi, powers)).collect());
            self.ready.extend(lists.into_iter().flatten());
        }
        self.ready.pop_front()
    }
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let n = n as u128;
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

/// Primes up to `limit` inclusive by a plain sieve.
pub fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(seg: u64, threads: usize) -> PrimeEngine {
        PrimeEngine::new(EngineConfig { max: 10_000_000, segment_size: seg, threads }).unwrap()
    }

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn tiny_ranges() {
        let e = engine(1024, 1);
        let segs: Vec<_> = e.sieve_range(2, 12).unwrap().collect();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].primes().collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
        let only: Vec<_> = e.sieve_range(2, 3).unwrap().flat_map(|s| s.primes().collect::<Vec<_>>()).collect();
        assert_eq!(only, vec![2]);
    }

    #[test]
    fn rejects_bad_ranges() {
        let e = engine(1024, 1);
        assert!(matches!(e.sieve_range(1, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(e.sieve_range(10, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(e.sieve_range(2, 20_000_002), Err(Error::ResourceGuard { .. })));
        assert!(PrimeEngine::new(EngineConfig { max: 100, segment_size: 512, threads: 1 }).is_err());
    }

    #[test]
    fn segments_tile_the_range() {
        let e = engine(1024, 2);
        let segs: Vec<_> = e.sieve_range(1000, 10_000).unwrap().collect();
        assert_eq!(segs.first().unwrap().lo(), 1000);
        assert_eq!(segs.last().unwrap().hi(), 10_000);
        for w in segs.windows(2) {
            assert_eq!(w[0].hi(), w[1].lo());
            assert_eq!(w[0].len(), 1024);
        }
    }

    #[test]
    fn matches_trial_division_with_odd_boundaries() {
        let e = engine(1024, 3);
        for (lo, hi) in [(2u64, 5000u64), (977, 4099), (65_530, 70_001)] {
            let got: Vec<u64> = e.primes(lo, hi).unwrap().collect();
            let want: Vec<u64> = (lo..hi).filter(|&n| trial_division(n)).collect();
            assert_eq!(got, want, "range [{lo}, {hi})");
        }
    }

    #[test]
    fn lambda_events_up_to_ten() {
        let e = engine(1024, 1);
        let ev: Vec<_> = e.lambda_stream(10).unwrap().collect();
        let ns: Vec<u64> = ev.iter().map(|e| e.n).collect();
        let ps: Vec<u64> = ev.iter().map(|e| e.p).collect();
        assert_eq!(ns, vec![2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(ps, vec![2, 3, 2, 5, 7, 2, 3]);
        let total: f64 = ev.iter().map(|e| e.log_p).sum();
        // 3 log 2 + 2 log 3 + log 5 + log 7 = log 2520
        assert!((total - 2520f64.ln()).abs() < 1e-14);
        assert!((total - 2520f64.ln()).abs() < 1e-12);
        let single: Vec<_> = e.lambda_stream(2).unwrap().collect();
        assert_eq!(single, vec![PrimePowerEvent { n: 2, p: 2, k: 1, log_p: 2f64.ln() }]);
    }

    #[test]
    fn next_prime_power_examples() {
        let e = engine(1024, 1);
        assert_eq!(e.next_prime_power(97).unwrap(), 101);
        assert_eq!(e.next_prime_power(1).unwrap(), 2);
        assert_eq!(e.next_prime_power(8).unwrap(), 9);
        assert_eq!(e.next_prime_power(120).unwrap(), 121);
        assert!(e.next_prime_power(0).is_err());
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 99_999_999, 100_000_000, u64::MAX] {
            let r = isqrt(n);
            assert!(r as u128 * r as u128 <= n as u128);
            assert!((r as u128 + 1) * (r as u128 + 1) > n as u128);
        }
    }
}
