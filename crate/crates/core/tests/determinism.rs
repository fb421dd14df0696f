use pnt_core::chebyshev::{enclose, state_at};
use pnt_core::sieve::{EngineConfig, PrimeEngine};
use pnt_core::verifier::{verify, ClaimSpec, VerificationReport};

fn engine(threads: usize, segment_size: u64) -> PrimeEngine {
    PrimeEngine::new(EngineConfig { max: 10_000_000, segment_size, threads }).unwrap()
}

#[test]
fn sums_are_bit_identical_across_thread_counts() {
    let base = state_at(&engine(1, 1 << 12), 3_000_000.5).unwrap();
    for threads in [2, 3, 4, 8] {
        assert_eq!(state_at(&engine(threads, 1 << 12), 3_000_000.5).unwrap(), base, "threads {threads}");
    }
}

#[test]
fn sums_agree_across_segment_sizes() {
    let base = state_at(&engine(2, 1 << 18), 3_000_000.5).unwrap();
    for seg in [1 << 10, 1 << 13, 1 << 16, 1 << 20] {
        let s = state_at(&engine(2, seg), 3_000_000.5).unwrap();
        assert_eq!(s.pi, base.pi);
        assert_eq!(s.last, base.last);
        for (a, b) in [(s.psi, base.psi), (s.theta, base.theta), (s.recip, base.recip), (s.log_prod, base.log_prod)] {
            assert!(enclose(&a).intersect(&enclose(&b)).is_some(), "segment {seg}");
        }
    }
}

#[test]
fn event_sequences_ignore_layout() {
    let collect = |e: &PrimeEngine| e.lambda_stream(200_000).unwrap().map(|ev| (ev.n, ev.p, ev.k)).collect::<Vec<_>>();
    let base = collect(&engine(1, 1 << 18));
    for (threads, seg) in [(2, 1 << 10), (3, 1 << 11), (8, 1 << 15)] {
        assert_eq!(collect(&engine(threads, seg)), base);
    }
    assert!(base.windows(2).all(|w| w[0].0 < w[1].0));
    assert_eq!(base.first().map(|e| e.0), Some(2));
    let ns: Vec<u64> = engine(2, 1 << 10).lambda_stream(10_000).unwrap().map(|ev| ev.n).collect();
    assert_eq!(*ns.last().unwrap(), 9973);
}

#[test]
fn reports_are_bit_identical_across_thread_counts() {
    let claim = ClaimSpec::new("thm2_theta", 2.0, 1e6).unwrap();
    let strip = |mut r: VerificationReport| {
        r.wall_time_ms = 0;
        r.to_json()
    };
    let base = strip(verify(&engine(1, 1 << 14), &claim).unwrap());
    for threads in [2, 4] {
        assert_eq!(strip(verify(&engine(threads, 1 << 14), &claim).unwrap()), base);
    }
}
