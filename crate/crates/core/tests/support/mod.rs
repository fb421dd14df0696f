//! Independent oracles: trial division, naive sums, adaptive quadrature.
#![allow(dead_code)]

use std::path::PathBuf;

pub fn zeros_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Plain sieve, kept deliberately unsegmented.
pub fn primes_upto(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut mark = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if mark[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                mark[j] = false;
                j += i;
            }
        }
    }
    out
}

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy)]
pub struct Naive {
    pub value: f64,
    pub err: f64,
}

/// Recursive summation; error at most `(n + 1) u sum |t_i|` plus the
/// per-term rounding the caller supplies as `term_ulps`.
fn naive_sum(terms: impl Iterator<Item = f64>, term_ulps: f64) -> Naive {
    let mut s = 0.0;
    let mut abs = 0.0;
    let mut n = 0.0;
    for t in terms {
        s += t;
        abs += t.abs();
        n += 1.0;
    }
    let u = f64::EPSILON / 2.0;
    Naive { value: s, err: (n + 1.0 + 2.0 * term_ulps) * u * abs * (1.0 + 1e-10) }
}

pub struct NaiveSums {
    pub psi: Naive,
    pub theta: Naive,
    pub pi: u64,
    pub logp_over_p: Naive,
    pub recip: Naive,
    pub log_prod: Naive,
}

/// Every sum at `x`, from a list of primes covering `[2, x]`.
pub fn naive_sums(primes: &[u64], x: f64) -> NaiveSums {
    let ps: Vec<u64> = primes.iter().copied().take_while(|&p| p as f64 <= x).collect();
    let powers = ps.iter().flat_map(|&p| {
        let mut out = Vec::new();
        let mut q = p;
        while q as f64 <= x {
            out.push((p as f64).ln());
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        out
    });
    NaiveSums {
        psi: naive_sum(powers, 1.0),
        theta: naive_sum(ps.iter().map(|&p| (p as f64).ln()), 1.0),
        pi: ps.len() as u64,
        logp_over_p: naive_sum(ps.iter().map(|&p| (p as f64).ln() / p as f64), 2.0),
        recip: naive_sum(ps.iter().map(|&p| 1.0 / p as f64), 1.0),
        log_prod: naive_sum(ps.iter().map(|&p| (-1.0 / p as f64).ln_1p()), 3.0),
    }
}

/// Adaptive Simpson with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `int_x^inf g(t) dt` through `t = x e^s`, cut where the integrand is
/// negligible. `g` must decay at least like `t^(-3/2)` times logs.
pub fn tail_integral(g: &dyn Fn(f64) -> f64, x: f64, rel_tol: f64) -> f64 {
    let h = |s: f64| {
        let t = x * s.exp();
        g(t) * t
    };
    // pieces of unit length keep Simpson's error estimate honest
    let scale = h(0.0).abs();
    let mut total = 0.0;
    let mut s = 0.0;
    while s < 400.0 {
        let piece = adaptive_simpson(&h, s, s + 1.0, rel_tol * scale * 1e-3);
        total += piece;
        if s > 20.0 && piece.abs() < total.abs() * 1e-18 {
            break;
        }
        s += 1.0;
    }
    total
}
