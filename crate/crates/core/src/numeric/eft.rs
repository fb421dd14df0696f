//! Error-free transformations and a compensated accumulator.
//!
//! `two_sum` and `two_prod` return the rounded result together with the
//! exact rounding error, so `a + b == s + e` holds in real arithmetic.

/// Knuth's branch-free TwoSum.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Dekker's FastTwoSum; requires `|a| >= |b|` (or `a == 0`).
#[inline]
pub fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product via fused multiply-add.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Unit roundoff of binary64.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Relative error of one double-double accumulation step (generous).
pub const DD_STEP_REL: f64 = 1.0 / (1u128 << 100) as f64;

/// Compensated running sum carried in double-double form.
///
/// Every added term carries its own absolute error bound (how far the
/// `f64` term may be from the real quantity it represents). `err_bound()`
/// combines those with the accumulation error of the double-double sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    hi: f64,
    lo: f64,
    term_err: f64,
    abs_total: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a term that is exact (no representation error).
    #[inline]
    pub fn add_exact(&mut self, term: f64) {
        self.push(term, 0.0);
    }

    /// Add a term whose `f64` value is within `ulps` units in the last place
    /// of the real quantity.
    #[inline]
    pub fn add_ulps(&mut self, term: f64, ulps: f64) {
        self.push(term, term.abs() * f64::EPSILON * ulps);
    }

    /// Add a term with an explicit absolute error bound.
    #[inline]
    pub fn push(&mut self, term: f64, err: f64) {
        let (s, e) = two_sum(self.hi, term);
        let (hi, lo) = fast_two_sum(s, e + self.lo);
        self.hi = hi;
        self.lo = lo;
        self.term_err += err;
        self.abs_total += term.abs();
        self.count += 1;
    }

    /// Merge another accumulator (its terms are treated as added after ours).
    pub fn merge(&mut self, other: &CompensatedSum) {
        let (s, e) = two_sum(self.hi, other.hi);
        let (hi, lo) = fast_two_sum(s, e + self.lo + other.lo);
        self.hi = hi;
        self.lo = lo;
        self.term_err += other.term_err;
        self.abs_total += other.abs_total;
        self.count += other.count;
    }

    /// Sum rounded to the nearest double.
    #[inline]
    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    /// The unevaluated double-double pair `(hi, lo)`.
    pub fn parts(&self) -> (f64, f64) {
        (self.hi, self.lo)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Absolute bound on `|value() - exact sum of the represented reals|`.
    pub fn err_bound(&self) -> f64 {
        let v = self.value();
        // final rounding of hi + lo, plus the double-double accumulation error
        let accum = (self.count as f64 + 2.0) * DD_STEP_REL * self.abs_total;
        let final_round = v.abs() * UNIT_ROUNDOFF;
        // the bound itself is rounded; inflate slightly
        (self.term_err + accum + final_round) * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_is_exact() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
        let (s, e) = two_sum(0.1, 0.2);
        assert_eq!(s, 0.30000000000000004);
        assert!(e != 0.0);
    }

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + f64::EPSILON;
        let (p, e) = two_prod(a, a);
        assert_eq!(p, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(e, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        // 1 + 1e-16 * 10^4 : naive summation loses every small term
        let mut acc = CompensatedSum::new();
        let mut naive = 0.0;
        acc.add_exact(1.0);
        naive += 1.0;
        for _ in 0..10_000 {
            acc.add_exact(1e-16);
            naive += 1e-16;
        }
        assert_eq!(naive, 1.0);
        assert!((acc.value() - (1.0 + 1e-12)).abs() < 1e-24 + 1e-16);
        assert!(acc.err_bound() < 1e-15);
    }

    #[test]
    fn merge_matches_sequential() {
        let terms: Vec<f64> = (1..2000).map(|k| (k as f64).ln() / k as f64).collect();
        let mut seq = CompensatedSum::new();
        for &t in &terms {
            seq.add_ulps(t, 1.0);
        }
        let mut a = CompensatedSum::new();
        let mut b = CompensatedSum::new();
        for &t in &terms[..700] {
            a.add_ulps(t, 1.0);
        }
        for &t in &terms[700..] {
            b.add_ulps(t, 1.0);
        }
        a.merge(&b);
        assert_eq!(a.count(), seq.count());
        assert!((a.value() - seq.value()).abs() <= a.err_bound() + seq.err_bound());
    }
}
