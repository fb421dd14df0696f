//! Outward-rounded interval arithmetic.
//!
//! [`Interval`] is a pair of binary64 endpoints. Every arithmetic result is
//! pushed one ulp outward, which encloses the correctly rounded result
//! regardless of the rounding mode in effect. Elementary functions come from
//! the platform libm (error below one ulp) and are widened by one ulp on top
//! of that. [`DdInterval`] is the same idea on double-double endpoints.

use super::dd::{Dd, DD_PI};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[inline]
fn down(v: f64) -> f64 {
    if v == f64::INFINITY {
        f64::MAX
    } else {
        v.next_down()
    }
}

#[inline]
fn up(v: f64) -> f64 {
    if v == f64::NEG_INFINITY {
        f64::MIN
    } else {
        v.next_up()
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Interval `[lo, hi]`; panics if the endpoints are out of order.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    #[inline]
    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    /// `v ± err`, rounded outward.
    pub fn around(v: f64, err: f64) -> Self {
        Interval { lo: down(v - err), hi: up(v + err) }
    }

    /// Enclosure of a decimal literal (the literal need not be a double).
    pub fn dec(lit: &str) -> Self {
        let v: f64 = lit.parse().expect("decimal literal");
        match Dd::parse(lit) {
            Some(d) if d.lo == 0.0 => Interval::point(d.hi),
            _ => Interval { lo: down(v), hi: up(v) },
        }
    }

    pub fn pi() -> Self {
        Interval { lo: down(std::f64::consts::PI), hi: up(std::f64::consts::PI) }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Intersection, or `None` when disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn sqrt(self) -> Interval {
        let lo = if self.lo <= 0.0 { 0.0 } else { down(self.lo.sqrt()).max(0.0) };
        Interval { lo, hi: up(self.hi.max(0.0).sqrt()) }
    }

    pub fn ln(self) -> Interval {
        let lo = if self.lo <= 0.0 { f64::NEG_INFINITY } else { down(self.lo.ln()) };
        Interval { lo, hi: up(self.hi.ln()) }
    }

    pub fn ln_1p(self) -> Interval {
        Interval { lo: down(self.lo.ln_1p()), hi: up(self.hi.ln_1p()) }
    }

    pub fn exp(self) -> Interval {
        Interval { lo: down(self.lo.exp()).max(0.0), hi: up(self.hi.exp()) }
    }

    pub fn sqr(self) -> Interval {
        let a = self.abs();
        Interval { lo: down(a.lo * a.lo).max(0.0), hi: up(a.hi * a.hi) }
    }

    pub fn powi(self, n: u32) -> Interval {
        let mut r = Interval::ONE;
        for _ in 0..n {
            r = r * self;
        }
        r
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(v: f64) -> Self {
        Interval::point(v)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, b: Interval) -> Interval {
        Interval { lo: down(self.lo + b.lo), hi: up(self.hi + b.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, b: Interval) -> Interval {
        Interval { lo: down(self.lo - b.hi), hi: up(self.hi - b.lo) }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, b: Interval) -> Interval {
        if self.lo >= 0.0 && b.lo >= 0.0 {
            return Interval { lo: down(self.lo * b.lo).max(0.0), hi: up(self.hi * b.hi) };
        }
        let p = [self.lo * b.lo, self.lo * b.hi, self.hi * b.lo, self.hi * b.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo), hi: up(hi) }
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, b: Interval) -> Interval {
        if b.lo <= 0.0 && b.hi >= 0.0 {
            return Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        }
        let q = [self.lo / b.lo, self.lo / b.hi, self.hi / b.lo, self.hi / b.hi];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo), hi: up(hi) }
    }
}

/// Relative widening applied to double-double results; comfortably above
/// the ~2^-104 arithmetic and ~2^-100 elementary-function error.
const DD_WIDEN: f64 = 1.0 / (1u128 << 94) as f64;

/// Interval with double-double endpoints (about 94 certified bits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdInterval {
    pub lo: Dd,
    pub hi: Dd,
}

fn dd_down(v: Dd) -> Dd {
    v - Dd::new(v.hi.abs() * DD_WIDEN + 1e-300)
}

fn dd_up(v: Dd) -> Dd {
    v + Dd::new(v.hi.abs() * DD_WIDEN + 1e-300)
}

impl DdInterval {
    pub fn point(v: Dd) -> Self {
        DdInterval { lo: v, hi: v }
    }

    pub fn around(v: Dd, err: f64) -> Self {
        DdInterval { lo: dd_down(v - Dd::new(err)), hi: dd_up(v + Dd::new(err)) }
    }

    pub fn dec(lit: &str) -> Self {
        let v = Dd::parse(lit).expect("decimal literal");
        DdInterval { lo: dd_down(v), hi: dd_up(v) }
    }

    pub fn pi() -> Self {
        DdInterval { lo: dd_down(DD_PI), hi: dd_up(DD_PI) }
    }

    /// Round outward to a binary64 interval.
    pub fn to_interval(&self) -> Interval {
        Interval { lo: down(self.lo.to_f64()), hi: up(self.hi.to_f64()) }
    }

    pub fn abs(self) -> Self {
        if self.lo.hi >= 0.0 {
            self
        } else if self.hi.hi <= 0.0 {
            -self
        } else {
            DdInterval { lo: Dd::ZERO, hi: (-self.lo).max(self.hi) }
        }
    }

    pub fn sqrt(self) -> Self {
        let lo = if self.lo.hi <= 0.0 { Dd::ZERO } else { dd_down(self.lo.sqrt()) };
        DdInterval { lo, hi: dd_up(self.hi.sqrt()) }
    }

    pub fn ln(self) -> Self {
        DdInterval { lo: dd_down(self.lo.ln()), hi: dd_up(self.hi.ln()) }
    }

    pub fn ln_1p(self) -> Self {
        DdInterval { lo: dd_down(self.lo.ln_1p()), hi: dd_up(self.hi.ln_1p()) }
    }

    pub fn exp(self) -> Self {
        DdInterval { lo: dd_down(self.lo.exp()).max(Dd::ZERO), hi: dd_up(self.hi.exp()) }
    }
}

impl Neg for DdInterval {
    type Output = DdInterval;
    fn neg(self) -> Self {
        DdInterval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for DdInterval {
    type Output = DdInterval;
    fn add(self, b: Self) -> Self {
        DdInterval { lo: dd_down(self.lo + b.lo), hi: dd_up(self.hi + b.hi) }
    }
}

impl Sub for DdInterval {
    type Output = DdInterval;
    fn sub(self, b: Self) -> Self {
        DdInterval { lo: dd_down(self.lo - b.hi), hi: dd_up(self.hi - b.lo) }
    }
}

impl Mul for DdInterval {
    type Output = DdInterval;
    fn mul(self, b: Self) -> Self {
        let p = [self.lo * b.lo, self.lo * b.hi, self.hi * b.lo, self.hi * b.hi];
        let lo = p.iter().copied().fold(p[0], Dd::min);
        let hi = p.iter().copied().fold(p[0], Dd::max);
        DdInterval { lo: dd_down(lo), hi: dd_up(hi) }
    }
}

impl Div for DdInterval {
    type Output = DdInterval;
    fn div(self, b: Self) -> Self {
        if b.lo.hi <= 0.0 && b.hi.hi >= 0.0 {
            return DdInterval { lo: Dd::new(f64::NEG_INFINITY), hi: Dd::new(f64::INFINITY) };
        }
        let q = [self.lo / b.lo, self.lo / b.hi, self.hi / b.lo, self.hi / b.hi];
        let lo = q.iter().copied().fold(q[0], Dd::min);
        let hi = q.iter().copied().fold(q[0], Dd::max);
        DdInterval { lo: dd_down(lo), hi: dd_up(hi) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_literal_enclosure() {
        let i = Interval::dec("0.94");
        assert!(i.lo < i.hi);
        assert!(i.contains(0.94));
        // exactly representable literal stays a point
        assert_eq!(Interval::dec("0.5"), Interval::point(0.5));
        let d = DdInterval::dec("0.94").to_interval();
        assert!(d.contains(0.94) && d.width() < 1e-15);
    }

    #[test]
    fn division_by_straddling_interval_is_unbounded() {
        let r = Interval::ONE / Interval::new(-1.0, 1.0);
        assert!(r.lo.is_infinite() && r.hi.is_infinite());
    }

    #[test]
    fn abs_of_straddling() {
        assert_eq!(Interval::new(-3.0, 2.0).abs(), Interval::new(0.0, 3.0));
    }

    proptest! {
        #[test]
        fn interval_contains_point_evaluation(x in 2.0f64..1e12, y in 0.1f64..1e3) {
            let xi = Interval::point(x);
            let yi = Interval::point(y);
            let f = |a: f64, b: f64| (a.ln() * a.sqrt() + b) / (b * (1.0 + a.ln_1p()));
            let fi = (xi.ln() * xi.sqrt() + yi) / (yi * (Interval::ONE + xi.ln_1p()));
            prop_assert!(fi.contains(f(x, y)));
        }

        #[test]
        fn dd_interval_contains_f64_interval_midpoint(x in 1.5f64..1e8) {
            let d = DdInterval::point(Dd::new(x));
            let r = (d.ln() * d.sqrt()).to_interval();
            let s = Interval::point(x).ln() * Interval::point(x).sqrt();
            prop_assert!(r.intersect(&s).is_some());
            prop_assert!(r.width() <= s.width());
        }
    }
}
