//! One formula, three arithmetics.
//!
//! Bound expressions are written once, generic over [`Real`], and evaluated
//! as plain doubles (fast path), as outward-rounded intervals (certified),
//! or as double-double intervals (extended precision escalation).

use super::dd::Dd;
use super::interval::{DdInterval, Interval};
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// A value known exactly as a double (integers, sample points).
    fn exact(v: f64) -> Self;
    /// A decimal literal, enclosed if it is not representable.
    fn dec(lit: &str) -> Self;
    fn pi() -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn exp(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn min(self, other: Self) -> Self;
    fn max(self, other: Self) -> Self;
    /// Smallest double not above the value (a plain double returns itself).
    fn lower(&self) -> f64;
    fn upper(&self) -> f64;

    fn sqr(self) -> Self {
        self * self
    }

    fn two_pi() -> Self {
        Self::exact(2.0) * Self::pi()
    }

    fn mid(&self) -> f64 {
        0.5 * self.lower() + 0.5 * self.upper()
    }
}

impl Real for f64 {
    fn exact(v: f64) -> Self {
        v
    }
    fn dec(lit: &str) -> Self {
        lit.parse().expect("decimal literal")
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn min(self, other: Self) -> Self {
        f64::min(self, other)
    }
    fn max(self, other: Self) -> Self {
        f64::max(self, other)
    }
    fn lower(&self) -> f64 {
        *self
    }
    fn upper(&self) -> f64 {
        *self
    }
}

impl Real for Interval {
    fn exact(v: f64) -> Self {
        Interval::point(v)
    }
    fn dec(lit: &str) -> Self {
        Interval::dec(lit)
    }
    fn pi() -> Self {
        Interval::pi()
    }
    fn ln(self) -> Self {
        Interval::ln(self)
    }
    fn ln_1p(self) -> Self {
        Interval::ln_1p(self)
    }
    fn exp(self) -> Self {
        Interval::exp(self)
    }
    fn sqrt(self) -> Self {
        Interval::sqrt(self)
    }
    fn abs(self) -> Self {
        Interval::abs(self)
    }
    fn min(self, other: Self) -> Self {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
    fn max(self, other: Self) -> Self {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }
    fn sqr(self) -> Self {
        Interval::sqr(self)
    }
    fn lower(&self) -> f64 {
        self.lo
    }
    fn upper(&self) -> f64 {
        self.hi
    }
}

impl Real for DdInterval {
    fn exact(v: f64) -> Self {
        DdInterval::point(Dd::new(v))
    }
    fn dec(lit: &str) -> Self {
        DdInterval::dec(lit)
    }
    fn pi() -> Self {
        DdInterval::pi()
    }
    fn ln(self) -> Self {
        DdInterval::ln(self)
    }
    fn ln_1p(self) -> Self {
        DdInterval::ln_1p(self)
    }
    fn exp(self) -> Self {
        DdInterval::exp(self)
    }
    fn sqrt(self) -> Self {
        DdInterval::sqrt(self)
    }
    fn abs(self) -> Self {
        DdInterval::abs(self)
    }
    fn min(self, other: Self) -> Self {
        DdInterval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
    fn max(self, other: Self) -> Self {
        DdInterval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }
    fn lower(&self) -> f64 {
        self.to_interval().lo
    }
    fn upper(&self) -> f64 {
        self.to_interval().hi
    }
}
