//! Closed-form bounds, auxiliary functions and the constants behind them.
//!
//! Everything that must work for very large `x` takes a [`LogPoint`], i.e.
//! `log x` (and `log log x`) instead of `x`, so expressions stay finite up to
//! `x = e^40000` and beyond. All formulas are generic over [`Real`], so the
//! same code runs in plain `f64`, outward-rounded [`Interval`] or
//! double-double [`DdInterval`](crate::numeric::DdInterval) arithmetic.

pub mod constants;
mod goldston;
mod smoothed;
mod registry;
mod tails;
mod zero_density;

pub use goldston::{goldston_chain, loglog_coefficient, loglog_coefficient_slope, w_rho, w_rho_bound_check, GoldstonChain};
pub use smoothed::{
    constant_block, dropped_block, log_t0, smoothed_psi_bound, smoothed_theta_bound, suffcond_coefficient, suffcond_margin,
    t0, T0Value, TableRow, PIECEWISE_ROWS, THETA_EXTENSION_ROW,
};
pub use registry::{lookup, registry, BoundId, BoundKind, BoundSpec, Normalization, CLAIM_IDS};
pub use tails::{corollary_tails, log_power_tail, theta0, CorollaryTails};
pub use zero_density::{lehman_rhs, nt_envelope, nt_main, skewes_tail, nt_crude_bound, LehmanPhi};

use crate::numeric::{Interval, Real};
use serde::Serialize;

/// `x` in the log domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPoint<T> {
    pub l: T,
    pub ll: T,
}

impl<T: Real> LogPoint<T> {
    pub fn new(l: T) -> Self {
        LogPoint { l, ll: l.ln() }
    }

    pub fn from_x(x: T) -> Self {
        Self::new(x.ln())
    }

    /// `x^(-1/2)`; underflows to zero rather than overflowing.
    pub fn inv_sqrt_x(&self) -> T {
        (-self.l * T::exact(0.5)).exp()
    }

    pub fn sqrt_x(&self) -> T {
        (self.l * T::exact(0.5)).exp()
    }

    /// `log x / (2 pi sqrt x)`, the perturbation in the smoothing factors.
    pub fn u(&self) -> T {
        self.l * self.inv_sqrt_x() / T::two_pi()
    }
}

/// Closed enclosure used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalValue {
    pub lo: f64,
    pub hi: f64,
}

impl From<Interval> for IntervalValue {
    fn from(v: Interval) -> Self {
        IntervalValue { lo: v.lo, hi: v.hi }
    }
}

impl<T: Real> From<&T> for IntervalValue {
    fn from(v: &T) -> Self {
        IntervalValue { lo: v.lower(), hi: v.upper() }
    }
}

/// `log(10^19)` enclosed.
pub fn log_1e19<T: Real>() -> T {
    T::exact(1e19).ln()
}

/// `8 pi`.
pub(crate) fn eight_pi<T: Real>() -> T {
    T::exact(8.0) * T::pi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::DdInterval;

    #[test]
    fn log_point_basics() {
        let p = LogPoint::from_x(1e6_f64);
        assert!((p.l - 6.0 * 10f64.ln()).abs() < 1e-12);
        assert!((p.ll - p.l.ln()).abs() < 1e-15);
        assert!((p.sqrt_x() - 1000.0).abs() < 1e-9);
        assert!((p.inv_sqrt_x() - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn huge_x_stays_finite() {
        let p = LogPoint::new(Interval::point(40_000.0));
        assert_eq!(p.inv_sqrt_x().lo, 0.0);
        assert!(p.u().hi < 1e-300);
        assert!(p.ll.contains(40_000f64.ln()));
        let d = LogPoint::new(DdInterval::exact(40_000.0));
        assert!(d.u().upper() < 1e-290);
    }
}
