//! The smoothed explicit-formula bound for `x >= 10^19` and the sufficient
//! condition derived from it.

use super::constants as k;
use super::LogPoint;
use crate::numeric::Real;
use serde::Serialize;

/// `log T0(x)` and, when it fits in a double, `T0(x)` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T0Value<T> {
    pub log_t0: T,
    pub t0: Option<T>,
}

/// `log T0(x)` with
/// `T0 = pi sqrt(x)/log x * (1 + u)^-1 * ((1 + 2u)^2 + 1)`, `u = log x/(2 pi sqrt x)`.
pub fn log_t0<T: Real>(p: &LogPoint<T>) -> T {
    let one = T::exact(1.0);
    let u = p.u();
    let s = one + T::exact(2.0) * u;
    T::pi().ln() - p.ll + p.l * T::exact(0.5) - u.ln_1p() + (s.sqr() + one).ln()
}

pub fn t0<T: Real>(p: &LogPoint<T>) -> T0Value<T> {
    let log_t0 = log_t0(p);
    let t0 = (log_t0.upper() < 700.0).then(|| log_t0.exp());
    T0Value { log_t0, t0 }
}

/// `omega1 + (8 log H1 + 4)/H1 - (log(H1/2pi))^2/(2pi)`; negative.
pub fn constant_block<T: Real>() -> T {
    let h1: T = k::H1.real();
    let lh = h1.ln();
    k::OMEGA1.real::<T>() + (T::exact(8.0) * lh + T::exact(4.0)) / h1 - (lh - T::two_pi().ln()).sqr() / T::two_pi()
}

/// `log T0 / (pi T0)` computed from `log T0` alone.
fn skewes_at_t0<T: Real>(log_t0: T) -> T {
    log_t0 * (-log_t0).exp() / T::pi()
}

/// `(log 2pi - log(1 - x^-2)/2)`.
fn log_term<T: Real>(p: &LogPoint<T>) -> T {
    let e2 = (-T::exact(2.0) * p.l).exp();
    T::two_pi().ln() - (-e2).ln_1p() * T::exact(0.5)
}

/// Upper bound for `|psi(x) - x| / x`, `x >= 10^19`.
pub fn smoothed_psi_bound<T: Real>(p: &LogPoint<T>) -> T {
    let one = T::exact(1.0);
    let u = p.u();
    let lt0 = log_t0(p);
    let zeros = (lt0 - T::two_pi().ln()).sqr() / T::two_pi() + skewes_at_t0(lt0) + constant_block();
    u + log_term(p) * (-p.l).exp() + p.inv_sqrt_x() * (one + u) * zeros
}

/// The same bound for `|theta(x) - x| / x`, adding `alpha1/sqrt x + alpha2/x^(2/3)`.
pub fn smoothed_theta_bound<T: Real>(p: &LogPoint<T>) -> T {
    let a1: T = k::ALPHA1.real();
    let a2: T = k::ALPHA2.real();
    smoothed_psi_bound(p) + a1 * p.inv_sqrt_x() + a2 * (-p.l * T::exact(2.0) / T::exact(3.0)).exp()
}

/// `c(x) = 4 (1 + u) (log(T0/2pi)/log x)^2`, the multiplier of `log x` in the
/// sufficient condition `log x - log log x - 4 >= c(x) log x`.
pub fn suffcond_coefficient<T: Real>(p: &LogPoint<T>) -> T {
    let ratio = (log_t0(p) - T::two_pi().ln()) / p.l;
    T::exact(4.0) * (T::exact(1.0) + p.u()) * ratio.sqr()
}

/// `log x - log log x - 4 - coeff log x`; `coeff` defaults to `c(x)`.
pub fn suffcond_margin<T: Real>(p: &LogPoint<T>, coeff: Option<T>) -> T {
    let c = coeff.unwrap_or_else(|| suffcond_coefficient(p));
    p.l - p.ll - T::exact(4.0) - c * p.l
}

/// The residual block that the sufficient condition drops:
/// `(log 2pi - log(1-x^-2)/2) x^(-1/2) (1 + u)^-1 + log T0/(pi T0) + omega1
///  + (8 log H1 + 4)/H1 - (log(H1/2pi))^2/(2pi)`. Must be negative.
pub fn dropped_block<T: Real>(p: &LogPoint<T>) -> T {
    let lt0 = log_t0(p);
    log_term(p) * p.inv_sqrt_x() / (T::exact(1.0) + p.u()) + skewes_at_t0(lt0) + constant_block()
}

/// One row of the printed table of coefficient bounds, in `log x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    /// Left end of the row in `log x`; `None` means `log 10^19`.
    pub l_from: Option<&'static str>,
    pub l_to: &'static str,
    pub coeff: &'static str,
}

/// Rows in increasing `log x`.
pub const PIECEWISE_ROWS: [TableRow; 7] = [
    TableRow { l_from: None, l_to: "63.468", coeff: "0.75553" },
    TableRow { l_from: Some("63.468"), l_to: "151.106", coeff: "0.87158" },
    TableRow { l_from: Some("151.106"), l_to: "394.532", coeff: "0.94032" },
    TableRow { l_from: Some("394.532"), l_to: "1100.338", coeff: "0.97471" },
    TableRow { l_from: Some("1100.338"), l_to: "3220.622", coeff: "0.99000" },
    TableRow { l_from: Some("3220.622"), l_to: "9768.054", coeff: "0.99625" },
    TableRow { l_from: Some("9768.054"), l_to: "30369.582", coeff: "0.99865" },
];

/// The theta proof's extension of the last row.
pub const THETA_EXTENSION_ROW: TableRow =
    TableRow { l_from: Some("30369.582"), l_to: "30456.276", coeff: "0.99865" };

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{log_1e19, lookup};
    use crate::numeric::Interval;

    #[test]
    fn t0_at_1e19() {
        let p = LogPoint::new(log_1e19::<Interval>());
        let v = t0(&p);
        let t = v.t0.unwrap();
        assert!(t.lo > 454_161_776.0, "{t}");
        // direct double evaluation
        let x = 1e19_f64;
        let lx = x.ln();
        let sx = x.sqrt();
        let direct = std::f64::consts::PI * sx / lx / (1.0 + lx / (2.0 * std::f64::consts::PI * sx))
            * ((1.0 + lx / (std::f64::consts::PI * sx)).powi(2) + 1.0);
        assert!(((t.mid() - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn t0_limit_ratio() {
        // T0 log x / (2 pi sqrt x) -> 1
        for &l in &[200.0, 2000.0, 30000.0] {
            let p = LogPoint::new(l);
            let r = log_t0(&p) + p.ll - l / 2.0 - std::f64::consts::TAU.ln();
            assert!(r.abs() < 1e-12, "{l} {r}");
        }
    }

    #[test]
    fn constant_block_is_negative() {
        let b: Interval = constant_block();
        assert!(b.hi < 0.0);
        assert!((b.mid() + 16.24).abs() < 0.01, "{b}");
    }

    #[test]
    fn smoothed_below_thm2_at_1e19() {
        let p = LogPoint::new(log_1e19::<Interval>());
        let s = smoothed_psi_bound(&p);
        // thm2 normalized by sqrt(x); divide by sqrt(x) again for the /x form
        let t = lookup("thm2_psi").unwrap().normalized(&p) * p.inv_sqrt_x();
        assert!(s.hi < t.lo, "{s} vs {t}");
    }

    #[test]
    fn coefficient_values() {
        let c = suffcond_coefficient(&LogPoint::new(Interval::point(63.468)));
        assert!(c.hi <= 0.75553 && c.lo > 0.7545, "{c}");
        let c = suffcond_coefficient(&LogPoint::new(Interval::point(30369.582)));
        assert!(c.hi <= 0.99865 && c.lo > 0.9986, "{c}");
    }

    #[test]
    fn dropped_block_negative() {
        let b = dropped_block(&LogPoint::new(log_1e19::<Interval>()));
        assert!(b.hi < -16.0);
    }
}
