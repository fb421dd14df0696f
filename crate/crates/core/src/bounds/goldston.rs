//! The explicit Goldston argument: per-term bound on `w_rho`, the
//! consolidation into `x/(2y) + 1.465 sqrt(x) log y`, and the truncated
//! zero-sum bound with its `log log x` coefficient.

use super::constants as k;
use super::LogPoint;
use crate::numeric::Real;

/// Intermediate quantities of the argument at `(x, y)`, each divided by `sqrt(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldstonChain<T> {
    /// `(2.6 + 2(1 + 1/y)^(3/2)) log y/pi + 2.6 (log(y/2pi))^2/(pi y)`
    pub short_sum_rhs: T,
    /// `sqrt(x)/(2y) + short_sum_rhs + 2.84/sqrt(x)`
    pub unconsolidated: T,
    /// `sqrt(x)/(2y) + 1.465 log y`
    pub consolidated: T,
    /// `(short_sum_rhs + 2.84/sqrt(x)) / log y`; the consolidation holds iff this is at most 1.465.
    pub consolidation_coeff: T,
    /// `log x/(2pi) (log x/4 - log log x)`
    pub zero_sum_rhs: T,
    /// `(log(sqrt(x)/(2 pi log x)))^2`
    pub zero_sum_square: T,
    /// `log x (log x/4 - log log x)`
    pub zero_sum_square_bound: T,
}

pub fn goldston_chain<T: Real>(p: &LogPoint<T>, y: T) -> GoldstonChain<T> {
    let n = T::exact;
    let gc: T = k::GOLDSTON_C.real();
    let ly = y.ln();
    let grow = ((n(1.0) / y).ln_1p() * n(1.5)).exp();
    let short_sum_rhs =
        (gc + n(2.0) * grow) * ly / T::pi() + gc * (ly - T::two_pi().ln()).sqr() / (T::pi() * y);
    let add = k::CONSOLIDATION_ADD.real::<T>() * p.inv_sqrt_x();
    let half = p.sqrt_x() / (n(2.0) * y);
    let q = p.l / n(4.0) - p.ll;
    GoldstonChain {
        short_sum_rhs,
        unconsolidated: half + short_sum_rhs + add,
        consolidated: half + k::CONSOLIDATION_C.real::<T>() * ly,
        consolidation_coeff: (short_sum_rhs + add) / ly,
        zero_sum_rhs: p.l / T::two_pi() * q,
        zero_sum_square: (p.l * n(0.5) - T::two_pi().ln() - p.ll).sqr(),
        zero_sum_square_bound: p.l * q,
    }
}

/// `1 + log 2pi / log log x - (log(2pi log x))^2/(log x log log x)`
pub fn loglog_coefficient<T: Real>(p: &LogPoint<T>) -> T {
    let a = T::two_pi().ln();
    T::exact(1.0) + a / p.ll - (a + p.ll).sqr() / (p.l * p.ll)
}

/// Derivative of [`loglog_coefficient`] with respect to `log x`.
pub fn loglog_coefficient_slope<T: Real>(p: &LogPoint<T>) -> T {
    let a = T::two_pi().ln();
    let m = p.ll;
    let s = a + m;
    let g = s * (s * (m + T::exact(1.0)) - T::exact(2.0) * m) - a * p.l;
    g / (p.l * m).sqr()
}

#[derive(Debug, Clone, Copy)]
struct C {
    re: f64,
    im: f64,
}

impl C {
    fn add(self, o: C) -> C {
        C { re: self.re + o.re, im: self.im + o.im }
    }
    fn mul(self, o: C) -> C {
        C { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
    fn scale(self, s: f64) -> C {
        C { re: self.re * s, im: self.im * s }
    }
    fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn exp(self) -> C {
        let m = self.re.exp();
        C { re: m * self.im.cos(), im: m * self.im.sin() }
    }
}

/// `e^w - 1 - w` without cancellation for small `|w|`.
fn exp_m1_m_id(w: C) -> C {
    if w.norm() < 0.5 {
        let mut term = w.mul(w).scale(0.5);
        let mut sum = term;
        for j in 3..40 {
            term = term.mul(w).scale(1.0 / j as f64);
            sum = sum.add(term);
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        let e = w.exp();
        C { re: e.re - 1.0 - w.re, im: e.im - w.im }
    }
}

/// `log(1 + u) - u`.
fn log1p_minus_id(u: f64) -> f64 {
    if u.abs() < 1e-3 {
        let mut pow = u * u;
        let mut sum = 0.0;
        for j in 2..20 {
            let t = pow / j as f64;
            sum += if j % 2 == 0 { -t } else { t };
            pow *= u;
        }
        sum
    } else {
        u.ln_1p() - u
    }
}

/// `(|w_rho| / sqrt(x), 2.6 u (1 + 2/|rho|))` for `rho = 1/2 + i gamma` and `u = h/x`.
pub fn w_rho(gamma: f64, u: f64) -> (f64, f64) {
    let s = C { re: 1.5, im: gamma };
    let rho_norm = 0.5f64.hypot(gamma);
    let w = s.scale(u.ln_1p());
    // (1+u)^s - 1 - s u = (e^w - 1 - w) + s (log(1+u) - u)
    let f = exp_m1_m_id(w).add(s.scale(log1p_minus_id(u)));
    let lhs = f.norm() / (u * rho_norm * s.norm());
    let rhs = k::GOLDSTON_C.value() * u * (1.0 + 2.0 / rho_norm);
    (lhs, rhs)
}

/// Whether `|w_rho| <= 2.6 h/sqrt(x) (1 + 2/|rho|)` at `(gamma, u = h/x)`.
pub fn w_rho_bound_check(gamma: f64, u: f64) -> bool {
    let (lhs, rhs) = w_rho(gamma, u);
    lhs <= rhs
}
