//! Tail integrals and the Mertens-product chain.
//!
//! All quantities here decay like `x^(-1/2)`, so they are returned
//! multiplied by `sqrt(x)` (the registry's `TimesSqrtX` normalization).

use super::constants as k;
use super::{eight_pi, log_1e19, LogPoint};
use crate::numeric::Real;

/// `sqrt(x) * int_x^inf (log t)^j t^(-3/2) dt`, a polynomial in `log x`:
/// `P_0 = 2`, `P_j = 2 (log x)^j + 2 j P_(j-1)`.
pub fn log_power_tail<T: Real>(j: u32, l: T) -> T {
    let mut p = T::exact(2.0);
    let mut lj = T::exact(1.0);
    for i in 1..=j {
        lj = lj * l;
        p = T::exact(2.0) * lj + T::exact(2.0 * i as f64) * p;
    }
    p
}

/// `Theta0(x) = 1.02 / ((x - 1) log x)`, absolute.
pub fn theta0<T: Real>(p: &LogPoint<T>) -> T {
    let e = (-p.l).exp();
    k::THETA0_C.real::<T>() * e / ((T::exact(1.0) - e) * p.l)
}

/// `sqrt(x) R(x)` with the given shift in the `x >= 10^19` branch.
/// An argument straddling `10^19` takes the larger branch.
pub(crate) fn rcal_normalized<T: Real>(p: &LogPoint<T>, shift: T) -> T {
    let low = k::RCAL_MIDC.real::<T>() * p.l / eight_pi();
    let high = (T::exact(3.0) * (p.l - shift) + T::exact(4.0)) / eight_pi();
    let cut: T = log_1e19();
    if p.l.upper() < cut.lower() {
        low
    } else if p.l.lower() >= cut.upper() {
        high
    } else {
        low.max(high)
    }
}

/// Everything the Corollary 1 arguments evaluate, multiplied by `sqrt(x)`
/// unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryTails<T> {
    /// `int_x^inf log t (log t - c)/(8 pi t^(3/2)) dt`, `c = 3.77847`
    pub moi1_tail: T,
    /// first term plus tail, from the closed forms
    pub moi1_chain: T,
    /// `(3 (log x)^2 - 3.33541 log x + 0.88612)/(8 pi)` as printed
    pub moi1_chain_printed: T,
    /// coefficients of `8 pi sqrt(x)` times the chain as a polynomial in
    /// `log x`, read off the closed form by finite differences
    pub moi1_quad: T,
    pub moi1_lin: T,
    pub moi1_const: T,
    pub moi1_rhs: T,
    /// `(3 * 1.95 * 8 pi + 2.2 (log x)^2)/(8 pi)`, the middle-range bound
    pub moi1_mid: T,
    /// `P_2(log 10^19)/(log 10^19)^2`, which the middle range needs below 2.2 (absolute)
    pub moi1_mid_coeff: T,
    /// `(3 (log x - c) + 2 (2 - (c - 1)/log x))/(8 pi)`
    pub moi2_chain: T,
    /// `(3.16 * 1.95 * 8 pi/(log x)^2 + 2.14) log x/(8 pi)`
    pub moi2_mid: T,
    /// `3.16 * 1.95 * 8 pi/(log x)^2 + 2.14`, needed below 2.95139 (absolute)
    pub moi2_mid_coeff: T,
    /// `(log x + 1)/log x`, needed below 1.08 (absolute)
    pub moi2_ratio: T,
    /// `2 (log 10^19 + 3)/log 10^19`, needed below 2.14 (absolute)
    pub moi2_far_coeff: T,
    pub moi2_rhs: T,
    pub theta0: T,
    /// `R(x)` with the printed shift 3.37784
    pub rcal: T,
    /// `R(x)` with `log log 10^19 = 3.77847` in the shift
    pub rcal_alt: T,
    /// `Theta0 + R + 0.501 (Theta0 + R)^2`
    pub product_chain: T,
    pub product_chain_alt: T,
    /// Upper bound for `(e^v - 1 - v)/v^2` at `v = Theta0 + R` (absolute); at most 0.501 for the exponential step
    pub exp_chain_ratio: T,
    pub product_rhs: T,
}

pub fn corollary_tails<T: Real>(p: &LogPoint<T>) -> CorollaryTails<T> {
    let n = T::exact;
    let l = p.l;
    let e8 = eight_pi::<T>();
    let c: T = k::LOGLOG_1E19.real();
    let b95: T = k::BUTHE_THETA_C.real();
    let p1 = log_power_tail(1, l);
    let p2 = log_power_tail(2, l);
    let moi1_tail = (p2 - c * p1) / e8;
    let q = |m: f64| {
        let m = n(m);
        m * (m - c) + log_power_tail(2, m) - c * log_power_tail(1, m)
    };
    let (q1, q2, q3) = (q(1.0), q(2.0), q(3.0));
    let moi1_quad = (q3 - n(2.0) * q2 + q1) / n(2.0);
    let moi1_lin = q2 - q1 - n(3.0) * moi1_quad;
    let moi1_const = q1 - moi1_quad - moi1_lin;
    let l19: T = log_1e19();

    let theta0_n = theta0(p) * p.sqrt_x();
    let rcal = rcal_normalized(p, k::RCAL_SHIFT.real());
    let rcal_alt = rcal_normalized(p, c);
    let inv = p.inv_sqrt_x();
    let chain = |r: T| {
        let v = theta0_n + r;
        v + k::EXP_CHAIN_C.real::<T>() * v.sqr() * inv
    };
    let v_abs = (theta0_n + rcal.max(rcal_alt)) * inv;
    let moi2_mid_coeff = k::MOI2_MID_C.real::<T>() * b95 * e8 / l.sqr() + k::MOI2_MID_B.real();

    CorollaryTails {
        moi1_tail,
        moi1_chain: l * (l - c) / e8 + moi1_tail,
        moi1_chain_printed: (n(3.0) * l.sqr() - k::MOI1_LIN.real::<T>() * l + k::MOI1_CONST.real()) / e8,
        moi1_quad,
        moi1_lin,
        moi1_const,
        moi1_rhs: n(3.0) * l.sqr() / e8,
        moi1_mid: (n(3.0) * b95 * e8 + k::MOI1_MID.real::<T>() * l.sqr()) / e8,
        moi1_mid_coeff: log_power_tail(2, l19) / l19.sqr(),
        moi2_chain: (n(3.0) * (l - c) + n(2.0) * (n(2.0) - (c - n(1.0)) / l)) / e8,
        moi2_mid: moi2_mid_coeff * l / e8,
        moi2_mid_coeff,
        moi2_ratio: (l + n(1.0)) / l,
        moi2_far_coeff: (log_power_tail(1, l19) + log_power_tail(0, l19)) / l19,
        moi2_rhs: n(3.0) * l / e8,
        theta0: theta0_n,
        rcal,
        rcal_alt,
        product_chain: chain(rcal),
        product_chain_alt: chain(rcal_alt),
        exp_chain_ratio: n(0.5) + v_abs * v_abs.exp() / n(6.0),
        product_rhs: n(3.0) * l / e8,
    }
}
