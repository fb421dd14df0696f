//! Zero-counting envelope, the Skewes tail bound and Lehman's lemma.

use super::constants as k;
use super::LogPoint;
use crate::numeric::Real;

/// `T/(2pi) log(T/(2 pi e)) + 7/8`, the smooth approximation to `N(T)`.
pub fn nt_main<T: Real>(t: T) -> T {
    let tp = T::two_pi();
    t / tp * ((t / tp).ln() - T::exact(1.0)) + T::exact(0.875)
}

/// `R(T) = min{0.28 log T, 0.1038 log T + 0.2573 log log T + 9.3675}`.
pub fn nt_envelope<T: Real>(p: &LogPoint<T>) -> T {
    let a = k::NT_A.real::<T>() * p.l;
    let b = k::NT_B.real::<T>() * p.l + k::NT_C.real::<T>() * p.ll + k::NT_D.real();
    a.min(b)
}

/// `T log T / (2 pi)`, the crude upper bound for `N(T)`.
pub fn nt_crude_bound<T: Real>(t: T) -> T {
    t * t.ln() / T::two_pi()
}

/// `log T / (pi T)`, bounding the sum of `1/gamma^2` over `|gamma| >= T`.
pub fn skewes_tail<T: Real>(p: &LogPoint<T>) -> T {
    p.l * (-p.l).exp() / T::pi()
}

/// Test functions for Lehman's lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LehmanPhi {
    One,
    Reciprocal,
}

/// Right-hand side of Lehman's lemma on `(U, V]`, in closed form.
///
/// Returns `(finite, printed)`: `printed` takes the last integral to
/// infinity as stated, `finite` stops it at `V`. For `phi = 1` the printed
/// form is infinite.
pub fn lehman_rhs<T: Real>(phi: LehmanPhi, u: T, v: T) -> (T, T) {
    let n = T::exact;
    let tp = T::two_pi();
    match phi {
        LehmanPhi::One => {
            let anti = |t: T| t * ((t / tp).ln() - n(1.0));
            let base = (anti(v) - anti(u)) / tp + n(4.0) * u.ln();
            (base + n(2.0) * (v / u).ln(), n(f64::INFINITY))
        }
        LehmanPhi::Reciprocal => {
            let lv = (v / tp).ln();
            let lu = (u / tp).ln();
            let base = (lv.sqr() - lu.sqr()) / (n(2.0) * tp) + n(4.0) * u.ln() / u;
            (base + n(2.0) * (n(1.0) / u - n(1.0) / v), base + n(2.0) / u)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_term_near_first_zero() {
        let m = nt_main(14.0_f64);
        assert!((m - (0.875 - 0.4428)).abs() < 1e-3, "{m}");
        let r = nt_envelope(&LogPoint::from_x(14.0_f64));
        assert!((r - 0.28 * 14f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn envelope_switches_branch() {
        // the second branch wins for very large T
        let p = LogPoint::new(1000.0_f64);
        assert!(nt_envelope(&p) < 0.28 * 1000.0);
    }

    #[test]
    fn skewes_value() {
        let v = skewes_tail(&LogPoint::from_x(1000.0_f64));
        assert!((v - 2.199e-3).abs() < 1e-6);
    }

    #[test]
    fn lehman_forms() {
        let u = std::f64::consts::TAU * std::f64::consts::E;
        let (f, p) = lehman_rhs(LehmanPhi::Reciprocal, u, 1e5);
        assert!(f < p);
        let (f1, p1) = lehman_rhs(LehmanPhi::One, u, 1e5);
        assert!(f1.is_finite() && p1.is_infinite());
    }
}
