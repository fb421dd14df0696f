//! Double-double ("software extended") arithmetic, about 106 mantissa bits.
//!
//! Used where a point must be re-evaluated beyond binary64 precision. The
//! elementary functions target a relative error near 2^-100; callers that
//! need certified enclosures go through [`super::DdInterval`], which widens
//! every result by a margin well above that.

use super::eft::{fast_two_sum, two_prod, two_sum};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const DD_PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
pub const DD_TWO_PI: Dd = Dd { hi: std::f64::consts::TAU, lo: 2.4492935982947064e-16 };
pub const DD_LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
const LN2_LO2: f64 = 5.707708438416212e-34;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    fn from_pair(hi: f64, lo: f64) -> Self {
        let (hi, lo) = fast_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Multiply by an exact power of two.
    pub fn ldexp(self, k: i32) -> Self {
        let s = pow2(k);
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn from_i64(v: i64) -> Self {
        let hi = v as f64;
        let lo = (v - hi as i64) as f64;
        Dd::from_pair(hi, lo)
    }

    /// Parse a plain decimal literal such as `"-1.93378e-8"` or `"16.2106480369"`.
    pub fn parse(lit: &str) -> Option<Self> {
        let lit = lit.trim();
        let (neg, body) = match lit.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, lit.strip_prefix('+').unwrap_or(lit)),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let mut acc = Dd::ZERO;
        let ten = Dd::new(10.0);
        for c in int_part.chars().chain(frac_part.chars()) {
            let d = c.to_digit(10)? as f64;
            acc = acc * ten + Dd::new(d);
        }
        let e10 = exp - frac_part.len() as i32;
        let scaled = match e10.cmp(&0) {
            Ordering::Equal => acc,
            Ordering::Greater => acc * pow10(e10 as u32),
            Ordering::Less => acc / pow10((-e10) as u32),
        };
        Some(if neg { -scaled } else { scaled })
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::new(f64::NAN) };
        }
        let y = self.hi.sqrt();
        let yy = Dd::new(y) * Dd::new(y);
        let corr = (self - yy).hi / (2.0 * y);
        Dd::from_pair(y, corr)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / DD_LN2.hi).round();
        let (p1, e1) = two_prod(k, DD_LN2.hi);
        let (p2, e2) = two_prod(k, DD_LN2.lo);
        let r = self - Dd::from_pair(p1, e1) - Dd::from_pair(p2, e2) - Dd::new(k * LN2_LO2);
        // expm1 on r / 2^10, then s <- s(s + 2) undoes the halvings
        let r = r.ldexp(-10);
        let mut term = r;
        let mut s = r;
        for n in 2..=14 {
            term = term * r / Dd::new(n as f64);
            s = s + term;
            if term.hi.abs() < 1e-40 {
                break;
            }
        }
        for _ in 0..10 {
            s = s * (s + Dd::new(2.0));
        }
        let sum = Dd::ONE + s;
        let k = k as i32;
        // split the scaling to stay clear of overflow in pow2
        sum.ldexp(k / 2).ldexp(k - k / 2)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::new(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        let mut y = Dd::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// ln(1 + self); accurate for small arguments because 1 + x is formed exactly.
    pub fn ln_1p(self) -> Self {
        if self.hi.abs() < 1e-6 {
            // Taylor series avoids cancellation entirely for tiny x
            let mut sum = Dd::ZERO;
            let mut pow = self;
            for n in 1..=12 {
                let t = pow / Dd::new(n as f64);
                sum = if n % 2 == 1 { sum + t } else { sum - t };
                pow = pow * self;
            }
            return sum;
        }
        (Dd::ONE + self).ln()
    }

    /// Reduce into [-pi, pi].
    pub fn rem_two_pi(self) -> Self {
        let k = (self / DD_TWO_PI).hi.round();
        // DD_TWO_PI carries ~107 bits, so for |k| < 2^40 the product is good to ~2^-65 absolute
        self - DD_TWO_PI * Dd::new(k)
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other {
            self
        } else {
            other
        }
    }
}

fn pow2(k: i32) -> f64 {
    f64::from_bits(((k + 1023).clamp(1, 2046) as u64) << 52)
}

fn pow10(e: u32) -> Dd {
    let mut r = Dd::ONE;
    let mut b = Dd::new(10.0);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b;
        }
        b = b * b;
        e >>= 1;
    }
    r
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        Dd::from_pair(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (s, e) = fast_two_sum(q1, q2);
        Dd::from_pair(s, e + q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Dd, b: Dd) -> f64 {
        ((a - b).to_f64() / b.to_f64()).abs()
    }

    #[test]
    fn parse_and_roundtrip() {
        let v = Dd::parse("16.2106480369").unwrap();
        assert_eq!(v.to_f64(), 16.2106480369);
        let w = Dd::parse("1.93378e-8").unwrap();
        assert_eq!(w.to_f64(), 1.93378e-8);
        assert_eq!(Dd::parse("-3").unwrap().to_f64(), -3.0);
        assert!(Dd::parse("abc").is_none());
        // 0.1 is not a double; the DD value carries the next 53 bits
        let tenth = Dd::parse("0.1").unwrap();
        assert!(((tenth * Dd::new(10.0)) - Dd::ONE).to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_inverse() {
        for &v in &[1e-10, 0.5, 1.0, 2.0, 10.0, 700.0, 30_000.0] {
            let x = Dd::new(v);
            assert!(rel(x.ln().exp(), x) < 1e-29, "v={v}");
        }
        for &v in &[-50.0, -1.0, 0.3, 1.0, 100.0] {
            let x = Dd::new(v);
            let back = x.exp().ln();
            assert!((back - x).to_f64().abs() < 1e-29 * v.abs().max(1.0), "v={v}");
        }
    }

    #[test]
    fn known_constants() {
        // e and ln 10 to 32 digits
        let e = Dd::ONE.exp();
        let e_ref = Dd::parse("2.7182818284590452353602874713527").unwrap();
        assert!(rel(e, e_ref) < 1e-30);
        let ln10 = Dd::new(10.0).ln();
        let ln10_ref = Dd::parse("2.3025850929940456840179914546844").unwrap();
        assert!(rel(ln10, ln10_ref) < 1e-30);
        let pi_ref = Dd::parse("3.1415926535897932384626433832795").unwrap();
        assert!(rel(DD_PI, pi_ref) < 1e-31);
        assert!(rel(DD_LN2, Dd::new(2.0).ln()) < 1e-31);
    }

    #[test]
    fn sqrt_and_div() {
        let two = Dd::new(2.0);
        let r = two.sqrt();
        assert!(((r * r) - two).to_f64().abs() < 1e-31);
        let third = Dd::ONE / Dd::new(3.0);
        assert!(((third * Dd::new(3.0)) - Dd::ONE).to_f64().abs() < 1e-31);
    }

    #[test]
    fn ln_1p_small() {
        let x = Dd::new(1e-12);
        let v = x.ln_1p();
        // ln(1+x) = x - x^2/2 + ...
        let expect = x - x * x / Dd::new(2.0) + x * x * x / Dd::new(3.0);
        assert!(rel(v, expect) < 1e-30);
    }

    #[test]
    fn rem_two_pi_large_argument() {
        // 74920.8274989942 * ln(1e6): reduce and compare with f64 cos only loosely,
        // but check the reduced value lies in range and reproduces the argument.
        let g = Dd::new(74_920.827_498_994_2);
        let phase = g * Dd::new(1e6).ln();
        let r = phase.rem_two_pi();
        assert!(r.hi.abs() <= std::f64::consts::PI + 1e-12);
        let k = ((phase - r) / DD_TWO_PI).to_f64();
        assert!((k - k.round()).abs() < 1e-20);
    }
}
