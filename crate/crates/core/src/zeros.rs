//! Tables of zeta-zero ordinates and the sums taken over them.
//!
//! Zeros are stored by positive ordinate only. Under RH every zero is
//! `1/2 + i gamma` and the conjugates are implicit, so a sum over `|gamma|`
//! is twice the sum over the table.
//!
//! Text format: one ordinate per line, ascending; `#` starts a comment and
//! `# precision <abs-error>` declares the per-ordinate accuracy. The binary
//! cache is `"ZTBL"`, a version byte, the count as `u64`, the precision as
//! `f64`, then the ordinates, all little-endian.

use crate::bounds::{
    constants as k, lehman_rhs, nt_envelope, nt_main, skewes_tail, nt_crude_bound, LehmanPhi, LogPoint,
};
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, Dd, Interval, Real};
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

pub const DEFAULT_PRECISION: f64 = 5e-10;
pub const CACHE_MAGIC: &[u8; 4] = b"ZTBL";
pub const CACHE_VERSION: u8 = 1;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    input_precision: f64,
}

impl ZeroTable {
    /// Validate an ordinate list; line numbers in errors are 1-based indices.
    pub fn from_gammas(gammas: Vec<f64>, input_precision: f64) -> Result<Self> {
        if !(input_precision >= 0.0 && input_precision.is_finite()) {
            return Err(Error::InvalidArgument(format!("bad input precision {input_precision}")));
        }
        if gammas.is_empty() {
            return Err(Error::Integrity { line: 0, msg: "table has no zeros".into() });
        }
        for (i, &g) in gammas.iter().enumerate() {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::Integrity { line: i + 1, msg: format!("ordinate {g} is not positive") });
            }
            if i > 0 && g <= gammas[i - 1] {
                return Err(Error::Integrity {
                    line: i + 1,
                    msg: format!("ordinate {g} does not exceed {}", gammas[i - 1]),
                });
            }
        }
        if !(14.13 < gammas[0] && gammas[0] < 14.14) {
            return Err(Error::Integrity {
                line: 1,
                msg: format!("first ordinate {} is not the first zero 14.1347...", gammas[0]),
            });
        }
        Ok(ZeroTable { gammas, input_precision })
    }

    /// Parse the text format. `precision` overrides any header.
    pub fn parse<R: BufRead>(reader: R, precision: Option<f64>) -> Result<Self> {
        let mut header_prec = None;
        let mut gammas = Vec::new();
        let mut lines = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let no = i + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                let mut words = c.split_whitespace();
                if words.next() == Some("precision") {
                    let v = words.next().and_then(|w| w.parse::<f64>().ok());
                    match v {
                        Some(v) if v >= 0.0 && v.is_finite() => header_prec = Some(v),
                        _ => return Err(Error::Parse { line: no, msg: format!("bad precision header `{t}`") }),
                    }
                }
                continue;
            }
            let g: f64 = t
                .parse()
                .map_err(|_| Error::Parse { line: no, msg: format!("not a decimal ordinate: `{t}`") })?;
            gammas.push(g);
            lines.push(no);
        }
        let prec = precision.or(header_prec).unwrap_or(DEFAULT_PRECISION);
        ZeroTable::from_gammas(gammas, prec).map_err(|e| match e {
            Error::Integrity { line, msg } if line > 0 => Error::Integrity { line: lines[line - 1], msg },
            other => other,
        })
    }

    pub fn parse_str(text: &str, precision: Option<f64>) -> Result<Self> {
        Self::parse(text.as_bytes(), precision)
    }

    /// Read a text table or a binary cache, sniffing the magic bytes.
    pub fn ingest(path: impl AsRef<Path>, precision: Option<f64>) -> Result<Self> {
        let bytes = fs::read(path.as_ref())?;
        if bytes.starts_with(CACHE_MAGIC) {
            let mut t = Self::from_cache_bytes(&bytes)?;
            if let Some(p) = precision {
                t.input_precision = p;
            }
            return Ok(t);
        }
        Self::parse(BufReader::new(bytes.as_slice()), precision)
    }

    pub fn to_cache_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(21 + 8 * self.gammas.len());
        out.extend_from_slice(CACHE_MAGIC);
        out.push(CACHE_VERSION);
        out.extend_from_slice(&(self.gammas.len() as u64).to_le_bytes());
        out.extend_from_slice(&self.input_precision.to_le_bytes());
        for g in &self.gammas {
            out.extend_from_slice(&g.to_le_bytes());
        }
        out
    }

    pub fn from_cache_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = bytes;
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic).map_err(|_| Error::Cache("truncated header".into()))?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache("missing ZTBL magic".into()));
        }
        let mut ver = [0u8; 1];
        r.read_exact(&mut ver).map_err(|_| Error::Cache("truncated header".into()))?;
        if ver[0] != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported version {}", ver[0])));
        }
        let mut w = [0u8; 8];
        r.read_exact(&mut w).map_err(|_| Error::Cache("truncated header".into()))?;
        let count = u64::from_le_bytes(w) as usize;
        r.read_exact(&mut w).map_err(|_| Error::Cache("truncated header".into()))?;
        let prec = f64::from_le_bytes(w);
        if r.len() != count.checked_mul(8).ok_or_else(|| Error::Cache("count overflow".into()))? {
            return Err(Error::Cache(format!("payload holds {} bytes, expected {}", r.len(), count * 8)));
        }
        let gammas = r.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        ZeroTable::from_gammas(gammas, prec)
    }

    pub fn write_cache(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = fs::File::create(path)?;
        f.write_all(&self.to_cache_bytes())?;
        Ok(())
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn count(&self) -> usize {
        self.gammas.len()
    }

    pub fn max_height(&self) -> f64 {
        *self.gammas.last().unwrap()
    }

    pub fn input_precision(&self) -> f64 {
        self.input_precision
    }

    fn check_height(&self, t: f64) -> Result<()> {
        if t > self.max_height() || t.is_nan() {
            return Err(Error::Range { requested: t, max_height: self.max_height() });
        }
        Ok(())
    }

    /// Number of tabulated ordinates in `(0, t]`.
    fn upto(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }

    /// `N(T)`, the number of zeros with `0 < gamma <= T`.
    pub fn count_below(&self, t: f64) -> Result<usize> {
        self.check_height(t)?;
        Ok(self.upto(t))
    }

    /// `sum 1/gamma` over `0 < gamma <= T`, doubled for both signs.
    pub fn sum_inv_gamma(&self, t: f64, both_signs: bool) -> Result<ZeroSumResult> {
        self.check_height(t)?;
        let prec = self.input_precision;
        let s = chunked_sum(&self.gammas[..self.upto(t)], |g| {
            let gl = g - prec;
            (1.0 / g, 0.5 * f64::EPSILON / g + prec / (gl * gl))
        });
        let scale = if both_signs { 2.0 } else { 1.0 };
        Ok(ZeroSumResult {
            value: scale * s.value(),
            truncation_height: t,
            term_count: s.count(),
            err_bound: scale * s.err_bound(),
            tail_bound: None,
        })
    }

    /// `sum 1/gamma^2` over `T <= |gamma| <= max_height` (both signs), with
    /// the Skewes bound at `max_height` as the tail.
    pub fn sum_inv_gamma_sq_tail(&self, t: f64) -> Result<ZeroSumResult> {
        if !(t >= 1.0) {
            return Err(Error::InvalidArgument(format!("need T >= 1, got {t}")));
        }
        let h = self.max_height();
        let from = self.gammas.partition_point(|&g| g < t);
        let prec = self.input_precision;
        let s = chunked_sum(&self.gammas[from..], |g| {
            let gl = g - prec;
            let v = 1.0 / (g * g);
            (v, 1.5 * f64::EPSILON * v + 2.0 * prec / (gl * gl * gl))
        });
        let tail = skewes_tail(&LogPoint::from_x(Interval::point(h))).hi;
        Ok(ZeroSumResult {
            value: 2.0 * s.value(),
            truncation_height: h,
            term_count: s.count(),
            err_bound: 2.0 * s.err_bound(),
            tail_bound: Some(tail),
        })
    }

    /// `sum_{|gamma| <= height} x^rho / rho`, a real number.
    pub fn sum_xrho_over_rho(&self, x: f64, height: f64) -> Result<ZeroSumResult> {
        if !(x >= 2.0) {
            return Err(Error::InvalidArgument(format!("need x >= 2, got {x}")));
        }
        self.check_height(height)?;
        let lx = Dd::new(x).ln();
        let lxf = lx.to_f64();
        let prec = self.input_precision;
        let s = chunked_sum(&self.gammas[..self.upto(height)], |g| {
            let (c, sn, perr) = phase(g, lx);
            let den = 0.25 + g * g;
            let v = (0.5 * c + g * sn) / den;
            // |d/dgamma (e^{i gamma log x} / rho)| <= (log x + 1/gamma)/|rho|
            let err = 8.0 * f64::EPSILON * v.abs() + (perr + prec * (lxf + 1.0 / g)) / den.sqrt();
            (v, err)
        });
        let sx = x.sqrt();
        Ok(ZeroSumResult {
            value: 2.0 * sx * s.value(),
            truncation_height: height,
            term_count: s.count(),
            err_bound: 2.0 * sx * s.err_bound() * (1.0 + 4.0 * f64::EPSILON),
            tail_bound: None,
        })
    }

    /// Truncated explicit formula for `psi_1(x)` without the `epsilon(x)` term.
    pub fn explicit_psi1(&self, x: f64, height: f64) -> Result<ExplicitPsi1> {
        if !(x >= 2.0) || x.fract() == 0.0 {
            return Err(Error::InvalidArgument(format!("explicit psi1 needs non-integer x >= 2, got {x}")));
        }
        self.check_height(height)?;
        let lx = Dd::new(x).ln();
        let lxf = lx.to_f64();
        let prec = self.input_precision;
        let s = chunked_sum(&self.gammas[..self.upto(height)], |g| {
            let (c, sn, perr) = phase(g, lx);
            // 1/(rho(rho+1)) = (a - ib)/(a^2 + b^2)
            let a = 0.75 - g * g;
            let b = 2.0 * g;
            let den = a * a + b * b;
            let v = (a * c + b * sn) / den;
            let m = den.sqrt();
            let err = 16.0 * f64::EPSILON * (a.abs() + b) / den + (perr + prec * (lxf + 3.0 / g)) / m;
            (v, err)
        });
        let x15 = x * x.sqrt();
        let zsum = Interval::around(2.0 * x15 * s.value(), 2.0 * x15 * s.err_bound() * (1.0 + 8.0 * f64::EPSILON));
        let xi = Interval::point(x);
        let main = xi * xi / Interval::point(2.0) - xi * Interval::two_pi().ln();
        let total = main - zsum;
        let tail = if height < std::f64::consts::E {
            f64::INFINITY
        } else {
            let hp = LogPoint::from_x(Interval::point(height));
            (Interval::point(x15) * skewes_tail(&hp)).hi
        };
        Ok(ExplicitPsi1 {
            x,
            height,
            value: total.mid(),
            err_bound: total.width() / 2.0 * (1.0 + f64::EPSILON) + f64::MIN_POSITIVE,
            truncation_tail: tail,
            term_count: s.count(),
        })
    }

    /// Check the `N(T)` envelope and the crude bound `N(T) <= T log T/(2 pi)`
    /// for every `T` in `[2 pi, max_height]`.
    ///
    /// Between consecutive zeros `N` is constant and both smooth functions
    /// are increasing, so each gap is checked against its endpoints; gaps are
    /// widened by the input precision.
    pub fn nt_envelope_check(&self) -> NtCheck {
        let prec = self.input_precision;
        let two_pi = Interval::two_pi();
        let h = self.max_height();
        let n = self.gammas.len();
        let gap = |i: usize| -> (f64, f64) {
            let a = if i == 0 { two_pi.lo } else { self.gammas[i - 1] - prec };
            let b = if i == n { h } else { self.gammas[i] + prec };
            (a.max(two_pi.lo), b)
        };
        let results: Vec<(Option<NtViolation>, Option<NtViolation>, f64)> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let (a, b) = gap(i);
                let ia = Interval::point(a);
                let ib = Interval::point(b);
                let ni = Interval::point(i as f64);
                let r = nt_envelope(&LogPoint::from_x(ia));
                let up = nt_main(ib) - ni;
                let down = ni - nt_main(ia);
                let dev = up.hi.max(down.hi);
                let env = (dev > r.lo).then(|| NtViolation { t_lo: a, t_hi: b, count: i, deviation: dev, bound: r.lo });
                let crude_rhs = nt_crude_bound(ia);
                let crude = (ni.hi > crude_rhs.lo).then(|| NtViolation {
                    t_lo: a,
                    t_hi: b,
                    count: i,
                    deviation: ni.hi,
                    bound: crude_rhs.lo,
                });
                (env, crude, r.lo - dev)
            })
            .collect();
        let mut out = NtCheck {
            gaps_checked: results.len(),
            grid_points_checked: 0,
            envelope_violations: vec![],
            crude_violations: vec![],
            min_margin: f64::INFINITY,
        };
        for (e, c, m) in results {
            out.envelope_violations.extend(e);
            out.crude_violations.extend(c);
            out.min_margin = out.min_margin.min(m);
        }
        // the 2 pi k grid, evaluated pointwise as a cross-check of the gap argument
        let mut k = 1.0;
        loop {
            let t = two_pi * Interval::point(k);
            if t.hi > h {
                break;
            }
            let ni = self.upto(t.lo) as f64;
            let dev = (Interval::point(ni) - nt_main(t)).abs();
            let r = nt_envelope(&LogPoint::from_x(t));
            if dev.hi > r.lo {
                out.envelope_violations.push(NtViolation {
                    t_lo: t.lo,
                    t_hi: t.hi,
                    count: ni as usize,
                    deviation: dev.hi,
                    bound: r.lo,
                });
            }
            out.grid_points_checked += 1;
            k += 1.0;
        }
        out
    }

    /// Lehman's inequality on `(2 pi e, max_height]` for `phi = 1` and `1/t`.
    pub fn lehman_check(&self, phi: LehmanPhi) -> LehmanCheck {
        let u = Interval::two_pi() * Interval::point(1.0).exp();
        let v = Interval::point(self.max_height());
        let from = self.gammas.partition_point(|&g| g <= u.hi);
        let prec = self.input_precision;
        let s = match phi {
            LehmanPhi::One => {
                let mut c = CompensatedSum::new();
                c.push((self.gammas.len() - from) as f64, 0.0);
                c
            }
            LehmanPhi::Reciprocal => chunked_sum(&self.gammas[from..], |g| {
                let gl = g - prec;
                (1.0 / g, 0.5 * f64::EPSILON / g + prec / (gl * gl))
            }),
        };
        let lhs = Interval::around(s.value(), s.err_bound());
        let (finite, printed) = lehman_rhs(phi, u, v);
        LehmanCheck {
            phi: match phi {
                LehmanPhi::One => "1",
                LehmanPhi::Reciprocal => "1/t",
            },
            lhs: lhs.hi,
            rhs_finite: finite.lo,
            rhs_printed: printed.lo,
            holds: lhs.hi < finite.lo && lhs.hi < printed.lo,
        }
    }

    /// `2 sum 1/gamma` against the printed value of `omega_1`.
    pub fn omega1_check(&self) -> OmegaCheck {
        let h1 = k::H1.value();
        let omega = Interval::dec(k::OMEGA1.decimal);
        let reach = self.max_height() >= h1;
        let t = if reach { h1 } else { self.max_height() };
        let s = self.sum_inv_gamma(t, true).expect("height within table");
        let status = if reach {
            if (s.value - omega.mid()).abs() + s.err_bound <= 1e-6 {
                OmegaStatus::Reproduced
            } else {
                OmegaStatus::Failed
            }
        } else if s.value + s.err_bound < omega.lo {
            OmegaStatus::DataLimited
        } else {
            OmegaStatus::Failed
        };
        OmegaCheck { sum: s, omega1: omega.mid(), status }
    }
}

/// `cos` and `sin` of `gamma log x` with the phase reduced in double-double,
/// plus a bound on the phase error.
fn phase(g: f64, lx: Dd) -> (f64, f64, f64) {
    let ph = Dd::new(g) * lx;
    let r = ph.rem_two_pi();
    let rf = r.to_f64();
    let (s, c) = rf.sin_cos();
    // reduction error, rounding of rf, and libm error on sin/cos
    let perr = ph.hi.abs() * 1e-29 + 4.0 * f64::EPSILON;
    (c, s, perr)
}

/// Parallel compensated sum merged in chunk order.
fn chunked_sum(gs: &[f64], term: impl Fn(f64) -> (f64, f64) + Sync) -> CompensatedSum {
    let parts: Vec<CompensatedSum> = gs
        .par_chunks(CHUNK)
        .map(|c| {
            let mut s = CompensatedSum::new();
            for &g in c {
                let (v, e) = term(g);
                s.push(v, e);
            }
            s
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in &parts {
        total.merge(p);
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroSumResult {
    pub value: f64,
    pub truncation_height: f64,
    pub term_count: u64,
    pub err_bound: f64,
    pub tail_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplicitPsi1 {
    pub x: f64,
    pub height: f64,
    pub value: f64,
    pub err_bound: f64,
    pub truncation_tail: f64,
    pub term_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NtViolation {
    pub t_lo: f64,
    pub t_hi: f64,
    pub count: usize,
    pub deviation: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NtCheck {
    pub gaps_checked: usize,
    pub grid_points_checked: usize,
    pub envelope_violations: Vec<NtViolation>,
    pub crude_violations: Vec<NtViolation>,
    pub min_margin: f64,
}

impl NtCheck {
    pub fn passed(&self) -> bool {
        self.envelope_violations.is_empty() && self.crude_violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LehmanCheck {
    pub phi: &'static str,
    pub lhs: f64,
    pub rhs_finite: f64,
    pub rhs_printed: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaStatus {
    Reproduced,
    DataLimited,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaCheck {
    pub sum: ZeroSumResult,
    pub omega1: f64,
    pub status: OmegaStatus,
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n";

    #[test]
    fn parse_examples() {
        let t = ZeroTable::parse_str("14.134725142\n21.022039639\n", None).unwrap();
        assert_eq!(t.count(), 2);
        assert_eq!(t.input_precision(), DEFAULT_PRECISION);
        assert!(ZeroTable::parse_str("", None).is_err());
        assert!(ZeroTable::parse_str("# only a comment\n", None).is_err());
        match ZeroTable::parse_str("14.134725142\n# c\n21.0\n20.0\n", None) {
            Err(Error::Integrity { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match ZeroTable::parse_str("14.134725142\nabc\n", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(ZeroTable::parse_str("-1\n", None).is_err());
    }

    #[test]
    fn precision_header_and_override() {
        let t = ZeroTable::parse_str("# precision 1e-6\n14.134725142\n", None).unwrap();
        assert_eq!(t.input_precision(), 1e-6);
        let t = ZeroTable::parse_str("# precision 1e-6\n14.134725142\n", Some(1e-3)).unwrap();
        assert_eq!(t.input_precision(), 1e-3);
        assert!(ZeroTable::parse_str("# precision x\n14.134725142\n", None).is_err());
    }

    #[test]
    fn cache_roundtrip() {
        let t = ZeroTable::parse_str(FIRST, Some(1e-9)).unwrap();
        let b = t.to_cache_bytes();
        assert_eq!(&b[..4], b"ZTBL");
        assert_eq!(ZeroTable::from_cache_bytes(&b).unwrap(), t);
        assert!(ZeroTable::from_cache_bytes(&b[..b.len() - 1]).is_err());
        let mut bad = b.clone();
        bad[4] = 9;
        assert!(ZeroTable::from_cache_bytes(&bad).is_err());
    }

    #[test]
    fn counts_and_ranges() {
        let t = ZeroTable::parse_str(FIRST, None).unwrap();
        assert_eq!(t.count_below(14.0).unwrap(), 0);
        assert_eq!(t.count_below(25.010857580).unwrap(), 3);
        assert_eq!(t.count_below(t.max_height()).unwrap(), t.count());
        assert!(matches!(t.count_below(40.0), Err(Error::Range { .. })));
        assert_eq!(t.sum_inv_gamma(14.0, true).unwrap().value, 0.0);
    }

    #[test]
    fn conjugate_symmetry() {
        let t = ZeroTable::parse_str(FIRST, None).unwrap();
        let one = t.sum_inv_gamma(t.max_height(), false).unwrap();
        let two = t.sum_inv_gamma(t.max_height(), true).unwrap();
        assert_eq!(two.value, 2.0 * one.value);
    }

    #[test]
    fn xrho_matches_naive() {
        let t = ZeroTable::parse_str(FIRST, None).unwrap();
        let r = t.sum_xrho_over_rho(4.0, t.max_height()).unwrap();
        let mut naive = 0.0;
        for &g in t.gammas() {
            let ph = g * 4f64.ln();
            let re = (0.5 * ph.cos() + g * ph.sin()) / (0.25 + g * g);
            naive += 2.0 * 2.0 * re;
        }
        assert!((r.value - naive).abs() < 1e-12, "{} {naive}", r.value);
        assert_eq!(t.sum_xrho_over_rho(4.0, 14.0).unwrap().value, 0.0);
    }

    #[test]
    fn explicit_rejects_integers() {
        let t = ZeroTable::parse_str(FIRST, None).unwrap();
        assert!(t.explicit_psi1(100.0, 30.0).is_err());
        let e = t.explicit_psi1(2.5, 14.0).unwrap();
        let main = 2.5 * 2.5 / 2.0 - 2.5 * std::f64::consts::TAU.ln();
        assert!((e.value - main).abs() < 1e-12);
        assert!(e.truncation_tail > 2.5f64.powf(1.5) * 0.0462);
    }
}
