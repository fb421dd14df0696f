//! Named bound specifications.

use super::constants as k;
use super::{eight_pi, smoothed, zero_density, LogPoint};
use crate::numeric::Real;
use serde::Serialize;
use std::collections::BTreeMap;

/// What the bound controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `|psi(x) - x|`
    PsiDeviation,
    /// `|theta(x) - x|`
    ThetaDeviation,
    /// `|sum log p / p - log x - E|`
    MertensLogp,
    /// `|sum 1/p - log log x - B|`
    MertensRecip,
    /// `|e^C log x prod (1 - 1/p) - 1|`
    MertensProd,
    /// `|e^-C / log x prod (1 - 1/p)^-1 - 1|`
    MertensProdInv,
    Auxiliary,
}

/// How [`BoundSpec::normalized`] relates to the bound itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// normalized = bound / sqrt(x)
    PerSqrtX,
    /// normalized = bound * sqrt(x)
    TimesSqrtX,
    /// normalized = bound / x
    PerX,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    SchoenfeldA,
    SchoenfeldB,
    SchoenfeldC,
    Thm1,
    Thm2Psi,
    Thm2Theta,
    ButhePsi,
    ButheTheta,
    Moi1,
    Moi2,
    Moi3,
    Moi4,
    /// `R(T)`, argument is `T`
    NtEnvelope,
    /// `log T / (pi T)`, argument is `T`
    SkewesTail,
    /// `1.02 / ((x - 1) log x)`
    Theta0,
    /// Mertens-sum error used for the product bounds
    Rcal,
    /// smoothed-formula bound on `|psi(x) - x| / x`
    Smoothed,
}

/// Claim-bound ids in registry order.
pub const CLAIM_IDS: [&str; 12] = [
    "schoenfeld_a",
    "schoenfeld_b",
    "schoenfeld_c",
    "thm1",
    "thm2_psi",
    "thm2_theta",
    "buthe_psi",
    "buthe_theta",
    "moi_1",
    "moi_2",
    "moi_3",
    "moi_4",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSpec {
    pub id: &'static str,
    #[serde(skip)]
    pub which: BoundId,
    pub kind: BoundKind,
    pub normalization: Normalization,
    /// Smallest `x` for which the bound is claimed.
    pub validity_from: f64,
    /// Largest `x` for which the bound is claimed, if limited.
    pub validity_to: Option<f64>,
    /// The threshold literal as printed.
    pub threshold_literal: &'static str,
    pub statement: &'static str,
}

impl BoundSpec {
    /// Normalized right-hand side (see [`Normalization`]).
    pub fn normalized<T: Real>(&self, p: &LogPoint<T>) -> T {
        normalized(self.which, p)
    }

    /// The bound itself at `p`. May overflow for large `x`; use
    /// [`normalized`](Self::normalized) there.
    pub fn absolute<T: Real>(&self, p: &LogPoint<T>) -> T {
        let v = self.normalized(p);
        match self.normalization {
            Normalization::PerSqrtX => v * p.sqrt_x(),
            Normalization::TimesSqrtX => v * p.inv_sqrt_x(),
            Normalization::PerX => v * p.l.exp(),
            Normalization::Absolute => v,
        }
    }

    /// The bound at `x` given directly (desk scale).
    pub fn at_x<T: Real>(&self, x: T) -> T {
        let p = LogPoint::from_x(x);
        let v = self.normalized(&p);
        match self.normalization {
            Normalization::PerSqrtX => v * x.sqrt(),
            Normalization::TimesSqrtX => v / x.sqrt(),
            Normalization::PerX => v * x,
            Normalization::Absolute => v,
        }
    }

    pub fn is_claim(&self) -> bool {
        self.kind != BoundKind::Auxiliary
    }

    /// Whether `x` lies in the claimed validity range.
    pub fn valid_at(&self, x: f64) -> bool {
        x >= self.validity_from && self.validity_to.map_or(true, |t| x <= t)
    }
}

fn normalized<T: Real>(id: BoundId, p: &LogPoint<T>) -> T {
    let c = |s: &str| T::dec(s);
    let n = T::exact;
    let l = p.l;
    let ll = p.ll;
    match id {
        BoundId::SchoenfeldA => l * (l / eight_pi() + n(2.0)),
        BoundId::SchoenfeldB => l.sqr() / eight_pi(),
        BoundId::SchoenfeldC => l * (l - n(2.0)) / eight_pi(),
        BoundId::Thm1 => {
            let coeff = n(1.0) / T::two_pi() + k::CONSOLIDATION_C.real::<T>() / l;
            l * (l / eight_pi() - coeff * ll + k::THM1_C.real())
        }
        BoundId::Thm2Psi | BoundId::Thm2Theta => l * (l - ll) / eight_pi(),
        BoundId::ButhePsi => k::BUTHE_PSI_C.real(),
        BoundId::ButheTheta => k::BUTHE_THETA_C.real(),
        BoundId::Moi1 => n(3.0) * l.sqr() / eight_pi(),
        BoundId::Moi2 | BoundId::Moi3 | BoundId::Moi4 => n(3.0) * l / eight_pi(),
        BoundId::NtEnvelope => zero_density::nt_envelope(p),
        BoundId::SkewesTail => zero_density::skewes_tail(p),
        BoundId::Theta0 => super::tails::theta0(p),
        BoundId::Rcal => super::tails::rcal_normalized(p, c(k::RCAL_SHIFT.decimal)),
        BoundId::Smoothed => smoothed::smoothed_psi_bound(p),
    }
}

const fn claim(
    id: &'static str,
    which: BoundId,
    kind: BoundKind,
    normalization: Normalization,
    validity_from: f64,
    validity_to: Option<f64>,
    threshold_literal: &'static str,
    statement: &'static str,
) -> BoundSpec {
    BoundSpec { id, which, kind, normalization, validity_from, validity_to, threshold_literal, statement }
}

use BoundKind as K;
use Normalization as N;

const SPECS: [BoundSpec; 17] = [
    claim("schoenfeld_a", BoundId::SchoenfeldA, K::PsiDeviation, N::PerSqrtX, 2.0, None, "2",
        "(log x/(8 pi) + 2) sqrt(x) log x for all x >= 2, collected from Schoenfeld and Grenie-Molteni"),
    claim("schoenfeld_b", BoundId::SchoenfeldB, K::PsiDeviation, N::PerSqrtX, 73.2, None, "73.2",
        "sqrt(x) (log x)^2/(8 pi) for all x >= 73.2"),
    claim("schoenfeld_c", BoundId::SchoenfeldC, K::PsiDeviation, N::PerSqrtX, 2.3e9, None, "2.3e9",
        "sqrt(x) log x (log x - 2)/(8 pi) for all x >= 2.3e9"),
    claim("thm1", BoundId::Thm1, K::PsiDeviation, N::PerSqrtX, 11.0, None, "11",
        "Theorem 1: if the RH is true and x >= 11"),
    claim("thm2_psi", BoundId::Thm2Psi, K::PsiDeviation, N::PerSqrtX, 101.0, None, "101",
        "Theorem 2, psi: for all x >= 101"),
    claim("thm2_theta", BoundId::Thm2Theta, K::ThetaDeviation, N::PerSqrtX, 2657.0, None, "2 657",
        "Theorem 2, theta: for all x >= 2 657"),
    claim("buthe_psi", BoundId::ButhePsi, K::PsiDeviation, N::PerSqrtX, 11.0, Some(1e19), "11",
        "|psi(x) - x| <= 0.94 sqrt(x) for all 11 <= x <= 10^19"),
    claim("buthe_theta", BoundId::ButheTheta, K::ThetaDeviation, N::PerSqrtX, 1423.0, Some(1e19), "1 423",
        "|theta(x) - x| <= 1.95 sqrt(x) for 1 423 <= x <= 10^19"),
    claim("moi_1", BoundId::Moi1, K::MertensLogp, N::TimesSqrtX, 43.1, None, "43.1",
        "Corollary 1: 3 (log x)^2/(8 pi sqrt(x)) for all x >= 43.1"),
    claim("moi_2", BoundId::Moi2, K::MertensRecip, N::TimesSqrtX, 24.4, None, "24.4",
        "Corollary 1: 3 log x/(8 pi sqrt(x)) for all x >= 24.4"),
    claim("moi_3", BoundId::Moi3, K::MertensProd, N::TimesSqrtX, 23.8, None, "23.8",
        "Corollary 1: 3 log x/(8 pi sqrt(x)) for all x >= 23.8"),
    claim("moi_4", BoundId::Moi4, K::MertensProdInv, N::TimesSqrtX, 24.2, None, "24.2",
        "Corollary 1: 3 log x/(8 pi sqrt(x)) for all x >= 24.2"),
    claim("nt_envelope", BoundId::NtEnvelope, K::Auxiliary, N::Absolute, std::f64::consts::TAU, None, "2 pi",
        "R(T) = min{0.28 log T, 0.1038 log T + 0.2573 log log T + 9.3675} for T >= 2 pi"),
    claim("skewes_tail", BoundId::SkewesTail, K::Auxiliary, N::Absolute, 1.0, None, "1",
        "sum over |gamma| >= T of 1/gamma^2 < log T/(pi T) for all T >= 1"),
    claim("theta0", BoundId::Theta0, K::Auxiliary, N::Absolute, 1.0, None, "1",
        "0 > Theta(x) > -1.02/((x - 1) log x) for x > 1"),
    claim("rcal", BoundId::Rcal, K::Auxiliary, N::TimesSqrtX, 1e6, None, "10^6",
        "R(x): 2.95139 log x/(8 pi sqrt x) below 10^19, (3(log x - 3.37784) + 4)/(8 pi sqrt x) above"),
    claim("smoothed_psi", BoundId::Smoothed, K::Auxiliary, N::PerX, 1e19, None, "10^19",
        "smoothed explicit formula bound on |psi(x) - x|/x for x >= 10^19"),
];

/// All bound specs keyed by id.
pub fn registry() -> BTreeMap<&'static str, BoundSpec> {
    SPECS.iter().map(|s| (s.id, *s)).collect()
}

pub fn lookup(id: &str) -> Option<BoundSpec> {
    SPECS.iter().find(|s| s.id == id).copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Interval;

    #[test]
    fn registry_contents() {
        let r = registry();
        assert_eq!(r.len(), SPECS.len());
        let claims: Vec<_> = SPECS.iter().filter(|s| s.is_claim()).map(|s| s.id).collect();
        assert_eq!(claims, CLAIM_IDS.to_vec());
        assert!(lookup("thm2_psi").is_some());
        assert!(lookup("thm3").is_none());
    }

    #[test]
    fn thm2_theta_at_threshold() {
        let s = lookup("thm2_theta").unwrap();
        let v = s.at_x(2657.0_f64);
        assert!((v - 94.1).abs() < 0.1, "{v}");
        let iv = s.at_x(Interval::point(2657.0));
        assert!(iv.contains(v));
        assert!(iv.width() < 1e-10);
    }

    #[test]
    fn schoenfeld_b_dominates_thm2() {
        let b = lookup("schoenfeld_b").unwrap();
        let t = lookup("thm2_psi").unwrap();
        let mut l = 101f64.ln();
        while l < 200.0 {
            let p = LogPoint::new(Interval::point(l));
            assert!(b.normalized(&p).lo >= t.normalized(&p).hi);
            l *= 1.01;
        }
    }

    #[test]
    fn absolute_matches_at_x() {
        for id in CLAIM_IDS {
            let s = lookup(id).unwrap();
            let x = s.validity_from.max(50.0) * 3.0;
            let a = s.at_x(x);
            let b = s.absolute(&LogPoint::from_x(x));
            assert!(((a - b) / a).abs() < 1e-12, "{id}");
        }
    }
}
