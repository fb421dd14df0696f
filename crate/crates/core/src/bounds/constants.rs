//! Every numeric literal the bounds depend on, in one audited table.
//!
//! `printed` is the literal exactly as published; `decimal` is the same
//! number in machine-readable form. Interval and double-double evaluation
//! parse `decimal`, so literals that are not binary64 numbers are enclosed
//! rather than silently rounded.

use crate::numeric::{Dd, Interval, Real};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub printed: &'static str,
    pub decimal: &'static str,
    pub source: &'static str,
}

impl Constant {
    pub fn value(&self) -> f64 {
        self.decimal.parse().expect("constant literal")
    }

    pub fn interval(&self) -> Interval {
        Interval::dec(self.decimal)
    }

    pub fn dd(&self) -> Dd {
        Dd::parse(self.decimal).expect("constant literal")
    }

    pub fn real<T: Real>(&self) -> T {
        T::dec(self.decimal)
    }
}

macro_rules! constants {
    ($( $id:ident = $name:literal, $printed:literal, $decimal:literal, $source:literal; )*) => {
        $( pub const $id: Constant = Constant { name: $name, printed: $printed, decimal: $decimal, source: $source }; )*
        /// All constants in declaration order.
        pub const ALL: &[Constant] = &[$( $id ),*];
    };
}

constants! {
    B = "B", "0.26149", "0.26149", "Mertens' second theorem constant, 5-decimal truncation";
    C = "C", "0.57721", "0.57721", "Euler-Mascheroni constant, 5-decimal truncation";
    E = "E", "- 1.33258", "-1.33258", "Mertens' first theorem constant, 5-decimal truncation";
    OMEGA1 = "omega1", "16.2106480369", "16.2106480369", "sum of 1/|gamma| over 0 < |gamma| <= 10^7";
    H1 = "H1", "10^7", "10000000", "height of the exact zero sum";
    R_STECHKIN = "R_stechkin", "9.645908801", "9.645908801", "zero-free region constant (inert under RH)";
    ALPHA1 = "alpha1", "1+ 1.93378 \\cdot 10^{-8}", "1.0000000193378", "upper bound coefficient of x^(1/2) in psi - theta";
    ALPHA2 = "alpha2", "1.04320", "1.04320", "upper bound coefficient of x^(1/3) in psi - theta";
    BUTHE_PSI_C = "buthe_psi_c", "0.94", "0.94", "|psi(x) - x| <= 0.94 sqrt(x), 11 <= x <= 10^19";
    BUTHE_THETA_C = "buthe_theta_c", "1.95", "1.95", "|theta(x) - x| <= 1.95 sqrt(x), 1423 <= x <= 10^19";
    THETA0_C = "theta0_c", "1.02", "1.02", "0 > Theta(x) > -1.02/((x-1) log x)";
    EXP_CHAIN_C = "exp_chain_c", "0.501", "0.501", "e^u <= 1 + u + 0.501 u^2 for the small u in the product bound";
    GOLDSTON_C = "goldston_c", "2.6", "2.6", "|w_rho| <= 2.6 h/sqrt(x) (1 + 2/|rho|)";
    CONSOLIDATION_C = "consolidation_c", "1.465", "1.465", "x/(2y) + 1.465 sqrt(x) log y";
    CONSOLIDATION_ADD = "consolidation_add", "2.84", "2.84", "additive constant before consolidation";
    THM1_C = "thm1_c", "1.2325", "1.2325", "constant term of Theorem 1";
    LOGLOG_1E19 = "loglog_1e19", "3.77847", "3.77847", "lower bound for log log x on x >= 10^19";
    RCAL_SHIFT = "rcal_shift", "3.37784", "3.37784", "shift in the x >= 10^19 branch of the Mertens-sum error";
    RCAL_MIDC = "rcal_midc", "2.95139", "2.95139", "coefficient of the 10^6 <= x < 10^19 branch";
    MOI1_LIN = "moi1_lin", "3.33541", "3.33541", "linear coefficient after integrating the moi_1 tail";
    MOI1_CONST = "moi1_const", "0.88612", "0.88612", "constant term after integrating the moi_1 tail";
    MOI1_MID = "moi1_mid", "2.2", "2.2", "coefficient bounding the tail beyond 10^19 for 10^6 <= x <= 10^19";
    MOI2_MID_A = "moi2_mid_a", "1.08", "1.08", "(log t + 1)/log t <= 1.08 on t >= 10^6";
    MOI2_MID_B = "moi2_mid_b", "2.14", "2.14", "coefficient bounding the tail beyond 10^19";
    MOI2_MID_C = "moi2_mid_c", "3.16", "3.16", "collected coefficient of 1.95 in the moi_2 middle range";
    NT_A = "nt_a", "0.28", "0.28", "R(T) first branch";
    NT_B = "nt_b", "0.1038", "0.1038", "R(T) second branch, log T";
    NT_C = "nt_c", "0.2573", "0.2573", "R(T) second branch, log log T";
    NT_D = "nt_d", "9.3675", "9.3675", "R(T) second branch, constant";
    EPS_LO = "eps_lo", "1.545", "1.545", "lower end of the explicit-formula constant";
    EPS_HI = "eps_hi", "2.069", "2.069", "upper end of the explicit-formula constant";
    DIFFS_LO = "diffs_lo", "0.999", "0.999", "lower bound coefficient of x^(1/2) in psi - theta";
    T1_MIN = "t1_min", "454 161 776", "454161776", "lower bound for T1 on x >= 10^19";
    TURNING_X = "turning_x", "2.00299\\cdot 10^{38}", "2.00299e38", "turning point of the log log x coefficient";
    THM1_TO_THM2_L = "thm1_to_thm2_l", "30\\,369.582", "30369.582", "log x from which Theorem 1 implies the psi bound";
    THETA_THRESHOLD_L = "theta_threshold_l", "30\\,456.256", "30456.256", "log x from which the theta bound follows from Theorem 1";
    THETA_TABLE_END_L = "theta_table_end_l", "30\\,456.276", "30456.276", "right end of the theta extension row";
    SCHOENFELD_B_FROM = "schoenfeld_b_from", "73.2", "73.2", "validity of sqrt(x) log^2 x/(8 pi)";
    SCHOENFELD_C_FROM = "schoenfeld_c_from", "2.3\\cdot 10^9", "2.3e9", "validity of sqrt(x) log x (log x - 2)/(8 pi)";
    THM1_FROM = "thm1_from", "11", "11", "Theorem 1 validity";
    THM2_PSI_FROM = "thm2_psi_from", "101", "101", "psi bound validity";
    THM2_THETA_FROM = "thm2_theta_from", "2\\,657", "2657", "theta bound validity";
    BUTHE_THETA_FROM = "buthe_theta_from", "1\\,423", "1423", "theta envelope lower end as printed";
    BUTHE_TO = "buthe_to", "10^{19}", "1e19", "upper end of the computational range";
    MOI1_FROM = "moi1_from", "43.1", "43.1", "moi_1 validity";
    MOI2_FROM = "moi2_from", "24.4", "24.4", "moi_2 validity";
    MOI3_FROM = "moi3_from", "23.8", "23.8", "moi_3 validity";
    MOI4_FROM = "moi4_from", "24.2", "24.2", "moi_4 validity";
}

/// Look a constant up by name.
pub fn by_name(name: &str) -> Option<&'static Constant> {
    ALL.iter().find(|c| c.name == name)
}
