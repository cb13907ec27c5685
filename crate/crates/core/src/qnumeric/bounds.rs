//! Sum/integral sandwich checks.

use alloc::string::String;

use super::li2::li2_unchecked;
use super::phi::ln_phi;
use super::quad::{integrate, integrate_to_infinity, QuadConfig};
use super::sum::CompensatedSum;
use super::summand::{
    find_x0, ln_g, ln_integral_g_from_peak, ln_sum_g, n0_from_x0, qbinomial_rhs_ln, unimodal_upper,
};
use super::QParams;
use crate::{Error, Result};

/// `lower ≤ value ≤ upper`, checked with slack `tol_rel · (1 + |value|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub label: String,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub tol_rel: f64,
}

impl BoundsReport {
    pub fn new(label: impl Into<String>, lower: f64, value: f64, upper: f64, tol_rel: f64) -> Self {
        Self {
            label: label.into(),
            lower,
            value,
            upper,
            tol_rel,
        }
    }

    pub fn slack(&self) -> f64 {
        self.tol_rel * (1.0 + self.value.abs())
    }

    pub fn pass(&self) -> bool {
        let s = self.slack();
        self.lower.is_finite()
            && self.value.is_finite()
            && self.upper.is_finite()
            && self.lower - s <= self.value
            && self.value <= self.upper + s
    }
}

/// `0 ≤ ln φ(x) + Li₂(x)/ln q ≤ -ln(1-x)`.
pub fn check_sandwich_e13(x: f64, p: &QParams) -> Result<BoundsReport> {
    let lp = ln_phi(x, p)?;
    let middle = lp + li2_unchecked(x) / p.ln_q();
    Ok(BoundsReport::new(
        "ln phi(x) + Li2(x)/ln q",
        0.0,
        middle,
        -libm::log1p(-x),
        p.tol_rel(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    Decreasing,
    Increasing,
}

/// Sums and integral of a monotone `f` over `[k, l+1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SumIntegralCheck {
    /// `Σ_{n=k}^{l} f(n)`
    pub sum: f64,
    /// `Σ_{n=k+1}^{l+1} f(n)`
    pub shifted_sum: f64,
    /// `∫_k^{l+1} f`
    pub integral: f64,
    pub report: BoundsReport,
}

impl SumIntegralCheck {
    /// The equivalent gap form `0 ≤ S - I ≤ f(k)` for decreasing `f`
    /// on an unbounded range.
    pub fn gap_report(&self) -> BoundsReport {
        BoundsReport::new(
            "S(f) - I(f)",
            0.0,
            self.sum - self.integral,
            self.sum - self.shifted_sum,
            self.report.tol_rel,
        )
    }
}

/// Sum/integral sandwich for a monotone function.
///
/// Decreasing `f`: `Σ_{k+1}^{l+1} f ≤ ∫_k^{l+1} f ≤ Σ_k^l f`; increasing `f`
/// swaps the two sums. `l = None` means `l = ∞` and is only allowed for
/// decreasing `f`; the infinite sum is then cut at `n` once `∫_n^∞ f`, which
/// bounds the remaining terms, is below `tol_term` relative to the sum.
pub fn check_sum_integral<F: Fn(f64) -> f64>(
    f: F,
    shape: Monotone,
    k: i64,
    l: Option<i64>,
    tol_rel: f64,
    tol_term: f64,
) -> Result<SumIntegralCheck> {
    let eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("sum/integral function"))
        }
    };
    let cfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_intervals: 4000,
    };
    let f_k = eval(k as f64)?;
    let (sum, f_end, integral) = match l {
        Some(l) => {
            if l < k {
                return Err(Error::OutOfDomain {
                    what: "l",
                    value: l as f64,
                    domain: "l >= k",
                });
            }
            let mut acc = CompensatedSum::new();
            for n in k..=l {
                acc.add(eval(n as f64)?);
            }
            let f_end = eval((l + 1) as f64)?;
            let integral = integrate(&f, k as f64, (l + 1) as f64, cfg)?.value;
            (acc.value(), f_end, integral)
        }
        None => {
            if shape == Monotone::Increasing {
                return Err(Error::OutOfDomain {
                    what: "l",
                    value: f64::INFINITY,
                    domain: "finite for increasing f",
                });
            }
            let integral = integrate_to_infinity(&f, k as f64, cfg)?.value;
            let mut acc = CompensatedSum::new();
            let mut n = k;
            let mut checkpoint = k + 16;
            loop {
                acc.add(eval(n as f64)?);
                n += 1;
                if n == checkpoint {
                    let tail = integrate_to_infinity(&f, n as f64, cfg)?.value;
                    if tail <= tol_term * acc.value().abs() || tail == 0.0 {
                        break;
                    }
                    checkpoint = k + 2 * (checkpoint - k);
                }
            }
            (acc.value(), 0.0, integral)
        }
    };
    let shifted_sum = sum - f_k + f_end;
    let (lower, upper) = match shape {
        Monotone::Decreasing => (shifted_sum, sum),
        Monotone::Increasing => (sum, shifted_sum),
    };
    Ok(SumIntegralCheck {
        sum,
        shifted_sum,
        integral,
        report: BoundsReport::new("sum/integral sandwich", lower, integral, upper, tol_rel),
    })
}

/// `g(n₀) ≤ S(g) ≤ I(g) + g(n₀)` in log space. Needs `unimodal_ok`.
pub fn check_unimodal_sandwich(p: &QParams) -> Result<BoundsReport> {
    let x0 = find_x0(p)?;
    let n0 = n0_from_x0(x0, p);
    let ln_g_n0 = ln_g(n0 as f64, p)?;
    let ln_s = ln_sum_g(p)?;
    let ln_i = ln_integral_g_from_peak(x0, p)?;
    Ok(BoundsReport::new(
        "ln g(n0) <= ln S(g) <= ln(I(g) + g(n0))",
        ln_g_n0,
        ln_s,
        unimodal_upper(ln_i, ln_g_n0),
        p.tol_rel(),
    ))
}

/// `S(h_x) ≥ I(h_x)`, reported as `I ≤ S ≤ ∞`.
pub fn check_h_sum_integral(x: f64, p: &QParams) -> Result<BoundsReport> {
    let s = super::summand::h_sum(x, p)?;
    let i = super::summand::h_integral(x, p)?;
    Ok(BoundsReport::new(
        "S(h_x) >= I(h_x)",
        i,
        s,
        f64::MAX,
        p.tol_rel(),
    ))
}

/// Both sides of the q-binomial formula in the φ-only form, compared in
/// log space; PASS when `|lhs - rhs| ≤ tol_rel·(1 + |rhs|)`.
pub fn verify_qbinomial(p: &QParams) -> Result<BoundsReport> {
    let lhs = ln_sum_g(p)?;
    let rhs = qbinomial_rhs_ln(p);
    Ok(BoundsReport::new(
        "ln S(g) vs ln phi(a)phi(z)/(phi(q)phi(az))",
        rhs,
        lhs,
        rhs,
        p.tol_rel(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_orientation() {
        assert!(BoundsReport::new("", 0.0, 0.5, 1.0, 1e-9).pass());
        assert!(!BoundsReport::new("", 0.0, -0.1, 1.0, 1e-9).pass());
        assert!(!BoundsReport::new("", 0.0, 1.1, 1.0, 1e-9).pass());
        assert!(BoundsReport::new("", 0.0, -1e-10, 1.0, 1e-9).pass());
        assert!(!BoundsReport::new("", 0.0, f64::NAN, 1.0, 1e-9).pass());
    }

    #[test]
    fn sandwich_at_half() {
        let p = QParams::new(0.5, 0.5, 0.5).unwrap();
        let r = check_sandwich_e13(0.5, &p).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.value > 0.0 && r.value < r.upper);
    }

    #[test]
    fn sandwich_reference_near_one() {
        let p = QParams::new(0.99, 0.5, 0.5).unwrap();
        let r = check_sandwich_e13(0.9, &p).unwrap();
        assert!(r.pass());
        assert!((r.value - 1.158_827_893_567_987_5).abs() < 1e-11);
    }

    #[test]
    fn sandwich_degenerates_at_zero() {
        let p = QParams::new(0.9, 0.5, 0.5).unwrap();
        let r = check_sandwich_e13(0.0, &p).unwrap();
        assert_eq!((r.lower, r.value, r.upper), (0.0, 0.0, 0.0));
        assert!(r.pass());
    }

    #[test]
    fn geometric_closed_forms() {
        // f(t) = 2^{-t}: S = 2, I = 1/ln 2
        let c = check_sum_integral(
            |t| libm::exp2(-t),
            Monotone::Decreasing,
            0,
            None,
            1e-9,
            1e-18,
        )
        .unwrap();
        assert!((c.sum - 2.0).abs() < 1e-15);
        assert!((c.integral - 1.0 / core::f64::consts::LN_2).abs() < 1e-12);
        assert!(c.report.pass());
        assert!(c.gap_report().pass());
    }

    #[test]
    fn constant_zero_is_tight() {
        let c = check_sum_integral(|_| 0.0, Monotone::Decreasing, 0, None, 1e-9, 1e-18).unwrap();
        assert_eq!((c.sum, c.integral), (0.0, 0.0));
        assert!(c.report.pass());
    }

    #[test]
    fn increasing_on_a_finite_range() {
        let c =
            check_sum_integral(|t| t * t, Monotone::Increasing, 1, Some(4), 1e-9, 1e-18).unwrap();
        // 1+4+9+16 ≤ ∫_1^5 t² = 124/3 ≤ 4+9+16+25
        assert_eq!(c.sum, 30.0);
        assert_eq!(c.shifted_sum, 54.0);
        assert!((c.integral - 124.0 / 3.0).abs() < 1e-12);
        assert!(c.report.pass());
        assert!(check_sum_integral(|t| t, Monotone::Increasing, 0, None, 1e-9, 1e-18).is_err());
        // wrong orientation fails
        let bad =
            check_sum_integral(|t| t * t, Monotone::Decreasing, 1, Some(4), 1e-9, 1e-18).unwrap();
        assert!(!bad.report.pass());
    }

    #[test]
    fn non_finite_function_is_an_error() {
        let r = check_sum_integral(
            |t| 1.0 / (t - 2.0),
            Monotone::Decreasing,
            0,
            Some(3),
            1e-9,
            1e-18,
        );
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }
}
