//! The q-binomial summand
//!
//! ```text
//! g(x) = φ(a qˣ) / φ(q^{1+x}) · zˣ
//! ```
//!
//! whose integer samples sum to `φ(a)φ(z)/(φ(q)φ(az))`, together with the
//! quantities used to locate and bound its peak. Everything is in log space.

use alloc::vec::Vec;

use super::phi::{ln_phi_qpow_unchecked, ln_phi_unchecked};
use super::quad::{integrate, QuadConfig};
use super::sum::{log_add_exp, CompensatedSum};
use super::QParams;
use crate::{Error, Result};

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "[0, inf)",
        })
    }
}

/// `ln g(x) = ln φ(a qˣ) - ln φ(q^{1+x}) + x ln z`.
pub fn ln_g(x: f64, p: &QParams) -> Result<f64> {
    check_x(x)?;
    Ok(ln_g_unchecked(x, p))
}

fn ln_g_unchecked(x: f64, p: &QParams) -> f64 {
    let ln_q = p.ln_q();
    let aqx = p.a() * libm::exp(x * ln_q);
    ln_phi_unchecked(aqx, ln_q, p.tol_term()) - ln_phi_qpow_unchecked(1.0 + x, ln_q, p.tol_term())
        + x * libm::log(p.z())
}

/// `h_x(t) = q^{x+t} / ((1 - q^{1+x+t})(1 - a q^{x+t}))`.
pub fn h_term(t: f64, x: f64, p: &QParams) -> f64 {
    let ln_q = p.ln_q();
    let y = libm::exp((x + t) * ln_q);
    let one_minus_qy = -libm::expm1((1.0 + x + t) * ln_q);
    y / (one_minus_qy * (1.0 - p.a() * y))
}

/// `S(h_x) = Σ_{t≥0} h_x(t)`.
///
/// Consecutive terms shrink by at least `q`, so summation stops once
/// `term · q/(1-q)` falls below `tol_term` times the running sum.
pub fn h_sum(x: f64, p: &QParams) -> Result<f64> {
    check_x(x)?;
    let q = p.q();
    let tail_factor = q / (1.0 - q);
    let mut acc = CompensatedSum::new();
    let mut t = 0u64;
    loop {
        let term = h_term(t as f64, x, p);
        acc.add(term);
        if term * tail_factor <= p.tol_term() * acc.value() {
            return Ok(acc.value());
        }
        t += 1;
    }
}

/// `I(h_x) = ln((1 - a qˣ)/(1 - q^{1+x})) / (|ln q| (q - a))`.
///
/// Written as `ln1p(w)/w · Y/(1 - qY)/|ln q|` with `Y = qˣ` and
/// `w = (q-a)Y/(1-qY)`, which stays accurate as `a → q` and reduces to
/// `Y/((1-qY)|ln q|)` at `a = q`.
pub fn h_integral(x: f64, p: &QParams) -> Result<f64> {
    check_x(x)?;
    let ln_q = p.ln_q();
    let y = libm::exp(x * ln_q);
    let one_minus_qy = -libm::expm1((1.0 + x) * ln_q);
    let base = y / one_minus_qy / -ln_q;
    let w = (p.q() - p.a()) * y / one_minus_qy;
    let factor = if w.abs() < 1e-300 {
        1.0
    } else {
        libm::log1p(w) / w
    };
    Ok(base * factor)
}

/// `g'(x)/g(x) = ln z - ln q · (q - a) · S(h_x)`.
pub fn log_derivative_g(x: f64, p: &QParams) -> Result<f64> {
    let s = h_sum(x, p)?;
    Ok(libm::log(p.z()) - p.ln_q() * (p.q() - p.a()) * s)
}

/// Location of the unique zero of `g'/g`, bisected to width `1e-10·(1 + x₀)`.
pub fn find_x0(p: &QParams) -> Result<f64> {
    p.require_unimodal()?;
    let mut lo = 0.0;
    if log_derivative_g(lo, p)? <= 0.0 {
        // unimodal_ok guarantees a positive slope at the origin
        return Err(Error::NoSignChange(0.0));
    }
    let mut hi = 1.0;
    let limit = 1e3 / -p.ln_q() + 1e3;
    while log_derivative_g(hi, p)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > limit {
            return Err(Error::NoSignChange(hi));
        }
    }
    while hi - lo > 1e-10 * (1.0 + lo) {
        let mid = 0.5 * (lo + hi);
        if log_derivative_g(mid, p)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The integer `n₀ ∈ {⌊x₀⌋, ⌊x₀⌋+1}` with the larger `g`.
pub fn find_n0(p: &QParams) -> Result<u64> {
    let x0 = find_x0(p)?;
    Ok(n0_from_x0(x0, p))
}

pub fn n0_from_x0(x0: f64, p: &QParams) -> u64 {
    let f = libm::floor(x0);
    if ln_g_unchecked(f + 1.0, p) > ln_g_unchecked(f, p) {
        f as u64 + 1
    } else {
        f as u64
    }
}

/// Iterates `ln g(0), ln g(1), …` with the one-step recurrence
/// `ln g(n+1) = ln g(n) + ln(1 - a qⁿ) - ln(1 - q^{n+1}) + ln z`,
/// so only `ln φ(a)` and `ln φ(q)` need full products.
#[derive(Clone, Debug)]
pub struct SummandScan {
    ln_q: f64,
    a: f64,
    ln_z: f64,
    n: u64,
    value: CompensatedSum,
}

impl SummandScan {
    pub fn new(p: &QParams) -> Self {
        let ln_q = p.ln_q();
        let ln_phi_a = ln_phi_unchecked(p.a(), ln_q, p.tol_term());
        let ln_phi_q = ln_phi_qpow_unchecked(1.0, ln_q, p.tol_term());
        Self::from_bases(p, ln_phi_a, ln_phi_q)
    }

    /// Start from already computed `ln φ(a)` and `ln φ(q)`.
    pub fn from_bases(p: &QParams, ln_phi_a: f64, ln_phi_q: f64) -> Self {
        let mut value = CompensatedSum::new();
        value.add(ln_phi_a);
        value.add(-ln_phi_q);
        Self {
            ln_q: p.ln_q(),
            a: p.a(),
            ln_z: libm::log(p.z()),
            n: 0,
            value,
        }
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    /// `ln g(n)` at the current index.
    pub fn ln_value(&self) -> f64 {
        self.value.value()
    }

    /// `g(n+1)/g(n) = z (1 - a qⁿ)/(1 - q^{n+1})` at the current index.
    pub fn ratio(&self) -> f64 {
        let qn = libm::exp(self.n as f64 * self.ln_q);
        let one_minus_qn1 = -libm::expm1((self.n + 1) as f64 * self.ln_q);
        libm::exp(self.ln_z) * (1.0 - self.a * qn) / one_minus_qn1
    }

    pub fn advance(&mut self) {
        let qn = libm::exp(self.n as f64 * self.ln_q);
        let one_minus_qn1 = -libm::expm1((self.n + 1) as f64 * self.ln_q);
        self.value.add(libm::log1p(-self.a * qn));
        self.value.add(-libm::log(one_minus_qn1));
        self.value.add(self.ln_z);
        self.n += 1;
    }
}

/// `ln S(g)` with the location and size of the largest term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeakedSum {
    pub ln_sum: f64,
    pub argmax: u64,
    pub ln_max: f64,
    pub terms: u64,
}

/// `ln Σ_{n≥0} g(n)`, summed after shifting by the largest term.
///
/// Stops at the first `n` where `g(n+1)/g(n) < 1` and the geometric tail
/// bound `g(n) ρ/(1-ρ)`, `ρ = max(ratio, z)`, is below `tol_term` times the
/// peak. Later ratios never exceed `ρ`: they decrease towards `z` when
/// `q ≥ a` and increase towards it when `q < a`.
pub fn ln_sum_g(p: &QParams) -> Result<f64> {
    Ok(peaked_sum(SummandScan::new(p), p)?.ln_sum)
}

pub fn peaked_sum(mut scan: SummandScan, p: &QParams) -> Result<PeakedSum> {
    let ln_tol = libm::log(p.tol_term());
    let mut values: Vec<f64> = Vec::new();
    let mut ln_max = f64::NEG_INFINITY;
    let mut argmax = 0;
    loop {
        let v = scan.ln_value();
        if !v.is_finite() {
            return Err(Error::NonFinite("ln g(n)"));
        }
        if v > ln_max {
            ln_max = v;
            argmax = scan.index();
        }
        values.push(v);
        let r = scan.ratio();
        if r < 1.0 {
            let rho = r.max(p.z());
            if v + libm::log(rho / (1.0 - rho)) < ln_max + ln_tol {
                break;
            }
        }
        scan.advance();
    }
    let s: CompensatedSum = values.iter().map(|v| libm::exp(v - ln_max)).collect();
    Ok(PeakedSum {
        ln_sum: ln_max + libm::log(s.value()),
        argmax,
        ln_max,
        terms: values.len() as u64,
    })
}

/// `ln I(g) = ln ∫_0^∞ g(x) dx`.
///
/// Integrated in `ξ = qˣ` on `[q^X, 1]`, split at the peak `q^{x₀}` and
/// shifted by `ln g(x₀)`. The cut `X > x₀` is chosen so that the remaining
/// tail, bounded by `g(X)/κ` with `κ = -g'(X)/g(X)`, is below `tol_term`
/// relative to the peak.
pub fn ln_integral_g(p: &QParams) -> Result<f64> {
    let x0 = find_x0(p)?;
    ln_integral_g_from_peak(x0, p)
}

pub fn ln_integral_g_from_peak(x0: f64, p: &QParams) -> Result<f64> {
    p.require_unimodal()?;
    let ln_q = p.ln_q();
    let h = -ln_q;
    let ln_peak = ln_g_unchecked(x0, p);
    let ln_tol = libm::log(p.tol_term());

    let mut step = (0.5 * x0).max(1.0);
    let mut cut = x0 + step;
    loop {
        let kappa = -log_derivative_g(cut, p)?;
        if kappa > 0.0 && ln_g_unchecked(cut, p) - libm::log(kappa) < ln_peak + ln_tol {
            break;
        }
        step *= 2.0;
        cut = x0 + step;
        if !cut.is_finite() {
            return Err(Error::NonFinite("integration cut-off"));
        }
    }

    let integrand = |xi: f64| {
        let x = libm::log(xi) / ln_q;
        libm::exp(ln_g_unchecked(x.max(0.0), p) - ln_peak) / (xi * h)
    };
    let cfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_intervals: 2000,
    };
    let xi_cut = libm::exp(cut * ln_q);
    let xi_peak = libm::exp(x0 * ln_q);
    let left = integrate(integrand, xi_cut, xi_peak, cfg)?;
    let right = integrate(integrand, xi_peak, 1.0, cfg)?;
    Ok(ln_peak + libm::log(left.value + right.value))
}

/// `ln φ(a) + ln φ(z) - ln φ(q) - ln φ(az)`.
pub fn qbinomial_rhs_ln(p: &QParams) -> f64 {
    let ln_q = p.ln_q();
    let t = p.tol_term();
    let mut acc = CompensatedSum::new();
    acc.add(ln_phi_unchecked(p.a(), ln_q, t));
    acc.add(ln_phi_unchecked(p.z(), ln_q, t));
    acc.add(-ln_phi_qpow_unchecked(1.0, ln_q, t));
    acc.add(-ln_phi_unchecked(p.a() * p.z(), ln_q, t));
    acc.value()
}

/// Upper end of the unimodal sandwich, `ln(I(g) + g(n₀))`.
pub(crate) fn unimodal_upper(ln_integral: f64, ln_g_n0: f64) -> f64 {
    log_add_exp(ln_integral, ln_g_n0)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn p(q: f64, a: f64, z: f64) -> QParams {
        QParams::new(q, a, z).unwrap()
    }

    #[test]
    fn ln_g_reference_values() {
        let pp = p(0.9, 0.5, 0.5);
        assert!((ln_g(5.0, &pp).unwrap() - -6.580_081_112_639_886_7).abs() < 1e-12);
        assert!((ln_g(2.5, &pp).unwrap() - -6.323_433_516_687_732_9).abs() < 1e-12);
        assert!(ln_g(-1.0, &pp).is_err());
    }

    #[test]
    fn ln_g_at_zero() {
        let pp = p(0.7, 0.2, 0.6);
        let expected =
            ln_phi_unchecked(0.2, pp.ln_q(), 1e-18) - ln_phi_unchecked(0.7, pp.ln_q(), 1e-18);
        assert!((ln_g(0.0, &pp).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn scan_matches_direct_evaluation() {
        let pp = p(0.9, 0.3, 0.6);
        let mut scan = SummandScan::new(&pp);
        for n in 0..40 {
            let direct = ln_g(n as f64, &pp).unwrap();
            assert!((scan.ln_value() - direct).abs() < 1e-12, "n={n}");
            scan.advance();
        }
    }

    #[test]
    fn h_reference_values() {
        let pp = p(0.9, 0.5, 0.5);
        assert!((h_integral(1.0, &pp).unwrap() - 25.220_411_067_413_882_9).abs() < 1e-10);
        assert!((h_sum(1.0, &pp).unwrap() - 29.975_383_126_581_731_9).abs() < 1e-10);
    }

    #[test]
    fn h_integral_at_a_equal_q_is_continuous() {
        let at = h_integral(0.7, &p(0.8, 0.8, 0.5)).unwrap();
        let near = h_integral(0.7, &p(0.8, 0.8 - 1e-9, 0.5)).unwrap();
        assert!((at - near).abs() < 1e-7 * at);
        // closed form Y/((1-qY)|ln q|) at a = q
        let y = libm::pow(0.8, 0.7);
        assert!((at - y / ((1.0 - 0.8 * y) * -libm::log(0.8))).abs() < 1e-13 * at);
    }

    #[test]
    fn log_derivative_matches_reference() {
        let pp = p(0.95, 0.5, 0.5);
        let d = log_derivative_g(2.0, &pp).unwrap();
        assert!((d - 0.796_173_850_778_787_2).abs() < 1e-10);
    }

    #[test]
    fn q_equal_a_sum_is_geometric() {
        // a = q: g(n) = zⁿ
        for z in [0.2, 0.5, 0.9] {
            let pp = p(0.6, 0.6, z);
            let s = ln_sum_g(&pp).unwrap();
            assert!((s - -libm::log1p(-z)).abs() < 1e-13, "z={z}");
            assert!((qbinomial_rhs_ln(&pp) - -libm::log1p(-z)).abs() < 1e-13);
        }
    }

    #[test]
    fn reference_qbinomial() {
        let pp = p(0.5, 0.3, 0.7);
        assert!((ln_sum_g(&pp).unwrap() - 0.985_006_581_988_848_7).abs() < 1e-13);
        assert!((qbinomial_rhs_ln(&pp) - 0.985_006_581_988_848_7).abs() < 1e-13);
    }

    #[test]
    fn x0_requires_unimodality() {
        assert!(matches!(
            find_x0(&p(0.5, 0.5, 0.5)),
            Err(Error::NotUnimodal { .. })
        ));
        assert!(matches!(
            ln_integral_g(&p(0.5, 0.5, 0.5)),
            Err(Error::NotUnimodal { .. })
        ));
    }

    #[test]
    fn x0_is_a_root() {
        let pp = p(0.95, 0.5, 0.5);
        let x0 = find_x0(&pp).unwrap();
        assert!(log_derivative_g(x0, &pp).unwrap().abs() < 1e-8);
        let n0 = n0_from_x0(x0, &pp);
        let g0 = ln_g(n0 as f64, &pp).unwrap();
        for n in n0.saturating_sub(2)..=n0 + 2 {
            assert!(ln_g(n as f64, &pp).unwrap() <= g0);
        }
    }
}
