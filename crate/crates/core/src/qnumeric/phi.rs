//! `ln φ(x) = -Σ_{n≥0} ln(1 - qⁿx)` and finite q-Pochhammer products.
//!
//! The sum stops after the first term below `tol_term`. Past that point the
//! terms shrink by at least a factor `q` each, so the discarded tail is at
//! most about `tol_term · q/(1-q)`.

use super::sum::CompensatedSum;
use super::QParams;
use crate::{Error, Result};

pub fn ln_phi(x: f64, p: &QParams) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "[0, 1)",
        });
    }
    Ok(ln_phi_unchecked(x, p.ln_q(), p.tol_term()))
}

pub(crate) fn ln_phi_unchecked(x: f64, ln_q: f64, tol_term: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut acc = CompensatedSum::new();
    let mut n = 0u64;
    loop {
        let t = x * libm::exp(n as f64 * ln_q);
        let term = -libm::log1p(-t);
        acc.add(term);
        if term < tol_term {
            break;
        }
        n += 1;
    }
    acc.value()
}

/// `ln φ(q^s)` for `s > 0`, with `1 - q^{s+n}` formed by `expm1` so that
/// factors close to zero keep full relative accuracy.
pub fn ln_phi_qpow(s: f64, p: &QParams) -> Result<f64> {
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::OutOfDomain {
            what: "s",
            value: s,
            domain: "(0, inf)",
        });
    }
    Ok(ln_phi_qpow_unchecked(s, p.ln_q(), p.tol_term()))
}

pub(crate) fn ln_phi_qpow_unchecked(s: f64, ln_q: f64, tol_term: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut n = 0u64;
    loop {
        let one_minus = -libm::expm1((s + n as f64) * ln_q);
        let term = -libm::log(one_minus);
        acc.add(term);
        if term < tol_term {
            break;
        }
        n += 1;
    }
    acc.value()
}

/// Finite product `(x;q)_k = ∏_{n<k} (1 - qⁿx)`.
pub fn qpoch(x: f64, q: f64, k: usize) -> f64 {
    let mut prod = 1.0;
    let mut t = x;
    for _ in 0..k {
        prod *= 1.0 - t;
        t *= q;
    }
    prod
}

/// Numeric left side `q^{mn}/((q;q)_m (q;q)_n)` of the coefficient identity.
pub fn e7_lhs_numeric(m: usize, n: usize, q: f64) -> f64 {
    libm::pow(q, (m * n) as f64) / (qpoch(q, q, m) * qpoch(q, q, n))
}

/// Numeric right side `Σ_k (-1)^k q^{k(k-1)/2}/((q;q)_{m-k}(q;q)_{n-k}(q;q)_k)`.
pub fn e7_rhs_numeric(m: usize, n: usize, q: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in 0..=m.min(n) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let num = sign * libm::pow(q, (k * k.saturating_sub(1) / 2) as f64);
        acc.add(num / (qpoch(q, q, m - k) * qpoch(q, q, n - k) * qpoch(q, q, k)));
    }
    acc.value()
}

/// A truncated series together with the number of terms used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// Certified bound on the discarded tail.
    pub tail_bound: f64,
}

const MAX_SERIES_TERMS: usize = 10_000_000;

/// `φ(x) = Σ xⁿ/(q;q)_n`.
///
/// Term ratios `x/(1-q^{n+1})` decrease in `n`; once below one the tail after
/// term `n` is at most `tₙ ρ/(1-ρ)`.
pub fn phi_series(x: f64, p: &QParams) -> Result<SeriesSum> {
    check_x(x)?;
    let q = p.q();
    let mut acc = CompensatedSum::new();
    let mut t = 1.0;
    let mut qn1 = q; // q^{n+1}
    for n in 0..MAX_SERIES_TERMS {
        acc.add(t);
        let ratio = x / (1.0 - qn1);
        if ratio < 1.0 {
            let tail = t * ratio / (1.0 - ratio);
            if tail <= p.tol_term() * acc.value() {
                return Ok(SeriesSum {
                    value: acc.value(),
                    terms: n + 1,
                    tail_bound: tail,
                });
            }
        }
        t *= ratio;
        qn1 *= q;
    }
    Err(Error::NonFinite("phi_series did not converge"))
}

/// `1/φ(x) = Σ (-1)ⁿ q^{n(n-1)/2} xⁿ/(q;q)_n`.
///
/// The magnitude ratio `qⁿx/(1-q^{n+1})` is decreasing, so once it drops
/// below one the series is alternating with shrinking terms and the tail is
/// bounded by the next term. Intermediate terms grow large for `q` near one,
/// so expect cancellation error there.
pub fn inv_phi_series(x: f64, p: &QParams) -> Result<SeriesSum> {
    check_x(x)?;
    let q = p.q();
    let mut acc = CompensatedSum::new();
    let mut t = 1.0;
    let mut qn = 1.0;
    for n in 0..MAX_SERIES_TERMS {
        acc.add(t);
        let ratio = qn * x / (1.0 - qn * q);
        let next = -t * ratio;
        if ratio < 1.0 && next.abs() <= p.tol_term() * acc.value().abs() {
            return Ok(SeriesSum {
                value: acc.value(),
                terms: n + 1,
                tail_bound: next.abs(),
            });
        }
        t = next;
        qn *= q;
    }
    Err(Error::NonFinite("inv_phi_series did not converge"))
}

fn check_x(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "[0, 1)",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: f64) -> QParams {
        QParams::new(q, 0.5, 0.5).unwrap()
    }

    #[test]
    fn zero_argument_and_domain() {
        let p = params(0.5);
        assert_eq!(ln_phi(0.0, &p).unwrap(), 0.0);
        assert!(ln_phi(1.0, &p).is_err());
        assert!(ln_phi(-0.2, &p).is_err());
        assert!(ln_phi_qpow(0.0, &p).is_err());
    }

    #[test]
    fn reference_values() {
        // high-precision reference
        let v = ln_phi(0.5, &params(0.5)).unwrap();
        assert!((v - 1.242_062_094_812_414_9).abs() < 1e-14);
        let v = ln_phi(0.3, &params(0.9)).unwrap();
        assert!((v - 3.277_465_948_799_054_3).abs() < 1e-13);
    }

    #[test]
    fn direct_summation_at_half() {
        let direct: f64 = (0..200)
            .map(|n| -libm::log(1.0 - libm::pow(0.5, n as f64 + 1.0)))
            .sum();
        assert!((ln_phi(0.5, &params(0.5)).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn qpow_variant_agrees() {
        let p = params(0.9);
        for s in [0.5, 1.0, 2.5, 7.0] {
            let a = ln_phi(libm::pow(0.9, s), &p).unwrap();
            let b = ln_phi_qpow(s, &p).unwrap();
            assert!((a - b).abs() < 1e-12 * (1.0 + a), "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn one_step_recurrence() {
        for q in [0.3, 0.7, 0.95] {
            let p = params(q);
            for x in [0.1, 0.5, 0.9] {
                let lhs = ln_phi(x * q, &p).unwrap();
                let rhs = ln_phi(x, &p).unwrap() + libm::log1p(-x);
                assert!((lhs - rhs).abs() < 1e-12, "q={q} x={x}");
            }
        }
    }

    #[test]
    fn expansions_match_product() {
        for q in [0.3, 0.5, 0.8] {
            let p = params(q);
            for x in [0.05, 0.4, 0.9] {
                let lp = ln_phi(x, &p).unwrap();
                let s = phi_series(x, &p).unwrap();
                assert!((s.value / libm::exp(lp) - 1.0).abs() < 1e-12);
                let s = inv_phi_series(x, &p).unwrap();
                assert!((s.value * libm::exp(lp) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numeric_coefficients_agree() {
        assert!((e7_lhs_numeric(1, 1, 0.5) - 2.0).abs() < 1e-15);
        for m in 0..6 {
            for n in 0..6 {
                let l = e7_lhs_numeric(m, n, 0.4);
                let r = e7_rhs_numeric(m, n, 0.4);
                // the alternating sum cancels down to q^{mn}; compare absolutely
                assert!((l - r).abs() < 1e-12, "m={m} n={n}");
            }
        }
    }
}
