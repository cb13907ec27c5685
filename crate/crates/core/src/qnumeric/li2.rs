use core::f64::consts::PI;

use crate::{Error, Result};

/// `Li₂(1) = π²/6`.
pub const LI2_ONE: f64 = PI * PI / 6.0;

/// Euler dilogarithm `Li₂(x) = Σ_{n≥1} xⁿ/n²` on `[0, 1]`.
///
/// Above `1/2` the reflection `Li₂(x) = Li₂(1) - Li₂(1-x) - ln x ln(1-x)`
/// keeps the series argument at most `1/2`.
pub fn li2(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(li2_unchecked(x))
}

pub(crate) fn li2_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x == 1.0 {
        LI2_ONE
    } else if x <= 0.5 {
        li2_series(x)
    } else {
        let y = 1.0 - x;
        LI2_ONE - li2_series(y) - libm::log(x) * libm::log(y)
    }
}

// x in (0, 1/2]; terms fall at least like 2^-n.
fn li2_series(x: f64) -> f64 {
    let mut terms = [0.0f64; 64];
    let mut len = 0;
    let mut pow = x;
    for n in 1..=64u32 {
        let t = pow / f64::from(n * n);
        terms[len] = t;
        len += 1;
        if t < 1e-18 * x {
            break;
        }
        pow *= x;
    }
    // smallest terms first
    terms[..len].iter().rev().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_domain() {
        assert_eq!(li2(0.0).unwrap(), 0.0);
        assert_eq!(li2(1.0).unwrap(), LI2_ONE);
        assert!(li2(-0.1).is_err());
        assert!(li2(1.1).is_err());
        assert!(li2(f64::NAN).is_err());
    }

    #[test]
    fn closed_form_at_one_half() {
        let ln2 = core::f64::consts::LN_2;
        let expected = PI * PI / 12.0 - ln2 * ln2 / 2.0;
        assert!((li2(0.5).unwrap() - expected).abs() <= 1e-15 * (1.0 + expected));
    }

    #[test]
    fn partial_sum_oracle_at_one() {
        // Σ_{n≤N} 1/n² + tail, tail ∈ (1/(N+1), 1/N)
        let n = 1_000_000u64;
        let partial: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        let lo = partial + 1.0 / (n as f64 + 1.0);
        let hi = partial + 1.0 / n as f64;
        assert!(lo - 1e-15 <= LI2_ONE && LI2_ONE <= hi + 1e-15);
    }
}
