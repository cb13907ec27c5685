use crate::qnumeric::{check_open_unit, li2_unchecked, LI2_ONE};
use crate::{Error, Result};

/// The pair `(a, z)` with the derived Rogers arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RogersInput {
    pub a: f64,
    pub z: f64,
    /// `ξ₀ = (1-z)/(1-az)`
    pub xi0: f64,
    /// `aξ₀ = (a-az)/(1-az)`
    pub a_xi0: f64,
    /// `1-ξ₀ = (z-az)/(1-az)`
    pub one_minus_xi0: f64,
}

impl RogersInput {
    pub fn new(a: f64, z: f64) -> Result<Self> {
        check_open_unit("a", a)?;
        check_open_unit("z", z)?;
        let d = 1.0 - a * z;
        Ok(Self {
            a,
            z,
            xi0: (1.0 - z) / d,
            a_xi0: (a - a * z) / d,
            one_minus_xi0: (z - a * z) / d,
        })
    }
}

/// Stationary point `ξ₀ = (1-z)/(1-az)` of `F`.
pub fn xi0(a: f64, z: f64) -> Result<f64> {
    Ok(RogersInput::new(a, z)?.xi0)
}

/// `F(ξ) = Li₂(ξ) - Li₂(aξ) + ln ξ · ln z`.
pub fn f_eval(xi: f64, a: f64, z: f64) -> Result<f64> {
    check_open_unit("xi", xi)?;
    check_open_unit("a", a)?;
    check_open_unit("z", z)?;
    Ok(li2_unchecked(xi) - li2_unchecked(a * xi) + libm::log(xi) * libm::log(z))
}

/// Finite-`q` version `F_q(ξ) = Li₂(qξ) - Li₂(aξ) + ln ξ · ln z`.
pub fn f_q_eval(xi: f64, q: f64, a: f64, z: f64) -> Result<f64> {
    check_open_unit("q", q)?;
    check_open_unit("xi", xi)?;
    check_open_unit("a", a)?;
    check_open_unit("z", z)?;
    Ok(li2_unchecked(q * xi) - li2_unchecked(a * xi) + libm::log(xi) * libm::log(z))
}

/// The two limit expressions `(F(ξ₀), Li₂(1) + Li₂(az) - Li₂(a) - Li₂(z))`.
/// They coincide exactly when the Rogers identity holds.
pub fn limit_targets(a: f64, z: f64) -> Result<(f64, f64)> {
    let r = RogersInput::new(a, z)?;
    let target_f = f_eval(r.xi0, a, z)?;
    let target_r = LI2_ONE + li2_unchecked(a * z) - li2_unchecked(a) - li2_unchecked(z);
    Ok((target_f, target_r))
}

/// `Li₂(a) + Li₂(z) - [Li₂(az) + Li₂(aξ₀) + Li₂(1-ξ₀) + ln ξ₀ · ln((1-a)/(1-az))]`.
pub fn rogers_residual(a: f64, z: f64) -> Result<f64> {
    let r = RogersInput::new(a, z)?;
    let d = 1.0 - a * z;
    let left = li2_unchecked(a) + li2_unchecked(z);
    let right = li2_unchecked(a * z)
        + li2_unchecked(r.a_xi0)
        + li2_unchecked(r.one_minus_xi0)
        + libm::log(r.xi0) * libm::log((1.0 - a) / d);
    Ok(left - right)
}

/// `Li₂(x) + Li₂(1-x) - Li₂(1) + ln x · ln(1-x)`.
///
/// At `x ∈ {0, 1}` the logarithmic singularity is multiplied by a vanishing
/// factor (`x ln x → 0`), and the residual is defined as its limit `0`.
pub fn reflection_residual(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            what: "x",
            value: x,
            domain: "[0, 1]",
        });
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    let y = 1.0 - x;
    Ok(li2_unchecked(x) + li2_unchecked(y) - LI2_ONE + libm::log(x) * libm::log(y))
}
