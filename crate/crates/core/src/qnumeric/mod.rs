//! Double-precision evaluation of the analytic side: `Li₂`, `ln φ`, the
//! q-binomial summand `g` and its peak, and the monotone sum/integral
//! sandwiches. Quantities involving `φ` are kept in log space throughout,
//! since `φ(x) ≈ exp(-Li₂(x)/ln q)` overflows long before `q` reaches one.

mod bounds;
mod li2;
mod params;
mod phi;
pub mod quad;
mod sum;
mod summand;

pub use bounds::{
    check_h_sum_integral, check_sandwich_e13, check_sum_integral, check_unimodal_sandwich,
    verify_qbinomial, BoundsReport, Monotone, SumIntegralCheck,
};
pub use li2::{li2, LI2_ONE};
pub use params::{QParams, DEFAULT_TOL_REL, DEFAULT_TOL_TERM};
pub use phi::{
    e7_lhs_numeric, e7_rhs_numeric, inv_phi_series, ln_phi, ln_phi_qpow, phi_series, qpoch,
    SeriesSum,
};
pub use sum::{log_add_exp, log_sum_exp, CompensatedSum};
pub use summand::{
    find_n0, find_x0, h_integral, h_sum, h_term, ln_g, ln_integral_g, ln_integral_g_from_peak,
    ln_sum_g, log_derivative_g, n0_from_x0, peaked_sum, qbinomial_rhs_ln, PeakedSum, SummandScan,
};

pub(crate) use li2::li2_unchecked;
pub(crate) use params::check_open_unit;
pub(crate) use phi::{ln_phi_qpow_unchecked, ln_phi_unchecked};
