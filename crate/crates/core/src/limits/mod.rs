//! The classical limit: Rogers and reflection identities for `Li₂`, the scan
//! over `q_k = 1 - 2^{-k}` of `L(q) = ln q · ln S(g)`, and extrapolation of
//! `L` to `q = 1`.

mod extrapolate;
mod rogers;
mod scan;

pub use extrapolate::{extrapolate, extrapolate_points, Extrapolation, FitModel, MIN_RECORDS};
pub use rogers::{
    f_eval, f_q_eval, limit_targets, reflection_residual, rogers_residual, xi0, RogersInput,
};
pub use scan::{
    limit_scan, residuals_decreasing, rigorous_envelope, scan_record, schedule_q, LimitScanRecord,
    ScanEntry, MAX_K,
};
