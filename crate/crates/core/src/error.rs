use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gaussian binomial `[m, k]` requested with `k > m`.
    #[error("gaussian binomial [{m}, {k}] is undefined: k exceeds m")]
    BinomialRange { m: usize, k: usize },

    #[error("rational function with zero denominator")]
    ZeroDenominator,

    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    /// `φ(X)` is only defined formally when `X` has no constant term.
    #[error("phi expansion needs an argument without constant term")]
    ConstantTerm,

    #[error("{what} = {value} is outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The condition `q > 1 - z(1 - a)` that guarantees a single peak of `g`.
    #[error("q = {q} does not exceed 1 - z(1 - a) = {threshold}; unimodality is not guaranteed")]
    NotUnimodal { q: f64, threshold: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("no sign change of the log-derivative found up to x = {0}")]
    NoSignChange(f64),

    #[error("extrapolation needs at least {need} records, got {got}")]
    TooFewRecords { got: usize, need: usize },

    #[error("least-squares fit is rank deficient")]
    RankDeficient,
}
