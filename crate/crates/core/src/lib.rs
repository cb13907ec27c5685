//! Verification engine for the q-binomial formula, the quantum pentagon
//! identity it is equivalent to, and the q → 1⁻ limit in which both reduce
//! to the Rogers five-term identity for the Euler dilogarithm.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised in four layers:
//!
//! * [`exactq`] — exact polynomials and rational functions in `q` over the
//!   integers, Gaussian binomials, and the coefficient identities
//!   `q^{mn}/((q;q)_m (q;q)_n) = Σ_k (-1)^k q^{k(k-1)/2} / ((q;q)_{m-k}(q;q)_{n-k}(q;q)_k)`.
//! * [`skewalg`] — truncated power series in two generators with `uv = q·vu`,
//!   the quantum exponential `φ`, and the pentagon check
//!   `φ(u)φ(v) = φ(v)φ(-vu)φ(u)`.
//! * [`qnumeric`] — double-precision, log-space evaluation of `Li₂`, `ln φ`,
//!   the q-binomial summand `g`, its peak, and sum/integral sandwich bounds.
//! * [`limits`] — the Rogers and reflection identities, the `q = 1 - 2^{-k}`
//!   limit scan and its extrapolation.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod exactq;
pub mod limits;
pub mod qnumeric;
pub mod skewalg;
pub mod suite;

pub use error::{Error, Result};
