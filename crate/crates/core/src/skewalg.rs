//! Truncated formal power series in two generators `u`, `v` subject to
//! `uv = q·vu`, with exact rational-function coefficients.
//!
//! Every element is stored in the normal-ordered basis `vⁿuᵐ`, keyed by
//! `(n, m)`. Moving `u^{m₁}` past `v^{n₂}` produces `q^{m₁n₂}`, so
//!
//! ```text
//! (v^{n₁}u^{m₁})(v^{n₂}u^{m₂}) = q^{m₁n₂} v^{n₁+n₂} u^{m₁+m₂}
//! ```
//!
//! Truncation is by total degree `n + m ≤ N`; since the product rule never
//! changes total degree, truncated products are exact up to degree `N`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exactq::{e7_lhs, e7_rhs, qpochhammer_poly, IntPolyQ, RatFuncQ};
use crate::{Error, Result};

/// Exponent pair `(n, m)` of the monomial `vⁿuᵐ`.
pub type Key = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewSeries {
    trunc: usize,
    coeffs: BTreeMap<Key, RatFuncQ>,
}

impl SkewSeries {
    pub fn zero(trunc: usize) -> Self {
        Self {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, 0, RatFuncQ::one(), trunc)
    }

    /// `c · vⁿuᵐ`; dropped if beyond the truncation order.
    pub fn monomial(n: usize, m: usize, c: RatFuncQ, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term((n, m), c);
        s
    }

    pub fn u(trunc: usize) -> Self {
        Self::monomial(0, 1, RatFuncQ::one(), trunc)
    }

    pub fn v(trunc: usize) -> Self {
        Self::monomial(1, 0, RatFuncQ::one(), trunc)
    }

    /// The normal-ordered product `vu`.
    pub fn vu(trunc: usize) -> Self {
        Self::monomial(1, 1, RatFuncQ::one(), trunc)
    }

    pub fn from_terms(trunc: usize, terms: impl IntoIterator<Item = (Key, RatFuncQ)>) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `vⁿuᵐ`.
    pub fn coeff(&self, n: usize, m: usize) -> RatFuncQ {
        self.coeffs
            .get(&(n, m))
            .cloned()
            .unwrap_or_else(RatFuncQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &RatFuncQ)> {
        self.coeffs.iter()
    }

    /// Number of stored nonzero coefficients; see [`SkewSeries::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, key: Key, c: RatFuncQ) {
        if key.0 + key.1 > self.trunc || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.coeffs.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        Self::from_terms(self.trunc, self.coeffs.iter().map(|(k, x)| (*k, x * c)))
    }

    fn check_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    /// Product in the q-commuting algebra, re-ordered into the `vⁿuᵐ` basis.
    pub fn skew_mul(&self, other: &Self) -> Result<Self> {
        self.check_trunc(other)?;
        let n_max = self.trunc;
        // Collect contributions per key, then sum once.
        let mut buckets: BTreeMap<Key, Vec<RatFuncQ>> = BTreeMap::new();
        for (&(n1, m1), c1) in &self.coeffs {
            for (&(n2, m2), c2) in &other.coeffs {
                if n1 + m1 + n2 + m2 > n_max {
                    continue;
                }
                let prod = (c1 * c2).mul_q_power(m1 * n2);
                buckets.entry((n1 + n2, m1 + m2)).or_default().push(prod);
            }
        }
        let mut out = Self::zero(n_max);
        for (k, parts) in buckets {
            let sum = sum_grouped(parts);
            if !sum.is_zero() {
                out.coeffs.insert(k, sum);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.trunc);
        for _ in 0..k {
            acc = acc.skew_mul(self).expect("same truncation");
        }
        acc
    }

    /// `φ(X) = Σ_{k≥0} X^k / (q;q)_k` for `X` without constant term.
    ///
    /// `X^k` has total degree at least `k`, so the sum stops at `k = N`.
    pub fn phi_expand(&self) -> Result<Self> {
        if self.coeffs.contains_key(&(0, 0)) {
            return Err(Error::ConstantTerm);
        }
        let n_max = self.trunc;
        let mut out = Self::one(n_max);
        let mut power = Self::one(n_max);
        for k in 1..=n_max {
            power = power.skew_mul(self)?;
            if power.is_zero() {
                break;
            }
            let inv = RatFuncQ::recip_poly(qpochhammer_poly(k))?;
            for (key, c) in power.scale(&inv).coeffs {
                out.add_term(key, c);
            }
        }
        Ok(out)
    }
}

// Pairwise tree summation keeps intermediate denominators balanced.
fn sum_grouped(mut parts: Vec<RatFuncQ>) -> RatFuncQ {
    if parts.is_empty() {
        return RatFuncQ::zero();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_else(RatFuncQ::zero)
}

/// Both sides of `φ(u)φ(v) = φ(v)φ(-vu)φ(u)` truncated at total degree `trunc`.
pub fn pentagon_sides(trunc: usize) -> (SkewSeries, SkewSeries) {
    let phi_u = SkewSeries::u(trunc)
        .phi_expand()
        .expect("u has no constant term");
    let phi_v = SkewSeries::v(trunc)
        .phi_expand()
        .expect("v has no constant term");
    let phi_mvu = SkewSeries::vu(trunc)
        .neg()
        .phi_expand()
        .expect("vu has no constant term");
    let lhs = phi_u.skew_mul(&phi_v).expect("same truncation");
    let rhs = phi_v
        .skew_mul(&phi_mvu)
        .and_then(|s| s.skew_mul(&phi_u))
        .expect("same truncation");
    (lhs, rhs)
}

/// One coefficient where the two sides of the pentagon disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub lhs: RatFuncQ,
    pub rhs: RatFuncQ,
}

#[derive(Clone, Debug)]
pub struct PentagonReport {
    pub trunc: usize,
    pub lhs: SkewSeries,
    pub rhs: SkewSeries,
    /// Mismatching coefficients in `(n, m)` order.
    pub mismatches: Vec<Mismatch>,
}

impl PentagonReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    /// Per-coefficient comparison of each side with the closed forms of
    /// [`e7_lhs`] and [`e7_rhs`]: the left coefficient of `vⁿuᵐ` should be
    /// `e7_lhs(m, n)` and the right one `e7_rhs(m, n)`.
    pub fn coefficient_forms_match(&self) -> bool {
        keys_up_to(self.trunc).all(|(n, m)| {
            self.lhs.coeff(n, m) == e7_lhs(m, n) && self.rhs.coeff(n, m) == e7_rhs(m, n)
        })
    }
}

/// All keys `(n, m)` with `n + m ≤ trunc`.
pub fn keys_up_to(trunc: usize) -> impl Iterator<Item = Key> {
    (0..=trunc).flat_map(move |n| (0..=trunc - n).map(move |m| (n, m)))
}

pub fn verify_pentagon(trunc: usize) -> PentagonReport {
    let (lhs, rhs) = pentagon_sides(trunc);
    let mismatches = keys_up_to(trunc)
        .filter_map(|(n, m)| {
            let l = lhs.coeff(n, m);
            let r = rhs.coeff(n, m);
            (l != r).then_some(Mismatch {
                n,
                m,
                lhs: l,
                rhs: r,
            })
        })
        .collect();
    PentagonReport {
        trunc,
        lhs,
        rhs,
        mismatches,
    }
}

/// `q^k` as a rational function.
pub fn q_power(k: usize) -> RatFuncQ {
    RatFuncQ::from_poly(IntPolyQ::q_power(k))
}
