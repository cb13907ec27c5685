//! Exact arithmetic in `q`: polynomials with big-integer coefficients,
//! reduced rational functions, finite q-Pochhammer symbols, Gaussian
//! binomials, and the coefficient identities behind the q-binomial formula.
//!
//! The identity checked for each `(m, n)` is
//!
//! ```text
//! q^{mn} / ((q;q)_m (q;q)_n) = Σ_{k=0}^{min(m,n)} (-1)^k q^{k(k-1)/2} / ((q;q)_{m-k} (q;q)_{n-k} (q;q)_k)
//! ```
//!
//! [`verify_e7`] multiplies through by `(q;q)_m (q;q)_n` and compares
//! `q^{mn}` with `Σ_k (-1)^k q^{k(k-1)/2} [m,k] [n,k] (q;q)_k` in `Z[q]`.
//! [`e7_lhs`] and [`e7_rhs`] build both sides as rational functions instead,
//! which is slower but independent of the Gaussian-binomial route.

mod poly;
mod ratfunc;

use alloc::vec::Vec;

use num_bigint::BigInt;

pub use poly::IntPolyQ;
pub use ratfunc::RatFuncQ;

use crate::{Error, Result};

/// `(q;q)_k = ∏_{n=1}^{k} (1 - q^n)`, a polynomial of degree `k(k+1)/2`.
pub fn qpochhammer_poly(k: usize) -> IntPolyQ {
    let mut acc = IntPolyQ::one();
    for n in 1..=k {
        acc.mul_one_minus_q_pow(n);
    }
    acc
}

/// Gaussian binomial `[m, k]_q = (q;q)_m / ((q;q)_k (q;q)_{m-k})`.
///
/// Built with the q-Pascal rule `[m,k] = [m-1,k-1] + q^k [m-1,k]`, so no
/// polynomial division is involved.
pub fn gauss_binom(m: usize, k: usize) -> Result<IntPolyQ> {
    if k > m {
        return Err(Error::BinomialRange { m, k });
    }
    Ok(GaussianTriangle::new(m).get(m, k).clone())
}

/// Rows `0..=max_m` of Gaussian binomials, row `m` holding `[m, 0..=m]`.
#[derive(Clone, Debug)]
pub struct GaussianTriangle {
    rows: Vec<Vec<IntPolyQ>>,
}

impl GaussianTriangle {
    pub fn new(max_m: usize) -> Self {
        let mut rows: Vec<Vec<IntPolyQ>> = Vec::with_capacity(max_m + 1);
        rows.push(alloc::vec![IntPolyQ::one()]);
        for m in 1..=max_m {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            row.push(IntPolyQ::one());
            for k in 1..m {
                row.push(&prev[k - 1] + &prev[k].shift(k));
            }
            row.push(IntPolyQ::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[m, k]`; panics outside `k ≤ m ≤ max_m`.
    pub fn get(&self, m: usize, k: usize) -> &IntPolyQ {
        &self.rows[m][k]
    }
}

/// Left side `q^{mn} / ((q;q)_m (q;q)_n)` as a reduced rational function.
pub fn e7_lhs(m: usize, n: usize) -> RatFuncQ {
    let den = &qpochhammer_poly(m) * &qpochhammer_poly(n);
    RatFuncQ::new(IntPolyQ::q_power(m * n), den).expect("(q;q)_k is nonzero")
}

/// Right side `Σ_k (-1)^k q^{k(k-1)/2} / ((q;q)_{m-k}(q;q)_{n-k}(q;q)_k)`,
/// summed in the rational-function field.
pub fn e7_rhs(m: usize, n: usize) -> RatFuncQ {
    let poch: Vec<IntPolyQ> = (0..=m.max(n)).map(qpochhammer_poly).collect();
    let mut acc = RatFuncQ::zero();
    for k in 0..=m.min(n) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let num = IntPolyQ::monomial(BigInt::from(sign), k * (k.saturating_sub(1)) / 2);
        let den = &(&poch[m - k] * &poch[n - k]) * &poch[k];
        let term = RatFuncQ::new(num, den).expect("(q;q)_k is nonzero");
        acc = &acc + &term;
    }
    acc
}

/// Outcome of one cleared-denominator check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E7Check {
    pub m: usize,
    pub n: usize,
    pub holds: bool,
    /// Largest polynomial degree formed while checking this pair.
    pub max_degree: usize,
}

/// Exact check of the `(m, n)` coefficient identity.
pub fn verify_e7(m: usize, n: usize) -> bool {
    check_e7(&GaussianTriangle::new(m.max(n)), m, n).holds
}

fn check_e7(tri: &GaussianTriangle, m: usize, n: usize) -> E7Check {
    let mut rhs = IntPolyQ::zero();
    let mut poch = IntPolyQ::one();
    let mut max_degree = m * n;
    for k in 0..=m.min(n) {
        if k > 0 {
            poch.mul_one_minus_q_pow(k);
        }
        let mut term = &(tri.get(m, k) * tri.get(n, k)) * &poch;
        term = term.shift(k * (k.saturating_sub(1)) / 2);
        max_degree = max_degree.max(term.degree().unwrap_or(0));
        rhs = if k % 2 == 0 {
            &rhs + &term
        } else {
            &rhs - &term
        };
    }
    let holds = rhs == IntPolyQ::q_power(m * n);
    E7Check {
        m,
        n,
        holds,
        max_degree,
    }
}

/// Sweep over all `0 ≤ m ≤ max_m`, `0 ≤ n ≤ max_n`.
#[derive(Clone, Debug)]
pub struct E7Report {
    pub max_m: usize,
    pub max_n: usize,
    pub checks: Vec<E7Check>,
}

impl E7Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &E7Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn max_degree(&self) -> usize {
        self.checks.iter().map(|c| c.max_degree).max().unwrap_or(0)
    }
}

pub fn verify_e7_range(max_m: usize, max_n: usize) -> E7Report {
    let tri = GaussianTriangle::new(max_m.max(max_n));
    let mut checks = Vec::with_capacity((max_m + 1) * (max_n + 1));
    for m in 0..=max_m {
        for n in 0..=max_n {
            checks.push(check_e7(&tri, m, n));
        }
    }
    E7Report {
        max_m,
        max_n,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolyQ {
        IntPolyQ::from_i64s(c)
    }

    #[test]
    fn qpochhammer_small_cases() {
        assert_eq!(qpochhammer_poly(0), IntPolyQ::one());
        assert_eq!(qpochhammer_poly(1), p(&[1, -1]));
        assert_eq!(qpochhammer_poly(2), p(&[1, -1, -1, 1]));
        for k in 0..12 {
            assert_eq!(qpochhammer_poly(k).degree(), Some(k * (k + 1) / 2));
        }
    }

    #[test]
    fn gauss_binom_small_cases() {
        assert_eq!(gauss_binom(2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(gauss_binom(7, 0).unwrap(), IntPolyQ::one());
        assert_eq!(gauss_binom(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(gauss_binom(2, 3), Err(Error::BinomialRange { m: 2, k: 3 }));
    }

    #[test]
    fn gauss_binom_is_quotient_of_pochhammers() {
        for m in 0..10 {
            for k in 0..=m {
                let den = &qpochhammer_poly(k) * &qpochhammer_poly(m - k);
                assert_eq!(
                    qpochhammer_poly(m).div_exact(&den),
                    Some(gauss_binom(m, k).unwrap())
                );
            }
        }
    }

    #[test]
    fn e7_one_one_is_q_over_one_minus_q_squared() {
        let expected = RatFuncQ::new(p(&[0, 1]), p(&[1, -2, 1])).unwrap();
        assert_eq!(e7_lhs(1, 1), expected);
        assert_eq!(e7_rhs(1, 1), expected);
        assert!(verify_e7(1, 1));
    }

    #[test]
    fn e7_with_m_zero_is_reciprocal_pochhammer() {
        for n in 0..6 {
            let expected = RatFuncQ::recip_poly(qpochhammer_poly(n)).unwrap();
            assert_eq!(e7_lhs(0, n), expected);
            assert_eq!(e7_rhs(0, n), expected);
            assert!(verify_e7(0, n));
        }
    }

    #[test]
    fn range_reports() {
        let trivial = verify_e7_range(0, 0);
        assert_eq!(trivial.checks.len(), 1);
        assert!(trivial.all_pass());
        let r = verify_e7_range(5, 5);
        assert_eq!(r.checks.len(), 36);
        assert!(r.all_pass());
        assert_eq!(r.failures().count(), 0);
        assert!(r.max_degree() >= 25);
    }

    #[test]
    fn a_perturbed_identity_fails() {
        // Dropping the sign alternation must break the identity.
        let tri = GaussianTriangle::new(3);
        let mut rhs = IntPolyQ::zero();
        let mut poch = IntPolyQ::one();
        for k in 0..=2 {
            if k > 0 {
                poch.mul_one_minus_q_pow(k);
            }
            rhs = &rhs
                + &(&(tri.get(2, k) * tri.get(3, k)) * &poch).shift(k * k.saturating_sub(1) / 2);
        }
        assert_ne!(rhs, IntPolyQ::q_power(6));
    }
}
