use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial in `q` with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolyQ {
    coeffs: Vec<BigInt>,
}

impl IntPolyQ {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · q^power`.
    pub fn monomial(c: BigInt, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self { coeffs }
    }

    /// `q^power`.
    pub fn q_power(power: usize) -> Self {
        Self::monomial(BigInt::one(), power)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply in place by `(1 - q^n)`, `n ≥ 1`.
    pub(crate) fn mul_one_minus_q_pow(&mut self, n: usize) {
        if self.is_zero() {
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + n, BigInt::zero());
        for i in (n..old_len + n).rev() {
            let shifted = self.coeffs[i - n].clone();
            self.coeffs[i] -= shifted;
        }
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, normalised to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Divide every coefficient by `d`, which must divide all of them.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Self {
        if d.is_one() {
            return self.clone();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        }
    }

    /// Quotient `self / divisor` when it exists in `Z[q]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dn = self.degree()?;
        if dn < dd {
            return None;
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let lead = divisor.leading_coeff()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `divisor` (`lc(divisor)^e · self mod divisor`).
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = match divisor.degree() {
            Some(d) => d,
            None => return self.clone(),
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let t = rem[top].clone();
            if t.is_zero() {
                rem.pop();
                continue;
            }
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            let off = top - dd;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[off + j] -= &t * dc;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Self::from_coeffs(rem)
    }

    /// Greatest common divisor in `Z[q]`, with positive leading coefficient.
    ///
    /// Primitive remainder sequence; the integer content is the gcd of the
    /// two contents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        if self.is_constant() || other.is_constant() {
            return Self::constant(content);
        }
        // Cheap exits for the frequent case where one side divides the other.
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        if a == b || a.div_exact(&b).is_some() {
            return b.scale(&content);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.scale(&content);
            }
            if r.is_constant() {
                return Self::constant(content);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// True when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c.sign() != Sign::Minus)
    }
}

impl fmt::Debug for IntPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolyQ {
    type Output = IntPolyQ;
    fn add(self, rhs: &IntPolyQ) -> IntPolyQ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolyQ::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolyQ {
    type Output = IntPolyQ;
    fn sub(self, rhs: &IntPolyQ) -> IntPolyQ {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPolyQ::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolyQ {
    type Output = IntPolyQ;
    fn mul(self, rhs: &IntPolyQ) -> IntPolyQ {
        if self.is_zero() || rhs.is_zero() {
            return IntPolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPolyQ::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolyQ {
    type Output = IntPolyQ;
    fn neg(self) -> IntPolyQ {
        IntPolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolyQ {
            type Output = IntPolyQ;
            fn $m(self, rhs: IntPolyQ) -> IntPolyQ { (&self).$m(&rhs) }
        }
        impl $tr<&IntPolyQ> for IntPolyQ {
            type Output = IntPolyQ;
            fn $m(self, rhs: &IntPolyQ) -> IntPolyQ { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolyQ {
    type Output = IntPolyQ;
    fn neg(self) -> IntPolyQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolyQ {
        IntPolyQ::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn product_and_exact_division() {
        let a = p(&[1, -1]);
        let b = p(&[1, 0, -1]);
        let prod = &a * &b;
        assert_eq!(prod, p(&[1, -1, -1, 1]));
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[2])), None);
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn one_minus_q_pow_matches_generic_product() {
        let mut a = p(&[3, 0, -2, 5]);
        let b = &a * &p(&[1, 0, 0, -1]);
        a.mul_one_minus_q_pow(3);
        assert_eq!(a, b);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[1, -1]);
        let g = p(&[2, 1, 3]);
        let h = p(&[-1, 0, 4]);
        let a = &(&f * &g).scale(&BigInt::from(6)) * &f;
        let b = (&f * &h).scale(&BigInt::from(-4));
        // gcd = 2 · (q - 1) normalised to positive leading coefficient
        assert_eq!(a.gcd(&b), p(&[-2, 2]));
        assert_eq!(g.gcd(&h), IntPolyQ::one());
        assert_eq!(IntPolyQ::zero().gcd(&h), h);
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        assert_eq!(p(&[4, -6]).primitive_part(), p(&[-2, 3]));
        assert_eq!(p(&[4, -6]).content(), BigInt::from(2));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            alloc::format!("{}", p(&[1, -1, -1, 1])),
            "1 - q - q^2 + q^3"
        );
        assert_eq!(alloc::format!("{}", p(&[0, 2])), "2q");
        assert_eq!(alloc::format!("{}", IntPolyQ::zero()), "0");
    }
}
