use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPolyQ;
use crate::{Error, Result};

/// Rational function `num / den` in `q`, always kept in canonical form.
///
/// Canonical means: `num` and `den` have no common polynomial factor, the
/// integer gcd of all their coefficients is one, and `den` has a positive
/// leading coefficient. Two values are equal iff their representations are.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: IntPolyQ,
    den: IntPolyQ,
}

impl RatFuncQ {
    pub fn new(num: IntPolyQ, den: IntPolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        Self {
            num: IntPolyQ::zero(),
            den: IntPolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolyQ::one())
    }

    pub fn from_poly(p: IntPolyQ) -> Self {
        Self {
            num: p,
            den: IntPolyQ::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPolyQ::constant(BigInt::from(c)))
    }

    /// `1 / p`.
    pub fn recip_poly(p: IntPolyQ) -> Result<Self> {
        Self::new(IntPolyQ::one(), p)
    }

    pub fn num(&self) -> &IntPolyQ {
        &self.num
    }

    pub fn den(&self) -> &IntPolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    // den must be nonzero.
    fn reduce(num: IntPolyQ, den: IntPolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).primitive_part();
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if c != BigInt::from(1) {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Self { num, den }
    }

    /// Re-run canonicalisation. On a canonical value this is the identity.
    pub fn canonicalize(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Multiply by the monomial `q^k`.
    pub fn mul_q_power(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        // den could share a factor q with the shifted numerator
        if self.den.coeff(0).is_zero() {
            Self::reduce(self.num.shift(k), self.den.clone())
        } else {
            Self {
                num: self.num.shift(k),
                den: self.den.clone(),
            }
        }
    }

    /// Exact value at a rational point; `None` where the denominator vanishes.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den).primitive_part();
        let (left_cof, right_cof) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (
                rhs.den.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &left_cof) + &(&rhs.num * &right_cof);
        let den = &self.den * &left_cof;
        RatFuncQ::reduce(num, den)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // Cross-cancel first so the products stay small.
        let g1 = self.num.gcd(&rhs.den).primitive_part();
        let g2 = rhs.num.gcd(&self.den).primitive_part();
        let cancel = |p: &IntPolyQ, g: &IntPolyQ| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        RatFuncQ::reduce(num, den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, rhs: RatFuncQ) -> RatFuncQ { (&self).$m(&rhs) }
        }
        impl $tr<&RatFuncQ> for RatFuncQ {
            type Output = RatFuncQ;
            fn $m(self, rhs: &RatFuncQ) -> RatFuncQ { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolyQ {
        IntPolyQ::from_i64s(c)
    }

    fn r(n: &[i64], d: &[i64]) -> RatFuncQ {
        RatFuncQ::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            RatFuncQ::new(p(&[1]), IntPolyQ::zero()),
            Err(Error::ZeroDenominator)
        );
        assert!(RatFuncQ::zero().recip().is_err());
    }

    #[test]
    fn canonical_form_cancels_and_fixes_sign() {
        // (2 - 2q^2) / (-4 + 4q) = -(1 + q)/2
        let x = r(&[2, 0, -2], &[-4, 4]);
        assert_eq!(x.num(), &p(&[-1, -1]));
        assert_eq!(x.den(), &p(&[2]));
        assert_eq!(x, r(&[1, 1], &[-2]));
    }

    #[test]
    fn field_operations() {
        let a = r(&[1], &[1, -1]);
        let b = r(&[0, 1], &[1, -1]);
        // 1/(1-q) - q/(1-q) = 1
        assert!((&a - &b).is_one());
        // 1/(1-q) · (1-q) = 1
        assert!((&a * &RatFuncQ::from_poly(p(&[1, -1]))).is_one());
        assert!(a.checked_div(&a).unwrap().is_one());
        assert!(a.checked_div(&RatFuncQ::zero()).is_err());
    }

    #[test]
    fn shift_by_q_power_cancels_denominator_q() {
        let a = r(&[1], &[0, 0, 1]);
        assert!(a.mul_q_power(2).is_one());
    }

    #[test]
    fn rational_evaluation() {
        let a = r(&[0, 1], &[1, -2, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            a.eval_rational(&half),
            Some(BigRational::from_integer(2.into()))
        );
        assert_eq!(r(&[1], &[1, -2]).eval_rational(&half), None);
    }
}
