use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qpentagon_core::exactq::*;

fn poly(c: &[i64]) -> IntPolyQ {
    IntPolyQ::from_i64s(c)
}

#[test]
fn e7_two_two_by_rational_arithmetic() {
    // brute force: both sides summed as reduced rational functions
    assert_eq!(e7_lhs(2, 2), e7_rhs(2, 2));
    assert!(verify_e7(2, 2));
}

#[test]
fn rational_route_agrees_with_cleared_route() {
    for m in 0..=7 {
        for n in 0..=7 {
            assert_eq!(e7_lhs(m, n) == e7_rhs(m, n), verify_e7(m, n));
            assert!(verify_e7(m, n));
        }
    }
}

#[test]
fn gauss_binom_symmetry_up_to_twenty() {
    let tri = GaussianTriangle::new(20);
    for m in 0..=20 {
        for k in 0..=m {
            assert_eq!(tri.get(m, k), tri.get(m, m - k), "[{m},{k}]");
            assert_eq!(&gauss_binom(m, k).unwrap(), tri.get(m, k));
        }
    }
}

#[test]
fn gauss_binom_at_one_is_binomial() {
    let tri = GaussianTriangle::new(20);
    for m in 0..=20usize {
        let mut c = BigInt::from(1);
        for k in 0..=m {
            let p = tri.get(m, k);
            assert!(p.is_nonnegative());
            let at_one: BigInt = p.coeffs().iter().sum();
            assert_eq!(at_one, c);
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
        }
    }
}

fn small_poly() -> impl Strategy<Value = IntPolyQ> {
    prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| IntPolyQ::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPolyQ> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn qpochhammer_matches_numeric_product(k in 0usize..12, num in 1i64..50, extra in 1i64..50) {
        let den = num + extra;
        let q0 = BigRational::new(num.into(), den.into());
        let mut direct = BigRational::from_integer(1.into());
        let mut pw = q0.clone();
        for _ in 1..=k {
            direct *= BigRational::from_integer(1.into()) - &pw;
            pw *= &q0;
        }
        prop_assert_eq!(qpochhammer_poly(k).eval_rational(&q0), direct);
    }

    #[test]
    fn canonical_form_is_idempotent(n in small_poly(), d in nonzero_poly(), f in nonzero_poly()) {
        let r = RatFuncQ::new(&n * &f, &d * &f).unwrap();
        prop_assert_eq!(r.canonicalize(), r.clone());
        prop_assert_eq!(r, RatFuncQ::new(n, d).unwrap());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), f in nonzero_poly()) {
        let x = &a * &f;
        let y = &b * &f;
        let g = x.gcd(&y);
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&f.primitive_part()).is_some());
    }

    #[test]
    fn ratfunc_field_laws(a in small_poly(), b in nonzero_poly(), c in small_poly(), d in nonzero_poly()) {
        let x = RatFuncQ::new(a, b).unwrap();
        let y = RatFuncQ::new(c, d).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
        }
    }
}

#[test]
fn sweep_reports_degree() {
    let r = verify_e7_range(3, 4);
    assert_eq!(r.checks.len(), 20);
    assert!(r.all_pass());
    assert!(r
        .checks
        .iter()
        .any(|c| c.m == 3 && c.n == 4 && c.max_degree >= 12));
    assert_eq!(poly(&[1, -1, -1, 1]), qpochhammer_poly(2));
}
