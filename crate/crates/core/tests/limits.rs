use proptest::prelude::*;
use qpentagon_core::limits::*;
use qpentagon_core::qnumeric::{li2, LI2_ONE};

#[test]
fn f_is_stationary_at_xi0() {
    let (a, z) = (0.5, 0.5);
    let x = xi0(a, z).unwrap();
    let step = 1e-5;
    let d = (f_eval(x + step, a, z).unwrap() - f_eval(x - step, a, z).unwrap()) / (2.0 * step);
    assert!(d.abs() < 1e-6);
    // and it is a minimum of F (the maximum of g)
    assert!(f_eval(x + 0.05, a, z).unwrap() > f_eval(x, a, z).unwrap());
    assert!(f_eval(x - 0.05, a, z).unwrap() > f_eval(x, a, z).unwrap());
}

#[test]
fn f_at_two_thirds_from_li2() {
    let expected =
        li2(2.0 / 3.0).unwrap() - li2(1.0 / 3.0).unwrap() + libm::log(2.0 / 3.0) * libm::log(0.5);
    assert!((f_eval(2.0 / 3.0, 0.5, 0.5).unwrap() - expected).abs() < 1e-15);
}

#[test]
fn rogers_at_half() {
    assert!(rogers_residual(0.5, 0.5).unwrap().abs() <= 1e-12);
}

#[test]
fn reflection_at_half_is_closed_form() {
    let ln2 = core::f64::consts::LN_2;
    let v = 2.0 * li2(0.5).unwrap() - LI2_ONE + ln2 * ln2;
    assert!(v.abs() < 1e-15);
    assert!(reflection_residual(0.5).unwrap().abs() < 1e-15);
}

proptest! {
    #[test]
    fn rogers_identity(a in 1e-6f64..1.0, z in 1e-6f64..1.0) {
        prop_assume!(a < 1.0 && z < 1.0);
        let r = rogers_residual(a, z).unwrap();
        prop_assert!(r.abs() <= 1e-12 * (1.0 + LI2_ONE), "a={} z={} r={}", a, z, r);
    }

    #[test]
    fn reflection_symmetric(x in 0.0f64..=1.0) {
        let d = reflection_residual(x).unwrap() - reflection_residual(1.0 - x).unwrap();
        prop_assert!(d.abs() <= 1e-15, "x={} d={}", x, d);
    }

    #[test]
    fn targets_coincide(a in 0.01f64..0.99, z in 0.01f64..0.99) {
        let (f, r) = limit_targets(a, z).unwrap();
        prop_assert!((f - r).abs() <= 1e-11);
        prop_assert!((f - r + rogers_residual(a, z).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn scan_for_unequal_parameters() {
    let entries = limit_scan(0.3, 0.7, 3, 11).unwrap();
    let records: Vec<_> = entries
        .iter()
        .filter_map(ScanEntry::record)
        .copied()
        .collect();
    assert!(records.len() >= 8);
    for r in &records {
        assert!((r.target_f - r.target_r).abs() <= 1e-12);
        assert!(r.within_envelope(), "k={}", r.k);
        assert!((r.l_value - r.r_value).abs() < 1e-10);
    }
    assert!(residuals_decreasing(&records));
    for w in records.windows(2).skip(2) {
        assert!((w[1].residual_l / w[0].residual_l).abs() <= 0.9);
    }
}

#[test]
fn decreasing_check_allows_one_early_bump() {
    let mut records: Vec<_> = limit_scan(0.5, 0.5, 4, 9)
        .unwrap()
        .into_iter()
        .filter_map(|e| e.record().copied())
        .collect();
    assert!(residuals_decreasing(&records));
    records.swap(0, 1);
    assert!(residuals_decreasing(&records));
    records.swap(4, 5);
    assert!(!residuals_decreasing(&records));
}
