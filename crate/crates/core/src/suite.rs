//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns `Ok(summary)` or `Err(first counterexample)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactq::{verify_e7, verify_e7_range};
use crate::limits::{
    extrapolate, limit_scan, limit_targets, reflection_residual, residuals_decreasing,
    rogers_residual, schedule_q, xi0, FitModel, ScanEntry,
};
use crate::qnumeric::{
    check_sandwich_e13, check_unimodal_sandwich, e7_lhs_numeric, e7_rhs_numeric, find_x0, ln_g,
    log_derivative_g, verify_qbinomial, QParams, LI2_ONE,
};
use crate::skewalg::{keys_up_to, verify_pentagon};

/// Seed of the random parameter pairs used for the Rogers identity.
pub const ROGERS_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        name: "exact coefficient identities, m, n <= 20",
        run: exact_coefficients,
    },
    Criterion {
        id: 2,
        name: "quantum pentagon to total degree 16",
        run: pentagon,
    },
    Criterion {
        id: 3,
        name: "q-binomial formula on the parameter grid",
        run: qbinomial,
    },
    Criterion {
        id: 4,
        name: "sandwich bounds",
        run: sandwiches,
    },
    Criterion {
        id: 5,
        name: "derivative criterion and peak location",
        run: derivative_criterion,
    },
    Criterion {
        id: 6,
        name: "q -> 1 limit of the scaled sum",
        run: limit,
    },
    Criterion {
        id: 7,
        name: "Rogers and reflection identities",
        run: rogers,
    },
    Criterion {
        id: 8,
        name: "exact vs numeric coefficients at q = 1/2",
        run: cross_layer,
    },
];

/// `n` parameter pairs in `[1e-6, 1)²` from a fixed-seed generator.
pub fn random_pairs(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (rng.gen_range(1e-6..1.0), rng.gen_range(1e-6..1.0)))
        .collect()
}

pub type Outcome = Result<String, String>;

const Q_GRID: [f64; 5] = [0.3, 0.5, 0.7, 0.9, 0.99];

fn unit_grid() -> impl Iterator<Item = f64> {
    (1..=9).map(|i| f64::from(i) / 10.0)
}

fn grid() -> impl Iterator<Item = (f64, f64, f64)> {
    Q_GRID
        .into_iter()
        .flat_map(|q| unit_grid().flat_map(move |a| unit_grid().map(move |z| (q, a, z))))
}

fn err(e: impl core::fmt::Debug) -> String {
    format!("{e:?}")
}

fn exact_coefficients() -> Outcome {
    let report = verify_e7_range(20, 20);
    if let Some(c) = report.failures().next() {
        return Err(format!(
            "(m, n) = ({}, {}) has a nonzero residual",
            c.m, c.n
        ));
    }
    Ok(format!(
        "{} pairs, zero residual, max degree {}",
        report.checks.len(),
        report.max_degree()
    ))
}

fn pentagon() -> Outcome {
    let report = verify_pentagon(16);
    if let Some(m) = report.first_mismatch() {
        return Err(format!(
            "coefficient of v^{} u^{}: {} vs {}",
            m.n, m.m, m.lhs, m.rhs
        ));
    }
    if !report.coefficient_forms_match() {
        return Err("side coefficients differ from the closed forms".to_string());
    }
    for (n, m) in keys_up_to(16) {
        let equal = report.lhs.coeff(n, m) == report.rhs.coeff(n, m);
        if equal != verify_e7(m, n) {
            return Err(format!(
                "coefficient check disagrees with the identity at (m, n) = ({m}, {n})"
            ));
        }
    }
    Ok(format!("{} coefficients equal", keys_up_to(16).count()))
}

fn qbinomial() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (q, a, z) in grid() {
        let r = verify_qbinomial(&QParams::new(q, a, z).map_err(err)?).map_err(err)?;
        if !r.pass() {
            return Err(format!("q={q} a={a} z={z}: {} vs {}", r.value, r.upper));
        }
        worst = worst.max((r.value - r.upper).abs() / (1.0 + r.upper.abs()));
        count += 1;
    }
    Ok(format!("{count} points, max scaled difference {worst:.3e}"))
}

fn sandwiches() -> Outcome {
    let mut count = 0;
    for (q, a, z) in grid() {
        let p = QParams::new(q, a, z).map_err(err)?;
        for x in [a, z, a * z, q] {
            let r = check_sandwich_e13(x, &p).map_err(err)?;
            if !r.pass() {
                return Err(format!(
                    "q={q} x={x}: {} <= {} <= {} fails",
                    r.lower, r.value, r.upper
                ));
            }
            count += 1;
        }
    }
    for k in 4..=10 {
        let p = QParams::new(schedule_q(k), 0.5, 0.5).map_err(err)?;
        let r = check_unimodal_sandwich(&p).map_err(err)?;
        if !r.pass() {
            return Err(format!(
                "k={k}: {} <= {} <= {} fails",
                r.lower, r.value, r.upper
            ));
        }
    }
    Ok(format!(
        "{count} single-point bounds, unimodal bounds for k=4..10"
    ))
}

fn derivative_criterion() -> Outcome {
    let mut worst: f64 = 0.0;
    for (q, a, z) in [
        (0.9, 0.5, 0.5),
        (0.99, 0.3, 0.7),
        (0.8, 0.7, 0.2),
        (schedule_q(8), 0.5, 0.5),
    ] {
        let p = QParams::new(q, a, z).map_err(err)?;
        for x in [0.25, 1.0, 3.0, 10.0, 40.0] {
            let step = (1.0 + x) * 1e-5;
            let fd = (ln_g(x + step, &p).map_err(err)? - ln_g(x - step, &p).map_err(err)?)
                / (2.0 * step);
            let d = log_derivative_g(x, &p).map_err(err)? - fd;
            worst = worst.max(d.abs());
            if d.abs() > 1e-6 {
                return Err(format!("q={q} a={a} z={z} x={x}: difference {d:e}"));
            }
        }
    }
    let xi = xi0(0.5, 0.5).map_err(err)?;
    let mut ratio = f64::NAN;
    for k in 4..=14 {
        let p = QParams::new(schedule_q(k), 0.5, 0.5).map_err(err)?;
        if !p.unimodal_ok() {
            continue;
        }
        let x0 = find_x0(&p).map_err(|e| format!("k={k}: {e:?}"))?;
        ratio = x0 * p.ln_q() / libm::log(xi);
    }
    if (ratio - 1.0).abs() > 0.05 {
        return Err(format!("peak ratio at k=14 is {ratio}"));
    }
    Ok(format!(
        "max derivative difference {worst:.2e}, peak ratio at k=14 {ratio:.6}"
    ))
}

fn limit() -> Outcome {
    let records: Vec<_> = limit_scan(0.5, 0.5, 4, 14)
        .map_err(err)?
        .iter()
        .filter_map(ScanEntry::record)
        .copied()
        .collect();
    if records.len() != 11 {
        return Err(format!("only {} scheduled points computed", records.len()));
    }
    if !residuals_decreasing(&records) {
        return Err("residuals do not decrease with k".to_string());
    }
    if let Some(r) = records.iter().find(|r| !r.within_envelope()) {
        return Err(format!(
            "k={}: |R - target| = {:e} exceeds {:e}",
            r.k,
            r.residual_r.abs(),
            r.envelope
        ));
    }
    let (target, _) = limit_targets(0.5, 0.5).map_err(err)?;
    let fit = extrapolate(&records, FitModel::default()).map_err(err)?;
    let diff = fit.limit - target;
    let tol = 1e-4 * (1.0 + target.abs());
    if diff.abs() > tol {
        return Err(format!(
            "extrapolated {} vs {target}, difference {diff:e}",
            fit.limit
        ));
    }
    Ok(format!(
        "residual {:.3e} -> {:.3e}, extrapolation error {:.3e} (tolerance {tol:.3e})",
        records[0].residual_l, records[10].residual_l, diff
    ))
}

fn rogers() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, z) in random_pairs(ROGERS_SEED, 100) {
        let r = rogers_residual(a, z).map_err(err)?;
        worst = worst.max(r.abs());
        if r.abs() > 1e-11 {
            return Err(format!("a={a} z={z}: residual {r:e}"));
        }
    }
    let mut worst_reflection: f64 = 0.0;
    for i in 1..=99 {
        let x = f64::from(i) / 100.0;
        let r = reflection_residual(x).map_err(err)?;
        worst_reflection = worst_reflection.max(r.abs());
        if r.abs() > 1e-13 {
            return Err(format!("reflection at x={x}: {r:e}"));
        }
    }
    Ok(format!(
        "max residual {worst:.2e}, max reflection residual {worst_reflection:.2e} (Li2(1) = {LI2_ONE:.6})"
    ))
}

fn cross_layer() -> Outcome {
    let report = verify_pentagon(8);
    let q0 = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut worst: f64 = 0.0;
    for (n, m) in keys_up_to(8) {
        let pairs = [
            (report.lhs.coeff(n, m), e7_lhs_numeric(m, n, 0.5)),
            (report.rhs.coeff(n, m), e7_rhs_numeric(m, n, 0.5)),
        ];
        for (exact, numeric) in pairs {
            let value = exact
                .eval_rational(&q0)
                .and_then(|v| v.to_f64())
                .ok_or_else(|| format!("coefficient ({n}, {m}) is undefined at q = 1/2"))?;
            let d = value - numeric;
            worst = worst.max(d.abs());
            if d.abs() > 1e-12 {
                return Err(format!("v^{n} u^{m}: exact {value} vs numeric {numeric}"));
            }
        }
    }
    Ok(format!(
        "{} coefficients, max difference {worst:.2e}",
        keys_up_to(8).count()
    ))
}
