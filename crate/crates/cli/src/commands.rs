//! One function per subcommand, each turning a validated config into a report.

use rayon::prelude::*;

use qpentagon_core::exactq::{verify_e7, verify_e7_range};
use qpentagon_core::limits::{
    extrapolate, f_eval, limit_targets, reflection_residual, residuals_decreasing, rogers_residual,
    scan_record, xi0, FitModel, LimitScanRecord, ScanEntry, MIN_RECORDS,
};
use qpentagon_core::qnumeric::{
    check_h_sum_integral, check_sandwich_e13, check_sum_integral, check_unimodal_sandwich, find_x0,
    h_integral, h_sum, li2, ln_g, ln_integral_g, ln_phi, ln_sum_g, log_derivative_g, n0_from_x0,
    qbinomial_rhs_ln, verify_qbinomial, BoundsReport, Monotone, QParams,
};
use qpentagon_core::skewalg::{keys_up_to, verify_pentagon};
use qpentagon_core::suite::{random_pairs, CRITERIA, ROGERS_SEED};

use crate::config::{CommandKind, RunConfig};
use crate::report::{Cell, Report};
use crate::CliError;

/// Rogers residual bound for random parameter pairs.
pub const ROGERS_TOL: f64 = 1e-11;
/// Reflection residual bound on the grid `x = i/100`.
pub const REFLECTION_TOL: f64 = 1e-13;
/// Number of random pairs checked by `rogers`.
pub const ROGERS_PAIRS: usize = 100;
/// Extrapolation tolerance, relative to `1 + |F(ξ₀)|`.
pub const EXTRAPOLATION_TOL: f64 = 1e-4;

pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        CommandKind::VerifyE7 => Ok(verify_e7_cmd(cfg)),
        CommandKind::VerifyPentagon => Ok(verify_pentagon_cmd(cfg)),
        CommandKind::Eval => eval_cmd(cfg),
        CommandKind::Bounds => bounds_cmd(cfg),
        CommandKind::LimitScan => limit_scan_cmd(cfg),
        CommandKind::Rogers => rogers_cmd(cfg),
        CommandKind::All => Ok(all_cmd()),
    }
}

fn params(cfg: &RunConfig) -> Result<QParams, CliError> {
    Ok(QParams::new(cfg.q, cfg.a, cfg.z)?
        .with_tol_rel(cfg.tol_rel)?
        .with_tol_term(cfg.tol_term)?)
}

fn verify_e7_cmd(cfg: &RunConfig) -> Report {
    let sweep = verify_e7_range(cfg.max_m, cfg.max_n);
    let mut r = Report::new(vec!["m", "n", "holds", "max_degree"]);
    for c in &sweep.checks {
        r.push_row(vec![
            c.m.into(),
            c.n.into(),
            c.holds.into(),
            c.max_degree.into(),
        ]);
    }
    r.summarize("pairs", sweep.checks.len());
    r.summarize("max_degree", sweep.max_degree());
    let detail = match sweep.failures().next() {
        Some(c) => format!("identity fails at (m, n) = ({}, {})", c.m, c.n),
        None => format!("all {} pairs hold exactly", sweep.checks.len()),
    };
    r.check("coefficient identities", sweep.all_pass(), detail);
    r
}

fn verify_pentagon_cmd(cfg: &RunConfig) -> Report {
    let report = verify_pentagon(cfg.degree);
    let mut r = Report::new(vec!["n", "m", "equal", "identity_holds"]);
    let mut disagreement = None;
    for (n, m) in keys_up_to(cfg.degree) {
        let equal = report.lhs.coeff(n, m) == report.rhs.coeff(n, m);
        let holds = verify_e7(m, n);
        if equal != holds && disagreement.is_none() {
            disagreement = Some((n, m));
        }
        r.push_row(vec![n.into(), m.into(), equal.into(), holds.into()]);
    }
    r.summarize("coefficients", r.rows.len());
    let detail = match report.first_mismatch() {
        Some(m) => format!("coefficient of v^{} u^{}: {} vs {}", m.n, m.m, m.lhs, m.rhs),
        None => format!("both sides agree up to total degree {}", cfg.degree),
    };
    r.check("pentagon identity", report.holds(), detail);
    r.check(
        "coefficients match the closed forms",
        report.coefficient_forms_match(),
        "left and right coefficients against the two sides of the coefficient identity",
    );
    let detail = match disagreement {
        Some((n, m)) => format!("disagreement at v^{n} u^{m}"),
        None => "per-coefficient results coincide".to_string(),
    };
    r.check(
        "agreement with the coefficient identities",
        disagreement.is_none(),
        detail,
    );
    r
}

fn eval_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = params(cfg)?;
    let (q, a, z, x) = (cfg.q, cfg.a, cfg.z, cfg.x);
    let mut r = Report::new(vec!["quantity", "value"]);
    let mut add = |name: &str, v: Cell| r.push_row(vec![name.into(), v]);
    add("ln_phi(x)", ln_phi(x, &p)?.into());
    add("li2(x)", li2(x)?.into());
    add("ln_phi(a)", ln_phi(a, &p)?.into());
    add("ln_phi(z)", ln_phi(z, &p)?.into());
    add("ln_phi(q)", ln_phi(q, &p)?.into());
    add("ln_phi(az)", ln_phi(a * z, &p)?.into());
    add("ln_sum_g", ln_sum_g(&p)?.into());
    add("qbinomial_rhs_ln", qbinomial_rhs_ln(&p).into());
    add("ln_g(x)", ln_g(x, &p)?.into());
    add("log_derivative_g(x)", log_derivative_g(x, &p)?.into());
    add("h_sum(x)", h_sum(x, &p)?.into());
    add("h_integral(x)", h_integral(x, &p)?.into());
    add("unimodal_threshold", p.unimodal_threshold().into());
    if p.unimodal_ok() {
        let x0 = find_x0(&p)?;
        add("x0", x0.into());
        add("n0", n0_from_x0(x0, &p).into());
        add("ln_integral_g", ln_integral_g(&p)?.into());
    } else {
        add("x0", Cell::Empty);
        add("n0", Cell::Empty);
        add("ln_integral_g", Cell::Empty);
    }
    let xi = xi0(a, z)?;
    let (target_f, target_r) = limit_targets(a, z)?;
    add("xi0", xi.into());
    add("F(xi0)", target_f.into());
    add("target_R", target_r.into());
    add(
        "F(x)",
        if x > 0.0 {
            f_eval(x, a, z)?.into()
        } else {
            Cell::Empty
        },
    );
    Ok(r)
}

fn push_bounds(r: &mut Report, b: &BoundsReport) {
    r.push_row(vec![
        b.label.clone().into(),
        b.lower.into(),
        b.value.into(),
        b.upper.into(),
        b.slack().into(),
        b.pass().into(),
    ]);
    let detail = format!("{:e} <= {:e} <= {:e}", b.lower, b.value, b.upper);
    r.check(b.label.clone(), b.pass(), detail);
}

fn bounds_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = params(cfg)?;
    let (q, a, z, x) = (cfg.q, cfg.a, cfg.z, cfg.x);
    let mut r = Report::new(vec!["bound", "lower", "value", "upper", "slack", "pass"]);
    for (name, point) in [("x", x), ("a", a), ("z", z), ("az", a * z), ("q", q)] {
        let mut b = check_sandwich_e13(point, &p)?;
        b.label = format!("{} at {name}", b.label);
        push_bounds(&mut r, &b);
    }
    if x > 0.0 {
        let ln_q = p.ln_q();
        let f = move |t: f64| -(-x * (t * ln_q).exp()).ln_1p();
        let mut c =
            check_sum_integral(f, Monotone::Decreasing, 0, None, cfg.tol_rel, cfg.tol_term)?.report;
        c.label = "sum/integral of -ln(1 - q^t x)".to_string();
        push_bounds(&mut r, &c);
    }
    push_bounds(&mut r, &check_h_sum_integral(x, &p)?);
    if p.unimodal_ok() {
        push_bounds(&mut r, &check_unimodal_sandwich(&p)?);
    } else {
        r.summarize("unimodal_sandwich", "skipped: q <= 1 - z(1 - a)");
    }
    push_bounds(&mut r, &verify_qbinomial(&p)?);
    Ok(r)
}

pub const SCAN_COLUMNS: [&str; 10] = [
    "k",
    "q",
    "h",
    "lnSg",
    "L",
    "R",
    "target_F",
    "target_R",
    "residual_L",
    "residual_R",
];

fn limit_scan_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let entries: Vec<ScanEntry> = (cfg.k_min..=cfg.k_max)
        .into_par_iter()
        .map(|k| scan_record(cfg.a, cfg.z, k))
        .collect::<Result<_, _>>()?;
    let mut r = Report::new(SCAN_COLUMNS.to_vec());
    let mut records: Vec<LimitScanRecord> = Vec::new();
    let mut skipped = Vec::new();
    for e in &entries {
        match e {
            ScanEntry::Record(s) => {
                r.push_row(vec![
                    s.k.into(),
                    s.q.into(),
                    s.h.into(),
                    s.ln_sum_g.into(),
                    s.l_value.into(),
                    s.r_value.into(),
                    s.target_f.into(),
                    s.target_r.into(),
                    s.residual_l.into(),
                    s.residual_r.into(),
                ]);
                records.push(*s);
            }
            ScanEntry::Skipped { k, .. } => skipped.push(k.to_string()),
        }
    }
    r.summarize("records", records.len());
    r.summarize("skipped_k", skipped.join(" "));
    let envelope_violation = records.iter().find(|s| !s.within_envelope());
    let detail = match envelope_violation {
        Some(s) => format!(
            "k = {}: |R - target_R| = {:e} exceeds {:e}",
            s.k,
            s.residual_r.abs(),
            s.envelope
        ),
        None => format!(
            "{} records within |ln q| * sum of -ln(1 - .)",
            records.len()
        ),
    };
    r.check("rigorous envelope", envelope_violation.is_none(), detail);
    if records.len() >= 2 {
        let decreasing = residuals_decreasing(&records);
        let detail = if decreasing {
            "|L - F(xi0)| and |R - target_R| shrink with k".to_string()
        } else {
            let (k, res) = records
                .windows(2)
                .skip(3)
                .find(|w| w[1].residual_l.abs() > w[0].residual_l.abs())
                .map_or((0, 0.0), |w| (w[1].k, w[1].residual_l));
            format!("residual grows at k = {k} to {res:e}")
        };
        r.check("residuals decrease", decreasing, detail);
    }
    if records.len() >= MIN_RECORDS {
        let fit = extrapolate(&records, FitModel::default())?;
        let target = records[0].target_f;
        r.summarize("extrapolated_L", fit.limit);
        r.summarize("extrapolation_error", fit.limit - target);
        r.summarize(
            "extrapolation_tolerance",
            EXTRAPOLATION_TOL * (1.0 + target.abs()),
        );
        r.summarize("fit_points", fit.points_used);
    }
    Ok(r)
}

fn rogers_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new(vec!["kind", "a", "z", "x", "residual"]);
    let mut pairs = vec![(cfg.a, cfg.z)];
    pairs.extend(random_pairs(ROGERS_SEED, ROGERS_PAIRS));
    let mut worst: Option<(f64, f64, f64)> = None;
    for (a, z) in pairs {
        let res = rogers_residual(a, z)?;
        r.push_row(vec![
            "rogers".into(),
            a.into(),
            z.into(),
            Cell::Empty,
            res.into(),
        ]);
        if worst.is_none_or(|w| res.abs() > w.2.abs()) {
            worst = Some((a, z, res));
        }
    }
    let (a, z, res) = worst.expect("at least one pair");
    r.summarize("residual", r.rows[0][4].clone());
    r.check(
        "Rogers five-term identity",
        res.abs() <= ROGERS_TOL,
        format!("max |residual| = {:e} at a = {a}, z = {z}", res.abs()),
    );
    let mut worst_x: (f64, f64) = (0.0, 0.0);
    for i in 1..=99 {
        let x = f64::from(i) / 100.0;
        let res = reflection_residual(x)?;
        r.push_row(vec![
            "reflection".into(),
            Cell::Empty,
            Cell::Empty,
            x.into(),
            res.into(),
        ]);
        if res.abs() > worst_x.1.abs() {
            worst_x = (x, res);
        }
    }
    r.check(
        "reflection identity",
        worst_x.1.abs() <= REFLECTION_TOL,
        format!(
            "max |residual| = {:e} at x = {}",
            worst_x.1.abs(),
            worst_x.0
        ),
    );
    Ok(r)
}

fn all_cmd() -> Report {
    let outcomes: Vec<_> = CRITERIA.par_iter().map(|c| (c, (c.run)())).collect();
    let mut r = Report::new(vec!["id", "criterion", "pass", "detail"]);
    for (c, outcome) in outcomes {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        r.push_row(vec![
            c.id.into(),
            c.name.into(),
            pass.into(),
            detail.clone().into(),
        ]);
        r.check(format!("{} {}", c.id, c.name), pass, detail);
    }
    r
}
