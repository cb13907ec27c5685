use alloc::vec;
use alloc::vec::Vec;

use super::scan::LimitScanRecord;
use crate::{Error, Result};

/// Model for `L(h)` near `h = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitModel {
    /// `L* + c₁h + … + c_d h^d`
    Polynomial { order: usize },
    /// The polynomial plus a `h ln h` term.
    PolynomialWithLog { order: usize },
}

impl Default for FitModel {
    fn default() -> Self {
        FitModel::Polynomial { order: 2 }
    }
}

impl FitModel {
    pub fn parameters(&self) -> usize {
        match *self {
            FitModel::Polynomial { order } => order + 1,
            FitModel::PolynomialWithLog { order } => order + 2,
        }
    }

    // columns in the scaled variable s = h / h_max
    fn row(&self, s: f64) -> Vec<f64> {
        let (order, log) = match *self {
            FitModel::Polynomial { order } => (order, false),
            FitModel::PolynomialWithLog { order } => (order, true),
        };
        let mut row = Vec::with_capacity(self.parameters());
        let mut pw = 1.0;
        for _ in 0..=order {
            row.push(pw);
            pw *= s;
        }
        if log {
            row.push(if s > 0.0 { s * libm::log(s) } else { 0.0 });
        }
        row
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolation {
    /// Estimated `L(0⁺)`.
    pub limit: f64,
    /// Root-mean-square residual of the fit.
    pub rms_residual: f64,
    pub points_used: usize,
}

pub const MIN_RECORDS: usize = 4;

/// Least-squares fit of `L(h)` over the smallest-`h` half of the records
/// (at least as many points as the model has parameters).
pub fn extrapolate(records: &[LimitScanRecord], model: FitModel) -> Result<Extrapolation> {
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.h, r.l_value)).collect();
    extrapolate_points(&points, model)
}

/// Same as [`extrapolate`] on raw `(h, L)` pairs.
pub fn extrapolate_points(points: &[(f64, f64)], model: FitModel) -> Result<Extrapolation> {
    if points.len() < MIN_RECORDS {
        return Err(Error::TooFewRecords {
            got: points.len(),
            need: MIN_RECORDS,
        });
    }
    if points
        .iter()
        .any(|(h, l)| !h.is_finite() || !l.is_finite() || *h <= 0.0)
    {
        return Err(Error::NonFinite("extrapolation input"));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|x, y| x.0.total_cmp(&y.0));
    let used = points
        .len()
        .div_ceil(2)
        .max(model.parameters())
        .min(points.len());
    let pts = &sorted[..used];
    let h_max = pts[used - 1].0;

    let rows: Vec<Vec<f64>> = pts.iter().map(|(h, _)| model.row(h / h_max)).collect();
    let rhs: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let coef = least_squares(&rows, &rhs)?;

    let sq: f64 = rows
        .iter()
        .zip(&rhs)
        .map(|(row, y)| {
            let fit: f64 = row.iter().zip(&coef).map(|(a, c)| a * c).sum();
            (fit - y) * (fit - y)
        })
        .sum();
    Ok(Extrapolation {
        limit: coef[0],
        rms_residual: libm::sqrt(sq / used as f64),
        points_used: used,
    })
}

/// Householder QR least squares; errors when a diagonal entry of `R`
/// vanishes relative to the largest one.
// Index loops mirror the textbook Householder sweep over matrix columns.
#[allow(clippy::needless_range_loop)]
fn least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m < n || n == 0 {
        return Err(Error::RankDeficient);
    }
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut b = rhs.to_vec();
    let mut diag = vec![0.0; n];
    for j in 0..n {
        let norm = libm::sqrt((j..m).map(|i| a[i][j] * a[i][j]).sum::<f64>());
        if norm == 0.0 {
            return Err(Error::RankDeficient);
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..m).map(|i| a[i][j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for c in j..n {
                let dot: f64 = (j..m).map(|i| v[i - j] * a[i][c]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in j..m {
                    a[i][c] -= f * v[i - j];
                }
            }
            let dot: f64 = (j..m).map(|i| v[i - j] * b[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..m {
                b[i] -= f * v[i - j];
            }
        }
        diag[j] = a[j][j];
    }
    let scale = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    if diag.iter().any(|d| d.abs() <= 1e-12 * scale) {
        return Err(Error::RankDeficient);
    }
    let mut x = vec![0.0; n];
    for j in (0..n).rev() {
        let s: f64 = (j + 1..n).map(|c| a[j][c] * x[c]).sum();
        x[j] = (b[j] - s) / a[j][j];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        (4..=14)
            .map(|k| {
                let h = -libm::log1p(-libm::exp2(-f64::from(k)));
                (h, f(h))
            })
            .collect()
    }

    #[test]
    fn linear_model_recovery() {
        let e = extrapolate_points(&synthetic(|h| 7.0 + 3.0 * h), FitModel::default()).unwrap();
        assert!((e.limit - 7.0).abs() < 1e-10);
        assert_eq!(e.points_used, 6);
    }

    #[test]
    fn quadratic_model_recovery() {
        let e = extrapolate_points(&synthetic(|h| 1.0 + h + h * h), FitModel::default()).unwrap();
        assert!((e.limit - 1.0).abs() < 1e-10);
        assert!(e.rms_residual < 1e-12);
    }

    #[test]
    fn log_model_recovery() {
        let model = FitModel::PolynomialWithLog { order: 2 };
        let e =
            extrapolate_points(&synthetic(|h| 0.5 - 2.0 * h * libm::log(h) + h), model).unwrap();
        assert!((e.limit - 0.5).abs() < 1e-10);
    }

    #[test]
    fn too_few_and_degenerate() {
        let pts = [(0.1, 1.0), (0.2, 1.0), (0.3, 1.0)];
        assert_eq!(
            extrapolate_points(&pts, FitModel::default()),
            Err(Error::TooFewRecords { got: 3, need: 4 })
        );
        let same_h = [(0.1, 1.0), (0.1, 2.0), (0.1, 3.0), (0.1, 4.0)];
        assert_eq!(
            extrapolate_points(&same_h, FitModel::default()),
            Err(Error::RankDeficient)
        );
    }
}
