use serde::{Deserialize, Serialize};

use super::peaks::PeakList;
use crate::error::{Error, Result};

/// Tolerance on the fitted exponent for a first-order classification.
pub const FIRST_ORDER_TOL: f64 = 0.1;
/// Tolerance on the fitted exponent for a second-order classification.
pub const SECOND_ORDER_TOL: f64 = 0.15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// Slope of ln(height) against ln(E₀).
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub rms_residual: f64,
    /// 1 or 2 when the exponent is within tolerance of that order.
    pub order: Option<u8>,
}

/// Least-squares power law through `(E₀, height)` pairs. Requires at
/// least three distinct strengths spanning a factor of ten.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let mut e0s: Vec<f64> = points.iter().map(|p| p.0).collect();
    e0s.sort_by(f64::total_cmp);
    e0s.dedup();
    if e0s.len() < 3 {
        return Err(Error::Analysis(format!(
            "order scaling needs at least 3 distinct E0 values, got {}",
            e0s.len()
        )));
    }
    if e0s[e0s.len() - 1] / e0s[0] < 10.0 * (1.0 - 1e-9) {
        return Err(Error::Analysis(
            "E0 values must span at least one decade".into(),
        ));
    }
    if points.iter().any(|&(e, a)| !(e > 0.0 && a > 0.0)) {
        return Err(Error::Analysis(
            "strengths and heights must be positive".into(),
        ));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let rms_residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ScalingFit {
        exponent,
        intercept,
        rms_residual,
        order: classify_order(exponent),
    })
}

pub fn classify_order(exponent: f64) -> Option<u8> {
    if (exponent - 1.0).abs() <= FIRST_ORDER_TOL {
        Some(1)
    } else if (exponent - 2.0).abs() <= SECOND_ORDER_TOL {
        Some(2)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakScaling {
    /// Label text of the matched peak, or its position when unlabeled.
    pub key: String,
    /// Mean position over the runs (a.u.).
    pub omega: f64,
    pub points: Vec<(f64, f64)>,
    pub fit: ScalingFit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ScalingReport {
    pub peaks: Vec<PeakScaling>,
    pub warnings: Vec<String>,
}

impl ScalingReport {
    pub fn get(&self, key: &str) -> Option<&PeakScaling> {
        self.peaks.iter().find(|p| p.key == key)
    }
}

/// Matches peaks across runs of different E₀ (by assigned label, or by
/// position within `tol` for unlabeled peaks) and fits an exponent to
/// each peak present in every run. Peaks missing from some runs are
/// reported as warnings.
pub fn order_scaling(runs: &[(f64, PeakList)], tol: f64) -> Result<ScalingReport> {
    if runs.is_empty() {
        return Err(Error::Analysis(
            "order scaling needs at least one run".into(),
        ));
    }
    let key_of = |p: &super::peaks::Peak| p.label.as_ref().map(|l| l.text.clone());
    let mut report = ScalingReport::default();
    let reference = runs
        .iter()
        .max_by_key(|(_, list)| list.len())
        .map(|(_, list)| list)
        .expect("non-empty");
    for anchor in &reference.peaks {
        let key = key_of(anchor).unwrap_or_else(|| format!("{:.4}", anchor.omega));
        if report.peaks.iter().any(|p| p.key == key) {
            continue;
        }
        let mut points = Vec::new();
        let mut omegas = Vec::new();
        let mut missing = Vec::new();
        for (e0, list) in runs {
            let found = list
                .peaks
                .iter()
                .filter(|p| match (key_of(p), key_of(anchor)) {
                    (Some(a), Some(b)) => a == b,
                    _ => (p.omega - anchor.omega).abs() <= tol,
                })
                .min_by(|a, b| {
                    (a.omega - anchor.omega)
                        .abs()
                        .total_cmp(&(b.omega - anchor.omega).abs())
                });
            match found {
                Some(p) => {
                    points.push((*e0, p.height));
                    omegas.push(p.omega);
                }
                None => missing.push(*e0),
            }
        }
        if !missing.is_empty() {
            report
                .warnings
                .push(format!("peak {key} missing at E0 = {missing:?}"));
            continue;
        }
        match fit_power_law(&points) {
            Ok(fit) => report.peaks.push(PeakScaling {
                key,
                omega: omegas.iter().sum::<f64>() / omegas.len() as f64,
                points,
                fit,
            }),
            Err(e) => report.warnings.push(format!("peak {key}: {e}")),
        }
    }
    report.peaks.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(report)
}
