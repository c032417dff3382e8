use serde::{Deserialize, Serialize};

use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::spectral::{Parity, Subsystem, Transition, TransitionTable};

/// Default detection threshold relative to the tallest peak.
pub const DEFAULT_MIN_HEIGHT_RATIO: f64 = 1e-3;

/// Peaks lower than this absolute magnitude are treated as round-off.
pub const NOISE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub subsystem: Subsystem,
    pub m: usize,
    pub n: usize,
    pub omega: f64,
    pub text: String,
}

impl From<&Transition> for Label {
    fn from(t: &Transition) -> Self {
        Label {
            subsystem: t.subsystem,
            m: t.m,
            n: t.n,
            omega: t.omega,
            text: t.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Interpolated position (a.u.).
    pub omega: f64,
    pub height: f64,
    /// Height over the tallest peak of the same spectrum.
    pub relative_height: f64,
    pub label: Option<Label>,
    /// Other transitions within tolerance.
    pub alternatives: Vec<Label>,
    pub degenerate: bool,
    /// No transition within tolerance.
    pub anomaly: bool,
    /// Response order in E₀ when determined by a scaling fit.
    pub order: Option<u8>,
}

impl Peak {
    pub fn is_internal(&self) -> bool {
        matches!(&self.label, Some(l) if l.subsystem == Subsystem::Internal)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct PeakList {
    pub peaks: Vec<Peak>,
    pub tolerance: Option<f64>,
}

impl PeakList {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    /// Peak closest to `omega` within `tol`.
    pub fn near(&self, omega: f64, tol: f64) -> Option<&Peak> {
        self.peaks
            .iter()
            .filter(|p| (p.omega - omega).abs() <= tol)
            .min_by(|a, b| (a.omega - omega).abs().total_cmp(&(b.omega - omega).abs()))
    }

    pub fn anomalies(&self) -> impl Iterator<Item = &Peak> {
        self.peaks.iter().filter(|p| p.anomaly)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Local maxima of the magnitude above `min_height_ratio` × the tallest,
/// refined by a parabola through log-magnitudes of the three nearest bins.
/// The zero-frequency bin is skipped.
pub fn find_peaks(spec: &Spectrum, min_height_ratio: f64) -> Result<PeakList> {
    if spec.magnitude.len() < 3 {
        return Err(Error::Analysis("spectrum is empty".into()));
    }
    if !(min_height_ratio > 0.0 && min_height_ratio < 1.0) {
        return Err(Error::Analysis(format!(
            "peak threshold must lie in (0, 1), got {min_height_ratio}"
        )));
    }
    let m = &spec.magnitude;
    let dw = spec.bin_width();
    let mut raw = Vec::new();
    for i in 2..m.len().saturating_sub(1) {
        if m[i] > m[i - 1] && m[i] >= m[i + 1] {
            let (a, b, c) = (
                m[i - 1].max(1e-300).ln(),
                m[i].ln(),
                m[i + 1].max(1e-300).ln(),
            );
            let denom = a - 2.0 * b + c;
            let shift = if denom < 0.0 {
                (0.5 * (a - c) / denom).clamp(-0.5, 0.5)
            } else {
                0.0
            };
            let height = (b - 0.25 * (a - c) * shift).exp();
            raw.push((spec.frequencies[i] + shift * dw, height));
        }
    }
    let tallest = raw.iter().map(|p| p.1).fold(0.0, f64::max);
    let threshold = (tallest * min_height_ratio).max(NOISE_FLOOR);
    let peaks = raw
        .into_iter()
        .filter(|p| p.1 >= threshold)
        .map(|(omega, height)| Peak {
            omega,
            height,
            relative_height: height / tallest,
            label: None,
            alternatives: Vec::new(),
            degenerate: false,
            anomaly: false,
            order: None,
        })
        .collect();
    Ok(PeakList {
        peaks,
        tolerance: None,
    })
}

/// Assigns each peak the nearest transition within `tol`. Internal
/// candidates are limited to exchange-symmetric (even) levels. A
/// centre-of-mass match is preferred over an internal one.
pub fn label_peaks(
    peaks: &mut PeakList,
    cm: &TransitionTable,
    internal: &TransitionTable,
    tol: f64,
) {
    let symmetric = |t: &&Transition| {
        Parity::of_index(t.m) == Parity::Even && Parity::of_index(t.n) == Parity::Even
    };
    for p in &mut peaks.peaks {
        let dist = |t: &Transition| (t.omega - p.omega).abs();
        let mut cands: Vec<&Transition> = cm
            .entries
            .iter()
            .chain(internal.entries.iter().filter(symmetric))
            .filter(|t| dist(t) <= tol)
            .collect();
        cands.sort_by(|a, b| dist(a).total_cmp(&dist(b)));
        // the CM ladder is harmonic, so ω_{m,n} depends only on n−m; take
        // the transition out of the lowest level
        let best = cands
            .iter()
            .enumerate()
            .filter(|(_, t)| t.subsystem == Subsystem::CenterOfMass)
            .min_by_key(|(_, t)| (t.m, t.n))
            .map_or(0, |(i, _)| i);
        p.label = cands.get(best).map(|t| Label::from(*t));
        p.alternatives = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != best)
            .map(|(_, t)| Label::from(*t))
            .collect();
        p.degenerate = cands.len() > 1;
        p.anomaly = cands.is_empty();
    }
    peaks.tolerance = Some(tol);
}
