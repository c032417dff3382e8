//! Strong-correlation diagnostics of the internal spectrum: approach to
//! equidistant levels and even/odd pair degeneracy.

use serde::{Deserialize, Serialize};

use super::eigen::EigenSpectrum;
use super::transitions::TransitionTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquispacingReport {
    pub omega0: f64,
    /// ω_{n,n+1} / (√3ω₀/2).
    pub adjacent_ratios: Vec<f64>,
    /// ω_{n,n+2} / (√3ω₀): spacing between successive members of each
    /// parity ladder.
    pub ladder_ratios: Vec<f64>,
    /// max |ladder_ratio − 1|.
    pub max_deviation: f64,
}

pub fn equispacing_diagnostic(table: &TransitionTable, omega0: f64) -> EquispacingReport {
    let unit = 3f64.sqrt() * omega0;
    let levels = table.entries.iter().map(|t| t.n).max().map_or(0, |n| n + 1);
    let adjacent_ratios: Vec<f64> = (0..levels.saturating_sub(1))
        .filter_map(|n| table.omega(n, n + 1))
        .map(|w| w / (0.5 * unit))
        .collect();
    let ladder_ratios: Vec<f64> = (0..levels.saturating_sub(2))
        .filter_map(|n| table.omega(n, n + 2))
        .map(|w| w / unit)
        .collect();
    let max_deviation = ladder_ratios
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0, f64::max);
    EquispacingReport {
        omega0,
        adjacent_ratios,
        ladder_ratios,
        max_deviation,
    }
}

/// Even/odd pair gaps Δₙ = ε_{2n+1} − ε_{2n}.
pub fn degeneracy_diagnostic(spec: &EigenSpectrum) -> Vec<f64> {
    spec.eigenvalues
        .chunks_exact(2)
        .map(|pair| pair[1] - pair[0])
        .collect()
}

/// Largest minus smallest of the nearest-neighbour even ladder spacings
/// ω_{02}, ω_{24}, ω_{46}.
pub fn even_ladder_spread(table: &TransitionTable) -> Option<f64> {
    let w = [table.omega(0, 2)?, table.omega(2, 4)?, table.omega(4, 6)?];
    let max = w.iter().cloned().fold(f64::MIN, f64::max);
    let min = w.iter().cloned().fold(f64::MAX, f64::min);
    Some(max - min)
}
