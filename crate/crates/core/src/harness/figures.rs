use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{double_well_minimum, internal_potential, Grid1D, TrapParams};
use crate::spectral::{
    cm_spectrum, degeneracy_diagnostic, equispacing_diagnostic, even_ladder_spread,
    internal_spectrum, transition_table, EigenSpectrum, EquispacingReport, Parity,
};

/// Levels reported per trap frequency.
pub const FIG2_LEVELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub energy: f64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Panel {
    pub omega0: f64,
    /// Position of the double-well minimum, when there is one.
    pub well_minimum: Option<f64>,
    pub potential: Vec<(f64, f64)>,
    pub levels: Vec<Level>,
    /// ω^q_{02}, ω^q_{24}, ω^q_{46}.
    pub even_spacings: [f64; 3],
    pub even_ladder_spread: f64,
    pub equispacing: EquispacingReport,
    /// ε^q_{2n+1} − ε^q_{2n}.
    pub degeneracy_gaps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Report {
    pub panels: Vec<Fig2Panel>,
}

impl Fig2Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Long-format potential samples, `omega0,q,V`.
    pub fn potential_csv(&self, metadata: &[(String, String)]) -> String {
        let mut s = String::new();
        for (k, v) in metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        s.push_str("omega0,q,V\n");
        for p in &self.panels {
            for (q, v) in &p.potential {
                let _ = writeln!(s, "{},{q},{v}", p.omega0);
            }
        }
        s
    }

    /// `omega0,n,energy,parity`.
    pub fn levels_csv(&self, metadata: &[(String, String)]) -> String {
        let mut s = String::new();
        for (k, v) in metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        s.push_str("omega0,n,energy,parity\n");
        for p in &self.panels {
            for l in &p.levels {
                let parity = match l.parity {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                };
                let _ = writeln!(s, "{},{},{},{parity}", p.omega0, l.n, l.energy);
            }
        }
        s
    }
}

/// Internal potential, lowest eigenvalues and spacing diagnostics for each
/// trap frequency, on the given q grid.
pub fn reproduce_fig2(base: &TrapParams, grid: &Grid1D, omega0_list: &[f64]) -> Result<Fig2Report> {
    let mut panels = Vec::new();
    for &omega0 in omega0_list {
        let params = TrapParams { omega0, ..*base };
        params.validate()?;
        let spec = internal_spectrum(&params, grid, FIG2_LEVELS)?;
        let table = transition_table(&spec)?;
        let w = |m, n| table.omega(m, n).expect("eight levels");
        let potential = grid
            .points()
            .into_iter()
            .map(|q| (q, internal_potential(q, &params)))
            .collect();
        panels.push(Fig2Panel {
            omega0,
            well_minimum: double_well_minimum(&params),
            potential,
            levels: levels(&spec),
            even_spacings: [w(0, 2), w(2, 4), w(4, 6)],
            even_ladder_spread: even_ladder_spread(&table).expect("eight levels"),
            equispacing: equispacing_diagnostic(&table, omega0),
            degeneracy_gaps: degeneracy_diagnostic(&spec),
        });
    }
    Ok(Fig2Report { panels })
}

fn levels(spec: &EigenSpectrum) -> Vec<Level> {
    spec.eigenvalues
        .iter()
        .zip(&spec.parity)
        .enumerate()
        .map(|(n, (&energy, &parity))| Level { n, energy, parity })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub omega0: f64,
    pub cm: Vec<Level>,
    pub internal: Vec<Level>,
}

/// Lowest `k` levels of both subsystems.
pub fn eigen_report(params: &TrapParams, grid: &Grid1D, k: usize) -> Result<EigenReport> {
    Ok(EigenReport {
        omega0: params.omega0,
        cm: levels(&cm_spectrum(params, grid, k)?),
        internal: levels(&internal_spectrum(params, grid, k)?),
    })
}
