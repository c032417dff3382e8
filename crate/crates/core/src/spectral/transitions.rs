use serde::{Deserialize, Serialize};

use super::eigen::{EigenSpectrum, Subsystem};
use crate::error::{Error, Result};

/// One excitation `m → n` with ω = ε_n − ε_m > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub m: usize,
    pub n: usize,
    pub omega: f64,
    pub parity_change: bool,
    pub subsystem: Subsystem,
}

impl Transition {
    /// Quadrupole (even-operator) transitions preserve parity.
    pub fn quadrupole_allowed(&self) -> bool {
        !self.parity_change
    }
}

impl std::fmt::Display for Transition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.subsystem {
            Subsystem::CenterOfMass => "CM",
            Subsystem::Internal => "q",
        };
        write!(f, "ω^{tag}_{{{},{}}}", self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionTable {
    pub entries: Vec<Transition>,
}

/// All pairwise excitations between the computed levels.
pub fn transition_table(spec: &EigenSpectrum) -> Result<TransitionTable> {
    let k = spec.len();
    if k < 2 {
        return Err(Error::Analysis(
            "a transition table needs at least two levels".into(),
        ));
    }
    let mut entries = Vec::with_capacity(k * (k - 1) / 2);
    for m in 0..k {
        for n in m + 1..k {
            entries.push(Transition {
                m,
                n,
                omega: spec.eigenvalues[n] - spec.eigenvalues[m],
                parity_change: spec.parity[m] != spec.parity[n],
                subsystem: spec.subsystem,
            });
        }
    }
    Ok(TransitionTable { entries })
}

impl TransitionTable {
    pub fn get(&self, m: usize, n: usize) -> Option<&Transition> {
        self.entries.iter().find(|t| t.m == m && t.n == n)
    }

    /// ω_{mn}, or `None` if either level is outside the table.
    pub fn omega(&self, m: usize, n: usize) -> Option<f64> {
        self.get(m, n).map(|t| t.omega)
    }

    pub fn subsystem(&self) -> Option<Subsystem> {
        self.entries.first().map(|t| t.subsystem)
    }

    pub fn quadrupole_allowed(&self) -> impl Iterator<Item = &Transition> {
        self.entries.iter().filter(|t| t.quadrupole_allowed())
    }

    /// Largest violation of ω_{mk} = ω_{mn} + ω_{nk}.
    pub fn additivity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.entries {
            for b in self.entries.iter().filter(|b| b.m == a.n) {
                if let Some(c) = self.omega(a.m, b.n) {
                    worst = worst.max((a.omega + b.omega - c).abs());
                }
            }
        }
        worst
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.entries)?)
    }
}
