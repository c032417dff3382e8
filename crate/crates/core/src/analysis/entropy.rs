use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::WaveFunction2D;

/// Most negative natural occupation accepted as round-off.
pub const NEGATIVE_OCCUPATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Natural occupations, descending, summing to one.
    pub occupations: Vec<f64>,
    /// Reported entropy: −Σλ ln λ divided by the particle number.
    pub entropy: f64,
    /// −Σλ ln λ of the trace-one one-body density matrix.
    pub raw_entropy: f64,
    pub convention: String,
}

/// Von Neumann entropy of the one-body reduced density matrix
/// ρ(x, x') = ∫ψ(x, y)ψ*(x', y) dy.
pub fn entanglement_entropy(psi: &WaveFunction2D) -> Result<EntropyReport> {
    let n = psi.grid.n();
    let h = psi.grid.axis.spacing();
    let a = DMatrix::from_fn(n, n, |i, j| psi.amplitudes[i * n + j] * h.sqrt());
    let rho = &a * a.adjoint();
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let trace: f64 = rho.diagonal().iter().map(|z| z.re).sum();
    if !(trace > 0.0) {
        return Err(Error::Analysis("density matrix has zero trace".into()));
    }
    let eig = rho.symmetric_eigen();
    let mut occupations: Vec<f64> = eig.eigenvalues.iter().map(|l| l / trace).collect();
    occupations.sort_by(|a, b| b.total_cmp(a));
    if let Some(&min) = occupations.last() {
        if min < -NEGATIVE_OCCUPATION_TOL {
            return Err(Error::Analysis(format!(
                "negative natural occupation {min:.3e}"
            )));
        }
    }
    let raw_entropy: f64 = occupations
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum();
    Ok(EntropyReport {
        entropy: raw_entropy / 2.0,
        raw_entropy,
        occupations,
        convention: "natural log, trace-one 1-RDM, per particle".into(),
    })
}
