use serde::{Deserialize, Serialize};

use super::tridiagonal::{discretize_1d, expand_even, expand_odd, SymTridiagonal};
use crate::error::{Error, Result};
use crate::model::{cm_potential, internal_potential, Grid1D, TrapParams, WaveFunction1D};

/// Eigenvalues closer than this are treated as degenerate (a.u.).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Residual bound ‖Hψ − εψ‖ accepted for each eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_index(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    #[serde(rename = "cm")]
    CenterOfMass,
    Internal,
}

impl std::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subsystem::CenterOfMass => f.write_str("cm"),
            Subsystem::Internal => f.write_str("internal"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenSpectrum {
    /// Ascending eigenvalues (a.u.).
    pub eigenvalues: Vec<f64>,
    /// Trapezoid-normalized eigenfunctions, when requested.
    pub eigenvectors: Option<Vec<WaveFunction1D>>,
    pub parity: Vec<Parity>,
    pub subsystem: Subsystem,
    /// Largest eigenpair residual ‖Hψ − εψ‖ for unit vectors.
    pub max_residual: f64,
}

impl EigenSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// The `k` lowest eigenpairs of a discretized 1D Hamiltonian.
///
/// Reflection-symmetric operators are split into even and odd blocks, so
/// parity labels are exact and near-degenerate even/odd pairs never mix.
pub fn eigensolve_1d(
    op: &SymTridiagonal,
    k: usize,
    grid: &Grid1D,
    subsystem: Subsystem,
) -> Result<EigenSpectrum> {
    let n = op.len();
    if n != grid.n_points() {
        return Err(Error::LengthMismatch {
            expected: grid.n_points(),
            got: n,
        });
    }
    if k == 0 || k > n {
        return Err(Error::config(format!(
            "requested {k} eigenpairs of a {n}-point operator"
        )));
    }

    let mut pairs: Vec<(f64, Parity, Vec<f64>, f64)> = Vec::with_capacity(k);
    if op.is_reflection_symmetric() {
        let (even, odd) = op.parity_blocks();
        for (block, parity) in [(&even, Parity::Even), (&odd, Parity::Odd)] {
            let mut found: Vec<Vec<f64>> = Vec::new();
            for lambda in block.lowest_eigenvalues(k) {
                let (w, r) = block.eigenvector(lambda, &found)?;
                let full = match parity {
                    Parity::Even => expand_even(&w),
                    Parity::Odd => expand_odd(&w),
                };
                found.push(w);
                pairs.push((lambda, parity, full, r));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.truncate(k);
    } else {
        let mut found: Vec<Vec<f64>> = Vec::new();
        for lambda in op.lowest_eigenvalues(k) {
            let (v, r) = op.eigenvector(lambda, &found)?;
            let overlap: f64 = (0..n).map(|i| v[i] * v[n - 1 - i]).sum();
            let parity = if overlap >= 0.0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            found.push(v.clone());
            pairs.push((lambda, parity, v, r));
        }
    }

    let max_residual = pairs.iter().map(|p| p.3).fold(0.0, f64::max);
    if max_residual > RESIDUAL_TOL {
        return Err(Error::Convergence {
            what: "tridiagonal eigensolver",
            iterations: pairs.len(),
            residual: max_residual,
        });
    }

    let mut eigenvalues = Vec::with_capacity(k);
    let mut parity = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    for (lambda, p, v, _) in pairs {
        let mut wf = WaveFunction1D::from_real(*grid, &fix_sign(v))?;
        wf.normalize();
        eigenvalues.push(lambda);
        parity.push(p);
        vectors.push(wf);
    }
    Ok(EigenSpectrum {
        eigenvalues,
        eigenvectors: Some(vectors),
        parity,
        subsystem,
        max_residual,
    })
}

/// Makes the first significant lobe (scanning from the left) positive.
fn fix_sign(mut v: Vec<f64>) -> Vec<f64> {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    v
}

/// Spectrum of the centre-of-mass Hamiltonian `P²/2M + ½Mω₀²X²`.
pub fn cm_spectrum(params: &TrapParams, grid: &Grid1D, k: usize) -> Result<EigenSpectrum> {
    params.validate()?;
    let v: Vec<f64> = grid
        .points()
        .iter()
        .map(|&x| cm_potential(x, params))
        .collect();
    let op = discretize_1d(grid, params.total_mass(), &v)?;
    eigensolve_1d(&op, k, grid, Subsystem::CenterOfMass)
}

/// Spectrum of the relative-coordinate Hamiltonian `p_q²/2m + V(q)`.
pub fn internal_spectrum(params: &TrapParams, grid: &Grid1D, k: usize) -> Result<EigenSpectrum> {
    params.validate()?;
    let v: Vec<f64> = grid
        .points()
        .iter()
        .map(|&q| internal_potential(q, params))
        .collect();
    let op = discretize_1d(grid, params.particle_mass, &v)?;
    eigensolve_1d(&op, k, grid, Subsystem::Internal)
}
