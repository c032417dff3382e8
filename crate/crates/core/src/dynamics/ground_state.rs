use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::crank_nicolson::CrankNicolsonAdi;
use super::hamiltonian::{Hamiltonian2D, KineticScheme};
use super::split_operator::SplitOperator;
use crate::error::{Error, Result};
use crate::model::{ExchangeSymmetry, WaveFunction2D};

/// Imaginary-time relaxation schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GroundStateOptions {
    /// Imaginary time steps, coarse to fine; each stage runs to `tol`.
    pub taus: Vec<f64>,
    /// A stage stops once ‖∂ψ/∂τ‖ falls below this value.
    pub tol: f64,
    /// Steps between convergence checks.
    pub check_every: usize,
    /// Step budget per stage.
    pub max_steps: usize,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        GroundStateOptions {
            taus: vec![0.05, 0.01],
            tol: 1e-11,
            check_every: 10,
            max_steps: 200_000,
        }
    }
}

enum Relaxer {
    Split(SplitOperator),
    Adi(CrankNicolsonAdi),
}

impl Relaxer {
    fn advance(&self, psi: &mut [Complex64], steps: usize) {
        match self {
            Relaxer::Split(s) => s.advance(psi, steps),
            Relaxer::Adi(c) => c.advance(psi, steps),
        }
    }
}

fn renormalize(psi: &mut [Complex64]) {
    let s: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= s);
}

/// Ground state of `h` by imaginary-time propagation from a symmetric
/// Gaussian. The result is exchange symmetric and normalized.
pub fn ground_state_2d(h: &Hamiltonian2D, tol: f64) -> Result<(WaveFunction2D, f64)> {
    ground_state_2d_with(
        h,
        &GroundStateOptions {
            tol,
            ..Default::default()
        },
    )
}

pub fn ground_state_2d_with(
    h: &Hamiltonian2D,
    opts: &GroundStateOptions,
) -> Result<(WaveFunction2D, f64)> {
    if !(opts.tol > 0.0) {
        return Err(Error::config("ground-state tolerance must be positive"));
    }
    let p = &h.params;
    let width = p.particle_mass * p.omega0;
    let mut psi = WaveFunction2D::from_fn(h.grid, ExchangeSymmetry::Symmetric, |x1, x2| {
        (-0.5 * width * (x1 * x1 + x2 * x2)).exp()
    });
    let n = h.grid.n();
    let every = opts.check_every.max(1);

    for &tau in &opts.taus {
        let relaxer = match h.scheme {
            KineticScheme::Spectral => Relaxer::Split(SplitOperator::imaginary_time(h, tau)?),
            KineticScheme::FiniteDifference => {
                Relaxer::Adi(CrankNicolsonAdi::imaginary_time(h, tau)?)
            }
        };
        let mut steps = 0;
        let mut change = f64::INFINITY;
        renormalize(&mut psi.amplitudes);
        let mut previous = psi.amplitudes.clone();
        while steps < opts.max_steps {
            relaxer.advance(&mut psi.amplitudes, every);
            renormalize(&mut psi.amplitudes);
            steps += every;
            // the energy converges quadratically in the state error, so the
            // stopping rule watches the state itself
            let diff: f64 = psi
                .amplitudes
                .iter()
                .zip(&previous)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            change = diff / (every as f64 * tau);
            previous.copy_from_slice(&psi.amplitudes);
            if change < opts.tol {
                break;
            }
        }
        if change >= opts.tol {
            return Err(Error::Convergence {
                what: "imaginary-time ground state",
                iterations: steps,
                residual: change,
            });
        }
    }

    // x₁ ↔ x₂ symmetrization removes round-off asymmetry
    let mut swapped = psi.amplitudes.clone();
    super::hamiltonian::exchange(&mut swapped, n);
    psi.amplitudes
        .iter_mut()
        .zip(&swapped)
        .for_each(|(a, b)| *a = 0.5 * (*a + b));
    psi.normalize();
    let energy = h.energy_raw(&psi.amplitudes);
    Ok((psi, energy))
}
