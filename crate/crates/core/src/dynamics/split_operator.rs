use num_complex::Complex64;
use rayon::prelude::*;

use super::fft2::Fft2;
use super::hamiltonian::{Hamiltonian2D, KineticScheme};
use crate::error::{Error, Result};

/// Strang splitting `e^{zV/2} e^{zT} e^{zV/2}` with z = −i·dt (real time)
/// or z = −τ (imaginary time).
#[derive(Debug, Clone)]
pub struct SplitOperator {
    half_potential: Vec<Complex64>,
    full_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
    fft: Fft2,
}

impl SplitOperator {
    pub fn real_time(h: &Hamiltonian2D, dt: f64) -> Result<Self> {
        Self::with_factor(h, Complex64::new(0.0, -dt))
    }

    pub fn imaginary_time(h: &Hamiltonian2D, tau: f64) -> Result<Self> {
        Self::with_factor(h, Complex64::new(-tau, 0.0))
    }

    fn with_factor(h: &Hamiltonian2D, z: Complex64) -> Result<Self> {
        if h.scheme != KineticScheme::Spectral {
            return Err(Error::config(
                "the split-operator propagator needs the spectral kinetic scheme",
            ));
        }
        Ok(SplitOperator {
            half_potential: h.potential.iter().map(|v| (0.5 * z * v).exp()).collect(),
            full_potential: h.potential.iter().map(|v| (z * v).exp()).collect(),
            // the inverse FFT normalization is folded into the kinetic factor
            kinetic: h
                .kinetic_spectrum()
                .iter()
                .map(|t| (z * t).exp() * h.fft().normalization())
                .collect(),
            fft: h.fft().clone(),
        })
    }

    fn multiply(psi: &mut [Complex64], factor: &[Complex64]) {
        psi.par_iter_mut()
            .zip(factor.par_iter())
            .for_each(|(a, f)| *a *= f);
    }

    fn kinetic_step(&self, psi: &mut [Complex64]) {
        self.fft.forward(psi);
        Self::multiply(psi, &self.kinetic);
        self.fft.inverse_unnormalized(psi);
    }

    /// Advances `steps` Strang steps, merging adjacent potential half-steps.
    pub fn advance(&self, psi: &mut [Complex64], steps: usize) {
        if steps == 0 {
            return;
        }
        Self::multiply(psi, &self.half_potential);
        for s in 0..steps {
            self.kinetic_step(psi);
            if s + 1 < steps {
                Self::multiply(psi, &self.full_potential);
            }
        }
        Self::multiply(psi, &self.half_potential);
    }
}
