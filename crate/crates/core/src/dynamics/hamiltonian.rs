use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fft2::{transpose_square, Fft2};
use crate::error::{Error, Result};
use crate::model::{two_particle_potential, Grid2D, TrapParams, WaveFunction2D};

/// Discretization of the kinetic energy on the (x₁, x₂) grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KineticScheme {
    /// Exact on the periodic grid via FFT; used with the split-operator
    /// propagator.
    Spectral,
    /// Three-point stencil with hard walls; used with Crank–Nicolson.
    FiniteDifference,
}

/// `H = Σᵢ [pᵢ²/2m + ½mω₀²xᵢ²] + V_int(x₁ − x₂)` on a square grid.
#[derive(Debug, Clone)]
pub struct Hamiltonian2D {
    pub params: TrapParams,
    pub grid: Grid2D,
    pub scheme: KineticScheme,
    /// V(x₁, x₂), row-major.
    pub potential: Vec<f64>,
    /// |k|²/2m in the transposed layout produced by [`Fft2::forward`].
    kinetic_spectrum: Vec<f64>,
    fft: Fft2,
}

pub fn build_hamiltonian_2d(
    params: &TrapParams,
    grid: &Grid2D,
    scheme: KineticScheme,
) -> Result<Hamiltonian2D> {
    params.validate()?;
    let potential = grid.sample(|x1, x2| two_particle_potential(x1, x2, params));
    let k = grid.axis.wavenumbers();
    let inv2m = 0.5 / params.particle_mass;
    let n = grid.n();
    let mut kinetic_spectrum = Vec::with_capacity(n * n);
    for ka in &k {
        for kb in &k {
            kinetic_spectrum.push(inv2m * (ka * ka + kb * kb));
        }
    }
    Ok(Hamiltonian2D {
        params: *params,
        grid: *grid,
        scheme,
        potential,
        kinetic_spectrum,
        fft: Fft2::new(n),
    })
}

impl Hamiltonian2D {
    pub fn kinetic_spectrum(&self) -> &[f64] {
        &self.kinetic_spectrum
    }

    pub fn fft(&self) -> &Fft2 {
        &self.fft
    }

    /// `out = H psi` on raw row-major amplitudes.
    pub fn apply_raw(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let n = self.grid.n();
        match self.scheme {
            KineticScheme::Spectral => {
                out.copy_from_slice(psi);
                self.fft.forward(out);
                out.iter_mut()
                    .zip(&self.kinetic_spectrum)
                    .for_each(|(a, t)| *a *= t);
                self.fft.inverse(out);
            }
            KineticScheme::FiniteDifference => {
                let h = self.grid.axis.spacing();
                let c = 1.0 / (2.0 * self.params.particle_mass * h * h);
                for i1 in 0..n {
                    for i2 in 0..n {
                        let k = i1 * n + i2;
                        let mut lap = 4.0 * psi[k];
                        if i1 > 0 {
                            lap -= psi[k - n];
                        }
                        if i1 + 1 < n {
                            lap -= psi[k + n];
                        }
                        if i2 > 0 {
                            lap -= psi[k - 1];
                        }
                        if i2 + 1 < n {
                            lap -= psi[k + 1];
                        }
                        out[k] = c * lap;
                    }
                }
            }
        }
        out.iter_mut()
            .zip(psi.iter().zip(&self.potential))
            .for_each(|(o, (p, v))| *o += v * p);
    }

    pub fn apply(&self, psi: &WaveFunction2D) -> Result<WaveFunction2D> {
        self.check(psi)?;
        let mut out = vec![Complex64::new(0.0, 0.0); psi.amplitudes.len()];
        self.apply_raw(&psi.amplitudes, &mut out);
        WaveFunction2D::new(psi.grid, out, psi.exchange_symmetry)
    }

    /// ⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩ with the grid's uniform inner product.
    pub fn energy_raw(&self, psi: &[Complex64]) -> f64 {
        let mut hpsi = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply_raw(psi, &mut hpsi);
        let num: f64 = psi.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum();
        let den: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        num / den
    }

    pub fn energy(&self, psi: &WaveFunction2D) -> Result<f64> {
        self.check(psi)?;
        Ok(self.energy_raw(&psi.amplitudes))
    }

    fn check(&self, psi: &WaveFunction2D) -> Result<()> {
        if psi.grid != self.grid {
            return Err(Error::config("wavefunction and Hamiltonian grids differ"));
        }
        Ok(())
    }
}

/// Exchanges x₁ and x₂ in place.
pub fn exchange(psi: &mut [Complex64], n: usize) {
    transpose_square(psi, n);
}
