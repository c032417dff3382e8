use num_complex::Complex64;
use rayon::prelude::*;

use super::fft2::transpose_square;
use super::hamiltonian::{Hamiltonian2D, KineticScheme};
use crate::error::{Error, Result};

/// Cayley factor `(1 + cA)⁻¹(1 − cA)` applied independently along every
/// row, where A is the row part `T_row + V/2` of the Hamiltonian.
#[derive(Debug, Clone)]
struct LineCayley {
    n: usize,
    c: Complex64,
    /// c·(diagonal of A) per node.
    c_diag: Vec<Complex64>,
    /// c·(off-diagonal of A), uniform.
    c_off: Complex64,
    /// Thomas factors for the implicit half.
    upper: Vec<Complex64>,
    inv_pivot: Vec<Complex64>,
}

impl LineCayley {
    fn new(potential: &[f64], n: usize, kin_diag: f64, kin_off: f64, c: Complex64) -> Self {
        let c_diag: Vec<Complex64> = potential.iter().map(|v| c * (kin_diag + 0.5 * v)).collect();
        let c_off = c * kin_off;
        let mut upper = vec![Complex64::new(0.0, 0.0); n * n];
        let mut inv_pivot = vec![Complex64::new(0.0, 0.0); n * n];
        for line in 0..n {
            let base = line * n;
            let mut prev_upper = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let diag = Complex64::new(1.0, 0.0) + c_diag[base + j];
                let pivot = if j == 0 {
                    diag
                } else {
                    diag - c_off * prev_upper
                };
                let inv = 1.0 / pivot;
                inv_pivot[base + j] = inv;
                prev_upper = c_off * inv;
                upper[base + j] = prev_upper;
            }
        }
        LineCayley {
            n,
            c,
            c_diag,
            c_off,
            upper,
            inv_pivot,
        }
    }

    fn apply(&self, psi: &mut [Complex64]) {
        let n = self.n;
        psi.par_chunks_mut(n).enumerate().for_each_init(
            || vec![Complex64::new(0.0, 0.0); n],
            |rhs, (line, row)| {
                let base = line * n;
                let one = Complex64::new(1.0, 0.0);
                // explicit half: (1 − cA) x
                for j in 0..n {
                    let mut nb = Complex64::new(0.0, 0.0);
                    if j > 0 {
                        nb += row[j - 1];
                    }
                    if j + 1 < n {
                        nb += row[j + 1];
                    }
                    rhs[j] = (one - self.c_diag[base + j]) * row[j] - self.c_off * nb;
                }
                // implicit half: (1 + cA) z = rhs
                let mut prev = Complex64::new(0.0, 0.0);
                for (r, &p) in rhs.iter_mut().zip(&self.inv_pivot[base..base + n]) {
                    *r = (*r - self.c_off * prev) * p;
                    prev = *r;
                }
                row[n - 1] = rhs[n - 1];
                for j in (0..n - 1).rev() {
                    row[j] = rhs[j] - self.upper[base + j] * row[j + 1];
                }
            },
        );
    }
}

/// Alternating-direction Crank–Nicolson: H is split as
/// `(T₂ + V/2) + (T₁ + V/2)` and each part is advanced by its exact-unitary
/// Cayley transform in the symmetric order `C₂(dt/2) C₁(dt) C₂(dt/2)`.
#[derive(Debug, Clone)]
pub struct CrankNicolsonAdi {
    n: usize,
    rows_half: LineCayley,
    cols_full: LineCayley,
}

impl CrankNicolsonAdi {
    pub fn real_time(h: &Hamiltonian2D, dt: f64) -> Result<Self> {
        Self::with_factor(h, Complex64::new(0.0, 0.5 * dt))
    }

    pub fn imaginary_time(h: &Hamiltonian2D, tau: f64) -> Result<Self> {
        Self::with_factor(h, Complex64::new(0.5 * tau, 0.0))
    }

    /// `c_full` is the Cayley coefficient for a full step (i·dt/2 in real time).
    fn with_factor(h: &Hamiltonian2D, c_full: Complex64) -> Result<Self> {
        if h.scheme != KineticScheme::FiniteDifference {
            return Err(Error::config(
                "the Crank-Nicolson propagator needs the finite-difference kinetic scheme",
            ));
        }
        let n = h.grid.n();
        let dx = h.grid.axis.spacing();
        let m = h.params.particle_mass;
        let kin_diag = 1.0 / (m * dx * dx);
        let kin_off = -0.5 / (m * dx * dx);
        let mut transposed = h.potential.clone();
        transpose_square(&mut transposed, n);
        Ok(CrankNicolsonAdi {
            n,
            rows_half: LineCayley::new(&h.potential, n, kin_diag, kin_off, 0.5 * c_full),
            cols_full: LineCayley::new(&transposed, n, kin_diag, kin_off, c_full),
        })
    }

    pub fn advance(&self, psi: &mut [Complex64], steps: usize) {
        debug_assert!(self.rows_half.c != Complex64::new(0.0, 0.0));
        for _ in 0..steps {
            self.rows_half.apply(psi);
            transpose_square(psi, self.n);
            self.cols_full.apply(psi);
            transpose_square(psi, self.n);
            self.rows_half.apply(psi);
        }
    }
}
