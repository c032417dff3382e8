use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Grid1D, Grid2D};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction1D {
    pub grid: Grid1D,
    pub amplitudes: Vec<Complex64>,
}

impl WaveFunction1D {
    pub fn new(grid: Grid1D, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: amplitudes.len(),
            });
        }
        Ok(WaveFunction1D { grid, amplitudes })
    }

    pub fn from_real(grid: Grid1D, values: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Trapezoid-rule ∫|ψ|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| self.grid.weight(i) * a.norm_sqr())
            .sum()
    }

    pub fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        if s > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= s);
        }
    }

    /// ∫ ψ*(−x) ψ(x) dx for a normalized state: +1 for even, −1 for odd.
    pub fn parity_overlap(&self) -> f64 {
        let g = &self.grid;
        let s: Complex64 = (0..g.n_points())
            .map(|i| g.weight(i) * self.amplitudes[g.mirror(i)].conj() * self.amplitudes[i])
            .sum();
        s.re / self.norm_sqr()
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExchangeSymmetry {
    Symmetric,
    Antisymmetric,
    None,
}

/// Two-particle amplitude ψ(x₁, x₂), row-major with x₂ the fast index.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction2D {
    pub grid: Grid2D,
    pub amplitudes: Vec<Complex64>,
    pub exchange_symmetry: ExchangeSymmetry,
}

impl WaveFunction2D {
    pub fn new(
        grid: Grid2D,
        amplitudes: Vec<Complex64>,
        exchange_symmetry: ExchangeSymmetry,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: amplitudes.len(),
            });
        }
        Ok(WaveFunction2D {
            grid,
            amplitudes,
            exchange_symmetry,
        })
    }

    /// Samples a real function of (x₁, x₂).
    pub fn from_fn<F: Fn(f64, f64) -> f64>(
        grid: Grid2D,
        exchange_symmetry: ExchangeSymmetry,
        f: F,
    ) -> Self {
        let amplitudes = grid
            .sample(f)
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        WaveFunction2D {
            grid,
            amplitudes,
            exchange_symmetry,
        }
    }

    /// Product state φ(x₁)φ(x₂).
    pub fn product(phi: &WaveFunction1D) -> Self {
        let n = phi.grid.n_points();
        let mut amplitudes = Vec::with_capacity(n * n);
        for a in &phi.amplitudes {
            for b in &phi.amplitudes {
                amplitudes.push(a * b);
            }
        }
        WaveFunction2D {
            grid: Grid2D::new(phi.grid),
            amplitudes,
            exchange_symmetry: ExchangeSymmetry::Symmetric,
        }
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    #[inline]
    pub fn at(&self, i1: usize, i2: usize) -> Complex64 {
        self.amplitudes[self.grid.index(i1, i2)]
    }

    /// Trapezoid-rule ∫∫|ψ|².
    pub fn norm_sqr(&self) -> f64 {
        weighted_sum(&self.grid, |k| self.amplitudes[k].norm_sqr())
    }

    pub fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        if s > 0.0 {
            let inv = 1.0 / s;
            self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        }
    }

    /// ∫∫ f(x₁, x₂) |ψ|² with `f` pre-sampled on the grid.
    pub fn expectation(&self, sampled: &[f64]) -> f64 {
        weighted_sum(&self.grid, |k| sampled[k] * self.amplitudes[k].norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &WaveFunction2D) -> Complex64 {
        let g = &self.grid.axis;
        let n = self.n();
        let mut total = Complex64::new(0.0, 0.0);
        for i1 in 0..n {
            let mut row = Complex64::new(0.0, 0.0);
            for i2 in 0..n {
                let k = i1 * n + i2;
                row += g.weight(i2) * self.amplitudes[k].conj() * other.amplitudes[k];
            }
            total += g.weight(i1) * row;
        }
        total
    }

    /// max|ψ(x₁,x₂) − ψ(x₂,x₁)| relative to max|ψ|.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n();
        let mut diff: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for i1 in 0..n {
            for i2 in 0..n {
                let a = self.at(i1, i2);
                diff = diff.max((a - self.at(i2, i1)).norm());
                peak = peak.max(a.norm());
            }
        }
        if peak == 0.0 {
            0.0
        } else {
            diff / peak
        }
    }

    /// Largest |ψ|² on the outermost rows and columns of the box.
    pub fn edge_density(&self) -> f64 {
        let n = self.n();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for (a, b) in [(0, i), (n - 1, i), (i, 0), (i, n - 1)] {
                m = m.max(self.at(a, b).norm_sqr());
            }
        }
        m
    }

    /// One-particle density n(x) = ∫|ψ(x, y)|² dy. Integrates to 1 for a
    /// normalized state (multiply by N for the total particle density).
    pub fn marginal_density(&self) -> Vec<f64> {
        let g = &self.grid.axis;
        let n = self.n();
        (0..n)
            .map(|i1| {
                (0..n)
                    .map(|i2| g.weight(i2) * self.at(i1, i2).norm_sqr())
                    .sum()
            })
            .collect()
    }
}

pub(crate) fn weighted_sum<F: Fn(usize) -> f64>(grid: &Grid2D, f: F) -> f64 {
    let g = &grid.axis;
    let n = grid.n();
    let mut total = 0.0;
    for i1 in 0..n {
        let mut row = 0.0;
        for i2 in 0..n {
            row += g.weight(i2) * f(i1 * n + i2);
        }
        total += g.weight(i1) * row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_grid;

    fn gaussian(grid: Grid1D, x0: f64) -> WaveFunction1D {
        let v: Vec<f64> = grid
            .points()
            .iter()
            .map(|x| (-(x - x0).powi(2)).exp())
            .collect();
        let mut w = WaveFunction1D::from_real(grid, &v).unwrap();
        w.normalize();
        w
    }

    #[test]
    fn normalization() {
        let g = build_grid(8.0, 161).unwrap();
        let w = gaussian(g, 0.0);
        assert!((w.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((w.parity_overlap() - 1.0).abs() < 1e-12);
        let p = WaveFunction2D::product(&w);
        assert!((p.norm_sqr() - 1.0).abs() < 1e-12);
        assert_eq!(p.symmetry_residual(), 0.0);
    }

    #[test]
    fn asymmetric_state_is_detected() {
        let g = Grid2D::new(build_grid(6.0, 61).unwrap());
        let psi = WaveFunction2D::from_fn(g, ExchangeSymmetry::None, |a, b| {
            (-(a - 1.0).powi(2) - (b + 1.0).powi(2)).exp()
        });
        assert!(psi.symmetry_residual() > 0.5);
    }

    #[test]
    fn length_checked() {
        let g = build_grid(1.0, 5).unwrap();
        assert!(WaveFunction1D::new(g, vec![Complex64::new(0.0, 0.0); 4]).is_err());
    }
}
