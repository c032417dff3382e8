use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

/// Rows per parallel work item.
const ROW_CHUNK: usize = 16;

/// Two-dimensional FFT over a square row-major array.
///
/// The forward transform leaves the data transposed (`[k₂][k₁]`); the
/// inverse expects that layout and restores `[x₁][x₂]`. Multipliers that
/// are symmetric in (k₁, k₂) can therefore be applied without caring
/// about the layout.
#[derive(Clone)]
pub struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Fft2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft2").field("n", &self.n).finish()
    }
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn rows(&self, plan: &Arc<dyn Fft<f64>>, data: &mut [Complex64]) {
        let scratch_len = plan.get_inplace_scratch_len();
        data.par_chunks_mut(self.n * ROW_CHUNK).for_each_init(
            || vec![Complex64::new(0.0, 0.0); scratch_len],
            |scratch, chunk| plan.process_with_scratch(chunk, scratch),
        );
    }

    /// Unnormalized forward transform; output is in `[k₂][k₁]` layout.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.rows(&self.forward, data);
        transpose_square(data, self.n);
        self.rows(&self.forward, data);
    }

    /// Inverse of [`Fft2::forward`], including the 1/n² normalization.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse_unnormalized(data);
        let s = self.normalization();
        data.par_iter_mut().for_each(|a| *a *= s);
    }

    /// Inverse transform without the 1/n² factor.
    pub fn inverse_unnormalized(&self, data: &mut [Complex64]) {
        self.rows(&self.inverse, data);
        transpose_square(data, self.n);
        self.rows(&self.inverse, data);
    }

    pub fn normalization(&self) -> f64 {
        1.0 / (self.n * self.n) as f64
    }
}

/// In-place transpose of an n×n row-major array.
pub fn transpose_square<T: Copy>(data: &mut [T], n: usize) {
    const B: usize = 32;
    for bi in (0..n).step_by(B) {
        for bj in (bi..n).step_by(B) {
            for i in bi..(bi + B).min(n) {
                let j0 = if bi == bj { i + 1 } else { bj };
                for j in j0..(bj + B).min(n) {
                    data.swap(i * n + j, j * n + i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_twice_is_identity() {
        let n = 37;
        let orig: Vec<usize> = (0..n * n).collect();
        let mut v = orig.clone();
        transpose_square(&mut v, n);
        assert_eq!(v[1], n);
        assert_eq!(v[n], 1);
        transpose_square(&mut v, n);
        assert_eq!(v, orig);
    }

    #[test]
    fn round_trip() {
        let n = 15;
        let fft = Fft2::new(n);
        let orig: Vec<Complex64> = (0..n * n)
            .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
            .collect();
        let mut v = orig.clone();
        fft.forward(&mut v);
        fft.inverse(&mut v);
        for (a, b) in v.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn plane_wave_lands_in_one_bin() {
        let n = 9;
        let fft = Fft2::new(n);
        let (m1, m2) = (2usize, 5usize);
        let mut v: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let (i1, i2) = (k / n, k % n);
                let ph = 2.0 * std::f64::consts::PI * ((m1 * i1 + m2 * i2) as f64) / n as f64;
                Complex64::from_polar(1.0, ph)
            })
            .collect();
        fft.forward(&mut v);
        // transposed layout: index [k2][k1]
        let peak = v[m2 * n + m1];
        assert!((peak.re - (n * n) as f64).abs() < 1e-9);
        let rest: f64 = v.iter().map(|a| a.norm()).sum::<f64>() - peak.norm();
        assert!(rest < 1e-8);
    }
}
