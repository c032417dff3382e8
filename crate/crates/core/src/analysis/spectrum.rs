use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Observable, ObservableSeries};
use crate::error::{Error, Result};

/// Fewest samples accepted by [`compute_spectrum`].
pub const MIN_SAMPLES: usize = 1000;

/// Zero-padding factor applied before the transform.
pub const DEFAULT_PADDING: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    Hann,
    /// `exp(−γt)` with γ equal to the resolution 2π/T, so the end of the
    /// record is suppressed to e^{−2π}.
    ExpDamp,
    /// Four-term Blackman–Harris; sidelobes below −92 dB.
    BlackmanHarris,
    None,
}

impl Window {
    pub fn weights(&self, n: usize) -> Vec<f64> {
        let denom = (n.max(2) - 1) as f64;
        (0..n)
            .map(|i| {
                let x = i as f64 / denom;
                match self {
                    Window::Hann => 0.5 - 0.5 * (2.0 * PI * x).cos(),
                    Window::BlackmanHarris => {
                        0.35875 - 0.48829 * (2.0 * PI * x).cos() + 0.14128 * (4.0 * PI * x).cos()
                            - 0.01168 * (6.0 * PI * x).cos()
                    }
                    Window::ExpDamp => (-2.0 * PI * x).exp(),
                    Window::None => 1.0,
                }
            })
            .collect()
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Window::Hann => "hann",
            Window::ExpDamp => "exp-damp",
            Window::BlackmanHarris => "blackman-harris",
            Window::None => "none",
        })
    }
}

/// One-sided magnitude spectrum `|∫ w(t)(O(t) − Ō) e^{−iωt} dt|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Angular frequencies on [0, π/Δt] (a.u.), uniformly spaced.
    pub frequencies: Vec<f64>,
    pub magnitude: Vec<f64>,
    #[serde(skip)]
    pub complex_values: Option<Vec<Complex64>>,
    pub window: Window,
    /// 2π/T of the underlying record.
    pub resolution: f64,
    /// Σ|w·x|²Δt of the windowed, mean-subtracted record.
    pub windowed_power: f64,
    /// Padded transform length.
    pub fft_len: usize,
}

impl Spectrum {
    pub fn bin_width(&self) -> f64 {
        self.frequencies.get(1).copied().unwrap_or(0.0)
    }

    /// Parseval sum over the full two-sided spectrum, in the same units
    /// as `windowed_power`.
    pub fn spectral_power(&self) -> f64 {
        let n = self.fft_len;
        let dw = self.bin_width();
        let mut s = 0.0;
        for (k, m) in self.magnitude.iter().enumerate() {
            let mult = if k == 0 || (n.is_multiple_of(2) && k == n / 2) {
                1.0
            } else {
                2.0
            };
            s += mult * m * m;
        }
        s * dw / (2.0 * PI)
    }

    /// Magnitude linearly interpolated at `omega`.
    pub fn magnitude_at(&self, omega: f64) -> f64 {
        let dw = self.bin_width();
        if dw == 0.0 || omega < 0.0 {
            return 0.0;
        }
        let x = omega / dw;
        let i = x.floor() as usize;
        if i + 1 >= self.magnitude.len() {
            return *self.magnitude.last().unwrap_or(&0.0);
        }
        let f = x - i as f64;
        self.magnitude[i] * (1.0 - f) + self.magnitude[i + 1] * f
    }

    /// Truncates the stored spectrum to frequencies ≤ `omega_max`.
    pub fn truncated(mut self, omega_max: f64) -> Self {
        let keep = self
            .frequencies
            .iter()
            .take_while(|w| **w <= omega_max)
            .count();
        self.frequencies.truncate(keep);
        self.magnitude.truncate(keep);
        if let Some(c) = self.complex_values.as_mut() {
            c.truncate(keep);
        }
        self
    }

    pub fn to_csv(&self, metadata: &[(String, String)]) -> String {
        let mut s = String::new();
        for (k, v) in metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "# window: {}", self.window);
        let _ = writeln!(s, "# resolution: {}", self.resolution);
        s.push_str("omega,magnitude\n");
        for (w, m) in self.frequencies.iter().zip(&self.magnitude) {
            let _ = writeln!(s, "{w},{m:e}");
        }
        s
    }
}

/// Spectrum of one observable of a propagation record.
pub fn compute_spectrum(
    series: &ObservableSeries,
    observable: Observable,
    window: Window,
) -> Result<Spectrum> {
    spectrum_of(
        series.get(observable),
        series.sample_interval(),
        window,
        DEFAULT_PADDING,
    )
}

/// Spectrum of a uniformly sampled real signal.
pub fn spectrum_of(signal: &[f64], dt: f64, window: Window, padding: usize) -> Result<Spectrum> {
    let n = signal.len();
    if n < MIN_SAMPLES {
        return Err(Error::Analysis(format!(
            "spectrum needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if !(dt > 0.0) {
        return Err(Error::Analysis(format!(
            "sample interval must be positive, got {dt}"
        )));
    }
    let w = window.weights(n);
    // window-weighted mean, so the windowed record has no DC component
    let mean = signal.iter().zip(&w).map(|(x, w)| x * w).sum::<f64>() / w.iter().sum::<f64>();
    let len = n * padding.max(1);
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    let mut windowed_power = 0.0;
    for i in 0..n {
        let v = (signal[i] - mean) * w[i];
        windowed_power += v * v * dt;
        buf[i] = Complex64::new(v, 0.0);
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let half = len / 2 + 1;
    buf.truncate(half);
    buf.iter_mut().for_each(|c| *c *= dt);
    let dw = 2.0 * PI / (len as f64 * dt);
    Ok(Spectrum {
        frequencies: (0..half).map(|k| k as f64 * dw).collect(),
        magnitude: buf.iter().map(|c| c.norm()).collect(),
        complex_values: Some(buf),
        window,
        resolution: 2.0 * PI / (n as f64 * dt),
        windowed_power,
        fft_len: len,
    })
}
