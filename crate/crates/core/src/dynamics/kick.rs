use num_complex::Complex64;

use crate::model::{ProbeSpec, WaveFunction2D};

/// Impulse kick `ψ′ = exp(−i E₀ (x₁^(l+1) + x₂^(l+1))) ψ`.
pub fn apply_kick(psi: &WaveFunction2D, probe: &ProbeSpec) -> WaveFunction2D {
    let strength = probe.effective_strength();
    let k = probe.order();
    let xs = psi.grid.axis.points();
    let n = xs.len();
    let gen: Vec<f64> = xs.iter().map(|x| x.powi(k)).collect();
    let mut out = psi.clone();
    for i1 in 0..n {
        for i2 in 0..n {
            let phase = -strength * (gen[i1] + gen[i2]);
            out.amplitudes[i1 * n + i2] *= Complex64::from_polar(1.0, phase);
        }
    }
    out
}
