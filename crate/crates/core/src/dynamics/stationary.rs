use num_complex::Complex64;

use super::hamiltonian::Hamiltonian2D;
use super::propagate::{Method, Propagator};
use crate::error::{Error, Result};
use crate::model::WaveFunction2D;

/// Projects `psi` onto the stationary state of the discrete propagator
/// nearest in quasi-energy, by a Gaussian time filter of width `sigma`.
///
/// Imaginary-time relaxation yields an eigenstate of H; a splitting step
/// of size dt conserves a slightly different operator, so that state
/// still oscillates at O(dt²). Filtering removes components separated by
/// more than a few 1/σ in quasi-energy.
pub fn stationary_projection(
    psi: &WaveFunction2D,
    h: &Hamiltonian2D,
    method: Method,
    dt: f64,
    sigma: f64,
    half_span: f64,
) -> Result<WaveFunction2D> {
    if !(sigma > 0.0 && dt > 0.0) {
        return Err(Error::config("filter width and time step must be positive"));
    }
    let propagator = Propagator::new(h, method, dt)?;
    let mut state = psi.amplitudes.clone();
    let mut once = state.clone();
    propagator.advance(&mut once, 1);
    let overlap: Complex64 = state.iter().zip(&once).map(|(a, b)| a.conj() * b).sum();
    let quasi_energy = -overlap.arg() / dt;

    let steps = (2.0 * half_span * sigma / dt).ceil() as usize;
    let centre = 0.5 * steps as f64 * dt;
    let mut acc = vec![Complex64::new(0.0, 0.0); state.len()];
    for k in 0..=steps {
        let t = k as f64 * dt;
        let w = (-(t - centre).powi(2) / (2.0 * sigma * sigma)).exp();
        let c = Complex64::from_polar(w, quasi_energy * t);
        acc.iter_mut().zip(&state).for_each(|(a, s)| *a += c * s);
        if k < steps {
            propagator.advance(&mut state, 1);
        }
    }
    let mut out = psi.clone();
    out.amplitudes = acc;
    out.normalize();
    Ok(out)
}
