use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Impulse probe `H_I = E₀ Σᵢ xᵢ^(l+1) δ(t)`.
///
/// `l = 0` is the homogeneous (dipole) probe; `l = 1, 2` are the
/// near-axis scalar reductions of a twisted-light beam of topological
/// charge l.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    /// Topological charge, 0, 1 or 2.
    pub l: u8,
    /// Impulse strength E₀ (a.u.).
    pub e0: f64,
    /// Transverse wavenumber q_r (a.u.). When absent the beam prefactor
    /// is taken to be folded into `e0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_r: Option<f64>,
}

impl ProbeSpec {
    pub fn new(l: u8, e0: f64) -> Result<Self> {
        let p = ProbeSpec { l, e0, q_r: None };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l > 2 {
            return Err(Error::config(format!(
                "topological charge must be 0, 1 or 2, got {}",
                self.l
            )));
        }
        if !(self.e0 > 0.0 && self.e0.is_finite()) {
            return Err(Error::config(format!(
                "probe strength must be positive, got {}",
                self.e0
            )));
        }
        if let Some(q_r) = self.q_r {
            if !(q_r > 0.0 && q_r.is_finite()) {
                return Err(Error::config(format!("q_r must be positive, got {q_r}")));
            }
        }
        Ok(())
    }

    /// Power of the kick generator, l + 1.
    pub fn order(&self) -> i32 {
        self.l as i32 + 1
    }

    /// Kick strength multiplying `Σ xᵢ^(l+1)`, including the beam
    /// prefactor `q_r/(2√2)` (l = 1) or `q_r²/(12√2)` (l = 2) when q_r is
    /// given.
    pub fn effective_strength(&self) -> f64 {
        let Some(q_r) = self.q_r else {
            return self.e0;
        };
        let s2 = std::f64::consts::SQRT_2;
        match self.l {
            1 => self.e0 * q_r / (2.0 * s2),
            2 => self.e0 * q_r * q_r / (12.0 * s2),
            _ => self.e0,
        }
    }
}

/// Kick generator `Σᵢ xᵢ^(l+1)` evaluated at the particle positions.
pub fn probe_polynomial(probe: &ProbeSpec, positions: &[f64]) -> Result<f64> {
    if probe.l > 2 {
        return Err(Error::config(format!(
            "unsupported topological charge {}",
            probe.l
        )));
    }
    let k = probe.order();
    Ok(positions.iter().map(|x| x.powi(k)).sum())
}

/// `x₁² + x₂²` written in Jacobi coordinates.
pub fn quadratic_generator_jacobi(big_x: f64, q: f64) -> f64 {
    2.0 * big_x * big_x + q * q
}

/// `x₁³ + x₂³` written in Jacobi coordinates. With q = (x₁−x₂)/√2 the
/// cross term is `3 X q²`.
pub fn cubic_generator_jacobi(big_x: f64, q: f64) -> f64 {
    2.0 * big_x.powi(3) + 3.0 * big_x * q * q
}
