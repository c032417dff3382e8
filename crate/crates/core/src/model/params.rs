use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn one() -> f64 {
    1.0
}

fn two() -> usize {
    2
}

fn yes() -> bool {
    true
}

/// Physical configuration of the trap, in atomic units.
///
/// The centre-of-mass mass `N * m` is always derived from
/// `particle_mass` and `n_particles`; it is never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapParams {
    /// Trap frequency ω₀ (a.u.).
    pub omega0: f64,
    /// Soft-Coulomb softening length a (a.u.).
    pub softening_a: f64,
    /// Particle mass m (a.u.).
    #[serde(default = "one")]
    pub particle_mass: f64,
    /// Charge magnitude e (a.u.).
    #[serde(default = "one")]
    pub particle_charge: f64,
    #[serde(default = "two")]
    pub n_particles: usize,
    /// Switches the pair interaction on or off.
    #[serde(default = "yes")]
    pub interaction: bool,
}

impl TrapParams {
    pub fn new(omega0: f64, softening_a: f64) -> Result<Self> {
        let p = TrapParams {
            omega0,
            softening_a,
            particle_mass: 1.0,
            particle_charge: 1.0,
            n_particles: 2,
            interaction: true,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn non_interacting(mut self) -> Self {
        self.interaction = false;
        self
    }

    pub fn with_interaction(mut self, on: bool) -> Self {
        self.interaction = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::config(format!(
                "omega0 must be positive, got {}",
                self.omega0
            )));
        }
        if !(self.softening_a > 0.0 && self.softening_a.is_finite()) {
            return Err(Error::config(format!(
                "softening_a must be positive, got {}",
                self.softening_a
            )));
        }
        if !(self.particle_mass > 0.0 && self.particle_mass.is_finite()) {
            return Err(Error::config(format!(
                "particle_mass must be positive, got {}",
                self.particle_mass
            )));
        }
        if !self.particle_charge.is_finite() {
            return Err(Error::config("particle_charge must be finite"));
        }
        if self.n_particles != 2 {
            return Err(Error::config(format!(
                "the exact solver handles exactly two particles, got {}",
                self.n_particles
            )));
        }
        Ok(())
    }

    /// Centre-of-mass mass M = N m.
    pub fn total_mass(&self) -> f64 {
        self.n_particles as f64 * self.particle_mass
    }

    /// Pair interaction as a function of the separation x₁ − x₂.
    pub fn pair_interaction(&self, separation: f64) -> f64 {
        if self.interaction {
            self.particle_charge.powi(2) * super::soft_coulomb(separation, self.softening_a)
        } else {
            0.0
        }
    }
}
