//! Physical parameters, grids, potentials, probe generators and
//! wavefunction containers shared by the solvers.

mod grid;
mod params;
mod potential;
mod probe;
mod wavefunction;

pub use grid::{build_grid, Grid1D, Grid2D};
pub use params::TrapParams;
pub use potential::{
    cm_potential, double_well_minimum, from_jacobi, harmonic, internal_potential, soft_coulomb,
    to_jacobi, two_particle_potential,
};
pub use probe::{cubic_generator_jacobi, probe_polynomial, quadratic_generator_jacobi, ProbeSpec};
pub(crate) use wavefunction::weighted_sum;
pub use wavefunction::{ExchangeSymmetry, WaveFunction1D, WaveFunction2D};
