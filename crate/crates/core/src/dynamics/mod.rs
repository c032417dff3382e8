//! Exact two-particle dynamics on the (x₁, x₂) grid: ground-state
//! preparation, impulse kicks and unitary real-time propagation.

mod crank_nicolson;
mod fft2;
mod ground_state;
mod hamiltonian;
mod kick;
mod propagate;
mod split_operator;
mod stationary;

pub use crank_nicolson::CrankNicolsonAdi;
pub use fft2::{transpose_square, Fft2};
pub use ground_state::{ground_state_2d, ground_state_2d_with, GroundStateOptions};
pub use hamiltonian::{build_hamiltonian_2d, exchange, Hamiltonian2D, KineticScheme};
pub use kick::apply_kick;
pub use propagate::{
    evolve, propagate, propagate_with_state, Method, Observable, ObservableSeries,
    PropagationConfig, Propagator, EDGE_DENSITY_LIMIT, NORM_ABORT,
};
pub use split_operator::SplitOperator;
pub use stationary::stationary_projection;
