//! Separable one-dimensional eigenproblems of the centre-of-mass and
//! relative coordinates.

mod diagnostics;
mod eigen;
mod transitions;
mod tridiagonal;

pub use diagnostics::{
    degeneracy_diagnostic, equispacing_diagnostic, even_ladder_spread, EquispacingReport,
};
pub use eigen::{
    cm_spectrum, eigensolve_1d, internal_spectrum, EigenSpectrum, Parity, Subsystem,
    DEGENERACY_TOL, RESIDUAL_TOL,
};
pub use transitions::{transition_table, Transition, TransitionTable};
pub use tridiagonal::{discretize_1d, expand_even, expand_odd, SymTridiagonal};
