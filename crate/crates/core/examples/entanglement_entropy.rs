//! Ground-state entanglement entropy and natural occupations as the trap
//! softens and the pair localizes.
//!
//! cargo run --release --example entanglement_entropy

use twisted_trap::analysis::entanglement_entropy;
use twisted_trap::dynamics::{build_hamiltonian_2d, ground_state_2d, KineticScheme};
use twisted_trap::model::{Grid1D, Grid2D, TrapParams};

fn main() -> twisted_trap::Result<()> {
    for (omega0, half_width) in [(0.5, 12.0), (0.2, 18.0), (0.1, 24.0)] {
        let params = TrapParams::new(omega0, 1.0)?;
        let grid = Grid2D::new(Grid1D::with_spacing(half_width, 0.2)?);
        let h = build_hamiltonian_2d(&params, &grid, KineticScheme::Spectral)?;
        let (psi, energy) = ground_state_2d(&h, 1e-10)?;
        let s = entanglement_entropy(&psi)?;
        println!(
            "omega0 = {omega0}: E = {energy:.6}, s = {:.4} (raw {:.4}), occupations {:.4?}",
            s.entropy,
            s.raw_entropy,
            &s.occupations[..3]
        );
    }
    Ok(())
}
