//! Homogeneous kick: the dipole follows the free centre-of-mass
//! oscillation whether or not the particles interact.
//!
//! cargo run --release --example kohn_dipole

use twisted_trap::dynamics::{
    apply_kick, build_hamiltonian_2d, ground_state_2d, propagate, KineticScheme, Method,
    PropagationConfig,
};
use twisted_trap::model::{build_grid, Grid2D, ProbeSpec, TrapParams};

fn main() -> twisted_trap::Result<()> {
    let omega0 = 0.5;
    let e0 = 1e-2;
    let grid = Grid2D::new(build_grid(12.0, 121)?);
    let cfg = PropagationConfig {
        dt: 0.01,
        total_time: 40.0,
        method: Method::SplitOperator,
        record_stride: 100,
    };
    let mut traces = Vec::new();
    for interaction in [true, false] {
        let params = TrapParams::new(omega0, 1.0)?.with_interaction(interaction);
        let h = build_hamiltonian_2d(&params, &grid, KineticScheme::Spectral)?;
        let (psi, energy) = ground_state_2d(&h, 1e-10)?;
        println!("interaction {interaction}: ground energy {energy:.6}");
        let kicked = apply_kick(&psi, &ProbeSpec::new(0, e0)?);
        traces.push(propagate(&kicked, &h, &cfg)?);
    }
    println!("     t   D(on)        D(off)       (2E0/w0) sin w0 t");
    for (i, t) in traces[0].times.iter().enumerate() {
        println!(
            "{t:6.1} {:+.6e} {:+.6e} {:+.6e}",
            traces[0].dipole[i],
            traces[1].dipole[i],
            2.0 * e0 / omega0 * (omega0 * t).sin()
        );
    }
    Ok(())
}
