//! Split-operator (spectral kinetic energy) against Crank–Nicolson ADI
//! (finite differences) for the same kicked state.
//!
//! cargo run --release --example propagator_comparison

use twisted_trap::dynamics::{
    apply_kick, build_hamiltonian_2d, ground_state_2d, propagate, Method, PropagationConfig,
};
use twisted_trap::model::{build_grid, Grid2D, ProbeSpec, TrapParams};

fn main() -> twisted_trap::Result<()> {
    let params = TrapParams::new(0.5, 1.0)?;
    let grid = Grid2D::new(build_grid(12.0, 241)?);
    let probe = ProbeSpec::new(1, 1e-2)?;
    let mut out = Vec::new();
    for method in [Method::SplitOperator, Method::CrankNicolson] {
        let h = build_hamiltonian_2d(&params, &grid, method.kinetic_scheme())?;
        let (psi, energy) = ground_state_2d(&h, 1e-10)?;
        let cfg = PropagationConfig {
            dt: 0.005,
            total_time: 10.0,
            method,
            record_stride: 200,
        };
        let s = propagate(&apply_kick(&psi, &probe), &h, &cfg)?;
        println!(
            "{method}: E0 = {energy:.6}, norm drift {:.1e}, energy drift {:.1e}",
            s.norm_drift(),
            s.energy_drift()
        );
        out.push(s);
    }
    println!("     t   Q(split)          Q(CN)");
    for (i, t) in out[0].times.iter().enumerate() {
        println!(
            "{t:6.2} {:+.10} {:+.10}",
            out[0].quadrupole[i], out[1].quadrupole[i]
        );
    }
    Ok(())
}
