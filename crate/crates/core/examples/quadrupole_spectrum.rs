//! Quadratic (l = 1) kick on a small grid: quadrupole spectrum, peak
//! detection and assignment to centre-of-mass and internal transitions.
//!
//! cargo run --release --example quadrupole_spectrum

use twisted_trap::analysis::{compute_spectrum, find_peaks, label_peaks, Window};
use twisted_trap::dynamics::{
    apply_kick, build_hamiltonian_2d, ground_state_2d, propagate, KineticScheme, Method,
    Observable, PropagationConfig,
};
use twisted_trap::model::{build_grid, Grid2D, ProbeSpec, TrapParams};
use twisted_trap::spectral::{cm_spectrum, internal_spectrum, transition_table};

fn main() -> twisted_trap::Result<()> {
    let params = TrapParams::new(0.5, 1.0)?;
    let axis = build_grid(10.0, 101)?;
    let h = build_hamiltonian_2d(&params, &Grid2D::new(axis), KineticScheme::Spectral)?;
    let (psi, _) = ground_state_2d(&h, 1e-10)?;

    let cfg = PropagationConfig {
        dt: 0.02,
        total_time: 400.0,
        method: Method::SplitOperator,
        record_stride: 5,
    };
    let series = propagate(&apply_kick(&psi, &ProbeSpec::new(1, 1e-2)?), &h, &cfg)?;
    println!(
        "norm drift {:.1e}, energy drift {:.1e}",
        series.norm_drift(),
        series.energy_drift()
    );

    let spectrum = compute_spectrum(&series, Observable::Quadrupole, Window::BlackmanHarris)?;
    let mut peaks = find_peaks(&spectrum, 1e-3)?;
    let fine = build_grid(10.0, 401)?;
    let cm = transition_table(&cm_spectrum(&params, &fine, 10)?)?;
    let q = transition_table(&internal_spectrum(&params, &fine, 10)?)?;
    label_peaks(&mut peaks, &cm, &q, spectrum.resolution);

    println!("resolution {:.4}", spectrum.resolution);
    for p in &peaks.peaks {
        let label = p.label.as_ref().map_or("unassigned", |l| l.text.as_str());
        println!(
            "  ω = {:.4}  relative {:.2e}  {label}",
            p.omega, p.relative_height
        );
    }
    Ok(())
}
