//! Full pipeline from a TOML configuration: ground state, kick,
//! propagation, spectra and labeled peaks, written to a run directory.
//!
//! cargo run --release --example config_run -- [config.toml]
//!
//! Without an argument a reduced grid is used so the run takes seconds.

use twisted_trap::dynamics::Observable;
use twisted_trap::harness::{run_pipeline, GridConfig, RunConfig};

fn main() -> twisted_trap::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => RunConfig::load(path.as_ref())?,
        None => {
            let mut cfg = RunConfig::desk(0.5, 1)?;
            cfg.grid = GridConfig {
                half_width: 10.0,
                n_points: 101,
            };
            cfg.propagation.dt = 0.02;
            cfg.propagation.total_time = 300.0;
            cfg.propagation.record_stride = 5;
            cfg
        }
    };
    let bundle = run_pipeline(&cfg)?;
    let gs = bundle.ground_state();
    println!("run directory {}", bundle.dir.display());
    println!(
        "ground energy {:.6} (separable {:.6}), entropy {:.4}",
        gs.energy, gs.separable_energy, gs.entropy.entropy
    );
    for obs in [Observable::Dipole, Observable::Quadrupole] {
        println!("{obs} peaks:");
        for p in &bundle.peaks(obs).peaks {
            let label = p.label.as_ref().map_or("unassigned", |l| l.text.as_str());
            println!("  {:.4} {:.2e} {label}", p.omega, p.relative_height);
        }
    }
    Ok(())
}
