//! Sweep over trap frequency and probe charge on a reduced grid, with
//! peak positions and entropies collected across runs.
//!
//! cargo run --release --example parameter_sweep

use twisted_trap::harness::{sweep, GridConfig, RunConfig, SweepPlan};

fn main() -> twisted_trap::Result<()> {
    let mut base = RunConfig::desk(0.5, 0)?;
    base.output_dir = std::env::temp_dir().join("twisted-trap-sweep");
    base.grid = GridConfig {
        half_width: 10.0,
        n_points: 101,
    };
    base.propagation.dt = 0.02;
    base.propagation.total_time = 200.0;
    base.propagation.record_stride = 5;
    let plan = SweepPlan {
        omega0: vec![0.5, 0.4],
        l: vec![0, 1],
        e0: vec![],
        workers: 2,
    };
    let (aggregate, _) = sweep(&base, &plan)?;
    for e in &aggregate.entries {
        println!(
            "omega0 = {}, l = {}: ok = {}, {} quadrupole peaks",
            e.omega0,
            e.l,
            e.ok,
            e.quadrupole_peaks.len()
        );
    }
    for (label, points) in &aggregate.peak_positions {
        println!("{label}: {points:.4?}");
    }
    println!("entropy: {:.4?}", aggregate.entropy);
    Ok(())
}
