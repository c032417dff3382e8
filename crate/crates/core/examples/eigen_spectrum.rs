//! Centre-of-mass and internal spectra of the 1D problems, their
//! transition tables and the equispacing diagnostic.
//!
//! cargo run --release --example eigen_spectrum -- [omega0]

use twisted_trap::model::{build_grid, TrapParams};
use twisted_trap::spectral::{
    cm_spectrum, equispacing_diagnostic, internal_spectrum, transition_table, Subsystem,
};

fn main() -> twisted_trap::Result<()> {
    let omega0: f64 = std::env::args()
        .nth(1)
        .map_or(0.2, |s| s.parse().expect("omega0"));
    let params = TrapParams::new(omega0, 1.0)?;
    let grid = build_grid(30.0, 601)?;

    let cm = cm_spectrum(&params, &grid, 6)?;
    let q = internal_spectrum(&params, &grid, 8)?;
    println!("omega0 = {omega0}, spacing {}", grid.spacing());
    for (name, spec) in [("CM", &cm), ("internal", &q)] {
        println!("{name} levels (max residual {:.1e}):", spec.max_residual);
        for (n, (e, p)) in spec.eigenvalues.iter().zip(&spec.parity).enumerate() {
            println!("  {n}: {e:.6} {p:?}");
        }
    }

    let table = transition_table(&q)?;
    println!("quadrupole-allowed internal transitions out of even levels:");
    for t in table
        .quadrupole_allowed()
        .filter(|t| t.m % 2 == 0 && t.n <= 6)
    {
        println!("  {t} = {:.5}", t.omega);
    }
    assert_eq!(table.subsystem(), Some(Subsystem::Internal));

    let eq = equispacing_diagnostic(&table, omega0);
    println!(
        "ladder ratios ω_(n,n+2)/(√3ω₀): {:?}, max deviation {:.3}",
        eq.ladder_ratios
            .iter()
            .map(|r| format!("{r:.3}"))
            .collect::<Vec<_>>(),
        eq.max_deviation
    );
    Ok(())
}
