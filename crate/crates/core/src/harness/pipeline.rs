use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::analysis::{
    compute_spectrum, entanglement_entropy, find_peaks, label_peaks, EntropyReport, PeakList,
    Spectrum,
};
use crate::dynamics::{
    apply_kick, build_hamiltonian_2d, ground_state_2d_with, propagate_with_state,
    stationary_projection, Observable, ObservableSeries,
};
use crate::error::{Error, Result};
use crate::model::{Grid2D, WaveFunction2D};
use crate::spectral::{
    cm_spectrum, internal_spectrum, transition_table, EigenSpectrum, TransitionTable,
};

/// Largest accepted norm drift over a run.
pub const NORM_TOLERANCE: f64 = 1e-8;
/// Largest accepted relative energy drift after the kick.
pub const ENERGY_TOLERANCE: f64 = 1e-6;
/// Largest accepted exchange-symmetry residual.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateSummary {
    pub energy: f64,
    /// ε^CM_0 + ε^q_0 from the 1D solvers on the run spacing.
    pub separable_energy: f64,
    pub entropy: EntropyReport,
    /// Width of the stationary filter applied before the kick, if any.
    #[serde(default)]
    pub filter_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub norm_drift: f64,
    pub energy_drift: f64,
    pub symmetry_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config_hash: String,
    pub status: RunStatus,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_state: Option<GroundStateSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantReport>,
}

/// Everything a completed run produces.
#[derive(Debug, Clone)]
pub struct RunBundle {
    pub dir: PathBuf,
    pub config: RunConfig,
    pub summary: RunSummary,
    pub series: ObservableSeries,
    pub dipole_peaks: PeakList,
    pub quadrupole_peaks: PeakList,
}

impl RunBundle {
    pub fn ground_state(&self) -> &GroundStateSummary {
        self.summary
            .ground_state
            .as_ref()
            .expect("complete runs carry a ground-state summary")
    }

    pub fn peaks(&self, observable: Observable) -> &PeakList {
        match observable {
            Observable::Dipole => &self.dipole_peaks,
            Observable::Quadrupole => &self.quadrupole_peaks,
        }
    }

    pub fn spectrum(&self, observable: Observable) -> Result<Spectrum> {
        compute_spectrum(&self.series, observable, self.config.analysis.window)
    }
}

/// Centre-of-mass and internal transition tables for a run, from
/// Richardson-extrapolated eigenvalues at the run spacing and half of it.
pub fn transition_tables(cfg: &RunConfig) -> Result<(TransitionTable, TransitionTable)> {
    let k = cfg.analysis.table_levels;
    let coarse = cfg.grid.build()?;
    let fine = cfg.grid.refined().build()?;
    let extrapolate = |a: EigenSpectrum, b: EigenSpectrum| EigenSpectrum {
        eigenvalues: a
            .eigenvalues
            .iter()
            .zip(&b.eigenvalues)
            .map(|(c, f)| (4.0 * f - c) / 3.0)
            .collect(),
        eigenvectors: None,
        parity: b.parity.clone(),
        subsystem: b.subsystem,
        max_residual: a.max_residual.max(b.max_residual),
    };
    let cm = extrapolate(
        cm_spectrum(&cfg.trap, &coarse, k)?,
        cm_spectrum(&cfg.trap, &fine, k)?,
    );
    let q = extrapolate(
        internal_spectrum(&cfg.trap, &coarse, k)?,
        internal_spectrum(&cfg.trap, &fine, k)?,
    );
    Ok((transition_table(&cm)?, transition_table(&q)?))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Error::io(path, e))
}

fn density_csv(psi: &WaveFunction2D, metadata: &[(String, String)]) -> String {
    let mut s = String::new();
    for (k, v) in metadata {
        let _ = writeln!(s, "# {k}: {v}");
    }
    s.push_str("x,density\n");
    let n = psi.marginal_density();
    for (x, d) in psi.grid.axis.points().iter().zip(&n) {
        // total particle density: two particles
        let _ = writeln!(s, "{x},{:e}", 2.0 * d);
    }
    s
}

/// Runs ground state, kick, propagation and analysis for one
/// configuration, writing every artifact into `cfg.run_dir()`.
///
/// On failure the run directory still holds whatever was produced, with
/// `run.json` marked incomplete, and the error is returned.
pub fn run_pipeline(cfg: &RunConfig) -> Result<RunBundle> {
    cfg.validate()?;
    let dir = cfg.run_dir()?;
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    write(&dir, "config.toml", &cfg.to_toml_string()?)?;
    let mut summary = RunSummary {
        config_hash: cfg.content_hash()?,
        status: RunStatus::Incomplete,
        exit_code: 1,
        error: None,
        ground_state: None,
        invariants: None,
    };
    match execute(cfg, &dir, &mut summary) {
        Ok((series, dipole_peaks, quadrupole_peaks)) => {
            summary.status = RunStatus::Complete;
            summary.exit_code = 0;
            write(&dir, "run.json", &serde_json::to_string_pretty(&summary)?)?;
            Ok(RunBundle {
                dir,
                config: cfg.clone(),
                summary,
                series,
                dipole_peaks,
                quadrupole_peaks,
            })
        }
        Err(e) => {
            summary.exit_code = e.exit_code();
            summary.error = Some(e.to_string());
            write(&dir, "run.json", &serde_json::to_string_pretty(&summary)?)?;
            Err(e)
        }
    }
}

/// Loads a previously completed run of `cfg`, if its directory holds one.
pub fn load_bundle(cfg: &RunConfig) -> Result<Option<RunBundle>> {
    let dir = cfg.run_dir()?;
    let read = |name: &str| {
        let path = dir.join(name);
        std::fs::read_to_string(&path).map_err(|e| Error::io(path, e))
    };
    let Ok(text) = read("run.json") else {
        return Ok(None);
    };
    let summary: RunSummary = serde_json::from_str(&text)?;
    if summary.status != RunStatus::Complete
        || RunConfig::from_toml_str(&read("config.toml")?)? != *cfg
    {
        return Ok(None);
    }
    Ok(Some(RunBundle {
        series: ObservableSeries::from_csv(&read("series.csv")?)?,
        dipole_peaks: serde_json::from_str(&read("peaks_dipole.json")?)?,
        quadrupole_peaks: serde_json::from_str(&read("peaks_quadrupole.json")?)?,
        dir,
        config: cfg.clone(),
        summary,
    }))
}

/// [`load_bundle`] falling back to [`run_pipeline`].
pub fn run_cached(cfg: &RunConfig) -> Result<RunBundle> {
    match load_bundle(cfg)? {
        Some(b) => Ok(b),
        None => run_pipeline(cfg),
    }
}

type Products = (ObservableSeries, PeakList, PeakList);

fn execute(cfg: &RunConfig, dir: &Path, summary: &mut RunSummary) -> Result<Products> {
    let meta = cfg.metadata();
    let grid = Grid2D::new(cfg.grid.build()?);
    let h = build_hamiltonian_2d(&cfg.trap, &grid, cfg.propagation.method.kinetic_scheme())?;

    let (cm, q) = transition_tables(cfg)?;
    write(dir, "transitions_cm.json", &cm.to_json()?)?;
    write(dir, "transitions_internal.json", &q.to_json()?)?;

    let (psi0, energy) = ground_state_2d_with(&h, &cfg.ground_state)?;
    let mut ground = ground_summary(cfg, &psi0, energy)?;
    let initial = match cfg.stationary_filter.sigma(&cm, &q) {
        Some(sigma) => {
            ground.filter_width = Some(sigma);
            let p = cfg.propagation;
            stationary_projection(
                &psi0,
                &h,
                p.method,
                p.dt,
                sigma,
                cfg.stationary_filter.half_span,
            )?
        }
        None => psi0.clone(),
    };
    write(
        dir,
        "ground_state.json",
        &serde_json::to_string_pretty(&ground)?,
    )?;
    write(dir, "density.csv", &density_csv(&psi0, &meta))?;
    summary.ground_state = Some(ground);

    let kicked = apply_kick(&initial, &cfg.probe);
    let (series, last) = propagate_with_state(&kicked, &h, &cfg.propagation)?;
    write(dir, "series.csv", &series.to_csv(&meta))?;

    let invariants = check_invariants(&series, &kicked, &last);
    summary.invariants = Some(invariants.clone());
    if !invariants.passed {
        return Err(Error::Invariant(format!(
            "norm drift {:.3e}, energy drift {:.3e}, symmetry residual {:.3e} (limits {NORM_TOLERANCE:e}, {ENERGY_TOLERANCE:e}, {SYMMETRY_TOLERANCE:e}); reduce dt",
            invariants.norm_drift, invariants.energy_drift, invariants.symmetry_residual
        )));
    }

    let tol = cfg.label_tolerance();
    let mut lists = Vec::new();
    for obs in [Observable::Dipole, Observable::Quadrupole] {
        let spectrum = compute_spectrum(&series, obs, cfg.analysis.window)?;
        let mut peaks = find_peaks(&spectrum, cfg.analysis.peak_threshold)?;
        label_peaks(&mut peaks, &cm, &q, tol);
        let spectrum = spectrum.truncated(cfg.analysis.omega_max);
        write(dir, &format!("spectrum_{obs}.csv"), &spectrum.to_csv(&meta))?;
        write(dir, &format!("peaks_{obs}.json"), &peaks.to_json()?)?;
        lists.push(peaks);
    }
    let quadrupole_peaks = lists.pop().expect("two lists");
    let dipole_peaks = lists.pop().expect("two lists");
    Ok((series, dipole_peaks, quadrupole_peaks))
}

fn ground_summary(
    cfg: &RunConfig,
    psi: &WaveFunction2D,
    energy: f64,
) -> Result<GroundStateSummary> {
    let axis = cfg.grid.build()?;
    let cm = cm_spectrum(&cfg.trap, &axis, 1)?;
    let q = internal_spectrum(&cfg.trap, &axis, 1)?;
    Ok(GroundStateSummary {
        energy,
        separable_energy: cm.eigenvalues[0] + q.eigenvalues[0],
        entropy: entanglement_entropy(psi)?,
        filter_width: None,
    })
}

fn check_invariants(
    series: &ObservableSeries,
    kicked: &WaveFunction2D,
    last: &WaveFunction2D,
) -> InvariantReport {
    let norm_drift = series.norm_drift();
    let energy_drift = series.energy_drift();
    let symmetry_residual = kicked.symmetry_residual().max(last.symmetry_residual());
    InvariantReport {
        norm_drift,
        energy_drift,
        symmetry_residual,
        passed: norm_drift < NORM_TOLERANCE
            && energy_drift < ENERGY_TOLERANCE
            && symmetry_residual < SYMMETRY_TOLERANCE,
    }
}
