use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{Window, DEFAULT_MIN_HEIGHT_RATIO};
use crate::dynamics::{GroundStateOptions, Method, PropagationConfig};
use crate::error::{Error, Result};
use crate::model::{build_grid, Grid1D, ProbeSpec, TrapParams};
use crate::spectral::TransitionTable;

/// Grid section: the box is [−half_width, half_width] (a.u.) on both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub half_width: f64,
    pub n_points: usize,
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid1D> {
        build_grid(self.half_width, self.n_points)
    }

    /// Same box with the spacing halved.
    pub fn refined(&self) -> GridConfig {
        GridConfig {
            half_width: self.half_width,
            n_points: 2 * self.n_points - 1,
        }
    }
}

fn default_omega_max() -> f64 {
    2.0
}

fn default_levels() -> usize {
    12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub window: Window,
    /// Detection threshold relative to the tallest peak.
    pub peak_threshold: f64,
    /// Peak-to-transition matching tolerance (a.u.); defaults to 2π/T.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_tolerance: Option<f64>,
    /// Upper end of the written spectra (a.u.).
    #[serde(default = "default_omega_max")]
    pub omega_max: f64,
    /// Levels per subsystem in the transition tables.
    #[serde(default = "default_levels")]
    pub table_levels: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            window: Window::BlackmanHarris,
            peak_threshold: DEFAULT_MIN_HEIGHT_RATIO,
            label_tolerance: None,
            omega_max: default_omega_max(),
            table_levels: default_levels(),
        }
    }
}

/// Time filter that turns the relaxed ground state into a stationary
/// state of the real-time propagator before the kick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StationaryFilter {
    pub enabled: bool,
    /// Filter width in units of the inverse lowest even gap; the gap is
    /// suppressed by exp(−sharpness²/2).
    pub sharpness: f64,
    /// Filter support on each side, in filter widths.
    pub half_span: f64,
}

impl Default for StationaryFilter {
    fn default() -> Self {
        StationaryFilter {
            enabled: true,
            sharpness: 5.0,
            half_span: 5.0,
        }
    }
}

impl StationaryFilter {
    /// Filter width for the given tables: sharpness / min(ω^CM_{02}, ω^q_{02}).
    pub fn sigma(&self, cm: &TransitionTable, internal: &TransitionTable) -> Option<f64> {
        if !self.enabled {
            return None;
        }
        let gap = cm.omega(0, 2)?.min(internal.omega(0, 2)?);
        Some(self.sharpness / gap)
    }
}

/// Complete, deterministic description of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub output_dir: PathBuf,
    pub trap: TrapParams,
    pub grid: GridConfig,
    pub probe: ProbeSpec,
    pub propagation: PropagationConfig,
    #[serde(default)]
    pub ground_state: GroundStateOptions,
    #[serde(default)]
    pub stationary_filter: StationaryFilter,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

/// Kick strength used when none is given: 1e−2 for l = 0, 1 and 1e−3 for
/// the cubic probe.
pub fn default_e0(l: u8) -> f64 {
    if l >= 2 {
        1e-3
    } else {
        1e-2
    }
}

impl RunConfig {
    /// Desk-scale defaults: box ±29.6, spacing 0.2, dt 0.01, T = 1500.
    pub fn desk(omega0: f64, l: u8) -> Result<Self> {
        Ok(RunConfig {
            output_dir: PathBuf::from("runs"),
            trap: TrapParams::new(omega0, 1.0)?,
            grid: GridConfig {
                half_width: 29.6,
                n_points: 297,
            },
            probe: ProbeSpec::new(l, default_e0(l))?,
            propagation: PropagationConfig {
                dt: 0.01,
                total_time: 1500.0,
                method: Method::SplitOperator,
                record_stride: 10,
            },
            ground_state: GroundStateOptions::default(),
            stationary_filter: StationaryFilter::default(),
            analysis: AnalysisConfig::default(),
        })
    }

    /// Configuration of the reference calculation: box ±50, spacing 0.1,
    /// dt 0.005, T = 2500.
    pub fn reference_scale(omega0: f64, l: u8) -> Result<Self> {
        let mut cfg = Self::desk(omega0, l)?;
        cfg.grid = GridConfig {
            half_width: 50.0,
            n_points: 1001,
        };
        cfg.propagation.dt = 0.005;
        cfg.propagation.total_time = 2500.0;
        cfg.propagation.record_stride = 20;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.trap.validate()?;
        self.grid.build()?;
        self.probe.validate()?;
        self.propagation.validate()?;
        let a = &self.analysis;
        if !(a.peak_threshold > 0.0 && a.peak_threshold < 1.0) {
            return Err(Error::config("analysis.peak_threshold must lie in (0, 1)"));
        }
        if let Some(tol) = a.label_tolerance {
            if !(tol >= self.resolution()) {
                return Err(Error::config(format!(
                    "label tolerance {tol} is below the spectral resolution {}",
                    self.resolution()
                )));
            }
        }
        if a.table_levels < 8 {
            return Err(Error::config("analysis.table_levels must be at least 8"));
        }
        Ok(())
    }

    /// Spectral resolution 2π/T (a.u.).
    pub fn resolution(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.propagation.total_time
    }

    pub fn label_tolerance(&self) -> f64 {
        self.analysis
            .label_tolerance
            .unwrap_or_else(|| self.resolution())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Hex SHA-256 prefix of the physics content; `output_dir` is excluded.
    pub fn content_hash(&self) -> Result<String> {
        let mut c = self.clone();
        c.output_dir = PathBuf::new();
        let digest = Sha256::digest(c.to_toml_string()?.as_bytes());
        Ok(hex::encode(&digest[..8]))
    }

    pub fn run_dir(&self) -> Result<PathBuf> {
        Ok(self.output_dir.join(self.content_hash()?))
    }

    /// Metadata written at the top of every CSV of this run.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let g = &self.grid;
        let p = &self.propagation;
        vec![
            ("omega0".into(), self.trap.omega0.to_string()),
            ("a".into(), self.trap.softening_a.to_string()),
            ("interaction".into(), self.trap.interaction.to_string()),
            ("l".into(), self.probe.l.to_string()),
            ("E0".into(), self.probe.e0.to_string()),
            (
                "grid".into(),
                format!("half_width={} n_points={}", g.half_width, g.n_points),
            ),
            ("dt".into(), p.dt.to_string()),
            ("T".into(), p.total_time.to_string()),
            ("method".into(), p.method.to_string()),
        ]
    }
}
