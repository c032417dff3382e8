use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::crank_nicolson::CrankNicolsonAdi;
use super::hamiltonian::{Hamiltonian2D, KineticScheme};
use super::split_operator::SplitOperator;
use crate::error::{Error, Result};
use crate::model::{weighted_sum, WaveFunction2D};

/// Norm drift at which a propagation is aborted.
pub const NORM_ABORT: f64 = 1e-6;
/// Largest |ψ|² tolerated on the box boundary.
pub const EDGE_DENSITY_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SplitOperator,
    CrankNicolson,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::SplitOperator => "split-operator",
            Method::CrankNicolson => "crank-nicolson",
        })
    }
}

impl Method {
    pub fn kinetic_scheme(&self) -> KineticScheme {
        match self {
            Method::SplitOperator => KineticScheme::Spectral,
            Method::CrankNicolson => KineticScheme::FiniteDifference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    /// Time step (a.u.).
    pub dt: f64,
    /// Total propagation time T (a.u.).
    pub total_time: f64,
    pub method: Method,
    /// Steps between observable samples.
    pub record_stride: usize,
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.total_time >= 100.0 * self.dt) {
            return Err(Error::config(format!(
                "total time {} is shorter than 100 steps of {}",
                self.total_time, self.dt
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::config("record stride must be at least 1"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.total_time / self.dt).round() as usize
    }

    /// Time between recorded samples.
    pub fn sample_interval(&self) -> f64 {
        self.dt * self.record_stride as f64
    }
}

/// Time series of the dipole D = −e⟨x₁+x₂⟩ and quadrupole
/// Q = −e⟨x₁²+x₂²⟩, with norm and energy monitors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub dipole: Vec<f64>,
    pub quadrupole: Vec<f64>,
    pub norm: Vec<f64>,
    pub energy: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    Dipole,
    Quadrupole,
}

impl std::fmt::Display for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Observable::Dipole => "dipole",
            Observable::Quadrupole => "quadrupole",
        })
    }
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn get(&self, which: Observable) -> &[f64] {
        match which {
            Observable::Dipole => &self.dipole,
            Observable::Quadrupole => &self.quadrupole,
        }
    }

    pub fn sample_interval(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            self.times[1] - self.times[0]
        }
    }

    /// max |‖ψ(t)‖² − ‖ψ(0)‖²|.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.norm.first().copied().unwrap_or(1.0);
        self.norm.iter().map(|n| (n - n0).abs()).fold(0.0, f64::max)
    }

    /// max |E(t) − E(0)| / |E(0)|.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy.first().copied().unwrap_or(0.0);
        let scale = e0.abs().max(f64::MIN_POSITIVE);
        self.energy
            .iter()
            .map(|e| (e - e0).abs() / scale)
            .fold(0.0, f64::max)
    }

    /// CSV with '#'-prefixed metadata lines followed by `t,D,Q,norm,energy`.
    pub fn to_csv(&self, metadata: &[(String, String)]) -> String {
        let mut s = String::new();
        for (k, v) in metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        s.push_str("t,D,Q,norm,energy\n");
        for i in 0..self.len() {
            let _ = writeln!(
                s,
                "{},{:e},{:e},{:e},{:e}",
                self.times[i], self.dipole[i], self.quadrupole[i], self.norm[i], self.energy[i]
            );
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut out = ObservableSeries {
            times: vec![],
            dipole: vec![],
            quadrupole: vec![],
            norm: vec![],
            energy: vec![],
        };
        let mut header_seen = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                if line != "t,D,Q,norm,energy" {
                    return Err(Error::Serialization(format!("unexpected header '{line}'")));
                }
                header_seen = true;
                continue;
            }
            let vals: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Serialization(format!("bad number in '{line}': {e}")))?;
            if vals.len() != 5 {
                return Err(Error::Serialization(format!(
                    "expected 5 columns in '{line}'"
                )));
            }
            out.times.push(vals[0]);
            out.dipole.push(vals[1]);
            out.quadrupole.push(vals[2]);
            out.norm.push(vals[3]);
            out.energy.push(vals[4]);
        }
        Ok(out)
    }
}

/// Unitary time stepper for either method.
#[derive(Debug, Clone)]
pub enum Propagator {
    Split(SplitOperator),
    CrankNicolson(CrankNicolsonAdi),
}

impl Propagator {
    /// Real-time stepper; a negative `dt` runs backwards.
    pub fn new(h: &Hamiltonian2D, method: Method, dt: f64) -> Result<Self> {
        if h.scheme != method.kinetic_scheme() {
            return Err(Error::config(format!(
                "{method:?} requires the {:?} kinetic scheme",
                method.kinetic_scheme()
            )));
        }
        Ok(match method {
            Method::SplitOperator => Propagator::Split(SplitOperator::real_time(h, dt)?),
            Method::CrankNicolson => Propagator::CrankNicolson(CrankNicolsonAdi::real_time(h, dt)?),
        })
    }

    pub fn advance(&self, psi: &mut [Complex64], steps: usize) {
        match self {
            Propagator::Split(s) => s.advance(psi, steps),
            Propagator::CrankNicolson(c) => c.advance(psi, steps),
        }
    }
}

struct Probes {
    dipole: Vec<f64>,
    quadrupole: Vec<f64>,
}

impl Probes {
    fn new(h: &Hamiltonian2D) -> Self {
        let e = h.params.particle_charge;
        Probes {
            dipole: h.grid.sample(|a, b| -e * (a + b)),
            quadrupole: h.grid.sample(|a, b| -e * (a * a + b * b)),
        }
    }
}

/// Evolves `psi` (already kicked) and records observables every
/// `record_stride` steps, including t = 0 and t = T.
pub fn propagate(
    psi: &WaveFunction2D,
    h: &Hamiltonian2D,
    cfg: &PropagationConfig,
) -> Result<ObservableSeries> {
    propagate_with_state(psi, h, cfg).map(|(series, _)| series)
}

/// As [`propagate`], also returning the state at t = T.
pub fn propagate_with_state(
    psi: &WaveFunction2D,
    h: &Hamiltonian2D,
    cfg: &PropagationConfig,
) -> Result<(ObservableSeries, WaveFunction2D)> {
    cfg.validate()?;
    if psi.grid != h.grid {
        return Err(Error::config("wavefunction and Hamiltonian grids differ"));
    }
    let propagator = Propagator::new(h, cfg.method, cfg.dt)?;
    let probes = Probes::new(h);
    let n_steps = cfg.n_steps();
    let mut state = psi.clone();
    let mut series = ObservableSeries {
        times: vec![],
        dipole: vec![],
        quadrupole: vec![],
        norm: vec![],
        energy: vec![],
    };
    let norm0 = state.norm_sqr();
    let mut step = 0;
    loop {
        let norm = state.norm_sqr();
        let density = |k: usize| state.amplitudes[k].norm_sqr();
        series.times.push(step as f64 * cfg.dt);
        series
            .dipole
            .push(weighted_sum(&h.grid, |k| probes.dipole[k] * density(k)) / norm);
        series
            .quadrupole
            .push(weighted_sum(&h.grid, |k| probes.quadrupole[k] * density(k)) / norm);
        series.norm.push(norm);
        series.energy.push(h.energy_raw(&state.amplitudes));

        if (norm - norm0).abs() > NORM_ABORT {
            return Err(Error::Invariant(format!(
                "norm drifted by {:.3e} at t = {} (dt {}, grid spacing {}); reduce dt or refine the grid",
                norm - norm0,
                step as f64 * cfg.dt,
                cfg.dt,
                h.grid.axis.spacing()
            )));
        }
        let edge = state.edge_density();
        if edge > EDGE_DENSITY_LIMIT {
            return Err(Error::Invariant(format!(
                "density {edge:.3e} reached the box edge at t = {}; enlarge the box",
                step as f64 * cfg.dt
            )));
        }
        if step >= n_steps {
            break;
        }
        let chunk = cfg.record_stride.min(n_steps - step);
        propagator.advance(&mut state.amplitudes, chunk);
        step += chunk;
    }
    Ok((series, state))
}

/// Evolves a state for `steps` steps without recording.
pub fn evolve(
    psi: &WaveFunction2D,
    h: &Hamiltonian2D,
    method: Method,
    dt: f64,
    steps: usize,
) -> Result<WaveFunction2D> {
    let propagator = Propagator::new(h, method, dt)?;
    let mut out = psi.clone();
    propagator.advance(&mut out.amplitudes, steps);
    Ok(out)
}
