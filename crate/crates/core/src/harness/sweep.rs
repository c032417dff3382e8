use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{default_e0, RunConfig};
use super::pipeline::{run_cached, RunBundle};
use crate::analysis::{order_scaling, ScalingReport};
use crate::dynamics::Observable;
use crate::error::{Error, Result};
use crate::model::ProbeSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub omega0: Vec<f64>,
    pub l: Vec<u8>,
    /// Kick strengths applied to every l; empty selects the per-l default.
    pub e0: Vec<f64>,
    /// Concurrent runs.
    pub workers: usize,
}

impl SweepPlan {
    /// The 3 × 3 grid ω₀ ∈ {0.5, 0.2, 0.1} × l ∈ {0, 1, 2}.
    pub fn figure3() -> Self {
        SweepPlan {
            omega0: vec![0.5, 0.2, 0.1],
            l: vec![0, 1, 2],
            e0: vec![],
            workers: 1,
        }
    }

    fn combinations(&self, base: &RunConfig) -> Result<Vec<RunConfig>> {
        if self.omega0.is_empty() || self.l.is_empty() {
            return Err(Error::config("sweep lists must be non-empty"));
        }
        let mut out = Vec::new();
        for &omega0 in &self.omega0 {
            for &l in &self.l {
                let e0s = if self.e0.is_empty() {
                    vec![default_e0(l)]
                } else {
                    self.e0.clone()
                };
                for e0 in e0s {
                    let mut cfg = base.clone();
                    cfg.trap.omega0 = omega0;
                    cfg.probe = ProbeSpec {
                        l,
                        e0,
                        q_r: base.probe.q_r,
                    };
                    cfg.validate()?;
                    out.push(cfg);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSummary {
    pub omega: f64,
    pub height: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degenerate: bool,
    pub anomaly: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub omega0: f64,
    pub l: u8,
    pub e0: f64,
    pub config_hash: String,
    pub run_dir: PathBuf,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<f64>,
    pub quadrupole_peaks: Vec<PeakSummary>,
    pub dipole_peaks: Vec<PeakSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingGroup {
    pub omega0: f64,
    pub l: u8,
    pub observable: Observable,
    pub report: ScalingReport,
}

/// Aggregate over a sweep; independent of execution order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAggregate {
    pub entries: Vec<SweepEntry>,
    /// Quadrupole peak position against ω₀, keyed by label.
    pub peak_positions: BTreeMap<String, Vec<(f64, f64)>>,
    /// Ground-state entropy against ω₀.
    pub entropy: Vec<(f64, f64)>,
    /// Exponent fits for each (ω₀, l) with enough kick strengths.
    pub scaling: Vec<ScalingGroup>,
}

impl SweepAggregate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn summarize(list: &crate::analysis::PeakList) -> Vec<PeakSummary> {
    list.peaks
        .iter()
        .map(|p| PeakSummary {
            omega: p.omega,
            height: p.height,
            label: p.label.as_ref().map(|l| l.text.clone()),
            degenerate: p.degenerate,
            anomaly: p.anomaly,
        })
        .collect()
}

/// Runs every (ω₀, l, E₀) combination of `plan` on top of `base`, reusing
/// completed runs found on disk. Failed runs are recorded and skipped.
pub fn sweep(base: &RunConfig, plan: &SweepPlan) -> Result<(SweepAggregate, Vec<RunBundle>)> {
    let configs = plan.combinations(base)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot start workers: {e}")))?;
    let results: Vec<Result<RunBundle>> =
        pool.install(|| configs.par_iter().map(run_cached).collect());

    let mut entries = Vec::new();
    let mut bundles = Vec::new();
    for (cfg, res) in configs.iter().zip(results) {
        let mut entry = SweepEntry {
            omega0: cfg.trap.omega0,
            l: cfg.probe.l,
            e0: cfg.probe.e0,
            config_hash: cfg.content_hash()?,
            run_dir: cfg.run_dir()?,
            ok: false,
            error: None,
            entropy: None,
            quadrupole_peaks: vec![],
            dipole_peaks: vec![],
        };
        match res {
            Ok(b) => {
                entry.ok = true;
                entry.entropy = Some(b.ground_state().entropy.entropy);
                entry.quadrupole_peaks = summarize(&b.quadrupole_peaks);
                entry.dipole_peaks = summarize(&b.dipole_peaks);
                bundles.push(b);
            }
            Err(e) => entry.error = Some(e.to_string()),
        }
        entries.push(entry);
    }
    let aggregate = aggregate(entries, &bundles, base.label_tolerance())?;
    Ok((aggregate, bundles))
}

fn aggregate(entries: Vec<SweepEntry>, bundles: &[RunBundle], tol: f64) -> Result<SweepAggregate> {
    let mut peak_positions: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut entropy = Vec::new();
    for e in entries.iter().filter(|e| e.ok) {
        if let Some(s) = e.entropy {
            if !entropy.iter().any(|(w, _)| *w == e.omega0) {
                entropy.push((e.omega0, s));
            }
        }
        for p in &e.quadrupole_peaks {
            if let Some(label) = &p.label {
                let list = peak_positions.entry(label.clone()).or_default();
                if !list.iter().any(|(w, _)| *w == e.omega0) {
                    list.push((e.omega0, p.omega));
                }
            }
        }
    }

    let mut groups: BTreeMap<(u64, u8), Vec<&RunBundle>> = BTreeMap::new();
    for b in bundles {
        groups
            .entry((b.config.trap.omega0.to_bits(), b.config.probe.l))
            .or_default()
            .push(b);
    }
    let mut scaling = Vec::new();
    for ((w, l), runs) in groups {
        if runs.len() < 3 {
            continue;
        }
        for obs in [Observable::Quadrupole, Observable::Dipole] {
            let lists: Vec<_> = runs
                .iter()
                .map(|b| (b.config.probe.e0, b.peaks(obs).clone()))
                .collect();
            scaling.push(ScalingGroup {
                omega0: f64::from_bits(w),
                l,
                observable: obs,
                report: order_scaling(&lists, tol)?,
            });
        }
    }
    Ok(SweepAggregate {
        entries,
        peak_positions,
        entropy,
        scaling,
    })
}
