//! Run configuration, the end-to-end pipeline, parameter sweeps and
//! figure-data reproduction.

mod config;
mod figures;
mod pipeline;
mod sweep;

pub use config::{default_e0, AnalysisConfig, GridConfig, RunConfig, StationaryFilter};
pub use figures::{
    eigen_report, reproduce_fig2, EigenReport, Fig2Panel, Fig2Report, Level, FIG2_LEVELS,
};
pub use pipeline::{
    load_bundle, run_cached, run_pipeline, transition_tables, GroundStateSummary, InvariantReport,
    RunBundle, RunStatus, RunSummary, ENERGY_TOLERANCE, NORM_TOLERANCE, SYMMETRY_TOLERANCE,
};
pub use sweep::{sweep, PeakSummary, ScalingGroup, SweepAggregate, SweepEntry, SweepPlan};
