use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twisted_trap::analysis::Window;
use twisted_trap::dynamics::Method;
use twisted_trap::harness::{
    eigen_report, reproduce_fig2, run_pipeline, sweep, RunConfig, SweepPlan,
};
use twisted_trap::model::{build_grid, TrapParams};
use twisted_trap::{Error, Result};

/// Trapped two-particle response to impulse probes of charge l = 0, 1, 2.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Centre-of-mass and internal eigenvalues.
    Eigen {
        #[arg(long, default_value_t = 0.5)]
        omega0: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 29.6)]
        half_width: f64,
        #[arg(long, default_value_t = 297)]
        n_points: usize,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long)]
        no_interaction: bool,
    },
    /// Full pipeline for one configuration.
    Run(Overrides),
    /// Every combination of the listed ω₀, l and E₀.
    Sweep {
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long = "omega0-list", value_delimiter = ',', required = true)]
        omega0_list: Vec<f64>,
        #[arg(long = "l-list", value_delimiter = ',', required = true)]
        l_list: Vec<u8>,
        /// Empty selects 1e-2 for l = 0, 1 and 1e-3 for l = 2.
        #[arg(long = "e0-list", value_delimiter = ',')]
        e0_list: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Internal potential, levels and spacings for each ω₀.
    ReproduceFig2 {
        #[arg(
            long = "omega0-list",
            value_delimiter = ',',
            default_value = "0.5,0.2,0.1"
        )]
        omega0_list: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 40.0)]
        half_width: f64,
        #[arg(long, default_value_t = 801)]
        n_points: usize,
        #[arg(long, default_value = "fig2")]
        out: PathBuf,
    },
    /// The 3 × 3 sweep ω₀ ∈ {0.5, 0.2, 0.1} × l ∈ {0, 1, 2} and its aggregate.
    ReproduceFig3 {
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

/// Configuration file plus per-field overrides.
#[derive(Args)]
struct Overrides {
    /// TOML run configuration; desk-scale defaults when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    l: Option<u8>,
    #[arg(long)]
    e0: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    total_time: Option<f64>,
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    #[arg(long, value_parser = parse_window)]
    window: Option<Window>,
    #[arg(long)]
    no_interaction: bool,
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    match s {
        "split-operator" => Ok(Method::SplitOperator),
        "crank-nicolson" => Ok(Method::CrankNicolson),
        _ => Err(format!("unknown method '{s}'")),
    }
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    match s {
        "hann" => Ok(Window::Hann),
        "exp-damp" => Ok(Window::ExpDamp),
        "blackman-harris" => Ok(Window::BlackmanHarris),
        "none" => Ok(Window::None),
        _ => Err(format!("unknown window '{s}'")),
    }
}

impl Overrides {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::desk(0.5, 1)?,
        };
        if let Some(v) = self.omega0 {
            cfg.trap.omega0 = v;
        }
        if let Some(v) = self.a {
            cfg.trap.softening_a = v;
        }
        if let Some(v) = self.l {
            cfg.probe.l = v;
            if self.e0.is_none() && self.config.is_none() {
                cfg.probe.e0 = twisted_trap::harness::default_e0(v);
            }
        }
        if let Some(v) = self.e0 {
            cfg.probe.e0 = v;
        }
        if let Some(v) = self.dt {
            cfg.propagation.dt = v;
        }
        if let Some(v) = self.total_time {
            cfg.propagation.total_time = v;
        }
        if let Some(v) = self.half_width {
            cfg.grid.half_width = v;
        }
        if let Some(v) = self.n_points {
            cfg.grid.n_points = v;
        }
        if let Some(v) = self.method {
            cfg.propagation.method = v;
        }
        if let Some(v) = self.window {
            cfg.analysis.window = v;
        }
        if self.no_interaction {
            cfg.trap.interaction = false;
        }
        if let Some(v) = &self.output_dir {
            cfg.output_dir = v.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn run_sweep(base: &RunConfig, plan: &SweepPlan) -> Result<()> {
    let (aggregate, _) = sweep(base, plan)?;
    let path = base
        .output_dir
        .join(format!("sweep_{}.json", &base.content_hash()?[..8]));
    write(&path, &aggregate.to_json()?)?;
    for e in &aggregate.entries {
        let status = if e.ok {
            "ok".to_string()
        } else {
            format!("failed: {}", e.error.as_deref().unwrap_or(""))
        };
        println!(
            "omega0={} l={} E0={} {} {}",
            e.omega0,
            e.l,
            e.e0,
            e.run_dir.display(),
            status
        );
    }
    println!("aggregate: {}", path.display());
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Eigen {
            omega0,
            a,
            half_width,
            n_points,
            levels,
            no_interaction,
        } => {
            let params = TrapParams::new(omega0, a)?.with_interaction(!no_interaction);
            let grid = build_grid(half_width, n_points)?;
            let report = eigen_report(&params, &grid, levels)?;
            println!("subsystem,n,energy,parity");
            for (tag, list) in [("cm", &report.cm), ("internal", &report.internal)] {
                for l in list {
                    println!("{tag},{},{},{:?}", l.n, l.energy, l.parity);
                }
            }
        }
        Command::Run(o) => {
            let cfg = o.resolve()?;
            let bundle = run_pipeline(&cfg)?;
            println!("{}", bundle.dir.display());
            for p in &bundle.quadrupole_peaks.peaks {
                let label = p.label.as_ref().map_or("unassigned", |l| l.text.as_str());
                println!("Q peak {:.5} {:.3e} {label}", p.omega, p.relative_height);
            }
        }
        Command::Sweep {
            overrides,
            omega0_list,
            l_list,
            e0_list,
            workers,
        } => {
            let plan = SweepPlan {
                omega0: omega0_list,
                l: l_list,
                e0: e0_list,
                workers,
            };
            run_sweep(&overrides.resolve()?, &plan)?;
        }
        Command::ReproduceFig2 {
            omega0_list,
            a,
            half_width,
            n_points,
            out,
        } => {
            let params = TrapParams::new(omega0_list.first().copied().unwrap_or(0.5), a)?;
            let grid = build_grid(half_width, n_points)?;
            let report = reproduce_fig2(&params, &grid, &omega0_list)?;
            let meta = vec![
                ("a".to_string(), a.to_string()),
                (
                    "grid".to_string(),
                    format!("half_width={half_width} n_points={n_points}"),
                ),
            ];
            write(&out.join("fig2.json"), &report.to_json()?)?;
            write(&out.join("potential.csv"), &report.potential_csv(&meta))?;
            write(&out.join("levels.csv"), &report.levels_csv(&meta))?;
            for p in &report.panels {
                println!(
                    "omega0={} w02={:.5} w24={:.5} w46={:.5} ladder deviation={:.3}",
                    p.omega0,
                    p.even_spacings[0],
                    p.even_spacings[1],
                    p.even_spacings[2],
                    p.equispacing.max_deviation
                );
            }
        }
        Command::ReproduceFig3 { overrides, workers } => {
            let plan = SweepPlan {
                workers,
                ..SweepPlan::figure3()
            };
            run_sweep(&overrides.resolve()?, &plan)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors must not collide with the invariant exit code
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
