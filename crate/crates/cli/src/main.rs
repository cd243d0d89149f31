//! `unobs` — runs the three observability experiments and emits plot-ready
//! CSV plus a JSON manifest that can reproduce the run byte-for-byte.

mod config;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{read_config_file, BurgersConfig, ConfigError, HeatConfig, KeyValueConfig, WaveConfig};
use report::{print_summary, Manifest};
use unobs_core::{
    burgers_index_sweep, convergence_diagnostics, BurgersModel, HeatModel, StudySeries,
    WaveModel,
};

#[derive(Parser)]
#[command(name = "unobs", version, about = "Unobservability indices for PDE semi-discretizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key = value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_manifest: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the per-resolution sweep (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form heat gramian: sigma_min decay as modes are added.
    HeatGramian {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated mode counts.
        #[arg(long)]
        n_list: Option<String>,
        /// Shorthand for --n-list 1,2,...,N.
        #[arg(long, conflicts_with = "n_list")]
        n_max: Option<usize>,
        #[arg(long)]
        sensor_x: Option<f64>,
    },
    /// Wave energy / boundary-energy ratio under grid refinement.
    WaveRatio {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        n_list: Option<String>,
        /// 'highest' (default) or a fixed mode index.
        #[arg(long)]
        initial_mode: Option<String>,
    },
    /// Burgers empirical-gramian (or direct-search) index sweep.
    BurgersIndex {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        n_list: Option<String>,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        kf: Option<usize>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Comma-separated sensor locations.
        #[arg(long)]
        sensor_x: Option<String>,
        /// 'empirical' or 'direct'.
        #[arg(long)]
        method: Option<String>,
    },
}

enum RunError {
    Config(String),
    Numerical(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e.to_string())
    }
}

impl From<unobs_core::Error> for RunError {
    fn from(e: unobs_core::Error) -> Self {
        match e {
            unobs_core::Error::InvalidInput(_) => RunError::Config(e.to_string()),
            other => RunError::Numerical(other.to_string()),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(cli.command));
}

fn run(command: Command) -> i32 {
    let result = match command {
        Command::HeatGramian { common, n_list, n_max, sensor_x } => {
            run_heat(common, n_list, n_max, sensor_x)
        }
        Command::WaveRatio { common, n_list, initial_mode } => {
            run_wave(common, n_list, initial_mode)
        }
        Command::BurgersIndex { common, n_list, rho, kf, kappa, sensor_x, method } => {
            run_burgers(common, n_list, rho, kf, kappa, sensor_x, method)
        }
    };
    match result {
        Ok(()) => 0,
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(RunError::Numerical(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn init_threads(common: &CommonArgs) {
    if let Some(k) = common.threads {
        // ignore the error if a pool already exists (e.g. repeated init)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}

fn load_file_pairs(common: &CommonArgs) -> Result<Vec<(String, String)>, ConfigError> {
    match &common.config {
        Some(path) => read_config_file(path),
        None => Ok(Vec::new()),
    }
}

/// Write outputs + summary; on a failed run still write the manifest with
/// the error recorded.
fn finish(
    common: &CommonArgs,
    mut manifest: Manifest,
    outcome: Result<(StudySeries, Vec<String>), RunError>,
    started: std::time::Instant,
) -> Result<(), RunError> {
    manifest.total_wall_time_s = started.elapsed().as_secs_f64();
    match outcome {
        Ok((series, warnings)) => {
            manifest.record_series(&series);
            manifest.warnings = warnings.clone();
            if let Some(path) = &common.out_csv {
                report::write_csv(path, &series)
                    .map_err(|e| RunError::Numerical(format!("writing CSV: {e}")))?;
            }
            if let Some(path) = &common.out_manifest {
                manifest
                    .write(path)
                    .map_err(|e| RunError::Numerical(format!("writing manifest: {e}")))?;
            }
            print_summary(&series, &warnings);
            Ok(())
        }
        Err(e) => {
            manifest.error = Some(match &e {
                RunError::Config(m) | RunError::Numerical(m) => m.clone(),
            });
            if let Some(path) = &common.out_manifest {
                let _ = manifest.write(path);
            }
            Err(e)
        }
    }
}

fn run_heat(
    common: CommonArgs,
    n_list: Option<String>,
    n_max: Option<usize>,
    sensor_x: Option<f64>,
) -> Result<(), RunError> {
    let started = std::time::Instant::now();
    let mut cfg = HeatConfig::default();
    cfg.apply_all(&load_file_pairs(&common)?)?;
    if let Some(list) = n_list {
        cfg.apply("n_list", &list)?;
    }
    if let Some(n) = n_max {
        let list: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        cfg.apply("n_list", &list.join(","))?;
    }
    if let Some(x) = sensor_x {
        cfg.apply("sensor_x", &x.to_string())?;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    init_threads(&common);
    let manifest = Manifest::new("heat-gramian", cfg.to_map());
    let outcome = (|| -> unobs_core::Result<(StudySeries, Vec<String>)> {
        let mut model = HeatModel::new(cfg.length, cfg.horizon, cfg.sensor_x, 1)?;
        model.output_samples = cfg.output_samples;
        let series = model.sigma_min_series(&cfg.n_list)?;
        let mut warnings = vec![
            "the analytic closed form is treated as ground truth; some reported \
             sigma_min values for this benchmark are larger by a factor of 10"
                .to_string(),
        ];
        for r in &series.records {
            if !r.sigma_min.is_finite() {
                warnings.push(format!("non-finite sigma_min at n={}", r.n));
            }
        }
        Ok((series, warnings))
    })()
    .map_err(RunError::from);
    finish(&common, manifest, outcome, started)
}

fn run_wave(
    common: CommonArgs,
    n_list: Option<String>,
    initial_mode: Option<String>,
) -> Result<(), RunError> {
    let started = std::time::Instant::now();
    let mut cfg = WaveConfig::default();
    cfg.apply_all(&load_file_pairs(&common)?)?;
    if let Some(list) = n_list {
        cfg.apply("n_list", &list)?;
    }
    if let Some(mode) = initial_mode {
        cfg.apply("initial_mode", &mode)?;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    init_threads(&common);
    let manifest = Manifest::new("wave-ratio", cfg.to_map());
    let outcome = (|| -> unobs_core::Result<(StudySeries, Vec<String>)> {
        if cfg.n_list.is_empty() {
            return Err(unobs_core::Error::InvalidInput("empty n list".into()));
        }
        let fixed = cfg.initial_mode.is_some();
        let template =
            WaveModel::new(cfg.length, cfg.horizon, cfg.n_list[0], cfg.initial_mode.unwrap_or(1))?;
        let series = template.observability_ratio_sweep(&cfg.n_list, fixed)?;
        Ok((series, Vec::new()))
    })()
    .map_err(RunError::from);
    finish(&common, manifest, outcome, started)
}

fn run_burgers(
    common: CommonArgs,
    n_list: Option<String>,
    rho: Option<f64>,
    kf: Option<usize>,
    kappa: Option<f64>,
    sensor_x: Option<String>,
    method: Option<String>,
) -> Result<(), RunError> {
    let started = std::time::Instant::now();
    let mut cfg = BurgersConfig::default();
    cfg.apply_all(&load_file_pairs(&common)?)?;
    if let Some(list) = n_list {
        cfg.apply("n_list", &list)?;
    }
    if let Some(r) = rho {
        cfg.apply("rho", &format!("{r:.17e}"))?;
    }
    if let Some(k) = kf {
        cfg.apply("kf", &k.to_string())?;
    }
    if let Some(k) = kappa {
        cfg.apply("kappa", &format!("{k:.17e}"))?;
    }
    if let Some(xs) = sensor_x {
        cfg.apply("sensor_x", &xs)?;
    }
    if let Some(m) = method {
        cfg.apply("method", &m)?;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    init_threads(&common);
    let manifest = Manifest::new("burgers-index", cfg.to_map());
    let outcome = (|| -> unobs_core::Result<(StudySeries, Vec<String>)> {
        if cfg.n_list.is_empty() {
            return Err(unobs_core::Error::InvalidInput("empty n list".into()));
        }
        let mut template = BurgersModel::new(
            cfg.length,
            cfg.horizon,
            cfg.kappa,
            cfg.n_list[0],
            cfg.nt_sensors,
            cfg.sensor_x.clone(),
            cfg.kf,
        )?;
        template.dt_scale = cfg.dt_scale;
        let series =
            burgers_index_sweep(&template, &cfg.n_list, cfg.rho, cfg.method, cfg.seed)?;
        let mut warnings = Vec::new();
        if series.records.len() >= 3 {
            let report = convergence_diagnostics(&series)?;
            warnings.push(format!(
                "plateau index {:.6}, converged: {}",
                report.plateau, report.converged
            ));
        }
        Ok((series, warnings))
    })()
    .map_err(RunError::from);
    finish(&common, manifest, outcome, started)
}
