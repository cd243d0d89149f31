//! Resolution sweeps and convergence diagnostics: compute the index for a
//! list of grid resolutions and decide whether the series has plateaued.

use rayon::prelude::*;

use crate::burgers::BurgersModel;
use crate::error::{Error, Result};
use crate::observability::{
    direct_index_search, empirical_gramian, unobservability_index, IndexMethod, IndexResult,
    SearchConfig,
};

/// One resolution of a sweep. For the wave sweep the fields are repurposed
/// (see the wave module docs); everywhere else they are what they say.
#[derive(Debug, Clone)]
pub struct StudyRecord {
    pub n: usize,
    pub sigma_min: f64,
    pub epsilon: f64,
    pub index: f64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct StudySeries {
    pub model: String,
    pub method: String,
    pub metadata: Vec<(String, String)>,
    pub records: Vec<StudyRecord>,
    /// Resolutions that failed, with the error message; the sweep continues
    /// past individual failures.
    pub failures: Vec<(usize, String)>,
}

impl StudySeries {
    pub fn new(
        model: String,
        method: String,
        metadata: Vec<(String, String)>,
        records: Vec<StudyRecord>,
        failures: Vec<(usize, String)>,
    ) -> Result<Self> {
        if records.is_empty() {
            let detail = if failures.is_empty() {
                "no resolutions requested".to_string()
            } else {
                failures
                    .iter()
                    .map(|(n, e)| format!("n={n}: {e}"))
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            return Err(Error::SweepFailed(detail));
        }
        if records.windows(2).any(|w| w[1].n <= w[0].n) {
            return Err(Error::InvalidInput("records not sorted by ascending n".into()));
        }
        Ok(StudySeries { model, method, metadata, records, failures })
    }
}

/// Run `compute` for each resolution (in parallel), keeping records in n
/// order regardless of completion order.
pub fn sweep<F>(
    model: String,
    method: String,
    metadata: Vec<(String, String)>,
    n_values: &[usize],
    compute: F,
) -> Result<StudySeries>
where
    F: Fn(usize) -> Result<IndexResult> + Sync,
{
    if n_values.is_empty() {
        return Err(Error::InvalidInput("empty n list".into()));
    }
    if n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("n values must be ascending".into()));
    }
    type Outcome = std::result::Result<(IndexResult, f64), String>;
    let outcomes: Vec<(usize, Outcome)> = n_values
        .par_iter()
        .map(|&n| {
            let started = std::time::Instant::now();
            let out = compute(n)
                .map(|r| (r, started.elapsed().as_secs_f64()))
                .map_err(|e| e.to_string());
            (n, out)
        })
        .collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (n, out) in outcomes {
        match out {
            Ok((r, wall)) => records.push(StudyRecord {
                n,
                sigma_min: r.sigma_min,
                epsilon: r.epsilon,
                index: r.index,
                wall_time_s: wall,
            }),
            Err(e) => failures.push((n, e)),
        }
    }
    StudySeries::new(model, method, metadata, records, failures)
}

/// Burgers index sweep with the given method at each resolution.
pub fn burgers_index_sweep(
    template: &BurgersModel,
    n_values: &[usize],
    rho: f64,
    method: IndexMethod,
    seed: u64,
) -> Result<StudySeries> {
    let compute = |n: usize| -> Result<IndexResult> {
        let model = BurgersModel::new(
            template.length,
            template.horizon,
            template.kappa,
            n,
            template.nt_sensors,
            template.sensor_x.clone(),
            template.kf,
        )
        .map(|mut m| {
            m.dt_scale = template.dt_scale;
            m
        })?;
        let basis = model.estimation_basis()?;
        let u0 = model.nominal_u0();
        match method {
            IndexMethod::Empirical => {
                let pair = empirical_gramian(&model, &u0, &basis, rho)?;
                let mut result = unobservability_index(&pair, &basis)?;
                result.method = IndexMethod::Empirical;
                Ok(result)
            }
            IndexMethod::DirectSearch => {
                let config = SearchConfig { seed, ..SearchConfig::default() };
                direct_index_search(&model, &u0, &basis, rho, &config)
            }
            IndexMethod::Gramian => Err(Error::InvalidInput(
                "the linear-gramian method does not apply to Burgers' equation".into(),
            )),
        }
    };
    let metadata = vec![
        ("length".into(), format!("{:.17e}", template.length)),
        ("horizon".into(), format!("{:.17e}", template.horizon)),
        ("kappa".into(), format!("{:.17e}", template.kappa)),
        ("nt_sensors".into(), template.nt_sensors.to_string()),
        (
            "sensor_x".into(),
            template
                .sensor_x
                .iter()
                .map(|x| format!("{x:.17e}"))
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("kf".into(), template.kf.to_string()),
        ("dt_scale".into(), format!("{:.17e}", template.dt_scale)),
        ("rho".into(), format!("{rho:.17e}")),
        ("seed".into(), seed.to_string()),
    ];
    sweep("burgers".into(), method.to_string(), metadata, n_values, compute)
}

/// Convergence verdict for an index series.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Last index value of the series.
    pub plateau: f64,
    /// Relative change at each step, |x_k - x_{k-1}| / |x_{k-1}|.
    pub changes: Vec<f64>,
    /// True when the final three consecutive relative changes are each
    /// below 1%.
    pub converged: bool,
}

/// Threshold on relative change for declaring a plateau.
pub const CONVERGENCE_TOL: f64 = 0.01;
/// Number of trailing steps that must all sit below the threshold.
pub const CONVERGENCE_RUN: usize = 3;

pub fn convergence_diagnostics(series: &StudySeries) -> Result<ConvergenceReport> {
    let idx: Vec<f64> = series.records.iter().map(|r| r.index).collect();
    if idx.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 records for diagnostics, got {}",
            idx.len()
        )));
    }
    let changes: Vec<f64> =
        idx.windows(2).map(|w| (w[1] - w[0]).abs() / w[0].abs()).collect();
    let run = CONVERGENCE_RUN.min(changes.len());
    let converged = changes[changes.len() - run..]
        .iter()
        .all(|&c| c < CONVERGENCE_TOL);
    Ok(ConvergenceReport { plateau: *idx.last().unwrap(), changes, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_from_indices(values: &[f64]) -> StudySeries {
        let records = values
            .iter()
            .enumerate()
            .map(|(i, &v)| StudyRecord {
                n: 4 * (i + 1),
                sigma_min: 1.0 / (v * v),
                epsilon: 1.0 / v,
                index: v,
                wall_time_s: 0.0,
            })
            .collect();
        StudySeries::new("synthetic".into(), "none".into(), Vec::new(), records, Vec::new())
            .unwrap()
    }

    #[test]
    fn constant_series_converged() {
        let report =
            convergence_diagnostics(&series_from_indices(&[2.0, 2.0, 2.0, 2.0])).unwrap();
        assert!(report.converged);
        assert!(report.changes.iter().all(|&c| c == 0.0));
        assert_eq!(report.plateau, 2.0);
    }

    #[test]
    fn decaying_fixture_converges() {
        let report =
            convergence_diagnostics(&series_from_indices(&[12.5, 12.0, 11.88, 11.84, 11.83]))
                .unwrap();
        assert!(report.converged);
        assert!((report.plateau - 11.83).abs() < 1e-12);
    }

    #[test]
    fn oscillating_series_rejected() {
        let report =
            convergence_diagnostics(&series_from_indices(&[10.0, 11.0, 10.0, 11.0, 10.0]))
                .unwrap();
        assert!(!report.converged);
    }

    #[test]
    fn too_short_series_errors() {
        assert!(convergence_diagnostics(&series_from_indices(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn sweep_records_failures_and_continues() {
        let series = sweep(
            "synthetic".into(),
            "none".into(),
            Vec::new(),
            &[1, 2, 3],
            |n| {
                if n == 2 {
                    Err(Error::InvalidInput("boom".into()))
                } else {
                    Ok(crate::observability::IndexResult {
                        sigma_min: 1.0,
                        epsilon: 1.0,
                        index: 1.0,
                        worst_direction: vec![1.0],
                        method: IndexMethod::Gramian,
                        warnings: Vec::new(),
                    })
                }
            },
        )
        .unwrap();
        assert_eq!(series.records.len(), 2);
        assert_eq!(series.failures.len(), 1);
        assert_eq!(series.failures[0].0, 2);
    }

    #[test]
    fn all_failed_sweep_errors() {
        let out = sweep(
            "synthetic".into(),
            "none".into(),
            Vec::new(),
            &[1, 2],
            |_| -> Result<IndexResult> { Err(Error::InvalidInput("boom".into())) },
        );
        assert!(matches!(out, Err(Error::SweepFailed(_))));
    }

    #[test]
    fn empty_n_list_rejected() {
        let out = sweep("s".into(), "m".into(), Vec::new(), &[], |_| {
            Err(Error::InvalidInput("unreachable".into()))
        });
        assert!(matches!(out, Err(Error::InvalidInput(_))));
    }
}
