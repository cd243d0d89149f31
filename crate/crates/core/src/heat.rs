//! Heat-equation benchmark on (0, L) with a single point sensor at x0.
//!
//! The sine modes decouple the dynamics into scalar decays
//! `d a_k / dt = -(k pi / L)^2 a_k`, so the observability gramian of the
//! modal coefficients has a closed form. That closed form is the reference
//! against which the generic quadrature / empirical machinery is validated.

use std::f64::consts::PI;

use crate::consistency::{StudyRecord, StudySeries};
use crate::error::{Error, Result};
use crate::linalg::{sym_eig, trapezoid_quadrature, Mat, SymMatrix};
use crate::observability::{ObservedModel, OutputSeries, OutputWeight};
use crate::ode::{modal_solve, ModalForm};

/// Number of quadrature points for the projection / lifting maps.
const PROJECTION_GRID: usize = 4096;

#[derive(Debug, Clone)]
pub struct HeatModel {
    /// Domain length.
    pub length: f64,
    /// Observation horizon.
    pub horizon: f64,
    /// Sensor location in [0, length].
    pub sensor_x: f64,
    /// Number of retained sine modes.
    pub n: usize,
    /// Uniform output sample count on [0, horizon] for the Y norm.
    pub output_samples: usize,
}

impl HeatModel {
    pub fn new(length: f64, horizon: f64, sensor_x: f64, n: usize) -> Result<Self> {
        if ![length, horizon].iter().all(|&v| v > 0.0) {
            return Err(Error::InvalidInput("length and horizon must be positive".into()));
        }
        if !(0.0..=length).contains(&sensor_x) {
            return Err(Error::InvalidInput(format!(
                "sensor_x {sensor_x} outside [0, {length}]"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidInput("need at least one mode".into()));
        }
        Ok(HeatModel { length, horizon, sensor_x, n, output_samples: 4001 })
    }

    /// The standard benchmark configuration: L = 2*pi, T = 10, x0 = 0.5.
    pub fn benchmark(n: usize) -> Result<Self> {
        HeatModel::new(2.0 * PI, 10.0, 0.5, n)
    }

    /// Decay rates lambda_k = (k pi / L)^2 and the sensor row C_k =
    /// sin(k pi x0 / L), k = 1..n.
    pub fn assemble(&self) -> (Vec<f64>, Vec<f64>) {
        let lambdas = (1..=self.n)
            .map(|k| (k as f64 * PI / self.length).powi(2))
            .collect();
        let c_row = (1..=self.n)
            .map(|k| (k as f64 * PI * self.sensor_x / self.length).sin())
            .collect();
        (lambdas, c_row)
    }

    /// G_ij = C_i C_j (1 - e^{-(lambda_i + lambda_j) T}) / (lambda_i +
    /// lambda_j), the gramian integral evaluated analytically.
    pub fn gramian_closed_form(&self) -> SymMatrix {
        let (lambdas, c) = self.assemble();
        let mut g = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let rate = lambdas[i] + lambdas[j];
                g[(i, j)] = c[i] * c[j] * (1.0 - (-rate * self.horizon).exp()) / rate;
            }
        }
        SymMatrix::new(g).expect("square by construction")
    }

    /// Same integral by trapezoid quadrature of the modal responses; exists
    /// to validate the generic path used by models without closed forms.
    pub fn gramian_quadrature(&self, nt: usize) -> Result<SymMatrix> {
        if nt < 2 {
            return Err(Error::InvalidInput("need at least 2 quadrature samples".into()));
        }
        let (lambdas, c) = self.assemble();
        let dt = self.horizon / (nt - 1) as f64;
        let times: Vec<f64> = (0..nt).map(|k| k as f64 * dt).collect();
        // response of mode i through the sensor: C_i e^{-lambda_i t}
        let responses: Vec<Vec<f64>> = (0..self.n)
            .map(|i| times.iter().map(|&t| c[i] * (-lambdas[i] * t).exp()).collect())
            .collect();
        let mut g = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let product: Vec<f64> =
                    responses[i].iter().zip(&responses[j]).map(|(a, b)| a * b).collect();
                let v = trapezoid_quadrature(&product, dt)?;
                g[(i, j)] = v;
                g[(j, i)] = v;
            }
        }
        SymMatrix::new(g)
    }

    /// sigma_min of the closed-form gramian for each n in `n_values`.
    pub fn sigma_min_series(&self, n_values: &[usize]) -> Result<StudySeries> {
        if n_values.is_empty() {
            return Err(Error::InvalidInput("empty n list".into()));
        }
        if n_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("n values must be ascending".into()));
        }
        let mut records = Vec::with_capacity(n_values.len());
        for &n in n_values {
            let started = std::time::Instant::now();
            let model = HeatModel { n, ..self.clone() };
            let eig = sym_eig(&model.gramian_closed_form())?;
            let sigma_min = eig.min_eigenvalue().max(0.0);
            records.push(StudyRecord {
                n,
                sigma_min,
                epsilon: sigma_min.sqrt(),
                index: if sigma_min > 0.0 { 1.0 / sigma_min.sqrt() } else { f64::INFINITY },
                wall_time_s: started.elapsed().as_secs_f64(),
            });
        }
        StudySeries::new("heat".into(), "closed-form".into(), self.metadata(), records, Vec::new())
    }

    fn metadata(&self) -> Vec<(String, String)> {
        vec![
            ("length".into(), format!("{:.17e}", self.length)),
            ("horizon".into(), format!("{:.17e}", self.horizon)),
            ("sensor_x".into(), format!("{:.17e}", self.sensor_x)),
            ("output_samples".into(), self.output_samples.to_string()),
        ]
    }

    /// First-n sine coefficients of a function on [0, L], by composite
    /// trapezoid on a fine uniform grid.
    pub fn project<F: Fn(f64) -> f64>(&self, v: F) -> Vec<f64> {
        let m = PROJECTION_GRID;
        let dx = self.length / m as f64;
        let mut coeffs = vec![0.0; self.n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let freq = (k + 1) as f64 * PI / self.length;
            let samples: Vec<f64> =
                (0..=m).map(|j| v(j as f64 * dx) * (freq * (j as f64 * dx)).sin()).collect();
            *c = 2.0 / self.length
                * trapezoid_quadrature(&samples, dx).expect("grid has > 2 points");
        }
        coeffs
    }

    /// Sine synthesis of modal coefficients, evaluable anywhere on [0, L].
    pub fn lift<'a>(&self, coeffs: &'a [f64]) -> impl Fn(f64) -> f64 + 'a {
        let freq0 = PI / self.length;
        move |x: f64| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * ((k + 1) as f64 * freq0 * x).sin())
                .sum()
        }
    }

    /// L2(0, L) norm of the function with the given sine coefficients.
    pub fn coefficient_l2_norm(&self, coeffs: &[f64]) -> f64 {
        (self.length / 2.0 * coeffs.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    fn output_times(&self) -> Vec<f64> {
        let nt = self.output_samples.max(2);
        let dt = self.horizon / (nt - 1) as f64;
        (0..nt).map(|k| k as f64 * dt).collect()
    }
}

impl ObservedModel for HeatModel {
    fn state_dim(&self) -> usize {
        self.n
    }

    fn output(&self, u0: &[f64]) -> Result<OutputSeries> {
        if u0.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "state dimension {} != {}",
                u0.len(),
                self.n
            )));
        }
        let (lambdas, c) = self.assemble();
        let form = ModalForm::diagonal(lambdas.iter().map(|l| -l).collect());
        let times = self.output_times();
        let traj = modal_solve(&form, u0, &times)?;
        let samples = traj
            .states
            .iter()
            .map(|u| vec![u.iter().zip(&c).map(|(a, ci)| a * ci).sum::<f64>()])
            .collect();
        OutputSeries::new(times, samples, OutputWeight::TrapezoidInTime)
    }

    fn homogeneous_output(&self, u0: &[f64]) -> Result<OutputSeries> {
        self.output(u0)
    }

    fn is_linear(&self) -> bool {
        true
    }
}
