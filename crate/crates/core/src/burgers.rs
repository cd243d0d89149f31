//! Viscous Burgers' equation on (0, L) with homogeneous Dirichlet ends:
//! central-difference semi-discretization, trigonometric-interpolation
//! lifting, discrete Fourier norm, constrained low-frequency estimation
//! subspace, and point sensors evaluated through the interpolant.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, trapezoid_quadrature, Mat, SymMatrix};
use crate::observability::{EstimationBasis, ObservedModel, OutputSeries, OutputWeight};
use crate::ode::{rk4_integrate, TrajectorySamples};

/// Safety factor applied to the explicit stability limits.
const DT_SAFETY: f64 = 0.25;

/// Discrete Fourier coefficients of a grid vector: `a[k]` for
/// cos(2 pi k x / L), k = 0..n/2, and `b[k-1]` for sin(2 pi k x / L),
/// k = 1..n/2-1.
#[derive(Debug, Clone)]
pub struct FourierCoeffs {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct BurgersModel {
    pub length: f64,
    pub horizon: f64,
    pub kappa: f64,
    /// Grid intervals; the state lives on the n-1 interior nodes.
    pub n: usize,
    /// Sensor samples are taken at t_k = k * horizon / nt_sensors.
    pub nt_sensors: usize,
    pub sensor_x: Vec<f64>,
    /// Fourier truncation of the estimation subspace.
    pub kf: usize,
    /// Multiplier on the stability-limited integrator step (1.0 = default;
    /// 0.5 halves dt for the robustness check).
    pub dt_scale: f64,
}

impl BurgersModel {
    pub fn new(
        length: f64,
        horizon: f64,
        kappa: f64,
        n: usize,
        nt_sensors: usize,
        sensor_x: Vec<f64>,
        kf: usize,
    ) -> Result<Self> {
        if ![length, horizon, kappa].iter().all(|&v| v > 0.0) {
            return Err(Error::InvalidInput(
                "length, horizon, and kappa must be positive".into(),
            ));
        }
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("n must be even and >= 4, got {n}")));
        }
        if kf < 1 || 2 * kf + 1 > n - 1 {
            return Err(Error::InvalidInput(format!(
                "need 1 <= kf with 2*kf+1 <= n-1, got kf {kf}, n {n}"
            )));
        }
        if nt_sensors < 1 {
            return Err(Error::InvalidInput("need at least one sensor interval".into()));
        }
        if sensor_x.is_empty() || sensor_x.iter().any(|&x| x <= 0.0 || x >= length) {
            return Err(Error::InvalidInput("sensors must lie strictly inside (0, L)".into()));
        }
        Ok(BurgersModel {
            length,
            horizon,
            kappa,
            n,
            nt_sensors,
            sensor_x,
            kf,
            dt_scale: 1.0,
        })
    }

    /// The standard configuration: L = 2*pi, T = 5, kappa = 0.14, N_t = 20,
    /// sensors at L/4, L/2, 3L/4, K_F = 2.
    pub fn benchmark(n: usize) -> Result<Self> {
        let length = 2.0 * PI;
        BurgersModel::new(
            length,
            5.0,
            0.14,
            n,
            20,
            vec![length / 4.0, length / 2.0, 3.0 * length / 4.0],
            2,
        )
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Interior grid nodes x_j = j * dx, j = 1..n-1.
    pub fn grid(&self) -> Vec<f64> {
        let dx = self.dx();
        (1..self.n).map(|j| j as f64 * dx).collect()
    }

    /// Central-difference right-hand side with u_0 = u_n = 0.
    pub fn rhs(&self, u: &[f64]) -> Vec<f64> {
        let m = self.n - 1;
        debug_assert_eq!(u.len(), m);
        let dx = self.dx();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let left = if i == 0 { 0.0 } else { u[i - 1] };
            let right = if i + 1 == m { 0.0 } else { u[i + 1] };
            out.push(
                -u[i] * (right - left) / (2.0 * dx)
                    + self.kappa * (right + left - 2.0 * u[i]) / (dx * dx),
            );
        }
        out
    }

    /// Point sampling at the interior nodes.
    pub fn project<F: Fn(f64) -> f64>(&self, v: F) -> Vec<f64> {
        self.grid().into_iter().map(v).collect()
    }

    /// The nominal initial state -2 + cos x + sin x + cos 2x + sin 2x
    /// sampled on the grid (frequencies scaled to the domain length).
    pub fn nominal_u0(&self) -> Vec<f64> {
        let w = 2.0 * PI / self.length;
        self.project(|x| -2.0 + (w * x).cos() + (w * x).sin() + (2.0 * w * x).cos() + (2.0 * w * x).sin())
    }

    pub fn fourier_coeffs(&self, v: &[f64]) -> FourierCoeffs {
        let m = self.n - 1;
        debug_assert_eq!(v.len(), m);
        let grid = self.grid();
        let w = 2.0 * PI / self.length;
        let a = (0..=self.n / 2)
            .map(|k| {
                2.0 / self.n as f64
                    * grid.iter().zip(v).map(|(&x, &vj)| vj * (k as f64 * w * x).cos()).sum::<f64>()
            })
            .collect();
        let b = (1..self.n / 2)
            .map(|k| {
                2.0 / self.n as f64
                    * grid.iter().zip(v).map(|(&x, &vj)| vj * (k as f64 * w * x).sin()).sum::<f64>()
            })
            .collect();
        FourierCoeffs { a, b }
    }

    /// Evaluate the trigonometric interpolant of `v` at an arbitrary point.
    pub fn lift_at(&self, coeffs: &FourierCoeffs, x: f64) -> f64 {
        let w = 2.0 * PI / self.length;
        let half = self.n / 2;
        let mut out = coeffs.a[0] / 2.0;
        for k in 1..half {
            let kw = k as f64 * w * x;
            out += coeffs.a[k] * kw.cos() + coeffs.b[k - 1] * kw.sin();
        }
        out + coeffs.a[half] / 2.0 * (half as f64 * w * x).cos()
    }

    /// Discrete-Fourier inner product <u, v>_N.
    pub fn n_inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let cu = self.fourier_coeffs(u);
        let cv = self.fourier_coeffs(v);
        let half = self.n / 2;
        let mut acc = cu.a[0] * cv.a[0] / 2.0 + cu.a[half] * cv.a[half] / 4.0;
        for k in 1..half {
            acc += cu.a[k] * cv.a[k] + cu.b[k - 1] * cv.b[k - 1];
        }
        PI * acc
    }

    pub fn n_norm(&self, v: &[f64]) -> f64 {
        self.n_inner(v, v).sqrt()
    }

    /// Value of the interpolant at x = 0; vanishing is equivalent to the
    /// subspace constraint a_0/2 + sum a_k = 0 for low-frequency vectors.
    pub fn constraint_residual(&self, coeffs: &[f64]) -> f64 {
        // coeffs in (a_0, a_1, b_1, ..., a_kf, b_kf) order
        let mut acc = coeffs[0] / 2.0;
        for k in 1..=self.kf {
            acc += coeffs[2 * k - 1];
        }
        acc
    }

    fn coeff_vector_to_grid(&self, coeffs: &[f64]) -> Vec<f64> {
        let w = 2.0 * PI / self.length;
        self.project(|x| {
            let mut out = coeffs[0] / 2.0;
            for k in 1..=self.kf {
                let kw = k as f64 * w * x;
                out += coeffs[2 * k - 1] * kw.cos() + coeffs[2 * k] * kw.sin();
            }
            out
        })
    }

    /// The estimation subspace: trigonometric polynomials of degree <= kf
    /// whose interpolant vanishes at the boundary, orthonormalized under
    /// <.,.>_N. Dimension 2*kf (one linear constraint on 2*kf+1 raw
    /// coefficients).
    pub fn estimation_basis(&self) -> Result<EstimationBasis> {
        // nullspace directions of a_0/2 + sum a_k = 0: pair each cosine with
        // the compensating constant; sines are unconstrained
        let mut raw_coeffs: Vec<Vec<f64>> = Vec::with_capacity(2 * self.kf);
        for k in 1..=self.kf {
            let mut cosine = vec![0.0; 2 * self.kf + 1];
            cosine[0] = -2.0;
            cosine[2 * k - 1] = 1.0;
            raw_coeffs.push(cosine);
            let mut sine = vec![0.0; 2 * self.kf + 1];
            sine[2 * k] = 1.0;
            raw_coeffs.push(sine);
        }
        // interleave so directions alternate cos, sin, cos, sin by frequency
        let raw: Vec<Vec<f64>> =
            raw_coeffs.iter().map(|c| self.coeff_vector_to_grid(c)).collect();
        let vectors = gram_schmidt(&raw, |u: &[f64], v: &[f64]| self.n_inner(u, v))?;
        let s = vectors.len();
        let mut coeff_map = Mat::zeros(s, 2 * self.kf + 1);
        for (i, v) in vectors.iter().enumerate() {
            let c = self.fourier_coeffs(v);
            coeff_map[(i, 0)] = c.a[0];
            for k in 1..=self.kf {
                coeff_map[(i, 2 * k - 1)] = c.a[k];
                coeff_map[(i, 2 * k)] = c.b[k - 1];
            }
        }
        let labels = (1..=self.kf)
            .flat_map(|k| [format!("w_cos{k}"), format!("w_sin{k}")])
            .collect();
        EstimationBasis::new(vectors, SymMatrix::identity(s)?, labels, Some(coeff_map))
    }

    /// Sensor sample times t_k = k * horizon / nt_sensors, k = 0..nt_sensors.
    pub fn sensor_times(&self) -> Vec<f64> {
        (0..=self.nt_sensors)
            .map(|k| k as f64 * self.horizon / self.nt_sensors as f64)
            .collect()
    }

    /// Stability-limited integrator step for the given initial state.
    pub fn stable_dt(&self, u0: &[f64]) -> f64 {
        let dx = self.dx();
        let umax = u0.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1.0);
        self.dt_scale * DT_SAFETY * (dx * dx / (2.0 * self.kappa)).min(dx / umax)
    }

    /// Sensor readings along a trajectory sampled at the sensor times; each
    /// reading evaluates the trigonometric interpolant at the sensor point.
    pub fn sample_outputs(&self, trajectory: &TrajectorySamples) -> Result<OutputSeries> {
        let expected = self.sensor_times();
        if trajectory.times.len() != expected.len()
            || trajectory
                .times
                .iter()
                .zip(&expected)
                .any(|(a, b)| (a - b).abs() > 1e-9 * self.horizon)
        {
            return Err(Error::InvalidInput(
                "trajectory not sampled at the sensor times".into(),
            ));
        }
        let samples = trajectory
            .states
            .iter()
            .map(|u| {
                let c = self.fourier_coeffs(u);
                self.sensor_x.iter().map(|&x| self.lift_at(&c, x)).collect()
            })
            .collect();
        OutputSeries::new(expected, samples, OutputWeight::DiscreteSum)
    }

    /// L2(0, L) norm of the interpolant by fine trapezoid quadrature; test
    /// oracle for the Parseval identity.
    pub fn interpolant_l2_norm(&self, v: &[f64]) -> f64 {
        let c = self.fourier_coeffs(v);
        let m = 8192;
        let dx = self.length / m as f64;
        let samples: Vec<f64> =
            (0..=m).map(|j| self.lift_at(&c, j as f64 * dx).powi(2)).collect();
        trapezoid_quadrature(&samples, dx).expect("fixed fine grid").sqrt()
    }
}

impl ObservedModel for BurgersModel {
    fn state_dim(&self) -> usize {
        self.n - 1
    }

    fn output(&self, u0: &[f64]) -> Result<OutputSeries> {
        if u0.len() != self.n - 1 {
            return Err(Error::InvalidInput(format!(
                "state dimension {} != {}",
                u0.len(),
                self.n - 1
            )));
        }
        let dt = self.stable_dt(u0);
        let times = self.sensor_times();
        let traj =
            rk4_integrate(|_, u| self.rhs(u), u0, 0.0, self.horizon, dt, &times)?;
        self.sample_outputs(&traj)
    }

    fn homogeneous_output(&self, _u0: &[f64]) -> Result<OutputSeries> {
        Err(Error::InvalidInput(
            "Burgers' equation is nonlinear; use the empirical gramian".into(),
        ))
    }

    fn is_linear(&self) -> bool {
        false
    }
}
