//! Finite-difference wave equation on (0, L) with fixed ends: the standard
//! counterexample where discretization destroys boundary observability.
//!
//! The semi-discrete system is solved exactly through its eigenmodes, so the
//! discrete energy is conserved to machine precision and the blow-up of
//! E_h(0) / boundary-energy as the grid refines is purely a spatial effect,
//! uncontaminated by integrator dissipation.
//!
//! In the sweep records the fields are reused as: `sigma_min` = E_h(0),
//! `epsilon` = boundary energy, `index` = their ratio.

use std::f64::consts::PI;

use crate::consistency::{StudyRecord, StudySeries};
use crate::error::{Error, Result};
use crate::linalg::{trapezoid_quadrature, Mat};
use crate::ode::TrajectorySamples;

/// Quadrature samples per grid point for the boundary-energy integral: the
/// fastest mode has period >= 2h, so 64n points give >= 32 per period.
const QUAD_SAMPLES_PER_POINT: usize = 64;

#[derive(Debug, Clone)]
pub struct WaveModel {
    pub length: f64,
    /// Observation horizon; must exceed 2 * length (wave travel time).
    pub horizon: f64,
    /// Interior grid points; h = length / (n + 1).
    pub n: usize,
    /// Eigenmode index used as initial position data in the sweep.
    pub initial_mode: usize,
}

impl WaveModel {
    pub fn new(length: f64, horizon: f64, n: usize, initial_mode: usize) -> Result<Self> {
        if length.is_nan() || length <= 0.0 {
            return Err(Error::InvalidInput("length must be positive".into()));
        }
        if horizon <= 2.0 * length {
            return Err(Error::InvalidInput(format!(
                "horizon {horizon} must exceed 2 * length = {}",
                2.0 * length
            )));
        }
        if n < 1 || initial_mode < 1 || initial_mode > n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= initial_mode <= n, got mode {initial_mode}, n {n}"
            )));
        }
        Ok(WaveModel { length, horizon, n, initial_mode })
    }

    /// The standard configuration: unit interval, horizon 4.
    pub fn benchmark(n: usize, initial_mode: usize) -> Result<Self> {
        WaveModel::new(1.0, 4.0, n, initial_mode)
    }

    pub fn h(&self) -> f64 {
        self.length / (self.n + 1) as f64
    }

    /// Frequencies omega_k = (2/h) sin(k pi h / (2L)) ascending, and mode
    /// shapes sin(k pi x_j / L) as matrix columns.
    pub fn discrete_modes(&self) -> (Vec<f64>, Mat) {
        let h = self.h();
        let n = self.n;
        let freqs: Vec<f64> = (1..=n)
            .map(|k| 2.0 / h * (k as f64 * PI * h / (2.0 * self.length)).sin())
            .collect();
        let mut shapes = Mat::zeros(n, n);
        for j in 0..n {
            let x = (j + 1) as f64 * h;
            for k in 0..n {
                shapes[(j, k)] = ((k + 1) as f64 * PI * x / self.length).sin();
            }
        }
        (freqs, shapes)
    }

    /// Position samples of the k-th discrete eigenmode (1-based), normalized
    /// to unit h-weighted norm.
    pub fn mode_shape(&self, k: usize) -> Vec<f64> {
        let h = self.h();
        let scale = (2.0 / self.length).sqrt(); // h * sum sin^2 = L/2
        (1..=self.n)
            .map(|j| scale * (k as f64 * PI * (j as f64 * h) / self.length).sin())
            .collect()
    }

    /// Exact modal solution; each returned state is positions followed by
    /// velocities (length 2n).
    pub fn solve_wave(
        &self,
        u0: &[f64],
        v0: &[f64],
        sample_times: &[f64],
    ) -> Result<TrajectorySamples> {
        let n = self.n;
        if u0.len() != n || v0.len() != n {
            return Err(Error::InvalidInput(format!(
                "initial data dimension {} / {} != {n}",
                u0.len(),
                v0.len()
            )));
        }
        let (freqs, shapes) = self.discrete_modes();
        let h = self.h();
        // modal coefficients under the h-weighted inner product;
        // h * sum_j shape_k(j)^2 = L/2
        let norm2 = self.length / (2.0 * h);
        let project = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|k| (0..n).map(|j| shapes[(j, k)] * v[j]).sum::<f64>() / norm2)
                .collect()
        };
        let a = project(u0); // position coefficients
        let b = project(v0); // velocity coefficients
        let mut states = Vec::with_capacity(sample_times.len());
        for &t in sample_times {
            let mut state = vec![0.0; 2 * n];
            for k in 0..n {
                let (s, c) = (freqs[k] * t).sin_cos();
                let pos_k = a[k] * c + b[k] * s / freqs[k];
                let vel_k = -a[k] * freqs[k] * s + b[k] * c;
                for j in 0..n {
                    state[j] += pos_k * shapes[(j, k)];
                    state[n + j] += vel_k * shapes[(j, k)];
                }
            }
            states.push(state);
        }
        TrajectorySamples::new(sample_times.to_vec(), states)
    }

    /// Discrete energy (h/2) sum_j (|u'_j|^2 + |(u_{j+1} - u_j)/h|^2) with
    /// u_0 = u_{n+1} = 0.
    pub fn total_energy(&self, positions: &[f64], velocities: &[f64]) -> f64 {
        let h = self.h();
        let n = self.n;
        let mut acc = 0.0;
        for v in velocities {
            acc += v * v;
        }
        for j in 0..=n {
            let left = if j == 0 { 0.0 } else { positions[j - 1] };
            let right = if j == n { 0.0 } else { positions[j] };
            acc += ((right - left) / h).powi(2);
        }
        h / 2.0 * acc
    }

    /// Trapezoid quadrature of |u_n(t)/h|^2 over the horizon, the discrete
    /// stand-in for the continuum boundary observation.
    pub fn boundary_energy(&self, trajectory: &TrajectorySamples) -> Result<f64> {
        if trajectory.len() < 2 {
            return Err(Error::InvalidInput("need at least 2 trajectory samples".into()));
        }
        let h = self.h();
        let dt = (trajectory.times[trajectory.len() - 1] - trajectory.times[0])
            / (trajectory.len() - 1) as f64;
        let samples: Vec<f64> = trajectory
            .states
            .iter()
            .map(|s| (s[self.n - 1] / h).powi(2))
            .collect();
        trapezoid_quadrature(&samples, dt)
    }

    fn quad_times(&self) -> Vec<f64> {
        let nt = QUAD_SAMPLES_PER_POINT * self.n;
        let dt = self.horizon / nt as f64;
        (0..=nt).map(|k| k as f64 * dt).collect()
    }

    /// Ratio E_h(0) / boundary-energy for the configured initial mode.
    pub fn observability_ratio(&self) -> Result<(f64, f64, f64)> {
        let u0 = self.mode_shape(self.initial_mode);
        let v0 = vec![0.0; self.n];
        let e0 = self.total_energy(&u0, &v0);
        let traj = self.solve_wave(&u0, &v0, &self.quad_times())?;
        let be = self.boundary_energy(&traj)?;
        if be <= 0.0 {
            return Err(Error::InvalidInput("boundary energy vanished".into()));
        }
        Ok((e0, be, e0 / be))
    }

    /// Sweep over grid resolutions. When `fixed_mode` is false, the initial
    /// data is the highest mode k = n at each resolution (the blow-up demo);
    /// otherwise `initial_mode` is held fixed (the bounded control case).
    pub fn observability_ratio_sweep(
        &self,
        n_values: &[usize],
        fixed_mode: bool,
    ) -> Result<StudySeries> {
        if n_values.is_empty() {
            return Err(Error::InvalidInput("empty n list".into()));
        }
        if n_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("n values must be ascending".into()));
        }
        let mut records = Vec::with_capacity(n_values.len());
        let mut failures = Vec::new();
        for &n in n_values {
            let started = std::time::Instant::now();
            let mode = if fixed_mode { self.initial_mode } else { n };
            let run = WaveModel::new(self.length, self.horizon, n, mode)
                .and_then(|m| m.observability_ratio());
            match run {
                Ok((e0, be, ratio)) => records.push(StudyRecord {
                    n,
                    sigma_min: e0,
                    epsilon: be,
                    index: ratio,
                    wall_time_s: started.elapsed().as_secs_f64(),
                }),
                Err(e) => failures.push((n, e.to_string())),
            }
        }
        let mode_desc = if fixed_mode {
            format!("fixed:{}", self.initial_mode)
        } else {
            "highest".to_string()
        };
        StudySeries::new(
            "wave".into(),
            "modal".into(),
            vec![
                ("length".into(), format!("{:.17e}", self.length)),
                ("horizon".into(), format!("{:.17e}", self.horizon)),
                ("initial_mode".into(), mode_desc),
            ],
            records,
            failures,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_point_frequency() {
        let m = WaveModel::benchmark(1, 1).unwrap();
        let h = m.h();
        let (freqs, _) = m.discrete_modes();
        let lambda = freqs[0] * freqs[0];
        let expected = 2.0 / (h * h) * (1.0 - (PI * h / m.length).cos());
        assert!((lambda - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn shapes_orthogonal_under_h_weight() {
        let m = WaveModel::benchmark(12, 1).unwrap();
        let h = m.h();
        let (_, shapes) = m.discrete_modes();
        for k in 0..12 {
            for l in 0..12 {
                let dot: f64 = (0..12).map(|j| shapes[(j, k)] * shapes[(j, l)]).sum();
                let expected = if k == l { m.length / 2.0 } else { 0.0 };
                assert!((h * dot - expected).abs() < 1e-12, "modes {k},{l}");
            }
        }
    }

    #[test]
    fn discrete_frequencies_undershoot_continuum() {
        let m = WaveModel::benchmark(30, 1).unwrap();
        let (freqs, _) = m.discrete_modes();
        for (k, w) in freqs.iter().enumerate() {
            assert!(*w < (k + 1) as f64 * PI / m.length);
        }
    }

    #[test]
    fn frequency_convergence_second_order() {
        let target = PI; // continuum omega_1 on the unit interval
        let err = |n: usize| {
            let (freqs, _) = WaveModel::benchmark(n, 1).unwrap().discrete_modes();
            (freqs[0] - target).abs()
        };
        let slope = (err(160) / err(20)).ln() / (20.0f64 / 160.0).recip().ln();
        assert!((slope + 2.0).abs() < 0.3, "slope {slope}");
    }

    #[test]
    fn zero_data_stays_zero() {
        let m = WaveModel::benchmark(5, 1).unwrap();
        let traj = m.solve_wave(&[0.0; 5], &[0.0; 5], &[0.0, 1.0, 3.0]).unwrap();
        for s in &traj.states {
            assert!(s.iter().all(|x| x.abs() < 1e-15));
        }
    }

    #[test]
    fn single_mode_is_harmonic() {
        let m = WaveModel::benchmark(8, 3).unwrap();
        let u0 = m.mode_shape(3);
        let v0 = vec![0.0; 8];
        let (freqs, _) = m.discrete_modes();
        let t = 0.7;
        let traj = m.solve_wave(&u0, &v0, &[t]).unwrap();
        let factor = (freqs[2] * t).cos();
        for (j, x) in traj.states[0][..8].iter().enumerate() {
            assert!((x - factor * u0[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn energy_conserved_random_data() {
        let m = WaveModel::benchmark(50, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u0: Vec<f64> = (0..50).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v0: Vec<f64> = (0..50).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let e0 = m.total_energy(&u0, &v0);
        let times: Vec<f64> = (1..=1000).map(|k| k as f64 * m.horizon / 1000.0).collect();
        let traj = m.solve_wave(&u0, &v0, &times).unwrap();
        for s in &traj.states {
            let e = m.total_energy(&s[..50], &s[50..]);
            assert!((e - e0).abs() <= 1e-12 * e0, "energy drift {:.3e}", (e - e0) / e0);
        }
    }

    #[test]
    fn pure_velocity_energy() {
        let m = WaveModel::benchmark(10, 1).unwrap();
        let e = m.total_energy(&[0.0; 10], &[1.0; 10]);
        assert!((e - m.h() / 2.0 * 10.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_energy_quadrature_converged() {
        let m = WaveModel::benchmark(10, 1).unwrap();
        let u0 = m.mode_shape(1);
        let v0 = vec![0.0; 10];
        let be_at = |nt: usize| {
            let dt = m.horizon / nt as f64;
            let times: Vec<f64> = (0..=nt).map(|k| k as f64 * dt).collect();
            m.boundary_energy(&m.solve_wave(&u0, &v0, &times).unwrap()).unwrap()
        };
        let coarse = be_at(64 * 10);
        let fine = be_at(128 * 10);
        assert!((fine - coarse).abs() <= 1e-4 * fine.abs());
    }

    #[test]
    fn low_mode_ratio_is_order_one() {
        let m = WaveModel::benchmark(40, 1).unwrap();
        let (_, _, ratio) = m.observability_ratio().unwrap();
        assert!(ratio > 0.01 && ratio < 10.0, "ratio {ratio}");
    }

    #[test]
    fn highest_mode_ratio_blows_up() {
        let template = WaveModel::benchmark(10, 1).unwrap();
        let series = template
            .observability_ratio_sweep(&[10, 20, 40, 80], false)
            .unwrap();
        let ratios: Vec<f64> = series.records.iter().map(|r| r.index).collect();
        assert_eq!(ratios.len(), 4);
        for w in ratios.windows(2) {
            assert!(w[1] > 1.5 * w[0], "growth too slow: {ratios:?}");
        }
    }

    #[test]
    fn fixed_low_mode_ratio_bounded() {
        let template = WaveModel::benchmark(10, 1).unwrap();
        let series = template
            .observability_ratio_sweep(&[10, 20, 40, 80], true)
            .unwrap();
        let ratios: Vec<f64> = series.records.iter().map(|r| r.index).collect();
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - min) / min < 0.1, "control varied too much: {ratios:?}");
    }
}
