//! Time integration for semi-discrete systems.
//!
//! Two paths: a fixed-step classical Runge-Kutta integrator for nonlinear
//! right-hand sides, and an exact modal solver for linear constant-coefficient
//! systems whose generator has been diagonalized. Fixed steps are deliberate:
//! runs are short and reproducibility across machines matters more than
//! efficiency.

use crate::error::{Error, Result};
use crate::linalg::{sym_eig, Mat, SymMatrix};

/// A trajectory sampled at a strictly ascending list of times.
#[derive(Debug, Clone)]
pub struct TrajectorySamples {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl TrajectorySamples {
    pub fn new(times: Vec<f64>, states: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidInput(format!(
                "{} times vs {} states",
                times.len(),
                states.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("sample times not strictly ascending".into()));
        }
        if let Some(first) = states.first() {
            if states.iter().any(|s| s.len() != first.len()) {
                return Err(Error::InvalidInput("state dimensions differ across samples".into()));
            }
        }
        Ok(TrajectorySamples { times, states })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Linear constant-coefficient system `du/dt = generator * u + forcing`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub generator: Mat,
    pub forcing: Vec<f64>,
}

impl LinearSystem {
    pub fn new(generator: Mat, forcing: Vec<f64>) -> Result<Self> {
        if generator.rows() != generator.cols() {
            return Err(Error::InvalidInput("generator must be square".into()));
        }
        if forcing.len() != generator.rows() {
            return Err(Error::InvalidInput("forcing dimension mismatch".into()));
        }
        Ok(LinearSystem { generator, forcing })
    }

    pub fn homogeneous(generator: Mat) -> Result<Self> {
        let n = generator.rows();
        LinearSystem::new(generator, vec![0.0; n])
    }

    /// Diagonalize a symmetric generator for use with [`modal_solve`].
    pub fn modal_form(&self) -> Result<ModalForm> {
        let sym = SymMatrix::new(self.generator.clone())?;
        let eig = sym_eig(&sym)?;
        let inv_modes = eig.eigenvectors.transpose(); // orthogonal for symmetric generators
        Ok(ModalForm { eigenvalues: eig.eigenvalues, modes: eig.eigenvectors, inv_modes })
    }
}

/// Pre-diagonalized generator: `u(t) = modes * exp(Lambda t) * inv_modes * u0`.
#[derive(Debug, Clone)]
pub struct ModalForm {
    pub eigenvalues: Vec<f64>,
    pub modes: Mat,
    pub inv_modes: Mat,
}

impl ModalForm {
    /// Diagonal generator: modes are the coordinate directions.
    pub fn diagonal(eigenvalues: Vec<f64>) -> Self {
        let n = eigenvalues.len();
        ModalForm { eigenvalues, modes: Mat::identity(n), inv_modes: Mat::identity(n) }
    }
}

/// Classical 4th-order Runge-Kutta with fixed nominal step `dt`.
///
/// Sub-steps are shortened so every requested sample time is hit exactly;
/// outputs are never interpolated. A non-finite state aborts with a
/// blow-up error carrying the time reached.
pub fn rk4_integrate<F>(
    rhs: F,
    u0: &[f64],
    t0: f64,
    t1: f64,
    dt: f64,
    sample_times: &[f64],
) -> Result<TrajectorySamples>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    if dt <= 0.0 {
        return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
    }
    if t1 < t0 {
        return Err(Error::InvalidInput("t1 < t0".into()));
    }
    let eps = 1e-12 * (t1 - t0).abs().max(1.0);
    if sample_times.iter().any(|&t| t < t0 - eps || t > t1 + eps) {
        return Err(Error::InvalidInput("sample time outside [t0, t1]".into()));
    }
    if sample_times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("sample times not strictly ascending".into()));
    }

    let n = u0.len();
    let mut u = u0.to_vec();
    let mut t = t0;
    let mut states = Vec::with_capacity(sample_times.len());

    let step = |u: &mut Vec<f64>, t: f64, h: f64| -> Result<()> {
        let k1 = rhs(t, u);
        let u2: Vec<f64> = u.iter().zip(&k1).map(|(x, k)| x + 0.5 * h * k).collect();
        let k2 = rhs(t + 0.5 * h, &u2);
        let u3: Vec<f64> = u.iter().zip(&k2).map(|(x, k)| x + 0.5 * h * k).collect();
        let k3 = rhs(t + 0.5 * h, &u3);
        let u4: Vec<f64> = u.iter().zip(&k3).map(|(x, k)| x + h * k).collect();
        let k4 = rhs(t + h, &u4);
        for i in 0..n {
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if u.iter().any(|x| !x.is_finite()) {
            return Err(Error::BlowUp { time: t + h, basis_index: None });
        }
        Ok(())
    };

    for &ts in sample_times {
        if ts - t > eps {
            let span = ts - t;
            let nsub = (span / dt).ceil().max(1.0) as usize;
            let h = span / nsub as f64;
            for k in 0..nsub {
                step(&mut u, t + k as f64 * h, h)?;
            }
            t = ts;
        }
        states.push(u.clone());
    }
    TrajectorySamples::new(sample_times.to_vec(), states)
}

/// Exact solution of the homogeneous linear system at the sample times.
pub fn modal_solve(
    form: &ModalForm,
    u0: &[f64],
    sample_times: &[f64],
) -> Result<TrajectorySamples> {
    let n = form.eigenvalues.len();
    if u0.len() != n || form.modes.rows() != n || form.inv_modes.cols() != n {
        return Err(Error::InvalidInput("modal form / state dimension mismatch".into()));
    }
    let coeffs = form.inv_modes.matvec(u0);
    let mut states = Vec::with_capacity(sample_times.len());
    for &t in sample_times {
        let evolved: Vec<f64> = coeffs
            .iter()
            .zip(&form.eigenvalues)
            .map(|(c, lam)| c * (lam * t).exp())
            .collect();
        states.push(form.modes.matvec(&evolved));
    }
    TrajectorySamples::new(sample_times.to_vec(), states)
}
