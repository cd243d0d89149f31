//! Unobservability-index machinery: gramian assembly from output
//! responses, the empirical gramian for nonlinear systems, the relative
//! eigenproblem, and a derivative-free direct search that evaluates the
//! defining infimum literally.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{gen_sym_eig, gram_schmidt, Mat, SymMatrix};

/// How inner products between output series are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputWeight {
    /// Plain unweighted sum over samples and channels.
    DiscreteSum,
    /// Trapezoid quadrature in time (uniform sampling assumed), summed
    /// over channels; approximates an L2-in-time inner product.
    TrapezoidInTime,
}

/// Sensor readings along a trajectory: one vector of channel values per
/// sample time, together with the weighting that defines the Y norm.
#[derive(Debug, Clone)]
pub struct OutputSeries {
    pub times: Vec<f64>,
    /// `samples[k]` holds all channel values at `times[k]`.
    pub samples: Vec<Vec<f64>>,
    pub weight: OutputWeight,
}

impl OutputSeries {
    pub fn new(times: Vec<f64>, samples: Vec<Vec<f64>>, weight: OutputWeight) -> Result<Self> {
        if times.len() != samples.len() {
            return Err(Error::InvalidInput("output times/samples length mismatch".into()));
        }
        Ok(OutputSeries { times, samples, weight })
    }

    /// Y inner product between two series sampled on the same times.
    pub fn inner(&self, other: &OutputSeries) -> f64 {
        debug_assert_eq!(self.times.len(), other.times.len());
        match self.weight {
            OutputWeight::DiscreteSum => self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>())
                .sum(),
            OutputWeight::TrapezoidInTime => {
                let n = self.times.len();
                let dt = if n > 1 {
                    (self.times[n - 1] - self.times[0]) / (n - 1) as f64
                } else {
                    1.0
                };
                let mut acc = 0.0;
                for (k, (a, b)) in self.samples.iter().zip(&other.samples).enumerate() {
                    let w = if k == 0 || k == n - 1 { 0.5 * dt } else { dt };
                    acc += w * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
                }
                acc
            }
        }
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Element-wise `(self - other) / scale`.
    pub fn scaled_difference(&self, other: &OutputSeries, scale: f64) -> OutputSeries {
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y) / scale).collect())
            .collect();
        OutputSeries { times: self.times.clone(), samples, weight: self.weight }
    }
}

/// A dynamical model observed through sensors. All methods must be pure so
/// gramian columns and search restarts can run concurrently.
pub trait ObservedModel: Sync {
    fn state_dim(&self) -> usize;

    /// Full output response for the trajectory starting at `u0`.
    fn output(&self, u0: &[f64]) -> Result<OutputSeries>;

    /// Output response of the associated homogeneous (zero-forcing) system.
    /// Only meaningful for linear models; nonlinear models must error.
    fn homogeneous_output(&self, u0: &[f64]) -> Result<OutputSeries>;

    fn is_linear(&self) -> bool;
}

/// An orthonormalized basis of the discrete space for estimation, stored as
/// state-space vectors together with their Gram matrix under the state norm.
#[derive(Debug, Clone)]
pub struct EstimationBasis {
    pub vectors: Vec<Vec<f64>>,
    pub s_matrix: SymMatrix,
    pub labels: Vec<String>,
    /// Optional coordinates of each basis vector in an external coefficient
    /// system (used by the Fourier-constrained Burgers basis).
    pub coeff_map: Option<Mat>,
}

impl EstimationBasis {
    pub fn new(
        vectors: Vec<Vec<f64>>,
        s_matrix: SymMatrix,
        labels: Vec<String>,
        coeff_map: Option<Mat>,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidInput("empty estimation basis".into()));
        }
        if s_matrix.dim() != vectors.len() || labels.len() != vectors.len() {
            return Err(Error::InvalidInput("basis size / metric dimension mismatch".into()));
        }
        Ok(EstimationBasis { vectors, s_matrix, labels, coeff_map })
    }

    /// Orthonormalize raw vectors under `inner` and record S = I.
    pub fn orthonormalized<F>(
        raw: &[Vec<f64>],
        inner: F,
        labels: Vec<String>,
    ) -> Result<Self>
    where
        F: Fn(&[f64], &[f64]) -> f64,
    {
        let vectors = gram_schmidt(raw, inner)?;
        let s = SymMatrix::identity(vectors.len())?;
        EstimationBasis::new(vectors, s, labels, None)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Map coefficients over the basis into a state-space vector.
    pub fn combine(&self, coeffs: &[f64]) -> Vec<f64> {
        let dim = self.vectors[0].len();
        let mut out = vec![0.0; dim];
        for (c, e) in coeffs.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(e) {
                *o += c * x;
            }
        }
        out
    }
}

/// The matrices of the relative eigenproblem `G xi = sigma S xi`.
#[derive(Debug, Clone)]
pub struct GramianPair {
    pub g: SymMatrix,
    pub s: SymMatrix,
    pub rho: f64,
    pub basis_labels: Vec<String>,
    pub warnings: Vec<String>,
}

/// Tolerance for clamping slightly negative gramian eigenvalues.
const PSD_CLAMP_TOL: f64 = 1e-10;
/// Below this fraction of sigma_max the subspace counts as practically
/// unobservable and the index is reported as infinite.
const UNOBSERVABLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMethod {
    Gramian,
    Empirical,
    DirectSearch,
}

impl std::fmt::Display for IndexMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexMethod::Gramian => write!(f, "gramian"),
            IndexMethod::Empirical => write!(f, "empirical"),
            IndexMethod::DirectSearch => write!(f, "direct"),
        }
    }
}

/// The unobservability index and its supporting quantities.
#[derive(Debug, Clone)]
pub struct IndexResult {
    pub sigma_min: f64,
    /// Smallest achievable output discrepancy for a perturbation of size rho.
    pub epsilon: f64,
    /// rho / epsilon = 1 / sqrt(sigma_min).
    pub index: f64,
    /// The S-normalized minimizing direction mapped into state space.
    pub worst_direction: Vec<f64>,
    pub method: IndexMethod,
    pub warnings: Vec<String>,
}

/// Gramian of a linear homogeneous model: one homogeneous solve per basis
/// direction, G_ij the Y inner product of the output responses.
pub fn linear_gramian(
    model: &dyn ObservedModel,
    basis: &EstimationBasis,
    rho: f64,
) -> Result<GramianPair> {
    if !model.is_linear() {
        return Err(Error::InvalidInput(
            "linear_gramian requires a linear model; use empirical_gramian".into(),
        ));
    }
    let responses: Vec<OutputSeries> = basis
        .vectors
        .par_iter()
        .map(|e| model.homogeneous_output(e))
        .collect::<Result<_>>()?;
    assemble_pair(&responses, basis, rho)
}

/// Empirical gramian from central differences of +/- rho perturbed
/// trajectories. Exact for linear models, first-order for nonlinear ones.
pub fn empirical_gramian(
    model: &dyn ObservedModel,
    nominal_u0: &[f64],
    basis: &EstimationBasis,
    rho: f64,
) -> Result<GramianPair> {
    if rho <= 0.0 {
        return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
    }
    if nominal_u0.len() != model.state_dim() {
        return Err(Error::InvalidInput("nominal state dimension mismatch".into()));
    }
    let responses: Vec<OutputSeries> = basis
        .vectors
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let plus: Vec<f64> = nominal_u0.iter().zip(e).map(|(u, x)| u + rho * x).collect();
            let minus: Vec<f64> = nominal_u0.iter().zip(e).map(|(u, x)| u - rho * x).collect();
            let tag = |err| match err {
                Error::BlowUp { time, .. } => Error::BlowUp { time, basis_index: Some(i) },
                other => other,
            };
            let yp = model.output(&plus).map_err(tag)?;
            let ym = model.output(&minus).map_err(tag)?;
            Ok(yp.scaled_difference(&ym, 2.0 * rho))
        })
        .collect::<Result<_>>()?;
    assemble_pair(&responses, basis, rho)
}

fn assemble_pair(
    responses: &[OutputSeries],
    basis: &EstimationBasis,
    rho: f64,
) -> Result<GramianPair> {
    let s = responses.len();
    let mut g = Mat::zeros(s, s);
    for i in 0..s {
        for j in i..s {
            let v = responses[i].inner(&responses[j]);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    let g = SymMatrix::new(g)?;
    let mut warnings = Vec::new();
    // PSD sanity: slightly negative eigenvalues are roundoff, worse is a bug.
    let eig = crate::linalg::sym_eig(&g)?;
    let sigma_max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP_TOL * sigma_max.max(1e-300) {
        return Err(Error::Assembly(format!(
            "gramian eigenvalue {min:.3e} is negative beyond roundoff (sigma_max {sigma_max:.3e})"
        )));
    }
    if min < 0.0 {
        warnings.push(format!("clamped negative gramian eigenvalue {min:.3e} to 0"));
    }
    Ok(GramianPair {
        g,
        s: basis.s_matrix.clone(),
        rho,
        basis_labels: basis.labels.clone(),
        warnings,
    })
}

/// Solve the relative eigenproblem and report the index.
///
/// A sigma_min below `1e-14 * sigma_max` is reported as an infinite index
/// with a diagnostic instead of a crash.
pub fn unobservability_index(pair: &GramianPair, basis: &EstimationBasis) -> Result<IndexResult> {
    let eig = gen_sym_eig(&pair.g, &pair.s)?;
    let sigma_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let mut sigma_min = eig.min_eigenvalue();
    let mut warnings = pair.warnings.clone();
    if sigma_min < 0.0 {
        warnings.push(format!("clamped negative relative eigenvalue {sigma_min:.3e} to 0"));
        sigma_min = 0.0;
    }
    let worst_direction = basis.combine(&eig.min_eigenvector());
    if sigma_min <= UNOBSERVABLE_TOL * sigma_max.max(0.0) {
        warnings.push(format!(
            "sigma_min {sigma_min:.3e} <= {UNOBSERVABLE_TOL:.0e} * sigma_max {sigma_max:.3e}: \
             practically unobservable subspace"
        ));
        return Ok(IndexResult {
            sigma_min,
            epsilon: 0.0,
            index: f64::INFINITY,
            worst_direction,
            method: IndexMethod::Gramian,
            warnings,
        });
    }
    Ok(IndexResult {
        sigma_min,
        epsilon: sigma_min.sqrt() * pair.rho,
        index: 1.0 / sigma_min.sqrt(),
        worst_direction,
        method: IndexMethod::Gramian,
        warnings,
    })
}

/// Configuration of the multi-start direct search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Simplex-diameter convergence tolerance.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { restarts: 8, max_iters: 200, tol: 1e-8, seed: 0 }
    }
}

/// Minimize the output discrepancy over the sphere
/// `||u0_hat - u0||_S = rho` in the span of the basis, by multi-start
/// Nelder-Mead on chart coordinates of the sphere.
///
/// The result is a certified upper bound on epsilon; on linear models it
/// coincides with the gramian value.
pub fn direct_index_search(
    model: &dyn ObservedModel,
    nominal_u0: &[f64],
    basis: &EstimationBasis,
    rho: f64,
    config: &SearchConfig,
) -> Result<IndexResult> {
    let s = basis.len();
    if s > 10 {
        return Err(Error::InvalidInput(format!(
            "direct search limited to basis dimension <= 10, got {s}"
        )));
    }
    if rho <= 0.0 {
        return Err(Error::InvalidInput(format!("rho must be positive, got {rho}")));
    }
    let smat = &basis.s_matrix;
    let s_inner = |a: &[f64], b: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..s {
            for j in 0..s {
                acc += a[i] * smat[(i, j)] * b[j];
            }
        }
        acc
    };
    let nominal_output = model.output(nominal_u0)?;
    // epsilon for the sphere point rho * a, with a S-normalized
    let evaluate = |direction: &[f64]| -> Result<f64> {
        let coeffs: Vec<f64> = direction.iter().map(|c| c * rho).collect();
        let perturbation = basis.combine(&coeffs);
        let u0: Vec<f64> =
            nominal_u0.iter().zip(&perturbation).map(|(u, p)| u + p).collect();
        Ok(model.output(&u0)?.scaled_difference(&nominal_output, 1.0).norm())
    };

    if s == 1 {
        // sphere degenerates to two points
        let eps_plus = evaluate(&[1.0])?;
        let eps_minus = evaluate(&[-1.0])?;
        let (eps, dir) = if eps_plus <= eps_minus { (eps_plus, 1.0) } else { (eps_minus, -1.0) };
        return Ok(finish_search(eps, &[dir], basis, rho));
    }

    let mut starts: Vec<Vec<f64>> = Vec::new();
    for i in 0..s {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; s];
            c[i] = sign;
            starts.push(c);
        }
    }
    starts.truncate(config.restarts);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    while starts.len() < config.restarts {
        let c: Vec<f64> = (0..s).map(|_| rng.gen_range(-1.0..1.0f64)).collect();
        if s_inner(&c, &c) > 1e-12 {
            starts.push(c);
        }
    }

    let results: Vec<Result<(f64, Vec<f64>, bool)>> = starts
        .par_iter()
        .map(|start| {
            // normalize the center and complete a tangent frame under S
            let norm = s_inner(start, start).sqrt();
            let center: Vec<f64> = start.iter().map(|x| x / norm).collect();
            let mut frame = vec![center.clone()];
            for i in 0..s {
                let mut c = vec![0.0; s];
                c[i] = 1.0;
                frame.push(c);
            }
            let frame = gram_schmidt(&frame[..], |a: &[f64], b: &[f64]| s_inner(a, b))
                .or_else(|_| {
                    // coordinate direction parallel to the center: drop it
                    let mut alt = vec![center.clone()];
                    for i in (0..s).rev() {
                        let mut c = vec![0.0; s];
                        c[i] = 1.0;
                        alt.push(c);
                    }
                    let mut kept = Vec::new();
                    for v in alt {
                        let mut trial = kept.clone();
                        trial.push(v);
                        if let Ok(b) = gram_schmidt(&trial, |a: &[f64], b: &[f64]| s_inner(a, b)) {
                            kept = trial;
                            if kept.len() == s {
                                return Ok(b);
                            }
                        }
                    }
                    Err(Error::InvalidInput("failed to build tangent frame".into()))
                })?;
            let tangent = &frame[1..];
            // chart: t in R^{s-1} -> S-normalized direction
            let to_direction = |t: &[f64]| -> Vec<f64> {
                let mut d = frame[0].clone();
                for (tj, q) in t.iter().zip(tangent) {
                    for (di, qi) in d.iter_mut().zip(q) {
                        *di += tj * qi;
                    }
                }
                let norm = s_inner(&d, &d).sqrt();
                d.iter().map(|x| x / norm).collect()
            };
            let objective = |t: &[f64]| -> Result<f64> { evaluate(&to_direction(t)) };
            let (t_best, eps, converged) =
                nelder_mead(&objective, s - 1, 0.1, config.max_iters, config.tol)?;
            Ok((eps, to_direction(&t_best), converged))
        })
        .collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut any_converged = false;
    for r in results {
        let (eps, dir, converged) = r?;
        any_converged |= converged;
        if best.as_ref().is_none_or(|(b, _)| eps < *b) {
            best = Some((eps, dir));
        }
    }
    let (eps, dir) = best.expect("at least one restart");
    if !any_converged {
        return Err(Error::SearchFailure { best_epsilon: eps });
    }
    Ok(finish_search(eps, &dir, basis, rho))
}

fn finish_search(
    epsilon: f64,
    direction: &[f64],
    basis: &EstimationBasis,
    rho: f64,
) -> IndexResult {
    let sigma_min = (epsilon / rho).powi(2);
    let index = if epsilon > 0.0 { rho / epsilon } else { f64::INFINITY };
    IndexResult {
        sigma_min,
        epsilon,
        index,
        worst_direction: basis.combine(direction),
        method: IndexMethod::DirectSearch,
        warnings: Vec::new(),
    }
}

/// Plain Nelder-Mead in `dim` dimensions starting from the origin with the
/// given initial simplex edge. Returns (argmin, min, converged).
fn nelder_mead<F>(
    f: &F,
    dim: usize,
    initial_step: f64,
    max_iters: usize,
    tol: f64,
) -> Result<(Vec<f64>, f64, bool)>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(vec![0.0; dim]);
    for i in 0..dim {
        let mut p = vec![0.0; dim];
        p[i] = initial_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect::<Result<_>>()?;

    let diameter = |simplex: &[Vec<f64>]| -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..simplex.len() {
            for j in (i + 1)..simplex.len() {
                let dist: f64 = simplex[i]
                    .iter()
                    .zip(&simplex[j])
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                d = d.max(dist);
            }
        }
        d
    };

    let mut converged = false;
    for _iter in 0..max_iters {
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let simplex_sorted: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let values_sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = simplex_sorted;
        values = values_sorted;

        if diameter(&simplex) < tol {
            converged = true;
            break;
        }

        let worst = simplex.len() - 1;
        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..worst].iter().map(|p| p[k]).sum::<f64>() / worst as f64)
            .collect();
        let point_at = |coeff: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + coeff * (c - w))
                .collect()
        };

        let reflected = point_at(1.0);
        let f_r = f(&reflected)?;
        if f_r < values[0] {
            let expanded = point_at(2.0);
            let f_e = f(&expanded)?;
            if f_e < f_r {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
        } else if f_r < values[worst - 1] {
            simplex[worst] = reflected;
            values[worst] = f_r;
        } else {
            let contracted = if f_r < values[worst] { point_at(0.5) } else { point_at(-0.5) };
            let f_c = f(&contracted)?;
            if f_c < values[worst].min(f_r) {
                simplex[worst] = contracted;
                values[worst] = f_c;
            } else {
                // shrink toward the best vertex
                for i in 1..simplex.len() {
                    simplex[i] = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, p)| b + 0.5 * (p - b))
                        .collect();
                    values[i] = f(&simplex[i])?;
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..values.len() {
        if values[i] < values[best] {
            best = i;
        }
    }
    Ok((simplex[best].clone(), values[best], converged))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_gramian_index() {
        // G = T I with S = I: every direction has epsilon = sqrt(T) rho
        let t = 10.0;
        let pair = GramianPair {
            g: SymMatrix::diagonal(&[t, t]).unwrap(),
            s: SymMatrix::identity(2).unwrap(),
            rho: 1.0,
            basis_labels: vec!["e1".into(), "e2".into()],
            warnings: Vec::new(),
        };
        let basis = EstimationBasis::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            SymMatrix::identity(2).unwrap(),
            vec!["e1".into(), "e2".into()],
            None,
        )
        .unwrap();
        let res = unobservability_index(&pair, &basis).unwrap();
        assert!((res.index - 1.0 / t.sqrt()).abs() < 1e-12);
        assert!((res.index * res.epsilon - pair.rho).abs() < 1e-10 * pair.rho);
    }

    #[test]
    fn diagonal_gramian_picks_weak_direction() {
        let pair = GramianPair {
            g: SymMatrix::diagonal(&[4.0, 0.01]).unwrap(),
            s: SymMatrix::identity(2).unwrap(),
            rho: 1.0,
            basis_labels: vec!["e1".into(), "e2".into()],
            warnings: Vec::new(),
        };
        let basis = EstimationBasis::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            SymMatrix::identity(2).unwrap(),
            vec!["e1".into(), "e2".into()],
            None,
        )
        .unwrap();
        let res = unobservability_index(&pair, &basis).unwrap();
        assert!((res.sigma_min - 0.01).abs() < 1e-12);
        assert!((res.index - 10.0).abs() < 1e-9);
        assert!(res.worst_direction[0].abs() < 1e-10);
        assert!((res.worst_direction[1].abs() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn unobservable_subspace_reports_infinite_index() {
        let pair = GramianPair {
            g: SymMatrix::diagonal(&[1.0, 0.0]).unwrap(),
            s: SymMatrix::identity(2).unwrap(),
            rho: 0.5,
            basis_labels: vec!["e1".into(), "e2".into()],
            warnings: Vec::new(),
        };
        let basis = EstimationBasis::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            SymMatrix::identity(2).unwrap(),
            vec!["e1".into(), "e2".into()],
            None,
        )
        .unwrap();
        let res = unobservability_index(&pair, &basis).unwrap();
        assert!(res.index.is_infinite());
        assert!(!res.warnings.is_empty());
    }

    #[test]
    fn empirical_rejects_zero_rho() {
        struct Dummy;
        impl ObservedModel for Dummy {
            fn state_dim(&self) -> usize {
                1
            }
            fn output(&self, _u0: &[f64]) -> Result<OutputSeries> {
                OutputSeries::new(vec![0.0], vec![vec![0.0]], OutputWeight::DiscreteSum)
            }
            fn homogeneous_output(&self, u0: &[f64]) -> Result<OutputSeries> {
                self.output(u0)
            }
            fn is_linear(&self) -> bool {
                true
            }
        }
        let basis = EstimationBasis::new(
            vec![vec![1.0]],
            SymMatrix::identity(1).unwrap(),
            vec!["e1".into()],
            None,
        )
        .unwrap();
        assert!(empirical_gramian(&Dummy, &[0.0], &basis, 0.0).is_err());
    }

    #[test]
    fn nelder_mead_quadratic_bowl() {
        let f = |t: &[f64]| -> Result<f64> {
            Ok((t[0] - 0.3).powi(2) + 2.0 * (t[1] + 0.1).powi(2))
        };
        let (argmin, min, converged) = nelder_mead(&f, 2, 0.1, 500, 1e-10).unwrap();
        assert!(converged);
        assert!(min < 1e-15);
        assert!((argmin[0] - 0.3).abs() < 1e-6);
        assert!((argmin[1] + 0.1).abs() < 1e-6);
    }
}
