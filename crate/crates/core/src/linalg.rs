//! Dense symmetric linear algebra and quadrature primitives.
//!
//! Everything here targets the small dimensions this crate works at
//! (estimation bases with s <= 10, state spaces with a few hundred
//! entries), so the eigensolver is a plain cyclic Jacobi iteration and
//! matrices are stored full.

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Symmetric matrix. Construction averages the input with its transpose,
/// so `entries[i][j] == entries[j][i]` holds exactly afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    mat: Mat,
}

impl SymMatrix {
    pub fn new(mat: Mat) -> Result<Self> {
        if mat.rows() == 0 || mat.rows() != mat.cols() {
            return Err(Error::InvalidInput(format!(
                "symmetric matrix needs a square dimension >= 1, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let n = mat.rows();
        let mut sym = mat;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (sym[(i, j)] + sym[(j, i)]);
                sym[(i, j)] = avg;
                sym[(j, i)] = avg;
            }
        }
        Ok(SymMatrix { mat: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        SymMatrix::new(Mat::from_rows(rows))
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        SymMatrix::new(m)
    }

    pub fn identity(n: usize) -> Result<Self> {
        SymMatrix::new(Mat::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.mat[idx]
    }
}

/// Eigenpairs sorted by ascending eigenvalue. The eigenvector columns are
/// orthonormal in the metric of the problem that produced them.
#[derive(Debug, Clone)]
pub struct EigResult {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Mat,
}

impl EigResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvector(&self) -> Vec<f64> {
        self.eigenvectors.column(0)
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_TOL: f64 = 1e-13;

fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Flip signs so the component of largest magnitude is positive.
fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// All eigenpairs of a symmetric matrix via cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// `1e-13 * ||m||_F`, with a cap of 100 sweeps. Ties between equal
/// eigenvalues keep the Jacobi output order (stable sort).
pub fn sym_eig(m: &SymMatrix) -> Result<EigResult> {
    let n = m.dim();
    let mut a = m.mat().clone();
    let mut v = Mat::identity(n);
    let scale = m.frobenius_norm();
    let tol = JACOBI_TOL * scale.max(f64::MIN_POSITIVE);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= tol / (n as f64) {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                // smaller-root tangent keeps the rotation angle <= pi/4
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = Mat::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_sign(&mut col);
        for i in 0..n {
            eigenvectors[(i, k)] = col[i];
        }
    }
    Ok(EigResult { eigenvalues, eigenvectors })
}

const CHOLESKY_PIVOT_TOL: f64 = 1e-14;

/// Lower-triangular Cholesky factor `L` with `L L^T = s`.
///
/// A pivot at or below `1e-14 * max diag` flags the metric as degenerate.
pub fn cholesky(s: &SymMatrix) -> Result<Mat> {
    let n = s.dim();
    let max_diag = (0..n).map(|i| s[(i, i)]).fold(0.0f64, f64::max);
    let tol = CHOLESKY_PIVOT_TOL * max_diag.max(f64::MIN_POSITIVE);
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = s[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if sum <= tol {
                    return Err(Error::DegenerateMetric { index: i, value: sum });
                }
                l[(i, i)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(l)
}

/// Solve `L x = b` for lower-triangular `L`.
fn forward_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[(i, k)] * x[k];
        }
        x[i] = sum / l[(i, i)];
    }
    x
}

/// Solve `L^T x = b` for lower-triangular `L`.
fn backward_solve_transposed(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = b[i];
        for k in (i + 1)..n {
            sum -= l[(k, i)] * x[k];
        }
        x[i] = sum / l[(i, i)];
    }
    x
}

/// Eigenpairs of the pencil `g xi = sigma s xi` with `s` positive definite.
///
/// Whitened through the Cholesky factor of `s`; the returned eigenvectors
/// satisfy `xi^T S xi = 1`.
pub fn gen_sym_eig(g: &SymMatrix, s: &SymMatrix) -> Result<EigResult> {
    if g.dim() != s.dim() {
        return Err(Error::InvalidInput(format!(
            "pencil dimensions differ: {} vs {}",
            g.dim(),
            s.dim()
        )));
    }
    let n = g.dim();
    let l = cholesky(s)?;
    // B = L^-1 G L^-T, column by column
    let mut b = Mat::zeros(n, n);
    for j in 0..n {
        let col = forward_solve(&l, &g.mat().column(j));
        for i in 0..n {
            b[(i, j)] = col[i];
        }
    }
    let mut b2 = Mat::zeros(n, n);
    for i in 0..n {
        let row = forward_solve(&l, b.row(i));
        for j in 0..n {
            b2[(i, j)] = row[j];
        }
    }
    let eig = sym_eig(&SymMatrix::new(b2)?)?;
    let mut eigenvectors = Mat::zeros(n, n);
    for k in 0..n {
        let mut xi = backward_solve_transposed(&l, &eig.eigenvectors.column(k));
        fix_sign(&mut xi);
        for i in 0..n {
            eigenvectors[(i, k)] = xi[i];
        }
    }
    Ok(EigResult { eigenvalues: eig.eigenvalues, eigenvectors })
}

const GS_DEPENDENCE_TOL: f64 = 1e-10;

/// Stabilized Gram-Schmidt under an arbitrary inner product.
///
/// Vectors are processed in the given order with two re-orthogonalization
/// passes. Each output vector has its largest-magnitude component made
/// positive so results are deterministic.
pub fn gram_schmidt<F>(vectors: &[Vec<f64>], inner: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        let original_norm = inner(v, v).sqrt();
        let mut w = v.clone();
        for _pass in 0..2 {
            for e in &basis {
                let coeff = inner(&w, e);
                for (wi, ei) in w.iter_mut().zip(e) {
                    *wi -= coeff * ei;
                }
            }
        }
        let norm = inner(&w, &w).sqrt();
        if norm < GS_DEPENDENCE_TOL * original_norm || norm == 0.0 {
            return Err(Error::LinearDependence { index: idx });
        }
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        fix_sign(&mut w);
        basis.push(w);
    }
    Ok(basis)
}

/// Composite trapezoid rule over uniformly spaced samples.
pub fn trapezoid_quadrature(samples: &[f64], dt: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "trapezoid quadrature needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    if dt <= 0.0 {
        return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
    }
    let interior: f64 = samples[1..samples.len() - 1].iter().sum();
    Ok(dt * (0.5 * (samples[0] + samples[samples.len() - 1]) + interior))
}

/// Trapezoid weights for `n` uniform samples spanning a step `dt`.
pub fn trapezoid_weights(n: usize, dt: f64) -> Vec<f64> {
    let mut w = vec![dt; n];
    if n >= 2 {
        w[0] = 0.5 * dt;
        w[n - 1] = 0.5 * dt;
    }
    w
}
