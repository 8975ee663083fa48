//! Dense complex linear algebra for multipartite operators.
//!
//! Everything here works on small, dense, row-major matrices. Target
//! dimensions are desk scale (total dimension <= 64), so no attempt is
//! made at blocking, sparsity, or parallel kernels.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scale-aware hermiticity tolerance: `|h - h'| <= HERMITICITY_TOL * (1 + max|h|)`.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues above `-PSD_TOL` are treated as non-negative.
pub const PSD_TOL: f64 = 1e-10;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting shape mismatches
    /// and non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidShape {
                reason: format!("{} entries for a {}x{} matrix", data.len(), rows, cols),
            });
        }
        if let Some(z) = data.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidShape {
                reason: format!("non-finite entry {z}"),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Rank-one projector `|x><x|`.
    pub fn outer(x: &[Complex64]) -> Self {
        let n = x.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = x[i] * x[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry deviation from the adjoint, `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Errors with `NotHermitian` unless the scale-aware tolerance holds.
    pub fn ensure_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_deviation();
        if dev <= HERMITICITY_TOL * (1.0 + self.max_abs()) {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation: dev })
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Ordered list of subsystem dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimSignature {
    dims: Vec<usize>,
}

impl DimSignature {
    /// One entry per subsystem. Dimension-1 factors are accepted so a bare
    /// matrix can always be viewed as a single-subsystem signature.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape {
                reason: "signature needs at least one subsystem".into(),
            });
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidShape {
                reason: "zero-dimensional subsystem".into(),
            });
        }
        Ok(Self { dims })
    }

    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems m.
    pub fn subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension d, the product of the per-subsystem dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }
}

impl std::fmt::Display for DimSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues
/// and matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose k-th column is the eigenvector of the k-th eigenvalue.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvectors.rows())
            .map(|i| self.eigenvectors[(i, k)])
            .collect()
    }

    /// Rebuilds `V f(diag) V^dag` for a scalar function of the eigenvalues.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Kronecker product `a (x) b`; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list, left to right.
pub fn kron_all(mats: &[ComplexMatrix]) -> ComplexMatrix {
    assert!(!mats.is_empty(), "kron_all needs at least one factor");
    let mut acc = mats[0].clone();
    for m in &mats[1..] {
        acc = kron(&acc, m);
    }
    acc
}

/// Commutator `ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            actual: b.rows(),
        });
    }
    Ok(a.matmul(b).sub(&b.matmul(a)))
}

/// Frobenius norm `sqrt(Tr[X^dag X])`.
pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Deterministic: identical input bits give identical output.
/// Eigenvectors of degenerate eigenvalues are basis-arbitrary.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<Spectrum> {
    h.ensure_hermitian()?;
    let n = h.rows();
    let mut a = h.clone();
    // Work on an exactly Hermitian copy so roundoff asymmetry cannot drift.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * scale;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[(i, j)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let z = a[(p, q)];
                let r = z.norm();
                if r <= 1e-300 {
                    continue;
                }
                // Phase that makes the pivot real, then a real rotation
                // zeroing it.
                let ph = z.conj() / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let w = (aqq - app) / (2.0 * r);
                let t = if w >= 0.0 {
                    -1.0 / (w + (w * w + 1.0).sqrt())
                } else {
                    1.0 / (-w + (w * w + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let jqp = ph * s;
                let jqq = ph * c;
                // A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * jqp;
                    a[(k, q)] = -akp * s + akq * jqq;
                }
                // A <- J^dag A
                let jqp_c = jqp.conj();
                let jqq_c = jqq.conj();
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * jqp_c;
                    a[(q, k)] = -apk * s + aqk * jqq_c;
                }
                // V <- V J
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * jqp;
                    v[(k, q)] = -vkp * s + vkq * jqq;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Schatten p-norm of a Hermitian matrix, `(sum |lambda_i|^p)^(1/p)`.
/// `p = f64::INFINITY` is the operator norm `max |lambda_i|`.
pub fn schatten_norm(a: &ComplexMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP { p });
    }
    let spectrum = hermitian_eig(a)?;
    let abs: Vec<f64> = spectrum.eigenvalues().iter().map(|l| l.abs()).collect();
    if p.is_infinite() {
        return Ok(abs.into_iter().fold(0.0, f64::max));
    }
    if p == 1.0 {
        return Ok(abs.into_iter().sum());
    }
    if p == 2.0 {
        return Ok(abs.into_iter().map(|x| x * x).sum::<f64>().sqrt());
    }
    // Factor out the largest magnitude to keep powers in range.
    let top = abs.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = abs.iter().map(|x| (x / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

/// Unitary `exp(-i t h)` of a Hermitian generator, via the spectral
/// decomposition.
pub fn expm_hermitian(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eig(h)?;
    Ok(spectrum.apply(|l| Complex64::from_polar(1.0, -t * l)))
}

/// Spectral logarithm of a PSD matrix on its support; eigenvalues in
/// `[-PSD_TOL, 0]` are clipped to zero and map to zero.
pub fn matrix_log_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eig(a)?;
    if spectrum.min_eigenvalue() < -PSD_TOL {
        return Err(Error::NegativeEigenvalue {
            eigenvalue: spectrum.min_eigenvalue(),
        });
    }
    Ok(spectrum.apply(|l| {
        if l > 0.0 {
            Complex64::new(l.ln(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Validates a subsystem index subset: nonempty, in range, no duplicates,
/// and (when `proper` is set) not the full system. Returns it sorted.
pub fn validate_subset(sig: &DimSignature, subset: &[usize], proper: bool) -> Result<Vec<usize>> {
    let m = sig.subsystems();
    if subset.is_empty() {
        return Err(Error::InvalidSubset {
            reason: "empty subset".into(),
        });
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::InvalidSubset {
            reason: "duplicate subsystem index".into(),
        });
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= m) {
        return Err(Error::InvalidSubset {
            reason: format!("index {bad} out of range for {m} subsystems"),
        });
    }
    if proper && sorted.len() == m {
        return Err(Error::InvalidSubset {
            reason: "subset must be proper".into(),
        });
    }
    Ok(sorted)
}

fn check_operator_shape(rho: &ComplexMatrix, sig: &DimSignature) -> Result<()> {
    let d = sig.total_dim();
    if !rho.is_square() || rho.rows() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: rho.rows(),
        });
    }
    Ok(())
}

fn multi_index(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

/// Transpose applied to the tensor factors in `subset`. Pure entry
/// permutation: trace, Hermiticity, and Frobenius norm are preserved.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    sig: &DimSignature,
    subset: &[usize],
) -> Result<ComplexMatrix> {
    check_operator_shape(rho, sig)?;
    let subset = validate_subset(sig, subset, true)?;
    let dims = sig.dims();
    let m = dims.len();
    let d = sig.total_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    let mut mi = vec![0usize; m];
    let mut mj = vec![0usize; m];
    for i in 0..d {
        for j in 0..d {
            multi_index(i, dims, &mut mi);
            multi_index(j, dims, &mut mj);
            for &k in &subset {
                std::mem::swap(&mut mi[k], &mut mj[k]);
            }
            let ip = mi.iter().zip(dims).fold(0, |acc, (&x, &dk)| acc * dk + x);
            let jp = mj.iter().zip(dims).fold(0, |acc, (&x, &dk)| acc * dk + x);
            out[(ip, jp)] = rho[(i, j)];
        }
    }
    Ok(out)
}

/// Reduced operator on the subsystems in `keep` (ascending order), tracing
/// out the rest. Trace is preserved.
pub fn partial_trace(
    rho: &ComplexMatrix,
    sig: &DimSignature,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    check_operator_shape(rho, sig)?;
    let keep = validate_subset(sig, keep, true)?;
    let dims = sig.dims();
    let m = dims.len();
    let d = sig.total_dim();
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let traced: Vec<usize> = (0..m).filter(|k| !keep.contains(k)).collect();
    let mut out = ComplexMatrix::zeros(dk, dk);
    let mut mi = vec![0usize; m];
    let mut mj = vec![0usize; m];
    for i in 0..d {
        multi_index(i, dims, &mut mi);
        'cols: for j in 0..d {
            multi_index(j, dims, &mut mj);
            for &k in &traced {
                if mi[k] != mj[k] {
                    continue 'cols;
                }
            }
            let row = keep
                .iter()
                .fold(0, |acc, &k| acc * dims[k] + mi[k]);
            let col = keep
                .iter()
                .fold(0, |acc, &k| acc * dims[k] + mj[k]);
            out[(row, col)] += rho[(i, j)];
        }
    }
    Ok(out)
}
