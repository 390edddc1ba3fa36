//! Dense complex linear algebra for small matrices.
//!
//! Everything operates on row-major [`ComplexMatrix`] values. The
//! centerpiece is a cyclic Jacobi eigensolver for Hermitian matrices,
//! which the rest of the crate uses for matrix exponentials, Gibbs
//! states, and positivity checks. Dimensions stay small (tensor-product
//! spaces up to a few hundred), so robustness and deterministic output
//! take priority over asymptotic speed.

use num_complex::Complex64;
use thiserror::Error;

/// Frobenius-norm tolerance for accepting a matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Sweep cap for the cyclic Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Off-diagonal convergence target, relative to the Frobenius norm of the input.
pub const JACOBI_TARGET: f64 = 1e-14;
/// Smallest modulus that counts as a significant component when fixing
/// eigenvector phases.
const PHASE_MIN_MODULUS: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
    #[error("entry count {found} does not match {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { defect: f64, tolerance: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
}

/// Dense complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, rejecting shape mismatches
    /// and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().copied().collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        let complex: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&complex)
    }

    /// Column vector with the given amplitudes.
    pub fn column_vector(amplitudes: &[Complex64]) -> Self {
        Self {
            rows: amplitudes.len(),
            cols: 1,
            entries: amplitudes.to_vec(),
        }
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
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Complex64, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self.get(i, j).norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Frobenius norm of `A - A†`; zero for exactly Hermitian matrices.
    pub fn hermitian_defect(&self) -> Result<f64, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(
                "hermitian defect of non-square matrix".into(),
            ));
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - self.get(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    /// `(A + A†) / 2`, with the diagonal forced exactly real.
    pub fn symmetrized(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(
                "symmetrization of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    out.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
                } else {
                    out.set(i, j, (self.get(i, j) + self.get(j, i).conj()) * 0.5);
                }
            }
        }
        Ok(out)
    }

    /// Exact bitwise comparison against the identity, used to skip no-op
    /// basis conjugations.
    pub fn is_identity_exact(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j);
                let want = if i == j { 1.0 } else { 0.0 };
                if z.re != want || z.im != 0.0 {
                    return false;
                }
            }
        }
        true
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Pauli x matrix.
    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("static shape")
    }

    /// Pauli y matrix.
    pub fn pauli_y() -> Self {
        Self::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .expect("static shape")
    }

    /// Pauli z matrix.
    pub fn pauli_z() -> Self {
        Self::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).expect("static shape")
    }

    /// 2x2 Hadamard matrix.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real_rows(&[vec![h, h], vec![h, -h]]).expect("static shape")
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.cols + col]
    }
}

/// Frobenius distance between two same-shaped matrices.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(a.sub(b)?.frobenius_norm())
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues
/// and a unitary matrix whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    hermiticity_defect: f64,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Frobenius norm of `H - H†` measured before the input was
    /// symmetrized for the decomposition.
    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Assemble `V f(Λ) V†` for a scalar function of the eigenvalues.
    pub fn synthesize(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = weights[k];
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * w;
                for j in 0..n {
                    let val = out.get(i, j) + vik * v.get(j, k).conj();
                    out.set(i, j, val);
                }
            }
        }
        out
    }

    /// `V Λ V†`, which should match the (symmetrized) input.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.synthesize(|l| Complex64::new(l, 0.0))
    }
}

/// Diagonalize a Hermitian matrix with cyclic Jacobi rotations.
///
/// The input is accepted if `‖H - H†‖_F ≤ 1e-10`, symmetrized to
/// `(H + H†)/2`, and iterated until the off-diagonal Frobenius norm
/// falls below `1e-14 · ‖H‖_F` (at most 100 sweeps). Eigenvalues come
/// back ascending; within each eigenvector the first component of
/// modulus above 1e-8 is rotated to be real and positive so equal
/// inputs produce bitwise-equal outputs.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::Dimension(format!(
            "eigendecomposition of non-square {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermitian_defect()?;
    if defect > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian {
            defect,
            tolerance: HERMITICITY_TOL,
        });
    }
    let n = h.rows();
    let mut a = h.symmetrized()?;
    let mut q = ComplexMatrix::identity(n);
    let target = JACOBI_TARGET * a.frobenius_norm();

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for col in p + 1..n {
                rotate(&mut a, &mut q, p, col);
            }
        }
        sweeps += 1;
    }
    if !converged && a.off_diagonal_norm() > target {
        return Err(LinalgError::NoConvergence {
            sweeps,
            off_diagonal: a.off_diagonal_norm(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("finite eigenvalues")
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, q.get(row, old_col));
        }
    }
    fix_phases(&mut vectors);

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors,
        hermiticity_defect: defect,
    })
}

/// One Jacobi rotation zeroing the (p, q) entry of the Hermitian
/// working matrix, accumulating the transform into `q_acc`.
fn rotate(a: &mut ComplexMatrix, q_acc: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let absb = apq.norm();
    if absb < 1e-300 {
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // Factor the phase out of a_pq so the 2x2 block becomes real
    // symmetric, then apply the standard stable rotation.
    let phase = apq / absb;
    let tau = (aqq - app) / (2.0 * absb);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // The plane rotation is
    //   V[p][p] = phase*c   V[p][q] = phase*s
    //   V[q][p] = -s        V[q][q] = c
    // and the update is A <- V† A V, Q <- Q V.
    let n = a.rows();
    let vp = phase * c;
    let vq = phase * s;
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * vp - akq * s);
        a.set(k, q, akp * vq + akq * c);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, vp.conj() * apk - aqk * s);
        a.set(q, k, vq.conj() * apk + aqk * c);
    }
    a.set(p, p, Complex64::new(app - t * absb, 0.0));
    a.set(q, q, Complex64::new(aqq + t * absb, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    for k in 0..n {
        let qkp = q_acc.get(k, p);
        let qkq = q_acc.get(k, q);
        q_acc.set(k, p, qkp * vp - qkq * s);
        q_acc.set(k, q, qkp * vq + qkq * c);
    }
}

/// Rotate each column so its first component of modulus above the
/// threshold is real and positive.
fn fix_phases(vectors: &mut ComplexMatrix) {
    let n = vectors.rows();
    for col in 0..n {
        let mut anchor = None;
        for row in 0..n {
            let z = vectors.get(row, col);
            if z.norm() > PHASE_MIN_MODULUS {
                anchor = Some(z);
                break;
            }
        }
        if let Some(z) = anchor {
            let u = (z / z.norm()).conj();
            for row in 0..n {
                let v = vectors.get(row, col) * u;
                vectors.set(row, col, v);
            }
        }
    }
}

/// `exp(s·H)` for Hermitian `H` via eigendecomposition.
///
/// Purely imaginary `s` yields a unitary; negative real `s` yields a
/// Hermitian positive-definite matrix.
pub fn exp_hermitian_scaled(
    h: &ComplexMatrix,
    s: Complex64,
) -> Result<ComplexMatrix, LinalgError> {
    let eig = eig_hermitian(h)?;
    Ok(eig.synthesize(|l| (s * l).exp()))
}

/// Kronecker product with block ordering `A[i,j] · B`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Trace out the environment factor of a matrix on a
/// `dim_system · dim_env` tensor space, returning the
/// `dim_system x dim_system` reduced matrix.
pub fn partial_trace_env(
    m: &ComplexMatrix,
    dim_system: usize,
    dim_env: usize,
) -> Result<ComplexMatrix, LinalgError> {
    let dim = dim_system * dim_env;
    if dim_system == 0 || dim_env == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    if !m.is_square() || m.rows() != dim {
        return Err(LinalgError::Dimension(format!(
            "partial trace expects a {dim}x{dim} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(dim_system, dim_system);
    for i in 0..dim_system {
        for j in 0..dim_system {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim_env {
                acc += m.get(i * dim_env + k, j * dim_env + k);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product `⟨a|b⟩` (conjugate-linear in the first argument).
pub fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Result<Complex64, LinalgError> {
    if a.len() != b.len() {
        return Err(LinalgError::Dimension(format!(
            "inner product of vectors with lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// Kronecker product of two vectors.
pub fn vec_kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Outer product `|a⟩⟨b|`.
pub fn outer_product(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.len(), b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out.set(i, j, x * y.conj());
        }
    }
    out
}

/// Matrix-vector product.
pub fn mat_vec(m: &ComplexMatrix, v: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    if m.cols() != v.len() {
        return Err(LinalgError::Dimension(format!(
            "cannot apply {}x{} matrix to a vector of length {}",
            m.rows(),
            m.cols(),
            v.len()
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); m.rows()];
    for i in 0..m.rows() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m.cols() {
            acc += m.get(i, j) * v[j];
        }
        out[i] = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = frobenius_distance(a, b).unwrap();
        assert!(d <= tol, "matrices differ by {d:.3e} > {tol:.3e}");
    }

    #[test]
    fn pauli_x_squares_to_identity() {
        let sx = ComplexMatrix::pauli_x();
        let prod = sx.matmul(&sx).unwrap();
        assert_close(&prod, &ComplexMatrix::identity(2), 0.0);
    }

    #[test]
    fn pauli_z_is_traceless() {
        let tr = ComplexMatrix::pauli_z().trace().unwrap();
        assert_eq!(tr, c(0.0, 0.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]])
        .unwrap();
        let adj = m.adjoint();
        assert_eq!(adj.get(0, 0), c(0.0, 0.0));
        assert_eq!(adj.get(0, 1), c(0.0, 0.0));
        assert_eq!(adj.get(1, 0), c(0.0, -1.0));
        assert_eq!(adj.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(a.add(&b), Err(LinalgError::Dimension(_))));
        assert!(matches!(a.matmul(&b), Err(LinalgError::Dimension(_))));
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let err = ComplexMatrix::new(1, 2, vec![c(0.0, 0.0), c(f64::NAN, 0.0)]).unwrap_err();
        assert!(matches!(err, LinalgError::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn eig_diagonal_input() {
        let eig = eig_hermitian(&ComplexMatrix::pauli_z()).unwrap();
        assert_eq!(eig.eigenvalues(), &[-1.0, 1.0]);
        // Ascending order puts the |1> eigenvector first.
        let v = eig.eigenvectors();
        assert_eq!(v.get(0, 0), c(0.0, 0.0));
        assert_eq!(v.get(1, 0), c(1.0, 0.0));
        assert_eq!(v.get(0, 1), c(1.0, 0.0));
        assert_eq!(v.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn eig_pauli_x() {
        let eig = eig_hermitian(&ComplexMatrix::pauli_x()).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues()[1] - 1.0).abs() < 1e-14);
        let v = eig.eigenvectors();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // Phase convention makes the first significant component positive.
        assert!((v.get(0, 0).re - h).abs() < 1e-14);
        assert!((v.get(1, 0).re + h).abs() < 1e-14);
        assert!((v.get(0, 1).re - h).abs() < 1e-14);
        assert!((v.get(1, 1).re - h).abs() < 1e-14);
    }

    #[test]
    fn eig_characteristic_polynomial_example() {
        let m = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = eig_hermitian(&m).unwrap();
        assert!((eig.eigenvalues()[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues()[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_hermitian(&m),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_reconstructs_complex_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.5, -0.3), c(0.0, 0.7)],
            vec![c(0.5, 0.3), c(-1.0, 0.0), c(0.2, 0.1)],
            vec![c(0.0, -0.7), c(0.2, -0.1), c(0.4, 0.0)],
        ])
        .unwrap();
        let eig = eig_hermitian(&m).unwrap();
        assert_close(&eig.reconstruct(), &m, 1e-10);
        // Unitarity of the eigenvector matrix.
        let v = eig.eigenvectors();
        let vvdag = v.matmul(&v.adjoint()).unwrap();
        assert_close(&vvdag, &ComplexMatrix::identity(3), 1e-12);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let m = ComplexMatrix::pauli_x();
        let e = exp_hermitian_scaled(&m, c(0.0, 0.0)).unwrap();
        assert_close(&e, &ComplexMatrix::identity(2), 1e-14);
    }

    #[test]
    fn exp_quarter_turn_around_x() {
        let theta = std::f64::consts::FRAC_PI_2;
        let e = exp_hermitian_scaled(&ComplexMatrix::pauli_x(), c(0.0, -theta)).unwrap();
        let expected = ComplexMatrix::pauli_x().scaled(c(0.0, -1.0));
        assert_close(&e, &expected, 1e-14);
    }

    #[test]
    fn exp_diagonal_decay() {
        let m = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        let e = exp_hermitian_scaled(&m, c(-1.0, 0.0)).unwrap();
        assert!((e.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((e.get(1, 1).re - (-1.0f64).exp()).abs() < 1e-15);
        assert!(e.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn tensor_product_block_structure() {
        let m = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::pauli_x());
        assert_eq!(m.rows(), 4);
        assert_eq!(m.get(0, 1), c(1.0, 0.0));
        assert_eq!(m.get(1, 0), c(1.0, 0.0));
        assert_eq!(m.get(2, 3), c(1.0, 0.0));
        assert_eq!(m.get(3, 2), c(1.0, 0.0));
        assert_eq!(m.get(0, 2), c(0.0, 0.0));
    }

    #[test]
    fn tensor_product_of_basis_vectors() {
        let ket0 = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let ket1 = ComplexMatrix::column_vector(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let v = tensor_product(&ket0, &ket1);
        assert_eq!(v.rows(), 4);
        assert_eq!(v.cols(), 1);
        assert_eq!(v.get(0, 0), c(0.0, 0.0));
        assert_eq!(v.get(1, 0), c(1.0, 0.0));
        assert_eq!(v.get(2, 0), c(0.0, 0.0));
        assert_eq!(v.get(3, 0), c(0.0, 0.0));
    }

    #[test]
    fn tensor_product_of_pauli_z_pair() {
        let z = ComplexMatrix::pauli_z();
        let m = tensor_product(&z, &z);
        let expected = ComplexMatrix::real_diagonal(&[1.0, -1.0, -1.0, 1.0]);
        assert_close(&m, &expected, 0.0);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_s =
            ComplexMatrix::from_real_rows(&[vec![0.7, 0.1], vec![0.1, 0.3]]).unwrap();
        let rho_e =
            ComplexMatrix::from_real_rows(&[vec![0.25, 0.0], vec![0.0, 0.75]]).unwrap();
        let joint = tensor_product(&rho_s, &rho_e);
        let reduced = partial_trace_env(&joint, 2, 2).unwrap();
        assert_close(&reduced, &rho_s, 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_projector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        let proj = outer_product(&bell, &bell);
        let reduced = partial_trace_env(&proj, 2, 2).unwrap();
        let expected = ComplexMatrix::identity(2).scaled(c(0.5, 0.0));
        assert_close(&reduced, &expected, 1e-15);
    }

    #[test]
    fn partial_trace_of_basis_projector() {
        let ket00 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let proj = outer_product(&ket00, &ket00);
        let reduced = partial_trace_env(&proj, 2, 2).unwrap();
        let expected =
            ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_close(&reduced, &expected, 0.0);
    }

    #[test]
    fn partial_trace_rejects_bad_dimensions() {
        let m = ComplexMatrix::identity(5);
        assert!(matches!(
            partial_trace_env(&m, 2, 2),
            Err(LinalgError::Dimension(_))
        ));
    }

    #[test]
    fn vec_helpers() {
        let a = [c(1.0, 0.0), c(0.0, 1.0)];
        let b = [c(0.0, 1.0), c(1.0, 0.0)];
        let ip = vec_inner(&a, &b).unwrap();
        // <a|b> = conj(1)*i + conj(i)*1 = i - i = 0
        assert_eq!(ip, c(0.0, 0.0));
        assert!((vec_norm(&a) - 2.0f64.sqrt()).abs() < 1e-15);
        let k = vec_kron(&a, &b);
        assert_eq!(k[0], c(0.0, 1.0));
        assert_eq!(k[3], c(0.0, 1.0));
    }
}
