//! Density matrices, basis changes, dephasing, and measurement statistics.
//!
//! A [`DensityMatrix`] is validated on construction: Hermitian, unit
//! trace, positive semidefinite within fixed tolerances. Dephasing is
//! always taken relative to an explicit unitary [`BasisChange`]; no
//! basis is ever inferred from the matrix itself. The
//! [`dephasing_commutator_defect`] measures how far dephasing in one
//! basis is from dephasing in another.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError};

/// Tolerance on `|trace - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalue floor for the positive-semidefiniteness check.
pub const PSD_EIGENVALUE_FLOOR: f64 = -1e-10;
/// Frobenius tolerance on `‖C C† - I‖` for basis changes.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Tolerance on the norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum DensityError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("trace must be 1, but |trace - 1| = {deviation:.3e}")]
    Trace { deviation: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is all zero after clipping; cannot renormalize")]
    Unrepairable,
    #[error("state vector norm must be 1, got {norm}")]
    Norm { norm: f64 },
    #[error("state vector must not be zero")]
    ZeroVector,
    #[error("matrix is not unitary: defect {defect:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { defect: f64, tolerance: f64 },
    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Normalized pure state on a finite-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Accept amplitudes whose norm is already 1 within tolerance.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, DensityError> {
        if amplitudes.is_empty() {
            return Err(DensityError::ZeroVector);
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(DensityError::Norm { norm: f64::NAN });
        }
        let norm = linalg::vec_norm(&amplitudes);
        if norm == 0.0 {
            return Err(DensityError::ZeroVector);
        }
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(DensityError::Norm { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalize arbitrary amplitudes; rejects the zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, DensityError> {
        if amplitudes.is_empty() {
            return Err(DensityError::ZeroVector);
        }
        let norm = linalg::vec_norm(&amplitudes);
        if !norm.is_finite() || norm < 1e-300 {
            return Err(DensityError::ZeroVector);
        }
        let scaled = amplitudes.iter().map(|z| z / norm).collect();
        Ok(Self { amplitudes: scaled })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self, DensityError> {
        if index >= dim {
            return Err(DensityError::Dimension(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// Equal-amplitude superposition of all basis states.
    pub fn equal_superposition(dim: usize) -> Result<Self, DensityError> {
        if dim == 0 {
            return Err(DensityError::ZeroVector);
        }
        let a = 1.0 / (dim as f64).sqrt();
        Ok(Self {
            amplitudes: vec![Complex64::new(a, 0.0); dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Unitary change of basis; rows of the matrix are the new basis
/// vectors expressed in the old basis, so `C ρ C†` is ρ "in the new
/// basis".
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    matrix: ComplexMatrix,
}

impl BasisChange {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, DensityError> {
        if !matrix.is_square() {
            return Err(DensityError::Dimension(format!(
                "basis change must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let product = matrix.matmul(&matrix.adjoint())?;
        let defect =
            linalg::frobenius_distance(&product, &ComplexMatrix::identity(matrix.rows()))?;
        if defect > UNITARITY_TOL {
            return Err(DensityError::NotUnitary {
                defect,
                tolerance: UNITARITY_TOL,
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn hadamard() -> Self {
        Self {
            matrix: ComplexMatrix::hadamard(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `C M C†` — express `M` in this basis.
    pub fn conjugate(&self, m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if self.matrix.is_identity_exact() {
            return Ok(m.clone());
        }
        self.matrix.matmul(m)?.matmul(&self.matrix.adjoint())
    }

    /// `C† M C` — map a matrix expressed in this basis back.
    pub fn unconjugate(&self, m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if self.matrix.is_identity_exact() {
            return Ok(m.clone());
        }
        self.matrix.adjoint().matmul(m)?.matmul(&self.matrix)
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
///
/// The optional `basis_label` is documentation only; equality ignores it.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    basis_label: Option<String>,
}

impl PartialEq for DensityMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl DensityMatrix {
    /// Validate and wrap a matrix. The entries are stored exactly as
    /// given; validation never mutates them.
    pub fn new(matrix: ComplexMatrix) -> Result<Self, DensityError> {
        if !matrix.is_square() {
            return Err(DensityError::Dimension(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let trace = matrix.trace()?;
        let deviation = (trace - Complex64::new(1.0, 0.0)).norm();
        if deviation > TRACE_TOL {
            return Err(DensityError::Trace { deviation });
        }
        let eig = linalg::eig_hermitian(&matrix)?;
        let min_eigenvalue = eig.eigenvalues()[0];
        if min_eigenvalue < PSD_EIGENVALUE_FLOOR {
            return Err(DensityError::NotPositive { min_eigenvalue });
        }
        Ok(Self {
            matrix,
            eigenvalues: eig.eigenvalues().to_vec(),
            basis_label: None,
        })
    }

    /// Repair a nearly-valid matrix arriving from external input:
    /// symmetrize, clip negative eigenvalues to zero, renormalize the
    /// trace, and rebuild. Use only where the producer is untrusted.
    pub fn repaired(matrix: ComplexMatrix) -> Result<Self, DensityError> {
        if !matrix.is_square() {
            return Err(DensityError::Dimension(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let eig = linalg::eig_hermitian(&matrix)?;
        let clipped: Vec<f64> = eig.eigenvalues().iter().map(|&l| l.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if total <= 0.0 {
            return Err(DensityError::Unrepairable);
        }
        let v = eig.eigenvectors();
        let n = v.rows();
        let mut rebuilt = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = clipped[k] / total;
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * w;
                for j in 0..n {
                    let val = rebuilt.get(i, j) + vik * v.get(j, k).conj();
                    rebuilt.set(i, j, val);
                }
            }
        }
        Self::new(rebuilt)
    }

    pub fn with_basis_label(mut self, label: impl Into<String>) -> Self {
        self.basis_label = Some(label.into());
        self
    }

    pub fn basis_label(&self) -> Option<&str> {
        self.basis_label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues computed during validation, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `trace(ρ²)`; equals 1 (within 1e-10) exactly for pure states.
    pub fn purity(&self) -> f64 {
        let squared = self
            .matrix
            .matmul(&self.matrix)
            .expect("square by construction");
        squared.trace().expect("square by construction").re
    }

    /// Von Neumann entropy `-Σ λ ln λ` in nats, with `0 ln 0 := 0`.
    pub fn von_neumann_entropy(&self) -> f64 {
        shannon_entropy(&self.eigenvalues)
    }

    /// The two-level equal-superposition density with exact `0.5`
    /// entries. Equivalent to `pure_state_density` of `(|0⟩+|1⟩)/√2`
    /// but free of the rounding in `1/√2`.
    pub fn cat() -> Self {
        let half = Complex64::new(0.5, 0.0);
        let m = ComplexMatrix::new(2, 2, vec![half; 4]).expect("static shape");
        Self::new(m).expect("exact cat density is valid")
    }

    /// The maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self, DensityError> {
        if dim == 0 {
            return Err(DensityError::Dimension("dimension must be positive".into()));
        }
        let m = ComplexMatrix::identity(dim).scaled(Complex64::new(1.0 / dim as f64, 0.0));
        Self::new(m)
    }
}

/// Shannon entropy of a nonnegative weight sequence in nats; weights
/// at or below zero contribute nothing.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    let s: f64 = weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    s.max(0.0)
}

/// Outer product `ψψ†` of a normalized state.
pub fn pure_state_density(psi: &StateVector) -> Result<DensityMatrix, DensityError> {
    let m = linalg::outer_product(psi.amplitudes(), psi.amplitudes());
    DensityMatrix::new(m)
}

/// Thermal equilibrium state `e^{-H/kT} / Z` of a Hermitian
/// Hamiltonian.
///
/// The smallest eigenvalue is subtracted before exponentiation, so very
/// small `kT` underflows gracefully instead of overflowing.
pub fn gibbs_density(h: &ComplexMatrix, k_t: f64) -> Result<DensityMatrix, DensityError> {
    if !(k_t > 0.0) || !k_t.is_finite() {
        return Err(DensityError::NonPositiveTemperature(k_t));
    }
    let eig = linalg::eig_hermitian(h)?;
    let ground = eig.eigenvalues()[0];
    let partition: f64 = eig
        .eigenvalues()
        .iter()
        .map(|&l| (-(l - ground) / k_t).exp())
        .sum();
    let m = eig.synthesize(|l| Complex64::new((-(l - ground) / k_t).exp() / partition, 0.0));
    DensityMatrix::new(m)
}

/// Zero the off-diagonal entries of `ρ` in the given basis: transform
/// into the basis, drop the off-diagonal part, transform back.
///
/// Diagonal entries (in the dephasing basis) are untouched, so the
/// trace is preserved exactly.
pub fn dephase(rho: &DensityMatrix, basis: &BasisChange) -> Result<DensityMatrix, DensityError> {
    let scaled = scale_off_diagonal_in_basis(rho.matrix(), basis, 0.0)?;
    DensityMatrix::new(scaled)
}

/// Express `ρ` in another basis: `C ρ C†`. Eigenvalues, trace, purity,
/// and entropy are invariant.
pub fn change_basis(
    rho: &DensityMatrix,
    basis: &BasisChange,
) -> Result<DensityMatrix, DensityError> {
    check_dims(rho, basis)?;
    DensityMatrix::new(basis.conjugate(rho.matrix())?)
}

/// Frobenius gap between dephasing in the computational basis and
/// dephasing carried out after a change of basis:
/// `‖D(ρ) - C† D(C ρ C†) C‖_F`.
///
/// Zero exactly when `C` permutes the dephasing basis up to phases;
/// strictly positive in general, which is the sense in which dephasing
/// does not commute with a change of basis.
pub fn dephasing_commutator_defect(
    rho: &DensityMatrix,
    basis: &BasisChange,
) -> Result<f64, DensityError> {
    check_dims(rho, basis)?;
    let direct = zero_off_diagonal(rho.matrix());
    let transformed = basis.conjugate(rho.matrix())?;
    let roundtrip = basis.unconjugate(&zero_off_diagonal(&transformed))?;
    Ok(linalg::frobenius_distance(&direct, &roundtrip)?)
}

/// Projective measurement statistics in the given basis: the diagonal
/// of `C ρ C†` as real numbers.
pub fn measurement_probabilities(
    rho: &DensityMatrix,
    basis: &BasisChange,
) -> Result<Vec<f64>, DensityError> {
    check_dims(rho, basis)?;
    let transformed = basis.conjugate(rho.matrix())?;
    Ok((0..transformed.rows())
        .map(|i| transformed.get(i, i).re)
        .collect())
}

fn check_dims(rho: &DensityMatrix, basis: &BasisChange) -> Result<(), DensityError> {
    if rho.dim() != basis.dim() {
        return Err(DensityError::Dimension(format!(
            "density dimension {} does not match basis dimension {}",
            rho.dim(),
            basis.dim()
        )));
    }
    Ok(())
}

fn zero_off_diagonal(m: &ComplexMatrix) -> ComplexMatrix {
    scale_off_diagonal(m, 0.0)
}

/// Multiply every off-diagonal entry by a real factor, leaving the
/// diagonal entries bit-for-bit untouched.
pub(crate) fn scale_off_diagonal(m: &ComplexMatrix, factor: f64) -> ComplexMatrix {
    let n = m.rows();
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.set(i, j, m.get(i, j) * factor);
            }
        }
    }
    out
}

/// Apply the off-diagonal scaling in the given basis:
/// `C† S(C M C†) C`, with an exact-identity fast path that keeps the
/// diagonal bitwise unchanged.
pub(crate) fn scale_off_diagonal_in_basis(
    m: &ComplexMatrix,
    basis: &BasisChange,
    factor: f64,
) -> Result<ComplexMatrix, DensityError> {
    if m.rows() != basis.dim() {
        return Err(DensityError::Dimension(format!(
            "matrix dimension {} does not match basis dimension {}",
            m.rows(),
            basis.dim()
        )));
    }
    if basis.matrix().is_identity_exact() {
        return Ok(scale_off_diagonal(m, factor));
    }
    let transformed = basis.conjugate(m)?;
    let scaled = scale_off_diagonal(&transformed, factor);
    Ok(basis.unconjugate(&scaled)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cat_density() -> DensityMatrix {
        DensityMatrix::cat()
    }

    #[test]
    fn pure_density_of_basis_state() {
        let rho = pure_state_density(&StateVector::basis_state(2, 0).unwrap()).unwrap();
        assert_eq!(rho.matrix().get(0, 0), c(1.0, 0.0));
        assert_eq!(rho.matrix().get(1, 1), c(0.0, 0.0));
        assert_eq!(rho.matrix().get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn cat_density_has_uniform_entries() {
        let rho = cat_density();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rho.matrix().get(i, j), c(0.5, 0.0));
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        // The outer-product route agrees up to rounding in 1/sqrt(2).
        let via_state =
            pure_state_density(&StateVector::equal_superposition(2).unwrap()).unwrap();
        assert!(
            linalg::frobenius_distance(via_state.matrix(), rho.matrix()).unwrap() < 1e-15
        );
    }

    #[test]
    fn cat_state_in_tilted_basis_is_certain() {
        // The same physical state written in the basis where it is an
        // eigenstate: amplitudes (1, 0).
        let rho = pure_state_density(&StateVector::basis_state(2, 0).unwrap()).unwrap();
        assert_eq!(rho.matrix().get(0, 0), c(1.0, 0.0));
        // And via an explicit change of basis from the cat form.
        let tilted = change_basis(&cat_density(), &BasisChange::hadamard()).unwrap();
        assert!((tilted.matrix().get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(tilted.matrix().get(0, 1).norm() < 1e-14);
        assert!(tilted.matrix().get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(matches!(
            StateVector::normalized(vec![c(0.0, 0.0); 3]),
            Err(DensityError::ZeroVector)
        ));
        assert!(matches!(
            StateVector::new(vec![c(0.0, 0.0); 3]),
            Err(DensityError::ZeroVector)
        ));
    }

    #[test]
    fn gibbs_two_level_weights() {
        // Scalar oracle: p0 = 1/(1+e^-1), p1 = e^-1/(1+e^-1).
        let e1 = (-1.0f64).exp();
        let p0 = 1.0 / (1.0 + e1);
        let p1 = e1 / (1.0 + e1);
        let h = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        let rho = gibbs_density(&h, 1.0).unwrap();
        assert!((rho.matrix().get(0, 0).re - p0).abs() < 1e-14);
        assert!((rho.matrix().get(1, 1).re - p1).abs() < 1e-14);
        assert!(rho.matrix().get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn gibbs_temperature_limits() {
        let eps = 1.0;
        let h = ComplexMatrix::real_diagonal(&[0.0, eps]);
        let hot = gibbs_density(&h, 1e9 * eps).unwrap();
        assert!((hot.matrix().get(0, 0).re - 0.5).abs() < 1e-8);
        assert!((hot.matrix().get(1, 1).re - 0.5).abs() < 1e-8);
        let cold = gibbs_density(&h, 1e-9 * eps).unwrap();
        assert!((cold.matrix().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!(cold.matrix().get(1, 1).norm() < 1e-15);
    }

    #[test]
    fn gibbs_rejects_non_positive_temperature() {
        let h = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        assert!(matches!(
            gibbs_density(&h, 0.0),
            Err(DensityError::NonPositiveTemperature(_))
        ));
        assert!(matches!(
            gibbs_density(&h, -1.0),
            Err(DensityError::NonPositiveTemperature(_))
        ));
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        assert!(cat_density().von_neumann_entropy().abs() < 1e-12);
    }

    #[test]
    fn entropy_of_maximally_mixed_qubit() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((rho.von_neumann_entropy() - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn entropy_of_two_level_gibbs() {
        // Scalar oracle: -p ln p - q ln q at the kT = 1 weights.
        let e1 = (-1.0f64).exp();
        let p = 1.0 / (1.0 + e1);
        let q = e1 / (1.0 + e1);
        let expected = -p * p.ln() - q * q.ln();
        let h = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        let rho = gibbs_density(&h, 1.0).unwrap();
        assert!((rho.von_neumann_entropy() - expected).abs() < 1e-12);
        // Frozen from the oracle above.
        assert!((expected - 0.582_203_108_888_218).abs() < 1e-15);
    }

    #[test]
    fn purity_of_two_level_gibbs() {
        let e1 = (-1.0f64).exp();
        let p = 1.0 / (1.0 + e1);
        let q = e1 / (1.0 + e1);
        let expected = p * p + q * q;
        let h = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        let rho = gibbs_density(&h, 1.0).unwrap();
        assert!((rho.purity() - expected).abs() < 1e-12);
        assert!((expected - 0.6067761335170363).abs() < 1e-15);
        assert!((DensityMatrix::maximally_mixed(2).unwrap().purity() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn dephase_in_own_basis_is_identity_on_diagonal_states() {
        let rho = DensityMatrix::new(ComplexMatrix::real_diagonal(&[0.3, 0.7])).unwrap();
        let out = dephase(&rho, &BasisChange::identity(2)).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn dephase_cat_in_measurement_basis() {
        let out = dephase(&cat_density(), &BasisChange::identity(2)).unwrap();
        assert_eq!(out.matrix().get(0, 0), c(0.5, 0.0));
        assert_eq!(out.matrix().get(1, 1), c(0.5, 0.0));
        assert_eq!(out.matrix().get(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn dephase_cat_in_tilted_basis_changes_nothing() {
        // Hand conjugation oracle: H ρ H = diag(1, 0), already diagonal,
        // so the round trip returns the cat itself.
        let rho = cat_density();
        let out = dephase(&rho, &BasisChange::hadamard()).unwrap();
        assert!(
            linalg::frobenius_distance(out.matrix(), rho.matrix()).unwrap() < 1e-14
        );
    }

    #[test]
    fn change_basis_with_identity() {
        let rho = cat_density();
        let out = change_basis(&rho, &BasisChange::identity(2)).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn maximally_mixed_is_basis_free() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let out = change_basis(&rho, &BasisChange::hadamard()).unwrap();
        assert!(linalg::frobenius_distance(out.matrix(), rho.matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn defect_vanishes_for_identity_basis() {
        let d = dephasing_commutator_defect(&cat_density(), &BasisChange::identity(2)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn defect_vanishes_for_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let d = dephasing_commutator_defect(&rho, &BasisChange::hadamard()).unwrap();
        assert!(d < 1e-14);
    }

    #[test]
    fn defect_of_cat_under_hadamard() {
        // Hand oracle: D(ρ) = diag(.5, .5) while the conjugated route
        // returns the cat itself, so the gap is ‖offdiag(cat)‖ = √0.5.
        let d = dephasing_commutator_defect(&cat_density(), &BasisChange::hadamard()).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn measurement_probabilities_of_cat() {
        let rho = cat_density();
        let pa = measurement_probabilities(&rho, &BasisChange::identity(2)).unwrap();
        assert!((pa[0] - 0.5).abs() < 1e-15);
        assert!((pa[1] - 0.5).abs() < 1e-15);
        let pb = measurement_probabilities(&rho, &BasisChange::hadamard()).unwrap();
        assert!((pb[0] - 1.0).abs() < 1e-14);
        assert!(pb[1].abs() < 1e-14);
    }

    #[test]
    fn measurement_probabilities_of_ground_state() {
        let rho = pure_state_density(&StateVector::basis_state(2, 0).unwrap()).unwrap();
        let p = measurement_probabilities(&rho, &BasisChange::identity(2)).unwrap();
        assert_eq!(p, vec![1.0, 0.0]);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let rho = cat_density();
        let basis = BasisChange::identity(3);
        assert!(matches!(
            dephase(&rho, &basis),
            Err(DensityError::Dimension(_))
        ));
        assert!(matches!(
            measurement_probabilities(&rho, &basis),
            Err(DensityError::Dimension(_))
        ));
    }

    #[test]
    fn invalid_density_matrices_are_rejected() {
        // Trace 2.
        let err = DensityMatrix::new(ComplexMatrix::identity(2)).unwrap_err();
        assert!(matches!(err, DensityError::Trace { .. }));
        // Hermitian, unit trace, but indefinite.
        let m = ComplexMatrix::real_diagonal(&[1.5, -0.5]);
        let err = DensityMatrix::new(m).unwrap_err();
        assert!(matches!(err, DensityError::NotPositive { .. }));
    }

    #[test]
    fn repair_clips_and_renormalizes() {
        let m = ComplexMatrix::real_diagonal(&[1.1, -0.1]);
        let rho = DensityMatrix::repaired(m).unwrap();
        assert!((rho.matrix().get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(rho.matrix().get(1, 1).norm() < 1e-12);
        assert!(matches!(
            DensityMatrix::repaired(ComplexMatrix::real_diagonal(&[-1.0, 0.0])),
            Err(DensityError::Unrepairable)
        ));
    }

    #[test]
    fn basis_change_requires_unitarity() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            BasisChange::new(m),
            Err(DensityError::NotUnitary { .. })
        ));
    }

    #[test]
    fn equality_ignores_basis_label() {
        let a = cat_density().with_basis_label("alive/dead");
        let b = cat_density();
        assert_eq!(a, b);
        assert_eq!(a.basis_label(), Some("alive/dead"));
    }
}
