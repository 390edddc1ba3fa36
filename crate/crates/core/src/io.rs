//! Serialization: the JSON matrix schema and lossless CSV floats.
//!
//! Densities and unitaries travel as `{dim, re: [[..]], im: [[..]]}`
//! with row-major nested arrays; readers re-validate every type
//! invariant on load. CSV floats are printed with 17 significant
//! digits so a round trip through text is exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

use crate::density::{BasisChange, DensityError, DensityMatrix};
use crate::linalg::{ComplexMatrix, LinalgError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("matrix schema mismatch: {0}")]
    Schema(String),
}

/// On-disk form of a square complex matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self, IoError> {
        if !m.is_square() {
            return Err(IoError::Schema(format!(
                "only square matrices serialize, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let z = m.get(i, j);
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        Ok(Self { dim: n, re, im })
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, IoError> {
        let n = self.dim;
        if self.re.len() != n || self.im.len() != n {
            return Err(IoError::Schema(format!(
                "expected {n} rows, got {} real and {} imaginary",
                self.re.len(),
                self.im.len()
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            if self.re[i].len() != n || self.im[i].len() != n {
                return Err(IoError::Schema(format!("row {i} is not {n} wide")));
            }
            for j in 0..n {
                entries.push(Complex64::new(self.re[i][j], self.im[i][j]));
            }
        }
        Ok(ComplexMatrix::new(n, n, entries)?)
    }
}

/// Load a density matrix, re-validating all invariants; with `repair`
/// set, negative eigenvalues are clipped and the trace renormalized.
pub fn load_density(path: &Path, repair: bool) -> Result<DensityMatrix, IoError> {
    let raw = std::fs::read_to_string(path)?;
    let schema: MatrixJson = serde_json::from_str(&raw)?;
    let matrix = schema.to_matrix()?;
    let density = if repair {
        DensityMatrix::repaired(matrix)?
    } else {
        DensityMatrix::new(matrix)?
    };
    Ok(density)
}

/// Load a unitary basis change, re-validating unitarity.
pub fn load_basis(path: &Path) -> Result<BasisChange, IoError> {
    let raw = std::fs::read_to_string(path)?;
    let schema: MatrixJson = serde_json::from_str(&raw)?;
    Ok(BasisChange::new(schema.to_matrix()?)?)
}

/// Write pretty JSON with a trailing newline.
pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Format a float with 17 significant digits (lossless for f64).
pub fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::pure_state_density;
    use crate::density::StateVector;

    #[test]
    fn matrix_round_trips_through_schema() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.25, -0.1)],
            vec![Complex64::new(0.25, 0.1), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        let schema = MatrixJson::from_matrix(&m).unwrap();
        let text = serde_json::to_string(&schema).unwrap();
        let parsed: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_matrix().unwrap(), m);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"dim": 1, "re": [[1.0]], "im": [[0.0]], "extra": 1}"#;
        assert!(serde_json::from_str::<MatrixJson>(text).is_err());
    }

    #[test]
    fn ragged_schema_is_rejected() {
        let schema = MatrixJson {
            dim: 2,
            re: vec![vec![1.0, 0.0], vec![0.0]],
            im: vec![vec![0.0; 2]; 2],
        };
        assert!(matches!(schema.to_matrix(), Err(IoError::Schema(_))));
    }

    #[test]
    fn loaded_densities_are_revalidated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rho.json");
        // Trace 2: must be rejected without repair.
        let bad = MatrixJson {
            dim: 2,
            re: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            im: vec![vec![0.0; 2]; 2],
        };
        std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
        assert!(matches!(
            load_density(&path, false),
            Err(IoError::Density(DensityError::Trace { .. }))
        ));
        // Slightly indefinite: repair clips and renormalizes.
        let wobbly = MatrixJson {
            dim: 2,
            re: vec![vec![1.05, 0.0], vec![0.0, -0.05]],
            im: vec![vec![0.0; 2]; 2],
        };
        std::fs::write(&path, serde_json::to_string(&wobbly).unwrap()).unwrap();
        assert!(load_density(&path, false).is_err());
        let repaired = load_density(&path, true).unwrap();
        assert!((repaired.matrix().get(0, 0).re - 1.0).abs() < 1e-12);
        // A valid cat density loads cleanly.
        let cat =
            pure_state_density(&StateVector::equal_superposition(2).unwrap()).unwrap();
        let schema = MatrixJson::from_matrix(cat.matrix()).unwrap();
        std::fs::write(&path, serde_json::to_string(&schema).unwrap()).unwrap();
        let loaded = load_density(&path, false).unwrap();
        assert_eq!(loaded, cat);
    }

    #[test]
    fn csv_floats_are_lossless() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            2.225e-308,
            1.602e11,
            -0.9950083333194445,
        ] {
            let printed = csv_f64(x);
            let parsed: f64 = printed.parse().unwrap();
            assert_eq!(parsed, x, "round trip failed for {printed}");
        }
    }
}
