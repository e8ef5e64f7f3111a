//! Density matrices of graphs: `rho = L / tr(L)` or `Q / tr(Q)`.

use crate::error::{Error, Result};
use crate::graph::{entry_scale, DenseMatrix, WeightedDigraph};
use crate::spectrum::{asymmetry, spectrum};
use crate::starlike::SpectralKind;

const TRACE_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are rounding noise and are clamped to 0.
pub const PSD_TOL: f64 = 1e-9;

/// Real symmetric, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DenseMatrix,
    /// ascending, clamped at zero
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn from_matrix(matrix: DenseMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare(matrix.nrows(), matrix.ncols()));
        }
        let dev = asymmetry(&matrix);
        if dev > SYMMETRY_TOL * entry_scale(&matrix) {
            return Err(Error::NotSymmetric(dev));
        }
        if (matrix.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace(matrix.trace()));
        }
        let raw = spectrum(&matrix)?;
        let min = raw.min().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        let eigenvalues = raw.eigenvalues().iter().map(|&l| l.max(0.0)).collect();
        Ok(Self {
            matrix,
            eigenvalues,
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    /// Ascending eigenvalues, negative noise clamped to 0.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }

    /// `tr(rho^2)`
    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).sum()
    }
}

pub fn density_from_graph(g: &WeightedDigraph, kind: SpectralKind) -> Result<DensityMatrix> {
    let m = kind.matrix(g)?;
    let trace = m.trace();
    if trace.abs() <= TRACE_TOL * entry_scale(&m) {
        return Err(Error::ZeroTrace);
    }
    DensityMatrix::from_matrix(m / trace)
}

/// `S = -sum l log2 l`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Numerical rank one.
pub fn is_pure(rho: &DensityMatrix, tol: f64) -> bool {
    rho.rank(tol) == 1
}
