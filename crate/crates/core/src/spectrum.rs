//! Spectra and cospectrality tests.

use nalgebra::{Complex, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{entry_scale, DenseMatrix};

/// Absolute symmetry tolerance, scaled by `1 + max|entry|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Default cospectrality tolerance, scaled by `1 + max|entry|`.
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-9;

/// Real eigenvalues of a symmetric matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// Largest elementwise gap to another spectrum of the same size.
    pub fn max_gap(&self, other: &Spectrum) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::OrderMismatch(self.len(), other.len()));
        }
        Ok(self
            .eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn require_square(m: &DenseMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    Ok(())
}

/// Max `|m_ij - m_ji|`.
pub fn asymmetry(m: &DenseMatrix) -> f64 {
    (m - m.transpose()).amax()
}

pub fn is_symmetric(m: &DenseMatrix) -> bool {
    m.nrows() == m.ncols() && asymmetry(m) <= SYMMETRY_TOL * entry_scale(m)
}

pub fn spectrum(m: &DenseMatrix) -> Result<Spectrum> {
    require_square(m)?;
    let dev = asymmetry(m);
    if dev > SYMMETRY_TOL * entry_scale(m) {
        return Err(Error::NotSymmetric(dev));
    }
    // symmetrize away the sub-tolerance noise before the solver sees it
    let sym = (m + m.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(Spectrum { eigenvalues })
}

/// Eigenvalues of an arbitrary real square matrix, sorted by real then
/// imaginary part.
pub fn complex_spectrum(m: &DenseMatrix) -> Result<Vec<Complex<f64>>> {
    require_square(m)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut ev: Vec<Complex<f64>> = m.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(ev)
}

/// Largest distance in a greedy nearest-neighbour matching of two
/// eigenvalue multisets of equal size.
fn matched_gap(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let mut pool: Vec<Complex<f64>> = b.to_vec();
    let mut gap: f64 = 0.0;
    for x in a {
        let (idx, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("pool sized like a");
        gap = gap.max(dist);
        pool.swap_remove(idx);
    }
    gap
}

/// Largest eigenvalue discrepancy between two matrices of the same order.
/// Symmetric pairs are compared as sorted real spectra; anything else goes
/// through the complex eigenvalues. A defective eigenvalue of multiplicity
/// k perturbs by about `eps^(1/k)`, so non-symmetric gaps near `1e-8` are
/// roundoff, not a spectral difference.
pub fn spectral_gap(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    require_square(a)?;
    require_square(b)?;
    if a.nrows() != b.nrows() {
        return Err(Error::OrderMismatch(a.nrows(), b.nrows()));
    }
    if is_symmetric(a) && is_symmetric(b) {
        return spectrum(a)?.max_gap(&spectrum(b)?);
    }
    let ea = complex_spectrum(a)?;
    let eb = complex_spectrum(b)?;
    Ok(matched_gap(&ea, &eb).max(matched_gap(&eb, &ea)))
}

/// True when the spectra agree within `tol * (1 + max|entry|)`.
pub fn cospectral(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> Result<bool> {
    let gap = spectral_gap(a, b)?;
    let scale = entry_scale(a).max(entry_scale(b));
    Ok(gap <= tol * scale)
}
