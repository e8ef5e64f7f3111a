//! Realignment, operator Schmidt coefficients and the strength measures
//! `K_Sch` and `K_WZ` of unitaries on a bipartite space `H^m (x) H^n`.
//!
//! With the standard product basis `E_i (x) E_j` the coefficient matrix of
//! an operator is exactly its realignment, so the Schmidt coefficients are
//! the singular values of the realigned matrix. They satisfy
//! `sum s_i^2 = tr(U^T U) = mn` for a unitary `U`, and `{s_i^2 / mn}` is a
//! probability distribution whose Shannon entropy is `K_Sch`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DenseMatrix;
use crate::seidel::SeidelOperator;

/// Singular values at or below `RANK_TOL * s_max` count as zero.
pub const RANK_TOL: f64 = 1e-8;
const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub m: usize,
    pub n: usize,
}

impl Bipartition {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    fn check(&self, order: usize) -> Result<()> {
        if self.m == 0 || self.n == 0 || self.m * self.n != order {
            return Err(Error::BadBipartition {
                m: self.m,
                n: self.n,
                order,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtProfile {
    pub bipartition: Bipartition,
    /// descending; entries below the rank threshold are set to 0
    pub coefficients: Vec<f64>,
    pub k_sch: f64,
    pub k_wz: f64,
}

impl SchmidtProfile {
    /// Number of nonzero coefficients, the realignment rank.
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&s| s > 0.0).count()
    }

    pub fn squared_sum(&self) -> f64 {
        self.coefficients.iter().map(|s| s * s).sum()
    }
}

/// Row-major flattening `(a_11, a_12, .., a_nn)`.
pub fn vec_row(a: &DenseMatrix) -> Result<Vec<f64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare(a.nrows(), a.ncols()));
    }
    Ok(a.row_iter()
        .flat_map(|r| r.iter().copied().collect::<Vec<_>>())
        .collect())
}

/// Splits `u` into `M x M` blocks of size `N x N`; row `i*M + j` of the
/// result is the row-major flattening of block `(i, j)`.
pub fn realignment(u: &DenseMatrix, bip: Bipartition) -> Result<DenseMatrix> {
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare(u.nrows(), u.ncols()));
    }
    bip.check(u.nrows())?;
    let (big, small) = (bip.m, bip.n);
    let mut r = DenseMatrix::zeros(big * big, small * small);
    for i in 0..big {
        for j in 0..big {
            let row = i * big + j;
            for a in 0..small {
                for b in 0..small {
                    r[(row, a * small + b)] = u[(i * small + a, j * small + b)];
                }
            }
        }
    }
    Ok(r)
}

fn check_unitary(u: &DenseMatrix) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare(u.nrows(), u.ncols()));
    }
    let n = u.nrows();
    let dev = (u.transpose() * u - DenseMatrix::identity(n, n)).amax();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

fn singular_values_desc(m: &DenseMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// True iff the realignment has numerical rank one, i.e. `u = u1 (x) u2`.
/// Singular values count when they exceed `tol * s_max`.
pub fn is_local(u: &DenseMatrix, bip: Bipartition, tol: f64) -> Result<bool> {
    check_unitary(u)?;
    let s = singular_values_desc(&realignment(u, bip)?);
    let top = s.first().copied().unwrap_or(0.0);
    Ok(s.iter().filter(|&&v| v > tol * top).count() == 1)
}

pub fn schmidt_coefficients(u: &DenseMatrix, bip: Bipartition) -> Result<SchmidtProfile> {
    check_unitary(u)?;
    let mut coefficients = singular_values_desc(&realignment(u, bip)?);
    let top = coefficients.first().copied().unwrap_or(0.0);
    for s in &mut coefficients {
        if *s <= RANK_TOL * top {
            *s = 0.0;
        }
    }
    let mut profile = SchmidtProfile {
        bipartition: bip,
        coefficients,
        k_sch: 0.0,
        k_wz: 0.0,
    };
    profile.k_sch = k_sch(&profile);
    profile.k_wz = k_wz(&profile);
    Ok(profile)
}

/// Shannon entropy (bits) of `{s_i^2 / mn}`.
pub fn k_sch(profile: &SchmidtProfile) -> f64 {
    let mn = profile.bipartition.order() as f64;
    let h: f64 = profile
        .coefficients
        .iter()
        .map(|s| s * s / mn)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    h.max(0.0) + 0.0
}

/// `1 - sum s_i^4 / (mn)^2`.
pub fn k_wz(profile: &SchmidtProfile) -> f64 {
    let mn = profile.bipartition.order() as f64;
    let quartic: f64 = profile.coefficients.iter().map(|s| s.powi(4)).sum();
    (1.0 - quartic / (mn * mn)).max(0.0) + 0.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub order: usize,
    pub m: usize,
    pub n: usize,
    pub operator: SeidelOperator,
    pub k_sch: f64,
    pub k_wz: f64,
}

pub const SCAN_HEADER: &str = "order,m,n,kind,k_sch,k_wz";

/// Ordered factor pairs `(m, n)`, both at least 2, ascending in `m`.
pub fn factorizations(order: usize) -> Vec<Bipartition> {
    (2..=order / 2)
        .filter(|&m| order.is_multiple_of(m) && order / m >= 2)
        .map(|m| Bipartition::new(m, order / m))
        .collect()
}

/// Strengths of `U_o` for every composite `4 <= o <= max_order` and every
/// ordered factorization; with `include_blocks`, also `U_2 (+) I_{o-2}`.
/// Rows are sorted by order, then `m`, single before block.
pub fn strength_scan(max_order: usize, include_blocks: bool) -> Result<Vec<ScanRow>> {
    if max_order < 4 {
        return Err(Error::ScanTooSmall(max_order));
    }
    let mut jobs = Vec::new();
    for order in 4..=max_order {
        for bip in factorizations(order) {
            jobs.push((bip, SeidelOperator::Single(order)));
            if include_blocks {
                jobs.push((
                    bip,
                    SeidelOperator::Block {
                        block_sizes: vec![2],
                        identity_size: order - 2,
                    },
                ));
            }
        }
    }
    let mut rows = jobs
        .into_par_iter()
        .map(|(bip, op)| {
            let u = op.materialize()?;
            let profile = schmidt_coefficients(&u, bip)?;
            Ok(ScanRow {
                order: bip.order(),
                m: bip.m,
                n: bip.n,
                operator: op,
                k_sch: profile.k_sch,
                k_wz: profile.k_wz,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.order, r.m, r.operator.kind_name() != "single"));
    Ok(rows)
}

pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(48 * (rows.len() + 1));
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.12},{:.12}\n",
            r.order,
            r.m,
            r.n,
            r.operator.kind_name(),
            r.k_sch,
            r.k_wz
        ));
    }
    out
}
