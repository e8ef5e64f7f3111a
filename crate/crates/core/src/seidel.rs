//! Generalized Seidel switching on weighted multi-digraphs.
//!
//! A Seidel graph comes with a partition of its vertices into cells
//! `C_1..C_k` (each of size at least 2) and a remainder `D`. Switching
//! conjugates the adjacency matrix with `U = diag(U_{n_1}, .., U_{n_k}, I)`,
//! where `U_n = (2/n) J_n - I_n`. [`switch`] realizes the conjugation edge by
//! edge:
//!
//! * edges inside a cell and inside `D` are left alone,
//! * the weights between a vertex of `D` and a cell, read as a vector `x`,
//!   become `(2s/n) j - x` with `s = sum(x)`; for a half attachment with
//!   equal weights this is the set complement within the cell,
//! * a block `B` of edges between two cells becomes `U_m B U_n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{adjacency_matrix, entry_scale, max_abs_diff, DenseMatrix, WeightedDigraph};

/// Relative tolerance for weight equality checks and for snapping switched
/// weights to zero.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Cell decomposition `{C_1..C_k, D}` of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelPartition {
    order: usize,
    cells: Vec<Vec<usize>>,
    d_cell: Vec<usize>,
}

impl SeidelPartition {
    pub fn new(order: usize, cells: Vec<Vec<usize>>, d_cell: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, cell) in cells.iter().enumerate() {
            if cell.len() < 2 {
                return Err(Error::InvalidPartition(format!(
                    "cell {i} has {} vertices; cells need at least 2",
                    cell.len()
                )));
            }
        }
        for &v in cells.iter().flatten().chain(&d_cell) {
            if v >= order {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            if !seen.insert(v) {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} appears in more than one part"
                )));
            }
        }
        if seen.len() != order {
            let missing = (0..order).find(|v| !seen.contains(v)).unwrap_or(0);
            return Err(Error::InvalidPartition(format!(
                "vertex {missing} is not covered by any part"
            )));
        }
        Ok(Self {
            order,
            cells,
            d_cell,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn d_cell(&self) -> &[usize] {
        &self.d_cell
    }

    /// Vertices listed cell by cell, then `D`.
    pub fn ordering(&self) -> Vec<usize> {
        self.cells
            .iter()
            .flatten()
            .chain(&self.d_cell)
            .copied()
            .collect()
    }

    /// Index of the cell holding `v`, or `None` for vertices of `D`.
    pub fn cell_of(&self, v: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(&v))
    }

    /// The switching operator written in the graph's own vertex labels, so
    /// that `U * adjacency_matrix(g) * U` is the switched adjacency.
    pub fn operator_in_graph_order(&self) -> DenseMatrix {
        let mut u = DenseMatrix::zeros(self.order, self.order);
        for cell in &self.cells {
            let n = cell.len() as f64;
            for &a in cell {
                for &b in cell {
                    u[(a, b)] = if a == b { 2.0 / n - 1.0 } else { 2.0 / n };
                }
            }
        }
        for &v in &self.d_cell {
            u[(v, v)] = 1.0;
        }
        u
    }
}

/// How a vertex of `D` attaches to one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    /// adjacent to every vertex of the cell
    Full,
    /// adjacent to exactly half of the cell
    Half,
    /// not adjacent to the cell
    Detached,
}

impl Category {
    pub fn number(self) -> u8 {
        match self {
            Category::Full => 1,
            Category::Half => 2,
            Category::Detached => 3,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCategories {
    pub cell: usize,
    /// `(v, category)` for every `v` in `D`, in `D` order.
    pub categories: Vec<(usize, Category)>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryReport {
    pub cells: Vec<CellCategories>,
}

/// Symbolic Seidel operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeidelOperator {
    /// `U_n`
    Single(usize),
    /// `diag(U_{n_1}, .., U_{n_k}, I_identity_size)`
    Block {
        block_sizes: Vec<usize>,
        identity_size: usize,
    },
}

impl SeidelOperator {
    pub fn order(&self) -> usize {
        match self {
            SeidelOperator::Single(n) => *n,
            SeidelOperator::Block {
                block_sizes,
                identity_size,
            } => block_sizes.iter().sum::<usize>() + identity_size,
        }
    }

    pub fn materialize(&self) -> Result<DenseMatrix> {
        match self {
            SeidelOperator::Single(n) => seidel_matrix(*n),
            SeidelOperator::Block {
                block_sizes,
                identity_size,
            } => {
                let total = self.order();
                let mut u = DenseMatrix::zeros(total, total);
                let mut at = 0;
                for &n in block_sizes {
                    let block = seidel_matrix(n)?;
                    u.view_mut((at, at), (n, n)).copy_from(&block);
                    at += n;
                }
                for k in at..total {
                    u[(k, k)] = 1.0;
                }
                debug_assert_eq!(at + identity_size, total);
                Ok(u)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SeidelOperator::Single(_) => "single",
            SeidelOperator::Block { .. } => "block",
        }
    }
}

/// `U_n = (2/n) J_n - I_n`.
pub fn seidel_matrix(n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let off = 2.0 / n as f64;
    let diag = off - 1.0;
    Ok(DenseMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { diag } else { off },
    ))
}

pub fn block_seidel(part: &SeidelPartition) -> SeidelOperator {
    SeidelOperator::Block {
        block_sizes: part.cells.iter().map(Vec::len).collect(),
        identity_size: part.d_cell.len(),
    }
}

/// `U_m A U_n` for an `m x n` matrix `A` whose rows all sum to `r`, in closed
/// form: `A + (2r/n) J - (2/m) j c^T` where `c` holds the column sums. When
/// the column sums are constant as well the correction vanishes and the
/// result is `A` itself, whatever `m` and `n` are.
pub fn lemma1_transform(a: &DenseMatrix) -> Result<DenseMatrix> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok(a.clone());
    }
    let row_sums: Vec<f64> = a.row_iter().map(|row| row.sum()).collect();
    let r = row_sums[0];
    let tol = WEIGHT_TOL * entry_scale(a) * n as f64;
    if row_sums.iter().any(|s| (s - r).abs() > tol) {
        return Err(Error::NonConstantRowSum);
    }
    let col_sums: Vec<f64> = a.column_iter().map(|col| col.sum()).collect();
    let row_term = 2.0 * r / n as f64;
    Ok(DenseMatrix::from_fn(m, n, |i, j| {
        a[(i, j)] + row_term - 2.0 * col_sums[j] / m as f64
    }))
}

/// `U_{2m} x = c j - x` for a vector with `m` zeros and `m` entries equal to
/// `c`.
pub fn lemma2_transform(x: &[f64]) -> Result<Vec<f64>> {
    if x.is_empty() || !x.len().is_multiple_of(2) {
        return Err(Error::NotHalfAndHalf);
    }
    let zeros = x.iter().filter(|&&v| v == 0.0).count();
    let c = x.iter().copied().find(|&v| v != 0.0).unwrap_or(0.0);
    if zeros != x.len() / 2 || x.iter().any(|&v| v != 0.0 && v != c) {
        return Err(Error::NotHalfAndHalf);
    }
    Ok(x.iter().map(|&v| c - v).collect())
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= WEIGHT_TOL * scale
}

fn all_close(values: &[f64], scale: f64) -> bool {
    values.windows(2).all(|w| close(w[0], w[1], scale))
}

/// Checks that the subgraph induced on `set` has equal degree `sum |a_ij|`
/// at every vertex.
fn check_regular(g: &WeightedDigraph, set: &[usize], scale: f64, label: &str) -> Result<()> {
    let degrees: Vec<f64> = set
        .iter()
        .map(|&u| set.iter().map(|&v| g.weight(u, v).abs()).sum())
        .collect();
    if !all_close(&degrees, scale) {
        return Err(Error::NotRegularInduced(label.to_owned()));
    }
    Ok(())
}

/// A cell block commutes with `J` only when every signed row sum and column
/// sum agree; that is what keeps it fixed under `U_n . U_n`.
fn check_cell_balance(g: &WeightedDigraph, cell: &[usize], scale: f64, label: &str) -> Result<()> {
    let mut sums: Vec<f64> = cell
        .iter()
        .map(|&u| cell.iter().map(|&v| g.weight(u, v)).sum())
        .collect();
    sums.extend(
        cell.iter()
            .map(|&v| cell.iter().map(|&u| g.weight(u, v)).sum::<f64>()),
    );
    if !all_close(&sums, scale * cell.len() as f64) {
        return Err(Error::NotRegularInduced(label.to_owned()));
    }
    Ok(())
}

fn weight_scale(g: &WeightedDigraph) -> f64 {
    1.0 + g.edges().map(|(_, _, w)| w.abs()).fold(0.0, f64::max)
}

/// Category of `v` with respect to `cell` under the attachment rules, each
/// direction checked on its own.
fn classify(
    g: &WeightedDigraph,
    v: usize,
    cell_idx: usize,
    cell: &[usize],
    scale: f64,
) -> Result<Category> {
    let n = cell.len();
    let directions: [Vec<f64>; 2] = [
        cell.iter().map(|&c| g.weight(v, c)).collect(),
        cell.iter().map(|&c| g.weight(c, v)).collect(),
    ];
    for weights in &directions {
        let count = weights.iter().filter(|&&w| w != 0.0).count();
        let half = n.is_multiple_of(2) && count == n / 2;
        if !(count == 0 || count == n || half) {
            return Err(Error::BadAdjacencyCount {
                vertex: v,
                cell: cell_idx,
                count,
                size: n,
            });
        }
        if half {
            let nonzero: Vec<f64> = weights.iter().copied().filter(|&w| w != 0.0).collect();
            if !all_close(&nonzero, scale) {
                return Err(Error::UnequalWeights {
                    vertex: v,
                    cell: cell_idx,
                });
            }
        }
    }
    let union = (0..n)
        .filter(|&k| directions[0][k] != 0.0 || directions[1][k] != 0.0)
        .count();
    match union {
        0 => Ok(Category::Detached),
        u if u == n => Ok(Category::Full),
        u if n.is_multiple_of(2) && u == n / 2 => Ok(Category::Half),
        count => Err(Error::BadAdjacencyCount {
            vertex: v,
            cell: cell_idx,
            count,
            size: n,
        }),
    }
}

fn categorize(g: &WeightedDigraph, part: &SeidelPartition, scale: f64) -> Result<CategoryReport> {
    let mut cells = Vec::with_capacity(part.cells.len());
    for (i, cell) in part.cells.iter().enumerate() {
        let mut categories = Vec::with_capacity(part.d_cell.len());
        let (mut p, mut q, mut r) = (0, 0, 0);
        for &v in &part.d_cell {
            let cat = classify(g, v, i, cell, scale)?;
            match cat {
                Category::Full => p += 1,
                Category::Half => q += 1,
                Category::Detached => r += 1,
            }
            categories.push((v, cat));
        }
        cells.push(CellCategories {
            cell: i,
            categories,
            p,
            q,
            r,
        });
    }
    Ok(CategoryReport { cells })
}

/// Checks the Seidel graph conditions and classifies every vertex of `D`
/// against every cell.
///
/// Condition 4 (at most one edge per ordered pair) is enforced by
/// [`WeightedDigraph`] storage itself; duplicate pairs are rejected when a
/// graph is built.
pub fn validate_seidel(g: &WeightedDigraph, part: &SeidelPartition) -> Result<CategoryReport> {
    if part.order != g.order() {
        return Err(Error::OrderMismatch(g.order(), part.order));
    }
    let scale = weight_scale(g);
    for (i, cell) in part.cells.iter().enumerate() {
        let label = format!("cell {i}");
        check_regular(g, cell, scale * cell.len() as f64, &label)?;
        check_cell_balance(g, cell, scale, &label)?;
    }
    check_regular(
        g,
        &part.d_cell,
        scale * part.d_cell.len().max(1) as f64,
        "D",
    )?;
    categorize(g, part, scale)
}

/// `x^T U_n` (equivalently `U_n x`): `(2s/n) j - x`. Constant vectors are
/// fixed points and are returned untouched so that no rounding creeps in.
fn switch_vector(x: &[f64]) -> Vec<f64> {
    if x.windows(2).all(|w| w[0] == w[1]) {
        return x.to_vec();
    }
    let n = x.len() as f64;
    let s: f64 = x.iter().sum();
    let mean2 = 2.0 * s / n;
    let snap = WEIGHT_TOL * (1.0 + x.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
    x.iter()
        .map(|&v| {
            let w = mean2 - v;
            if w.abs() <= snap {
                0.0
            } else {
                w
            }
        })
        .collect()
}

/// `U_m B U_n` for an arbitrary `m x n` block.
fn switch_block(b: &DenseMatrix) -> DenseMatrix {
    let (m, n) = b.shape();
    let first = b[(0, 0)];
    if b.iter().all(|&v| v == first) {
        return b.clone();
    }
    let (mf, nf) = (m as f64, n as f64);
    let rows: Vec<f64> = b.row_iter().map(|r| r.sum()).collect();
    let cols: Vec<f64> = b.column_iter().map(|c| c.sum()).collect();
    let total: f64 = rows.iter().sum();
    let snap = WEIGHT_TOL * entry_scale(b);
    DenseMatrix::from_fn(m, n, |i, j| {
        let w = b[(i, j)] - 2.0 * rows[i] / nf - 2.0 * cols[j] / mf + 4.0 * total / (mf * nf);
        if w.abs() <= snap {
            0.0
        } else {
            w
        }
    })
}

/// Edge-wise switching with no validation. The caller is responsible for the
/// cell blocks being balanced, which is what leaves them fixed.
pub(crate) fn apply_switch(g: &WeightedDigraph, part: &SeidelPartition) -> Result<WeightedDigraph> {
    let mut out = g.clone();
    for cell in &part.cells {
        for &v in &part.d_cell {
            let row: Vec<f64> = cell.iter().map(|&c| g.weight(v, c)).collect();
            for (&c, w) in cell.iter().zip(switch_vector(&row)) {
                out.set_weight(v, c, w)?;
            }
            let col: Vec<f64> = cell.iter().map(|&c| g.weight(c, v)).collect();
            for (&c, w) in cell.iter().zip(switch_vector(&col)) {
                out.set_weight(c, v, w)?;
            }
        }
    }
    for (i, ci) in part.cells.iter().enumerate() {
        for (j, cj) in part.cells.iter().enumerate() {
            if i == j {
                continue;
            }
            let block = DenseMatrix::from_fn(ci.len(), cj.len(), |a, b| g.weight(ci[a], cj[b]));
            let switched = switch_block(&block);
            for (a, &u) in ci.iter().enumerate() {
                for (b, &v) in cj.iter().enumerate() {
                    out.set_weight(u, v, switched[(a, b)])?;
                }
            }
        }
    }
    Ok(out)
}

/// Produces `G^pi`, whose adjacency matrix is `U A(G) U` with
/// `U = block_seidel(part)` in graph order.
pub fn switch(g: &WeightedDigraph, part: &SeidelPartition) -> Result<WeightedDigraph> {
    validate_seidel(g, part)?;
    apply_switch(g, part)
}

/// [`switch`], then checks the result against the dense conjugation
/// `U A U` at `1e-12 * (1 + max|entry|)`.
pub fn switch_verified(g: &WeightedDigraph, part: &SeidelPartition) -> Result<WeightedDigraph> {
    let out = switch(g, part)?;
    verify_conjugation(&adjacency_matrix(g), &adjacency_matrix(&out), part)?;
    Ok(out)
}

/// Checks `after = U before U` for the partition's operator.
pub fn verify_conjugation(
    before: &DenseMatrix,
    after: &DenseMatrix,
    part: &SeidelPartition,
) -> Result<()> {
    let u = part.operator_in_graph_order();
    let expected = &u * before * &u;
    let dev = max_abs_diff(&expected, after);
    if dev > WEIGHT_TOL * entry_scale(&expected) {
        return Err(Error::VerificationFailed(dev));
    }
    Ok(())
}
