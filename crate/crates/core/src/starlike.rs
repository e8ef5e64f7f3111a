//! Laplacian and signless-Laplacian cospectral pairs via switching.
//!
//! The pipeline is `G -> H -> H^pi -> G'`: `H` is the graph whose adjacency
//! matrix is `L(G)` (or `Q(G)`), `H^pi` is its Seidel switch and `G'` is read
//! back so that `L(G') = A(H^pi)` (or `Q(G') = A(H^pi)`). Starlike graphs are
//! the inputs for which every step is well defined.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    adjacency_matrix, entry_scale, laplacian, signless_laplacian, DenseMatrix, WeightedDigraph,
};
use crate::seidel::{apply_switch, validate_seidel, Category, SeidelPartition, WEIGHT_TOL};
use crate::spectrum::{cospectral, DEFAULT_SPECTRAL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralKind {
    Laplacian,
    SignlessLaplacian,
}

impl SpectralKind {
    /// `L(G)` or `Q(G)`; both need symmetric weights.
    pub fn matrix(self, g: &WeightedDigraph) -> Result<DenseMatrix> {
        match self {
            SpectralKind::Laplacian => laplacian(g),
            SpectralKind::SignlessLaplacian => signless_laplacian(g),
        }
    }

    fn off_diagonal_sign(self) -> f64 {
        match self {
            SpectralKind::Laplacian => -1.0,
            SpectralKind::SignlessLaplacian => 1.0,
        }
    }
}

impl fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralKind::Laplacian => write!(f, "laplacian"),
            SpectralKind::SignlessLaplacian => write!(f, "signless"),
        }
    }
}

/// Per-cell weights of a starlike graph. A weight is `None` when the
/// corresponding edges do not exist.
#[derive(Debug, Clone, PartialEq)]
pub struct StarlikeCellProfile {
    pub cell: usize,
    /// category-1 edges `D -> C_i`
    pub w_plus: Option<f64>,
    /// category-1 edges `C_i -> D`
    pub w_minus: Option<f64>,
    /// category-2 edges `D -> C_i`
    pub w_sup_plus: Option<f64>,
    /// category-2 edges `C_i -> D`
    pub w_sup_minus: Option<f64>,
    pub p: usize,
    pub q: usize,
}

/// Common value of `values`, `None` when they are all zero, `Err(())` when
/// they differ.
fn uniform(values: &[f64], scale: f64) -> std::result::Result<Option<f64>, ()> {
    let Some(&first) = values.first() else {
        return Ok(None);
    };
    if values
        .iter()
        .any(|&w| (w - first).abs() > WEIGHT_TOL * scale)
    {
        return Err(());
    }
    Ok((first != 0.0).then_some(first))
}

pub fn validate_starlike(
    g: &WeightedDigraph,
    part: &SeidelPartition,
) -> Result<Vec<StarlikeCellProfile>> {
    let report = validate_seidel(g, part)?;

    for (u, v, _) in g.edges() {
        if let (Some(a), Some(b)) = (part.cell_of(u), part.cell_of(v)) {
            if a != b {
                return Err(Error::CrossCellEdge(u, v));
            }
        }
    }

    let scale = 1.0 + g.edges().map(|(_, _, w)| w.abs()).fold(0.0, f64::max);
    let mut profiles = Vec::with_capacity(report.cells.len());
    for cats in &report.cells {
        let i = cats.cell;
        let cell = &part.cells()[i];

        let full: Vec<usize> = cats
            .categories
            .iter()
            .filter(|(_, c)| *c == Category::Full)
            .map(|&(v, _)| v)
            .collect();
        let into: Vec<f64> = full
            .iter()
            .flat_map(|&v| cell.iter().map(move |&c| g.weight(v, c)))
            .collect();
        let out_of: Vec<f64> = full
            .iter()
            .flat_map(|&v| cell.iter().map(move |&c| g.weight(c, v)))
            .collect();
        let w_plus = uniform(&into, scale).map_err(|_| Error::NonuniformCategory1Weights(i))?;
        let w_minus = uniform(&out_of, scale).map_err(|_| Error::NonuniformCategory1Weights(i))?;

        let half: Vec<usize> = cats
            .categories
            .iter()
            .filter(|(_, c)| *c == Category::Half)
            .map(|&(v, _)| v)
            .collect();
        if !half.len().is_multiple_of(2) {
            return Err(Error::OddCategory2Count {
                cell: i,
                count: half.len(),
            });
        }
        let (w_sup_plus, w_sup_minus) =
            check_halves(g, cell, &half, scale).ok_or(Error::NonComplementaryHalves(i))?;

        profiles.push(StarlikeCellProfile {
            cell: i,
            w_plus,
            w_minus,
            w_sup_plus,
            w_sup_minus,
            p: cats.p,
            q: cats.q,
        });
    }
    Ok(profiles)
}

/// Category-2 vertices must split evenly between one half of the cell and
/// its complement, with a single weight per direction. Returns the two
/// weights, or `None` on any violation.
fn check_halves(
    g: &WeightedDigraph,
    cell: &[usize],
    half: &[usize],
    scale: f64,
) -> Option<(Option<f64>, Option<f64>)> {
    let Some(&first) = half.first() else {
        return Some((None, None));
    };
    let attached = |v: usize| -> Vec<bool> {
        cell.iter()
            .map(|&c| g.weight(v, c) != 0.0 || g.weight(c, v) != 0.0)
            .collect()
    };
    let pattern = attached(first);
    let mut same = 0;
    for &v in half {
        let p = attached(v);
        if p == pattern {
            same += 1;
        } else if p.iter().zip(&pattern).any(|(a, b)| a == b) {
            return None;
        }
    }
    if 2 * same != half.len() {
        return None;
    }

    // within the attachment set each direction is either always present or
    // always absent, with one weight
    let mut into = Vec::new();
    let mut out_of = Vec::new();
    for &v in half {
        for (&c, on) in cell.iter().zip(attached(v)) {
            if on {
                into.push(g.weight(v, c));
                out_of.push(g.weight(c, v));
            }
        }
    }
    let w_in = uniform(&into, scale).ok()?;
    let w_out = uniform(&out_of, scale).ok()?;
    Some((w_in, w_out))
}

/// `H` with `A(H) = L(G)` or `A(H) = Q(G)`. Zero diagonal entries leave the
/// vertex loopless.
pub fn lift_to_h(g: &WeightedDigraph, kind: SpectralKind) -> Result<WeightedDigraph> {
    let m = kind.matrix(g)?;
    WeightedDigraph::from_adjacency(&m, 0.0)
}

/// Reads `G'` off a symmetric matrix `M` so that `L(G') = M` or `Q(G') = M`.
///
/// Signless case: loops are `(m_ii - sum_{j != i} |m_ij|) / 2` and must be
/// non-negative. Laplacian case: `L` does not see loops (a loop adds `|w|` to
/// the degree and `w` to the adjacency diagonal), so the diagonal has to
/// equal the off-diagonal absolute row sum and the result is loopless.
pub fn project_matrix(m: &DenseMatrix, kind: SpectralKind) -> Result<WeightedDigraph> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let snap = WEIGHT_TOL * entry_scale(m) * (n.max(1) as f64);
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > snap {
                return Err(Error::AsymmetricWeights(i, j));
            }
        }
    }
    let sign = kind.off_diagonal_sign();
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        let mut off_sum = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = m[(i, j)];
            if w.abs() > snap {
                g.add_edge(i, j, sign * w)?;
                off_sum += w.abs();
            }
        }
        let excess = m[(i, i)] - off_sum;
        match kind {
            SpectralKind::SignlessLaplacian => {
                let l = excess / 2.0;
                if l < -snap {
                    return Err(Error::NegativeLoopWeight {
                        vertex: i,
                        weight: l,
                    });
                }
                if l > snap {
                    g.add_edge(i, i, l)?;
                }
            }
            SpectralKind::Laplacian => {
                if excess.abs() > snap {
                    return Err(Error::InconsistentDiagonal { vertex: i });
                }
            }
        }
    }
    Ok(g)
}

/// Inverse of [`lift_to_h`].
pub fn project_from_h(h_pi: &WeightedDigraph, kind: SpectralKind) -> Result<WeightedDigraph> {
    project_matrix(&adjacency_matrix(h_pi), kind)
}

fn copy_loops(from: &WeightedDigraph, to: &mut WeightedDigraph) -> Result<()> {
    for v in 0..from.order() {
        to.set_weight(v, v, from.loop_weight(v))?;
    }
    Ok(())
}

/// `G'` with `M(G') = U M(G) U`, `M` being `L` or `Q` per `kind`.
///
/// For the Laplacian the loops of `G` are carried over to `G'`; `L` cannot
/// see them, so any choice is valid and this one keeps loops invariant.
pub fn lq_switch(
    g: &WeightedDigraph,
    part: &SeidelPartition,
    kind: SpectralKind,
) -> Result<WeightedDigraph> {
    validate_starlike(g, part)?;
    let h = lift_to_h(g, kind)?;
    let h_pi = apply_switch(&h, part)?;
    let mut g_prime = project_from_h(&h_pi, kind)?;
    if kind == SpectralKind::Laplacian {
        copy_loops(g, &mut g_prime)?;
    }
    Ok(g_prime)
}

/// Switching without the starlike checks: conjugates `M(G)` densely, reads
/// `G'` back and confirms cospectrality afterwards. Fails when the switched
/// matrix is not `L` or `Q` of any graph.
pub fn lq_switch_forced(
    g: &WeightedDigraph,
    part: &SeidelPartition,
    kind: SpectralKind,
) -> Result<WeightedDigraph> {
    if part.order() != g.order() {
        return Err(Error::OrderMismatch(g.order(), part.order()));
    }
    let m = kind.matrix(g)?;
    let u = part.operator_in_graph_order();
    let switched = &u * &m * &u;
    let mut g_prime = project_matrix(&switched, kind)?;
    if kind == SpectralKind::Laplacian {
        copy_loops(g, &mut g_prime)?;
    }
    let after = kind.matrix(&g_prime)?;
    if !cospectral(&m, &after, DEFAULT_SPECTRAL_TOL)? {
        let gap = crate::spectrum::spectral_gap(&m, &after)?;
        return Err(Error::VerificationFailed(gap));
    }
    Ok(g_prime)
}

/// True iff every loop weight agrees exactly.
pub fn loop_weights_preserved(g: &WeightedDigraph, g_prime: &WeightedDigraph) -> Result<bool> {
    if g.order() != g_prime.order() {
        return Err(Error::OrderMismatch(g.order(), g_prime.order()));
    }
    Ok((0..g.order()).all(|v| g.loop_weight(v) == g_prime.loop_weight(v)))
}
