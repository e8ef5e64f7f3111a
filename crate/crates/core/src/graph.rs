//! Weighted multi-digraphs and the matrices derived from them.
//!
//! A graph stores at most one weight per ordered vertex pair, so two vertices
//! are joined by at most two oppositely oriented edges. Loops are the pairs
//! `(v, v)` and must carry a positive weight. A weight of exactly zero means
//! "no edge" and is never stored.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense real matrix used for every materialized operator in the crate.
pub type DenseMatrix = DMatrix<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    order: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl WeightedDigraph {
    /// Edgeless graph on `order` vertices.
    pub fn new(order: usize) -> Self {
        Self {
            order,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from directed `(u, v, w)` triples.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::new(order);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Builds a graph where every triple is inserted in both directions with
    /// the same weight. Loops are inserted once.
    pub fn undirected<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::new(order);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
            if u != v {
                g.add_edge(v, u, w)?;
            }
        }
        Ok(g)
    }

    /// Reads a graph off a square matrix. Entries with magnitude at most
    /// `zero_tol` are treated as absent edges.
    pub fn from_adjacency(a: &DenseMatrix, zero_tol: f64) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::NotSquare(a.nrows(), a.ncols()));
        }
        let mut g = Self::new(a.nrows());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let w = a[(i, j)];
                if w.abs() > zero_tol {
                    g.add_edge(i, j, w)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_entry(u, v, w)?;
        if self.edges.contains_key(&(u, v)) {
            return Err(Error::ParallelEdges(u, v));
        }
        self.edges.insert((u, v), w);
        Ok(())
    }

    /// Sets the weight of `(u, v)`, replacing any existing edge. Zero removes it.
    pub fn set_weight(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if w == 0.0 {
            self.check_index(u)?;
            self.check_index(v)?;
            self.edges.remove(&(u, v));
            return Ok(());
        }
        self.check_entry(u, v, w)?;
        self.edges.insert((u, v), w);
        Ok(())
    }

    fn check_index(&self, v: usize) -> Result<()> {
        if v >= self.order {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        Ok(())
    }

    fn check_entry(&self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if !w.is_finite() {
            return Err(Error::NonFiniteWeight(u, v));
        }
        if w == 0.0 {
            return Err(Error::ZeroWeight(u, v));
        }
        if u == v && w < 0.0 {
            return Err(Error::NonPositiveLoop {
                vertex: u,
                weight: w,
            });
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Weight of `(u, v)`, or 0 when absent.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.edges.get(&(u, v)).copied().unwrap_or(0.0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u, v))
    }

    pub fn loop_weight(&self, v: usize) -> f64 {
        self.weight(v, v)
    }

    /// Stored edges in `(u, v)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// First ordered pair `(i, j)` with `w(i,j) != w(j,i)`, if any.
    pub fn asymmetric_pair(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .find(|(&(u, v), &w)| u != v && self.weight(v, u) != w)
            .map(|(&(u, v), _)| (u.min(v), u.max(v)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_pair().is_none()
    }

    fn require_symmetric(&self) -> Result<()> {
        match self.asymmetric_pair() {
            Some((i, j)) => Err(Error::AsymmetricWeights(i, j)),
            None => Ok(()),
        }
    }

    /// Vertex degrees `d_i = sum_j |a_ij|`, loops counted once.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.order];
        for (&(u, _), &w) in &self.edges {
            d[u] += w.abs();
        }
        d
    }
}

pub fn adjacency_matrix(g: &WeightedDigraph) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(g.order, g.order);
    for (u, v, w) in g.edges() {
        a[(u, v)] = w;
    }
    a
}

pub fn degree_matrix(g: &WeightedDigraph) -> DenseMatrix {
    DenseMatrix::from_diagonal(&nalgebra::DVector::from_vec(g.degrees()))
}

/// `L = D - A`. Requires `w(i,j) = w(j,i)` for every pair.
pub fn laplacian(g: &WeightedDigraph) -> Result<DenseMatrix> {
    g.require_symmetric()?;
    Ok(directed_laplacian(g))
}

/// `Q = D + A`. Requires `w(i,j) = w(j,i)` for every pair.
pub fn signless_laplacian(g: &WeightedDigraph) -> Result<DenseMatrix> {
    g.require_symmetric()?;
    Ok(directed_signless_laplacian(g))
}

/// `D - A` with out-degrees and no symmetry requirement. Agrees with
/// [`laplacian`] on symmetric graphs; on digraphs the result is not
/// symmetric and its spectrum may be complex.
pub fn directed_laplacian(g: &WeightedDigraph) -> DenseMatrix {
    degree_matrix(g) - adjacency_matrix(g)
}

/// `D + A` with out-degrees and no symmetry requirement.
pub fn directed_signless_laplacian(g: &WeightedDigraph) -> DenseMatrix {
    degree_matrix(g) + adjacency_matrix(g)
}

/// `1 + max |m_ij|`, the scale used for absolute comparisons.
pub fn entry_scale(m: &DenseMatrix) -> f64 {
    1.0 + m.amax()
}

/// Largest absolute entrywise difference. Panics on shape mismatch.
pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    (a - b).amax()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> WeightedDigraph {
        WeightedDigraph::undirected(2, [(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            adjacency_matrix(&k2()),
            DenseMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
        );
        assert_eq!(
            adjacency_matrix(&WeightedDigraph::new(3)),
            DenseMatrix::zeros(3, 3)
        );
        let looped = WeightedDigraph::from_edges(1, [(0, 0, 2.0)]).unwrap();
        assert_eq!(adjacency_matrix(&looped)[(0, 0)], 2.0);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_matrix(&k2()), DenseMatrix::identity(2, 2));
        let neg = WeightedDigraph::from_edges(2, [(0, 1, -2.0), (1, 0, -2.0)]).unwrap();
        assert_eq!(
            degree_matrix(&neg),
            DenseMatrix::from_diagonal_element(2, 2, 2.0)
        );
        let looped = WeightedDigraph::from_edges(1, [(0, 0, 2.0)]).unwrap();
        assert_eq!(degree_matrix(&looped)[(0, 0)], 2.0);
    }

    #[test]
    fn laplacian_examples() {
        let l = laplacian(&k2()).unwrap();
        let q = signless_laplacian(&k2()).unwrap();
        assert_eq!(
            l,
            DenseMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0])
        );
        assert_eq!(q, DenseMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));

        let path = WeightedDigraph::undirected(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(
            laplacian(&path).unwrap(),
            DenseMatrix::from_row_slice(3, 3, &[1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0])
        );

        let asym = WeightedDigraph::from_edges(2, [(0, 1, 1.0), (1, 0, 2.0)]).unwrap();
        assert_eq!(laplacian(&asym), Err(Error::AsymmetricWeights(0, 1)));
        assert_eq!(
            signless_laplacian(&asym),
            Err(Error::AsymmetricWeights(0, 1))
        );
        let one_way = WeightedDigraph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        assert!(laplacian(&one_way).is_err());
    }

    #[test]
    fn loop_counts_once_in_laplacian_trace() {
        let g = WeightedDigraph::from_edges(2, [(0, 0, 3.0), (0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let l = laplacian(&g).unwrap();
        let d: f64 = g.degrees().iter().sum();
        assert_eq!(l.trace(), d - 3.0);
        // loops are invisible to L under the |a_ii|-once convention
        assert_eq!(l[(0, 0)], 1.0);
        assert_eq!(signless_laplacian(&g).unwrap()[(0, 0)], 7.0);
    }

    #[test]
    fn storage_invariants() {
        let mut g = WeightedDigraph::new(3);
        g.add_edge(0, 1, 1.5).unwrap();
        assert_eq!(g.add_edge(0, 1, 2.0), Err(Error::ParallelEdges(0, 1)));
        assert_eq!(g.add_edge(1, 2, 0.0), Err(Error::ZeroWeight(1, 2)));
        assert!(matches!(
            g.add_edge(2, 2, -1.0),
            Err(Error::NonPositiveLoop { vertex: 2, .. })
        ));
        assert!(matches!(
            g.add_edge(0, 3, 1.0),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        g.set_weight(0, 1, 0.0).unwrap();
        assert_eq!(g.edge_count(), 0);
    }
}
