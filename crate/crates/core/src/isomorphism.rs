//! Exhaustive isomorphism test for small weighted multi-digraphs.

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

pub const MAX_BRUTE_FORCE_ORDER: usize = 12;

const WEIGHT_EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
struct VertexSignature {
    loop_weight: f64,
    out_weights: Vec<f64>,
    in_weights: Vec<f64>,
}

impl VertexSignature {
    fn of(g: &WeightedDigraph, v: usize) -> Self {
        let mut out_weights = Vec::new();
        let mut in_weights = Vec::new();
        for u in 0..g.order() {
            if u == v {
                continue;
            }
            let w = g.weight(v, u);
            if w != 0.0 {
                out_weights.push(w);
            }
            let w = g.weight(u, v);
            if w != 0.0 {
                in_weights.push(w);
            }
        }
        out_weights.sort_by(f64::total_cmp);
        in_weights.sort_by(f64::total_cmp);
        Self {
            loop_weight: g.loop_weight(v),
            out_weights,
            in_weights,
        }
    }

    fn matches(&self, other: &Self, tol: f64) -> bool {
        let same = |a: &[f64], b: &[f64]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
        };
        (self.loop_weight - other.loop_weight).abs() <= tol
            && same(&self.out_weights, &other.out_weights)
            && same(&self.in_weights, &other.in_weights)
    }
}

struct Search<'a> {
    g: &'a WeightedDigraph,
    h: &'a WeightedDigraph,
    candidates: Vec<Vec<usize>>,
    visit_order: Vec<usize>,
    mapping: Vec<Option<usize>>,
    used: Vec<bool>,
    tol: f64,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= self.tol;
        self.visit_order.iter().all(|&u| match self.mapping[u] {
            Some(x) => {
                close(self.g.weight(v, u), self.h.weight(w, x))
                    && close(self.g.weight(u, v), self.h.weight(x, w))
            }
            None => true,
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.visit_order.len() {
            return true;
        }
        let v = self.visit_order[depth];
        for idx in 0..self.candidates[v].len() {
            let w = self.candidates[v][idx];
            if self.used[w] || !self.consistent(v, w) {
                continue;
            }
            self.mapping[v] = Some(w);
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.mapping[v] = None;
            self.used[w] = false;
        }
        false
    }
}

/// Searches for a bijection `f` with `w(u, v) = w(f(u), f(v))` for every
/// ordered pair, loops included. Candidates are pruned by loop weight and the
/// multisets of outgoing and incoming weights.
pub fn find_isomorphism(g: &WeightedDigraph, h: &WeightedDigraph) -> Result<Option<Vec<usize>>> {
    let largest = g.order().max(h.order());
    if largest > MAX_BRUTE_FORCE_ORDER {
        return Err(Error::TooLarge(largest));
    }
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let n = g.order();
    let scale = 1.0
        + g.edges()
            .chain(h.edges())
            .map(|(_, _, w)| w.abs())
            .fold(0.0, f64::max);
    let tol = WEIGHT_EQ_TOL * scale;

    let sig_g: Vec<_> = (0..n).map(|v| VertexSignature::of(g, v)).collect();
    let sig_h: Vec<_> = (0..n).map(|v| VertexSignature::of(h, v)).collect();
    let candidates: Vec<Vec<usize>> = sig_g
        .iter()
        .map(|s| (0..n).filter(|&w| s.matches(&sig_h[w], tol)).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut visit_order: Vec<usize> = (0..n).collect();
    visit_order.sort_by_key(|&v| candidates[v].len());

    let mut search = Search {
        g,
        h,
        candidates,
        visit_order,
        mapping: vec![None; n],
        used: vec![false; n],
        tol,
    };
    if search.extend(0) {
        Ok(Some(
            search
                .mapping
                .into_iter()
                .map(|m| m.expect("complete"))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

pub fn brute_force_isomorphic(g: &WeightedDigraph, h: &WeightedDigraph) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}
