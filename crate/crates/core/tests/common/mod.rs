//! Shared helpers for the integration targets: independent numerical
//! oracles (no nalgebra linear algebra) and random graph generators.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seidel_core::io::read_document;
use seidel_core::{DenseMatrix, SeidelPartition, WeightedDigraph};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.graph"))
}

pub fn fixture(name: &str) -> (WeightedDigraph, Option<SeidelPartition>) {
    let doc = read_document(&fixture_path(name)).expect("fixture parses");
    (doc.graph().unwrap(), doc.seidel_partition().unwrap())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// oracles

pub type Rows = Vec<Vec<f64>>;

pub fn to_rows(m: &DenseMatrix) -> Rows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn naive_mul(a: &Rows, b: &Rows) -> Rows {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for t in 0..k {
            for j in 0..m {
                c[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    c
}

/// `U_n` written entry by entry.
pub fn naive_seidel(n: usize) -> Rows {
    let nf = n as f64;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2.0 / nf - 1.0 } else { 2.0 / nf })
                .collect()
        })
        .collect()
}

/// Switching operator in graph order, from the partition alone.
pub fn naive_operator(part: &SeidelPartition) -> Rows {
    let n = part.order();
    let mut u = vec![vec![0.0; n]; n];
    for &v in part.d_cell() {
        u[v][v] = 1.0;
    }
    for cell in part.cells() {
        let k = cell.len() as f64;
        for &a in cell {
            for &b in cell {
                u[a][b] = if a == b { 2.0 / k - 1.0 } else { 2.0 / k };
            }
        }
    }
    u
}

pub fn graph_rows(g: &WeightedDigraph) -> Rows {
    let n = g.order();
    (0..n)
        .map(|i| (0..n).map(|j| g.weight(i, j)).collect())
        .collect()
}

pub fn max_diff(a: &Rows, b: &Rows) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix; ascending.
pub fn jacobi_eigenvalues(m: &Rows) -> Vec<f64> {
    let n = m.len();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * rp[k] - s * rq[k];
                    a[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn det_mod(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = (PRIME - det) % PRIME;
        }
        det = mul_mod(det, m[col][col]);
        let inv = pow_mod(m[col][col], PRIME - 2);
        let pivot_row = m[col].clone();
        for row in &mut m[col + 1..] {
            let f = mul_mod(row[col], inv);
            for (x, &p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + PRIME - mul_mod(f, p)) % PRIME;
            }
        }
    }
    det
}

/// Whether two dyadic matrices have the same characteristic polynomial.
/// Both are scaled by one power of two to integers, then `det(xI - M)` is
/// compared modulo a 61-bit prime at `n + 1` points. Exact, so it is immune
/// to the conditioning of defective eigenvalues.
pub fn same_char_poly(a: &Rows, b: &Rows) -> bool {
    let n = a.len();
    assert_eq!(n, b.len());
    let shift = (0..=40)
        .find(|&s| {
            a.iter().chain(b).flatten().all(|&x| {
                let y = x * (1u64 << s) as f64;
                y.fract() == 0.0 && y.abs() < 2f64.powi(53)
            })
        })
        .expect("entries are dyadic");
    let reduce = |x: f64| {
        let y = (x * (1u64 << shift) as f64) as i64;
        y.rem_euclid(PRIME as i64) as u64
    };
    (0..=n as u64).all(|x| {
        let shifted = |m: &Rows| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let diag = if i == j { x } else { 0 };
                            (diag + PRIME - reduce(m[i][j])) % PRIME
                        })
                        .collect()
                })
                .collect()
        };
        det_mod(shifted(a)) == det_mod(shifted(b))
    })
}

/// Laplacian `D - A` with `d_i = sum_j |a_ij|`, written out directly.
pub fn naive_laplacian(g: &WeightedDigraph, signless: bool) -> Rows {
    let a = graph_rows(g);
    let n = a.len();
    let sign = if signless { 1.0 } else { -1.0 };
    (0..n)
        .map(|i| {
            let d: f64 = a[i].iter().map(|w| w.abs()).sum();
            (0..n)
                .map(|j| sign * a[i][j] + if i == j { d } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Squared operator Schmidt coefficients as the eigenvalues of `R R^T`,
/// `R` being the realignment built entry by entry; descending.
pub fn squared_schmidt_oracle(u: &Rows, m: usize, n: usize) -> Vec<f64> {
    let mut r = vec![vec![0.0; n * n]; m * m];
    for i in 0..m {
        for j in 0..m {
            for a in 0..n {
                for b in 0..n {
                    r[i * m + j][a * n + b] = u[i * n + a][j * n + b];
                }
            }
        }
    }
    let rt: Rows = (0..n * n)
        .map(|c| (0..m * m).map(|row| r[row][c]).collect())
        .collect();
    let mut ev = jacobi_eigenvalues(&naive_mul(&r, &rt));
    ev.reverse();
    ev
}

/// Roots of `x^2 - mn x + 4 (m-1)(n-1)`, the squared Schmidt coefficients
/// of `U_{mn}` across `m x n`; descending.
pub fn seidel_schmidt_closed_form(m: usize, n: usize) -> (f64, f64) {
    let order = (m * n) as f64;
    let c = 4.0 * (m as f64 - 1.0) * (n as f64 - 1.0);
    let disc = (order * order - 4.0 * c).sqrt();
    ((order + disc) / 2.0, (order - disc) / 2.0)
}

pub fn shannon_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Random real orthogonal matrix from Gram-Schmidt on a random matrix.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> Rows {
    let mut q: Rows = Vec::with_capacity(n);
    while q.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for u in &q {
                let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= d * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            q.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    q
}

pub fn kron(a: &Rows, b: &Rows) -> Rows {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![0.0; ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn to_dense(r: &Rows) -> DenseMatrix {
    DenseMatrix::from_fn(r.len(), r[0].len(), |i, j| r[i][j])
}

// ---------------------------------------------------------------------------
// generators
//
// Weights are small dyadic rationals and cell sizes are powers of two, so
// every switching step is exact in floating point.

pub const CELL_SIZES: [usize; 3] = [2, 4, 8];

fn dyadic<R: Rng>(rng: &mut R, allow_negative: bool) -> f64 {
    let mag = rng.gen_range(1..=8) as f64 / 4.0;
    if allow_negative && rng.gen_bool(0.3) {
        -mag
    } else {
        mag
    }
}

/// Circulant block on `set`: `w(set[i], set[i+s])` equal for each shift `s`.
/// Every signed and absolute row and column sum agree. `symmetric` pairs the
/// shifts `s` and `n - s`.
fn circulant<R: Rng>(
    rng: &mut R,
    set: &[usize],
    symmetric: bool,
    allow_negative: bool,
    edges: &mut Vec<(usize, usize, f64)>,
) {
    let n = set.len();
    if n == 0 {
        return;
    }
    let mut weights = vec![0.0; n];
    if rng.gen_bool(0.3) {
        weights[0] = dyadic(rng, false);
    }
    let mut any = false;
    for s in 1..n {
        if symmetric && s > n - s {
            weights[s] = weights[n - s];
            continue;
        }
        if rng.gen_bool(0.5) {
            weights[s] = dyadic(rng, allow_negative);
            any = true;
        }
    }
    if !any && n > 1 {
        let s = rng.gen_range(1..n);
        let w = dyadic(rng, allow_negative);
        weights[s] = w;
        if symmetric {
            weights[n - s] = w;
        }
    }
    for i in 0..n {
        for (s, &w) in weights.iter().enumerate() {
            if w != 0.0 {
                edges.push((set[i], set[(i + s) % n], w));
            }
        }
    }
}

fn split_cells<R: Rng>(
    rng: &mut R,
    sizes: &[usize],
    d_size: usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let order: usize = sizes.iter().sum::<usize>() + d_size;
    let mut labels: Vec<usize> = (0..order).collect();
    labels.shuffle(rng);
    let mut at = 0;
    let cells = sizes
        .iter()
        .map(|&k| {
            let c = labels[at..at + k].to_vec();
            at += k;
            c
        })
        .collect();
    (cells, labels[at..].to_vec())
}

/// One direction of a `D`-cell attachment that stays valid under switching:
/// empty, constant, two-valued over the halves of `split`, or one of those
/// halves. Both directions share `split` so their union is a half or all.
fn attachment<R: Rng>(rng: &mut R, split: &[usize]) -> Vec<f64> {
    let n = split.len();
    let (first, second) = split.split_at(n / 2);
    let mut x = vec![0.0; n];
    match rng.gen_range(0..4) {
        0 => {}
        1 => x.fill(dyadic(rng, true)),
        2 => {
            let (a, b) = (dyadic(rng, true), dyadic(rng, true));
            first.iter().for_each(|&i| x[i] = a);
            second.iter().for_each(|&i| x[i] = b);
        }
        _ => {
            let a = dyadic(rng, true);
            let side = if rng.gen_bool(0.5) { first } else { second };
            side.iter().for_each(|&i| x[i] = a);
        }
    }
    x
}

/// Random Seidel graph together with its partition. Directed, signed,
/// possibly with loops and cross-cell edges.
pub fn random_seidel_graph(seed: u64) -> (WeightedDigraph, SeidelPartition) {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=3);
    let sizes: Vec<usize> = (0..k)
        .map(|_| *CELL_SIZES.choose(&mut rng).unwrap())
        .collect();
    let d_size = rng.gen_range(0..=3);
    let (cells, d) = split_cells(&mut rng, &sizes, d_size);
    let order = sizes.iter().sum::<usize>() + d_size;

    let mut edges = Vec::new();
    for cell in &cells {
        circulant(&mut rng, cell, false, true, &mut edges);
    }
    circulant(&mut rng, &d, false, true, &mut edges);
    for cell in &cells {
        for &v in &d {
            let mut split: Vec<usize> = (0..cell.len()).collect();
            split.shuffle(&mut rng);
            let out = attachment(&mut rng, &split);
            let back = attachment(&mut rng, &split);
            for (i, &c) in cell.iter().enumerate() {
                if out[i] != 0.0 {
                    edges.push((v, c, out[i]));
                }
                if back[i] != 0.0 {
                    edges.push((c, v, back[i]));
                }
            }
        }
    }
    for (i, a) in cells.iter().enumerate() {
        for b in cells.iter().skip(i + 1) {
            for &u in a {
                for &v in b {
                    if rng.gen_bool(0.2) {
                        edges.push((u, v, dyadic(&mut rng, true)));
                    }
                    if rng.gen_bool(0.2) {
                        edges.push((v, u, dyadic(&mut rng, true)));
                    }
                }
            }
        }
    }
    let g = WeightedDigraph::from_edges(order, edges).unwrap();
    let part = SeidelPartition::new(order, cells, d).unwrap();
    (g, part)
}

/// Random symmetric starlike graph with its partition. Every cell has an
/// internal edge, so `L` is nonzero.
pub fn random_starlike_graph(seed: u64) -> (WeightedDigraph, SeidelPartition) {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=3);
    let sizes: Vec<usize> = (0..k)
        .map(|_| *CELL_SIZES.choose(&mut rng).unwrap())
        .collect();
    let d_size = rng.gen_range(1..=5);
    let (cells, d) = split_cells(&mut rng, &sizes, d_size);
    let order = sizes.iter().sum::<usize>() + d_size;

    let mut edges = Vec::new();
    for cell in &cells {
        circulant(&mut rng, cell, true, true, &mut edges);
    }
    circulant(&mut rng, &d, true, true, &mut edges);
    let push_sym = |edges: &mut Vec<(usize, usize, f64)>, u: usize, v: usize, w: f64| {
        edges.push((u, v, w));
        edges.push((v, u, w));
    };
    for cell in &cells {
        let n = cell.len();
        let mut order_d = d.clone();
        order_d.shuffle(&mut rng);
        let max_q = (d.len() / 2) * 2;
        let q = 2 * rng.gen_range(0..=max_q / 2);
        let p = rng.gen_range(0..=d.len() - q);
        let w1 = dyadic(&mut rng, true);
        let w2 = dyadic(&mut rng, true);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        let (half, rest) = idx.split_at(n / 2);
        for (t, &v) in order_d.iter().enumerate() {
            if t < q {
                let side = if t % 2 == 0 { half } else { rest };
                for &i in side {
                    push_sym(&mut edges, v, cell[i], w2);
                }
            } else if t < q + p {
                for &c in cell {
                    push_sym(&mut edges, v, c, w1);
                }
            }
        }
    }
    let g = WeightedDigraph::from_edges(order, edges).unwrap();
    let part = SeidelPartition::new(order, cells, d).unwrap();
    (g, part)
}

/// Random permutation of `0..n`.
pub fn random_permutation(seed: u64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}

pub fn relabel(g: &WeightedDigraph, perm: &[usize]) -> WeightedDigraph {
    WeightedDigraph::from_edges(g.order(), g.edges().map(|(u, v, w)| (perm[u], perm[v], w)))
        .unwrap()
}
