#![allow(dead_code, clippy::needless_range_loop)]

use graph_energy::{Graph, RealMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Cyclic Jacobi rotations: an eigenvalue oracle independent of the
/// Householder/QL path under test.
pub fn jacobi_eigenvalues(m: &RealMatrix) -> Vec<f64> {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    d.sort_by(|x, y| y.total_cmp(x));
    d
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n, n).unwrap();
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-1.0..1.0);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: f64, hi: f64) -> RealMatrix {
    let data = (0..m * n).map(|_| rng.gen_range(lo..=hi)).collect();
    RealMatrix::new(m, n, data).unwrap()
}

/// G(n, q) with the edge probability `q` itself drawn uniformly.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let q: f64 = rng.gen();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(q) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k).into_vec()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            for j in (i * i..=limit).step_by(i) {
                is[j] = false;
            }
        }
        i += 1;
    }
    is
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol:e})");
}
