//! Second-smallest Laplacian eigenvalue.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::MultiGraph;
use crate::error::{Error, Result};

/// Graphs with fewer vertices than this use a dense eigendecomposition.
pub const DENSE_LIMIT: usize = 512;

const TOLERANCE: f64 = 1e-9;

/// Dense Laplacian `D - A`; parallel edges add multiplicity.
pub fn laplacian(g: &MultiGraph) -> DMatrix<f64> {
    let n = g.num_vertices();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
    }
    l
}

/// Algebraic connectivity. Exactly zero for disconnected graphs.
pub fn lambda2(g: &MultiGraph) -> Result<f64> {
    let n = g.num_vertices();
    if n < 2 {
        return Err(Error::param(format!(
            "lambda2 needs at least 2 vertices, got {n}"
        )));
    }
    if !g.is_connected() {
        return Ok(0.0);
    }
    if n < DENSE_LIMIT {
        Ok(dense_lambda2(g))
    } else {
        Ok(lanczos_lambda2(g))
    }
}

fn dense_lambda2(g: &MultiGraph) -> f64 {
    let mut eig = SymmetricEigen::new(laplacian(g)).eigenvalues.as_slice().to_vec();
    eig.sort_by(f64::total_cmp);
    eig[1].max(0.0)
}

fn apply_laplacian(g: &MultiGraph, x: &DVector<f64>) -> DVector<f64> {
    let mut y = DVector::zeros(x.len());
    for v in 0..g.num_vertices() {
        let mut acc = g.degree(v) as f64 * x[v];
        for &(w, _) in g.neighbors(v) {
            acc -= x[w];
        }
        y[v] = acc;
    }
    y
}

fn deflate(x: &mut DVector<f64>) {
    let mean = x.sum() / x.len() as f64;
    x.add_scalar_mut(-mean);
}

/// Lanczos with full reorthogonalisation on the complement of the all-ones
/// vector. The smallest Ritz value there is lambda2.
fn lanczos_lambda2(g: &MultiGraph) -> f64 {
    let n = g.num_vertices();
    let mut q = DVector::from_fn(n, |i, _| ((i as f64 + 1.0) * 0.618_033_988_75).sin());
    deflate(&mut q);
    q /= q.norm();
    let mut basis: Vec<DVector<f64>> = vec![q];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let max_steps = n - 1;
    loop {
        let j = basis.len() - 1;
        let mut w = apply_laplacian(g, &basis[j]);
        alpha.push(basis[j].dot(&w));
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
            deflate(&mut w);
        }
        let b = w.norm();
        let m = alpha.len();
        let check_every = if m < 100 { 10 } else { 25 };
        let finished = b < TOLERANCE || m >= max_steps;
        if finished || m.is_multiple_of(check_every) {
            let (ritz, tail) = smallest_ritz(&alpha, &beta);
            if finished || b * tail < TOLERANCE {
                return ritz.max(0.0);
            }
        }
        beta.push(b);
        basis.push(w / b);
    }
}

/// Smallest eigenvalue of the Lanczos tridiagonal and the magnitude of the
/// last component of its eigenvector.
fn smallest_ritz(alpha: &[f64], beta: &[f64]) -> (f64, f64) {
    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (idx, &ritz) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    (ritz, eig.eigenvectors[(m - 1, idx)].abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn small_examples() {
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!((lambda2(&g).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(lambda2(&MultiGraph::new(4)).unwrap(), 0.0);
        assert!((lambda2(&complete(4)).unwrap() - 4.0).abs() < 1e-9);
        assert!(lambda2(&MultiGraph::new(1)).is_err());
    }

    #[test]
    fn parallel_edges_count() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!((lambda2(&g).unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn cycle_graph_closed_form() {
        let n = 10;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = MultiGraph::from_edges(n, &edges).unwrap();
        let expected = 2.0 - 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
        assert!((lambda2(&g).unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn lanczos_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 600;
        let mut g = MultiGraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).unwrap();
        }
        for _ in 0..900 {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                g.add_edge(u, v).unwrap();
            }
        }
        let dense = dense_lambda2(&g);
        let sparse = lanczos_lambda2(&g);
        assert!((dense - sparse).abs() < 1e-8, "dense {dense} lanczos {sparse}");
    }
}
