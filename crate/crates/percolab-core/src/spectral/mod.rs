//! Adjacency spectrum of regular graphs.
//!
//! Only two numbers matter downstream: the second-largest adjacency
//! eigenvalue and the smallest one. Small graphs go through a dense
//! symmetric eigensolver; larger ones use Lanczos with full
//! reorthogonalization, restricted to the complement of the all-ones
//! eigenvector (valid because the graph is regular, so the all-ones
//! direction is an exact eigenvector and its complement is invariant).

mod certify;
mod enumerate;

pub use certify::{
    brute_force_certify, certify, harper_lower_bound, small_set_bound, spectral_certify,
    CertifyOptions, CertifyRoute, ExpansionCertificate, ExpansionProperty, Verdict, CERT_SLACK,
};
pub use enumerate::{for_each_connected_set, for_each_connected_set_at};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::stream;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Largest graph handled by the dense eigensolver.
pub const DENSE_EIGEN_LIMIT: usize = 2000;

/// Lanczos basis size cap; also bounds memory at `n * MAX_LANCZOS_ITERS`
/// floats.
const MAX_LANCZOS_ITERS: usize = 300;

/// Fixed seed for the Lanczos start vector, so spectra are reproducible.
const LANCZOS_SEED: u64 = 0x0051_AC05;

/// Extremes of the adjacency spectrum away from the trivial top
/// eigenvalue, plus the verified accuracy of both eigenpairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralGap {
    /// Second-largest adjacency eigenvalue, with sign.
    pub lambda2: f64,
    /// Smallest adjacency eigenvalue.
    pub lambda_min: f64,
    /// Max over both reported eigenpairs of `||A v - lambda v||`.
    pub residual: f64,
}

impl SpectralGap {
    /// Largest absolute nontrivial eigenvalue, the quantity bounded in
    /// `(n, d, lambda)`-graph arguments.
    pub fn lambda_abs(&self) -> f64 {
        self.lambda2.abs().max(self.lambda_min.abs())
    }
}

/// `y = A x` using the adjacency lists.
fn matvec(g: &Graph, x: &DVector<f64>) -> DVector<f64> {
    let mut y = DVector::zeros(g.n());
    for &(u, v) in g.edges() {
        y[u as usize] += x[v as usize];
        y[v as usize] += x[u as usize];
    }
    y
}

fn residual_norm(g: &Graph, value: f64, vector: &DVector<f64>) -> f64 {
    let scale = vector.norm();
    if scale == 0.0 {
        return f64::INFINITY;
    }
    (matvec(g, vector) - vector * value).norm() / scale
}

/// Computes the second-largest and smallest adjacency eigenvalues of a
/// regular graph, certified to `tol` by explicit residuals.
pub fn second_eigenvalue(g: &Graph, tol: f64) -> Result<SpectralGap> {
    if !g.is_regular() {
        return Err(Error::NotRegular);
    }
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "spectral gap needs at least 2 vertices".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if g.n() <= DENSE_EIGEN_LIMIT {
        dense_extremes(g, tol)
    } else {
        lanczos_extremes(g, tol)
    }
}

fn dense_extremes(g: &Graph, tol: f64) -> Result<SpectralGap> {
    let n = g.n();
    let mut a: DMatrix<f64> = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let eigen = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[i]
            .partial_cmp(&eigen.eigenvalues[j])
            .expect("adjacency eigenvalues are finite")
    });
    let second = order[n - 2];
    let bottom = order[0];
    let gap = SpectralGap {
        lambda2: eigen.eigenvalues[second],
        lambda_min: eigen.eigenvalues[bottom],
        residual: residual_norm(g, eigen.eigenvalues[second], &eigen.eigenvectors.column(second).into())
            .max(residual_norm(g, eigen.eigenvalues[bottom], &eigen.eigenvectors.column(bottom).into())),
    };
    if gap.residual <= tol {
        Ok(gap)
    } else {
        Err(Error::EigenNonConvergence(1))
    }
}

fn project_out_ones(v: &mut DVector<f64>) {
    let mean = v.sum() / v.len() as f64;
    v.add_scalar_mut(-mean);
}

fn lanczos_extremes(g: &Graph, tol: f64) -> Result<SpectralGap> {
    let n = g.n();
    let max_iter = MAX_LANCZOS_ITERS.min(n - 1);
    let mut rng = stream(LANCZOS_SEED);
    let mut v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
    project_out_ones(&mut v);
    let norm = v.norm();
    if norm < 1e-9 {
        return Err(Error::EigenNonConvergence(0));
    }
    v /= norm;

    let mut basis: Vec<DVector<f64>> = vec![v.clone()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut exhausted = false;

    for k in 0..max_iter {
        let mut w = matvec(g, &basis[k]);
        project_out_ones(&mut w);
        let alpha = basis[k].dot(&w);
        alphas.push(alpha);
        w.axpy(-alpha, &basis[k], 1.0);
        if k > 0 {
            w.axpy(-betas[k - 1], &basis[k - 1], 1.0);
        }
        // Full reorthogonalization keeps Ritz values honest at the cost
        // of O(k n) per step.
        for u in &basis {
            let c = u.dot(&w);
            w.axpy(-c, u, 1.0);
        }
        project_out_ones(&mut w);
        let beta = w.norm();

        let should_check = beta < 1e-10 || k + 1 == max_iter || (k >= 10 && k % 5 == 0);
        if should_check {
            if let Some(gap) = ritz_extremes(g, &basis, &alphas, &betas, tol) {
                return Ok(gap);
            }
            if beta < 1e-10 {
                exhausted = true;
                break;
            }
        }
        if beta < 1e-10 {
            exhausted = true;
            break;
        }
        betas.push(beta);
        basis.push(w / beta);
    }
    let _ = exhausted;
    Err(Error::EigenNonConvergence(max_iter))
}

/// Solves the current tridiagonal projection, assembles the extreme Ritz
/// vectors, and accepts them when their true residuals meet `tol`.
fn ritz_extremes(
    g: &Graph,
    basis: &[DVector<f64>],
    alphas: &[f64],
    betas: &[f64],
    tol: f64,
) -> Option<SpectralGap> {
    let k = alphas.len();
    let mut t: DMatrix<f64> = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eigen = t.symmetric_eigen();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[i]
            .partial_cmp(&eigen.eigenvalues[j])
            .expect("Ritz values are finite")
    });
    let hi = order[k - 1];
    let lo = order[0];

    let assemble = |col: usize| -> DVector<f64> {
        let mut y = DVector::zeros(g.n());
        for (i, u) in basis.iter().take(k).enumerate() {
            y.axpy(eigen.eigenvectors[(i, col)], u, 1.0);
        }
        y
    };
    let y_hi = assemble(hi);
    let y_lo = assemble(lo);
    let residual = residual_norm(g, eigen.eigenvalues[hi], &y_hi)
        .max(residual_norm(g, eigen.eigenvalues[lo], &y_lo));
    if residual <= tol {
        Some(SpectralGap {
            lambda2: eigen.eigenvalues[hi],
            lambda_min: eigen.eigenvalues[lo],
            residual,
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, Graph};
    use approx::assert_abs_diff_eq;

    /// Petersen graph as the Kneser graph of 2-subsets of a 5-set.
    fn petersen() -> Graph {
        let pairs: Vec<(u32, u32)> = (0..5u32)
            .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn dense_known_spectra() {
        let tol = 1e-8;
        let k5 = second_eigenvalue(&complete(5).unwrap(), tol).unwrap();
        assert_abs_diff_eq!(k5.lambda2, -1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(k5.lambda_min, -1.0, epsilon = 1e-8);

        let c6 = second_eigenvalue(&cycle(6).unwrap(), tol).unwrap();
        assert_abs_diff_eq!(c6.lambda2, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c6.lambda_min, -2.0, epsilon = 1e-8);

        let q4 = second_eigenvalue(&hypercube(4).unwrap(), tol).unwrap();
        assert_abs_diff_eq!(q4.lambda2, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(q4.lambda_min, -4.0, epsilon = 1e-8);

        let pet = second_eigenvalue(&petersen(), tol).unwrap();
        assert_abs_diff_eq!(pet.lambda2, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(pet.lambda_min, -2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(pet.lambda_abs(), 2.0, epsilon = 1e-8);
    }

    #[test]
    fn two_vertex_graph() {
        let k2 = second_eigenvalue(&complete(2).unwrap(), 1e-8).unwrap();
        assert_abs_diff_eq!(k2.lambda2, -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(k2.lambda_min, -1.0, epsilon = 1e-10);
    }

    #[test]
    fn disconnected_regular_graph_has_lambda2_equal_degree() {
        // Two disjoint triangles: the top eigenvalue 2 has multiplicity 2.
        let g = Graph::from_edges(6, vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let gap = second_eigenvalue(&g, 1e-8).unwrap();
        assert_abs_diff_eq!(gap.lambda2, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn irregular_graph_is_rejected() {
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(second_eigenvalue(&path, 1e-8), Err(Error::NotRegular)));
    }

    #[test]
    fn lanczos_matches_dense() {
        let tol = 1e-7;
        for g in [hypercube(6).unwrap(), cycle(200).unwrap(), petersen()] {
            let dense = dense_extremes(&g, tol).unwrap();
            let lanczos = lanczos_extremes(&g, tol).unwrap();
            assert_abs_diff_eq!(lanczos.lambda2, dense.lambda2, epsilon = 1e-6);
            assert_abs_diff_eq!(lanczos.lambda_min, dense.lambda_min, epsilon = 1e-6);
            assert!(lanczos.residual <= tol);
        }
    }

    #[test]
    fn residuals_are_reported() {
        let gap = second_eigenvalue(&hypercube(5).unwrap(), 1e-8).unwrap();
        assert!(gap.residual <= 1e-8);
        assert!(gap.residual >= 0.0);
    }
}
