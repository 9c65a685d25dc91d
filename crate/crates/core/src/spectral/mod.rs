//! Numeric spectral layer: eigendecomposition into grouped eigenspaces and
//! spectral idempotents, plus closed forms for the `T(l, m)` family.

mod eigvec;
mod jacobi;
mod theta;

pub use eigvec::{
    beta_plus_roots, eigenvector_simple, eigenvectors_pm1, norm_squared_closed_form, norm_squared_profile,
    normalized_at, Beta, PmOneBases,
};
pub use jacobi::{jacobi_eigen, EigenPairs, MAX_SWEEPS};
pub use theta::{theta_roots, Provenance, ThetaTriple};

use serde::Serialize;
use thiserror::Error;

use crate::graph::AdjacencyMatrix;
use crate::matrix::{dot, Matrix};
use crate::scalar::Real;

/// Default tolerance for merging numerically equal eigenvalues.
pub const GROUP_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("theta^2 is too close to 1 for the simple-eigenvalue formula")]
    SingularTheta,
    #[error("theta does not belong to the requested side parity")]
    ParityMismatch,
    #[error("value is not an eigenvalue of T(l, m) (relative residual {residual:e})")]
    NotAnEigenvalue { residual: f64 },
}

/// One distinct eigenvalue with an orthonormal basis of its eigenspace and the
/// orthogonal projection onto it.
#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace<T: Real> {
    pub value: T,
    pub basis: Vec<Vec<T>>,
    pub projection: Matrix<T>,
}

impl<T: Real> Eigenspace<T> {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    /// `e_a^T E e_b`.
    pub fn entry(&self, a: usize, b: usize) -> T {
        self.projection[(a, b)]
    }

    /// `‖E e_a‖`, which equals `sqrt(e_a^T E e_a)` for an orthogonal projection.
    pub fn column_norm(&self, a: usize) -> T {
        self.projection[(a, a)].max(T::zero()).sqrt()
    }
}

/// Spectral decomposition `A = Σ θ E_θ` with eigenvalues ascending.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralData<T: Real> {
    n: usize,
    spaces: Vec<Eigenspace<T>>,
}

/// Diagonalizes `a` and groups eigenvalues closer than `group_tol`.
pub fn eig_symmetric<T: Real>(a: &AdjacencyMatrix<T>, group_tol: T) -> Result<SpectralData<T>, SpectralError> {
    SpectralData::from_matrix(a.matrix(), group_tol)
}

impl<T: Real> SpectralData<T> {
    pub fn from_matrix(a: &Matrix<T>, group_tol: T) -> Result<Self, SpectralError> {
        let pairs = jacobi_eigen(a, T::jacobi_rel_tol())?;
        Ok(Self::from_pairs(&pairs, group_tol))
    }

    pub fn from_pairs(pairs: &EigenPairs<T>, group_tol: T) -> Self {
        let n = pairs.values.len();
        let mut spaces = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && pairs.values[end] - pairs.values[end - 1] <= group_tol {
                end += 1;
            }
            let k = T::from_usize_lossy(end - start);
            let value = pairs.values[start..end].iter().copied().sum::<T>() / k;
            let basis: Vec<Vec<T>> = (start..end).map(|c| pairs.vectors.column(c)).collect();
            let mut projection = Matrix::zeros(n, n);
            for v in &basis {
                for i in 0..n {
                    if v[i] == T::zero() {
                        continue;
                    }
                    for j in 0..n {
                        projection[(i, j)] = projection[(i, j)] + v[i] * v[j];
                    }
                }
            }
            spaces.push(Eigenspace { value, basis, projection });
            start = end;
        }
        Self { n, spaces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spaces(&self) -> &[Eigenspace<T>] {
        &self.spaces
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.spaces.iter().map(|s| s.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.spaces.iter().map(Eigenspace::multiplicity).collect()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn spectrum(&self) -> Vec<T> {
        self.spaces
            .iter()
            .flat_map(|s| std::iter::repeat(s.value).take(s.multiplicity()))
            .collect()
    }

    /// Eigenspace whose value is within `tol` of `theta`.
    pub fn find(&self, theta: T, tol: T) -> Option<&Eigenspace<T>> {
        self.spaces.iter().find(|s| (s.value - theta).abs() <= tol)
    }

    /// `Σ θ E_θ`.
    pub fn reconstruct(&self) -> Matrix<T> {
        self.spaces
            .iter()
            .fold(Matrix::zeros(self.n, self.n), |acc, s| acc.add(&s.projection.scale(s.value)))
    }

    /// Largest deviation among the projector identities: `Σ E = I`,
    /// `E_θ E_μ = 0` for `θ != μ`, and `E_θ^2 = E_θ`.
    pub fn projector_residual(&self) -> T {
        let sum = self
            .spaces
            .iter()
            .fold(Matrix::zeros(self.n, self.n), |acc, s| acc.add(&s.projection));
        let mut worst = sum.max_abs_diff(&Matrix::identity(self.n));
        for (i, si) in self.spaces.iter().enumerate() {
            let sq = si.projection.matmul(&si.projection);
            worst = worst.max(sq.max_abs_diff(&si.projection));
            for sj in &self.spaces[i + 1..] {
                worst = worst.max(si.projection.matmul(&sj.projection).max_abs());
            }
        }
        worst
    }

    /// Largest `|v_i · v_j - δ_ij|` over the union of all eigenspace bases.
    pub fn orthonormality_residual(&self) -> T {
        let all: Vec<&Vec<T>> = self.spaces.iter().flat_map(|s| s.basis.iter()).collect();
        let mut worst = T::zero();
        for (i, u) in all.iter().enumerate() {
            for (j, v) in all.iter().enumerate().skip(i) {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((dot(u, v) - target).abs());
            }
        }
        worst
    }

    /// JSON export: grouped eigenvalues and multiplicities, optionally the
    /// idempotents as row-major arrays.
    pub fn to_json(&self, with_idempotents: bool) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "n": self.n,
            "eigenvalues": self.eigenvalues(),
            "multiplicities": self.multiplicities(),
        });
        if with_idempotents {
            obj["idempotents"] = self
                .spaces
                .iter()
                .map(|s| serde_json::json!(s.projection.as_slice()))
                .collect::<Vec<_>>()
                .into();
        }
        obj
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_double_subdivided_star, build_path, build_subdivided_star};

    #[test]
    fn p2_spectrum() {
        let s = eig_symmetric(&build_path(2).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        assert_eq!(s.multiplicities(), vec![1, 1]);
        let ev = s.eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sk13_spectrum() {
        let s = eig_symmetric(&build_subdivided_star(3).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        assert_eq!(s.multiplicities(), vec![1, 2, 1, 2, 1]);
        let expect = [-2.0, -1.0, 0.0, 1.0, 2.0];
        for (a, b) in s.eigenvalues().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn t22_unit_multiplicity() {
        let s = eig_symmetric(&build_double_subdivided_star(2, 2).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        assert_eq!(s.find(1.0, 1e-9).unwrap().multiplicity(), 2);
        assert_eq!(s.find(-1.0, 1e-9).unwrap().multiplicity(), 2);
        assert!(s.projector_residual() < 1e-12);
        assert!(s.reconstruct().max_abs_diff(&build_double_subdivided_star(2, 2).unwrap().adjacency::<f64>().0) < 1e-12);
    }

    #[test]
    fn json_export() {
        let s = eig_symmetric(&build_path(3).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        let j = s.to_json(true);
        assert_eq!(j["multiplicities"], serde_json::json!([1, 1, 1]));
        assert_eq!(j["idempotents"].as_array().unwrap().len(), 3);
        assert_eq!(j["idempotents"][0].as_array().unwrap().len(), 9);
        assert!(s.to_json(false).get("idempotents").is_none());
    }

    #[test]
    fn works_in_single_precision() {
        let s = eig_symmetric(&build_double_subdivided_star(2, 3).unwrap().adjacency::<f32>(), 1e-4).unwrap();
        assert_eq!(s.multiplicities().iter().sum::<usize>(), 12);
        assert_eq!(s.find(1.0, 1e-4).unwrap().multiplicity(), 3);
        assert!(s.projector_residual() < 1e-5);
    }
}
