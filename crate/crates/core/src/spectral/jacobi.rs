//! Cyclic Jacobi diagonalization of real symmetric matrices.

use crate::matrix::Matrix;
use crate::scalar::Real;

use super::SpectralError;

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
    pub sweeps: usize,
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic-by-row Jacobi. Stops once the off-diagonal Frobenius norm drops to
/// `rel_tol · ‖A‖_F`; gives up after [`MAX_SWEEPS`] sweeps.
pub fn jacobi_eigen<T: Real>(a: &Matrix<T>, rel_tol: T) -> Result<EigenPairs<T>, SpectralError> {
    let n = a.rows();
    if !a.is_square() || !a.is_symmetric(T::epsilon() * T::lit(64.0) * (T::one() + a.max_abs())) {
        return Err(SpectralError::NotSymmetric);
    }
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    let target = rel_tol * a.frobenius_norm();
    let two = T::lit(2.0);

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (two * apq);
                let t = if tau == T::zero() {
                    T::one()
                } else {
                    tau.signum() / (tau.abs() + tau.hypot(T::one()))
                };
                let c = T::one() / t.hypot(T::one());
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                // A <- J^T A
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, i)];
        }
    }
    Ok(EigenPairs { values, vectors, sweeps })
}
