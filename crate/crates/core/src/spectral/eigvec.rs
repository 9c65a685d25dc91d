//! Analytic eigenvectors of `T(l, m)`.
//!
//! For an eigenvalue `θ != ±1` every branch on one side carries the same
//! values. With center value `z` on that side, the eigen-equation at a pendant
//! (`θ x = y`) and at a middle vertex (`θ y = x + z`) gives
//! `x = z / (θ^2 - 1)` and `y = θ z / (θ^2 - 1)`. Fixing `v(a) = 1`, the
//! equation at `a` then determines the other center:
//! `v(b) = θ - l θ / (θ^2 - 1)`.

use serde::{Deserialize, Serialize};

use crate::graph::{Side, StarLayout};
use crate::matrix::{dot, norm};
use crate::scalar::Real;

use super::{theta_roots, SpectralError};

/// Behaviour of a simple eigenvector of `T(l, l)` under the side swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Beta {
    Plus,
    Minus,
}

impl Beta {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Beta::Plus => T::one(),
            Beta::Minus => -T::one(),
        }
    }
}

/// Orthonormal bases of the `-1` and `+1` eigenspaces of `T(l, m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PmOneBases<T> {
    pub minus: Vec<Vec<T>>,
    pub plus: Vec<Vec<T>>,
}

fn gram_schmidt<T: Real>(vs: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(vs.len());
    for mut v in vs {
        for u in &out {
            let c = dot(&v, u);
            for (vi, &ui) in v.iter_mut().zip(u) {
                *vi = *vi - c * ui;
            }
        }
        let nv = norm(&v);
        out.push(v.into_iter().map(|x| x / nv).collect());
    }
    out
}

/// Eigenvectors for `±1`: on each side, branch `i` minus branch `i + 1`, with
/// (pendant, middle) values `(1, 1)` for `+1` and `(1, -1)` for `-1`. The
/// centers stay zero, so there are `l + m - 2` vectors per eigenvalue.
pub fn eigenvectors_pm1<T: Real>(l: usize, m: usize) -> PmOneBases<T> {
    let lay = StarLayout::new(l, m);
    let n = lay.n();
    let build = |middle_sign: T| {
        let mut vs = Vec::new();
        for side in [Side::Left, Side::Right] {
            for i in 0..lay.branches(side).saturating_sub(1) {
                let mut v = vec![T::zero(); n];
                v[lay.pendant(side, i)] = T::one();
                v[lay.middle(side, i)] = middle_sign;
                v[lay.pendant(side, i + 1)] = -T::one();
                v[lay.middle(side, i + 1)] = -middle_sign;
                vs.push(v);
            }
        }
        gram_schmidt(vs)
    };
    PmOneBases {
        minus: build(-T::one()),
        plus: build(T::one()),
    }
}

/// Eigenvector of `T(l, m)` for a simple eigenvalue `theta`, normalized so
/// `v(a) = 1`. For `l = m`, `beta` asserts the side-swap parity (`v(b) = ±1`).
pub fn eigenvector_simple<T: Real>(l: usize, m: usize, theta: T, beta: Option<Beta>) -> Result<Vec<T>, SpectralError> {
    let t2m1 = theta * theta - T::one();
    if t2m1.abs() < T::lit(1e-8) {
        return Err(SpectralError::SingularTheta);
    }
    let lf = T::from_usize_lossy(l);
    let mf = T::from_usize_lossy(m);
    let za = T::one();
    let zb = theta - lf * theta / t2m1;

    // The equation at b holds exactly when theta is a root of q.
    let lhs = theta * zb;
    let rhs = mf * theta * zb / t2m1 + za;
    let scale = T::one() + lhs.abs() + rhs.abs();
    let residual = ((lhs - rhs) / scale).abs();
    if residual > T::lit(1e-6) {
        return Err(SpectralError::NotAnEigenvalue {
            residual: residual.to_f64_lossy(),
        });
    }
    if let Some(beta) = beta {
        let tol = T::lit(1e-6) * (T::one() + zb.abs());
        if l != m || (zb - beta.sign::<T>()).abs() > tol {
            return Err(SpectralError::ParityMismatch);
        }
    }

    let lay = StarLayout::new(l, m);
    let mut v = vec![T::zero(); lay.n()];
    v[0] = za;
    v[1] = zb;
    for (side, z) in [(Side::Left, za), (Side::Right, zb)] {
        for i in 0..lay.branches(side) {
            v[lay.pendant(side, i)] = z / t2m1;
            v[lay.middle(side, i)] = theta * z / t2m1;
        }
    }
    Ok(v)
}

/// Rescales `v` so that `v[vertex] = 1`.
pub fn normalized_at<T: Real>(v: &[T], vertex: usize) -> Vec<T> {
    let s = v[vertex];
    v.iter().map(|&x| x / s).collect()
}

/// The three simple eigenvalues of `T(l, l)` whose eigenvectors satisfy
/// `v(a) = v(b)`: the roots of `x^3 - x^2 - (l + 1) x + 1`, ascending.
pub fn beta_plus_roots<T: Real>(l: usize) -> [T; 3] {
    let lf = T::from_usize_lossy(l);
    let center_b = |x: T| x - lf * x / (x * x - T::one());
    let mut roots = theta_roots::<T>(l, l).theta.map(|t| {
        if (center_b(t) - T::one()).abs() <= (center_b(-t) - T::one()).abs() {
            t
        } else {
            -t
        }
    });
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// `‖v_j‖^2` for the `Beta::Plus` eigenvectors of `T(l, l)` with `v_j(a) = 1`,
/// in the order of [`beta_plus_roots`].
pub fn norm_squared_profile<T: Real>(l: usize) -> [T; 3] {
    beta_plus_roots::<T>(l).map(|theta| {
        let v = eigenvector_simple(l, l, theta, Some(Beta::Plus)).expect("beta-plus root");
        dot(&v, &v)
    })
}

/// `2 (1 + l (1 + θ^2) / (θ^2 - 1)^2)`: the squared norm of the `Beta::Plus`
/// eigenvector of `T(l, l)` written out by orbit.
pub fn norm_squared_closed_form<T: Real>(l: usize, theta: T) -> T {
    let t2 = theta * theta;
    let d = t2 - T::one();
    T::lit(2.0) * (T::one() + T::from_usize_lossy(l) * (T::one() + t2) / (d * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_double_subdivided_star;

    fn residual(l: usize, m: usize, v: &[f64], theta: f64) -> f64 {
        let a = build_double_subdivided_star(l, m).unwrap().adjacency::<f64>();
        a.matrix()
            .mul_vec(v)
            .iter()
            .zip(v)
            .fold(0.0, |w, (av, x)| w.max((av - theta * x).abs()))
    }

    #[test]
    fn pm1_bases() {
        let b = eigenvectors_pm1::<f64>(1, 1);
        assert!(b.minus.is_empty() && b.plus.is_empty());

        let b = eigenvectors_pm1::<f64>(2, 1);
        assert_eq!((b.minus.len(), b.plus.len()), (1, 1));
        let lay = StarLayout::new(2, 1);
        for (i, x) in b.plus[0].iter().enumerate() {
            let on_left = matches!(
                lay.locate(i),
                crate::graph::Position::Middle(Side::Left, _) | crate::graph::Position::Pendant(Side::Left, _)
            );
            assert!(on_left || *x == 0.0);
        }

        let b = eigenvectors_pm1::<f64>(2, 2);
        assert_eq!((b.minus.len(), b.plus.len()), (2, 2));
        for v in &b.plus {
            assert!(residual(2, 2, v, 1.0) < 1e-12);
        }
        for v in &b.minus {
            assert!(residual(2, 2, v, -1.0) < 1e-12);
        }
    }

    #[test]
    fn simple_eigenvectors_satisfy_the_eigen_equation() {
        for (l, m) in [(1, 1), (2, 1), (3, 5), (4, 4), (7, 2)] {
            for theta in theta_roots::<f64>(l, m).theta {
                for t in [theta, -theta] {
                    let v = eigenvector_simple(l, m, t, None).unwrap();
                    assert!(residual(l, m, &v, t) < 1e-9, "T({l},{m}) theta {t}");
                    assert_eq!(v[0], 1.0);
                }
            }
        }
    }

    #[test]
    fn beta_plus_pattern_for_equal_sides() {
        let l = 3;
        for theta in beta_plus_roots::<f64>(l) {
            let v = eigenvector_simple(l, l, theta, Some(Beta::Plus)).unwrap();
            let lay = StarLayout::new(l, l);
            assert!((v[1] - 1.0).abs() < 1e-9);
            for i in 0..l {
                assert!((v[lay.pendant(Side::Left, i)] - v[lay.pendant(Side::Right, i)]).abs() < 1e-9);
                assert!((v[lay.middle(Side::Left, i)] - v[lay.middle(Side::Right, 0)]).abs() < 1e-9);
            }
            // the opposite parity is rejected
            assert_eq!(eigenvector_simple(l, l, theta, Some(Beta::Minus)), Err(SpectralError::ParityMismatch));
        }
        let roots = beta_plus_roots::<f64>(2);
        let t3 = roots[2];
        let v = eigenvector_simple(2, 2, t3, Some(Beta::Plus)).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_thetas() {
        assert_eq!(eigenvector_simple(2, 2, 1.0, None), Err(SpectralError::SingularTheta));
        assert!(matches!(eigenvector_simple(2, 3, 0.7, None), Err(SpectralError::NotAnEigenvalue { .. })));
    }

    #[test]
    fn norm_profile_sums_to_one_half() {
        for l in 1..=6 {
            let prof = norm_squared_profile::<f64>(l);
            let s: f64 = prof.iter().map(|x| 1.0 / x).sum();
            assert!((s - 0.5).abs() < 1e-9, "l={l}: {s}");
            for (theta, ns) in beta_plus_roots::<f64>(l).iter().zip(prof) {
                assert!((norm_squared_closed_form(l, *theta) - ns).abs() < 1e-9 * ns);
            }
        }
    }
}
