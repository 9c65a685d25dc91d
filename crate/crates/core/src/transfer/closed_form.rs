//! Transition amplitudes written out through the analytic eigenvectors.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::graph::{Role, Side, StarLayout};
use crate::matrix::dot;
use crate::scalar::Real;
use crate::spectral::{beta_plus_roots, eigenvector_simple, norm_squared_profile, normalized_at, theta_roots};

/// The two branch-vertex pairs of the side of `T(2, m)` that has two branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchPair {
    /// Pendants `(c, d)`.
    #[serde(rename = "c,d")]
    Pendants,
    /// Middle vertices `(e, f)`.
    #[serde(rename = "e,f")]
    Middles,
}

impl BranchPair {
    pub fn roles(self) -> (Role, Role) {
        match self {
            BranchPair::Pendants => (Role::C, Role::D),
            BranchPair::Middles => (Role::E, Role::F),
        }
    }
}

/// `e_b^T U(t) e_a` on `T(l, l)` as `Σ_j 2i sin(t θ_j) / ‖v_j‖^2`, summing over
/// the roots `θ_j` whose eigenvectors have `v_j(a) = v_j(b) = 1`.
pub fn closed_form_fidelity_tll<T: Real>(l: usize, t: T) -> Complex<T> {
    let roots = beta_plus_roots::<T>(l);
    let norms = norm_squared_profile::<T>(l);
    let im = roots
        .iter()
        .zip(norms)
        .map(|(&th, n2)| T::lit(2.0) * (t * th).sin() / n2)
        .fold(T::zero(), |a, b| a + b);
    Complex::new(T::zero(), im)
}

/// `‖v_j‖^2` on `T(2, m)` for the positive roots `θ_j` (ascending), with
/// `v_j(c) = 1` for the pendant pair or `v_j(e) = 1` for the middle pair.
pub fn t2m_norm_squared<T: Real>(m: usize, pair: BranchPair) -> [T; 3] {
    let lay = StarLayout::new(2, m);
    let anchor = match pair {
        BranchPair::Pendants => lay.pendant(Side::Left, 0),
        BranchPair::Middles => lay.middle(Side::Left, 0),
    };
    theta_roots::<T>(2, m).theta.map(|th| {
        let v = eigenvector_simple(2, m, th, None).expect("simple eigenvalue of T(2, m)");
        let v = normalized_at(&v, anchor);
        dot(&v, &v)
    })
}

/// `e_d^T U(t) e_c` (or `e_f^T U(t) e_e`) on `T(2, m)` as
/// `Σ_j 2 cos(t θ_j) / ‖v_j‖^2 - cos(t) / 2`; the last term comes from
/// `e_c^T E_{±1} e_d = -1/4`.
pub fn closed_form_fidelity_t2m<T: Real>(m: usize, pair: BranchPair, t: T) -> Complex<T> {
    let roots = theta_roots::<T>(2, m).theta;
    let norms = t2m_norm_squared::<T>(m, pair);
    let re = roots
        .iter()
        .zip(norms)
        .map(|(&th, n2)| T::lit(2.0) * (t * th).cos() / n2)
        .fold(T::zero(), |a, b| a + b)
        - t.cos() / T::lit(2.0);
    Complex::new(re, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_double_subdivided_star;
    use crate::spectral::eig_symmetric;
    use crate::transfer::transition_entry;

    #[test]
    fn tll_matches_spectral_sum() {
        for l in [1, 2, 3, 5] {
            let g = build_double_subdivided_star(l, l).unwrap();
            let s = eig_symmetric(&g.adjacency::<f64>(), 1e-7).unwrap();
            assert!(closed_form_fidelity_tll::<f64>(l, 0.0).norm() < 1e-15);
            for t in [0.3, 1.7, 12.5, 400.25] {
                let z = closed_form_fidelity_tll::<f64>(l, t);
                assert_eq!(z.re, 0.0);
                assert!((z - transition_entry(&s, 1, 0, t)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn t2m_matches_spectral_sum() {
        for m in [1, 2, 3, 6] {
            let g = build_double_subdivided_star(2, m).unwrap();
            let s = eig_symmetric(&g.adjacency::<f64>(), 1e-7).unwrap();
            for pair in [BranchPair::Pendants, BranchPair::Middles] {
                let (x, y) = pair.roles();
                let (x, y) = (g.label(x).unwrap(), g.label(y).unwrap());
                let inv: f64 = t2m_norm_squared::<f64>(m, pair).iter().map(|n| 1.0 / n).sum();
                assert!((inv - 0.25).abs() < 1e-12);
                for t in [0.0, 0.9, 3.0, 77.7] {
                    let z = closed_form_fidelity_t2m::<f64>(m, pair, t);
                    assert!((z - transition_entry(&s, y, x, t)).norm() < 1e-9, "m={m} {pair:?} t={t}");
                }
            }
        }
    }
}
