mod common;

use dstar::exact::{
    characteristic_polynomial, characteristic_polynomial_t, cubic_resolvent, discriminant, numeric_factor_oracle,
    q_discriminant, q_polynomial, reducibility_report, IntPolynomial,
};
use dstar::graph::StarLayout;
use dstar::spectral::{eig_symmetric, theta_roots, ThetaTriple, GROUP_TOL};
use dstar::transfer::{
    closed_form_fidelity_t2m, closed_form_fidelity_tll, eigenvalue_support, fidelity_trace, strong_cospectrality,
    transition_entry, unitarity_residuals, BranchPair, COSPEC_TOL, SUPPORT_TOL,
};
use dstar::{build_double_subdivided_star, classify, Role, SpectralData64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(l: usize, m: usize) -> SpectralData64 {
    let g = build_double_subdivided_star(l, m).unwrap();
    eig_symmetric(&g.adjacency(), GROUP_TOL).unwrap()
}

#[test]
fn faddeev_leverrier_matches_closed_form() {
    for l in 1..=6 {
        for m in 1..=6 {
            let g = build_double_subdivided_star(l, m).unwrap();
            assert_eq!(characteristic_polynomial(&g.adjacency_int()), characteristic_polynomial_t(l, m));
        }
    }
}

#[test]
fn oracle_equivalence_small_rectangle() {
    for l in 1..=12 {
        for m in 1..=12 {
            let q = q_polynomial(l, m);
            assert_eq!(reducibility_report(l, m), numeric_factor_oracle(&q, 1e-6).unwrap(), "({l},{m})");
        }
    }
}

#[test]
fn spectra_match_closed_form() {
    for l in 1..=8 {
        for m in 1..=8 {
            let s = spec(l, m);
            let th = ThetaTriple::from_spectrum(&s, 1e-6).unwrap();
            let closed = theta_roots::<f64>(l, m);
            for (a, b) in th.theta.iter().zip(closed.theta) {
                assert!((a - b).abs() < 1e-9);
            }
            let mult_one = s.find(1.0, 1e-7).map_or(0, |e| e.multiplicity());
            assert_eq!(mult_one, l + m - 2);
        }
    }
}

#[test]
fn supports_of_every_vertex() {
    for l in 1..=8 {
        for m in 1..=8 {
            let s = spec(l, m);
            let th = theta_roots::<f64>(l, m).theta;
            for v in 0..s.n() {
                let sup = eigenvalue_support(&s, v, SUPPORT_TOL);
                for t in th {
                    assert!(sup.contains(t, 1e-7) && sup.contains(-t, 1e-7), "T({l},{m}) vertex {v}");
                }
            }
            for v in [0, 1] {
                let sup = eigenvalue_support(&s, v, SUPPORT_TOL);
                assert!(!sup.contains(1.0, 1e-7) && !sup.contains(-1.0, 1e-7));
            }
        }
    }
}

#[test]
fn unitarity_and_symmetry_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(2..=30);
        let g = common::random_tree(&mut rng, n);
        assert!(g.is_tree());
        let s: SpectralData64 = eig_symmetric(&g.adjacency(), GROUP_TOL).unwrap();
        assert!(s.projector_residual() < 1e-9);
        for _ in 0..5 {
            let t = rng.gen_range(0.0..100.0);
            let (u, sym) = unitarity_residuals(&s, t);
            assert!(u < 1e-9 && sym < 1e-12, "n={n} t={t} {u:e} {sym:e}");
        }
    }
}

#[test]
fn closed_forms_agree_with_spectral_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in 2..=6 {
        let s = spec(l, l);
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..1000.0);
            let z = closed_form_fidelity_tll::<f64>(l, t);
            assert!((z - transition_entry(&s, 1, 0, t)).norm() < 1e-9);
        }
    }
    for m in 1..=6 {
        let g = build_double_subdivided_star(2, m).unwrap();
        let s: SpectralData64 = eig_symmetric(&g.adjacency(), GROUP_TOL).unwrap();
        for (pair, (x, y)) in [(BranchPair::Pendants, (Role::C, Role::D)), (BranchPair::Middles, (Role::E, Role::F))] {
            let (x, y) = (g.label(x).unwrap(), g.label(y).unwrap());
            for _ in 0..1000 {
                let t = rng.gen_range(0.0..1000.0);
                let z = closed_form_fidelity_t2m::<f64>(m, pair, t);
                assert!((z - transition_entry(&s, y, x, t)).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn pgst_positive_pairs_are_strongly_cospectral() {
    for l in 1..=8 {
        for m in 1..=8 {
            let s = spec(l, m);
            for (u, v) in dstar::classifier::pgst_positive_pairs(&classify(l, m)) {
                assert!(strong_cospectrality(&s, u, v, COSPEC_TOL).unwrap().strongly_cospectral, "T({l},{m}) {u},{v}");
            }
        }
    }
}

#[test]
fn classification_is_orientation_free() {
    for l in 1..=10 {
        for m in 1..=10 {
            let a = classify(l, m);
            let b = classify(m, l);
            let lay = StarLayout::new(l, m);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!((x.kind, x.verdict, x.justification), (y.kind, y.verdict, y.justification));
                if l != m {
                    let mapped = x.pair.vertices.map(|(u, v)| (lay.swap_sides(u), lay.swap_sides(v)));
                    assert_eq!(mapped, y.pair.vertices);
                }
                x.verify().unwrap();
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_a_tree(l in 1usize..=30, m in 1usize..=30) {
        let g = build_double_subdivided_star(l, m).unwrap();
        prop_assert_eq!(g.n(), 2 * (l + m + 1));
        prop_assert!(g.is_tree());
        let deg = g.degrees();
        prop_assert_eq!((deg[0], deg[1]), (l + 1, m + 1));
    }

    #[test]
    fn q_is_resolvent_of_squares(l in 1usize..=30, m in 1usize..=30) {
        let x2 = IntPolynomial::from_i64(&[0, 0, 1]);
        prop_assert_eq!(cubic_resolvent(l, m).compose(&x2), q_polynomial(l, m));
        let dq = discriminant(&cubic_resolvent(l, m));
        prop_assert_eq!(q_discriminant(l, m), dq.clone() * dq * 64);
    }

    #[test]
    fn symmetric_in_parameters(l in 1usize..=30, m in 1usize..=30) {
        prop_assert_eq!(reducibility_report(l, m), reducibility_report(m, l));
        let a = theta_roots::<f64>(l, m).theta;
        let b = theta_roots::<f64>(m, l).theta;
        for (x, y) in a.iter().zip(b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn fidelities_are_probabilities(l in 1usize..=6, m in 1usize..=6, t in 0.0f64..1e4) {
        let s = spec(l, m);
        let n = s.n();
        let a = (t as usize) % n;
        let total: f64 = (0..n).map(|b| transition_entry(&s, a, b, t).norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        let tr = fidelity_trace(&s, a, (a + 1) % n, &[t]).unwrap();
        prop_assert!(tr.fidelities[0] <= 1.0 + 1e-12);
        let direct = transition_entry(&s, (a + 1) % n, a, t).norm_sqr();
        prop_assert!((tr.fidelities[0] - direct).abs() <= 1e-12);
    }

    #[test]
    fn prufer_trees_decompose(seq in proptest::collection::vec(0usize..12, 10)) {
        let g = common::prufer_tree(&seq, 12);
        prop_assert!(g.is_tree());
        let s: SpectralData64 = eig_symmetric(&g.adjacency(), GROUP_TOL).unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(g.adjacency::<f64>().matrix()) < 1e-10);
        prop_assert!(s.orthonormality_residual() < 1e-10);
        // tree spectra are symmetric about zero
        let sp = s.spectrum();
        for (x, y) in sp.iter().zip(sp.iter().rev()) {
            prop_assert!((x + y).abs() < 1e-9);
        }
    }
}
