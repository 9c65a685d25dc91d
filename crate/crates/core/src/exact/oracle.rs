//! Independent numeric route to factor discovery: find all roots, then try
//! every small root subset as a candidate integer factor.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};
use thiserror::Error;

use super::poly::IntPolynomial;
use super::{verify_factorization, ReducibilityReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("polynomial has a non-real root {0}")]
    NonRealRoot(Complex64),
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
}

const MAX_ITER: usize = 5000;

/// All roots of a monic polynomial with real roots, ascending, by
/// Durand–Kerner iteration followed by Newton polishing.
pub fn real_roots(p: &IntPolynomial, imag_tol: f64) -> Result<Vec<f64>, OracleError> {
    let n = match p.degree() {
        Some(d) if d >= 1 && p.is_monic() => d,
        _ => return Err(OracleError::NotMonic),
    };
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (radius / 2.0)).collect();
    let eval = |x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a);

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(OracleError::NoConvergence(MAX_ITER));
    }

    let deriv = p.derivative();
    let mut roots = Vec::with_capacity(n);
    for zi in z {
        if zi.im.abs() > imag_tol * (1.0 + zi.re.abs()) {
            return Err(OracleError::NonRealRoot(zi));
        }
        let mut x = zi.re;
        for _ in 0..4 {
            let d = deriv.eval_f64(x);
            if d == 0.0 {
                break;
            }
            x -= p.eval_f64(x) / d;
        }
        roots.push(x);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn monic_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= r * ck;
        }
        c = next;
    }
    c
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Searches for a rational factor of a squarefree real-rooted monic `q` among
/// the monic polynomials whose roots are a subset (of size at most 3) of the
/// numeric roots of `q`. A candidate counts only if its coefficients are within
/// `precision` of integers and it divides `q` exactly.
pub fn numeric_factor_oracle(q: &IntPolynomial, precision: f64) -> Result<ReducibilityReport, OracleError> {
    let roots = real_roots(q, 1e-6)?;
    for size in 1..=3.min(roots.len().saturating_sub(1)) {
        for subset in subsets(roots.len(), size) {
            let chosen: Vec<f64> = subset.iter().map(|&i| roots[i]).collect();
            let approx = monic_from_roots(&chosen);
            if approx.iter().any(|&x| (x - x.round()).abs() > precision) {
                continue;
            }
            let f = IntPolynomial::new(
                approx.iter().map(|x| BigInt::from_f64(x.round()).unwrap()).collect(),
            );
            if !q.divisible_by_monic(&f) {
                continue;
            }
            if size == 3 && verify_factorization(q, &f) {
                return Ok(ReducibilityReport::from_cubic(f));
            }
            return Ok(ReducibilityReport {
                reducible: true,
                ..ReducibilityReport::irreducible()
            });
        }
    }
    Ok(ReducibilityReport::irreducible())
}
