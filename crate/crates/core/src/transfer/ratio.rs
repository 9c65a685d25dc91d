//! Continued-fraction evidence for the rationality of eigenvalue ratios.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::spectral::ThetaTriple;

/// Partial quotients of `x`, stopping at `max_terms`, once the convergent
/// equals `x` to working precision, or before denominators overflow.
pub fn continued_fraction(x: f64, max_terms: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut y = x;
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, 0i128, 1i128);
    for _ in 0..max_terms {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 9.0e15 {
            break;
        }
        let ai = a as i128;
        let (Some(p), Some(q)) = (
            ai.checked_mul(p0).and_then(|v| v.checked_add(p1)),
            ai.checked_mul(q0).and_then(|v| v.checked_add(q1)),
        ) else {
            break;
        };
        if q > 1i128 << 60 {
            break;
        }
        out.push(a as i64);
        (p1, q1, p0, q0) = (p0, q0, p, q);
        let frac = y - a;
        if frac == 0.0 || (x - p as f64 / q as f64).abs() <= match_tol(x) {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Convergents `p_k / q_k` of a partial-quotient list.
pub fn convergents(terms: &[i64]) -> Vec<(i128, i128)> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, 0i128, 1i128);
    let mut out = Vec::with_capacity(terms.len());
    for &a in terms {
        let a = a as i128;
        let (p, q) = (a * p0 + p1, a * q0 + q1);
        (p1, q1, p0, q0) = (p0, q0, p, q);
        out.push((p, q));
    }
    out
}

fn match_tol(x: f64) -> f64 {
    64.0 * f64::EPSILON * x.abs().max(1.0)
}

/// A fraction `p/q` with `q ≤ max_denominator` equal to `x` to working
/// precision (64 ulps), if one exists among the convergents.
pub fn detect_rational(x: f64, max_denominator: u64) -> Option<(i64, i64)> {
    convergents(&continued_fraction(x, 64))
        .into_iter()
        .take_while(|&(_, q)| q <= max_denominator as i128)
        .find(|&(p, q)| (x - p as f64 / q as f64).abs() <= match_tol(x))
        .map(|(p, q)| (p as i64, q as i64))
}

/// Continued-fraction profile of one ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioEntry {
    /// Which ratio, e.g. `theta1/theta2`.
    pub label: String,
    pub value: f64,
    pub partial_quotients: Vec<i64>,
    /// Last convergent with denominator at most `max_denominator`.
    pub best_convergent: (i64, i64),
    pub best_error: f64,
    /// First convergent denominator beyond `max_denominator`, if the expansion reaches it.
    pub next_denominator: Option<i64>,
    pub rational_match: Option<(i64, i64)>,
}

/// Numeric evidence that no ratio `θ_k / θ_r` is rational with a small denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub max_denominator: u64,
    pub ratios: Vec<RatioEntry>,
    /// True when no ratio has a rational match.
    pub evidence_irrational: bool,
}

fn ratio_entry(label: String, x: f64, max_denominator: u64) -> RatioEntry {
    let terms = continued_fraction(x, 64);
    let conv = convergents(&terms);
    let cut = conv.iter().take_while(|&&(_, q)| q <= max_denominator as i128).count().max(1);
    let (p, q) = conv[cut - 1];
    RatioEntry {
        label,
        value: x,
        partial_quotients: terms[..cut.min(terms.len())].to_vec(),
        best_convergent: (p as i64, q as i64),
        best_error: (x - p as f64 / q as f64).abs(),
        next_denominator: conv.get(cut).map(|c| c.1 as i64),
        rational_match: detect_rational(x, max_denominator),
    }
}

/// Examines `θ_1/θ_2`, `θ_1/θ_3`, `θ_2/θ_3`. Over the support `{±θ_i}` every
/// difference ratio reduces to `±1` or one of these, so periodicity at the
/// coalescence vertices would force all three to be rational.
pub fn ratio_condition_violation<T: Real>(thetas: &ThetaTriple<T>, max_denominator: u64) -> RatioReport {
    let th = thetas.theta.map(|x| x.to_f64_lossy());
    let values: Vec<(String, f64)> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| (format!("theta{}/theta{}", i + 1, j + 1), th[i] / th[j]))
        .collect();
    ratio_report_for(&values, max_denominator)
}

/// Same analysis for an arbitrary labelled list of ratios.
pub fn ratio_report_for(values: &[(String, f64)], max_denominator: u64) -> RatioReport {
    let ratios: Vec<RatioEntry> = values
        .iter()
        .map(|(l, x)| ratio_entry(l.clone(), *x, max_denominator))
        .collect();
    RatioReport {
        max_denominator,
        evidence_irrational: ratios.iter().all(|r| r.rational_match.is_none()),
        ratios,
    }
}
