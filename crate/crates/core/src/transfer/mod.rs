//! Continuous-time quantum walks `U(t) = exp(itA)` evaluated through the
//! spectral decomposition `U(t) = Σ exp(itθ) E_θ`.

mod closed_form;
mod pst;
mod ratio;
mod search;

pub use closed_form::{closed_form_fidelity_t2m, closed_form_fidelity_tll, t2m_norm_squared, BranchPair};
pub use pst::{pst_decision, RATIO_MAX_DENOMINATOR};
pub use ratio::{
    continued_fraction, convergents, detect_rational, ratio_condition_violation, ratio_report_for, RatioEntry, RatioReport,
};
pub use search::{
    grid_search, kronecker_time_hint, pgst_search_sequence, EnvelopePoint, KroneckerHint, PgstWitness, SearchOptions,
    SequenceFamily,
};

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;
use crate::spectral::SpectralData;

/// Numeric threshold for `‖E_θ e_a‖` to count as nonzero.
pub const SUPPORT_TOL: f64 = 1e-8;
/// Tolerance for `E_θ e_a = ±E_θ e_b`.
pub const COSPEC_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransferError {
    #[error("time {0} must be finite and non-negative")]
    InvalidTime(f64),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair must consist of distinct vertices")]
    SameVertex,
    #[error("invalid time range {0:?}; expected start:end:step with step > 0")]
    InvalidRange(String),
}

fn check_vertex<T: Real>(spec: &SpectralData<T>, v: usize) -> Result<(), TransferError> {
    if v >= spec.n() {
        Err(TransferError::VertexOutOfRange { vertex: v, n: spec.n() })
    } else {
        Ok(())
    }
}

/// `e_a^T U(t) e_b`.
pub fn transition_entry<T: Real>(spec: &SpectralData<T>, a: usize, b: usize, t: T) -> Complex<T> {
    spec.spaces()
        .iter()
        .map(|s| Complex::from_polar(s.entry(a, b), t * s.value))
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
}

/// Dense `U(t)`, row-major.
pub fn transition_matrix<T: Real>(spec: &SpectralData<T>, t: T) -> Vec<Complex<T>> {
    let n = spec.n();
    let mut u = vec![Complex::new(T::zero(), T::zero()); n * n];
    for s in spec.spaces() {
        let phase = Complex::from_polar(T::one(), t * s.value);
        for (out, &e) in u.iter_mut().zip(s.projection.as_slice()) {
            *out = *out + phase * e;
        }
    }
    u
}

/// Largest deviations of `U(t)` from unitarity (`U U^* = I`) and from symmetry.
pub fn unitarity_residuals<T: Real>(spec: &SpectralData<T>, t: T) -> (T, T) {
    let n = spec.n();
    let u = transition_matrix(spec, t);
    let mut unit = T::zero();
    let mut sym = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc + u[i * n + k] * u[j * n + k].conj();
            }
            let target = if i == j { T::one() } else { T::zero() };
            unit = unit.max((acc - Complex::new(target, T::zero())).norm());
            sym = sym.max((u[i * n + j] - u[j * n + i]).norm());
        }
    }
    (unit, sym)
}

/// The `(θ, e_a^T E_θ e_b)` terms of one transition amplitude, with terms
/// below `drop_tol` removed.
#[derive(Clone, Debug)]
pub struct PairAmplitude<T> {
    pub pair: (usize, usize),
    pub terms: Vec<(T, T)>,
}

impl<T: Real> PairAmplitude<T> {
    pub fn new(spec: &SpectralData<T>, a: usize, b: usize, drop_tol: T) -> Self {
        let terms = spec
            .spaces()
            .iter()
            .map(|s| (s.value, s.entry(a, b)))
            .filter(|&(_, c)| c.abs() > drop_tol)
            .collect();
        Self { pair: (a, b), terms }
    }

    #[inline]
    pub fn amplitude(&self, t: T) -> Complex<T> {
        let (mut re, mut im) = (T::zero(), T::zero());
        for &(theta, c) in &self.terms {
            let (s, co) = (t * theta).sin_cos();
            re = re + c * co;
            im = im + c * s;
        }
        Complex::new(re, im)
    }

    #[inline]
    pub fn fidelity(&self, t: T) -> T {
        self.amplitude(t).norm_sqr()
    }
}

/// Eigenvalues in the support of one vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportSet<T> {
    pub vertex: usize,
    pub eigenvalues: Vec<T>,
}

impl<T: Real> SupportSet<T> {
    pub fn contains(&self, theta: T, tol: T) -> bool {
        self.eigenvalues.iter().any(|&x| (x - theta).abs() <= tol)
    }
}

/// `σ_a`: eigenvalues with `‖E_θ e_a‖ > support_tol`.
pub fn eigenvalue_support<T: Real>(spec: &SpectralData<T>, a: usize, support_tol: T) -> SupportSet<T> {
    SupportSet {
        vertex: a,
        eigenvalues: spec
            .spaces()
            .iter()
            .filter(|s| s.column_norm(a) > support_tol)
            .map(|s| s.value)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignTag {
    Plus,
    Minus,
    NotInSupport,
    /// `E_θ e_a` and `E_θ e_b` are not related by a sign.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CospectralityReport<T> {
    pub pair: (usize, usize),
    pub strongly_cospectral: bool,
    pub sign_pattern: Vec<(T, SignTag)>,
}

/// Tests `E_θ e_a = ±E_θ e_b` for every eigenvalue, entrywise within `cospec_tol`.
pub fn strong_cospectrality<T: Real>(
    spec: &SpectralData<T>,
    a: usize,
    b: usize,
    cospec_tol: T,
) -> Result<CospectralityReport<T>, TransferError> {
    check_vertex(spec, a)?;
    check_vertex(spec, b)?;
    if a == b {
        return Err(TransferError::SameVertex);
    }
    let n = spec.n();
    let sign_pattern: Vec<(T, SignTag)> = spec
        .spaces()
        .iter()
        .map(|s| {
            let dev = |sign: T| {
                (0..n).fold(T::zero(), |m, k| m.max((s.projection[(k, a)] - sign * s.projection[(k, b)]).abs()))
            };
            let tag = if s.column_norm(a) <= cospec_tol && s.column_norm(b) <= cospec_tol {
                SignTag::NotInSupport
            } else if dev(T::one()) <= cospec_tol {
                SignTag::Plus
            } else if dev(-T::one()) <= cospec_tol {
                SignTag::Minus
            } else {
                SignTag::Mismatch
            };
            (s.value, tag)
        })
        .collect();
    Ok(CospectralityReport {
        pair: (a, b),
        strongly_cospectral: sign_pattern.iter().all(|&(_, t)| t != SignTag::Mismatch),
        sign_pattern,
    })
}

/// Sampled `|e_b^T U(t) e_a|^2` with the unit phase of the amplitude where it is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityTrace<T> {
    pub pair: (usize, usize),
    pub times: Vec<T>,
    pub fidelities: Vec<T>,
    pub phases: Vec<Option<Complex<T>>>,
}

/// Evaluates the transition amplitude from `a` to `b` at each time.
pub fn fidelity_trace<T: Real>(
    spec: &SpectralData<T>,
    a: usize,
    b: usize,
    times: &[T],
) -> Result<FidelityTrace<T>, TransferError> {
    check_vertex(spec, a)?;
    check_vertex(spec, b)?;
    if let Some(&bad) = times.iter().find(|t| !t.is_finite() || **t < T::zero()) {
        return Err(TransferError::InvalidTime(bad.to_f64_lossy()));
    }
    let amp = PairAmplitude::new(spec, b, a, T::zero());
    let mut fidelities = Vec::with_capacity(times.len());
    let mut phases = Vec::with_capacity(times.len());
    for &t in times {
        let z = amp.amplitude(t);
        let r = z.norm();
        fidelities.push(r * r);
        phases.push((r > T::epsilon()).then(|| z / r));
    }
    Ok(FidelityTrace {
        pair: (a, b),
        times: times.to_vec(),
        fidelities,
        phases,
    })
}

/// Formats a real with 17 significant digits so it parses back bit-exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl<T: Real> FidelityTrace<T> {
    /// CSV with header `time,fidelity,re_phase,im_phase`; phase cells are
    /// empty where the amplitude vanishes.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("time,fidelity,re_phase,im_phase\n");
        for ((t, f), p) in self.times.iter().zip(&self.fidelities).zip(&self.phases) {
            let (re, im) = match p {
                Some(z) => (fmt_real(z.re.to_f64_lossy()), fmt_real(z.im.to_f64_lossy())),
                None => (String::new(), String::new()),
            };
            s.push_str(&format!(
                "{},{},{re},{im}\n",
                fmt_real(t.to_f64_lossy()),
                fmt_real(f.to_f64_lossy())
            ));
        }
        s
    }
}

/// Times `start, start + step, ...` up to and including `end` (within 1e-9 steps).
pub fn time_grid<T: Real>(start: T, end: T, step: T) -> Result<Vec<T>, TransferError> {
    let bad = || {
        TransferError::InvalidRange(format!(
            "{}:{}:{}",
            start.to_f64_lossy(),
            end.to_f64_lossy(),
            step.to_f64_lossy()
        ))
    };
    if !(step > T::zero()) || !start.is_finite() || !end.is_finite() || end < start || start < T::zero() {
        return Err(bad());
    }
    let count = ((end - start) / step + T::lit(1e-9)).floor().to_usize().ok_or_else(bad)? + 1;
    Ok((0..count).map(|k| start + step * T::from_usize_lossy(k)).collect())
}

/// Parses `start:end:step`.
pub fn parse_time_range(s: &str) -> Result<Vec<f64>, TransferError> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| TransferError::InvalidRange(s.to_string()))?;
    match parts[..] {
        [a, b, c] => time_grid(a, b, c).map_err(|_| TransferError::InvalidRange(s.to_string())),
        _ => Err(TransferError::InvalidRange(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_double_subdivided_star, build_path};
    use crate::spectral::eig_symmetric;
    use std::f64::consts::PI;

    fn spec_of(g: &crate::graph::GraphSpec) -> SpectralData<f64> {
        eig_symmetric(&g.adjacency(), 1e-7).unwrap()
    }

    #[test]
    fn entries_at_zero_and_p2_transfer() {
        let p2 = spec_of(&build_path(2).unwrap());
        assert!((transition_entry(&p2, 0, 0, 0.0) - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((transition_entry(&p2, 0, 1, PI / 2.0).norm() - 1.0).abs() < 1e-14);
        let t22 = spec_of(&build_double_subdivided_star(2, 2).unwrap());
        assert!(transition_entry(&t22, 0, 1, 0.0).norm() < 1e-12);
    }

    #[test]
    fn supports() {
        let g = build_double_subdivided_star(2, 3).unwrap();
        let s = spec_of(&g);
        let tol = SUPPORT_TOL;
        let sa = eigenvalue_support(&s, 0, tol);
        assert_eq!(sa.eigenvalues.len(), 6);
        assert!(!sa.contains(1.0, 1e-9) && !sa.contains(-1.0, 1e-9));
        let sc = eigenvalue_support(&s, g.label(crate::Role::C).unwrap(), tol);
        assert_eq!(sc.eigenvalues.len(), 8);
        let p2 = spec_of(&build_path(2).unwrap());
        assert_eq!(eigenvalue_support(&p2, 1, tol).eigenvalues.len(), 2);
    }

    #[test]
    fn cospectrality_examples() {
        let s = spec_of(&build_double_subdivided_star(3, 3).unwrap());
        assert!(strong_cospectrality(&s, 0, 1, COSPEC_TOL).unwrap().strongly_cospectral);
        let g = build_double_subdivided_star(2, 4).unwrap();
        let s = spec_of(&g);
        let r = strong_cospectrality(&s, 4, 5, COSPEC_TOL).unwrap();
        assert!(r.strongly_cospectral);
        assert!(r.sign_pattern.iter().all(|&(_, t)| t != SignTag::NotInSupport));
        let g = build_double_subdivided_star(3, 5).unwrap();
        let s = spec_of(&g);
        for pendant in [5, 6, 7, 13, 17] {
            assert!(!strong_cospectrality(&s, 0, pendant, COSPEC_TOL).unwrap().strongly_cospectral);
        }
        assert_eq!(strong_cospectrality(&s, 2, 2, COSPEC_TOL), Err(TransferError::SameVertex));
    }

    #[test]
    fn traces() {
        let p2 = spec_of(&build_path(2).unwrap());
        let tr = fidelity_trace(&p2, 0, 1, &[PI / 2.0]).unwrap();
        assert!((tr.fidelities[0] - 1.0).abs() < 1e-14);
        let p3 = spec_of(&build_path(3).unwrap());
        let tr = fidelity_trace(&p3, 0, 2, &[PI / 2f64.sqrt()]).unwrap();
        assert!((tr.fidelities[0] - 1.0).abs() < 1e-12);
        let tr = fidelity_trace(&p3, 0, 2, &[0.0]).unwrap();
        assert!(tr.fidelities[0] < 1e-20 && tr.phases[0].is_none());
        assert!(fidelity_trace(&p3, 0, 2, &[-1.0]).is_err());
        assert!(fidelity_trace(&p3, 0, 2, &[f64::NAN]).is_err());
        let csv = fidelity_trace(&p3, 0, 0, &[0.0, 1.0]).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("time,fidelity,re_phase,im_phase"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, vec![0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_time_range("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_time_range("0:200:0.01").unwrap().len(), 20001);
        assert!(parse_time_range("0:1").is_err());
        assert!(parse_time_range("0:1:0").is_err());
        assert!(parse_time_range("2:1:0.1").is_err());
    }

    #[test]
    fn real_formatting_round_trips() {
        for x in [PI, 1.0 / 3.0, 1e-300, 123456789.123456789] {
            assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
        }
    }
}
