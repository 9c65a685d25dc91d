//! Fidelity searches along structured time sequences and on dense grids.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PairAmplitude;
use crate::scalar::Real;
use crate::spectral::SpectralData;

/// Time sequences along which pretty good state transfer is sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceFamily {
    /// `t_k = (4k - 1) π / 2`.
    #[serde(rename = "(4Z-1)pi/2")]
    QuarterOdd,
    /// `t_k = (2k + 1) π`.
    #[serde(rename = "(2Z+1)pi")]
    OddPi,
    /// `t_k = 2kπ`.
    #[serde(rename = "2piZ")]
    EvenPi,
    /// Uniform grid `t_i = i · step` on `[0, k_max π]`.
    #[serde(rename = "unconstrained-grid")]
    Grid,
}

impl SequenceFamily {
    pub const ALL: [SequenceFamily; 4] = [Self::QuarterOdd, Self::OddPi, Self::EvenPi, Self::Grid];

    pub fn tag(self) -> &'static str {
        match self {
            Self::QuarterOdd => "(4Z-1)pi/2",
            Self::OddPi => "(2Z+1)pi",
            Self::EvenPi => "2piZ",
            Self::Grid => "unconstrained-grid",
        }
    }

    /// `k`-th member of a structured family; `None` for the grid.
    pub fn time<T: Real>(self, k: u64) -> Option<T> {
        let pi = T::PI();
        let k = T::from_u64(k)?;
        match self {
            Self::QuarterOdd => Some((T::lit(4.0) * k - T::one()) * pi / T::lit(2.0)),
            Self::OddPi => Some((T::lit(2.0) * k + T::one()) * pi),
            Self::EvenPi => Some(T::lit(2.0) * k * pi),
            Self::Grid => None,
        }
    }

    /// Limit phase of the amplitude along the family: `i` on `(4Z-1)π/2`
    /// (opposite partite classes), `1` on the integer multiples of `π`.
    pub fn target_phase<T: Real>(self) -> Option<Complex<T>> {
        match self {
            Self::QuarterOdd => Some(Complex::new(T::zero(), T::one())),
            Self::OddPi | Self::EvenPi => Some(Complex::new(T::one(), T::zero())),
            Self::Grid => None,
        }
    }
}

impl std::fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for SequenceFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| format!("unknown sequence family {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions<T> {
    /// Grid spacing for [`SequenceFamily::Grid`].
    pub grid_step: T,
    /// Overrides the grid horizon `k_max π`.
    pub grid_t_max: Option<T>,
}

impl<T: Real> Default for SearchOptions<T> {
    fn default() -> Self {
        Self {
            grid_step: T::PI() / T::lit(200.0),
            grid_t_max: None,
        }
    }
}

/// Best fidelity over indices `1..=upto`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoint<T> {
    pub upto: u64,
    pub best_fidelity: T,
    pub best_time: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PgstWitness<T> {
    pub pair: (usize, usize),
    pub sequence_family: SequenceFamily,
    /// Number of sequence members (or grid points) evaluated.
    pub evaluations: u64,
    pub best_index: u64,
    pub best_time: T,
    pub best_fidelity: T,
    pub target_phase: Option<Complex<T>>,
    pub achieved_phase: Option<Complex<T>>,
    /// Running best at `10, 100, ...` and at the final index.
    pub envelope: Vec<EnvelopePoint<T>>,
}

impl<T: Real> PgstWitness<T> {
    /// `|achieved - target|`, when both exist.
    pub fn phase_error(&self) -> Option<T> {
        Some((self.achieved_phase? - self.target_phase?).norm())
    }

    /// Whether the envelope strictly improves between its first and last decade.
    pub fn improves_across_decades(&self) -> bool {
        match (self.envelope.first(), self.envelope.last()) {
            (Some(a), Some(b)) => self.envelope.len() > 1 && b.best_fidelity > a.best_fidelity,
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("witness serializes")
    }
}

#[derive(Clone, Copy)]
struct Best<T> {
    fidelity: T,
    time: T,
    index: u64,
}

impl<T: Real> Best<T> {
    const fn none(zero: T) -> Self {
        Self {
            fidelity: zero,
            time: zero,
            index: 0,
        }
    }

    fn merge(self, other: Self) -> Self {
        if other.index == 0 {
            return self;
        }
        if self.index == 0
            || other.fidelity > self.fidelity
            || (other.fidelity == self.fidelity && other.time < self.time)
        {
            other
        } else {
            self
        }
    }
}

const CHUNK: u64 = 1 << 14;

fn best_in_range<T: Real>(amp: &PairAmplitude<T>, lo: u64, hi: u64, time_of: &(dyn Fn(u64) -> T + Sync)) -> Best<T> {
    let chunks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK - 1).min(hi)))
        .collect();
    chunks
        .into_par_iter()
        .map(|(s, e)| {
            let mut best = Best::none(T::zero());
            for k in s..=e {
                let t = time_of(k);
                best = best.merge(Best {
                    fidelity: amp.fidelity(t),
                    time: t,
                    index: k,
                });
            }
            best
        })
        .reduce(|| Best::none(T::zero()), Best::merge)
}

fn decade_marks(n: u64) -> Vec<u64> {
    let mut marks = Vec::new();
    let mut d = 10u64;
    while d < n {
        marks.push(d);
        d = d.saturating_mul(10);
    }
    marks.push(n);
    marks
}

/// Searches the fidelity from `a` to `b` over `k = 1..=k_max` of a sequence
/// family, or over the uniform grid `t_i = i · step`, `i ≥ 1`, up to `k_max π`.
/// Chunks are evaluated in parallel and merged by maximum fidelity, ties going
/// to the smaller time.
pub fn pgst_search_sequence<T: Real>(
    spec: &SpectralData<T>,
    a: usize,
    b: usize,
    family: SequenceFamily,
    k_max: u64,
    options: &SearchOptions<T>,
) -> PgstWitness<T> {
    let amp = PairAmplitude::new(spec, b, a, T::zero());
    let (count, time_of): (u64, Box<dyn Fn(u64) -> T + Sync>) = match family {
        SequenceFamily::Grid => {
            let step = options.grid_step;
            let t_max = options
                .grid_t_max
                .unwrap_or_else(|| T::PI() * T::from_u64(k_max).expect("k_max fits the scalar"));
            let count = (t_max / step + T::lit(1e-9)).floor().to_u64().unwrap_or(0);
            (count, Box::new(move |i| step * T::from_u64(i).unwrap()))
        }
        f => (k_max, Box::new(move |k| f.time::<T>(k).unwrap())),
    };
    search_amplitude(&amp, family, count, &*time_of)
}

/// Grid search over `t_i = i · step` for `i = 1..` while `t_i ≤ t_max`.
pub fn grid_search<T: Real>(spec: &SpectralData<T>, a: usize, b: usize, step: T, t_max: T) -> PgstWitness<T> {
    let opts = SearchOptions {
        grid_step: step,
        grid_t_max: Some(t_max),
    };
    pgst_search_sequence(spec, a, b, SequenceFamily::Grid, 0, &opts)
}

fn search_amplitude<T: Real>(
    amp: &PairAmplitude<T>,
    family: SequenceFamily,
    count: u64,
    time_of: &(dyn Fn(u64) -> T + Sync),
) -> PgstWitness<T> {
    let mut best = Best::none(T::zero());
    let mut envelope = Vec::new();
    let mut lo = 1;
    if count >= 1 {
        for mark in decade_marks(count) {
            best = best.merge(best_in_range(amp, lo, mark, time_of));
            envelope.push(EnvelopePoint {
                upto: mark,
                best_fidelity: best.fidelity,
                best_time: best.time,
            });
            lo = mark + 1;
        }
    }
    let achieved_phase = (best.index > 0)
        .then(|| amp.amplitude(best.time))
        .filter(|z| z.norm() > T::epsilon())
        .map(|z| z / z.norm());
    PgstWitness {
        pair: (amp.pair.1, amp.pair.0),
        sequence_family: family,
        evaluations: count,
        best_index: best.index,
        best_time: best.time,
        best_fidelity: best.fidelity,
        target_phase: family.target_phase(),
        achieved_phase,
        envelope,
    }
}

/// Result of a simultaneous Diophantine approximation search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KroneckerHint {
    pub q: u64,
    /// `max_j ‖q θ_j - α_j‖`, the distance to the nearest integer.
    pub max_error: f64,
}

fn dist_to_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Exhaustive search for `q ∈ [1, coeff_bound]` minimizing
/// `max_j ‖q θ_j - α_j‖`; ties go to the smaller `q`.
pub fn kronecker_time_hint(thetas: &[f64], targets: &[f64], coeff_bound: u64) -> Option<KroneckerHint> {
    if thetas.is_empty() || thetas.len() != targets.len() || coeff_bound == 0 {
        return None;
    }
    let err = |q: u64| {
        let qf = q as f64;
        thetas
            .iter()
            .zip(targets)
            .map(|(&th, &al)| dist_to_int(qf * th - al))
            .fold(0.0, f64::max)
    };
    let pick = |x: KroneckerHint, y: KroneckerHint| {
        if y.max_error < x.max_error || (y.max_error == x.max_error && y.q < x.q) {
            y
        } else {
            x
        }
    };
    let chunks: Vec<(u64, u64)> = (1..=coeff_bound)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK - 1).min(coeff_bound)))
        .collect();
    chunks
        .into_par_iter()
        .map(|(s, e)| {
            (s..=e)
                .map(|q| KroneckerHint { q, max_error: err(q) })
                .reduce(pick)
                .expect("nonempty chunk")
        })
        .reduce_with(pick)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_double_subdivided_star, build_path};
    use crate::spectral::eig_symmetric;

    #[test]
    fn family_members() {
        use std::f64::consts::PI;
        assert!((SequenceFamily::QuarterOdd.time::<f64>(1).unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((SequenceFamily::OddPi.time::<f64>(1).unwrap() - 3.0 * PI).abs() < 1e-15);
        assert!((SequenceFamily::EvenPi.time::<f64>(2).unwrap() - 4.0 * PI).abs() < 1e-15);
        for f in SequenceFamily::ALL {
            assert_eq!(f.tag().parse::<SequenceFamily>().unwrap(), f);
            assert_eq!(serde_json::to_value(f).unwrap(), serde_json::json!(f.tag()));
        }
    }

    #[test]
    fn p2_hits_one_on_quarter_odd() {
        let s = eig_symmetric(&build_path(2).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        let w = pgst_search_sequence(&s, 0, 1, SequenceFamily::QuarterOdd, 5, &SearchOptions::default());
        assert!((w.best_fidelity - 1.0).abs() < 1e-12);
        assert_eq!(w.best_index, 1);
        assert_eq!(w.envelope.len(), 1);
    }

    #[test]
    fn search_is_reproducible_and_monotone() {
        let g = build_double_subdivided_star(3, 3).unwrap();
        let s = eig_symmetric(&g.adjacency::<f64>(), 1e-7).unwrap();
        let w = pgst_search_sequence(&s, 0, 1, SequenceFamily::QuarterOdd, 50_000, &SearchOptions::default());
        let direct = super::super::transition_entry(&s, 1, 0, w.best_time).norm_sqr();
        assert!((direct - w.best_fidelity).abs() < 1e-10);
        assert!(w.envelope.windows(2).all(|p| p[0].best_fidelity <= p[1].best_fidelity));
        assert_eq!(w.envelope.last().unwrap().upto, 50_000);
        let again = pgst_search_sequence(&s, 0, 1, SequenceFamily::QuarterOdd, 50_000, &SearchOptions::default());
        assert_eq!(w, again);
    }

    #[test]
    fn grid_counts() {
        let s = eig_symmetric(&build_path(3).unwrap().adjacency::<f64>(), 1e-7).unwrap();
        let w = grid_search(&s, 0, 2, 0.5, 10.0);
        assert_eq!(w.evaluations, 20);
        assert!(w.target_phase.is_none());
    }

    #[test]
    fn kronecker_examples() {
        let h = kronecker_time_hint(&[2.0, -3.0], &[0.0, 0.0], 10).unwrap();
        assert_eq!((h.q, h.max_error), (1, 0.0));
        let h = kronecker_time_hint(&[2f64.sqrt()], &[0.0], 1000).unwrap();
        // best q is a convergent denominator of sqrt(2)
        assert!([1, 2, 5, 12, 29, 70, 169, 408, 985].contains(&h.q));
        assert!(h.max_error < 1.0 / h.q as f64);
        assert!(kronecker_time_hint(&[], &[], 5).is_none());
    }
}
