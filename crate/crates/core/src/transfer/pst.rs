//! Perfect state transfer decision for `T(l, m)`.

use crate::classifier::{
    Answer, Evidence, IndependenceCertificate, Justification, Kind, PairRef, RatioChain, TransferVerdict,
};
use crate::spectral::theta_roots;

use super::ratio_condition_violation;

/// Denominator bound for the continued-fraction evidence.
pub const RATIO_MAX_DENOMINATOR: u64 = 1_000_000;

/// No pair of `T(l, m)` admits perfect state transfer.
///
/// PST from `u` forces periodicity at `u`. Every vertex support contains
/// `±θ_1, ±θ_2, ±θ_3`, so periodicity needs `2θ_1 / 2θ_2 ∈ Q`, which the
/// independence certificate refutes exactly. The continued-fraction report is
/// attached as numeric corroboration.
pub fn pst_decision(l: usize, m: usize) -> TransferVerdict {
    assert!(l >= 1 && m >= 1, "T(l, m) needs l, m >= 1");
    let (cl, cm) = (l.min(m), l.max(m));
    TransferVerdict {
        graph: (l, m),
        pair: PairRef::all(),
        kind: Kind::Pst,
        verdict: Answer::No,
        sequence_family: None,
        justification: Justification::RatioIrrational,
        evidence: Evidence::RatioChain(RatioChain {
            certificate: IndependenceCertificate::compute(cl, cm),
            numeric: ratio_condition_violation(&theta_roots::<f64>(cl, cm), RATIO_MAX_DENOMINATOR),
        }),
        numeric_witness: None,
    }
}
