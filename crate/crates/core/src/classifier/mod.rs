//! PST/PGST verdicts for `T(l, m)`, each tied to an exact computation that
//! can be re-run through [`TransferVerdict::verify`].

mod evidence;
mod structure;
mod table;

pub use evidence::{
    AsymmetryEvidence, Evidence, IndependenceCertificate, MirrorEvidence, RatioChain, WalkSeparation,
};
pub use structure::{aut_separates, closed_walk_separation, path_position_p6, P6_ORDER};
pub use table::{
    compute_cell, verdict_table, write_csv_records, CellStats, TableCell, TableOptions, VerdictTable, CSV_HEADER,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{reducibility_report, Parity};
use crate::graph::{Side, StarLayout};
use crate::transfer::{pst_decision, BranchPair, PgstWitness, SequenceFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "PGST")]
    Pgst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Justification {
    RatioIrrational,
    AutAsymmetry,
    DegreeMismatch,
    QIrreducible,
    ParityEven,
    ParityOdd,
    P6Special,
    TllCoalescence,
}

impl Justification {
    pub const ALL: [Justification; 8] = [
        Self::RatioIrrational,
        Self::AutAsymmetry,
        Self::DegreeMismatch,
        Self::QIrreducible,
        Self::ParityEven,
        Self::ParityOdd,
        Self::P6Special,
        Self::TllCoalescence,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Self::RatioIrrational => "RATIO-IRRATIONAL",
            Self::AutAsymmetry => "AUT-ASYMMETRY",
            Self::DegreeMismatch => "DEGREE-MISMATCH",
            Self::QIrreducible => "Q-IRREDUCIBLE",
            Self::ParityEven => "PARITY-EVEN",
            Self::ParityOdd => "PARITY-ODD",
            Self::P6Special => "P6-SPECIAL",
            Self::TllCoalescence => "TLL-COALESCENCE",
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Pst => "PST",
            Kind::Pgst => "PGST",
        })
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        })
    }
}

/// A labelled vertex pair, or every pair at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRef {
    /// `all-pairs`, a role pair such as `a,b`, or 1-based path positions such as `1,6`.
    pub label: String,
    /// Vertex indices in the numbering of the classified graph.
    pub vertices: Option<(usize, usize)>,
}

impl PairRef {
    pub fn all() -> Self {
        Self {
            label: "all-pairs".into(),
            vertices: None,
        }
    }

    pub fn labeled(label: impl Into<String>, u: usize, v: usize) -> Self {
        Self {
            label: label.into(),
            vertices: Some((u, v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferVerdict {
    pub graph: (usize, usize),
    pub pair: PairRef,
    pub kind: Kind,
    pub verdict: Answer,
    pub sequence_family: Option<SequenceFamily>,
    pub justification: Justification,
    pub evidence: Evidence,
    pub numeric_witness: Option<PgstWitness<f64>>,
}

impl TransferVerdict {
    /// Re-derives the exact facts behind the justification code.
    pub fn verify(&self) -> Result<(), String> {
        evidence::verify(self)
    }
}

/// Maps a vertex of `T(min, max)` to `T(l, m)`.
fn orient(l: usize, m: usize) -> impl Fn(usize) -> usize {
    orient_from(l.min(m), l.max(m), l > m)
}

/// Maps a vertex of `T(2, k)` to `T(l, m)`, where one of `l, m` is 2.
fn orient_two(l: usize, m: usize) -> (usize, impl Fn(usize) -> usize) {
    let k = if l == 2 { m } else { l };
    (k, orient_from(2, k, l != 2))
}

fn orient_from(l: usize, m: usize, swapped: bool) -> impl Fn(usize) -> usize {
    let from = StarLayout::new(l, m);
    move |v| if swapped { from.swap_sides(v) } else { v }
}

fn pgst(
    graph: (usize, usize),
    pair: PairRef,
    verdict: Answer,
    family: Option<SequenceFamily>,
    justification: Justification,
    evidence: Evidence,
) -> TransferVerdict {
    TransferVerdict {
        graph,
        pair,
        kind: Kind::Pgst,
        verdict,
        sequence_family: family,
        justification,
        evidence,
        numeric_witness: None,
    }
}

/// The verdicts that hold for `T(l, m)`, `l, m ≥ 1`.
///
/// The graph is analysed as `T(min, max)`; vertex indices in the output refer
/// to `T(l, m)` as given. Pair names `c,d` and `e,f` denote the pendant and
/// middle pairs of whichever side has exactly two branches (the left side of
/// `T(2, 2)`). Pairs not named
/// here receive no PGST verdict.
pub fn classify(l: usize, m: usize) -> Vec<TransferVerdict> {
    assert!(l >= 1 && m >= 1, "T(l, m) needs l, m >= 1");
    let graph = (l, m);
    let (cl, cm) = (l.min(m), l.max(m));
    let map = orient(l, m);
    let mut out = vec![pst_decision(l, m)];

    if cl == 1 && cm == 1 {
        for (i, j) in [(1, 6), (2, 5), (3, 4)] {
            let (u, v) = (P6_ORDER[i - 1], P6_ORDER[j - 1]);
            out.push(pgst(
                graph,
                PairRef::labeled(format!("{i},{j}"), map(u), map(v)),
                Answer::Yes,
                Some(SequenceFamily::QuarterOdd),
                Justification::P6Special,
                Evidence::PathMirror(MirrorEvidence {
                    positions: (i, j),
                    vertices: (map(u), map(v)),
                }),
            ));
        }
        return out;
    }

    if cl == cm {
        out.push(pgst(
            graph,
            PairRef::labeled("a,b", 0, 1),
            Answer::Yes,
            Some(SequenceFamily::QuarterOdd),
            Justification::TllCoalescence,
            Evidence::Reducibility(reducibility_report(cl, cm)),
        ));
    }

    if l == 2 || m == 2 {
        let (k, map) = orient_two(l, m);
        let rep = reducibility_report(2, k);
        let (answer, code) = match rep.theta_sum_parity {
            None => (Answer::Yes, Justification::QIrreducible),
            Some(Parity::Even) => (Answer::Yes, Justification::ParityEven),
            Some(Parity::Odd) => (Answer::No, Justification::ParityOdd),
        };
        let [c, d, e, f] = StarLayout::new(2, k).branch_roles(Side::Left).expect("two branches");
        for (pair, (u, v)) in [(BranchPair::Pendants, (c, d)), (BranchPair::Middles, (e, f))] {
            let name = match pair {
                BranchPair::Pendants => "c,d",
                BranchPair::Middles => "e,f",
            };
            out.push(pgst(
                graph,
                PairRef::labeled(name, map(u), map(v)),
                answer,
                (answer == Answer::Yes).then_some(SequenceFamily::OddPi),
                code,
                Evidence::Reducibility(rep.clone()),
            ));
        }
    }

    if l != m && l != 2 && m != 2 {
        let ev = structure::asymmetry_evidence(cl, cm);
        let remap = |e: &AsymmetryEvidence| e.remapped(&map);
        out.push(pgst(
            graph,
            PairRef::all(),
            Answer::No,
            None,
            Justification::DegreeMismatch,
            Evidence::Asymmetry(remap(&ev)),
        ));
        out.push(pgst(
            graph,
            PairRef::all(),
            Answer::No,
            None,
            Justification::AutAsymmetry,
            Evidence::Asymmetry(remap(&ev)),
        ));
    }
    out
}

/// The PGST-yes verdicts' pairs must be strongly cospectral; this lists them.
pub fn pgst_positive_pairs(verdicts: &[TransferVerdict]) -> Vec<(usize, usize)> {
    verdicts
        .iter()
        .filter(|v| v.kind == Kind::Pgst && v.verdict == Answer::Yes)
        .filter_map(|v| v.pair.vertices)
        .collect()
}
