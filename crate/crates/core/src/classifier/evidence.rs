//! Evidence records and their exact re-verification.

use serde::{Deserialize, Serialize};

use crate::exact::{
    characteristic_polynomial_t, q_discriminant, q_polynomial, reducibility_report, resolvent_at_unit_points,
    verify_factorization, IntPolynomial, Parity, ReducibilityReport,
};
use crate::graph::{build_double_subdivided_star, Side, StarLayout};
use crate::transfer::{RatioReport, SequenceFamily};

use super::structure::{asymmetry_evidence, P6_ORDER};
use super::{orient, orient_two, Answer, Justification, Kind, TransferVerdict};

/// Exact facts showing that no two of `θ_1, θ_2, θ_3` have a rational ratio.
///
/// `θ_1` is a root of `min_poly`, which is irreducible: `Q(±1) != 0` rules out
/// rational roots of `Q` (monic with constant term `-1`), and the reducibility
/// report rules out the only remaining shape `-f(x) f(-x)`; in the reducible
/// case `f(±1) != 0` makes the cubic `f` irreducible. If `θ_j = r θ_i` with
/// `r ∈ Q`, then `min_poly(r x)` shares the root `θ_i` and has the same degree,
/// so `min_poly(r x) = r^d min_poly(x)`; comparing nonzero constant terms gives
/// `r^d = 1`, `r = ±1`, contradicting that the `θ_i` are distinct positive
/// numbers (`disc q != 0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub reducibility: ReducibilityReport,
    pub min_poly: IntPolynomial,
    pub resolvent_at_one: i64,
    pub resolvent_at_minus_one: i64,
    pub discriminant_nonzero: bool,
}

impl IndependenceCertificate {
    pub fn compute(l: usize, m: usize) -> Self {
        let reducibility = reducibility_report(l, m);
        let min_poly = reducibility.cubic_factor.clone().unwrap_or_else(|| q_polynomial(l, m));
        let (q1, qm1) = resolvent_at_unit_points(l, m);
        Self {
            reducibility,
            min_poly,
            resolvent_at_one: i64::try_from(q1).expect("small value"),
            resolvent_at_minus_one: i64::try_from(qm1).expect("small value"),
            discriminant_nonzero: q_discriminant(l, m) != 0.into(),
        }
    }

    /// Checks that the chain of facts holds, not merely that it was recorded.
    pub fn holds(&self, l: usize, m: usize) -> Result<(), String> {
        if *self != Self::compute(l, m) {
            return Err("certificate differs from recomputation".into());
        }
        if self.resolvent_at_one == 0 || self.resolvent_at_minus_one == 0 {
            return Err("Q has a rational root".into());
        }
        if !self.discriminant_nonzero {
            return Err("repeated eigenvalue".into());
        }
        if self.min_poly.coeff(0) == 0.into() || self.min_poly.degree().unwrap_or(0) < 2 {
            return Err("minimal polynomial has a rational root".into());
        }
        let q = q_polynomial(l, m);
        if self.reducibility.reducible && !verify_factorization(&q, &self.min_poly) {
            return Err("cubic factor does not divide q".into());
        }
        let pt = characteristic_polynomial_t(l, m);
        if !pt.divisible_by_monic(&q) {
            return Err("q does not divide the characteristic polynomial".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioChain {
    pub certificate: IndependenceCertificate,
    /// Secondary numeric evidence: continued fractions of `θ_i / θ_j`.
    pub numeric: RatioReport,
}

/// A closed-walk count difference between two vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSeparation {
    pub pair: (usize, usize),
    pub length: usize,
    pub walks: (u64, u64),
}

/// How every vertex pair of `T(l, m)`, `l != m`, fails to be strongly cospectral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymmetryEvidence {
    pub total_pairs: usize,
    pub degree_mismatch_pairs: usize,
    pub aut_separated_pairs: usize,
    pub walk_separated: Vec<WalkSeparation>,
    /// Pairs no obstruction applies to; empty whenever the verdict stands.
    pub uncovered: Vec<(usize, usize)>,
}

impl AsymmetryEvidence {
    pub(crate) fn remapped(&self, map: &impl Fn(usize) -> usize) -> Self {
        let mut out = self.clone();
        for w in &mut out.walk_separated {
            let (u, v) = (map(w.pair.0), map(w.pair.1));
            if u > v {
                w.walks = (w.walks.1, w.walks.0);
            }
            w.pair = (u.min(v), u.max(v));
        }
        out.walk_separated.sort_by_key(|w| w.pair);
        for p in &mut out.uncovered {
            *p = (map(p.0).min(map(p.1)), map(p.0).max(map(p.1)));
        }
        out.uncovered.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorEvidence {
    /// 1-based positions `(i, 7 - i)` on `P_6`.
    pub positions: (usize, usize),
    pub vertices: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Evidence {
    RatioChain(RatioChain),
    Reducibility(ReducibilityReport),
    Asymmetry(AsymmetryEvidence),
    PathMirror(MirrorEvidence),
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn same_pair(got: Option<(usize, usize)>, want: (usize, usize)) -> bool {
    got == Some(want) || got == Some((want.1, want.0))
}

pub(super) fn verify(v: &TransferVerdict) -> Result<(), String> {
    let (l, m) = v.graph;
    ensure(l >= 1 && m >= 1, "graph parameters must be at least 1")?;
    let (cl, cm) = (l.min(m), l.max(m));
    let map = orient(l, m);
    let yes = v.verdict == Answer::Yes;
    use Justification::*;
    match (v.justification, &v.evidence) {
        (RatioIrrational, Evidence::RatioChain(chain)) => {
            ensure(v.kind == Kind::Pst && !yes && v.pair.vertices.is_none(), "PST-no for all pairs expected")?;
            chain.certificate.holds(cl, cm)
        }
        (TllCoalescence, Evidence::Reducibility(rep)) => {
            ensure(cl == cm && cl >= 2, "coalescence applies to T(l, l), l >= 2")?;
            ensure(v.kind == Kind::Pgst && yes, "PGST-yes expected")?;
            ensure(v.sequence_family == Some(SequenceFamily::QuarterOdd), "wrong sequence family")?;
            ensure(same_pair(v.pair.vertices, (0, 1)), "pair must be the two centres")?;
            ensure(*rep == reducibility_report(cl, cm), "reducibility report differs")?;
            let li = cl as i64;
            let expected = IntPolynomial::from_i64(&[1, -(li + 1), -1, 1]);
            ensure(rep.cubic_factor.as_ref() == Some(&expected), "unexpected cubic factor")?;
            ensure(verify_factorization(&q_polynomial(cl, cm), &expected), "factorization fails")
        }
        (QIrreducible | ParityEven | ParityOdd, Evidence::Reducibility(rep)) => {
            ensure(l == 2 || m == 2, "parity trichotomy applies when one side has two branches")?;
            ensure(v.kind == Kind::Pgst, "PGST verdict expected")?;
            let (k, map) = orient_two(l, m);
            ensure(*rep == reducibility_report(2, k), "reducibility report differs")?;
            let want = match rep.theta_sum_parity {
                None => (QIrreducible, true),
                Some(Parity::Even) => (ParityEven, true),
                Some(Parity::Odd) => (ParityOdd, false),
            };
            ensure((v.justification, yes) == want, "justification or verdict inconsistent with q")?;
            if let Some(f) = &rep.cubic_factor {
                ensure(verify_factorization(&q_polynomial(2, k), f), "factorization fails")?;
            } else {
                let (q1, qm1) = resolvent_at_unit_points(2, k);
                ensure(q1 != 0.into() && qm1 != 0.into(), "Q has a rational root")?;
            }
            let fam = if yes { Some(SequenceFamily::OddPi) } else { None };
            ensure(v.sequence_family == fam, "wrong sequence family")?;
            let [c, d, e, f] = StarLayout::new(2, k).branch_roles(Side::Left).expect("two branches");
            let want_pair = match v.pair.label.as_str() {
                "c,d" => (map(c), map(d)),
                "e,f" => (map(e), map(f)),
                other => return Err(format!("unexpected pair {other}")),
            };
            ensure(same_pair(v.pair.vertices, want_pair), "pair vertices do not match their roles")
        }
        (P6Special, Evidence::PathMirror(mirror)) => {
            ensure(cl == 1 && cm == 1, "mirror pairs apply to P_6 = T(1, 1)")?;
            ensure(v.kind == Kind::Pgst && yes, "PGST-yes expected")?;
            ensure(v.sequence_family == Some(SequenceFamily::QuarterOdd), "wrong sequence family")?;
            let (i, j) = mirror.positions;
            ensure((1..=6).contains(&i) && i + j == 7, "positions are not mirror images")?;
            let t = build_double_subdivided_star(1, 1).map_err(|e| e.to_string())?;
            let path_ok = P6_ORDER.windows(2).all(|w| t.neighbors()[w[0]].contains(&w[1]));
            ensure(path_ok, "vertex order is not the path")?;
            let want = (map(P6_ORDER[i - 1]), map(P6_ORDER[j - 1]));
            ensure(mirror.vertices == want && same_pair(v.pair.vertices, want), "pair vertices differ")
        }
        (DegreeMismatch | AutAsymmetry, Evidence::Asymmetry(ev)) => {
            ensure(l != m && l != 2 && m != 2, "asymmetry argument needs l != m and no two-branch side")?;
            ensure(v.kind == Kind::Pgst && !yes && v.pair.vertices.is_none(), "PGST-no for all pairs expected")?;
            let fresh = asymmetry_evidence(cl, cm).remapped(&map);
            ensure(*ev == fresh, "obstruction census differs from recomputation")?;
            ensure(ev.uncovered.is_empty(), "some pair has no obstruction")?;
            ensure(
                ev.degree_mismatch_pairs + ev.aut_separated_pairs + ev.walk_separated.len() == ev.total_pairs,
                "census does not cover every pair",
            )
        }
        (code, _) => Err(format!("evidence kind does not match {code}")),
    }
}
