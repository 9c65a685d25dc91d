//! Verdicts over a rectangle of parameters, optionally with numeric witnesses.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::build_double_subdivided_star;
use crate::spectral::{eig_symmetric, SpectralData, GROUP_TOL};
use crate::transfer::{fmt_real, grid_search, pgst_search_sequence, SearchOptions};

use super::{classify, Answer, Justification, Kind, TransferVerdict};

pub const CSV_HEADER: [&str; 8] = [
    "l",
    "m",
    "pair",
    "kind",
    "verdict",
    "justification",
    "best_fidelity",
    "best_time",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableOptions {
    pub witnesses: bool,
    /// Sequence length for PGST-yes witnesses.
    pub k_max: u64,
    /// Dense grid used for PARITY-ODD suprema.
    pub grid_step: f64,
    pub grid_t_max: f64,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            witnesses: false,
            k_max: 100_000,
            grid_step: std::f64::consts::PI / 200.0,
            grid_t_max: 1e5,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellStats {
    pub searches: usize,
    pub evaluations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub l: usize,
    pub m: usize,
    pub verdicts: Vec<TransferVerdict>,
    pub stats: CellStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictTable {
    pub cells: Vec<TableCell>,
}

fn attach_witnesses(l: usize, m: usize, verdicts: &mut [TransferVerdict], opts: &TableOptions) -> CellStats {
    let mut stats = CellStats::default();
    let needs = |v: &TransferVerdict| {
        v.kind == Kind::Pgst
            && v.pair.vertices.is_some()
            && (v.verdict == Answer::Yes || v.justification == Justification::ParityOdd)
    };
    if !verdicts.iter().any(needs) {
        return stats;
    }
    let g = build_double_subdivided_star(l, m).expect("valid parameters");
    let spec: SpectralData<f64> = eig_symmetric(&g.adjacency(), GROUP_TOL).expect("Jacobi converges on trees");
    for v in verdicts.iter_mut().filter(|v| needs(v)) {
        let (a, b) = v.pair.vertices.unwrap();
        let w = match v.sequence_family {
            Some(fam) if v.verdict == Answer::Yes => {
                pgst_search_sequence(&spec, a, b, fam, opts.k_max, &SearchOptions::default())
            }
            _ => grid_search(&spec, a, b, opts.grid_step, opts.grid_t_max),
        };
        stats.searches += 1;
        stats.evaluations += w.evaluations;
        v.numeric_witness = Some(w);
    }
    stats
}

/// Classification of one cell, with witnesses when requested.
pub fn compute_cell(l: usize, m: usize, opts: &TableOptions) -> TableCell {
    let mut verdicts = classify(l, m);
    let stats = if opts.witnesses {
        attach_witnesses(l, m, &mut verdicts, opts)
    } else {
        CellStats::default()
    };
    TableCell { l, m, verdicts, stats }
}

/// Classifies every `T(l, m)` with `1 ≤ l ≤ l_max`, `1 ≤ m ≤ m_max`, cells in
/// row-major order; cells are computed in parallel.
pub fn verdict_table(l_max: usize, m_max: usize, opts: &TableOptions) -> VerdictTable {
    let keys: Vec<(usize, usize)> = (1..=l_max).flat_map(|l| (1..=m_max).map(move |m| (l, m))).collect();
    VerdictTable {
        cells: keys.into_par_iter().map(|(l, m)| compute_cell(l, m, opts)).collect(),
    }
}

impl TableCell {
    /// Flat CSV records, one per verdict.
    pub fn csv_records(&self) -> Vec<[String; 8]> {
        self.verdicts
            .iter()
            .map(|v| {
                let (f, t) = match &v.numeric_witness {
                    Some(w) => (fmt_real(w.best_fidelity), fmt_real(w.best_time)),
                    None => (String::new(), String::new()),
                };
                [
                    self.l.to_string(),
                    self.m.to_string(),
                    v.pair.label.clone(),
                    v.kind.to_string(),
                    v.verdict.to_string(),
                    v.justification.to_string(),
                    f,
                    t,
                ]
            })
            .collect()
    }
}

/// Writes header and records as CSV.
pub fn write_csv_records<'a>(records: impl IntoIterator<Item = &'a [String; 8]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

impl VerdictTable {
    pub fn sort(&mut self) {
        self.cells.sort_by_key(|c| (c.l, c.m));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let records: Vec<[String; 8]> = self.cells.iter().flat_map(|c| c.csv_records()).collect();
        write_csv_records(&records)
    }

    /// Number of verdicts per justification code.
    pub fn summary(&self) -> BTreeMap<Justification, usize> {
        let mut out = BTreeMap::new();
        for v in self.cells.iter().flat_map(|c| &c.verdicts) {
            *out.entry(v.justification).or_insert(0) += 1;
        }
        out
    }
}
