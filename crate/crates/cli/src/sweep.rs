//! Resumable verdict sweeps. The `--out` file is the store: cells already in it
//! are reused, missing cells are computed in batches, and after every batch the
//! whole store is rewritten (sorted, atomically) by this single writer. A rerun
//! over a complete store therefore reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use dstar::classifier::{
    compute_cell, write_csv_records, TableCell, TableOptions, VerdictTable, CSV_HEADER,
};
use rayon::prelude::*;

use crate::config::{Format, RunConfig};
use crate::error::{io_err, CliError};
use crate::output::{emit, write_atomic};

type Key = (usize, usize);
type Rows = Vec<[String; 8]>;

/// Cells computed between two store rewrites, per worker thread.
const CELLS_PER_WORKER: usize = 4;

enum Store {
    Csv(BTreeMap<Key, Rows>),
    Json(BTreeMap<Key, TableCell>),
}

impl Store {
    fn empty(format: Format) -> Self {
        match format {
            Format::Csv => Store::Csv(BTreeMap::new()),
            Format::Json => Store::Json(BTreeMap::new()),
        }
    }

    fn load(path: &Path, format: Format) -> Result<Self, CliError> {
        if !path.exists() {
            return Ok(Self::empty(format));
        }
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let bad = |why: String| CliError::Usage(format!("{} is not a resumable sweep: {why}", path.display()));
        match format {
            Format::Json => {
                let t: VerdictTable = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
                Ok(Store::Json(t.cells.into_iter().map(|c| ((c.l, c.m), c)).collect()))
            }
            Format::Csv => {
                let mut r = csv::Reader::from_reader(text.as_bytes());
                let header = r.headers().map_err(|e| bad(e.to_string()))?;
                if header.iter().ne(CSV_HEADER) {
                    return Err(bad("unexpected header".into()));
                }
                let mut cells: BTreeMap<Key, Rows> = BTreeMap::new();
                for rec in r.records() {
                    let rec = rec.map_err(|e| bad(e.to_string()))?;
                    let row: [String; 8] = std::array::from_fn(|i| rec.get(i).unwrap_or_default().to_string());
                    let l = row[0].parse().map_err(|_| bad(format!("bad l {:?}", row[0])))?;
                    let m = row[1].parse().map_err(|_| bad(format!("bad m {:?}", row[1])))?;
                    cells.entry((l, m)).or_default().push(row);
                }
                Ok(Store::Csv(cells))
            }
        }
    }

    fn keys(&self) -> BTreeSet<Key> {
        match self {
            Store::Csv(c) => c.keys().copied().collect(),
            Store::Json(c) => c.keys().copied().collect(),
        }
    }

    fn insert(&mut self, cell: TableCell) {
        let key = (cell.l, cell.m);
        match self {
            Store::Csv(c) => {
                c.insert(key, cell.csv_records());
            }
            Store::Json(c) => {
                c.insert(key, cell);
            }
        }
    }

    fn render(&self) -> String {
        match self {
            Store::Csv(c) => write_csv_records(c.values().flatten()),
            Store::Json(c) => VerdictTable {
                cells: c.values().cloned().collect(),
            }
            .to_json(),
        }
    }

    /// Justification code of every verdict, with its cell.
    fn codes(&self) -> Vec<(Key, String)> {
        match self {
            Store::Csv(c) => c
                .iter()
                .flat_map(|(k, rows)| rows.iter().map(move |r| (*k, r[5].clone())))
                .collect(),
            Store::Json(c) => c
                .iter()
                .flat_map(|(k, cell)| cell.verdicts.iter().map(move |v| (*k, v.justification.to_string())))
                .collect(),
        }
    }
}

fn report(store: &Store, computed: usize, reused: usize) {
    eprintln!("sweep: {computed} cells computed, {reused} reused");
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut cells: BTreeMap<String, BTreeSet<Key>> = BTreeMap::new();
    for (k, code) in store.codes() {
        *counts.entry(code.clone()).or_default() += 1;
        cells.entry(code).or_default().insert(k);
    }
    for (code, n) in &counts {
        eprintln!("  {code:<16} {n}");
    }
    for code in ["Q-IRREDUCIBLE", "PARITY-EVEN", "PARITY-ODD"] {
        let list: Vec<String> = cells
            .get(code)
            .map(|s| s.iter().map(|(l, m)| format!("T({l},{m})")).collect())
            .unwrap_or_default();
        eprintln!("  {code} cells: {}", if list.is_empty() { "none".into() } else { list.join(" ") });
    }
}

pub fn sweep(cfg: &RunConfig, lmax: usize, mmax: usize, witness: bool) -> Result<(), CliError> {
    if lmax == 0 || mmax == 0 {
        return Err(CliError::Usage("lmax and mmax must be at least 1".into()));
    }
    let format = cfg.format_or(Format::Csv);
    let mut store = match &cfg.out {
        Some(p) => Store::load(p, format)?,
        None => Store::empty(format),
    };
    let have = store.keys();
    let missing: Vec<Key> = (1..=lmax)
        .flat_map(|l| (1..=mmax).map(move |m| (l, m)))
        .filter(|k| !have.contains(k))
        .collect();
    let reused = lmax * mmax - missing.len();
    let opts = TableOptions {
        witnesses: witness,
        k_max: cfg.k_max,
        grid_step: cfg.grid_step,
        grid_t_max: cfg.t_max,
    };
    let batch = rayon::current_num_threads().max(1) * CELLS_PER_WORKER;
    for chunk in missing.chunks(batch) {
        let cells: Vec<TableCell> = chunk.par_iter().map(|&(l, m)| compute_cell(l, m, &opts)).collect();
        for c in cells {
            store.insert(c);
        }
        if let Some(p) = &cfg.out {
            write_atomic(p, &store.render())?;
        }
    }
    match &cfg.out {
        // Nothing missing still normalizes the store to the canonical layout.
        Some(p) if missing.is_empty() => write_atomic(p, &store.render())?,
        Some(_) => {}
        None => emit(None, &store.render())?,
    }
    report(&store, missing.len(), reused);
    Ok(())
}
