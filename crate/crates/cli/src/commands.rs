use dstar::classifier::{compute_cell, write_csv_records, TableOptions};
use dstar::spectral::eig_symmetric;
use dstar::transfer::{
    eigenvalue_support, fidelity_trace, parse_time_range, strong_cospectrality, unitarity_residuals, FidelityTrace,
};
use dstar::{
    build_double_subdivided_star, build_path, build_subdivided_star, parse_edge_list, Family, GraphSpec,
    SpectralData64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::error::{io_err, CliError};
use crate::output::{emit, pretty_json};
use crate::GraphArgs;

/// Number of seeded random times at which `analyze` checks unitarity.
const CHECK_TIMES: usize = 8;

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("family {family} needs --{flag}")))
}

pub fn build_graph(args: &GraphArgs) -> Result<GraphSpec, CliError> {
    if let Some(path) = &args.edge_list {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        return Ok(parse_edge_list(&text)?);
    }
    let family = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::Usage("give --family or --edge-list".into()))?;
    match family.to_ascii_uppercase().as_str() {
        "T" => Ok(build_double_subdivided_star(
            need(args.l, "l", "T")?,
            need(args.m, "m", "T")?,
        )?),
        "SK" => Ok(build_subdivided_star(need(args.l, "l", "SK")?)?),
        "P" => Ok(build_path(need(args.n, "n", "P")?)?),
        other => Err(CliError::Usage(format!("unknown family {other:?} (expected T, SK or P)"))),
    }
}

/// Resolves `u,v`. Paths take 1-based positions; other graphs take role names
/// or 0-based indices.
pub fn parse_pair(g: &GraphSpec, text: &str) -> Result<(usize, usize), CliError> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("pair {text:?} must look like u,v")))?;
    let resolve = |tok: &str| -> Result<usize, CliError> {
        if let Family::Path { n } = g.family() {
            let pos: usize = tok
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("path vertex {tok:?} must be a position 1..={n}")))?;
            if pos == 0 || pos > n {
                return Err(CliError::Usage(format!("path vertex {pos} outside 1..={n}")));
            }
            Ok(pos - 1)
        } else {
            Ok(g.resolve_vertex(tok)?)
        }
    };
    let (u, v) = (resolve(x)?, resolve(y)?);
    if u == v {
        return Err(CliError::Usage("pair vertices must differ".into()));
    }
    Ok((u, v))
}

/// Largest tolerated `max |A - Σ θ E_θ|` before a decomposition is rejected.
const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Decomposes and checks the grouped spectrum still reproduces `A`; an
/// oversized `group_tol` merges distinct eigenvalues and fails here.
fn decompose(g: &GraphSpec, cfg: &RunConfig) -> Result<SpectralData64, CliError> {
    let a = g.adjacency();
    let spec = eig_symmetric(&a, cfg.group_tol)?;
    let residual = spec.reconstruct().max_abs_diff(a.matrix());
    if !(residual <= RECONSTRUCTION_TOL) {
        return Err(CliError::Numeric(format!(
            "spectral reconstruction residual {residual:e} exceeds {RECONSTRUCTION_TOL:e} (group_tol {})",
            cfg.group_tol
        )));
    }
    Ok(spec)
}

fn check_finite(tr: &FidelityTrace<f64>) -> Result<(), CliError> {
    if tr.fidelities.iter().all(|f| f.is_finite()) {
        Ok(())
    } else {
        Err(CliError::Numeric("non-finite fidelity".into()))
    }
}

pub fn analyze(
    cfg: &RunConfig,
    args: &GraphArgs,
    pair: Option<&str>,
    trace: Option<&str>,
    idempotents: bool,
) -> Result<(), CliError> {
    let g = build_graph(args)?;
    let pair = pair.map(|p| parse_pair(&g, p)).transpose()?;
    let times = trace.map(parse_time_range).transpose()?;
    let format = cfg.format_or(if times.is_some() { Format::Csv } else { Format::Json });
    let spec = decompose(&g, cfg)?;
    let trace = match (pair, &times) {
        (Some((u, v)), Some(ts)) => Some(fidelity_trace(&spec, u, v, ts)?),
        (None, Some(_)) => return Err(CliError::Usage("--trace needs --pair".into())),
        _ => None,
    };
    if let Some(tr) = &trace {
        check_finite(tr)?;
    }

    if format == Format::Csv {
        let tr = trace.ok_or_else(|| CliError::Usage("csv output of analyze needs --pair and --trace".into()))?;
        return emit(cfg.out.as_deref(), &tr.to_csv());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let check_times: Vec<f64> = (0..CHECK_TIMES).map(|_| rng.gen_range(0.0..100.0)).collect();
    let (mut unit, mut sym) = (0.0f64, 0.0f64);
    for &t in &check_times {
        let (u, s) = unitarity_residuals(&spec, t);
        unit = unit.max(u);
        sym = sym.max(s);
    }
    let supports: Vec<_> = match pair {
        Some((u, v)) => vec![u, v],
        None => (0..g.n()).collect(),
    }
    .into_iter()
    .map(|x| eigenvalue_support(&spec, x, cfg.support_tol))
    .collect();
    let mut report = json!({
        "graph": g,
        "spectrum": spec.to_json(idempotents),
        "supports": supports,
        "checks": {
            "seed": cfg.seed,
            "times": check_times,
            "projector_residual": spec.projector_residual(),
            "unitarity_residual": unit,
            "symmetry_residual": sym,
        },
    });
    if let Some((u, v)) = pair {
        report["pair"] = json!([u, v]);
        report["cospectrality"] = json!(strong_cospectrality(&spec, u, v, cfg.cospec_tol)?);
    }
    if let Some(tr) = trace {
        report["trace"] = json!(tr);
    }
    emit(cfg.out.as_deref(), &pretty_json(&report))
}

pub fn classify(cfg: &RunConfig, l: usize, m: usize, witness: bool) -> Result<(), CliError> {
    if l == 0 || m == 0 {
        return Err(CliError::Usage("l and m must be at least 1".into()));
    }
    let opts = TableOptions {
        witnesses: witness,
        k_max: cfg.k_max,
        grid_step: cfg.grid_step,
        grid_t_max: cfg.t_max,
    };
    let cell = compute_cell(l, m, &opts);
    let text = match cfg.format_or(Format::Json) {
        Format::Json => pretty_json(&cell),
        Format::Csv => write_csv_records(&cell.csv_records()),
    };
    emit(cfg.out.as_deref(), &text)
}

pub fn trace(cfg: &RunConfig, args: &GraphArgs, pair: &str, range: &str) -> Result<(), CliError> {
    let g = build_graph(args)?;
    let (u, v) = parse_pair(&g, pair)?;
    let times = parse_time_range(range)?;
    let spec = decompose(&g, cfg)?;
    let tr = fidelity_trace(&spec, u, v, &times)?;
    check_finite(&tr)?;
    let text = match cfg.format_or(Format::Csv) {
        Format::Csv => tr.to_csv(),
        Format::Json => pretty_json(&tr),
    };
    emit(cfg.out.as_deref(), &text)
}
