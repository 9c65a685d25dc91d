//! Run configuration: defaults, then a `key=value` file, then command-line flags.

use std::path::PathBuf;

use dstar::spectral::GROUP_TOL;
use dstar::transfer::{COSPEC_TOL, SUPPORT_TOL};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Usage(format!("unknown format {other:?} (expected json or csv)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub support_tol: f64,
    pub cospec_tol: f64,
    pub group_tol: f64,
    pub k_max: u64,
    pub grid_step: f64,
    pub t_max: f64,
    /// `None` means the command picks (from the output extension, else its default).
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// 0 lets the thread pool decide.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            support_tol: SUPPORT_TOL,
            cospec_tol: COSPEC_TOL,
            group_tol: GROUP_TOL,
            k_max: 100_000,
            grid_step: std::f64::consts::PI / 200.0,
            t_max: 1e5,
            format: None,
            out: None,
            seed: 0,
            workers: 0,
        }
    }
}

/// Values given explicitly, by file or by flag.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub support_tol: Option<f64>,
    pub cospec_tol: Option<f64>,
    pub group_tol: Option<f64>,
    pub k_max: Option<u64>,
    pub grid_step: Option<f64>,
    pub t_max: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {value:?} for {key}")))
}

/// Parses flat `key=value` text; `#` starts a comment line.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let n = i + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {n}: expected key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "support_tol" => o.support_tol = Some(parse_value(key, value, n)?),
            "cospec_tol" => o.cospec_tol = Some(parse_value(key, value, n)?),
            "group_tol" => o.group_tol = Some(parse_value(key, value, n)?),
            "k_max" => o.k_max = Some(parse_value(key, value, n)?),
            "grid_step" => o.grid_step = Some(parse_value(key, value, n)?),
            "t_max" => o.t_max = Some(parse_value(key, value, n)?),
            "format" => o.format = Some(value.parse()?),
            "out" => o.out = Some(PathBuf::from(value)),
            "seed" => o.seed = Some(parse_value(key, value, n)?),
            "workers" => o.workers = Some(parse_value(key, value, n)?),
            other => return Err(CliError::Usage(format!("config line {n}: unknown key {other:?}"))),
        }
    }
    Ok(o)
}

impl RunConfig {
    pub fn apply(mut self, o: &Overrides) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { self.$f = v; } )* };
        }
        take!(support_tol, cospec_tol, group_tol, k_max, grid_step, t_max, seed, workers);
        if o.format.is_some() {
            self.format = o.format;
        }
        if o.out.is_some() {
            self.out = o.out.clone();
        }
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("support_tol", self.support_tol),
            ("cospec_tol", self.cospec_tol),
            ("group_tol", self.group_tol),
            ("grid_step", self.grid_step),
            ("t_max", self.t_max),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if self.k_max < 1 {
            return Err(CliError::Usage("k_max must be at least 1".into()));
        }
        Ok(())
    }

    /// Explicit format, else the output file extension, else `default`.
    pub fn format_or(&self, default: Format) -> Format {
        self.format
            .or_else(|| {
                let ext = self.out.as_ref()?.extension()?.to_str()?.to_ascii_lowercase();
                match ext.as_str() {
                    "json" => Some(Format::Json),
                    "csv" => Some(Format::Csv),
                    _ => None,
                }
            })
            .unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config("# run\nk_max = 500\nformat=csv\n\nseed=9\n").unwrap();
        let flags = Overrides {
            k_max: Some(7),
            ..Default::default()
        };
        let c = RunConfig::default().apply(&file).apply(&flags);
        assert_eq!((c.k_max, c.seed, c.format), (7, 9, Some(Format::Csv)));
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config("k_max").is_err());
        assert!(parse_config("nope=1").is_err());
        assert!(parse_config("k_max=x").is_err());
        let c = RunConfig::default().apply(&parse_config("grid_step=0").unwrap());
        assert!(c.validate().is_err());
        let c = RunConfig::default().apply(&parse_config("k_max=0").unwrap());
        assert!(c.validate().is_err());
    }

    #[test]
    fn format_from_extension() {
        let c = RunConfig {
            out: Some("t.JSON".into()),
            ..Default::default()
        };
        assert_eq!(c.format_or(Format::Csv), Format::Json);
        assert_eq!(RunConfig::default().format_or(Format::Csv), Format::Csv);
    }
}
