use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Parser;

use crate::kernels::PsiCase;
use crate::norms::IdentityTag;

use super::CliError;

/// Seed used when neither a flag, a config file nor the environment sets one.
pub const DEFAULT_SEED: u64 = 0x5EED;
/// Environment variable consulted for the seed.
pub const SEED_ENV: &str = "SIEGEL_NORMS_SEED";
/// Smallest accepted sample budget.
pub const MIN_SAMPLES: u64 = 1_000;
/// Points on the default p grid.
pub const DEFAULT_GRID_POINTS: usize = 25;

#[derive(Debug, Parser, Default)]
#[command(name = "siegel-norms", version, about = "Norm tables, identity checks and Rayleigh sweeps on the Siegel upper half-space")]
pub struct Flags {
    /// verify | norms | estimate | scan | plot
    #[arg(long)]
    pub command: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// `a,b,c`, `start:stop:points` (linear in p) or `start:stop:points:log`
    /// (log-spaced in 1/p).
    #[arg(long = "p-grid", allow_hyphen_values = true)]
    pub p_grid: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    /// Decimal or `0x` hexadecimal.
    #[arg(long)]
    pub seed: Option<String>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute floor of the verify residual tolerance.
    #[arg(long)]
    pub tolerance: Option<String>,
    /// Identity cases for verify (comma-separated or `all`); `I`, `II` or
    /// `auto` for estimate and scan.
    #[arg(long)]
    pub case: Option<String>,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Force the adjoint test family.
    #[arg(long = "case-II")]
    pub case_ii: bool,
    /// Random draws per identity case and dimension.
    #[arg(long)]
    pub draws: Option<String>,
    /// talpha | bergman
    #[arg(long)]
    pub estimator: Option<String>,
    /// Explicit t (talpha) or ε (bergman) values, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// bergman | all
    #[arg(long)]
    pub source: Option<String>,
    /// CSV read by plot.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Grid column for plot.
    #[arg(long)]
    pub x: Option<String>,
    /// Comma-separated columns for plot.
    #[arg(long)]
    pub columns: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Norms,
    Estimate,
    Scan,
    Plot,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Verify => "verify",
            CommandKind::Norms => "norms",
            CommandKind::Estimate => "estimate",
            CommandKind::Scan => "scan",
            CommandKind::Plot => "plot",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    TAlpha,
    Bergman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Bergman,
    All,
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: Vec<usize>,
    pub alpha: Option<f64>,
    pub p_grid: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
    pub cases: Vec<IdentityTag>,
    pub draws: usize,
    pub psi_case: Option<PsiCase>,
    pub estimator: Estimator,
    pub grid: Option<Vec<f64>>,
    pub source: Source,
    pub input: Option<PathBuf>,
    pub x: Option<String>,
    pub columns: Vec<String>,
}

const KEYS: [&str; 19] = [
    "command", "n", "alpha", "p-grid", "samples", "seed", "workers", "out", "tolerance", "case", "case-II", "draws",
    "estimator", "grid", "source", "input", "x", "columns", "config",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses a flat `key = value` file. Blank lines and `#` comments are
/// ignored; keys are the long flag names.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim().trim_start_matches("--").to_string();
        if !KEYS.contains(&k.as_str()) || k == "config" {
            return Err(usage(format!("config line {}: unknown key {k:?}", i + 1)));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| usage(format!("--{key}: cannot parse {v:?}")))
}

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    let x: f64 = parse_num(key, v)?;
    if x.is_nan() {
        return Err(usage(format!("--{key}: NaN is not allowed")));
    }
    Ok(x)
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    let items: Vec<T> = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num(key, s))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(usage(format!("--{key}: empty list")));
    }
    Ok(items)
}

pub fn parse_seed(v: &str) -> Result<u64, CliError> {
    let v = v.trim();
    let parsed = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => v.parse(),
    };
    parsed.map_err(|_| usage(format!("--seed: cannot parse {v:?}")))
}

/// `count` values of `p` whose reciprocals are log-spaced over `[1/hi, 1/lo]`,
/// in increasing order of `p`.
pub fn log_inverse_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = ((1.0 / hi).ln(), (1.0 / lo).ln());
    let mut v: Vec<f64> = (0..count)
        .map(|i| {
            let f = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
            1.0 / (a + (b - a) * f).exp()
        })
        .collect();
    v.reverse();
    v
}

/// The default grid: `1/p` log-spaced over `[1/8, 7/8]`.
pub fn default_p_grid() -> Vec<f64> {
    log_inverse_grid(8.0 / 7.0, 8.0, DEFAULT_GRID_POINTS)
}

pub fn parse_p_grid(v: &str) -> Result<Vec<f64>, CliError> {
    let grid = if v.contains(':') {
        let parts: Vec<&str> = v.split(':').collect();
        if !(parts.len() == 3 || parts.len() == 4) {
            return Err(usage("--p-grid: expected start:stop:points[:linear|log]"));
        }
        let start = parse_f64("p-grid", parts[0])?;
        let stop = parse_f64("p-grid", parts[1])?;
        let points: usize = parse_num("p-grid", parts[2])?;
        if points == 0 {
            return Err(usage("--p-grid: at least one point is required"));
        }
        match parts.get(3).map(|s| s.trim()) {
            None | Some("linear") => (0..points)
                .map(|i| {
                    let f = if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
                    start + (stop - start) * f
                })
                .collect(),
            Some("log") => {
                if !(start > 1.0 && stop > 1.0) {
                    return Err(usage("--p-grid: log spacing needs endpoints in (1, ∞)"));
                }
                let mut g = log_inverse_grid(start.min(stop), start.max(stop), points);
                if start > stop {
                    g.reverse();
                }
                g
            }
            Some(other) => return Err(usage(format!("--p-grid: unknown spacing {other:?}"))),
        }
    } else {
        parse_list::<f64>("p-grid", v)?
    };
    if let Some(bad) = grid.iter().find(|p| !(**p > 1.0 && p.is_finite())) {
        return Err(usage(format!("--p-grid: value {bad} is outside (1, ∞)")));
    }
    Ok(grid)
}

fn parse_command(v: &str) -> Result<CommandKind, CliError> {
    Ok(match v.trim().to_ascii_lowercase().as_str() {
        "verify" => CommandKind::Verify,
        "norms" => CommandKind::Norms,
        "estimate" => CommandKind::Estimate,
        "scan" => CommandKind::Scan,
        "plot" => CommandKind::Plot,
        other => return Err(usage(format!("--command: unknown command {other:?}"))),
    })
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(usage(format!("--{key}: expected true or false, got {v:?}"))),
    }
}

/// Merges flags over the config file over the environment over defaults.
pub fn resolve(flags: Flags, env_seed: Option<String>) -> Result<RunConfig, CliError> {
    let mut map = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("--config: cannot read {}: {e}", path.display())))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    };
    set("command", flags.command);
    set("n", flags.n);
    set("alpha", flags.alpha);
    set("p-grid", flags.p_grid);
    set("samples", flags.samples);
    set("seed", flags.seed);
    set("workers", flags.workers);
    set("out", flags.out.map(|p| p.to_string_lossy().into_owned()));
    set("tolerance", flags.tolerance);
    set("case", flags.case);
    set("draws", flags.draws);
    set("estimator", flags.estimator);
    set("grid", flags.grid);
    set("source", flags.source);
    set("input", flags.input.map(|p| p.to_string_lossy().into_owned()));
    set("x", flags.x);
    set("columns", flags.columns);
    if flags.case_ii {
        set("case-II", Some("true".into()));
    }
    let get = |k: &str| map.get(k).map(String::as_str);

    let command = parse_command(get("command").ok_or_else(|| usage("--command is required"))?)?;
    let n = match get("n") {
        Some(v) => parse_list::<usize>("n", v)?,
        None if command == CommandKind::Verify => vec![0, 1, 2],
        None => vec![0],
    };
    let alpha = get("alpha").map(|v| parse_f64("alpha", v)).transpose()?;
    let p_grid = match get("p-grid") {
        Some(v) => parse_p_grid(v)?,
        None if command == CommandKind::Estimate => vec![2.0],
        None => default_p_grid(),
    };
    let samples = match get("samples") {
        Some(v) => parse_num::<u64>("samples", v)?,
        None if command == CommandKind::Verify => 1_000_000,
        None => 100_000,
    };
    if samples < MIN_SAMPLES {
        return Err(usage(format!("--samples must be at least {MIN_SAMPLES}, got {samples}")));
    }
    let seed = match get("seed") {
        Some(v) => parse_seed(v)?,
        None => match env_seed {
            Some(v) => parse_seed(&v).map_err(|_| usage(format!("{SEED_ENV}: cannot parse {v:?}")))?,
            None => DEFAULT_SEED,
        },
    };
    let workers = get("workers").map(|v| parse_num::<usize>("workers", v)).transpose()?.unwrap_or(0);
    let tolerance = get("tolerance")
        .map(|v| parse_f64("tolerance", v))
        .transpose()?
        .unwrap_or(crate::norms::RESIDUAL_FLOOR);
    if !(tolerance >= 0.0) {
        return Err(usage("--tolerance must be non-negative"));
    }
    let draws = get("draws").map(|v| parse_num::<usize>("draws", v)).transpose()?.unwrap_or(3);
    let force_ii = get("case-II").map(|v| parse_bool("case-II", v)).transpose()?.unwrap_or(false);
    let mut cases = IdentityTag::ALL.to_vec();
    let mut psi_case = None;
    if let Some(v) = get("case") {
        match command {
            CommandKind::Verify => {
                if !v.trim().eq_ignore_ascii_case("all") {
                    cases = v
                        .split(',')
                        .map(|s| s.trim().parse::<IdentityTag>().map_err(|e| usage(format!("--case: {e}"))))
                        .collect::<Result<_, _>>()?;
                }
            }
            _ => {
                psi_case = match v.trim() {
                    "I" | "i" | "1" => Some(PsiCase::Direct),
                    "II" | "ii" | "2" => Some(PsiCase::Adjoint),
                    "auto" => None,
                    other => return Err(usage(format!("--case: expected I, II or auto, got {other:?}"))),
                }
            }
        }
    }
    if force_ii {
        psi_case = Some(PsiCase::Adjoint);
    }
    let estimator = match get("estimator").map(|s| s.trim().to_ascii_lowercase()) {
        None => Estimator::TAlpha,
        Some(s) if s == "talpha" || s == "t_alpha" => Estimator::TAlpha,
        Some(s) if s == "bergman" => Estimator::Bergman,
        Some(s) => return Err(usage(format!("--estimator: expected talpha or bergman, got {s:?}"))),
    };
    let grid = get("grid").map(|v| parse_list::<f64>("grid", v)).transpose()?;
    let source = match get("source").map(|s| s.trim().to_ascii_lowercase()) {
        None => Source::Bergman,
        Some(s) if s == "bergman" => Source::Bergman,
        Some(s) if s == "all" => Source::All,
        Some(s) => return Err(usage(format!("--source: expected bergman or all, got {s:?}"))),
    };
    let columns = get("columns")
        .map(|v| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
        .unwrap_or_default();
    Ok(RunConfig {
        command,
        n,
        alpha,
        p_grid,
        samples,
        seed,
        workers,
        out: get("out").map(PathBuf::from),
        tolerance,
        cases,
        draws,
        psi_case,
        estimator,
        grid,
        source,
        input: get("input").map(PathBuf::from),
        x: get("x").map(str::to_string),
        columns,
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// A command line reproducing this configuration, leaving out settings
    /// that cannot change the output (`--workers`, `--out`).
    pub fn canonical_command(&self) -> String {
        let mut s = format!("siegel-norms --command {}", self.command.as_str());
        let mut add = |k: &str, v: String| {
            let _ = write!(s, " --{k} {v}");
        };
        match self.command {
            CommandKind::Plot => {
                if let Some(input) = &self.input {
                    add("input", input.to_string_lossy().into_owned());
                }
                if let Some(x) = &self.x {
                    add("x", x.clone());
                }
                if !self.columns.is_empty() {
                    add("columns", self.columns.join(","));
                }
                return s;
            }
            CommandKind::Verify => {
                add("n", join(&self.n));
                add("samples", self.samples.to_string());
                add("seed", format!("{:#x}", self.seed));
                add("tolerance", self.tolerance.to_string());
                add("draws", self.draws.to_string());
                add("case", self.cases.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(","));
            }
            CommandKind::Norms => {
                add("n", join(&self.n));
                if let Some(a) = self.alpha {
                    add("alpha", a.to_string());
                }
                add("p-grid", join(&self.p_grid));
                add("source", match self.source {
                    Source::Bergman => "bergman".into(),
                    Source::All => "all".into(),
                });
            }
            CommandKind::Estimate | CommandKind::Scan => {
                add("n", join(&self.n));
                add("alpha", self.alpha.unwrap_or(0.0).to_string());
                add("p-grid", join(&self.p_grid));
                add("samples", self.samples.to_string());
                add("seed", format!("{:#x}", self.seed));
                if self.command == CommandKind::Estimate {
                    add("estimator", match self.estimator {
                        Estimator::TAlpha => "talpha".into(),
                        Estimator::Bergman => "bergman".into(),
                    });
                    if let Some(g) = &self.grid {
                        add("grid", join(g));
                    }
                }
                if let Some(c) = self.psi_case {
                    add("case", match c {
                        PsiCase::Direct => "I".into(),
                        PsiCase::Adjoint => "II".into(),
                    });
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(args: &[&str]) -> Flags {
        Flags::try_parse_from(std::iter::once("siegel-norms").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn default_grid_is_symmetric_in_inverse() {
        let g = default_p_grid();
        assert_eq!(g.len(), DEFAULT_GRID_POINTS);
        assert!((g[0] - 8.0 / 7.0).abs() < 1e-12 && (g[g.len() - 1] - 8.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn seed_precedence() {
        let c = resolve(flags(&["--command", "norms"]), None).unwrap();
        assert_eq!(c.seed, DEFAULT_SEED);
        let c = resolve(flags(&["--command", "norms"]), Some("17".into())).unwrap();
        assert_eq!(c.seed, 17);
        let c = resolve(flags(&["--command", "norms", "--seed", "0x10"]), Some("17".into())).unwrap();
        assert_eq!(c.seed, 16);
    }

    #[test]
    fn grids_and_errors() {
        assert_eq!(parse_p_grid("1.5,2,3").unwrap(), vec![1.5, 2.0, 3.0]);
        assert_eq!(parse_p_grid("2:4:3").unwrap(), vec![2.0, 3.0, 4.0]);
        assert!(parse_p_grid("1,2").is_err());
        assert!(parse_p_grid("2:4:3:cubic").is_err());
        assert!(resolve(flags(&["--command", "verify", "--samples", "10"]), None).is_err());
        assert!(resolve(flags(&["--command", "frobnicate"]), None).is_err());
        assert!(parse_config_file("sample = 3").is_err());
    }

    #[test]
    fn canonical_command_ignores_workers() {
        let a = resolve(flags(&["--command", "verify", "--workers", "1"]), None).unwrap();
        let b = resolve(flags(&["--command", "verify", "--workers", "4"]), None).unwrap();
        assert_eq!(a.canonical_command(), b.canonical_command());
    }
}
