use num_complex::Complex64;

use crate::kernels::{conjugate, BergmanTestParams, PsiCase, TAlphaParams};
use crate::mcquad::McRun;
use crate::norms::{
    bergman_bounds, default_t_grid, norm_table, rayleigh_lower_bergman, rayleigh_lower_t_case, t_alpha_norm_exact,
    verify_identity, IdentityCase, NormSource, TableSelection, DEFAULT_EPS_FRACTIONS, DEFAULT_T_FRACTIONS,
};

use super::config::{RunConfig, Source};
use super::svg::{self, Series};
use super::{CliError, Output};

fn num(x: f64) -> String {
    x.to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn family(case: PsiCase) -> &'static str {
    match case {
        PsiCase::Direct => "I",
        PsiCase::Adjoint => "II",
    }
}

/// A CSV document preceded by `#` metadata lines.
fn csv_document(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    out.extend_from_slice(format!("# siegel-norms {}\n", env!("CARGO_PKG_VERSION")).as_bytes());
    out.extend_from_slice(format!("# seed={:#x} samples={}\n", cfg.seed, cfg.samples).as_bytes());
    out.extend_from_slice(format!("# command: {}\n", cfg.canonical_command()).as_bytes());
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Failed(format!("CSV write failed: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Failed(format!("CSV write failed: {e}")))
}

fn mc_run(cfg: &RunConfig) -> McRun {
    McRun::new(cfg.samples, cfg.seed).with_workers(cfg.workers)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let run = mc_run(cfg);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &cfg.n {
        for &tag in &cfg.cases {
            if !tag.supports(n) {
                continue;
            }
            for d in 0..cfg.draws {
                let (case, case_run) = IdentityCase::suite_case(tag, n, d, &run)?;
                let r = verify_identity(&case, &case_run)?;
                let pass = r.passes(cfg.tolerance);
                if !pass {
                    failures.push(format!(
                        "{tag} n={n} draw={d}: residual {:.3e} > tolerance {:.3e} ({})",
                        r.residual,
                        r.tolerance(cfg.tolerance),
                        case.params()
                    ));
                }
                rows.push(vec![
                    tag.as_str().to_string(),
                    n.to_string(),
                    case.params(),
                    complex(r.closed),
                    complex(r.mc.value),
                    num(r.mc.stderr),
                    num(r.residual),
                    pass.to_string(),
                ]);
            }
        }
    }
    let header = ["case", "n", "params", "closed", "mc_value", "mc_stderr", "residual", "pass"];
    Ok(Output {
        bytes: csv_document(cfg, &header, &rows)?,
        failures,
    })
}

pub fn cmd_norms(cfg: &RunConfig) -> Result<Output, CliError> {
    let selection = match cfg.source {
        Source::Bergman => TableSelection {
            bergman: true,
            alpha: cfg.alpha,
            ..Default::default()
        },
        Source::All => TableSelection::all(cfg.alpha),
    };
    let mut rows = Vec::new();
    for &n in &cfg.n {
        for r in norm_table(n, &cfg.p_grid, selection)? {
            rows.push(vec![
                r.n.to_string(),
                num(r.p),
                opt(r.alpha),
                num(r.lower),
                opt(r.upper),
                opt(r.exact),
                opt(r.conjectured),
                match r.source {
                    NormSource::Bergman => "bergman",
                    NormSource::TAlpha => "t_alpha",
                    NormSource::Berezin => "berezin",
                    NormSource::CauchySzego => "cauchy_szego",
                }
                .to_string(),
            ]);
        }
    }
    let header = ["n", "p", "alpha", "lower", "upper", "exact", "conjectured", "source"];
    Ok(Output {
        bytes: csv_document(cfg, &header, &rows)?,
        failures: Vec::new(),
    })
}

fn t_alpha_params(n: usize, alpha: f64, p: f64) -> Result<TAlphaParams, CliError> {
    let params = TAlphaParams::new(n, alpha, p)?;
    if !params.is_bounded() {
        return Err(CliError::Usage(format!(
            "T_α is bounded on L^p only when p(1+α) > 1; got p = {p}, α = {alpha}, p(1+α) = {}",
            p * (1.0 + alpha)
        )));
    }
    Ok(params)
}

pub fn cmd_estimate(cfg: &RunConfig) -> Result<Output, CliError> {
    let run = mc_run(cfg);
    let alpha = cfg.alpha.unwrap_or(0.0);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &cfg.n {
        for &p in &cfg.p_grid {
            match cfg.estimator {
                super::config::Estimator::TAlpha => {
                    let params = t_alpha_params(n, alpha, p)?;
                    let case = cfg.psi_case.unwrap_or(params.case());
                    let target = t_alpha_norm_exact(n, alpha, p)?;
                    let grid = cfg.grid.clone().unwrap_or_else(|| default_t_grid(&params, case));
                    for t in grid {
                        let e = rayleigh_lower_t_case(&params, case, t, &run)?;
                        if e.value > target + 3.0 * e.stderr {
                            failures.push(format!(
                                "n={n} p={p} α={alpha} t={t}: estimate {} exceeds ‖T_α‖ = {target} by more than 3 stderr",
                                e.value
                            ));
                        }
                        rows.push(vec![
                            num(t),
                            num(e.value),
                            num(e.stderr),
                            num(target),
                            num((target - e.value) / target),
                            n.to_string(),
                            num(p),
                            num(alpha),
                            family(case).to_string(),
                        ]);
                    }
                }
                super::config::Estimator::Bergman => {
                    if p == 2.0 {
                        return Err(CliError::Usage(
                            "the Bergman test functions need p ≠ 2; at p = 2 the projection has norm 1".into(),
                        ));
                    }
                    let (pe, label) = if p > 2.0 { (p, "bergman") } else { (conjugate(p), "bergman_dual") };
                    let bounds = bergman_bounds(n, pe)?;
                    let kappa = (n as f64 + 2.0) * (0.5 - 1.0 / pe);
                    let grid = cfg
                        .grid
                        .clone()
                        .unwrap_or_else(|| DEFAULT_EPS_FRACTIONS.iter().map(|f| f * kappa).collect());
                    for eps in grid {
                        let params = BergmanTestParams::new(n, pe, eps)?;
                        let r = rayleigh_lower_bergman(&params, &run)?;
                        let se = r.ratio_h.stderr;
                        if r.net_lower > bounds.upper + 3.0 * se {
                            failures.push(format!(
                                "n={n} p={p} ε={eps}: lower estimate {} exceeds the upper bound {}",
                                r.net_lower, bounds.upper
                            ));
                        }
                        rows.push(vec![
                            num(eps),
                            num(r.net_lower),
                            num(se),
                            num(bounds.lower),
                            num((bounds.lower - r.net_lower) / bounds.lower),
                            n.to_string(),
                            num(p),
                            String::new(),
                            label.to_string(),
                        ]);
                    }
                }
            }
        }
    }
    let header = ["t-or-eps", "estimate", "stderr", "exact_or_target", "gap", "n", "p", "alpha", "family"];
    Ok(Output {
        bytes: csv_document(cfg, &header, &rows)?,
        failures,
    })
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<Output, CliError> {
    let run = mc_run(cfg);
    let alpha = cfg.alpha.unwrap_or(0.0);
    let last = DEFAULT_T_FRACTIONS[DEFAULT_T_FRACTIONS.len() - 1];
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &cfg.n {
        for &p in &cfg.p_grid {
            let params = t_alpha_params(n, alpha, p)?;
            let case = cfg.psi_case.unwrap_or(params.case());
            let (lo, hi) = params.t_range(case);
            let t = hi - (hi - lo) * last;
            let exact = t_alpha_norm_exact(n, alpha, p)?;
            let e = rayleigh_lower_t_case(&params, case, t, &run)?;
            if e.value > exact + 3.0 * e.stderr {
                failures.push(format!("n={n} p={p}: estimate {} exceeds ‖T_α‖ = {exact}", e.value));
            }
            rows.push(vec![
                n.to_string(),
                num(p),
                num(alpha),
                family(case).to_string(),
                num(t),
                num(e.value),
                num(e.stderr),
                num(exact),
                num((exact - e.value) / exact),
            ]);
        }
    }
    let header = ["n", "p", "alpha", "case", "t", "estimate", "stderr", "exact", "gap"];
    Ok(Output {
        bytes: csv_document(cfg, &header, &rows)?,
        failures,
    })
}

pub fn cmd_plot(cfg: &RunConfig) -> Result<Output, CliError> {
    let path = cfg.input.as_ref().ok_or_else(|| CliError::Usage("plot needs --input".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("--input: cannot read {}: {e}", path.display())))?;
    let bytes = plot_csv(&text, cfg.x.as_deref(), &cfg.columns)?;
    Ok(Output {
        bytes,
        failures: Vec::new(),
    })
}

/// Renders numeric CSV columns against the grid column `x` (the first column
/// by default). Without an explicit selection every numeric, non-constant
/// column is drawn.
pub fn plot_csv(text: &str, x: Option<&str>, columns: &[String]) -> Result<Vec<u8>, CliError> {
    let bad = |m: String| CliError::Usage(format!("malformed CSV: {m}"));
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let records: Vec<csv::StringRecord> = reader
        .records()
        .collect::<Result<_, _>>()
        .map_err(|e| bad(e.to_string()))?;
    if records.is_empty() {
        return Err(CliError::Usage("the CSV has no data rows".into()));
    }
    let index = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("no column named {name:?}")))
    };
    let xi = match x {
        Some(name) => index(name)?,
        None => 0,
    };
    // None: some non-empty cell is not a number
    let column = |j: usize| -> Option<Vec<Option<f64>>> {
        records
            .iter()
            .map(|r| {
                let cell = r.get(j).unwrap_or("").trim();
                if cell.is_empty() {
                    Some(None)
                } else {
                    cell.parse::<f64>().ok().map(Some)
                }
            })
            .collect()
    };
    let xs = column(xi).ok_or_else(|| bad(format!("grid column {:?} is not numeric", headers[xi])))?;
    let selected: Vec<usize> = if columns.is_empty() {
        (0..headers.len())
            .filter(|&j| j != xi)
            .filter(|&j| {
                column(j).is_some_and(|v| {
                    let vals: Vec<f64> = v.into_iter().flatten().collect();
                    vals.windows(2).any(|w| w[0] != w[1])
                })
            })
            .collect()
    } else {
        columns.iter().map(|c| index(c)).collect::<Result<_, _>>()?
    };
    if selected.is_empty() {
        return Err(CliError::Usage("no numeric columns to plot".into()));
    }
    let mut series = Vec::new();
    for j in selected {
        let ys = column(j).ok_or_else(|| bad(format!("column {:?} is not numeric", headers[j])))?;
        let points = xs
            .iter()
            .zip(&ys)
            .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
            .collect();
        series.push(Series {
            name: headers[j].clone(),
            points,
        });
    }
    Ok(svg::render(&headers[xi], &series).into_bytes())
}
