use std::collections::BTreeMap;
use std::fmt::Write as _;

use cubic_beta::dist::Family;
use cubic_beta::fit::{fit_ladder, lr_test, BoundaryPolicy, Dataset, FitConfig, FitResult};
use cubic_beta::Error;
use serde::Serialize;

use crate::args::{FitArgs, Format};
use crate::error::CliError;
use crate::input::read_column;

/// Fitted `J` minima below this are reported as degenerate.
const DEGENERATE_JACOBIAN: f64 = 1e-4;

#[derive(Debug, Serialize)]
pub struct FitReport {
    pub dataset: DatasetInfo,
    pub fits: Vec<FamilyFit>,
    pub lr_tests: Vec<LrRow>,
    pub converged: bool,
}

#[derive(Debug, Serialize)]
pub struct DatasetInfo {
    pub name: String,
    pub n: usize,
    pub interval: (f64, f64),
    pub nudged_lines: Vec<u64>,
    /// `n·ln(hi − lo)`, added to a scaled `−ℓ` to get the raw-scale value.
    pub log_jacobian: f64,
}

#[derive(Debug, Serialize)]
pub struct FamilyFit {
    pub family: &'static str,
    pub label: &'static str,
    pub neg_loglik: f64,
    pub neg_loglik_raw: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub min_jacobian: f64,
    pub stage_trace: Vec<Stage>,
}

#[derive(Debug, Serialize)]
pub struct Stage {
    pub stage: String,
    pub neg_loglik: f64,
}

#[derive(Debug, Serialize)]
pub struct LrRow {
    pub family: &'static str,
    pub against: &'static str,
    pub df: u32,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub error: Option<String>,
}

fn family_fit(f: &FitResult, log_jacobian: f64) -> FamilyFit {
    FamilyFit {
        family: f.family.name(),
        label: f.family.label(),
        neg_loglik: f.neg_loglik,
        neg_loglik_raw: f.neg_loglik + log_jacobian,
        alpha: f.params.alpha,
        beta: f.params.beta,
        gamma: f.family.uses_gamma().then_some(f.params.gamma),
        delta: f.family.uses_delta().then_some(f.params.delta),
        converged: f.converged,
        iterations: f.iterations,
        min_jacobian: f.min_jacobian(),
        stage_trace: f
            .stage_trace
            .iter()
            .map(|s| Stage {
                stage: s.stage.clone(),
                neg_loglik: s.neg_loglik,
            })
            .collect(),
    }
}

/// Loaded data plus the input line of every nudged value.
pub struct Loaded {
    pub data: Dataset,
    pub nudged_lines: Vec<u64>,
}

pub fn check_families(args: &FitArgs) -> Result<(), CliError> {
    if args.families.is_empty() {
        return Err(CliError::Usage(
            "--families must name at least one family".into(),
        ));
    }
    if let Some(bad) = args.families.iter().find(|f| !Family::LADDER.contains(f)) {
        return Err(CliError::Usage(format!("family '{bad}' cannot be fitted")));
    }
    Ok(())
}

pub fn load(args: &FitArgs) -> Result<Loaded, CliError> {
    let column = read_column(&args.input, &args.column)?;
    let policy = if args.nudge_boundary {
        BoundaryPolicy::Nudge
    } else {
        BoundaryPolicy::Reject
    };
    let name = args.input.display().to_string();
    let (lo, hi) = args.interval;
    if let Some(k) = column.values.iter().position(|v| !(lo..=hi).contains(v)) {
        return Err(CliError::Data(format!(
            "line {}: value {} outside interval [{lo}, {hi}]",
            column.lines[k], column.values[k]
        )));
    }
    let lines_of = |rows: &[usize]| -> Vec<u64> { rows.iter().map(|&r| column.lines[r]).collect() };
    match Dataset::from_raw(name, &column.values, args.interval, policy) {
        Ok(data) => {
            let nudged_lines = lines_of(data.nudged_rows());
            Ok(Loaded { data, nudged_lines })
        }
        Err(Error::BoundaryValue { count, rows }) => {
            let lines: Vec<String> = lines_of(&rows).iter().map(u64::to_string).collect();
            Err(CliError::Data(format!(
                "{count} value(s) on the interval boundary at line(s) {} \
                 (pass --nudge-boundary to move them inside)",
                lines.join(", ")
            )))
        }
        Err(other) => Err(CliError::Data(other.to_string())),
    }
}

pub fn build_report(args: &FitArgs, loaded: &Loaded) -> Result<FitReport, CliError> {
    let data = &loaded.data;
    let mut config = FitConfig::default();
    config.optimizer.max_evals = args.max_evals as usize;
    let mut wanted = args.families.clone();
    let with_lr = wanted.iter().any(|&f| f != Family::Beta);
    if with_lr {
        wanted.push(Family::Beta);
    }
    let fits: BTreeMap<Family, FitResult> =
        fit_ladder(data, &wanted, &config).map_err(|e| CliError::Data(e.to_string()))?;

    let log_jacobian = data.log_jacobian();
    let mut requested = args.families.clone();
    requested.sort();
    requested.dedup();
    let rows: Vec<FamilyFit> = requested
        .iter()
        .map(|f| family_fit(&fits[f], log_jacobian))
        .collect();
    for (r, f) in rows.iter().zip(&requested) {
        // Only the families that divide by J have an unbounded likelihood.
        let divides_by_j = matches!(f, Family::QBeta | Family::CBeta);
        if divides_by_j && r.min_jacobian < DEGENERATE_JACOBIAN {
            log::warn!(
                "{}: fitted transform is nearly singular (min J = {:.2e}); the likelihood is \
                 unbounded there and the estimate may be a spike on one observation",
                r.label,
                r.min_jacobian
            );
        }
    }

    let lr_tests = requested
        .iter()
        .filter(|&&f| f != Family::Beta)
        .map(|&f| {
            let df = (f.param_count() - Family::Beta.param_count()) as u32;
            match lr_test(&fits[&Family::Beta], &fits[&f], df) {
                Ok(t) => LrRow {
                    family: f.name(),
                    against: Family::Beta.name(),
                    df,
                    statistic: Some(t.statistic),
                    p_value: Some(t.p_value),
                    error: None,
                },
                Err(e) => LrRow {
                    family: f.name(),
                    against: Family::Beta.name(),
                    df,
                    statistic: None,
                    p_value: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let converged = rows.iter().all(|r| r.converged);
    Ok(FitReport {
        dataset: DatasetInfo {
            name: data.name().to_string(),
            n: data.len(),
            interval: data.interval(),
            nudged_lines: loaded.nudged_lines.clone(),
            log_jacobian,
        },
        fits: rows,
        lr_tests,
        converged,
    })
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

pub fn render(report: &FitReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Tsv => render_tsv(report),
        Format::Text => render_text(report),
    }
}

fn render_tsv(report: &FitReport) -> String {
    let mut s = String::from(
        "family\tneg_loglik\tneg_loglik_raw\talpha\tbeta\tgamma\tdelta\tconverged\titerations\t\
         min_jacobian\tlr_statistic\tlr_df\tlr_p_value\n",
    );
    for f in &report.fits {
        let lr = report.lr_tests.iter().find(|t| t.family == f.family);
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            f.family,
            f.neg_loglik,
            f.neg_loglik_raw,
            f.alpha,
            f.beta,
            f.gamma.map_or("".into(), |v| v.to_string()),
            f.delta.map_or("".into(), |v| v.to_string()),
            f.converged,
            f.iterations,
            f.min_jacobian,
            lr.and_then(|t| t.statistic)
                .map_or("".into(), |v| v.to_string()),
            lr.map_or("".into(), |t| t.df.to_string()),
            lr.and_then(|t| t.p_value)
                .map_or("".into(), |v| v.to_string()),
        );
    }
    s
}

fn render_text(report: &FitReport) -> String {
    let d = &report.dataset;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} (n = {}, interval [{}, {}])",
        d.name, d.n, d.interval.0, d.interval.1
    );
    let _ = writeln!(
        s,
        "{:<9} {:>11} {:>9} {:>9} {:>7} {:>7}  converged",
        "model", "-l", "alpha", "beta", "gamma", "delta"
    );
    for f in &report.fits {
        let _ = writeln!(
            s,
            "{:<9} {:>11.2} {:>9.2} {:>9.2} {:>7} {:>7}  {}",
            f.label,
            f.neg_loglik,
            f.alpha,
            f.beta,
            opt(f.gamma, 4),
            opt(f.delta, 4),
            if f.converged { "yes" } else { "NO" }
        );
    }
    if !report.lr_tests.is_empty() {
        let _ = writeln!(s, "\nlikelihood-ratio tests against beta:");
        for t in &report.lr_tests {
            match (t.statistic, t.p_value) {
                (Some(x), Some(p)) => {
                    let _ = writeln!(s, "  {:<9} X2[{}] = {:.2}, p = {:.4}", t.family, t.df, x, p);
                }
                _ => {
                    let _ = writeln!(
                        s,
                        "  {:<9} {}",
                        t.family,
                        t.error.as_deref().unwrap_or("n/a")
                    );
                }
            }
        }
    }
    let _ = writeln!(
        s,
        "\n-l is on the (0, 1) scale; raw-scale -l = -l + n ln(hi - lo) = -l + {:.4}",
        d.log_jacobian
    );
    let _ = writeln!(s, "\nstage traces:");
    for f in &report.fits {
        let trace: Vec<String> = f
            .stage_trace
            .iter()
            .map(|st| format!("{} {:.4}", st.stage, st.neg_loglik))
            .collect();
        let _ = writeln!(s, "  {:<9} {}", f.label, trace.join(" -> "));
    }
    s
}
