mod args;
mod error;
mod fit;
mod input;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use cubic_beta::dist::{AnyDist, UnitDistribution};
use cubic_beta::sampling::{RandomSource, Sampler};
use serde::Serialize;

use args::{Cli, Command, DistArgs, Format, GridArgs, SampleArgs};
use error::CliError;

/// Grid ends are moved inside by this much where the density diverges.
const ENDPOINT_OFFSET: f64 = 1e-9;

fn build_dist(args: &DistArgs) -> Result<AnyDist, CliError> {
    let params = args.params().map_err(CliError::Usage)?;
    AnyDist::new(args.family, &params).map_err(|e| CliError::Usage(e.to_string()))
}

fn write_out(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Data(format!("writing output: {e}")))
}

fn cmd_sample(args: &SampleArgs) -> Result<(), CliError> {
    let dist = build_dist(&args.dist)?;
    let mut sampler = Sampler::new(&dist);
    let mut rng = RandomSource::seeded(args.seed);
    let mut out = BufWriter::new(io::stdout().lock());
    for _ in 0..args.n {
        writeln!(out, "{}", sampler.sample(&mut rng))
            .map_err(|e| CliError::Data(format!("writing output: {e}")))?;
    }
    out.flush()
        .map_err(|e| CliError::Data(format!("writing output: {e}")))?;
    if let (Some(stats), Some(expected)) =
        (sampler.rejection_stats(), sampler.expected_efficiency())
    {
        eprintln!(
            "rejection sampler: {} proposed, {} accepted, efficiency {:.4} (expected {:.4})",
            stats.proposed,
            stats.accepted,
            stats.efficiency(),
            expected
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct GridRow {
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pdf: Option<f64>,
    cdf: f64,
}

fn grid_x(dist: &AnyDist, i: u64, points: u64) -> Result<f64, CliError> {
    let x = i as f64 / (points - 1) as f64;
    let diverges = |x: f64| dist.pdf(x).map(|v| !v.is_finite()).unwrap_or(true);
    Ok(if i == 0 && diverges(0.0) {
        ENDPOINT_OFFSET
    } else if i == points - 1 && diverges(1.0) {
        1.0 - ENDPOINT_OFFSET
    } else {
        x
    })
}

fn cmd_grid(args: &GridArgs, with_pdf: bool) -> Result<(), CliError> {
    let dist = build_dist(&args.dist)?;
    let eval = |r: cubic_beta::Result<f64>| r.map_err(|e| CliError::Data(e.to_string()));
    let mut rows = Vec::with_capacity(args.grid_points as usize);
    for i in 0..args.grid_points {
        let x = grid_x(&dist, i, args.grid_points)?;
        rows.push(GridRow {
            x,
            pdf: if with_pdf {
                Some(eval(dist.pdf(x))?)
            } else {
                None
            },
            cdf: eval(dist.cdf(x))?,
        });
    }
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("grid serialises");
            s.push('\n');
            s
        }
        Format::Tsv | Format::Text => {
            let mut s = String::from(if with_pdf {
                "x\tpdf\tcdf\n"
            } else {
                "x\tcdf\n"
            });
            for r in &rows {
                match r.pdf {
                    Some(p) => s.push_str(&format!("{}\t{}\t{}\n", r.x, p, r.cdf)),
                    None => s.push_str(&format!("{}\t{}\n", r.x, r.cdf)),
                }
            }
            s
        }
    };
    write_out(&text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(args) => {
            fit::check_families(&args)?;
            let loaded = fit::load(&args)?;
            let report = fit::build_report(&args, &loaded)?;
            write_out(&fit::render(&report, args.format))?;
            if report.converged {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .fits
                    .iter()
                    .filter(|f| !f.converged)
                    .map(|f| f.label)
                    .collect();
                Err(CliError::Convergence(format!(
                    "fit did not converge for: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::Sample(args) => cmd_sample(&args),
        Command::PdfGrid(args) => cmd_grid(&args, true),
        Command::CdfGrid(args) => cmd_grid(&args, false),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
