use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use omlrt_cli::config::load_config;
use omlrt_cli::plot::emit_plot;
use omlrt_cli::sweep::{format_float, run_sweep};
use omlrt_cli::verify::run_verify;
use omlrt_cli::{write_output, CliError, CliResult};
use omlrt_core::baseline::{green_single, CavityParams};
use omlrt_core::response::stability;
use omlrt_core::FigurePreset;

/// Linear response of a driven optomechanical system.
#[derive(Parser)]
#[command(name = "omlrt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the probe frequency for a parameter file and write a CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce a figure preset as CSV (and SVG with --plot).
    Figure {
        /// One of fig2, fig3-red, fig3-blue, fig4-red, fig4-blue, fig6-red, fig6-blue.
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: bool,
    },
    /// Compare the frequency-domain Green's functions with the time-domain routes.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "omega-pc", allow_hyphen_values = true)]
        omega_pc: f64,
    },
    /// Eigenvalues of the drift matrix and the stability verdict.
    Stability {
        #[arg(long)]
        config: PathBuf,
    },
    /// Response of the bare single-mode cavity.
    Baseline {
        #[arg(long, allow_hyphen_values = true)]
        omega0: f64,
        #[arg(long)]
        kappa: f64,
        /// Frequency grid as MIN:MAX:N; prints a CSV to stdout.
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
    },
    /// Plot columns of a sweep CSV as SVG.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        /// Comma-separated column names.
        #[arg(long)]
        columns: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Columns drawn for each figure family.
fn figure_columns(name: &str) -> &'static [&'static str] {
    if name.starts_with("fig4") {
        &["r_power", "r_power_approx"]
    } else if name.starts_with("fig6") {
        &["d_badag", "d_ba"]
    } else {
        &["d_as", "d_s"]
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty() && *s != "." && *s != "..")
        .unwrap_or("sweep")
        .to_string()
}

fn parse_grid(text: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || CliError::Usage(format!("--sweep expects MIN:MAX:N, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let (lo, hi): (f64, f64) = (
        lo.parse().map_err(|_| bad())?,
        hi.parse().map_err(|_| bad())?,
    );
    let n: usize = n.parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && n >= 2) {
        return Err(CliError::Usage(format!(
            "--sweep needs MIN < MAX and N >= 2, got `{text}`"
        )));
    }
    Ok((lo, hi, n))
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Sweep { config, out } => {
            let spec = load_config(&config)?;
            let path = write_output(
                &out,
                &format!("{}.csv", file_stem(&config)),
                &run_sweep(&spec)?,
            )?;
            println!("{}", path.display());
        }
        Command::Figure { preset, out, plot } => {
            for variant in FigurePreset::resolve(&preset)? {
                let csv = run_sweep(&variant.spec)?;
                let path = write_output(&out, &format!("{}.csv", variant.name), &csv)?;
                println!("{}", path.display());
                if plot {
                    let svg = emit_plot(&csv, figure_columns(&variant.name))?;
                    let path = write_output(&out, &format!("{}.svg", variant.name), &svg)?;
                    println!("{}", path.display());
                }
            }
        }
        Command::Verify { config, omega_pc } => {
            let spec = load_config(&config)?;
            let report = run_verify(&spec.params, omega_pc)?;
            print!("{report}");
            return Ok(report.verdict().exit_code());
        }
        Command::Stability { config } => {
            let report = stability(&load_config(&config)?.params)?;
            println!(
                "verdict: {}",
                if report.stable { "stable" } else { "unstable" }
            );
            println!("margin: {}", format_float(report.margin));
            for z in report.eigenvalues {
                println!("eigenvalue: {} {:+.16e}i", format_float(z.re), z.im);
            }
        }
        Command::Baseline {
            omega0,
            kappa,
            sweep,
        } => {
            if !(omega0.is_finite() && kappa.is_finite() && kappa > 0.0) {
                return Err(CliError::Usage(
                    "--omega0 must be finite and --kappa > 0".into(),
                ));
            }
            let cav = CavityParams {
                omega0,
                kappa,
                eta: 1.0,
            };
            match sweep {
                None => {
                    println!(
                        "|G(omega0)| = {}",
                        format_float(green_single(&cav, omega0).norm())
                    );
                    println!("fwhm of |G|^2 = {}", format_float(kappa));
                }
                Some(grid) => {
                    let (lo, hi, n) = parse_grid(&grid)?;
                    println!("omega,g_re,g_im,g_abs");
                    for k in 0..n {
                        let w = if k + 1 == n {
                            hi
                        } else {
                            lo + (hi - lo) * k as f64 / (n - 1) as f64
                        };
                        let g = green_single(&cav, w);
                        println!(
                            "{},{},{},{}",
                            format_float(w),
                            format_float(g.re),
                            format_float(g.im),
                            format_float(g.norm())
                        );
                    }
                }
            }
        }
        Command::Plot { csv, columns, out } => {
            let text = std::fs::read_to_string(&csv)
                .map_err(|e| CliError::io(format!("reading {}", csv.display()), e))?;
            let names: Vec<&str> = columns
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let svg = emit_plot(&text, &names)?;
            let path = write_output(&out, &format!("{}.svg", file_stem(&csv)), &svg)?;
            println!("{}", path.display());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
