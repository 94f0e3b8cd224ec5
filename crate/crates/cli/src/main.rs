use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use helmsym::{Scheme, SourceKind};
use helmsym_cli::commands::{
    cmd_profile, cmd_reproduce, cmd_sweep_href, cmd_sweep_khfixed, cmd_sweep_ladder,
};
use helmsym_cli::output::{write_atomic, OutputFormat};
use helmsym_cli::parse::{parse_wavenumber, parse_wavenumber_list};
use helmsym_cli::verify::run_all;

#[derive(Parser)]
#[command(
    name = "helmsym",
    version,
    about = "Symbol-level accuracy analysis of finite-difference Helmholtz schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the symbol-error profile of one scheme at (k, N)
    Profile {
        /// Scheme: cls, df2, df4 or df6
        #[arg(long)]
        scheme: Scheme,
        /// Wavenumber spec, e.g. "5pi+1" or "16.5"
        #[arg(long)]
        k: String,
        /// Number of grid subintervals
        #[arg(long = "N")]
        n: usize,
        /// Sobolev index; defaults to m-2 for an order-m scheme
        #[arg(long)]
        p: Option<i32>,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Run an error sweep: k-doubling ladder, h-refinement, or fixed kh
    Sweep {
        /// k doubles while N quadruples
        #[arg(long, conflicts_with_all = ["href", "khfixed"])]
        ladder: bool,
        /// h-refinement at fixed k
        #[arg(long, conflicts_with = "khfixed")]
        href: bool,
        /// symbol profiles at fixed kh over a k list
        #[arg(long)]
        khfixed: bool,
        #[arg(long)]
        scheme: Scheme,
        /// Ladder: starting wavenumber spec
        #[arg(long)]
        k0: Option<String>,
        /// Ladder: starting N
        #[arg(long = "N0")]
        n0: Option<usize>,
        /// Ladder: number of rungs
        #[arg(long)]
        steps: Option<usize>,
        /// Source family: mono or mixed
        #[arg(long, default_value = "mono")]
        source: String,
        /// h-refinement: wavenumber spec; fixed-kh: comma-separated list
        #[arg(long)]
        k: Option<String>,
        /// h-refinement: comma-separated N list
        #[arg(long = "N", value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Fixed-kh: the kh value
        #[arg(long)]
        kh: Option<f64>,
        #[arg(long)]
        p: Option<i32>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Write the canonical data bundle behind one figure
    Reproduce {
        /// Figure id: 1 (symbol profiles), 2 (error sweeps), 3 (fixed kh)
        #[arg(long)]
        figure: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance checks; exit nonzero if any fails
    Verify {
        /// Directory for the pass/fail report
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_source(text: &str) -> Result<SourceKind> {
    match text {
        "mono" => Ok(SourceKind::Monochromatic),
        "mixed" => Ok(SourceKind::Mixed),
        other => bail!("unknown source '{other}'; expected mono or mixed"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Profile {
            scheme,
            k,
            n,
            p,
            out,
            format,
        } => {
            let path = cmd_profile(scheme, parse_wavenumber(&k)?, n, p, &out, format)?;
            println!("{}", path.display());
        }
        Command::Sweep {
            ladder,
            href,
            khfixed,
            scheme,
            k0,
            n0,
            steps,
            source,
            k,
            n,
            kh,
            p,
            out,
            format,
        } => {
            let paths = if ladder {
                let (Some(k0), Some(n0), Some(steps)) = (k0, n0, steps) else {
                    bail!("--ladder needs --k0, --N0 and --steps");
                };
                vec![cmd_sweep_ladder(
                    scheme,
                    parse_wavenumber(&k0)?,
                    n0,
                    steps,
                    parse_source(&source)?,
                    p,
                    &out,
                    format,
                )?]
            } else if href {
                let (Some(k), Some(n)) = (k, n) else {
                    bail!("--href needs --k and --N");
                };
                vec![cmd_sweep_href(
                    scheme,
                    parse_wavenumber(&k)?,
                    &n,
                    parse_source(&source)?,
                    p,
                    &out,
                    format,
                )?]
            } else if khfixed {
                let (Some(k), Some(kh)) = (k, kh) else {
                    bail!("--khfixed needs --k and --kh");
                };
                cmd_sweep_khfixed(scheme, kh, &parse_wavenumber_list(&k)?, p, &out, format)?
            } else {
                bail!("pick one of --ladder, --href, --khfixed");
            };
            for p in paths {
                println!("{}", p.display());
            }
        }
        Command::Reproduce { figure, out } => {
            for p in cmd_reproduce(figure, &out)? {
                println!("{}", p.display());
            }
        }
        Command::Verify { out } => {
            let results = run_all();
            let mut report = String::new();
            for r in &results {
                println!("{}", r.line());
                report.push_str(&r.line());
                report.push('\n');
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let summary = format!(
                "{} of {} criteria passed",
                results.len() - failed,
                results.len()
            );
            println!("{summary}");
            report.push_str(&summary);
            report.push('\n');
            write_atomic(&out.join("verify_report.txt"), &report)?;
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
