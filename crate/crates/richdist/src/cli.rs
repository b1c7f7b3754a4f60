//! Command dispatch. Exit codes: 0 pass, 1 verification or generation
//! failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use richdist_core::oracle::{cross_check, CrossCheck, DEFAULT_TOLERANCE};
use richdist_core::spectrum::SpectrumOptions;
use richdist_core::{build_theorem1, build_theorem2, verify_claim, PointSet};

use crate::report::{self, Format, ReportOptions};
use crate::svg::{render_svg, SvgOptions};
use crate::{figures, points_file, sweep, Error};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "richdist", version, about = "Exact constructions of point sets with many repeated distances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a configuration and write its points file
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        n: usize,
        /// Richness surplus, required for --theorem 2
        #[arg(long)]
        m: Option<usize>,
        /// Output file (default: standard output)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a figure
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that at least C squared distances occur at least Q times each
    Verify {
        file: PathBuf,
        #[arg(long)]
        classes: usize,
        #[arg(long)]
        multiplicity: usize,
    },
    /// Print the exact distance spectrum
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        histogram: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Render a points file as SVG
    Svg {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Draw the witness pairs of the K richest classes
        #[arg(long, default_value_t = 0)]
        highlight: usize,
    },
    /// Cross-check the exact spectrum against floating point
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Build, verify and draw the four reference configurations
    ReproduceFigures {
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

fn read_points(path: &Path) -> Result<PointSet, Error> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::io(path, e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    }
    Ok(points_file::parse(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Outcome, (i32, Error)> {
    let input = |e: Error| (EXIT_USAGE, e);
    let failed = |e: Error| (EXIT_FAIL, e);
    match command {
        Command::Generate { theorem, n, m, output, svg } => {
            let built = match (theorem, m) {
                (1, None) => build_theorem1(n),
                (2, Some(m)) => build_theorem2(n, m),
                (1, Some(_)) => return Err(input(invalid("--m only applies to --theorem 2"))),
                _ => return Err(input(invalid("--theorem 2 needs --m"))),
            };
            let (ps, plan) = built.map_err(|e| failed(e.into()))?;
            let text = points_file::serialize(&ps);
            match &output {
                Some(path) => {
                    write_file(path, &text).map_err(input)?;
                    let _ = writeln!(
                        out,
                        "wrote {} points to {}: {} classes with multiplicity >= {} required",
                        ps.len(),
                        path.display(),
                        plan.required_classes(),
                        plan.required_multiplicity()
                    );
                }
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
            if let Some(path) = svg {
                let opts = SvgOptions { highlight: plan.required_classes(), ..SvgOptions::default() };
                let figure = render_svg(&ps, &opts).map_err(failed)?;
                write_file(&path, &figure).map_err(input)?;
            }
            Ok(Outcome::Pass)
        }
        Command::Verify { file, classes, multiplicity } => {
            let ps = read_points(&file).map_err(input)?;
            let v = verify_claim(&ps, classes, multiplicity);
            let _ = writeln!(
                out,
                "{}: {} of {} required classes reach multiplicity {} (points {}, max multiplicity {})",
                if v.passed { "PASS" } else { "FAIL" },
                v.achieved_classes,
                classes,
                multiplicity,
                ps.len(),
                v.max_multiplicity
            );
            Ok(if v.passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Spectrum { file, histogram, format } => {
            let ps = read_points(&file).map_err(input)?;
            let spec = sweep::thread_pool().install(|| sweep::parallel_spectrum(&ps, SpectrumOptions::default()));
            let format = match format {
                ReportFormat::Text => Format::Text,
                ReportFormat::Kv => Format::KeyValue,
            };
            let _ = out.write_all(report::render(&ps, &spec, ReportOptions { format, histogram }).as_bytes());
            Ok(Outcome::Pass)
        }
        Command::Svg { file, output, highlight } => {
            let ps = read_points(&file).map_err(input)?;
            let figure = render_svg(&ps, &SvgOptions { highlight, ..SvgOptions::default() }).map_err(input)?;
            write_file(&output, &figure).map_err(input)?;
            let _ = writeln!(out, "wrote {}", output.display());
            Ok(Outcome::Pass)
        }
        Command::Oracle { file, tol } => {
            let ps = read_points(&file).map_err(input)?;
            match cross_check(&ps, tol) {
                Ok(CrossCheck::Match { classes }) => {
                    let _ = writeln!(out, "match: {classes} classes agree at tolerance {tol:e}");
                    Ok(Outcome::Pass)
                }
                Ok(CrossCheck::Inconclusive { min_gap }) => {
                    let _ = writeln!(out, "inconclusive: exact classes only {min_gap:e} apart at tolerance {tol:e}");
                    Ok(Outcome::Pass)
                }
                Err(e @ richdist_core::Error::InvalidParameter(_)) => Err(input(e.into())),
                Err(e) => Err(failed(e.into())),
            }
        }
        Command::ReproduceFigures { outdir } => {
            let results = figures::reproduce(outdir.as_deref()).map_err(failed)?;
            let _ = out.write_all(figures::table(&results).as_bytes());
            if let Some(dir) = &outdir {
                let _ = writeln!(out, "figures written to {}", dir.display());
            }
            Ok(if results.iter().all(|r| r.passed) { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn invalid(message: &str) -> Error {
    Error::Core(richdist_core::Error::InvalidParameter(message.to_string()))
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Pass) => EXIT_PASS,
        Ok(Outcome::Fail) => EXIT_FAIL,
        Err((code, e)) => {
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
