//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 parse or usage
//! error, 3 unmet precondition, 4 singular reconstruction (the output is
//! still written), 5 internal error.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use polymoment::chambers::{build_chambers, emit_svg, reconstruction_densities};
use polymoment::fantappie::measure_f;
use polymoment::geometry::VertexSet;
use polymoment::inverse::{self, FormBasis, Reconstruction};
use polymoment::oracle::measure_moments;
use polymoment::verify::{self, Suite};
use polymoment::{random, Error, Result};

#[derive(Parser)]
#[command(
    name = "polymoment",
    version,
    about = "Exact moments of simplicial measures and their inversion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moment table of a measure up to a given order.
    Moments {
        /// Measure file, or a reconstruction file when --vertices is given.
        measure: PathBuf,
        #[arg(long)]
        order: u32,
        /// Vertex file belonging to a reconstruction.
        #[arg(long)]
        vertices: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cancelled generating function of a measure.
    Genfunc {
        measure: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstructs simplex weights from moments over a known vertex set.
    Invert {
        vertices: PathBuf,
        moments: PathBuf,
        /// 0-based pivot vertex; defaults to the last one.
        #[arg(long)]
        pivot: Option<usize>,
        /// 1-based extended-matrix column numbers, e.g. 5,6,7,8,9,10.
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<usize>>,
        /// Also render the chamber map (planar sets only).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chamber decomposition of a planar vertex set.
    Chambers {
        vertices: PathBuf,
        /// Reconstruction whose densities fill the chambers.
        #[arg(long)]
        reconstruction: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a seeded property suite: brion, detfactor, roundtrip, rebase, density-op.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Times the strong solver on random vertex sets.
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        cases: usize,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::SingularReconstruction(_) => 4,
        Error::Internal(_) => 5,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Moments {
            measure,
            order,
            vertices,
            out,
        } => {
            let m = match vertices {
                Some(v) => {
                    let vs = io::read_vertices(&v)?;
                    io::read_reconstruction(&measure)?.to_measure(&vs)?
                }
                None => io::read_measure(&measure)?,
            };
            // Zero-weight degenerate atoms are skipped; others are refused.
            let t = measure_moments(&m, order, None)?;
            io::emit(out.as_deref(), &io::to_json(&t)?)?;
            Ok(0)
        }
        Command::Genfunc { measure, out } => {
            let f = measure_f(&io::read_measure(&measure)?)?;
            let json = io::to_json(&f)?;
            match out {
                Some(p) => {
                    io::emit(Some(&p), &json)?;
                    println!("F(u) = {f}");
                }
                None => {
                    io::emit(None, &json)?;
                    eprintln!("F(u) = {f}");
                }
            }
            Ok(0)
        }
        Command::Invert {
            vertices,
            moments,
            pivot,
            columns,
            svg,
            out,
        } => {
            let vs = io::read_vertices(&vertices)?;
            let t = io::read_moments(&moments)?;
            let pivot = pivot.unwrap_or(vs.len().saturating_sub(1));
            let rec = match columns {
                Some(cols) => {
                    let basis = FormBasis::from_extended_numbers(&vs, pivot, &cols)?;
                    inverse::solve_weak(&t, &vs, pivot, Some(&basis))?
                }
                None => inverse::solve(&t, &vs, pivot)?,
            };
            io::emit(out.as_deref(), &io::to_json(&rec)?)?;
            if !rec.is_exact() {
                eprintln!("warning: the moments are not reproduced exactly above order {}; see the residual", inverse::numerator_degree(&vs)?);
            }
            if rec.singular {
                let flat: Vec<Vec<usize>> = rec
                    .singular_simplices()
                    .into_iter()
                    .map(|s| s.indices().to_vec())
                    .collect();
                let e = Error::SingularReconstruction(flat);
                eprintln!("error: {e}");
                if svg.is_some() {
                    eprintln!("warning: no chamber map for a singular reconstruction");
                }
                return Ok(exit_code(&e));
            }
            if let Some(path) = svg {
                write_chambers(&vs, Some(&rec), Some(&path), None)?;
            }
            Ok(0)
        }
        Command::Chambers {
            vertices,
            reconstruction,
            svg,
            out,
        } => {
            let vs = io::read_vertices(&vertices)?;
            let rec = reconstruction
                .map(|p| io::read_reconstruction(&p))
                .transpose()?;
            write_chambers(&vs, rec.as_ref(), svg.as_deref(), Some(out.as_deref()))?;
            Ok(0)
        }
        Command::Verify { suite, seed } => {
            let report = verify::run(suite, seed)?;
            print!("{report}");
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench { seed, cases } => {
            bench(seed, cases)?;
            Ok(0)
        }
    }
}

/// Builds the chamber map, fills it from `rec` when given, and writes the
/// SVG and/or JSON. `json` is `Some(None)` for JSON on standard output.
fn write_chambers(
    vs: &VertexSet,
    rec: Option<&Reconstruction>,
    svg: Option<&std::path::Path>,
    json: Option<Option<&std::path::Path>>,
) -> Result<()> {
    let mut cm = build_chambers(vs)?;
    if let Some(r) = rec {
        cm = reconstruction_densities(&cm, r, vs)?;
    }
    if let Some(p) = svg {
        emit_svg(&cm, p)?;
    }
    if let Some(out) = json {
        if svg.is_none() || out.is_some() {
            io::emit(out, &io::to_json(&cm)?)?;
        }
    }
    Ok(())
}

fn bench(seed: u64, cases: usize) -> Result<()> {
    let mut rng = random::rng(seed);
    println!("{:>3} {:>3} {:>7} {:>12}", "d", "N", "cases", "ms/case");
    for (d, n) in [(2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6), (3, 7)] {
        let sets: Vec<_> = (0..cases)
            .map(|_| {
                let vs = random::strong_set(&mut rng, d, n);
                let basis = FormBasis::through_pivot(&vs, n - 1)?;
                let w = random::weights(&mut rng, basis.len());
                let m = polymoment::geometry::WeightedMeasure::new(
                    vs.clone(),
                    basis.simplices().into_iter().zip(w),
                )?;
                Ok((measure_moments(&m, (n - d - 1) as u32, None)?, vs))
            })
            .collect::<Result<_>>()?;
        let start = Instant::now();
        for (t, vs) in &sets {
            inverse::solve_strong(t, vs, n - 1)?;
        }
        let per = start.elapsed().as_secs_f64() * 1e3 / cases.max(1) as f64;
        println!("{d:>3} {n:>3} {cases:>7} {per:>12.3}");
    }
    Ok(())
}
