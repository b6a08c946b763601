mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use yb_core::algebra::RingSpec;
use yb_core::cochain::ComplexKind;

use commands::{CohomologyArgs, FixtureArgs, QuasidiagArgs, Section, UsageError};
use report::RunReport;

/// Exact Yang-Baxter cohomology and deformations of rack operators.
#[derive(Parser)]
#[command(name = "ybdeform", version)]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the rack axioms and summarize Inn(Q) and the behavior classes.
    Validate {
        /// Rack file, or the name of a shipped fixture.
        rack: String,
    },
    /// Dimension of H^n of the Yang-Baxter, diagonal or quasi-diagonal complex.
    Cohomology {
        rack: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// 0 for the rationals, or a prime.
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        #[arg(long, default_value = "yb")]
        complex: ComplexKind,
        /// Largest coboundary matrix row count to attempt.
        #[arg(long)]
        size_cap: Option<usize>,
        /// Fail unless the dimension equals this value.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Run the worked examples: golden matrices, dimensions, families, rigidity.
    #[command(name = "paper-examples")]
    WorkedExamples {
        /// Directory with replacement `<name>.cq` golden matrices.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Restrict to these sections.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Section>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gauge-conjugate a deformation of c_Q into quasi-diagonal form.
    Quasidiagonalize {
        rack: String,
        /// Q | F<p> | F<p>[h]/h^<N> | Z/<p>^<N>
        #[arg(long)]
        ring: RingSpec,
        /// Build a random gauge-conjugated input from this seed.
        #[arg(long, conflicts_with = "input")]
        perturb: Option<u64>,
        /// Read the operator from a matrix dump.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the gauge factors and final term here instead of inline.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check a parametrised deformation family against its expected verdict.
    VerifyFixture {
        /// quandle3-f, dihedral4-f or dihedral4-g.
        name: String,
        #[arg(long)]
        ring: RingSpec,
        /// File of `name = value` lines; random parameters in m otherwise.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<(), UsageError> {
    match &cli.command {
        Command::Validate { rack } => commands::validate(report, rack),
        Command::Cohomology {
            rack,
            degree,
            characteristic,
            complex,
            size_cap,
            expect,
        } => commands::cohomology(
            report,
            &CohomologyArgs {
                rack,
                degree: *degree,
                characteristic: *characteristic,
                complex: *complex,
                size_cap: *size_cap,
                expect: *expect,
            },
        ),
        Command::WorkedExamples { golden_dir, only, seed } => {
            commands::worked_examples(report, golden_dir.as_deref(), only, *seed)
        }
        Command::Quasidiagonalize {
            rack,
            ring,
            perturb,
            input,
            out_dir,
        } => commands::quasidiagonalize(
            report,
            &QuasidiagArgs {
                rack,
                ring: *ring,
                perturb: *perturb,
                input: input.as_deref(),
                out_dir: out_dir.as_deref(),
            },
        ),
        Command::VerifyFixture { name, ring, params, seed } => commands::verify_fixture(
            report,
            &FixtureArgs {
                name,
                ring: *ring,
                params: params.as_deref(),
                seed: *seed,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = RunReport::new(std::env::args().collect());
    if let Err(UsageError(e)) = run(&cli, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    print!("{}", report.to_text());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
