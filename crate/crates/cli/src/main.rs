use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fibertorsion::rational::{self, Rat};
use fibertorsion::ExceptionalFiber;
use fibertorsion_cli::commands;
use fibertorsion_cli::preset;
use fibertorsion_cli::{CliError, Manifest, Result};

/// Thurston norm and L²-Alexander torsion of Seifert fibered spaces and
/// graph manifolds.
#[derive(Parser)]
#[command(name = "fibertorsion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print k_phi, chi_orb and the Thurston norm of a class.
    Norm {
        file: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Print the canonical torsion class and its degree.
    Torsion {
        file: PathBuf,
        #[arg(long)]
        class: String,
        /// Skip the check that the regular fiber has infinite order in H1.
        #[arg(long)]
        assert_hypothesis: bool,
    },
    /// Validate a manifest and list pass/warn/fail items.
    Check { file: PathBuf },
    /// Write CSV samples of the torsion representative on a log-spaced grid.
    Sample {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        t_min: Option<Rat>,
        #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
        t_max: Option<Rat>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        assert_hypothesis: bool,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a built-in manifest.
    Preset {
        #[command(subcommand)]
        preset: Preset,
        /// Output file; standard output if omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print the rank and torsion coefficients of H1.
    Homology { file: PathBuf },
}

#[derive(Subcommand)]
enum Preset {
    /// Exterior of the (p, q) torus knot.
    TorusKnot { p: i64, q: i64 },
    /// The (2, 3) torus knot.
    Trefoil,
    /// S1xD2 as an S1-CW-complex.
    Unknot,
    /// A single free orbit.
    Circle,
    /// S1 times a closed surface of the given genus.
    Product { genus: u32 },
    /// Trefoil exterior glued to its mirror image.
    DoubleTrefoil,
    /// Klein-bottle base cut into two orientable pieces.
    KleinCut {
        /// Exceptional fibers as a/b, repeatable.
        #[arg(long = "fiber", value_parser = parse_fiber)]
        fibers: Vec<ExceptionalFiber>,
    },
}

fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_fiber(s: &str) -> std::result::Result<ExceptionalFiber, String> {
    let (a, b) = s.split_once('/').ok_or_else(|| format!("expected a/b, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(ExceptionalFiber::new(parse(a)?, parse(b)?))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Norm { file, class } => emit(&commands::norm(&Manifest::load(&file)?, &class)?, None),
        Command::Torsion {
            file,
            class,
            assert_hypothesis,
        } => emit(
            &commands::torsion(&Manifest::load(&file)?, &class, assert_hypothesis)?,
            None,
        ),
        Command::Check { file } => {
            let report = commands::check(&Manifest::load(&file)?);
            print!("{report}");
            if report.passes() {
                Ok(())
            } else {
                Err(CliError::Usage("check failed".into()))
            }
        }
        Command::Sample {
            file,
            class,
            t_min,
            t_max,
            steps,
            assert_hypothesis,
            output,
        } => {
            let m = Manifest::load(&file)?;
            emit(
                &commands::sample(&m, &class, t_min, t_max, steps, assert_hypothesis)?,
                output.as_deref(),
            )
        }
        Command::Preset { preset, output } => {
            let m = match preset {
                Preset::TorusKnot { p, q } => preset::torus_knot(p, q)?,
                Preset::Trefoil => preset::trefoil(),
                Preset::Unknot => preset::unknot(),
                Preset::Circle => preset::circle(),
                Preset::Product { genus } => preset::product(genus),
                Preset::DoubleTrefoil => preset::double_trefoil(),
                Preset::KleinCut { fibers } => preset::klein_cut_graph(&fibers)?,
            };
            emit(&m.to_json(), output.as_deref())
        }
        Command::Homology { file } => emit(&commands::homology(&Manifest::load(&file)?)?, None),
    }
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
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
