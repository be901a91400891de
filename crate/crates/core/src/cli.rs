//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `argv` and the standard streams.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::extraction::{
    self, check_extracted_codes, extract_report, iso_check, MAX_TRANSFER_SIGMA,
};
use crate::fixture::{standard_fixtures, Fixture, FixtureError, Loaded};
use crate::implicative::{self, induced_tripos};
use crate::law_suite::{run_all, CheckBudget};
use crate::report::{Coverage, LawEntry, LawReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "triposlab",
    version,
    about = "Finite triposes, implicative algebras and extraction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Largest context size checked exhaustively.
    #[arg(long, default_value_t = 2)]
    max_ctx: usize,
    /// Random scenarios at one context size above `--max-ctx` (0 disables sampling).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> CheckBudget {
        CheckBudget {
            max_ctx: self.max_ctx,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural checks only.
    Validate { file: PathBuf },
    /// Law suite of a tripos, or the axioms of an algebra.
    Laws {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Extract the implicative algebra of a tripos and write it as a fixture.
    Extract {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Isomorphism certificate and code-transfer identities.
    Iso {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Write the tripos induced by an algebra as a fixture.
    Induce {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Induce, extract, and certify the result against the induced tripos.
    Roundtrip {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Write the bundled fixtures into a directory.
    Fixtures { dir: PathBuf },
}

struct Failure(i32, String);

impl From<FixtureError> for Failure {
    fn from(e: FixtureError) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

impl From<extraction::ExtractError> for Failure {
    fn from(e: extraction::ExtractError) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    Ok(Fixture::load(path)?.validate()?)
}

fn emit(out: &mut dyn Write, report: &LawReport) -> i32 {
    let _ = writeln!(out, "{}", report.to_json());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn save(fixture: &Fixture, path: &Path) -> Result<(), Failure> {
    fixture
        .save(path)
        .map_err(|e| Failure(EXIT_INPUT, e.to_string()))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let fixture = Fixture::load(&file)?;
            let loaded = fixture.validate()?;
            let summary =
                serde_json::json!({ "name": fixture.name, "kind": loaded.kind(), "valid": true });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&summary).expect("json")
            );
            Ok(EXIT_OK)
        }
        Command::Laws { file, budget } => {
            let report = match load(&file)? {
                Loaded::Tripos(t) => run_all(&t, &budget.budget()),
                Loaded::Algebra(a) => implicative::validate(&a),
            };
            Ok(emit(out, &report))
        }
        Command::Extract {
            file,
            out: target,
            budget,
        } => {
            let fixture = Fixture::load(&file)?;
            let t = fixture.validate()?.into_tripos()?;
            let (e, report) = extract_report(&t, Some(&budget.budget()))?;
            save(
                &Fixture::algebra(format!("{}-extracted", fixture.name), &e.algebra),
                &target,
            )?;
            Ok(emit(out, &report))
        }
        Command::Iso { file, budget } => {
            let t = load(&file)?.into_tripos()?;
            let mut report = iso_check(&t, &budget.budget())?;
            if t.sigma_size() <= MAX_TRANSFER_SIGMA {
                report.extend(check_extracted_codes(&t)?);
            } else {
                for id in TRANSFER_IDS {
                    report.push(LawEntry::skipped(id, Coverage::Exhaustive));
                }
                report.fact(
                    "transfer_skipped",
                    format!("|Σ| = {} exceeds {}", t.sigma_size(), MAX_TRANSFER_SIGMA),
                );
            }
            Ok(emit(out, &report))
        }
        Command::Induce { file, out: target } => {
            let fixture = Fixture::load(&file)?;
            let a = fixture.validate()?.into_algebra()?;
            let report = implicative::validate(&a);
            if report.passed() {
                let t = induced_tripos(&a).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
                save(
                    &Fixture::tripos(format!("{}-induced", fixture.name), &t),
                    &target,
                )?;
            }
            Ok(emit(out, &report))
        }
        Command::Roundtrip { file, budget } => {
            let a = load(&file)?.into_algebra()?;
            let report = implicative::validate(&a);
            if !report.passed() {
                return Ok(emit(out, &report));
            }
            Ok(emit(out, &extraction::roundtrip(&a, &budget.budget())?))
        }
        Command::Fixtures { dir } => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", dir.display())))?;
            for f in standard_fixtures() {
                let path = dir.join(format!("{}.json", f.name));
                save(&f, &path)?;
                let _ = writeln!(out, "{}", path.display());
            }
            Ok(EXIT_OK)
        }
    }
}

const TRANSFER_IDS: [&str; 5] = [
    "transfer.superset_collapse",
    "transfer.membership_forall",
    "transfer.fiber_meet",
    "transfer.implication",
    "transfer.heyting_implication",
];

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}
