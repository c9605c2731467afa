//! `kstab`: stability reports for toric Fano fans and height probes on P^n.
//!
//! Exit codes: 0 ok, 1 output could not be written, 2 invalid input,
//! 3 a requested requirement was not met, 4 internal invariant violated.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kstab_core::arithmetic::ArithmeticError;
use kstab_core::probe::{self, ProbeError, ProbeOptions, Scenario};
use kstab_core::stability::{search_destabilizer, verdict, Verdict};
use kstab_core::toric::{fixtures, ToricError, ToricFano, ToricValuation};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_WRITE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNMET: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kstab",
    version,
    about = "Divisorial stability of toric Fanos and Vojta-type height probes"
)]
struct Cli {
    /// Worker threads for the parallel stages.
    #[arg(long, global = true, default_value_t = default_workers(), value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Fractional digits in decimal renderings; exact values are unaffected.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// β, discrepancy and Fujita margin of -K along toric valuations.
    Stability(StabilityArgs),
    /// Enumerate points of bounded height and measure the deficits.
    Probe(ProbeArgs),
    /// Run the golden checks.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bundled {
    P2,
    P3,
    P1xp1,
    P1xp1Blowup,
    P112,
}

#[derive(Args)]
struct StabilityArgs {
    /// Fan file `{"dim", "rays", "cones"}`.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    fan: Option<PathBuf>,
    /// Use a bundled fan instead of a file.
    #[arg(long, value_enum)]
    fixture: Option<Bundled>,
    /// Primitive vector of the valuation, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required_unless_present = "search",
        conflicts_with = "search"
    )]
    u: Option<Vec<i64>>,
    /// Evaluate every primitive vector of max-norm at most N, plus the rays.
    #[arg(long, value_name = "N")]
    search: Option<i64>,
    /// Exit 3 unless a destabilizing valuation is found.
    #[arg(long)]
    require_destabilizer: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    /// Scenario file.
    scenario: PathBuf,
    /// Override the scenario's height bound.
    #[arg(long, value_name = "H")]
    height_bound: Option<i64>,
    /// Skip the equal-degree and general-position checks.
    #[arg(long)]
    no_hypothesis_check: bool,
    /// Write the JSON report here, and the CSV table beside it with a
    /// `.csv` extension. Without it the JSON goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        let code = if matches!(e, ToricError::Invariant(_)) {
            EXIT_INVARIANT
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ProbeError> for Failure {
    fn from(e: ProbeError) -> Self {
        let code = match e {
            ProbeError::Invariant(_) | ProbeError::Arithmetic(ArithmeticError::Invariant(_)) => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn default_workers() -> u16 {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(u16::MAX as usize) as u16)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_WRITE,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn stdout(text: &str) -> Result<(), Failure> {
    let mut lock = std::io::stdout().lock();
    writeln!(lock, "{text}").map_err(|e| Failure {
        code: EXIT_WRITE,
        message: format!("cannot write to stdout: {e}"),
    })
}

fn emit(out: Option<&Path>, json: String) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, &(json + "\n")),
        None => stdout(&json),
    }
}

fn load_fan(args: &StabilityArgs) -> Result<ToricFano, Failure> {
    Ok(match (args.fixture, &args.fan) {
        (Some(Bundled::P2), _) => fixtures::projective_plane(),
        (Some(Bundled::P3), _) => fixtures::projective_three_space(),
        (Some(Bundled::P1xp1), _) => fixtures::product_of_lines(),
        (Some(Bundled::P1xp1Blowup), _) => fixtures::blown_up_product_of_lines(),
        (Some(Bundled::P112), _) => fixtures::weighted_plane_112(),
        (None, Some(path)) => ToricFano::from_json(&read(path)?)?,
        (None, None) => return Err(Failure::input("no fan given")),
    })
}

fn stability(args: StabilityArgs, precision: usize) -> Result<(), Failure> {
    let x = load_fan(&args)?;
    let found = if let Some(radius) = args.search {
        let mut report = search_destabilizer(&x, radius)?;
        for r in &mut report.reports {
            r.render_decimals(precision);
        }
        let witnesses = report.destabilizers().count();
        eprintln!(
            "{} over {} valuations ({} destabilizing), singularities {}",
            serde_json::to_value(report.outcome)
                .expect("outcome serializes")
                .as_str()
                .unwrap_or_default(),
            report.reports.len(),
            witnesses,
            report.singularity.verdict
        );
        emit(
            args.out.as_deref(),
            serde_json::to_string_pretty(&report).expect("report serializes"),
        )?;
        witnesses > 0
    } else {
        let u = args.u.expect("clap requires --u without --search");
        let v = ToricValuation::new(u)?;
        let mut report = verdict(&x, &v)?;
        report.render_decimals(precision);
        eprintln!(
            "u = {:?}: beta {}, discrepancy {}, margin {}, {}",
            report.u,
            kstab_core::rational::format(&report.beta),
            kstab_core::rational::format(&report.discrepancy),
            kstab_core::rational::format(&report.fujita_margin),
            if report.verdict == Verdict::Destabilizing {
                "DESTABILIZING"
            } else {
                "NOT-DESTABILIZING"
            }
        );
        emit(
            args.out.as_deref(),
            serde_json::to_string_pretty(&report).expect("report serializes"),
        )?;
        report.verdict == Verdict::Destabilizing
    };
    if args.require_destabilizer && !found {
        return Err(Failure {
            code: EXIT_UNMET,
            message: "no destabilizing valuation found".into(),
        });
    }
    Ok(())
}

fn run_probe(args: ProbeArgs, precision: usize) -> Result<(), Failure> {
    let mut s = Scenario::from_json(&read(&args.scenario)?)?;
    if let Some(h) = args.height_bound {
        s.height_bound = h;
    }
    let opts = ProbeOptions {
        check_hypotheses: !args.no_hypothesis_check,
        precision,
    };
    let report = probe::run(&s, &opts)?;
    eprintln!(
        "{} points, {} off the divisor, {} with positive Vojta deficit, {} candidate hyperplanes",
        report.counts.enumerated,
        report.counts.off_divisor,
        report.counts.positive_deficit_vojta,
        report.candidates.len()
    );
    match &args.out {
        Some(path) => {
            write(path, &(report.to_json() + "\n"))?;
            write(&path.with_extension("csv"), &report.to_csv())
        }
        None => emit(None, report.to_json()),
    }
}

fn selftest() -> Result<(), Failure> {
    let checks = kstab_core::selftest::golden_checks();
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        stdout(&format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))?;
    }
    stdout(&format!("{} of {} golden checks passed", checks.len() - failed, checks.len()))?;
    if failed > 0 {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("{failed} golden checks failed"),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(usize::from(cli.workers)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("kstab: cannot start workers: {e}");
            return ExitCode::from(EXIT_INVARIANT);
        }
    };
    let precision = cli.precision;
    let result = pool.install(|| match cli.command {
        Command::Stability(a) => stability(a, precision),
        Command::Probe(a) => run_probe(a, precision),
        Command::Selftest => selftest(),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("kstab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
