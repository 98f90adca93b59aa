use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sympindex::verify::{run_suite, Suite, SuiteReport};
use sympindex::Tolerances;
use sympindex_cli::report::Field;
use sympindex_cli::{exit, IndexReport, OscillatorTable, PathSpecDocument};

#[derive(Parser)]
#[command(name = "sympindex", version, about = "Maslov-type indices of symplectic paths")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Profile::Default, global = true)]
    tolerance_profile: Profile,
    #[arg(long, value_enum, default_value_t = Format::Machine, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Strict,
    Default,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Machine,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Index report for the path described by a JSON document.
    Index { file: PathBuf },
    /// Run a randomized identity suite (`all` runs every suite).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Pipeline −ν of the two-oscillator libration against its closed form.
    OscillatorTable {
        #[arg(long)]
        wx: f64,
        #[arg(long)]
        wy: f64,
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let tol = match cli.tolerance_profile {
        Profile::Strict => Tolerances::<f64>::strict(),
        Profile::Default => Tolerances::<f64>::default(),
    };
    let code = match cli.command {
        Command::Index { file } => index(&file, cli.format, &tol),
        Command::Verify { suite, seed, count } => verify(&suite, seed, count, cli.format, &tol),
        Command::OscillatorTable { wx, wy, reps } => oscillator_table(wx, wy, reps, cli.format, &tol),
    };
    ExitCode::from(code as u8)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn index(file: &PathBuf, format: Format, tol: &Tolerances<f64>) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return exit::INVALID_INPUT;
        }
    };
    let built = PathSpecDocument::parse(&text).and_then(|doc| Ok((doc.source(), doc.build(tol)?)));
    let (source, path) = match built {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_integrity_failure() { exit::INTEGRITY } else { exit::INVALID_INPUT };
        }
    };
    log::info!("path with {} samples, n = {}", path.samples().len(), path.n());
    let report = IndexReport::compute(source, &path, tol);
    match format {
        Format::Machine => emit(&(report.to_json() + "\n")),
        Format::Human => emit(&report.to_human()),
    }
    if !report.sound() {
        for f in &report.integrity_failures {
            eprintln!("integrity failure: {f}");
        }
        return exit::INTEGRITY;
    }
    if let Field::NotApplicable(na) = &report.nu {
        eprintln!("error: ν unavailable: {}", na.detail);
        return exit::INVALID_INPUT;
    }
    exit::OK
}

fn report_json(r: &SuiteReport) -> serde_json::Value {
    let checks: Vec<_> = r
        .checks
        .iter()
        .map(|c| {
            serde_json::json!({
                "name": c.name,
                "passed": c.passed,
                "failed": c.failed,
                "skipped": c.skipped,
                "max_residual": c.max_residual,
                "first_failure": c.first_failure.as_ref().map(|f| serde_json::json!({
                    "instance": f.instance,
                    "seed": f.seed,
                    "detail": f.detail,
                    "reproduce": format!("sympindex verify {} --seed {} --count 1", r.suite, f.seed),
                })),
            })
        })
        .collect();
    serde_json::json!({
        "suite": r.suite.name(),
        "seed": r.seed,
        "count": r.count,
        "status": if r.passed() { "pass" } else { "fail" },
        "checks": checks,
    })
}

fn verify(name: &str, seed: u64, count: usize, format: Format, tol: &Tolerances<f64>) -> i32 {
    let suites = match Suite::resolve(name) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::INVALID_INPUT;
        }
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, seed, count, tol)).collect();
    match format {
        Format::Machine => {
            let all: Vec<_> = reports.iter().map(report_json).collect();
            emit(&(serde_json::to_string_pretty(&all).expect("report serializes") + "\n"));
        }
        Format::Human => reports.iter().for_each(|r| emit(&r.to_string())),
    }
    if reports.iter().all(SuiteReport::passed) {
        exit::OK
    } else {
        exit::CHECK_FAILED
    }
}

fn oscillator_table(wx: f64, wy: f64, reps: u32, format: Format, tol: &Tolerances<f64>) -> i32 {
    if !(wx > 0.0 && wy > 0.0 && wx.is_finite() && wy.is_finite()) || reps == 0 {
        eprintln!("error: frequencies must be positive and finite, reps ≥ 1");
        return exit::INVALID_INPUT;
    }
    let table = match OscillatorTable::compute(wx, wy, reps, tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_integrity_failure() { exit::INTEGRITY } else { exit::INVALID_INPUT };
        }
    };
    match format {
        Format::Machine => emit(&(table.to_json() + "\n")),
        Format::Human => emit(&table.to_human()),
    }
    if table.all_match() {
        exit::OK
    } else {
        exit::CHECK_FAILED
    }
}
