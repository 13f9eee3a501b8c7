//! `framing` — batch runner for the congruence check suites.

mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use framing_core::Rational;
use job::{FramingSpec, JkRange, JobSpec, Precision, ScalarSpec, SeriesSpec};

#[derive(Parser)]
#[command(name = "framing", version, about = "supercongruence verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// write the JSON report here (stdout otherwise)
    #[arg(long)]
    out: Option<PathBuf>,
    /// also write a CSV table of the reports
    #[arg(long)]
    csv: Option<PathBuf>,
    /// worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// coefficient horizon for period detection and default sweeps
    #[arg(long, default_value_t = 64)]
    horizon: usize,
}

#[derive(Subcommand)]
enum Command {
    /// run a job description from a JSON file
    Run {
        job: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// canned sweep: main supercongruence for V = z/(1-z)
    Frame {
        /// framing parameter
        #[arg(long, default_value = "1")]
        nu: Rational,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = (1u64..=10).collect::<Vec<_>>())]
        n: Vec<u64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// canned sweep: Jacobsthal-Kazandzidis binomial congruence
    Jk {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        a_max: u64,
        #[arg(long, default_value_t = 2)]
        r_max: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// canned sweep: harmonic and generalized Wolstenholme bounds
    Wolstenholme {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = (2u64..=50).collect::<Vec<_>>())]
        n: Vec<u64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// canned sweep: Dwork integrality diagnostics for V = z/(1-z)
    Dwork {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 5, 7])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 32)]
        truncation: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn geometric_series_spec() -> SeriesSpec {
    let q = |s: &str| ScalarSpec::Rational(s.parse().unwrap());
    SeriesSpec::Rational {
        numerator: vec![q("0/1"), q("1/1")],
        denominator: vec![q("1/1"), q("-1/1")],
    }
}

fn plain_framing(nu: Rational) -> FramingSpec {
    FramingSpec {
        sign: "+".to_string(),
        nu,
        sigma: 1,
        rho: 1,
        weight: 0,
    }
}

fn canned(command: &Command) -> Option<JobSpec> {
    match command {
        Command::Run { .. } => None,
        Command::Frame { nu, primes, n, .. } => Some(JobSpec {
            series: Some(geometric_series_spec()),
            truncation: None,
            framing: Some(plain_framing(nu.clone())),
            primes: primes.clone(),
            precision: Precision::default(),
            checks: vec!["main".to_string()],
            n_values: n.clone(),
            m_max: None,
            pairs: None,
            s: None,
            jk: None,
        }),
        Command::Jk {
            primes,
            a_max,
            r_max,
            ..
        } => Some(JobSpec {
            series: None,
            truncation: None,
            framing: None,
            primes: primes.clone(),
            precision: Precision::default(),
            checks: vec!["jk".to_string()],
            n_values: Vec::new(),
            m_max: None,
            pairs: None,
            s: None,
            jk: Some(JkRange {
                a_max: *a_max,
                r_max: *r_max,
            }),
        }),
        Command::Wolstenholme { primes, n, .. } => Some(JobSpec {
            series: Some(geometric_series_spec()),
            truncation: None,
            framing: None,
            primes: primes.clone(),
            precision: Precision::default(),
            checks: vec!["harmonic".to_string(), "wolstenholme".to_string()],
            n_values: n.clone(),
            m_max: None,
            pairs: None,
            s: None,
            jk: None,
        }),
        Command::Dwork {
            primes, truncation, ..
        } => Some(JobSpec {
            series: Some(geometric_series_spec()),
            truncation: Some(*truncation),
            framing: None,
            primes: primes.clone(),
            precision: Precision::default(),
            checks: vec!["dwork".to_string()],
            n_values: Vec::new(),
            m_max: None,
            pairs: None,
            s: None,
            jk: None,
        }),
    }
}

fn execute(spec: JobSpec, output: &OutputOpts) -> Result<i32, String> {
    if let Some(k) = output.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let outcome = job::run(&spec, output.horizon)?;
    let json = serde_json::to_string_pretty(&outcome.document).map_err(|e| e.to_string())?;
    match &output.out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| e.to_string())?,
        None => println!("{json}"),
    }
    if let Some(path) = &output.csv {
        std::fs::write(path, job::to_csv(&outcome.document)).map_err(|e| e.to_string())?;
    }
    let s = &outcome.document.summary;
    eprintln!(
        "{} pass, {} fail, {} skip ({} sharp)",
        s.pass, s.fail, s.skip, s.sharp
    );
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (spec, output) = match &cli.command {
        Command::Run { job: path, output } => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match serde_json::from_str::<JobSpec>(&text) {
                Ok(spec) => (spec, output.clone()),
                Err(e) => {
                    eprintln!("error: malformed job: {e}");
                    return ExitCode::from(2);
                }
            }
        }
        other => {
            let output = match other {
                Command::Frame { output, .. }
                | Command::Jk { output, .. }
                | Command::Wolstenholme { output, .. }
                | Command::Dwork { output, .. } => output.clone(),
                Command::Run { .. } => unreachable!(),
            };
            (canned(other).expect("canned command"), output)
        }
    };
    match execute(spec, &output) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
