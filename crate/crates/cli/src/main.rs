use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rrlab::cache::{default_cache_dir, Cache};
use rrlab::compute::run_compute;
use rrlab::report::{Command, IdealSource, JobSpec, Params, RingSpec};
use rrlab::reproduce::reproduce_example;
use rrlab::suites::run_suite;
use rrlab::{HarnessError, VerdictReport};

#[derive(Parser)]
#[command(name = "rrlab", version, about = "Ratliff-Rush closures and reduction numbers of m-primary ideals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one computation on an ideal.
    Compute {
        /// closure | power-closure | reduction-number | rr-reduction-number | colon | hilbert | filtration
        command: String,
        #[arg(long, conflicts_with = "corpus")]
        ideal: Option<String>,
        #[arg(long, requires = "index")]
        corpus: Option<PathBuf>,
        #[arg(long)]
        index: Option<usize>,
        /// Comma-separated variable names.
        #[arg(long, default_value = "x,y")]
        ring: String,
        /// Prime characteristic of the coefficient field.
        #[arg(long = "char", default_value_t = rrlab_core::DEFAULT_PRIME as u64, conflicts_with = "rationals")]
        characteristic: u64,
        /// Work over the rationals.
        #[arg(long)]
        rationals: bool,
        /// Numerator of a colon: I, I^k, m^k or (generators).
        #[arg(long)]
        num: Option<String>,
        /// Denominator of a colon.
        #[arg(long)]
        den: Option<String>,
        /// Polynomial tested for membership in the colon.
        #[arg(long)]
        member: Option<String>,
        /// Power whose closure is computed.
        #[arg(long)]
        power: Option<u32>,
        /// Also fit Hilbert coefficients.
        #[arg(long)]
        coeffs: bool,
        /// Sampled reductions for the reduction number.
        #[arg(long)]
        trials: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite over random instances.
    Suite {
        name: String,
        #[arg(long)]
        trials: Option<u32>,
        /// Restrict to instances of this dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        extra_gens: Option<usize>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a worked example: 2.12 or 2.13.
    Reproduce {
        id: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Consecutive equal chain terms required for stabilization.
    #[arg(long)]
    window: Option<u32>,
    /// Maximal chain length.
    #[arg(long)]
    cap: Option<u32>,
    /// Filtration, Hilbert or suite window depth.
    #[arg(long)]
    depth: Option<u32>,
    /// Largest m tried for I^(m+1) = J I^m.
    #[arg(long)]
    max_m: Option<u32>,
    /// Window for the Ratliff-Rush reduction number.
    #[arg(long)]
    rr_window: Option<u32>,
    /// Extra points a Hilbert fit must match.
    #[arg(long)]
    agreement: Option<u32>,
    /// Bypass the result cache.
    #[arg(long)]
    no_cache: bool,
}

impl Common {
    fn params(&self) -> Params {
        Params {
            window: self.window,
            cap: self.cap,
            depth: self.depth,
            max_m: self.max_m,
            rr_window: self.rr_window,
            agreement: self.agreement,
            ..Params::default()
        }
    }

    fn cache(&self) -> anyhow::Result<Option<Cache>> {
        if self.no_cache {
            return Ok(None);
        }
        let dir = default_cache_dir();
        let cache = Cache::open(&dir).with_context(|| format!("opening cache at {}", dir.display()))?;
        Ok(Some(cache))
    }
}

fn emit(report: &VerdictReport, json: Option<&PathBuf>) -> anyhow::Result<()> {
    println!("{report}");
    if let Some(path) = json {
        std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Result<VerdictReport, HarnessError>> {
    Ok(match cli.command {
        Cmd::Compute {
            command,
            ideal,
            corpus,
            index,
            ring,
            characteristic,
            rationals,
            num,
            den,
            member,
            power,
            coeffs,
            trials,
            common,
        } => {
            let mut job = JobSpec::new(Command::Compute { op: command });
            job.ring = Some(RingSpec::new(&ring, if rationals { 0 } else { characteristic }));
            job.ideal = match (ideal, corpus) {
                (Some(text), _) => Some(IdealSource::Inline { text }),
                (None, Some(path)) => Some(IdealSource::Corpus { path, index: index.unwrap_or(0) }),
                (None, None) => None,
            };
            job.params = Params { num, den, member, power, coeffs, trials, ..common.params() };
            job.seed = common.seed;
            job.output = common.json.clone();
            let cache = common.cache()?;
            let report = run_compute(&job, cache.as_ref());
            if let Ok(r) = &report {
                emit(r, common.json.as_ref())?;
            }
            report
        }
        Cmd::Suite { name, trials, dim, degree_bound, extra_gens, threads, common } => {
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
            }
            let params = Params { trials, dim, degree_bound, extra_gens, ..common.params() };
            let cache = common.cache()?;
            let report = run_suite(&name, &params, common.seed, cache.as_ref());
            if let Ok(r) = &report {
                emit(r, common.json.as_ref())?;
            }
            report
        }
        Cmd::Reproduce { id, common } => {
            let report = reproduce_example(&id, &common.params(), common.seed);
            if let Ok(r) = &report {
                emit(r, common.json.as_ref())?;
            }
            report
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(report)) if report.passed() => ExitCode::SUCCESS,
        Ok(Ok(_)) => ExitCode::from(1),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_configuration() { 2 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
