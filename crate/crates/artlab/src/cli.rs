//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use artlab_core::galmod::{cyclotomic_module, homothety_module, lemma4_audit_with};
use artlab_core::lemma2::{
    count_fermat_points, exists_pair, failure_scan_witnessed, prime_power_witness,
    weil_threshold_prime,
};
use artlab_core::modcurve::level_invariants;
use artlab_core::{ArtReport, ErrorKind, GaloisModule, Limits};
use clap::error::ErrorKind as ClapErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cache::{cache_roundtrip, Cache, Outcome};
use crate::module_file::{self, LoadError};
use crate::parallel::Runner;
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "artlab",
    version,
    about = "Almost-rational torsion on finite Galois modules"
)]
pub struct Cli {
    /// Emit one JSON object per line instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for scans and surveys (output does not depend on it).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,

    /// Directory for cached results.
    #[arg(long, global = true, env = "ARTLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Maximum size of a Galois closure.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_closure: usize,

    /// Maximum number of points in an enumerated module.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_points: u64,

    /// Fill the "ms" field with wall-clock time. Disables the cache.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Almost-rational set and unipotent audit of a module file.
    Analyze { file: PathBuf },
    /// Almost-rational set of the cyclotomic module μ_n.
    Mu { n: u64 },
    /// Unit-pair search and related counts.
    #[command(subcommand)]
    Lemma2(Lemma2Command),
    /// Invariants of a prime level.
    Level { level: u64 },
    /// Compare the almost-rational set of the Eisenstein model with ⟨C, Σ[3]⟩.
    Theorem3 { level: u64 },
    /// The same comparison over all prime levels in a range.
    Survey {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Almost-rational set of a homothety module, checked against the unit-pair search.
    Homothety {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Lemma2Command {
    /// Moduli up to MAX with no unit pair.
    Scan {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        max: u64,
        /// Also list the first pair found for each modulus.
        #[arg(long)]
        witnesses: bool,
    },
    /// First unit pair modulo M.
    Pair {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        e: u64,
    },
    /// Affine points of x^e + y^e = 2 over F_p.
    Count {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        p: u64,
    },
    /// Explicit pair construction modulo p^n.
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        e: u64,
    },
    /// Primes up to BOUND with at most e^2 + 2e points on x^e + y^e = 2.
    Threshold {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Core(artlab_core::Error),
    Load(LoadError),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        let kind = match self {
            Failure::Core(e) | Failure::Load(LoadError::Module(e)) => e.kind(),
            Failure::Load(_) => ErrorKind::InvalidInput,
        };
        match kind {
            ErrorKind::InvalidInput => 2,
            ErrorKind::ResourceExhausted => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Load(e) => write!(f, "{e}"),
        }
    }
}

impl From<artlab_core::Error> for Failure {
    fn from(e: artlab_core::Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs one invocation and returns its exit code: 0 on success, 1 if any
/// check failed, 2 on invalid input, 3 when a resource cap was hit.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let _ = write!(err, "{rendered}");
                    if !rendered.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                    }
                    2
                }
            };
        }
    };
    let limits = Limits {
        max_closure: cli.max_closure,
        max_points: cli.max_points,
    };
    let params = match canonical_params(&cli) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "artlab: {e}");
            return e.exit_code();
        }
    };
    let cache = match (&cli.cache_dir, cli.timing) {
        (Some(dir), false) => Some(Cache::new(dir)),
        _ => None,
    };
    let mut warnings = Vec::new();
    let result = cache_roundtrip(cache.as_ref(), &params, &mut |w| warnings.push(w), || {
        let runner = Runner::new(cli.threads.map(|t| t as usize));
        run(&cli, &runner, &limits)
    });
    for w in warnings {
        let _ = writeln!(err, "artlab: warning: {w}");
    }
    match result {
        Ok(outcome) => {
            if out.write_all(outcome.output.as_bytes()).is_err() {
                return 2;
            }
            let _ = out.flush();
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "artlab: {e}");
            e.exit_code()
        }
    }
}

/// Everything that can change the output, in a fixed textual form. The
/// thread count is left out on purpose. Module files enter by content hash.
fn canonical_params(cli: &Cli) -> Result<String, Failure> {
    let command = match &cli.command {
        Command::Analyze { file } => {
            let bytes = std::fs::read(file).map_err(|e| Failure::Load(LoadError::Io(e)))?;
            format!("analyze sha256={}", hex::encode(Sha256::digest(&bytes)))
        }
        other => format!("{other:?}"),
    };
    Ok(format!(
        "{command} json={} max_closure={} max_points={}",
        cli.json, cli.max_closure, cli.max_points
    ))
}

fn run(cli: &Cli, runner: &Runner, limits: &Limits) -> Result<Outcome, Failure> {
    let timed = |f: &dyn Fn() -> artlab_core::Result<ArtReport>| -> Result<ArtReport, Failure> {
        let start = Instant::now();
        let mut r = f()?;
        if cli.timing {
            r.elapsed = Some(start.elapsed());
        }
        Ok(r)
    };
    let values: Vec<Value> = match &cli.command {
        Command::Analyze { file } => {
            let module = module_file::load(file, limits).map_err(Failure::Load)?;
            let r = timed(&|| runner.almost_rational_set(&module))?;
            let audit = lemma4_audit_with(&module, &r.ar_points);
            vec![report::art_json(&r), report::audit_json(&audit)]
        }
        Command::Mu { n } => {
            let module = cyclotomic_module(*n, limits)?;
            vec![report::art_json(&timed(&|| {
                runner.almost_rational_set(&module)
            })?)]
        }
        Command::Lemma2(sub) => vec![lemma2(sub, runner)?],
        Command::Level { level } => vec![report::level_json(&level_invariants(*level)?)],
        Command::Theorem3 { level } => {
            vec![report::art_json(&timed(&|| {
                runner.theorem3_check(*level, limits)
            })?)]
        }
        Command::Survey { from, to } => {
            let survey = runner.survey(*from, *to, limits)?;
            let lines = report::survey_json(&survey);
            let exit = i32::from(!survey.all_pass() || report::any_failed(&lines));
            let output = if cli.json {
                report::json_lines(&lines)
            } else {
                report::survey_table(&survey)
            };
            return Ok(Outcome { output, exit });
        }
        Command::Homothety { m, e, dim } => {
            let module = homothety_module(*m, *e, *dim, limits)?;
            let r = timed(&|| runner.almost_rational_set(&module))?;
            vec![report::art_json(&r), bridge_json(&module, *m, *e, *dim)?]
        }
    };
    Ok(render(cli.json, &values))
}

fn lemma2(cmd: &Lemma2Command, runner: &Runner) -> Result<Value, Failure> {
    Ok(match *cmd {
        Lemma2Command::Scan { e, max, witnesses } => {
            let r = if witnesses {
                failure_scan_witnessed(e, max)?
            } else {
                runner.failure_scan(e, max)?
            };
            report::lemma2_json(&r)
        }
        Lemma2Command::Pair { m, e } => report::pair_json(m, e, exists_pair(m, e)?.as_ref()),
        Lemma2Command::Count { e, p } => report::count_json(e, p, count_fermat_points(e, p)?),
        Lemma2Command::Witness { p, n, e } => {
            report::prime_power_json(&prime_power_witness(p, n, e)?)
        }
        Lemma2Command::Threshold { e, bound } => {
            report::threshold_json(&weil_threshold_prime(e, bound)?)
        }
    })
}

/// The first basis vector has exact order `m`. It should be almost rational
/// exactly when no unit pair exists modulo `m`.
fn bridge_json(module: &GaloisModule, m: u64, e: u64, dim: usize) -> Result<Value, Failure> {
    let mut coords = vec![0i64; dim];
    coords[0] = 1;
    let p = module.point(&coords)?;
    let ar = module.is_almost_rational(&p);
    let pair = exists_pair(m, e)?;
    Ok(json!({
        "m": m,
        "e": e,
        "dim": dim,
        "generator_ar": ar,
        "pair": pair.as_ref().map(report::witness_json),
        "verdict": report::verdict(ar == pair.is_none()).as_str(),
    }))
}

fn render(json: bool, values: &[Value]) -> Outcome {
    let exit = i32::from(report::any_failed(values));
    let output = if json {
        report::json_lines(values)
    } else {
        let mut s = String::new();
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            let _ = write!(s, "{}", report::table(v));
        }
        s
    };
    Outcome { output, exit }
}
