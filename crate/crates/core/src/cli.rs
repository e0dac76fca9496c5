//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain or I/O errors.
//! Data goes to files or standard output; diagnostics go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze, spectrum_csv};
use crate::circuit::{build_aikps, build_deep, build_shallow_parts, emit_qasm, stats, CostModel};
use crate::coeffsets::{
    gen_aikps_with_base, gen_cyclic, gen_gap, gen_random, CoefficientSet, Method,
};
use crate::error::Error;
use crate::fmt::float17;
use crate::optimize::{
    compare_experiment, comparison_csv, coordinate_descent, ratios_csv, DescentConfig, Mode,
};
use crate::qfa::{run_word, sweep_csv};
use crate::zmod::{is_prime, PrimeModulus};

#[derive(Debug, Parser)]
#[command(
    name = "shallow-qfa",
    version,
    about = "Quantum fingerprinting experiments for MOD_p automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a coefficient set.
    Gen(GenArgs),
    /// Exact error, energy and bias report for a coefficient set.
    Analyze(AnalyzeArgs),
    /// Simulate the automaton on a^j.
    Simulate(SimulateArgs),
    /// Build a fingerprinting circuit.
    Circuit(CircuitArgs),
    /// Coordinate-descent search for a low-error set.
    Optimize(OptimizeArgs),
    /// General vs shallow descent over a list of primes.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenMethod {
    Cyclic,
    Aikps,
    Gap,
    Random,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    method: GenMethod,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection-search budget for `--method gap`.
    #[arg(long, default_value_t = 100_000)]
    max_tries: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    coeffs: PathBuf,
    /// Also write the full spectrum CSV here.
    #[arg(long)]
    spectrum: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["j", "sweep"]))]
struct SimulateArgs {
    #[arg(long)]
    coeffs: PathBuf,
    #[arg(long)]
    j: Option<u64>,
    /// All word lengths j in [0, p).
    #[arg(long)]
    sweep: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Deep,
    Shallow,
    Aikps,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("output").required(true).args(["emit_qasm", "stats"]))]
struct CircuitArgs {
    #[arg(long)]
    coeffs: PathBuf,
    #[arg(long, value_enum)]
    style: Style,
    #[arg(long)]
    x: u64,
    #[arg(long)]
    emit_qasm: Option<PathBuf>,
    #[arg(long)]
    stats: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    Shallow,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::General => Mode::General,
            ModeArg::Shallow => Mode::Shallow,
        }
    }
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_sweeps: usize,
    #[arg(long, default_value_t = 0)]
    restarts: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("primes").required(true).args(["p_list", "p_max"]))]
struct CompareArgs {
    /// File with one prime per line.
    #[arg(long)]
    p_list: Option<PathBuf>,
    /// Use every prime up to this bound.
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    restarts: u32,
    #[arg(long, default_value_t = 100)]
    max_sweeps: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Comparison CSV; ratios go to `<stem>_ratios.csv` next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn load_set(path: &Path) -> CliResult<CoefficientSet> {
    CoefficientSet::from_json(&read(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn required<T>(value: Option<T>, flag: &str, method: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --method {method}")))
}

fn gen(args: GenArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let p = PrimeModulus::new(args.p)?;
    let set = match args.method {
        GenMethod::Cyclic => gen_cyclic(p, required(args.d, "d", "cyclic")?)?,
        GenMethod::Random => gen_random(p, required(args.d, "d", "random")?, args.seed)?,
        GenMethod::Aikps => gen_aikps_with_base(p, args.eps, Default::default())?.coefficients,
        GenMethod::Gap => {
            gen_gap(p, required(args.m, "m", "gap")?, args.seed, args.max_tries)?.expanded
        }
    };
    emit(args.out.as_deref(), &(set.to_json() + "\n"), stdout)
}

fn analyze_cmd(args: AnalyzeArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let set = load_set(&args.coeffs)?;
    let report = analyze(&set)?;
    if let Some(path) = &args.spectrum {
        write_file(path, &spectrum_csv(&set))?;
    }
    emit(None, &(report.to_json() + "\n"), stdout)
}

fn simulate(args: SimulateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let set = load_set(&args.coeffs)?;
    let csv = match args.j {
        Some(j) => format!("j,accept_prob\n{j},{}\n", float17(run_word(&set, j))),
        None => sweep_csv(&set, 0..set.modulus()),
    };
    emit(args.out.as_deref(), &csv, stdout)
}

fn circuit_cmd(args: CircuitArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let set = load_set(&args.coeffs)?;
    let circuit = match args.style {
        Style::Deep => build_deep(&set, args.x),
        Style::Shallow => {
            let (t0, generators) = set
                .subset_sums()
                .ok_or(Error::MissingGenerators("--style shallow"))?;
            build_shallow_parts(t0, generators, set.modulus(), args.x)
        }
        Style::Aikps => {
            let params = set.params();
            let eps = match (set.method(), params.eps) {
                (Method::Aikps, Some(eps)) => eps,
                _ => {
                    return Err(CliError::Other(
                        "--style aikps needs a set produced by `gen --method aikps`".into(),
                    ))
                }
            };
            let aikps = gen_aikps_with_base(set.p(), eps, params.log_base.unwrap_or_default())?;
            if aikps.coefficients.coefficients() != set.coefficients() {
                return Err(Error::InconsistentGenerators.into());
            }
            build_aikps(&aikps, args.x)
        }
    };
    if let Some(path) = &args.emit_qasm {
        write_file(path, &emit_qasm(&circuit))?;
    }
    if args.stats {
        let s = stats(&circuit, &CostModel::default())?;
        let json = serde_json::to_string_pretty(&s).expect("stats serialize");
        emit(None, &(json + "\n"), stdout)?;
    }
    Ok(())
}

fn optimize_cmd(
    args: OptimizeArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    let p = PrimeModulus::new(args.p)?;
    let cfg = DescentConfig {
        seed: args.seed,
        max_sweeps: args.max_sweeps,
        mode: args.mode.into(),
        restarts: args.restarts,
    };
    let result = coordinate_descent(p, args.size, &cfg)?;
    let _ = writeln!(
        stderr,
        "eps = {} at x = {} after {} sweeps ({} evaluations)",
        float17(result.best_epsilon),
        result.argmax_x,
        result.sweeps_used,
        result.evaluations
    );
    emit(
        args.out.as_deref(),
        &(result.best_set.to_json() + "\n"),
        stdout,
    )
}

fn parse_prime_list(path: &Path) -> CliResult<Vec<PrimeModulus>> {
    let text = read(path)?;
    let mut primes = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let n: u64 = line.parse().map_err(|_| {
            CliError::Other(format!("{}: {line:?} is not an integer", path.display()))
        })?;
        primes.push(PrimeModulus::new(n)?);
    }
    Ok(primes)
}

fn ratios_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "compare".into());
    out.with_file_name(format!("{stem}_ratios.csv"))
}

fn compare(args: CompareArgs) -> CliResult<()> {
    let primes = match (&args.p_list, args.p_max) {
        (Some(path), _) => parse_prime_list(path)?,
        (None, Some(max)) => (2..=max)
            .filter(|&n| is_prime(n))
            .map(|n| PrimeModulus::new(n).unwrap())
            .collect(),
        (None, None) => unreachable!("clap enforces the group"),
    };
    if primes.is_empty() {
        return Err(CliError::Usage("prime list is empty".into()));
    }
    let cfg = DescentConfig {
        seed: args.seed,
        max_sweeps: args.max_sweeps,
        mode: Mode::General,
        restarts: args.restarts,
    };
    let records = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Other(e.to_string()))?
            .install(|| compare_experiment(&primes, args.m, &cfg))?,
        None => compare_experiment(&primes, args.m, &cfg)?,
    };
    write_file(&args.out, &comparison_csv(&records))?;
    write_file(&ratios_path(&args.out), &ratios_csv(&records))
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a, stdout),
        Command::Analyze(a) => analyze_cmd(a, stdout),
        Command::Simulate(a) => simulate(a, stdout),
        Command::Circuit(a) => circuit_cmd(a, stdout),
        Command::Optimize(a) => optimize_cmd(a, stdout, stderr),
        Command::Compare(a) => compare(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_file_name() {
        assert_eq!(
            ratios_path(Path::new("/tmp/out/cmp.csv")),
            PathBuf::from("/tmp/out/cmp_ratios.csv")
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["shallow-qfa", "frobnicate"], &mut out, &mut err), 1);
        assert_eq!(
            run(
                [
                    "shallow-qfa",
                    "gen",
                    "--method",
                    "cyclic",
                    "--p",
                    "7",
                    "--bogus"
                ],
                &mut out,
                &mut err
            ),
            1
        );
        assert_eq!(
            run(
                ["shallow-qfa", "gen", "--method", "cyclic", "--p", "7"],
                &mut out,
                &mut err
            ),
            1
        );
    }
}
