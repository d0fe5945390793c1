mod args;
mod check;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use num_rational::BigRational;

use plethys::format::{self, alpha_sequence, AlphaEntry, OutputFormat, Table, TermStatus};
use plethys::report;
use plethys::roots::{RootMethod, RootSolveConfig};
use plethys::scalar::{parse_rational, rational_to_f64, Backend, CoefficientScalar};
use plethys::{AlphaSequence, Error};

use args::{parse_n_list, AlphaSource, BackendArg, Cli, Command, Family, Format, MethodArg, SolverArgs};

const DEFAULT_BITS: u32 = 256;
const ZETA_BITS: u32 = 128;

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(PathBuf, io::Error),
    /// An exact identity did not hold.
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) => match e.root_cause() {
                Error::Convergence { .. } => 3,
                Error::Integrality { .. } => 4,
                _ => 2,
            },
            Failure::Usage(_) | Failure::Io(..) => 2,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Invariant(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

/// Settings shared by every command of one invocation.
#[derive(Debug, Clone)]
struct RunConfig {
    command: &'static str,
    backend: Backend,
    precision_bits: u32,
    format: OutputFormat,
    out: Option<PathBuf>,
    seed: u64,
}

impl RunConfig {
    fn new(cli: &Cli, default: BackendArg) -> Outcome<Self> {
        let chosen = cli.backend.unwrap_or(if cli.bits.is_some() { BackendArg::Bigcomplex } else { default });
        let backend = match chosen {
            BackendArg::Bigcomplex => Backend::big(cli.bits.unwrap_or(DEFAULT_BITS))?,
            _ if cli.bits.is_some() => {
                return Err(Failure::Usage("--bits applies only to the bigcomplex backend".into()))
            }
            BackendArg::Rational => Backend::Rational,
            BackendArg::Complex64 => Backend::Complex64,
        };
        let precision_bits = match backend {
            Backend::BigComplex { precision_bits } => precision_bits,
            _ => 53,
        };
        Ok(RunConfig {
            command: cli.command.name(),
            backend,
            precision_bits,
            format: match cli.format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            },
            out: cli.out.clone(),
            seed: cli.seed,
        })
    }

    fn solver(&self, args: &SolverArgs) -> Outcome<RootSolveConfig> {
        let cfg = RootSolveConfig {
            method: match args.method {
                MethodArg::Aberth => RootMethod::Aberth,
                MethodArg::Companion => RootMethod::Companion,
            },
            max_iterations: args.max_iter,
            convergence_tol: args.tol,
            precision_bits: self.precision_bits,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit(&self, table: &Table) -> Outcome {
        self.write(&table.render(self.format))
    }

    fn write(&self, text: &str) -> Outcome {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.clone(), e)),
            None => {
                let mut stdout = io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
            }
        }
    }
}

fn read(path: &PathBuf) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))
}

fn real_arg(text: &Option<String>, flag: &str) -> Outcome<BigRational> {
    let text = text
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("this family needs {flag}")))?;
    Ok(parse_rational(text)?)
}

/// Targets exactly as written, before a backend is applied.
enum Targets {
    Family(AlphaSequence),
    Listed(Vec<AlphaEntry>),
}

fn targets(source: &AlphaSource) -> Outcome<Targets> {
    match (source.family, &source.alphas, &source.alphas_file) {
        (Some(Family::Polylog), ..) => {
            let s = rational_to_f64(&real_arg(&source.s, "--s")?);
            Ok(Targets::Family(AlphaSequence::polylog(s)))
        }
        (Some(Family::Constant), ..) => {
            let c = real_arg(&source.c, "--c")?;
            Ok(Targets::Family(AlphaSequence::Constant(CoefficientScalar::Rational(c))))
        }
        (None, Some(inline), _) => Ok(Targets::Listed(format::parse_inline_alphas(inline)?)),
        (None, None, Some(path)) => Ok(Targets::Listed(format::parse_alpha_file(&read(path)?)?)),
        (None, None, None) => Err(Failure::Usage(
            "give the targets with --family, --alphas or --alphas-file".into(),
        )),
    }
}

fn alpha(source: &AlphaSource, backend: Backend) -> Outcome<AlphaSequence> {
    match targets(source)? {
        Targets::Family(a) => Ok(a),
        Targets::Listed(entries) => Ok(alpha_sequence(&entries, backend)?),
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Build { source, n } => {
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            let a = alpha(source, rc.backend)?;
            rc.emit(&report::coefficients(&a, *n, rc.backend)?)
        }
        Command::Verify { source, n_list, k_max, solver } => {
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            let a = alpha(source, rc.backend)?;
            let n_list = parse_n_list(n_list).map_err(Failure::Usage)?;
            rc.emit(&report::verification(&a, &n_list, *k_max, rc.backend, &rc.solver(solver)?)?)
        }
        Command::Roots { source, n, n_list, solver } => {
            let rc = RunConfig::new(&cli, BackendArg::Complex64)?;
            let a = alpha(source, rc.backend)?;
            let n_list = match (n, n_list) {
                (Some(n), _) => vec![*n],
                (None, Some(list)) => parse_n_list(list).map_err(Failure::Usage)?,
                (None, None) => unreachable!("clap requires one of --n, --n-list"),
            };
            rc.emit(&report::roots(&a, &n_list, rc.backend, &rc.solver(solver)?)?)
        }
        Command::Heatmap { source, n_max, k_max, plot_script, solver } => {
            let rc = RunConfig::new(&cli, BackendArg::Complex64)?;
            if plot_script.is_some() && rc.format != OutputFormat::Csv {
                return Err(Failure::Usage("--plot-script reads CSV; drop --format json".into()));
            }
            let a = alpha(source, rc.backend)?;
            let (table, matrix) = report::heatmap(&a, *n_max, *k_max, rc.backend, &rc.solver(solver)?)?;
            if !matrix.failed.is_empty() {
                eprintln!("plethys {}: root solve failed for n = {:?}; those rows are nan", rc.command, matrix.failed);
            }
            rc.emit(&table)?;
            if let Some(path) = plot_script {
                let csv = rc.out.as_ref().map_or("heatmap.csv".to_string(), |p| p.display().to_string());
                fs::write(path, report::heatmap_plot_script(&csv)).map_err(|e| Failure::Io(path.clone(), e))?;
            }
            Ok(())
        }
        Command::Oeis { s, count, bfile } => {
            if matches!(cli.backend, Some(b) if b != BackendArg::Rational) || cli.bits.is_some() {
                return Err(Failure::Usage("oeis always runs in the rational backend".into()));
            }
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            let b = report::integer_sequence(*s, *count)?;
            match bfile {
                None => rc.emit(&report::sequence_table(*s, &b)),
                Some(path) => {
                    let reference = format::parse_bfile(&read(path)?)?;
                    let cmp = format::compare_bfile(&b, &reference, 0);
                    for status in [TermStatus::SignFlip, TermStatus::Mismatch, TermStatus::Missing] {
                        let hits = cmp.iter().filter(|c| c.status == status).count();
                        if hits > 0 {
                            eprintln!("plethys {}: {hits} term(s) {}", rc.command, status.name());
                        }
                    }
                    rc.emit(&report::bfile_table(*s, &cmp))
                }
            }
        }
        Command::Table1 => {
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            rc.emit(&report::table1()?)
        }
        Command::Zeta { s, n_list } => {
            let mut rc = RunConfig::new(&cli, BackendArg::Bigcomplex)?;
            if cli.bits.is_none() {
                rc.precision_bits = ZETA_BITS;
            }
            let n_list = parse_n_list(n_list).map_err(Failure::Usage)?;
            let rec = plethys::zeta_convergence(*s, &n_list, rc.precision_bits)?;
            rc.emit(&report::zeta_table(&rec, rc.precision_bits))
        }
        Command::Alphas { source, n } => {
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            let entries = match targets(source)? {
                Targets::Listed(mut e) => {
                    if e.len() < *n {
                        return Err(Failure::Lib(Error::Input(format!("{} targets given, {n} requested", e.len()))));
                    }
                    e.truncate(*n);
                    e
                }
                Targets::Family(a) => family_entries(&a, *n)?,
            };
            rc.emit(&format::alphas_table(&entries))
        }
        Command::Check { cases, n_max } => {
            let rc = RunConfig::new(&cli, BackendArg::Rational)?;
            let (table, failures) = check::run(rc.seed, *cases, *n_max)?;
            rc.emit(&table)?;
            if failures > 0 {
                return Err(Failure::Invariant(format!("{failures} case(s) broke an exact identity")));
            }
            Ok(())
        }
    }
}

/// Exact entries where the family is rational, nearest doubles otherwise.
fn family_entries(a: &AlphaSequence, n: usize) -> Outcome<Vec<AlphaEntry>> {
    (1..=n)
        .map(|k| match a.term::<BigRational>(k, ()) {
            Ok(q) => Ok(AlphaEntry::real(q)),
            Err(_) => {
                let z: num_complex::Complex64 = a.term(k, ())?;
                let exact = |x: f64| {
                    BigRational::from_float(x).ok_or_else(|| Failure::Usage(format!("alpha_{k} is not finite")))
                };
                Ok(AlphaEntry { re: exact(z.re)?, im: exact(z.im)? })
            }
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("plethys {command}: error: {}", f.message());
            if let Failure::Lib(e) = &f {
                if let Error::Convergence { residuals, .. } = e.root_cause() {
                    let worst = residuals.iter().cloned().fold(0.0, f64::max);
                    eprintln!("plethys {command}: largest residual of the last iterate: {worst:e}");
                }
            }
            ExitCode::from(f.exit_code())
        }
    }
}
