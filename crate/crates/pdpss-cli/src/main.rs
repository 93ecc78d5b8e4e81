//! Command-line front end: each subcommand drives one experiment and writes
//! CSV data files plus a key:value run manifest. Scalars go to stdout.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use pdpss::{
    cond_heatmap, condition_number, hadamard_rank_profile, localization, plunge_svd, svd,
    CondMethod, ComplexDenseMatrix, SubmatrixSpec, SvdMode, SvdStrategy,
};

mod output;

use output::{format_float, write_complex_matrix_csv, write_real_matrix_csv, Manifest};

#[derive(Parser)]
#[command(name = "pdpss", version, about = "SVD of DFT submatrices via the commuting tridiagonal eigenproblem")]
struct Cli {
    /// Worker threads for parallel commands (heatmap); default: all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Fft,
    Projection,
}

impl From<StrategyArg> for SvdStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => SvdStrategy::Auto,
            StrategyArg::Fft => SvdStrategy::Fft,
            StrategyArg::Projection => SvdStrategy::Projection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Reduced,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Linear,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the SVD; writes sigma.csv (and U.csv/V.csv with --vectors).
    Svd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        j0: usize,
        #[arg(long, default_value_t = 1)]
        k0: usize,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "reduced")]
        mode: ModeArg,
        /// Also write the singular vector factors.
        #[arg(long)]
        vectors: bool,
        /// Restrict the computation to the plunge window for this relative
        /// threshold instead of the full decomposition.
        #[arg(long)]
        plunge: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print "sigma_max sigma_min log10cond overflow" on one line.
    Cond {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value = "linear")]
        method: MethodArg,
    },
    /// N x N grid of log10 condition numbers ("inf" marks overflow cells).
    Heatmap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Singular value profile of the Hadamard-link factor H.
    Hadamard {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Frequency-localization maps of the singular vectors.
    Localize {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        p: usize,
        #[arg(long, default_value_t = 50)]
        q: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("pdpss: could not configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::BadArgs(msg)) => {
            eprintln!("pdpss: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("pdpss: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("pdpss: {msg}");
            ExitCode::FAILURE
        }
    }
}

enum CliError {
    BadArgs(String),
    Numerical(String),
    Io(String),
}

impl From<pdpss::Error> for CliError {
    fn from(e: pdpss::Error) -> Self {
        match e {
            pdpss::Error::InvalidArgument(_) => CliError::BadArgs(e.to_string()),
            pdpss::Error::NumericalFailure(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(format!("io error: {e}"))
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Svd { n, p, q, j0, k0, strategy, mode, vectors, plunge, out } => {
            let spec = SubmatrixSpec::with_origin(n, p, q, j0, k0)?;
            let started = Instant::now();
            let result = match plunge {
                Some(eps_t) => plunge_svd::<f64>(&spec, eps_t)
                    .map_err(|e| stage_error("plunge-svd", e))?,
                None => {
                    let mode = match mode {
                        ModeArg::Reduced => SvdMode::Reduced,
                        ModeArg::Full => SvdMode::Full,
                    };
                    svd::<f64>(&spec, strategy.into(), mode)
                        .map_err(|e| stage_error("svd", e))?
                }
            };
            let elapsed = started.elapsed();

            std::fs::create_dir_all(&out)?;
            let sigma_path = out.join("sigma.csv");
            let mut body = String::new();
            for s in &result.sigma {
                let _ = writeln!(body, "{}", format_float(*s));
            }
            std::fs::write(&sigma_path, body)?;

            let mut manifest = Manifest::new("svd");
            manifest.param("n", n);
            manifest.param("p", p);
            manifest.param("q", q);
            manifest.param("j0", j0);
            manifest.param("k0", k0);
            manifest.entry("strategy", strategy_name(result.strategy));
            manifest.entry("mode", if result.mode == SvdMode::Full { "full" } else { "reduced" });
            if let Some(eps_t) = plunge {
                manifest.entry("plunge_threshold", format_float(eps_t));
            }
            manifest.file(&sigma_path);
            if vectors {
                let u_path = out.join("U.csv");
                let v_path = out.join("V.csv");
                write_complex_matrix_csv(&u_path, &result.u)?;
                write_complex_matrix_csv(&v_path, &result.v)?;
                manifest.file(&u_path);
                manifest.file(&v_path);
            }
            manifest.entry(
                "flagged_triplets",
                result.degenerate_pairing.len().to_string(),
            );
            manifest.finish(&out, elapsed)?;
            Ok(())
        }
        Command::Cond { n, p, q, method } => {
            let spec = SubmatrixSpec::new(n, p, q)?;
            let method = match method {
                MethodArg::Linear => CondMethod::LinearTime,
                MethodArg::Full => CondMethod::FullSvd,
            };
            let c = condition_number::<f64>(&spec, method)
                .map_err(|e| stage_error("condition-number", e))?;
            println!(
                "{} {} {} {}",
                format_float(c.sigma_max),
                format_float(c.sigma_min),
                format_float(c.log10_cond),
                c.overflow
            );
            Ok(())
        }
        Command::Heatmap { n, out } => {
            let started = Instant::now();
            let grid = cond_heatmap::<f64>(n).map_err(|e| stage_error("heatmap", e))?;
            let elapsed = started.elapsed();
            std::fs::create_dir_all(&out)?;
            let path = out.join("heatmap.csv");
            let mut body = String::new();
            for p in 1..=n {
                let row: Vec<String> = (1..=n)
                    .map(|q| {
                        if grid.is_overflow(p, q) {
                            "inf".to_string()
                        } else {
                            format_float(grid.value(p, q))
                        }
                    })
                    .collect();
                let _ = writeln!(body, "{}", row.join(","));
            }
            std::fs::write(&path, body)?;
            let mut manifest = Manifest::new("heatmap");
            manifest.param("n", n);
            manifest.entry(
                "overflow_cells",
                grid.overflow.iter().filter(|&&b| b).count().to_string(),
            );
            manifest.file(&path);
            manifest.finish(&out, elapsed)?;
            Ok(())
        }
        Command::Hadamard { n, threshold, out } => {
            let started = Instant::now();
            let (sigma, count) = hadamard_rank_profile::<f64>(n, threshold)
                .map_err(|e| stage_error("hadamard", e))?;
            let elapsed = started.elapsed();
            std::fs::create_dir_all(&out)?;
            let path = out.join("sigma_h.csv");
            let mut body = String::new();
            for s in &sigma {
                let _ = writeln!(body, "{}", format_float(*s));
            }
            std::fs::write(&path, body)?;
            println!("count_above {count}");
            let mut manifest = Manifest::new("hadamard");
            manifest.param("n", n);
            manifest.entry("threshold", format_float(threshold));
            manifest.entry("count_above", count.to_string());
            manifest.file(&path);
            manifest.finish(&out, elapsed)?;
            Ok(())
        }
        Command::Localize { n, p, q, out } => {
            let spec = SubmatrixSpec::new(n, p, q)?;
            let started = Instant::now();
            let maps = localization::<f64>(&spec).map_err(|e| stage_error("localization", e))?;
            let parseval = parseval_check(&spec)?;
            let elapsed = started.elapsed();
            std::fs::create_dir_all(&out)?;
            let left_path = out.join("leftmap.csv");
            let right_path = out.join("rightmap.csv");
            write_real_matrix_csv(&left_path, &maps.left)?;
            write_real_matrix_csv(&right_path, &maps.right)?;
            let mut manifest = Manifest::new("localize");
            manifest.param("n", n);
            manifest.param("p", p);
            manifest.param("q", q);
            manifest.entry("parseval", if parseval { "ok" } else { "FAILED" });
            manifest.file(&left_path);
            manifest.file(&right_path);
            manifest.finish(&out, elapsed)?;
            if !parseval {
                return Err(CliError::Numerical(
                    "localization stage failed the per-column energy check".into(),
                ));
            }
            Ok(())
        }
    }
}

fn stage_error(stage: &str, e: pdpss::Error) -> CliError {
    match e {
        pdpss::Error::InvalidArgument(_) => CliError::BadArgs(format!("{stage}: {e}")),
        pdpss::Error::NumericalFailure(_) => CliError::Numerical(format!("{stage}: {e}")),
    }
}

fn strategy_name(s: SvdStrategy) -> &'static str {
    match s {
        SvdStrategy::Auto => "auto",
        SvdStrategy::Fft => "fft",
        SvdStrategy::Projection => "projection",
    }
}

/// Per-column energy conservation of the transform factors: the transform
/// of a unit-norm column carries total energy equal to the transform
/// length.
fn parseval_check(spec: &SubmatrixSpec) -> Result<bool, CliError> {
    let res = svd::<f64>(spec, SvdStrategy::Fft, SvdMode::Reduced)?;
    let ok_for = |m: &ComplexDenseMatrix<f64>| {
        let f = pdpss::columnwise_fft(m);
        let d = m.rows() as f64;
        (0..f.cols()).all(|c| {
            let energy: f64 = (0..f.rows()).map(|r| f.get(r, c).norm_sqr()).sum();
            (energy - d).abs() <= 1e-9 * d
        })
    };
    Ok(ok_for(&res.u) && ok_for(&res.v))
}
