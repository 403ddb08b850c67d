//! Command-line front end: renders slice rasters to PGM + JSON and runs the
//! convergence experiments.
//!
//! Every flag can also come from a JSON config file (`--config`, same field
//! names as the long flags); explicit flags win. Exit codes: 0 success,
//! 1 usage error, 2 I/O error, 3 domain error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ptorus::{
    cyclic_b_n, cyclic_limit_check, psl_distance, raster_fn, raster_linear, raster_m_zeta,
    raster_maskit, run_experiment, write_raster, Complex64, Error as LibError, ScanParams,
    SequenceSpec, SliceRaster, UnitDetMatrix, Window,
};

#[derive(Parser)]
#[command(name = "ptorus", version, about = "Slice rasters of the once-punctured-torus deformation space", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the Maskit slice over a window in the mu plane
    Maskit(MaskitArgs),
    /// Render a linear slice: fix --beta (or --lambda with beta = 2 cosh(lambda/2)),
    /// or fix the first trace with --alpha and scan the second
    Linear(LinearArgs),
    /// Render a horizontal slice M(zeta), the intersection of Maskit translates
    Mzeta(MzetaArgs),
    /// Render a Fenchel-Nielsen twist slice for a fixed length parameter
    #[command(name = "fn")]
    FnSlice(FnArgs),
    /// Render a sequence of linear slices and tabulate Hausdorff distances
    /// to the predicted limit
    Converge(ConvergeArgs),
    /// Check the cyclic geometric limit B_n^{-m_n} -> [[1, 2 xi], [0, 1]]
    Cyclic(CyclicArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// JSON config file with the same field names as the long flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Window center as "RE,IM"
    #[arg(long)]
    center: Option<String>,
    /// Window width
    #[arg(long)]
    width: Option<f64>,
    /// Window height
    #[arg(long)]
    height: Option<f64>,
    /// Grid columns
    #[arg(long)]
    nx: Option<usize>,
    /// Grid rows
    #[arg(long)]
    ny: Option<usize>,
    /// Scan depth cap
    #[arg(long)]
    depth: Option<u32>,
    /// Escape margin delta
    #[arg(long)]
    delta: Option<f64>,
    /// Real-interval tolerance for exterior certificates
    #[arg(long)]
    tol: Option<f64>,
    /// Output PGM path (used as a filename prefix by `converge`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metadata JSON path (default: output path with .json extension)
    #[arg(long)]
    meta: Option<PathBuf>,
    /// CSV output path for tabular commands
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker thread count (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct MaskitArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct LinearArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Fixed second trace as "RE,IM"
    #[arg(long)]
    beta: Option<String>,
    /// Complex length as "RE,IM"; sets beta = 2 cosh(lambda/2)
    #[arg(long)]
    lambda: Option<String>,
    /// Fixed first trace as "RE,IM"; scans the second trace over the window
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Args)]
struct MzetaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cusp shape parameter as "RE,IM", Im > 0
    #[arg(long)]
    zeta: Option<String>,
    /// Translate range: the intersection runs over |k| <= kmax
    #[arg(long)]
    kmax: Option<u32>,
}

#[derive(Args)]
struct FnArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Length parameter as "RE,IM", away from 2 pi i Z
    #[arg(long)]
    lambda: Option<String>,
    /// Render the normalized slice (twists sampled through the inverse of
    /// g_lambda, so translation by 2 replaces translation by lambda)
    #[arg(long)]
    hat: bool,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// "horo" (ray lambda = t e^{i theta}) or "tan" (lambda = 2 pi i / (m + xi))
    #[arg(long)]
    mode: Option<String>,
    /// Ray angle in radians, for --mode horo
    #[arg(long)]
    theta: Option<f64>,
    /// Comma-separated decreasing scales, for --mode horo
    #[arg(long)]
    scales: Option<String>,
    /// Limit datum xi as "RE,IM", for --mode tan
    #[arg(long)]
    xi: Option<String>,
    /// First schedule entry, for --mode tan; the schedule doubles from here
    #[arg(long)]
    mstart: Option<u64>,
    /// Number of sequence terms, for --mode tan
    #[arg(long)]
    count: Option<usize>,
    /// Translate range for the tangential limit raster
    #[arg(long)]
    kmax: Option<u32>,
}

#[derive(Args)]
struct CyclicArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Limit datum xi as "RE,IM" with Im >= 0
    #[arg(long)]
    xi: Option<String>,
    /// Largest exponent; the table runs over n = 1, 10, 100, ... up to nmax
    #[arg(long)]
    nmax: Option<u64>,
}

enum CliErr {
    Usage(String),
    Io(String),
    Domain(String),
}

impl From<LibError> for CliErr {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Io { .. } | LibError::Format { .. } => CliErr::Io(e.to_string()),
            other => CliErr::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliErr>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliErr::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(CliErr::Io(m)) => {
            eprintln!("I/O error: {m}");
            ExitCode::from(2)
        }
        Err(CliErr::Domain(m)) => {
            eprintln!("domain error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Maskit(a) => with_pool(&a.common, |env| {
            let r = raster_maskit(&env.window, env.nx, env.ny, &env.scan);
            env.write(&r)
        }),
        Command::Linear(a) => {
            let cfg = Config::load(&a.common)?;
            let beta = cfg.complex_opt(a.beta.as_deref(), "beta")?;
            let lambda = cfg.complex_opt(a.lambda.as_deref(), "lambda")?;
            let alpha = cfg.complex_opt(a.alpha.as_deref(), "alpha")?;
            let given = [beta.is_some(), lambda.is_some(), alpha.is_some()]
                .iter()
                .filter(|&&b| b)
                .count();
            if given != 1 {
                return Err(CliErr::Usage(
                    "linear needs exactly one of --beta, --lambda, --alpha".into(),
                ));
            }
            with_pool_cfg(&a.common, cfg, |env| {
                let (fixed, label) = if let Some(b) = beta {
                    (b, "beta")
                } else if let Some(l) = lambda {
                    (ptorus::beta_from_lambda(l), "beta")
                } else {
                    // fixed first trace; the slice machinery applies by the
                    // (alpha, beta) -> (beta, alpha) symmetry
                    (alpha.unwrap(), "alpha")
                };
                let mut r = raster_linear(fixed, &env.window, env.nx, env.ny, &env.scan)?;
                if label == "alpha" {
                    r.meta.parameters.remove("beta");
                    r.meta
                        .parameters
                        .insert("alpha".into(), serde_json::json!([fixed.re, fixed.im]));
                }
                if let Some(l) = lambda {
                    r.meta
                        .parameters
                        .insert("lambda".into(), serde_json::json!([l.re, l.im]));
                }
                env.write(&r)
            })
        }
        Command::Mzeta(a) => {
            let cfg = Config::load(&a.common)?;
            let zeta = cfg
                .complex_opt(a.zeta.as_deref(), "zeta")?
                .ok_or_else(|| CliErr::Usage("mzeta needs --zeta".into()))?;
            let kmax = cfg.u32_opt(a.kmax, "kmax")?.unwrap_or(16);
            with_pool_cfg(&a.common, cfg, |env| {
                let r = raster_m_zeta(zeta, kmax, &env.window, env.nx, env.ny, &env.scan)?;
                env.write(&r)
            })
        }
        Command::FnSlice(a) => {
            let cfg = Config::load(&a.common)?;
            let lambda = cfg
                .complex_opt(a.lambda.as_deref(), "lambda")?
                .ok_or_else(|| CliErr::Usage("fn needs --lambda".into()))?;
            let hat = a.hat || cfg.bool_or(false, "hat")?;
            with_pool_cfg(&a.common, cfg, |env| {
                let r = raster_fn(lambda, &env.window, env.nx, env.ny, &env.scan, hat)?;
                env.write(&r)
            })
        }
        Command::Converge(a) => {
            let cfg = Config::load(&a.common)?;
            let mode = cfg
                .string_opt(a.mode.as_deref(), "mode")?
                .ok_or_else(|| CliErr::Usage("converge needs --mode horo|tan".into()))?;
            let kmax = cfg.u32_opt(a.kmax, "kmax")?.unwrap_or(16);
            let spec = match mode.as_str() {
                "horo" => {
                    let theta = cfg
                        .f64_opt(a.theta, "theta")?
                        .ok_or_else(|| CliErr::Usage("--mode horo needs --theta".into()))?;
                    let scales_text = cfg
                        .string_opt(a.scales.as_deref(), "scales")?
                        .ok_or_else(|| CliErr::Usage("--mode horo needs --scales".into()))?;
                    let scales = parse_f64_list(&scales_text)
                        .map_err(|m| CliErr::Usage(format!("--scales: {m}")))?;
                    SequenceSpec::Horocyclic { theta, scales }
                }
                "tan" => {
                    let xi = cfg
                        .complex_opt(a.xi.as_deref(), "xi")?
                        .ok_or_else(|| CliErr::Usage("--mode tan needs --xi".into()))?;
                    let mstart = cfg
                        .u64_opt(a.mstart, "mstart")?
                        .ok_or_else(|| CliErr::Usage("--mode tan needs --mstart".into()))?;
                    let count = cfg
                        .usize_opt(a.count, "count")?
                        .ok_or_else(|| CliErr::Usage("--mode tan needs --count".into()))?;
                    if mstart == 0 || count == 0 {
                        return Err(CliErr::Usage("--mstart and --count must be positive".into()));
                    }
                    let schedule = (0..count).map(|k| mstart << k).collect();
                    SequenceSpec::Tangential { xi, schedule }
                }
                other => {
                    return Err(CliErr::Usage(format!(
                        "unknown mode {other:?}, expected horo or tan"
                    )))
                }
            };
            with_pool_cfg(&a.common, cfg, |env| {
                let report =
                    run_experiment(&spec, &env.window, env.nx, env.ny, &env.scan, kmax)?;
                let prefix = env.out.with_extension("");
                for (row, raster) in report.rows.iter().zip(&report.slices) {
                    let stem = format!("{}_n{}", prefix.display(), row.n);
                    write_raster(
                        raster,
                        Path::new(&format!("{stem}.pgm")),
                        Path::new(&format!("{stem}.json")),
                    )?;
                }
                let stem = format!("{}_limit", prefix.display());
                write_raster(
                    &report.limit,
                    Path::new(&format!("{stem}.pgm")),
                    Path::new(&format!("{stem}.json")),
                )?;
                let csv_path = env
                    .csv
                    .clone()
                    .unwrap_or_else(|| PathBuf::from(format!("{}.csv", prefix.display())));
                report.write_csv(&csv_path)?;
                println!("{}", report.csv_string().trim_end());
                Ok(())
            })
        }
        Command::Cyclic(a) => {
            let cfg = Config::load(&a.common)?;
            let xi = cfg
                .complex_opt(a.xi.as_deref(), "xi")?
                .ok_or_else(|| CliErr::Usage("cyclic needs --xi".into()))?;
            if xi.im < 0.0 {
                return Err(CliErr::Domain("cyclic needs Im xi >= 0".into()));
            }
            let nmax = cfg.u64_opt(a.nmax, "nmax")?.unwrap_or(10_000);
            let parabolic = UnitDetMatrix::translation(Complex64::new(2.0, 0.0));
            let mut lines = vec!["n,dist_b_to_parabolic,dist_power_to_limit".to_string()];
            let mut n = 1u64;
            while n <= nmax {
                let b = cyclic_b_n(xi, n);
                lines.push(format!(
                    "{},{},{}",
                    n,
                    psl_distance(&b, &parabolic),
                    cyclic_limit_check(xi, n)
                ));
                n = n.saturating_mul(10);
            }
            let text = lines.join("\n");
            println!("{text}");
            if let Some(csv) = resolve_csv(&a.common, &cfg)? {
                std::fs::write(&csv, format!("{text}\n"))
                    .map_err(|e| CliErr::Io(format!("{}: {e}", csv.display())))?;
            }
            Ok(())
        }
    }
}

fn resolve_csv(common: &CommonArgs, cfg: &Config) -> CliResult<Option<PathBuf>> {
    match &common.csv {
        Some(p) => Ok(Some(p.clone())),
        None => cfg.path_opt(None, "csv"),
    }
}

/// Resolved window, grid, scan settings and output paths.
struct Env {
    window: Window,
    nx: usize,
    ny: usize,
    scan: ScanParams,
    out: PathBuf,
    meta: PathBuf,
    csv: Option<PathBuf>,
}

impl Env {
    fn write(&self, r: &SliceRaster) -> CliResult<()> {
        write_raster(r, &self.out, &self.meta)?;
        let [member, likely, certified, error] = r.counts();
        println!(
            "{} {}x{} -> {} ({} member, {} likely, {} certified, {} error)",
            r.meta.kind,
            r.nx,
            r.ny,
            self.out.display(),
            member,
            likely,
            certified,
            error
        );
        Ok(())
    }
}

fn with_pool<F>(common: &CommonArgs, f: F) -> CliResult<()>
where
    F: FnOnce(&Env) -> CliResult<()> + Send,
{
    let cfg = Config::load(common)?;
    with_pool_cfg(common, cfg, f)
}

fn with_pool_cfg<F>(common: &CommonArgs, cfg: Config, f: F) -> CliResult<()>
where
    F: FnOnce(&Env) -> CliResult<()> + Send,
{
    let env = resolve_env(common, &cfg)?;
    match cfg.usize_opt(common.threads, "threads")? {
        Some(t) => {
            if t == 0 {
                return Err(CliErr::Usage("--threads must be positive".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliErr::Usage(format!("thread pool: {e}")))?;
            pool.install(|| f(&env))
        }
        None => f(&env),
    }
}

fn resolve_env(common: &CommonArgs, cfg: &Config) -> CliResult<Env> {
    let center = cfg
        .complex_opt(common.center.as_deref(), "center")?
        .unwrap_or(Complex64::new(0.0, 0.0));
    let width = cfg.f64_opt(common.width, "width")?.unwrap_or(8.0);
    let height = cfg.f64_opt(common.height, "height")?.unwrap_or(width);
    let nx = cfg.usize_opt(common.nx, "nx")?.unwrap_or(256);
    let ny = cfg.usize_opt(common.ny, "ny")?.unwrap_or(nx);
    if nx == 0 || ny == 0 {
        return Err(CliErr::Usage("--nx and --ny must be positive".into()));
    }
    let window = Window::new(center, width, height)?;
    let defaults = ScanParams::default();
    let scan = ScanParams {
        max_depth: cfg.u32_opt(common.depth, "depth")?.unwrap_or(defaults.max_depth),
        delta: cfg.f64_opt(common.delta, "delta")?.unwrap_or(defaults.delta),
        tau_real: cfg.f64_opt(common.tol, "tol")?.unwrap_or(defaults.tau_real),
        ..defaults
    };
    if !(scan.delta > 0.0 && scan.tau_real > 0.0) {
        return Err(CliErr::Usage("--delta and --tol must be positive".into()));
    }
    let out = cfg
        .path_opt(common.out.clone(), "out")?
        .unwrap_or_else(|| PathBuf::from("slice.pgm"));
    let meta = match cfg.path_opt(common.meta.clone(), "meta")? {
        Some(m) => m,
        None => out.with_extension("json"),
    };
    let csv = cfg.path_opt(common.csv.clone(), "csv")?;
    Ok(Env {
        window,
        nx,
        ny,
        scan,
        out,
        meta,
        csv,
    })
}

/// The optional JSON config: a flat object keyed by long flag names.
struct Config(serde_json::Map<String, Value>);

impl Config {
    fn load(common: &CommonArgs) -> CliResult<Self> {
        let Some(path) = &common.config else {
            return Ok(Config(serde_json::Map::new()));
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliErr::Io(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliErr::Usage(format!("{}: {e}", path.display())))?;
        match value {
            Value::Object(map) => Ok(Config(map)),
            _ => Err(CliErr::Usage(format!(
                "{}: config must be a JSON object",
                path.display()
            ))),
        }
    }

    fn complex_opt(&self, flag: Option<&str>, key: &str) -> CliResult<Option<Complex64>> {
        if let Some(text) = flag {
            return parse_complex(text)
                .map(Some)
                .map_err(|m| CliErr::Usage(format!("--{key}: {m}")));
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => parse_complex(s)
                .map(Some)
                .map_err(|m| CliErr::Usage(format!("config {key}: {m}"))),
            Some(Value::Array(a)) if a.len() == 2 => {
                let re = a[0].as_f64();
                let im = a[1].as_f64();
                match (re, im) {
                    (Some(re), Some(im)) => Ok(Some(Complex64::new(re, im))),
                    _ => Err(CliErr::Usage(format!("config {key}: expected [re, im]"))),
                }
            }
            Some(other) => Err(CliErr::Usage(format!(
                "config {key}: expected \"RE,IM\" or [re, im], got {other}"
            ))),
        }
    }

    fn f64_opt(&self, flag: Option<f64>, key: &str) -> CliResult<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| CliErr::Usage(format!("config {key}: expected a number"))),
        }
    }

    fn u32_opt(&self, flag: Option<u32>, key: &str) -> CliResult<Option<u32>> {
        Ok(self.u64_opt(flag.map(u64::from), key)?.map(|v| v as u32))
    }

    fn usize_opt(&self, flag: Option<usize>, key: &str) -> CliResult<Option<usize>> {
        Ok(self
            .u64_opt(flag.map(|v| v as u64), key)?
            .map(|v| v as usize))
    }

    fn u64_opt(&self, flag: Option<u64>, key: &str) -> CliResult<Option<u64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| CliErr::Usage(format!("config {key}: expected an integer"))),
        }
    }

    fn bool_or(&self, flag: bool, key: &str) -> CliResult<bool> {
        if flag {
            return Ok(true);
        }
        match self.0.get(key) {
            None => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(CliErr::Usage(format!("config {key}: expected a boolean"))),
        }
    }

    fn string_opt(&self, flag: Option<&str>, key: &str) -> CliResult<Option<String>> {
        if let Some(s) = flag {
            return Ok(Some(s.to_string()));
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(CliErr::Usage(format!("config {key}: expected a string"))),
        }
    }

    fn path_opt(&self, flag: Option<PathBuf>, key: &str) -> CliResult<Option<PathBuf>> {
        if flag.is_some() {
            return Ok(flag);
        }
        Ok(self.string_opt(None, key)?.map(PathBuf::from))
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"RE,IM\", got {text:?}"));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad real part {:?}", parts[0]))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad imaginary part {:?}", parts[1]))?;
    Ok(Complex64::new(re, im))
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {s:?}"))
        })
        .collect()
}
