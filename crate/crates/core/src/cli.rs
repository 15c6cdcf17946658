//! The `qpkit` command line. Reports go to stdout (or `--out`) as pretty
//! JSON or CSV; diagnostics go to stderr.
//!
//! Exit status: 0 on success, 1 on a negative verdict or numeric failure,
//! 2 on a usage or input error.

use std::fmt::Display;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    derivative_series_probe, hausdorff_young_check, parent_regularity_verdict, RegularityMode,
};
use crate::error::QpError;
use crate::independence::ergodicity_report;
use crate::meyer::{
    enumerate_band, golden_comparability, meyer_density_check, pathological_parent, BandSet, Window,
};
use crate::number_field::FrequencyMatrix;
use crate::qp::{
    besicovitch_norm, default_grid, lift, project, quadrature_grid, sup_norm, wiener_inverse_with,
    ParentSpectrum, TrigPolynomial, WienerInverse, WienerOptions,
};
use crate::selftest;
use crate::torus::{
    equidistribution_table, equidistribution_table_discrete, orbit_segment, TorusPoint,
};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "QPKIT_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "qpkit",
    version,
    about = "Quasi-periodic functions and their periodic parents"
)]
pub struct RunConfig {
    /// Output format; `weyl` and `orbit` default to csv, everything else to json.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Holder,
    Sobolev,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unique ergodicity of the ℝᵈ- and ℤᵈ-actions generated by a frequency matrix.
    Ergodicity {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Weyl averages of a parent along an orbit, against the a priori decay bound.
    Weyl {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        parent: PathBuf,
        /// Averaging horizons, comma separated.
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// Starting point on the torus (default: origin).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Option<Vec<f64>>,
        /// Average over the lattice ℤᵈ ∩ [−T, T]ᵈ instead of the cube.
        #[arg(long)]
        discrete: bool,
    },
    /// Samples of the orbit line `x ↦ y + Pᵀx mod 1` (d = 1).
    Orbit {
        #[arg(long)]
        matrix: PathBuf,
        /// Parameter range `from:to`.
        #[arg(long, default_value = "0:40", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Option<Vec<f64>>,
    },
    /// Periodic parent of a quasi-periodic polynomial.
    Lift {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Quasi-periodic restriction of a parent along a frequency matrix.
    Project {
        #[arg(long)]
        parent: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Besicovitch norm `‖f‖_q`; `--q inf` gives a certified sup-norm interval.
    Norm {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Inverse of a nonvanishing polynomial in the Wiener algebra.
    Invert {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
        /// Coefficients below this modulus are dropped.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10)]
        verify_factor: usize,
        #[arg(long)]
        max_residual: Option<f64>,
        /// Also write the inverse polynomial to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Hausdorff-Young inequality for `f`.
    Hy {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Smoothness class guaranteed for the parent.
    Regularity {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
    },
    /// Golden Meyer set `{m + nφ : m + nφ′ ∈ W}` truncated to a disc.
    Meyer {
        #[arg(long, default_value = "-1/2:1/2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 1000.0)]
        radius: f64,
        /// Write the points as CSV (m, n, physical, internal).
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long, default_value_t = 10.0)]
        density_length: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Certificate series of the bounded-spectrum example whose parent is not smooth.
    Pathology {
        #[arg(long, default_value = "-1/2:1/2", allow_hyphen_values = true)]
        window: String,
        /// Largest truncation radius.
        #[arg(long, default_value_t = 10000.0)]
        radius: f64,
        /// Number of radii, one per decade, ending at `--radius`.
        #[arg(long, default_value_t = 3)]
        decades: u32,
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        probe_orders: Vec<u32>,
    },
    /// Seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<QpError> for CliError {
    fn from(e: QpError) -> Self {
        match e {
            QpError::Parse(_)
            | QpError::InvalidRadicand(_)
            | QpError::MixedRadicals { .. }
            | QpError::DimensionMismatch { .. }
            | QpError::GridTooSmall { .. }
            | QpError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A finished report plus the verdict it carries.
pub struct Outcome {
    pub json: Value,
    pub csv: Option<Csv>,
    /// `Some(reason)` when the verdict is negative.
    pub negative: Option<String>,
    default: Format,
}

impl Outcome {
    fn json(value: impl Serialize) -> Self {
        Outcome {
            json: to_value(value),
            csv: None,
            negative: None,
            default: Format::Json,
        }
    }

    fn with_csv(mut self, csv: Csv) -> Self {
        self.csv = Some(csv);
        self
    }

    fn csv_by_default(mut self) -> Self {
        self.default = Format::Csv;
        self
    }

    fn negative_if(mut self, cond: bool, reason: impl FnOnce() -> String) -> Self {
        if cond {
            self.negative = Some(reason());
        }
        self
    }

    /// Renders in the requested format, falling back to the command default.
    pub fn render(&self, format: Option<Format>) -> CliResult<String> {
        match format.unwrap_or(self.default) {
            Format::Json => {
                Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n")
            }
            Format::Csv => self.csv.as_ref().map(Csv::render).ok_or_else(|| {
                CliError::Usage("this command has no csv output; use --format json".into())
            }),
        }
    }
}

pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn new(header: &[&str]) -> Self {
        Csv {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

fn cell(x: impl Display) -> String {
    x.to_string()
}

fn opt_cell<T: Display>(x: Option<T>) -> String {
    x.map(cell).unwrap_or_default()
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Reads JSON from a file, or stdin for `-`, reporting syntax errors by line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg
            .rsplit_once(" at line ")
            .map_or(msg.as_str(), |(m, _)| m);
        CliError::Usage(format!(
            "{}:{}:{}: {msg}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn parse_range(s: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Usage(format!("range {s:?} is not of the form from:to"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let from: f64 = a.trim().parse().map_err(|_| bad())?;
    let to: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(bad());
    }
    Ok((from, to))
}

fn start_point(y: Option<Vec<f64>>, n: usize) -> CliResult<TorusPoint> {
    match y {
        None => Ok(TorusPoint::origin(n)),
        Some(y) if y.len() == n => Ok(TorusPoint::new(y)?),
        Some(y) => Err(QpError::DimensionMismatch {
            expected: n,
            got: y.len(),
        }
        .into()),
    }
}

fn grid_or_default(grid: Option<usize>, max_index: i64) -> usize {
    grid.unwrap_or_else(|| default_grid(max_index))
}

fn band(window: &str, radius: f64) -> CliResult<BandSet> {
    Ok(enumerate_band(&Window::parse(window)?, radius)?)
}

/// Runs one subcommand and returns its report.
pub fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Ergodicity { matrix } => {
            let p: FrequencyMatrix = read_json(&matrix)?;
            Ok(Outcome::json(ergodicity_report(&p)))
        }
        Command::Weyl {
            matrix,
            parent,
            t,
            y,
            discrete,
        } => {
            let p: FrequencyMatrix = read_json(&matrix)?;
            let parent: ParentSpectrum = read_json(&parent)?;
            let y = start_point(y, p.n())?;
            let rows = if discrete {
                let ts = t
                    .iter()
                    .map(|&x| {
                        (x >= 1.0 && x.fract() == 0.0 && x <= u64::MAX as f64)
                            .then_some(x as u64)
                            .ok_or_else(|| {
                                CliError::Usage(format!(
                                    "discrete averages need integer T >= 1, got {x}"
                                ))
                            })
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                equidistribution_table_discrete(&parent, &p, &y, &ts)?
            } else {
                equidistribution_table(&parent, &p, &y, &t)?
            };
            let mut csv = Csv::new(&["T", "re", "im", "abs_error", "bound"]);
            for r in &rows {
                csv.push(vec![
                    cell(r.t),
                    cell(r.re),
                    cell(r.im),
                    cell(r.abs_error),
                    cell(r.bound),
                ]);
            }
            let violated = rows
                .iter()
                .find(|r| r.abs_error > r.bound + 1e-12)
                .map(|r| r.t);
            Ok(Outcome::json(&rows)
                .with_csv(csv)
                .csv_by_default()
                .negative_if(violated.is_some(), || {
                    format!("decay bound exceeded at T = {}", violated.unwrap())
                }))
        }
        Command::Orbit {
            matrix,
            range,
            samples,
            y,
        } => {
            let p: FrequencyMatrix = read_json(&matrix)?;
            let (from, to) = parse_range(&range)?;
            let y = start_point(y, p.n())?;
            let pts = orbit_segment(&p, &y, from, to, samples)?;
            let step = (to - from) / (samples - 1) as f64;
            let mut header = vec!["x".to_string(), "segment".to_string()];
            header.extend((1..=p.n()).map(|j| format!("y{j}")));
            let mut csv = Csv {
                header,
                rows: Vec::with_capacity(pts.len()),
            };
            let mut json_rows = Vec::with_capacity(pts.len());
            let mut segment = 0usize;
            for (i, pt) in pts.iter().enumerate() {
                // A jump of more than half a period in any coordinate is a wrap.
                if i > 0
                    && pt
                        .coords()
                        .iter()
                        .zip(pts[i - 1].coords())
                        .any(|(a, b)| (a - b).abs() > 0.5)
                {
                    segment += 1;
                }
                let x = if i == samples - 1 {
                    to
                } else {
                    from + step * i as f64
                };
                let mut row = vec![cell(x), cell(segment)];
                row.extend(pt.coords().iter().map(|c| cell(c)));
                csv.push(row);
                json_rows.push(json!({ "x": x, "segment": segment, "y": pt.coords() }));
            }
            Ok(Outcome::json(json_rows).with_csv(csv).csv_by_default())
        }
        Command::Lift { poly } => {
            let f: TrigPolynomial = read_json(&poly)?;
            Ok(Outcome::json(lift(&f)?))
        }
        Command::Project { parent, matrix } => {
            let parent: ParentSpectrum = read_json(&parent)?;
            let p: FrequencyMatrix = read_json(&matrix)?;
            Ok(Outcome::json(project(&parent, &p)?))
        }
        Command::Norm { poly, q, grid } => {
            let f: TrigPolynomial = read_json(&poly)?;
            if q.eq_ignore_ascii_case("inf") {
                let grid = grid_or_default(grid, f.max_index());
                let s = sup_norm(&lift(&f)?, grid)?;
                return Ok(Outcome::json(json!({
                    "q": "inf",
                    "grid": grid,
                    "lower": s.lower,
                    "upper": s.upper,
                    "argmax": s.argmax,
                })));
            }
            let qv: f64 = q
                .parse()
                .map_err(|_| CliError::Usage(format!("--q expects a number or inf, got {q:?}")))?;
            let grid = grid.unwrap_or_else(|| quadrature_grid(f.max_index(), f.matrix().n()));
            let exact = qv.fract() == 0.0 && qv >= 2.0 && qv <= 64.0 && (qv as u32) % 2 == 0;
            let norm = besicovitch_norm(&f, qv, grid)?;
            Ok(Outcome::json(json!({
                "q": qv,
                "method": if exact { "exact" } else { "grid" },
                "grid": if exact { None } else { Some(grid) },
                "norm": norm,
            })))
        }
        Command::Invert {
            poly,
            grid,
            tol,
            verify_factor,
            max_residual,
            emit,
        } => {
            let f: TrigPolynomial = read_json(&poly)?;
            let opts = WienerOptions {
                verify_factor,
                max_residual,
            };
            let inv = match grid {
                Some(g) => wiener_inverse_with(&f, g, tol, &opts)?,
                None => adaptive_inverse(&f, tol, &opts)?,
            };
            if let Some(path) = emit {
                write_file(
                    &path,
                    &(serde_json::to_string_pretty(&inv.inverse).expect("serializable") + "\n"),
                )?;
            }
            Ok(Outcome::json(&inv))
        }
        Command::Hy { q, poly, grid } => {
            let f: TrigPolynomial = read_json(&poly)?;
            let grid = grid.unwrap_or_else(|| quadrature_grid(f.max_index(), f.matrix().n()));
            let report = hausdorff_young_check(&f, q, grid)?;
            let holds = report.holds;
            Ok(Outcome::json(&report)
                .negative_if(!holds, || format!("Hausdorff-Young violated at q = {q}")))
        }
        Command::Regularity {
            mode,
            poly,
            r,
            eta,
            s,
            q,
        } => {
            let f: TrigPolynomial = read_json(&poly)?;
            let need =
                |name: &str| CliError::Usage(format!("--mode {} needs --{name}", mode_name(mode)));
            let mode = match mode {
                Mode::Holder => RegularityMode::Holder {
                    r: r.ok_or_else(|| need("r"))?,
                    eta: eta.ok_or_else(|| need("eta"))?,
                },
                Mode::Sobolev => RegularityMode::Sobolev {
                    s: s.ok_or_else(|| need("s"))?,
                    q: q.ok_or_else(|| need("q"))?,
                },
            };
            let verdict = parent_regularity_verdict(&f, mode);
            let failed = !verdict.failures.is_empty();
            Ok(Outcome::json(&verdict)
                .negative_if(failed, || "regularity hypotheses not met".into()))
        }
        Command::Meyer {
            window,
            radius,
            emit,
            density_length,
            trials,
        } => {
            let band = band(&window, radius)?;
            let mut csv = Csv::new(&["m", "n", "physical", "internal"]);
            for p in &band.points {
                csv.push(vec![
                    cell(p.m),
                    cell(p.n),
                    cell(p.physical),
                    cell(p.internal),
                ]);
            }
            if let Some(path) = emit {
                write_file(&path, &csv.render())?;
            }
            let density = match meyer_density_check(&band, density_length, trials) {
                Ok(d) => Some(d),
                Err(QpError::InsufficientTruncation { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let comparability = golden_comparability(&band).ok();
            Ok(Outcome::json(json!({
                "window": band.window.to_string(),
                "radius": radius,
                "points": band.len(),
                "covered_half_width": band.covered_half_width(),
                "density": density,
                "comparability": comparability,
            }))
            .with_csv(csv))
        }
        Command::Pathology {
            window,
            radius,
            decades,
            probe_orders,
        } => {
            if decades == 0 {
                return Err(CliError::Usage("--decades must be at least 1".into()));
            }
            let band = band(&window, radius)?;
            let radii: Vec<f64> = (0..decades)
                .rev()
                .map(|i| radius / 10f64.powi(i as i32))
                .collect();
            let parent = pathological_parent(&band);
            let probes: Vec<_> = probe_orders
                .iter()
                .map(|&m| derivative_series_probe(&parent, m, &radii))
                .collect();
            let comparability: Vec<_> = radii
                .iter()
                .map(|&r| golden_comparability(&band.restricted(r)).ok())
                .collect();
            let mut csv = Csv::new(&[
                "order",
                "radius",
                "partial_sum",
                "terms",
                "relative_increment",
            ]);
            for p in &probes {
                for r in &p.rows {
                    csv.push(vec![
                        cell(p.order),
                        cell(r.radius),
                        cell(r.partial_sum),
                        cell(r.terms),
                        opt_cell(r.relative_increment),
                    ]);
                }
            }
            let stalled = probes
                .iter()
                .find(|p| p.order == 0 && !p.convergent)
                .is_some();
            Ok(Outcome::json(json!({
                "window": band.window.to_string(),
                "radii": radii,
                "points": band.len(),
                "probes": probes,
                "comparability": comparability,
            }))
            .with_csv(csv)
            .negative_if(stalled, || {
                "order-0 certificate series did not settle".into()
            }))
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            let ok = report.all_passed;
            Ok(Outcome::json(&report).negative_if(!ok, || "self-test suites failed".into()))
        }
    }
}

/// Doubles the grid from the default until the residual is acceptable.
fn adaptive_inverse(
    f: &TrigPolynomial,
    tol: f64,
    opts: &WienerOptions,
) -> CliResult<WienerInverse> {
    let n = f.matrix().n() as i32;
    let mut grid = default_grid(f.max_index());
    loop {
        match wiener_inverse_with(f, grid, tol, opts) {
            Err(QpError::Convergence(_)) if ((2 * grid) as f64).powi(n) <= MAX_ADAPTIVE_POINTS => {
                grid *= 2
            }
            r => return Ok(r?),
        }
    }
}

const MAX_ADAPTIVE_POINTS: f64 = (1u64 << 22) as f64;

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Holder => "holder",
        Mode::Sobolev => "sobolev",
    }
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    fs::write(path, body).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_ENV}: {e}")))
}

/// Parses `args`, runs the command and writes its report.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(config) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(reason)) => {
            eprintln!("qpkit: {reason}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("qpkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Writes the report; `Ok(Some(reason))` carries a negative verdict.
fn execute(config: RunConfig) -> CliResult<Option<String>> {
    configure_threads()?;
    let format = config.format;
    let outcome = dispatch(config.command)?;
    let body = outcome.render(format)?;
    match &config.out {
        Some(path) => write_file(path, &body)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Failure(format!("stdout: {e}")))?;
        }
    }
    Ok(outcome.negative)
}
