//! The `majorlens` command line.
//!
//! Exit status: 0 when nothing certified entanglement, 2 when some criterion did,
//! 1 on any usage or validation error (reported as one line on stderr).

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use crate::bipartite::{BipartiteDensity, DensityJson, Side};
use crate::criteria::{self, jittered_alphas, DetectionVerdict, QGrid, Witness, ALPHA_JITTER, DEFAULT_TS, DETECTION_TOL};
use crate::entropy::{conditional, EntropicFamily};
use crate::error::{Error, Result};
use crate::families::{self, Exchange, FamilySpec, SeparabilityWitness};
use crate::scan::{self, AlphaChoice, Criterion, CurveAxis, GridSpec, RaySpec, ScanOptions, ThresholdResult};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CERTIFIED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "majorlens", version, about = "Spectral entanglement criteria for bipartite qudit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every criterion on one state and print a verdict table.
    Analyze(AnalyzeArgs),
    /// Classify a parameter grid and write one CSV row per cell.
    Scan(ScanArgs),
    /// Bisect the onset of a criterion along a ray.
    Threshold(ThresholdArgs),
    /// Conditional entropy of one family point as q, t or alpha varies.
    Curve(CurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// Family point, e.g. `--family d=3 x=0.4,0.4`.
    #[arg(long, num_args = 2, value_names = ["d=D", "x=X1,X2,.."])]
    family: Option<Vec<String>>,
    /// Use the symmetric states |0i+> instead of |0i->.
    #[arg(long)]
    symmetric: bool,
}

#[derive(Debug, Args)]
struct DetectorArgs {
    #[arg(long, default_value = "A")]
    side: String,
    #[arg(long, default_value_t = QGrid::default().qmin)]
    qmin: f64,
    #[arg(long, default_value_t = QGrid::default().qmax)]
    qmax: f64,
    #[arg(long, default_value_t = QGrid::default().points)]
    qpoints: usize,
    /// Comma-separated α values; default is p_j^A ± 1e-3 for each violated j.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Comma-separated t schedule for the peaked search.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_TS.to_vec())]
    ts: Vec<f64>,
}

impl DetectorArgs {
    fn options(&self) -> Result<ScanOptions> {
        let qgrid = QGrid {
            qmin: self.qmin,
            qmax: self.qmax,
            points: self.qpoints,
        };
        qgrid.validate()?;
        if self.ts.is_empty() || self.ts.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::InvalidParameter("--ts needs positive finite values".into()));
        }
        if let Some(a) = &self.alphas {
            if a.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::InvalidParameter("--alphas must lie in [0, 1]".into()));
            }
        }
        Ok(ScanOptions {
            side: self.side.parse()?,
            qgrid,
            alphas: match &self.alphas {
                Some(a) => AlphaChoice::Fixed(a.clone()),
                None => AlphaChoice::Recommended { jitter: ALPHA_JITTER },
            },
            ts: self.ts.clone(),
            ..ScanOptions::default()
        })
    }
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Density matrix in the JSON exchange format.
    #[arg(long, conflicts_with = "family")]
    density: Option<PathBuf>,
    /// Also write the analysed density as JSON.
    #[arg(long)]
    save_density: Option<PathBuf>,
    #[command(flatten)]
    detect: DetectorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridKind {
    /// n = 2 over the whole positivity triangle.
    Triangle,
    /// n = 5, x_1 = .. = x_4 = x against x_5.
    Section,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, value_enum, default_value_t = GridKind::Triangle)]
    grid: GridKind,
    /// Cells per axis.
    #[arg(long, default_value_t = 101)]
    steps: usize,
    #[arg(long)]
    symmetric: bool,
    /// Diagonalize every point instead of using closed forms.
    #[arg(long)]
    numeric: bool,
    #[arg(long)]
    no_tsallis: bool,
    #[arg(long)]
    no_peaked: bool,
    /// Print area fractions as JSON instead of per-cell records.
    #[arg(long)]
    summary: bool,
    #[command(flatten)]
    detect: DetectorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RayKind {
    /// x_1 = .. = x_n = s.
    Diag,
    /// x_i = s, the rest zero.
    Axis,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = RayKind::Diag)]
    ray: RayKind,
    /// 1-based component for `--ray axis`.
    #[arg(long, default_value_t = 1)]
    index: usize,
    /// Explicit direction, overriding `--ray`, e.g. `1,1,1,1,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    direction: Option<Vec<f64>>,
    /// Far end of the ray; defaults to the edge of the positivity region.
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long)]
    criterion: String,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long)]
    symmetric: bool,
    #[command(flatten)]
    detect: DetectorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    axis: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Space the parameter logarithmically.
    #[arg(long)]
    log: bool,
    /// Fixed α when varying t.
    #[arg(long, default_value_t = 0.28)]
    alpha: f64,
    /// Fixed t when varying α.
    #[arg(long, default_value_t = 1e3)]
    t: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `d=3 x=0.4,0.4` (in either order).
pub fn parse_family(parts: &[String], symmetric: bool) -> Result<FamilySpec> {
    let (mut d, mut x) = (None, None);
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value in --family, got {p:?}")))?;
        match k {
            "d" => {
                d = Some(
                    v.parse::<usize>()
                        .map_err(|_| Error::InvalidParameter(format!("bad d {v:?}")))?,
                )
            }
            "x" => {
                x = Some(
                    v.split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::InvalidParameter(format!("bad x list {v:?}")))?,
                )
            }
            other => return Err(Error::InvalidParameter(format!("unknown --family key {other:?}"))),
        }
    }
    let (d, x) = match (d, x) {
        (Some(d), Some(x)) => (d, x),
        _ => return Err(Error::InvalidParameter("--family needs d=.. and x=..".into())),
    };
    let exchange = if symmetric { Exchange::Symmetric } else { Exchange::Antisymmetric };
    Ok(FamilySpec::new(d, x)?.with_exchange(exchange))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("MAJORLENS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process fails harmlessly
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return EXIT_CLEAN;
            }
            let msg = e.to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("majorlens: {}", line.trim_start_matches("error: "));
            return EXIT_ERROR;
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Scan(a) => scan_cmd(a),
        Command::Threshold(a) => threshold(a),
        Command::Curve(a) => curve(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("majorlens: {}", e.to_string().replace('\n', " "));
            EXIT_ERROR
        }
    }
}

/// One row of the verdict table.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRow {
    pub criterion: String,
    pub value: f64,
    pub certified: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub dims: [usize; 2],
    pub side: Side,
    pub spectrum: Vec<f64>,
    pub reduced_spectrum: Vec<f64>,
    pub rows: Vec<VerdictRow>,
    pub certified: bool,
    /// Present for family input.
    pub family: Option<FamilyExtras>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyExtras {
    pub spec: FamilySpec,
    pub sigma: f64,
    pub predicted_violations: Vec<usize>,
    pub separability_witness: Option<SeparabilityWitness>,
}

fn witness_text(v: &DetectionVerdict) -> String {
    match v.witness.or(v.best) {
        Some(Witness::Tsallis { q }) => format!("q={q:.6}"),
        Some(Witness::Peaked { alpha, t }) => format!("alpha={alpha:.6} t={t}"),
        None => "no parameters tried".into(),
    }
}

fn indices(v: &[usize]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Evaluates every criterion on a dense density.
pub fn analyze_density(rho: &BipartiteDensity, opts: &ScanOptions) -> Result<Analysis> {
    let side = opts.side;
    let spec = rho.spectrum();
    let reduced = rho.reduced_spectrum(side);
    let mut rows = Vec::new();

    let pt = criteria::peres_check(rho);
    rows.push(VerdictRow {
        criterion: "peres".into(),
        value: pt,
        certified: pt < -DETECTION_TOL,
        detail: "min eigenvalue of partial transpose".into(),
    });

    let (ra, rb) = criteria::disorder_check(rho);
    for r in [&ra, &rb] {
        let gap = r
            .cumsum_rho
            .iter()
            .zip(&r.cumsum_reduced)
            .map(|(s, sa)| sa - s)
            .fold(f64::INFINITY, f64::min);
        rows.push(VerdictRow {
            criterion: format!("disorder_{}", r.side.label()),
            value: gap,
            certified: r.is_violated(),
            detail: format!("violated i = {}", indices(&r.violated_indices)),
        });
    }
    let report = if side == Side::A { &ra } else { &rb };

    let vn = conditional(&EntropicFamily::VonNeumann, rho, side)?;
    rows.push(VerdictRow {
        criterion: "von_neumann".into(),
        value: vn.difference,
        certified: vn.difference < -DETECTION_TOL,
        detail: "S(rho) - S(rho_side)".into(),
    });

    if opts.tsallis {
        let v = criteria::tsallis_sweep(rho, side, &opts.qgrid)?;
        rows.push(VerdictRow {
            criterion: "tsallis".into(),
            value: v.margin,
            certified: v.detected,
            detail: format!(
                "{} over q in [{}, {}]",
                witness_text(&v),
                opts.qgrid.qmin,
                opts.qgrid.qmax
            ),
        });
    }
    if opts.peaked {
        let alphas = match &opts.alphas {
            AlphaChoice::Fixed(a) => a.clone(),
            AlphaChoice::Recommended { jitter } => {
                let js: Vec<usize> = if report.is_violated() {
                    report.violated_indices.clone()
                } else {
                    (1..=reduced.len()).collect()
                };
                let centers: Vec<f64> = js.iter().map(|&j| reduced.values()[j - 1]).collect();
                jittered_alphas(&centers, *jitter)
            }
        };
        let v = criteria::peaked_search(rho, side, &alphas, &opts.ts)?;
        rows.push(VerdictRow {
            criterion: "peaked".into(),
            value: v.margin,
            certified: v.detected,
            detail: witness_text(&v),
        });
    }
    let certified = rows.iter().any(|r| r.certified);
    Ok(Analysis {
        dims: [rho.dims().0, rho.dims().1],
        side,
        spectrum: spec.values().to_vec(),
        reduced_spectrum: reduced.values().to_vec(),
        rows,
        certified,
        family: None,
    })
}

fn write_table<W: Write + ?Sized>(out: &mut W, a: &Analysis) -> Result<()> {
    writeln!(out, "dims {}x{}  side {}", a.dims[0], a.dims[1], a.side.label())?;
    writeln!(out, "{:<12} {:>22} {:>10}  detail", "criterion", "value", "certified")?;
    for r in &a.rows {
        writeln!(out, "{:<12} {:>22.12e} {:>10}  {}", r.criterion, r.value, r.certified, r.detail)?;
    }
    writeln!(
        out,
        "verdict: {}",
        if a.certified { "entangled (certified)" } else { "no criterion certifies entanglement" }
    )?;
    if let Some(f) = &a.family {
        writeln!(out)?;
        writeln!(out, "family d={} x={:?} exchange={:?}", f.spec.d, f.spec.x, f.spec.exchange)?;
        writeln!(out, "sigma (closed form) = {:.12e}", f.sigma)?;
        writeln!(out, "predicted violations: {}", indices(&f.predicted_violations))?;
        match &f.separability_witness {
            Some(w) => {
                writeln!(out, "separability witness: weights q_i = {:?}", w.weights)?;
                writeln!(out, "  block slacks 4 q_i y^2 - x_i^2 = {:?}", w.slacks)?;
            }
            None => writeln!(out, "separability witness: none (sigma < 0)")?,
        }
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<i32> {
    let opts = args.detect.options()?;
    let (rho, extras) = match (&args.family.family, &args.density) {
        (Some(parts), None) => {
            let spec = parse_family(parts, args.family.symmetric)?;
            let rho = families::build(&spec)?;
            let extras = FamilyExtras {
                sigma: families::sigma_min_pt(&spec),
                predicted_violations: families::violation_predictor(&spec)?,
                separability_witness: families::separability_witness(&spec),
                spec,
            };
            (rho, Some(extras))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let json: DensityJson = serde_json::from_str(&text)?;
            (BipartiteDensity::from_json(&json)?, None)
        }
        _ => return Err(Error::InvalidParameter("give exactly one of --family or --density".into())),
    };
    if let Some(p) = &args.save_density {
        let mut f = BufWriter::new(File::create(p)?);
        serde_json::to_writer(&mut f, &rho.to_json())?;
        f.flush()?;
    }
    let mut analysis = analyze_density(&rho, &opts)?;
    analysis.family = extras;
    let mut out = output(&args.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &analysis)?;
            writeln!(out)?;
        }
        Format::Text | Format::Csv => write_table(&mut out, &analysis)?,
    }
    out.flush()?;
    Ok(if analysis.certified { EXIT_CERTIFIED } else { EXIT_CLEAN })
}

fn scan_cmd(args: ScanArgs) -> Result<i32> {
    let mut opts = args.detect.options()?;
    opts.numeric = args.numeric;
    opts.tsallis = !args.no_tsallis;
    opts.peaked = !args.no_peaked;
    let mut grid = match args.grid {
        GridKind::Triangle => GridSpec::triangle(args.d, args.steps),
        GridKind::Section => {
            if args.d < 6 {
                return Err(Error::InvalidParameter("the n = 5 section needs d >= 6".into()));
            }
            GridSpec::five_component_section(args.d, args.steps, args.steps)
        }
    };
    if args.symmetric {
        grid.exchange = Exchange::Symmetric;
    }
    let mut out = output(&args.out)?;
    if args.summary {
        let summary = scan::area_fractions(&grid)?;
        serde_json::to_writer_pretty(&mut out, &summary)?;
        writeln!(out)?;
        out.flush()?;
        return Ok(if summary.entangled.successes > 0 { EXIT_CERTIFIED } else { EXIT_CLEAN });
    }
    let records = scan::grid_scan(&grid, &opts)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut out, &records)?;
            writeln!(out)?;
        }
        Format::Csv | Format::Text => {
            let mut header = vec![format!("majorlens {} scan", env!("CARGO_PKG_VERSION")), format!("grid {}", grid.describe())];
            header.extend(opts.describe());
            scan::write_csv(&mut out, &header, &records)?;
        }
    }
    out.flush()?;
    let certified = records.iter().any(|r| r.entangled());
    Ok(if certified { EXIT_CERTIFIED } else { EXIT_CLEAN })
}

#[derive(Debug, Serialize)]
struct ThresholdReport {
    criterion: Criterion,
    ray: RaySpec,
    tol: f64,
    result: ThresholdResult,
    /// Tsallis only: the minimizing q just above the onset.
    critical_q: Option<f64>,
}

/// Minimizing q of the Tsallis sweep at ray parameter `s`.
pub fn critical_q(ray: &RaySpec, s: f64, opts: &ScanOptions) -> Result<Option<f64>> {
    let spec = ray.spec_at(s)?;
    let r = scan::classify_point(&spec, &ScanOptions { peaked: false, tsallis: true, ..opts.clone() })?;
    Ok(match r.tsallis.and_then(|v| v.best) {
        Some(Witness::Tsallis { q }) => Some(q),
        _ => None,
    })
}

fn threshold(args: ThresholdArgs) -> Result<i32> {
    let opts = args.detect.options()?;
    let criterion: Criterion = args.criterion.parse()?;
    let mut ray = match (&args.direction, args.ray) {
        (Some(dir), _) => {
            if dir.len() != args.n {
                return Err(Error::DimensionMismatch {
                    expected: args.n,
                    found: dir.len(),
                });
            }
            RaySpec::new(args.d, vec![0.0; args.n], dir.clone(), 0.0)?
        }
        (None, RayKind::Diag) => RaySpec::diagonal(args.d, args.n)?,
        (None, RayKind::Axis) => {
            if args.index == 0 {
                return Err(Error::InvalidParameter("--index is 1-based".into()));
            }
            RaySpec::axis(args.d, args.n, args.index - 1)?
        }
    };
    if args.symmetric {
        ray.exchange = Exchange::Symmetric;
    }
    if let Some(hi) = args.hi {
        ray = ray.with_hi(hi);
    }
    let result = scan::bisect_threshold(&ray, criterion, args.tol, &opts)?;
    let critical_q = match (&result, criterion) {
        (ThresholdResult::Found { lo, hi, fires_above, .. }, Criterion::Tsallis) => {
            critical_q(&ray, if *fires_above { *hi } else { *lo }, &opts)?
        }
        _ => None,
    };
    let report = ThresholdReport {
        criterion,
        ray,
        tol: args.tol,
        result,
        critical_q,
    };
    let mut out = output(&args.out)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        Format::Text | Format::Csv => match &report.result {
            ThresholdResult::Found { value, lo, hi, fires_above } => {
                writeln!(out, "threshold {value:.7} bracket [{lo:.9}, {hi:.9}] fires_above={fires_above}")?;
                if let Some(q) = report.critical_q {
                    writeln!(out, "critical q {q:.5}")?;
                }
            }
            ThresholdResult::NoThreshold => writeln!(out, "no threshold on this ray")?,
        },
    }
    out.flush()?;
    Ok(EXIT_CLEAN)
}

fn curve(args: CurveArgs) -> Result<i32> {
    let parts = args
        .family
        .family
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("curve needs --family".into()))?;
    let spec = parse_family(parts, args.family.symmetric)?;
    let axis: CurveAxis = args.axis.parse()?;
    if args.points < 2 || !(args.to > args.from) {
        return Err(Error::InvalidParameter("need --to > --from and --points >= 2".into()));
    }
    let values = if args.log {
        if args.from <= 0.0 {
            return Err(Error::InvalidParameter("--log needs --from > 0".into()));
        }
        scan::logspace(args.from, args.to, args.points)
    } else {
        scan::linspace(args.from, args.to, args.points)
    };
    let rows = scan::curve_sweep(&spec, axis, &values, args.alpha, args.t)?;
    let header = vec![
        format!("majorlens {} curve", env!("CARGO_PKG_VERSION")),
        format!("d={} x={:?} exchange={:?} axis={:?}", spec.d, spec.x, spec.exchange, axis),
        format!("fixed alpha={} t={}", args.alpha, args.t),
        "peaked-normalizer=|Tr g_t(rho - alpha)| tsallis-normalizer=Tr rho_A^q".into(),
    ];
    let mut out = output(&args.out)?;
    scan::write_curve_csv(&mut out, &header, &rows)?;
    out.flush()?;
    Ok(EXIT_CLEAN)
}
