use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use polyinv_core::arrangement::{
    format_sphere_system, read_sphere_system, region_count_exact, region_count_upper, sphere_system,
    voxel_region_count_stable, ArrangementError, MAX_RESOLUTION, MIN_RESOLUTION,
};
use polyinv_core::geom::{GeomError, QuadrupleShape};
use polyinv_core::knots::{classify_with, KnotError};
use polyinv_core::polygon::{circle_arc_image, format_polygon, polygonal_inversion, read_polygon, PolygonError};
use polyinv_core::survey::{
    crossover, survey_centers, BoundsTable, SurveyError, SurveyStrategy, MAX_LOWER_BOUND_EDGES,
};
use polyinv_core::{InversionSpec, Point3, Polygon, Tolerance};

#[derive(Parser, Debug)]
#[command(name = "polyinv", version, about = "Polygonal knot inversion toolkit")]
struct Cli {
    /// Tolerance for degeneracy tests.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    eps: f64,
    /// Seed for projection directions and center sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Points per arc in `arcs` output.
    #[arg(long, global = true, default_value_t = 64)]
    samples_per_arc: usize,
    /// Largest voxel resolution tried by `regions --voxel`.
    #[arg(long, global = true, default_value_t = 256)]
    voxel_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Inversion {
    #[arg(long)]
    polygon: PathBuf,
    /// Inversion center as `x,y,z`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    center: Point3,
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    radius: f64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invert every vertex of a polygon.
    Invert(Inversion),
    /// Sample the circle-arc image of a polygon.
    Arcs(Inversion),
    /// Spheres and planes through non-adjacent edge pairs.
    Spheres {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count complementary regions of a sphere system file.
    Regions {
        #[arg(long)]
        system: PathBuf,
        /// Cross-check with a voxel count.
        #[arg(long)]
        voxel: bool,
    },
    /// Classify a polygon, optionally after inverting it.
    Classify {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Option<Point3>,
        #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
        radius: f64,
    },
    /// Sample inversion centers and tabulate the knot types reached.
    Survey {
        #[arg(long)]
        polygon: PathBuf,
        /// Random centers drawn from the enlarged bounding box.
        #[arg(long, default_value_t = 500)]
        centers: usize,
        /// Surface points per sphere, each giving a center on either side.
        #[arg(long, default_value_t = 16)]
        surface_samples: usize,
        #[arg(long, default_value_t = 1e-2, value_parser = positive_f64)]
        near_sphere_offset: f64,
        /// Extra center `x,y,z`; may be repeated.
        #[arg(long = "center", value_parser = parse_point, allow_hyphen_values = true)]
        extra: Vec<Point3>,
        /// Write the full report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Upper and lower bounds on knot types for `n` edges.
    Bounds {
        #[arg(value_parser = clap::value_parser!(u64).range(4..=MAX_LOWER_BOUND_EDGES as u64))]
        n: u64,
    },
    /// Edge counts past which no polygon reaches every knot type.
    Crossover,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_point(s: &str) -> Result<Point3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(format!("expected x,y,z, got {s:?}"));
    };
    let c = [x, y, z].map(|t| t.parse::<f64>());
    match c {
        [Ok(x), Ok(y), Ok(z)] if x.is_finite() && y.is_finite() && z.is_finite() => Ok(Point3::new(x, y, z)),
        _ => Err(format!("expected three finite numbers, got {s:?}")),
    }
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Degenerate { kind: &'static str, message: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Degenerate { .. } => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "input error: {m}"),
            CliError::Degenerate { kind, message } => write!(f, "degenerate geometry [{kind}]: {message}"),
        }
    }
}

fn degenerate(kind: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Degenerate { kind, message: e.to_string() }
}

impl From<PolygonError> for CliError {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::Parse { .. } | PolygonError::Io(_) => CliError::Parse(e.to_string()),
            PolygonError::CenterHit { .. } => degenerate("PolygonError::CenterHit", e),
            PolygonError::DegeneratePolygon(_) => degenerate("PolygonError::DegeneratePolygon", e),
            PolygonError::DegenerateArc { .. } => degenerate("PolygonError::DegenerateArc", e),
        }
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        match e {
            ArrangementError::Parse { .. } | ArrangementError::Io(_) => CliError::Parse(e.to_string()),
            ArrangementError::Geom(g) => g.into(),
            ArrangementError::NormalizationFailed { .. } => degenerate("ArrangementError::NormalizationFailed", e),
            ArrangementError::Unresolved { .. } => degenerate("ArrangementError::Unresolved", e),
            ArrangementError::InvalidResolution(_) => degenerate("ArrangementError::InvalidResolution", e),
            ArrangementError::PlanesPresent => degenerate("ArrangementError::PlanesPresent", e),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        degenerate("GeomError", e)
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> Self {
        match e {
            KnotError::Singular { .. } => degenerate("KnotError::Singular", e),
            KnotError::NoGenericProjection => degenerate("KnotError::NoGenericProjection", e),
            KnotError::StateExplosion { .. } => degenerate("KnotError::StateExplosion", e),
            KnotError::MalformedDiagram(_) => degenerate("KnotError::MalformedDiagram", e),
        }
    }
}

impl From<SurveyError> for CliError {
    fn from(e: SurveyError) -> Self {
        match e {
            SurveyError::Polygon(e) => e.into(),
            SurveyError::Knot(e) => e.into(),
            SurveyError::Arrangement(e) => e.into(),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn load(path: &Path, tol: Tolerance) -> Result<Polygon, CliError> {
    read_polygon(path, tol).map_err(|e| match e {
        PolygonError::Io(io) => io_error(path, io),
        other => other.into(),
    })
}

#[derive(Serialize)]
struct ClassifyRecord {
    schema: u32,
    label: String,
    jones: Vec<(i32, i64)>,
    determinant: u64,
    writhe: i64,
    crossings: usize,
    direction: Option<[f64; 3]>,
    seed: u64,
}

#[derive(Serialize)]
struct RegionsRecord {
    schema: u32,
    surfaces: usize,
    planes: usize,
    regions_exact: usize,
    regions_upper: u128,
    voxel_regions: Option<usize>,
    voxel_resolution: Option<usize>,
}

#[derive(Serialize)]
struct SpheresRecord {
    schema: u32,
    surfaces: usize,
    spheres: usize,
    planes: usize,
    skipped: usize,
    skipped_concyclic: usize,
    skipped_colinear: usize,
    skipped_coincident: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = Tolerance::new(cli.eps);
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Invert(a) => {
            let k = load(&a.polygon, tol)?;
            let spec = InversionSpec::new(a.center, a.radius)?;
            let img = polygonal_inversion(&k, &spec, tol)?;
            let text = if json { to_json(&img.vertices()) } else { format_polygon(&img) };
            emit(a.out.as_deref(), &text)
        }
        Command::Arcs(a) => {
            let k = load(&a.polygon, tol)?;
            let spec = InversionSpec::new(a.center, a.radius)?;
            let arcs = circle_arc_image(&k, &spec, tol)?;
            let samples = cli.samples_per_arc.max(1);
            let lines: Vec<Vec<Point3>> = arcs.arcs.iter().map(|arc| arc.sample(samples)).collect();
            let text = if json {
                let raw: Vec<Vec<[f64; 3]>> =
                    lines.iter().map(|l| l.iter().map(|p| p.to_array()).collect()).collect();
                to_json(&raw)
            } else {
                let mut s = String::new();
                for (i, l) in lines.iter().enumerate() {
                    if i > 0 {
                        s.push('\n');
                    }
                    for p in l {
                        let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z);
                    }
                }
                s
            };
            emit(a.out.as_deref(), &text)
        }
        Command::Spheres { polygon, out } => {
            let k = load(&polygon, tol)?;
            let sys = sphere_system(&k, tol);
            let count = |f: fn(&QuadrupleShape) -> bool| sys.skipped.iter().filter(|q| f(&q.shape)).count();
            let planes = sys.surfaces.iter().filter(|s| s.is_plane()).count();
            let record = SpheresRecord {
                schema: 1,
                surfaces: sys.len(),
                spheres: sys.len() - planes,
                planes,
                skipped: sys.skipped.len(),
                skipped_concyclic: count(|s| matches!(s, QuadrupleShape::Concyclic(_))),
                skipped_colinear: count(|s| matches!(s, QuadrupleShape::Colinear)),
                skipped_coincident: count(|s| matches!(s, QuadrupleShape::Coincident)),
            };
            emit(out.as_deref(), &format_sphere_system(&sys))?;
            let report = if json {
                to_json(&record)
            } else {
                format!(
                    "surfaces={} spheres={} planes={} skipped={} (concyclic={} colinear={} coincident={})\n",
                    record.surfaces,
                    record.spheres,
                    record.planes,
                    record.skipped,
                    record.skipped_concyclic,
                    record.skipped_colinear,
                    record.skipped_coincident
                )
            };
            if out.is_some() {
                print!("{report}");
            } else {
                eprint!("{report}");
            }
            Ok(())
        }
        Command::Regions { system, voxel } => {
            let sys = read_sphere_system(&system, tol).map_err(|e| match e {
                ArrangementError::Io(io) => io_error(&system, io),
                other => other.into(),
            })?;
            let exact = region_count_exact(&sys, tol)?;
            let vox = if voxel {
                let cap = cli.voxel_cap.clamp(MIN_RESOLUTION, MAX_RESOLUTION);
                Some(voxel_region_count_stable(&sys, MIN_RESOLUTION, cap)?)
            } else {
                None
            };
            let record = RegionsRecord {
                schema: 1,
                surfaces: sys.len(),
                planes: sys.surfaces.iter().filter(|s| s.is_plane()).count(),
                regions_exact: exact,
                regions_upper: region_count_upper(sys.len() as u64),
                voxel_regions: vox.as_ref().map(|v| v.regions),
                voxel_resolution: vox.as_ref().map(|v| v.resolution),
            };
            let text = if json {
                to_json(&record)
            } else {
                let mut s = format!(
                    "surfaces={}\nregions_exact={}\nregions_upper={}\n",
                    record.surfaces, record.regions_exact, record.regions_upper
                );
                if let Some(v) = &vox {
                    let _ = writeln!(s, "voxel_regions={} (resolution {})", v.regions, v.resolution);
                }
                s
            };
            emit(None, &text)
        }
        Command::Classify { polygon, center, radius } => {
            let mut k = load(&polygon, tol)?;
            if let Some(c) = center {
                k = polygonal_inversion(&k, &InversionSpec::new(c, radius)?, tol)?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let class = classify_with(&k, &mut rng, tol)?;
            let text = if json {
                to_json(&ClassifyRecord {
                    schema: 1,
                    label: class.key(),
                    jones: class.jones.terms().collect(),
                    determinant: class.determinant,
                    writhe: class.writhe,
                    crossings: class.crossings,
                    direction: class.direction.map(|d| d.to_array()),
                    seed: cli.seed,
                })
            } else {
                format!(
                    "{}\njones={}\ndeterminant={}\nwrithe={}\ncrossings={}\n",
                    class.key(),
                    class.jones,
                    class.determinant,
                    class.writhe,
                    class.crossings
                )
            };
            emit(None, &text)
        }
        Command::Survey { polygon, centers, surface_samples, near_sphere_offset, extra, json: json_out } => {
            let k = load(&polygon, tol)?;
            let strategy = SurveyStrategy {
                random_centers: centers,
                surface_samples,
                near_sphere_offset,
                extra_centers: extra,
                ..SurveyStrategy::default()
            };
            let report = survey_centers(&k, &strategy, cli.seed, tol);
            let full = to_json(&report);
            if let Some(p) = &json_out {
                emit(Some(p), &full)?;
            }
            if json {
                return emit(None, &full);
            }
            let mut s = String::new();
            for e in &report.entries {
                let _ = writeln!(
                    s,
                    "{:<14} count={:<5} reliable={:<5} center={:.6},{:.6},{:.6}",
                    e.key, e.count, e.reliable, e.representative.x, e.representative.y, e.representative.z
                );
            }
            let regions = report.region_count_exact.map_or_else(|| "unavailable".to_string(), |r| r.to_string());
            let _ = writeln!(
                s,
                "centers={} discarded={} singular={} failed={}\nreliable_labels={}\nregions_exact={}\nregions_upper={}\nknots_bound={}",
                report.centers_generated,
                report.centers_discarded,
                report.singular,
                report.failed,
                report.reliable_labels(),
                regions,
                report.region_bound,
                report.knots_bound
            );
            emit(None, &s)
        }
        Command::Bounds { n } => {
            let t = BoundsTable::new(n);
            let text = if json {
                to_json(&t)
            } else {
                format!(
                    "n={}\nspheres_max={}\nknots_upper={}\nknots_upper_mobius={}\nknots_lower={}\n",
                    t.n, t.spheres_max, t.knots_upper, t.knots_upper_mobius, t.knots_lower
                )
            };
            emit(None, &text)
        }
        Command::Crossover => {
            let (single, mobius) = (crossover(false), crossover(true));
            let text = if json {
                to_json(&serde_json::json!({ "schema": 1, "single_inversion": single, "mobius_group": mobius }))
            } else {
                let mut s = format!("single-inversion: {}, mobius-group: {}\n", single.n, mobius.n);
                for (name, c) in [("single-inversion", single), ("mobius-group", mobius)] {
                    let _ = writeln!(
                        s,
                        "{name}: n={} lower={} > upper={}; n={} lower={} <= upper={}",
                        c.n,
                        c.lower_at,
                        c.upper_at,
                        c.n - 1,
                        c.lower_before,
                        c.upper_before
                    );
                }
                s
            };
            emit(None, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polyinv: {e}");
            ExitCode::from(e.code())
        }
    }
}
