//! Batch command line: inspect, cube, slice/dice, export, discover,
//! compare, bench and serve.

use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ocpc_core::cube::GridAxis;
use ocpc_core::{compare_models, discover_ocdfg, discover_ocpn, Materialization, Ocel, OcelError, ProcessCube};

use crate::bench::{linear_fit, measure};
use crate::formats::{export, parse, Format};
use crate::render::{dot, json as rj, text};
use crate::synth::SynthConfig;
use crate::{parallel, selectors, service, Error};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for unreadable, invalid or unsuitable data.
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ocpc", version, about = "Object-centric process cubes over OCEL logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize a log.
    Info(InfoArgs),
    /// List the dimensions a cube can be built on.
    Dims(InfoArgs),
    /// Count events per (row, column) value pair.
    Grid(GridArgs),
    /// Fix dimensions to single values and emit the remaining events as a log.
    Slice(SliceArgs),
    /// Restrict dimensions to value sets and emit the remaining events as a log.
    Dice(DiceArgs),
    /// Discover an object-centric model of a log or of one cube cell.
    Discover(DiscoverArgs),
    /// Compare the directly-follows models of two logs.
    Compare(CompareArgs),
    /// Convert a log between JSON-OCEL and XML-OCEL.
    Export(ExportArgs),
    /// Time cube builds on synthetic logs.
    Bench(BenchArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableOut {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Ocdfg,
    Ocpn,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelOut {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Existence,
    All,
}

impl From<ModeArg> for Materialization {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Existence => Materialization::Existence,
            ModeArg::All => Materialization::All,
        }
    }
}

#[derive(Debug, Args)]
struct Input {
    /// JSON-OCEL or XML-OCEL file.
    input: PathBuf,
    /// Input format; guessed from the extension and content when omitted.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct InfoArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "text")]
    out: TableOut,
}

#[derive(Debug, Args)]
struct CubeArgs {
    /// Dimensions as `event:<name>` / `object:<type>.<name>` or labels;
    /// repeatable or comma-separated.
    #[arg(long, required = true)]
    dims: Vec<String>,
    #[arg(long, value_enum, default_value = "existence")]
    mode: ModeArg,
}

#[derive(Debug, Args)]
struct OutputFile {
    /// Output file; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Output log format; from the output extension, else JSON.
    #[arg(long)]
    to: Option<Format>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    cube: CubeArgs,
    /// Row dimension; defaults to the first cube dimension.
    #[arg(long)]
    rows: Option<String>,
    /// Column dimension; a single ALL column when omitted.
    #[arg(long)]
    cols: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    out: TableOut,
}

#[derive(Debug, Args)]
struct SliceArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    cube: CubeArgs,
    /// `dim=value`; repeatable. `__null__` selects the missing-value bucket.
    #[arg(long, required = true)]
    at: Vec<String>,
    #[command(flatten)]
    output: OutputFile,
}

#[derive(Debug, Args)]
struct DiceArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    cube: CubeArgs,
    /// `dim=value`; repeatable, values of one dimension accumulate.
    #[arg(long, required = true)]
    select: Vec<String>,
    #[command(flatten)]
    output: OutputFile,
}

#[derive(Debug, Args)]
struct DiscoverArgs {
    #[command(flatten)]
    input: Input,
    /// Cube dimensions; with `--at`, discovery runs on that cell only.
    #[arg(long, requires = "at")]
    dims: Vec<String>,
    #[arg(long, value_enum, default_value = "existence")]
    mode: ModeArg,
    /// `dim=value` for every cube dimension.
    #[arg(long, requires = "dims")]
    at: Vec<String>,
    #[arg(long, value_enum, default_value = "ocdfg")]
    model: ModelKind,
    #[arg(long, value_enum, default_value = "json")]
    out: ModelOut,
    /// Hide nodes and edges seen fewer times (OC-DFG only).
    #[arg(long, default_value_t = 0)]
    min_frequency: u64,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    left: PathBuf,
    right: PathBuf,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value = "json")]
    out: TableOut,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: OutputFile,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Event counts; comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 5000, 10000, 20000])]
    events: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    event_attrs: usize,
    /// Item attribute counts; comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [4usize])]
    object_attrs: Vec<usize>,
    /// Repetitions per configuration; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "existence")]
    mode: ModeArg,
    /// Build threads; 1 measures the sequential build.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, env = "OCPC_LISTEN", default_value = "127.0.0.1:8080")]
    listen: SocketAddr,
    /// Upload size cap in bytes.
    #[arg(long, env = "OCPC_MAX_UPLOAD", default_value_t = service::DEFAULT_MAX_UPLOAD)]
    max_upload: usize,
    /// Build timeout in seconds.
    #[arg(long, env = "OCPC_TIMEOUT", default_value_t = service::DEFAULT_TIMEOUT.as_secs())]
    timeout: u64,
    #[arg(long, env = "OCPC_THREADS")]
    threads: Option<usize>,
    /// UI bundle served for non-API paths.
    #[arg(long, env = "OCPC_STATIC_DIR")]
    static_dir: Option<PathBuf>,
    /// Uploaded logs are also written here.
    #[arg(long, env = "OCPC_SNAPSHOT_DIR")]
    snapshot_dir: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let Error::Ocel(OcelError::Invalid(report)) = &e {
                let _ = write!(stderr, "{report}");
            }
            match e {
                Error::Usage(_) => EXIT_USAGE,
                _ => EXIT_DATA,
            }
        }
    }
}

fn read_log(path: &Path, format: Option<Format>, stderr: &mut dyn Write) -> Result<Ocel, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let format = format.unwrap_or_else(|| {
        let by_ext = Format::from_path(path);
        match path.extension() {
            Some(_) => by_ext,
            None => Format::sniff(&bytes),
        }
    });
    let parsed = parse(&bytes, format)?;
    for w in &parsed.warnings {
        let _ = writeln!(stderr, "warning: {} {}: {}", w.code.as_str(), w.location, w.message);
    }
    Ok(parsed.log)
}

fn emit(bytes: &[u8], output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => stdout.write_all(bytes).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn emit_log(log: &Ocel, out: &OutputFile, stdout: &mut dyn Write) -> Result<(), Error> {
    let format = out
        .to
        .or_else(|| out.output.as_deref().map(Format::from_path))
        .unwrap_or(Format::Json);
    emit(&export(log, format)?, out.output.as_deref(), stdout)
}

fn build(log: Ocel, cube: &CubeArgs) -> Result<ProcessCube, Error> {
    let dims = selectors::dimension_list(&cube.dims, &ocpc_core::list_dimensions(&log))?;
    Ok(parallel::build_cube(
        Arc::new(log),
        dims,
        cube.mode.into(),
        parallel::default_threads(),
    )?)
}

fn assignments(items: &[String]) -> Result<Vec<(&str, &str)>, Error> {
    items
        .iter()
        .map(|a| selectors::split_assignment(a).ok_or_else(|| Error::Usage(format!("expected dim=value, got {a:?}"))))
        .collect()
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Error> {
    match cmd {
        Command::Info(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            match a.out {
                TableOut::Text => emit(text::summary(&log).as_bytes(), None, stdout),
                TableOut::Json => emit(&rj::to_bytes(&rj::log_summary(&log)), None, stdout),
            }
        }
        Command::Dims(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            let dims = ocpc_core::list_dimensions(&log);
            match a.out {
                TableOut::Text => {
                    let lines: String = dims.iter().map(|d| format!("{}\n", d.spec())).collect();
                    emit(lines.as_bytes(), None, stdout)
                }
                TableOut::Json => emit(
                    &rj::to_bytes(&json!({ "dimensions": rj::dimensions(&dims) })),
                    None,
                    stdout,
                ),
            }
        }
        Command::Grid(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            let cube = build(log, &a.cube)?;
            let axis = |t: Option<&str>, default: GridAxis| -> Result<GridAxis, Error> {
                Ok(match t {
                    None => default,
                    Some("ALL") => GridAxis::All,
                    Some(t) => GridAxis::Dim(selectors::resolve_dimension(t, cube.dims())?),
                })
            };
            let first = cube.dims().first().cloned().map_or(GridAxis::All, GridAxis::Dim);
            let rows = axis(a.rows.as_deref(), first)?;
            let cols = axis(a.cols.as_deref(), GridAxis::All)?;
            let g = cube.grid_view(&rows, &cols)?;
            match a.out {
                TableOut::Text => emit(text::grid(&g).as_bytes(), None, stdout),
                TableOut::Json => emit(&rj::to_bytes(&rj::grid(&g)), None, stdout),
            }
        }
        Command::Slice(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            let mut cube = build(log, &a.cube)?;
            for (d, v) in assignments(&a.at)? {
                let dim = selectors::resolve_dimension(d, cube.dims())?;
                let value = selectors::resolve_value(&cube, &dim, v)?;
                cube = cube.slice(&dim, &value)?;
            }
            emit_log(&cube.materialize_all(), &a.output, stdout)
        }
        Command::Dice(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            let cube = build(log, &a.cube)?;
            let sel = selectors::selection(&cube, assignments(&a.select)?)?;
            emit_log(&cube.dice(&sel)?.materialize_all(), &a.output, stdout)
        }
        Command::Discover(a) => {
            let mut log = read_log(&a.input.input, a.input.format, stderr)?;
            if !a.dims.is_empty() {
                let cube = build(
                    log,
                    &CubeArgs {
                        dims: a.dims,
                        mode: a.mode,
                    },
                )?;
                let coord = selectors::coordinate(&cube, assignments(&a.at)?)?;
                log = cube.materialize_cell(&coord)?;
            }
            let out = match (a.model, a.out) {
                (ModelKind::Ocdfg, ModelOut::Dot) => dot::ocdfg(&discover_ocdfg(&log), a.min_frequency).into_bytes(),
                (ModelKind::Ocdfg, ModelOut::Json) => rj::to_bytes(&rj::ocdfg(&discover_ocdfg(&log), a.min_frequency)),
                (ModelKind::Ocpn, ModelOut::Dot) => dot::ocpn(&discover_ocpn(&log)).into_bytes(),
                (ModelKind::Ocpn, ModelOut::Json) => rj::to_bytes(&rj::ocpn(&discover_ocpn(&log))),
            };
            emit(&out, a.output.as_deref(), stdout)
        }
        Command::Compare(a) => {
            let left = discover_ocdfg(&read_log(&a.left, a.format, stderr)?);
            let right = discover_ocdfg(&read_log(&a.right, a.format, stderr)?);
            let d = compare_models(&left, &right);
            match a.out {
                TableOut::Text => emit(text::diff(&d).as_bytes(), None, stdout),
                TableOut::Json => emit(&rj::to_bytes(&rj::diff(&d)), None, stdout),
            }
        }
        Command::Export(a) => {
            let log = read_log(&a.input.input, a.input.format, stderr)?;
            emit_log(&log, &a.output, stdout)
        }
        Command::Bench(a) => bench(&a, stdout),
        Command::Serve(a) => {
            let config = service::Config {
                max_upload: a.max_upload,
                timeout: Duration::from_secs(a.timeout),
                threads: a.threads.unwrap_or_else(parallel::default_threads),
                static_dir: a.static_dir,
                snapshot_dir: a.snapshot_dir,
            };
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::io("<runtime>", e))?;
            rt.block_on(service::serve(a.listen, config))
                .map_err(|e| Error::io(a.listen.to_string(), e))
        }
    }
}

/// One JSON line per sample, then a summary line with the fit over event
/// counts and the trend over item attribute counts.
fn bench(a: &BenchArgs, stdout: &mut dyn Write) -> Result<(), Error> {
    if a.events.is_empty() || a.object_attrs.is_empty() {
        return Err(Error::Usage(
            "bench needs at least one event count and object attribute count".into(),
        ));
    }
    let mut samples = Vec::new();
    for &oa in &a.object_attrs {
        for &n in &a.events {
            let cfg = SynthConfig {
                events: n,
                event_attrs: a.event_attrs,
                object_attrs: oa,
                seed: a.seed,
            };
            let s = measure(&cfg, a.mode.into(), a.reps, a.threads);
            let line = serde_json::to_string(&json!({ "sample": s })).expect("serializable");
            writeln!(stdout, "{line}").map_err(|e| Error::io("<stdout>", e))?;
            samples.push(s);
        }
    }
    let largest = *a.events.iter().max().expect("non-empty");
    let fit = (a.events.len() > 1).then(|| {
        let base = a.object_attrs[0];
        let pts: Vec<(f64, f64)> = samples
            .iter()
            .filter(|s| s.object_attrs == base)
            .map(|s| (s.events as f64, s.seconds))
            .collect();
        linear_fit(&pts)
    });
    let by_attrs: Vec<&crate::bench::Sample> = samples.iter().filter(|s| s.events == largest).collect();
    let monotone = by_attrs.windows(2).all(|w| w[1].seconds >= w[0].seconds);
    // Growth is superlinear when per-attribute increments grow.
    let increments: Vec<f64> = by_attrs.windows(2).map(|w| w[1].seconds - w[0].seconds).collect();
    let superlinear = increments.len() > 1 && increments.windows(2).all(|w| w[1] >= w[0]);
    let summary = json!({ "summary": {
        "events_fit": fit.flatten(),
        "object_attrs": {
            "events": largest,
            "seconds": by_attrs.iter().map(|s| s.seconds).collect::<Vec<_>>(),
            "monotone": monotone,
            "superlinear": superlinear,
        },
    }});
    writeln!(stdout, "{}", serde_json::to_string(&summary).expect("serializable")).map_err(|e| Error::io("<stdout>", e))
}
