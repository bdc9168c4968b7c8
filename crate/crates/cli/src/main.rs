use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fdepth_core::homogeneity::{self, HomogeneityMethod};
use fdepth_core::io::{self, Format, HomogeneityMatrix, Output};
use fdepth_core::model::{validate_functional, validate_pointcloud};
use fdepth_core::pointcloud::pointcloud_depth;
use fdepth_core::render::{self, ScatterMode};
use fdepth_core::{
    functional_depth, stats, Containment, DepthEntry, DepthError, DepthParams, DepthResult,
    FunctionalSample, PointCloud,
};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (output schema 1)");

#[derive(Parser, Debug)]
#[command(name = "fdepth", version = VERSION, about = "Statistical depth for functional and pointcloud data")]
struct Cli {
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    /// Run full data validation (finite values, grid and shape checks) before computing.
    #[arg(long = "deep-check", global = true)]
    deep_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Band depth or simplicial band depth of every curve.
    Functional(FunctionalArgs),
    /// Depth of every point of a point cloud.
    Pointcloud(PointcloudArgs),
    /// Order statistics over a saved depth result.
    Stats(StatsArgs),
    /// Homogeneity coefficient between two samples.
    Homogeneity(HomogeneityArgs),
    /// Pairwise homogeneity matrix between several groups.
    Matrix(MatrixArgs),
    /// SVG figures.
    Plot {
        #[command(subcommand)]
        kind: PlotKind,
    },
}

#[derive(Args, Debug, Clone)]
struct BandOpts {
    /// Largest band size.
    #[arg(long = "J", default_value_t = 2)]
    j: usize,
    /// Number of resampling blocks (exact depth when absent).
    #[arg(long = "K")]
    k: Option<usize>,
    /// Fractional (modified) containment.
    #[arg(long)]
    relax: bool,
    /// Seed for resampling partitions.
    #[arg(long)]
    seed: Option<u64>,
    /// Containment tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false, args = ["input", "multivariate"])]
struct FunctionalArgs {
    /// Univariate CSV: one column per curve.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Directory of CSV files, one multivariate curve per file.
    #[arg(long)]
    multivariate: Option<PathBuf>,
    #[arg(long, default_value = "r2")]
    containment: Containment,
    #[command(flatten)]
    band: BandOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct PointcloudArgs {
    /// CSV with one row per point.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "simplex")]
    containment: Containment,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Depth result written by `functional` or `pointcloud` (JSON or CSV).
    #[arg(long)]
    depths: PathBuf,
    #[command(subcommand)]
    query: StatsQuery,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum StatsQuery {
    /// All items, deepest first.
    Ordered,
    /// The N deepest items (more on ties).
    Deepest { n: usize },
    /// The N most outlying items (more on ties).
    Outlying { n: usize },
    /// The deepest fraction of items.
    Central { fraction: f64 },
}

#[derive(Args, Debug)]
struct HomogeneityArgs {
    /// Reference sample F (CSV file or multivariate directory).
    #[arg(long = "f")]
    f: PathBuf,
    /// Compared sample G.
    #[arg(long = "g")]
    g: PathBuf,
    #[arg(long, default_value = "p2")]
    method: HomogeneityMethod,
    #[arg(long, default_value = "r2")]
    containment: Containment,
    #[command(flatten)]
    band: BandOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Group samples (CSV files or multivariate directories); labels are file stems.
    #[arg(long, num_args = 2.., required = true)]
    groups: Vec<PathBuf>,
    #[arg(long, default_value = "p2")]
    method: HomogeneityMethod,
    #[arg(long, default_value = "r2")]
    containment: Containment,
    /// Also write the matrix as an SVG heatmap.
    #[arg(long)]
    heatmap: Option<PathBuf>,
    #[command(flatten)]
    band: BandOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args, Debug)]
struct HighlightArgs {
    /// Number of items to mark in red (more on ties).
    n: usize,
    /// Curves CSV, or point CSV with --pointcloud.
    #[arg(long)]
    input: PathBuf,
    /// Saved depth result; computed with default parameters when absent.
    #[arg(long)]
    depths: Option<PathBuf>,
    /// Treat the input as a point cloud and draw a scatter plot.
    #[arg(long)]
    pointcloud: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    title: Option<String>,
}

#[derive(Subcommand, Debug)]
enum PlotKind {
    /// Curves or points with the N deepest in red.
    Deepest(HighlightArgs),
    /// Curves or points with the N most outlying in red.
    Outlying(HighlightArgs),
    /// Point cloud shaded by depth, deepest darkest.
    Depths {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "simplex")]
        containment: Containment,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        title: Option<String>,
    },
}

struct Ctx {
    quiet: bool,
    deep_check: bool,
}

impl Ctx {
    fn progress(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("fdepth: {}", msg.as_ref());
        }
    }
}

type Res<T> = Result<T, DepthError>;

fn params_from(band: &BandOpts, containment: Containment, quiet: bool) -> DepthParams {
    let mut p = DepthParams::default()
        .with_j(band.j)
        .with_relax(band.relax)
        .with_containment(containment);
    p.blocks = band.k;
    p.seed = match (band.seed, band.k) {
        (Some(s), _) => Some(s),
        (None, Some(_)) => Some(0),
        (None, None) => None,
    };
    p.tol = band.tol;
    p.quiet = quiet;
    p
}

fn read_functional(path: &Path, ctx: &Ctx) -> Res<FunctionalSample> {
    let sample = if path.is_dir() {
        io::parse_multivariate_dir(path)?
    } else {
        io::parse_univariate_csv(path)?
    };
    ctx.progress(format!(
        "read {} curves on {} grid points from {}",
        sample.len(),
        sample.grid().len(),
        path.display()
    ));
    if ctx.deep_check {
        validate_functional(&sample, true).into_result()?;
    }
    Ok(sample)
}

fn read_cloud(path: &Path, ctx: &Ctx) -> Res<PointCloud> {
    let cloud = io::parse_pointcloud_csv(path)?;
    ctx.progress(format!(
        "read {} points in {} dimensions from {}",
        cloud.len(),
        cloud.dim(),
        path.display()
    ));
    if ctx.deep_check {
        validate_pointcloud(&cloud, true).into_result()?;
    }
    Ok(cloud)
}

fn emit(text: &str, out: &OutputOpts, ctx: &Ctx) -> Res<()> {
    match &out.out {
        Some(path) => {
            fs::write(path, text).map_err(|source| DepthError::Io {
                path: path.clone(),
                source,
            })?;
            ctx.progress(format!("wrote {}", path.display()));
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| DepthError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    Ok(())
}

fn report_warnings(result: &DepthResult, ctx: &Ctx) {
    for w in &result.warnings {
        ctx.progress(format!("warning: {w}"));
    }
}

fn functional(args: &FunctionalArgs, ctx: &Ctx) -> Res<()> {
    let sample = match (&args.input, &args.multivariate) {
        (_, Some(dir)) => read_functional(dir, ctx)?,
        (Some(path), None) => read_functional(path, ctx)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let params = params_from(&args.band, args.containment, ctx.quiet);
    ctx.progress(format!(
        "computing {} depth (J={}, relax={}{})",
        args.containment,
        params.max_band_size,
        params.relax,
        params.blocks.map_or(String::new(), |k| format!(
            ", K={k}, seed={}",
            params.effective_seed()
        ))
    ));
    let result = functional_depth(&sample, &params)?;
    report_warnings(&result, ctx);
    emit(
        &io::render_result(Output::Depth(&result), args.output.format),
        &args.output,
        ctx,
    )
}

fn pointcloud(args: &PointcloudArgs, ctx: &Ctx) -> Res<()> {
    let cloud = read_cloud(&args.input, ctx)?;
    let mut params = DepthParams::default().with_containment(args.containment);
    params.tol = args.tol;
    params.quiet = ctx.quiet;
    ctx.progress(format!("computing {} depth", args.containment));
    let result = pointcloud_depth(&cloud, &params)?;
    report_warnings(&result, ctx);
    emit(
        &io::render_result(Output::Depth(&result), args.output.format),
        &args.output,
        ctx,
    )
}

fn stats_text(query: StatsQuery, result: &DepthResult, format: Format) -> Res<String> {
    let (name, entries): (String, Vec<DepthEntry>) = match query {
        StatsQuery::Ordered => ("ordered".into(), stats::ordered(result)),
        StatsQuery::Deepest { n } => (format!("deepest {n}"), stats::deepest(result, n)?),
        StatsQuery::Outlying { n } => (format!("outlying {n}"), stats::outlying(result, n)?),
        StatsQuery::Central { fraction } => {
            let ids = stats::central_region(result, fraction)?;
            let entries = stats::ordered(result)
                .into_iter()
                .filter(|e| ids.contains(&e.id))
                .collect();
            (format!("central {fraction}"), entries)
        }
    };
    Ok(match format {
        Format::Json => {
            let doc = serde_json::json!({
                "schema_version": io::SCHEMA_VERSION,
                "kind": "stats",
                "query": name,
                "method": result.method,
                "entries": entries
                    .iter()
                    .map(|e| serde_json::json!({
                        "id": e.id,
                        "display": io::display6(e.depth),
                        "depth": e.depth,
                    }))
                    .collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("stats serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("id,depth\n");
            for e in &entries {
                s.push_str(&format!("{},{}\n", e.id, e.depth));
            }
            s
        }
    })
}

fn stats_cmd(args: &StatsArgs, ctx: &Ctx) -> Res<()> {
    let result = io::read_depth_result(&args.depths)?;
    let text = stats_text(args.query, &result, args.output.format)?;
    emit(&text, &args.output, ctx)
}

fn homogeneity_cmd(args: &HomogeneityArgs, ctx: &Ctx) -> Res<()> {
    let f = read_functional(&args.f, ctx)?;
    let g = read_functional(&args.g, ctx)?;
    let params = params_from(&args.band, args.containment, ctx.quiet);
    ctx.progress(format!("computing {}", args.method));
    let report = homogeneity::homogeneity(&f, &g, args.method, &params)?;
    emit(
        &io::render_result(Output::Homogeneity(&report), args.output.format),
        &args.output,
        ctx,
    )
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn matrix_cmd(args: &MatrixArgs, ctx: &Ctx) -> Res<()> {
    let groups: Vec<FunctionalSample> = args
        .groups
        .iter()
        .map(|p| read_functional(p, ctx))
        .collect::<Res<_>>()?;
    let params = params_from(&args.band, args.containment, ctx.quiet);
    ctx.progress(format!(
        "computing {} matrix over {} groups",
        args.method,
        groups.len()
    ));
    let values = homogeneity::homogeneity_matrix(&groups, args.method, &params)?;
    let matrix = HomogeneityMatrix {
        method: args.method,
        labels: args.groups.iter().map(|p| stem(p)).collect(),
        values,
        params,
    };
    if let Some(path) = &args.heatmap {
        let title = format!(
            "{} homogeneity coefficient",
            args.method.to_string().to_uppercase()
        );
        render::render_heatmap(&matrix.values, &matrix.labels, &title, path)?;
        ctx.progress(format!("wrote {}", path.display()));
    }
    emit(
        &io::render_result(Output::Matrix(&matrix), args.output.format),
        &args.output,
        ctx,
    )
}

fn highlight_plot(args: &HighlightArgs, deepest: bool, ctx: &Ctx) -> Res<()> {
    let pick = |result: &DepthResult| -> Res<Vec<String>> {
        let entries = if deepest {
            stats::deepest(result, args.n)?
        } else {
            stats::outlying(result, args.n)?
        };
        Ok(entries.into_iter().map(|e| e.id).collect())
    };
    let default_title = format!(
        "{} {}",
        if deepest { "Deepest" } else { "Outlying" },
        args.n
    );
    let title = args.title.clone().unwrap_or(default_title);
    let saved = args
        .depths
        .as_deref()
        .map(io::read_depth_result)
        .transpose()?;
    if args.pointcloud {
        let cloud = read_cloud(&args.input, ctx)?;
        let result = match saved {
            Some(r) => r,
            None => pointcloud_depth(
                &cloud,
                &DepthParams::default().with_containment(Containment::Simplex),
            )?,
        };
        let ids = pick(&result)?;
        render::render_scatter(
            &cloud,
            &result,
            &ScatterMode::Highlight(ids),
            &title,
            &args.out,
        )?;
    } else {
        let sample = read_functional(&args.input, ctx)?;
        let result = match saved {
            Some(r) => r,
            None => functional_depth(&sample, &DepthParams::default())?,
        };
        let ids = pick(&result)?;
        render::render_curves(&sample, &ids, &title, &args.out)?;
    }
    ctx.progress(format!("wrote {}", args.out.display()));
    Ok(())
}

fn plot_cmd(kind: &PlotKind, ctx: &Ctx) -> Res<()> {
    match kind {
        PlotKind::Deepest(args) => highlight_plot(args, true, ctx),
        PlotKind::Outlying(args) => highlight_plot(args, false, ctx),
        PlotKind::Depths {
            input,
            containment,
            out,
            title,
        } => {
            let cloud = read_cloud(input, ctx)?;
            let result = pointcloud_depth(
                &cloud,
                &DepthParams::default().with_containment(*containment),
            )?;
            report_warnings(&result, ctx);
            let title = title
                .clone()
                .unwrap_or_else(|| "Deepest are Darkest".into());
            render::render_scatter(&cloud, &result, &ScatterMode::Gradient, &title, out)?;
            ctx.progress(format!("wrote {}", out.display()));
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Res<()> {
    let ctx = Ctx {
        quiet: cli.quiet,
        deep_check: cli.deep_check,
    };
    match &cli.command {
        Command::Functional(a) => functional(a, &ctx),
        Command::Pointcloud(a) => pointcloud(a, &ctx),
        Command::Stats(a) => stats_cmd(a, &ctx),
        Command::Homogeneity(a) => homogeneity_cmd(a, &ctx),
        Command::Matrix(a) => matrix_cmd(a, &ctx),
        Command::Plot { kind } => plot_cmd(kind, &ctx),
    }
}

fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Runs the CLI on `argv` and returns the process exit code: 0 on success,
/// 1 on data or computation errors, 2 on usage errors.
fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprintln!("{}", error_json("usage", e.render().to_string().trim_end()));
            return 2;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("{}", error_json("usage", "--threads must be at least 1"));
            return 2;
        }
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", error_json("internal", &e.to_string()));
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            1
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn version_mentions_schema() {
        assert!(VERSION.ends_with(&format!("(output schema {})", io::SCHEMA_VERSION)));
    }

    #[test]
    fn defaults_mirror_library_defaults() {
        let cli = Cli::try_parse_from(["fdepth", "functional", "--input", "x.csv"]).unwrap();
        let Command::Functional(a) = cli.command else {
            panic!()
        };
        let p = params_from(&a.band, a.containment, false);
        assert_eq!(p, DepthParams::default());
        let cli = Cli::try_parse_from(["fdepth", "pointcloud", "--input", "p.csv"]).unwrap();
        let Command::Pointcloud(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.containment, Containment::Simplex);
    }

    #[test]
    fn resampling_echoes_default_seed() {
        let cli =
            Cli::try_parse_from(["fdepth", "functional", "--input", "x.csv", "--K", "4"]).unwrap();
        let Command::Functional(a) = cli.command else {
            panic!()
        };
        assert_eq!(params_from(&a.band, a.containment, true).seed, Some(0));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["fdepth", "bogus"]), 2);
        assert_eq!(run(["fdepth", "functional"]), 2);
        assert_eq!(
            run([
                "fdepth",
                "homogeneity",
                "--f",
                "a",
                "--g",
                "b",
                "--method",
                "p9"
            ]),
            2
        );
        assert_eq!(
            run(["fdepth", "--threads", "0", "functional", "--input", "x.csv"]),
            2
        );
    }

    #[test]
    fn data_errors_exit_1() {
        assert_eq!(
            run([
                "fdepth",
                "--quiet",
                "functional",
                "--input",
                "/nonexistent/x.csv"
            ]),
            1
        );
    }

    #[test]
    fn stats_queries() {
        let ids: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let r = DepthResult::new("m", DepthParams::default(), &ids, vec![0.1, 0.3, 0.1]);
        let csv = stats_text(StatsQuery::Outlying { n: 1 }, &r, Format::Csv).unwrap();
        assert_eq!(csv, "id,depth\na,0.1\nc,0.1\n");
        let csv = stats_text(StatsQuery::Deepest { n: 1 }, &r, Format::Csv).unwrap();
        assert_eq!(csv, "id,depth\nb,0.3\n");
        assert!(stats_text(StatsQuery::Central { fraction: 0.0 }, &r, Format::Json).is_err());
    }
}
