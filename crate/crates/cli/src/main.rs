//! Command-line front end: graph generation, validation, spectra, walk
//! evolution, cutoff scans, tree statistics, and the verification suite.
//!
//! Exit codes: 0 success, 1 I/O, 2 validation/parameter, 3 numerical
//! non-convergence, 4 verification-check failure. JSON is the primary
//! output format (each document carries `"schema": 1`, the tool version
//! and the effective config); CSV is secondary and embeds the same
//! information as `#` comments.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use cutoff_core::analysis::{self, CutoffScan, FamilyMember, ScanConfig};
use cutoff_core::error::Error;
use cutoff_core::generators::{
    lps_graph, named_fixture, random_regular, Fixture, LpsParams, RandomRegularParams,
};
use cutoff_core::graph::Graph;
use cutoff_core::plot::{line_plot, Series};
use cutoff_core::spectral::{self, MethodHint};
use cutoff_core::verify::{self, SuiteConfig};
use cutoff_core::{io as gio, tree, walk};

const SCHEMA: u64 = 1;

fn tool_version() -> String {
    format!("cutoff {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Parser)]
#[command(
    name = "cutoff",
    version,
    about = "Random-walk mixing laboratory for regular graphs"
)]
struct Cli {
    /// Base seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (1 keeps byte-stable CI runs cheap; outputs are
    /// identical for any value).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph file (plus a JSON sidecar for LPS parameters).
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Check the standing hypotheses of a graph file.
    Validate { graph: PathBuf },
    /// Reduced spectral radius and Ramanujan certificate.
    Spectrum {
        graph: PathBuf,
        #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Mixing profile of the walk from one start vertex.
    Evolve {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: u32,
        #[arg(long)]
        t: usize,
        /// Also write a tv-vs-t line plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Mixing times and the entropic/spectral bounds at one alpha.
    Mix {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: u32,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
    },
    /// Cutoff scan over a graph family.
    Scan(ScanArgs),
    /// Radial walk on the d-regular tree.
    Tree {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        /// Emit per-step ratio statistics instead of the radial laws.
        #[arg(long)]
        stats: bool,
    },
    /// Run the inequality verification suite (exit 4 on any failure).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Derive ratios and plots from a scan JSON document.
    Report {
        scan: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0.9)]
        alpha_prime: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Lubotzky–Phillips–Sarnak graph for primes p, q = 1 mod 4.
    Lps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Random d-regular graph from the pairing model.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Named fixture: `petersen`, `complete:K`, or `circulant:N:S1,S2,...`.
    Fixture {
        #[arg(long)]
        name: String,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Graph files to scan (labelled by file stem).
    #[arg(long = "graph")]
    graphs: Vec<PathBuf>,
    /// Treat the file-loaded graphs as vertex-transitive (one start).
    #[arg(long)]
    transitive: bool,
    /// LPS members given inline as p:q.
    #[arg(long = "lps")]
    lps: Vec<String>,
    /// Circulant members given inline as n:s1,s2,...
    #[arg(long = "circulant")]
    circulants: Vec<String>,
    #[arg(long, default_value = "0.05,0.1,0.25,0.5,0.75,0.9")]
    alpha_grid: String,
    #[arg(long, default_value = "0.1,0.25")]
    eps_grid: String,
    #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Dense,
    Iterative,
}

impl From<Method> for MethodHint {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => MethodHint::Auto,
            Method::Dense => MethodHint::Dense,
            Method::Iterative => MethodHint::Iterative,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .ok();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Gen { family } => cmd_gen(cli, family),
        Cmd::Validate { graph } => cmd_validate(cli, graph),
        Cmd::Spectrum { graph, tol, method } => cmd_spectrum(cli, graph, *tol, *method),
        Cmd::Evolve {
            graph,
            start,
            t,
            svg,
        } => cmd_evolve(cli, graph, *start, *t, svg.as_deref()),
        Cmd::Mix {
            graph,
            start,
            alpha,
        } => cmd_mix(cli, graph, *start, *alpha),
        Cmd::Scan(args) => cmd_scan(cli, args),
        Cmd::Tree { d, t, stats } => cmd_tree(cli, *d, *t, *stats),
        Cmd::Verify { suite, trials } => cmd_verify(cli, suite, *trials),
        Cmd::Report {
            scan,
            alpha,
            alpha_prime,
            svg,
        } => cmd_report(cli, scan, *alpha, *alpha_prime, svg.as_deref()),
    }
}

fn emit_text(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json(
    cli: &Cli,
    command: &str,
    config: serde_json::Value,
    data: serde_json::Value,
) -> Result<(), Error> {
    let doc = json!({
        "schema": SCHEMA,
        "tool": tool_version(),
        "command": command,
        "config": config,
        "data": data,
    });
    emit_text(cli, &format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

fn csv_comments(command: &str, config: &serde_json::Value) -> Vec<String> {
    vec![
        tool_version(),
        format!("command: {command}"),
        format!("config: {config}"),
        format!("schema: {SCHEMA}"),
    ]
}

fn with_svg_header(svg: &str, command: &str, config: &serde_json::Value) -> String {
    format!(
        "<!-- {} | command: {command} | config: {config} | schema: {SCHEMA} -->\n{svg}",
        tool_version()
    )
}

fn require_json(cli: &Cli, command: &str) -> Result<(), Error> {
    if cli.format == Format::Csv {
        return Err(Error::InvalidParameter(format!(
            "`{command}` has no CSV form; use --format json"
        )));
    }
    Ok(())
}

fn cmd_gen(cli: &Cli, family: &GenCmd) -> Result<ExitCode, Error> {
    let (graph, label, sidecar) = match family {
        GenCmd::Lps { p, q } => {
            let built = lps_graph(&LpsParams { p: *p, q: *q })?;
            let meta = serde_json::to_value(built.meta)?;
            (built.graph, format!("lps p={p} q={q}"), Some(meta))
        }
        GenCmd::Random { n, d } => {
            let g = random_regular(&RandomRegularParams::new(*n, *d, cli.seed))?;
            (g, format!("random n={n} d={d} seed={}", cli.seed), None)
        }
        GenCmd::Fixture { name } => {
            let fixture = parse_fixture(name)?;
            (named_fixture(&fixture)?, format!("fixture {name}"), None)
        }
    };
    let config = json!({ "generator": label, "seed": cli.seed });
    let comments = csv_comments("gen", &config);
    match &cli.out {
        Some(path) => {
            gio::save_graph(&graph, path, &comments)?;
            if let Some(meta) = sidecar {
                let sidecar_path = sidecar_path(path);
                fs::write(
                    sidecar_path,
                    format!("{}\n", serde_json::to_string_pretty(&meta)?),
                )?;
            }
        }
        None => {
            let mut buf = Vec::new();
            gio::write_graph(&graph, &mut buf, &comments)?;
            std::io::stdout().write_all(&buf)?;
            if let Some(meta) = sidecar {
                eprintln!("{meta}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sidecar_path(graph_path: &Path) -> PathBuf {
    let mut s = graph_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<ExitCode, Error> {
    require_json(cli, "validate")?;
    let config = json!({ "graph": path });
    match gio::load_graph(path) {
        Ok(g) => {
            emit_json(
                cli,
                "validate",
                config,
                json!({
                    "n": g.n(), "d": g.d(),
                    "simple": true, "d_regular": true,
                    "connected": true, "non_bipartite": true,
                    "admissible": true,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::NotAdmissible { report }) => {
            emit_json(
                cli,
                "validate",
                config,
                json!({
                    "simple": report.simple,
                    "d_regular": report.d_regular,
                    "connected": report.connected,
                    "non_bipartite": report.non_bipartite,
                    "admissible": false,
                }),
            )?;
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e),
    }
}

fn cmd_spectrum(cli: &Cli, path: &Path, tol: f64, method: Method) -> Result<ExitCode, Error> {
    require_json(cli, "spectrum")?;
    let graph = gio::load_graph(path)?;
    let report = spectral::spectral_report(&graph, tol, method.into())?;
    let config = json!({ "graph": path, "tol": tol, "seed": cli.seed });
    emit_json(cli, "spectrum", config, serde_json::to_value(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_evolve(
    cli: &Cli,
    path: &Path,
    start: u32,
    t: usize,
    svg: Option<&Path>,
) -> Result<ExitCode, Error> {
    let graph = gio::load_graph(path)?;
    let profile = walk::mixing_profile(&graph, start, t)?;
    let config = json!({ "graph": path, "start": start, "t": t, "seed": cli.seed });
    if let Some(svg_path) = svg {
        let series = Series {
            label: format!("start {start}"),
            points: profile.rows.iter().map(|r| (r.t as f64, r.tv)).collect(),
        };
        let plot = line_plot("tv vs t", "t", "tv", &[series]);
        fs::write(svg_path, with_svg_header(&plot, "evolve", &config))?;
    }
    match cli.format {
        Format::Csv => emit_text(cli, &profile.to_csv(&csv_comments("evolve", &config))),
        Format::Json => emit_json(cli, "evolve", config, serde_json::to_value(&profile)?),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_mix(cli: &Cli, path: &Path, start: u32, alpha: f64) -> Result<ExitCode, Error> {
    require_json(cli, "mix")?;
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha {alpha} outside (0,1)"
        )));
    }
    let graph = gio::load_graph(path)?;
    let spectral_report =
        spectral::spectral_report(&graph, spectral::DEFAULT_TOL, MethodHint::Auto)?;
    let rho = spectral_report.rho;
    let cap = walk::default_step_cap(graph.n(), graph.d(), rho, alpha);
    let t_mix = walk::mixing_time_tv(&graph, start, alpha, cap)?;
    let t_mix2 = walk::mixing_time_hellinger(&graph, start, alpha, cap)?;
    let bounds = walk::mix_bounds(graph.n(), graph.d(), rho, alpha);
    let config = json!({ "graph": path, "start": start, "alpha": alpha, "seed": cli.seed });
    emit_json(
        cli,
        "mix",
        config,
        json!({
            "n": graph.n(), "d": graph.d(), "rho": rho,
            "t_mix": t_mix, "t_mix2": t_mix2,
            "entropic_lb": bounds.entropic_lb,
            "spectral_ub": bounds.spectral_ub,
            "h_d": bounds.h_d,
            "step_cap": cap,
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad grid value `{s}`")))
        })
        .collect()
}

fn cmd_scan(cli: &Cli, args: &ScanArgs) -> Result<ExitCode, Error> {
    let mut owned: Vec<(String, Graph, bool)> = Vec::new();
    for path in &args.graphs {
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        owned.push((label, gio::load_graph(path)?, args.transitive));
    }
    for spec in &args.lps {
        let (p, q) = spec
            .split_once(':')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| Error::InvalidParameter(format!("expected p:q, got `{spec}`")))?;
        owned.push((
            format!("lps({p},{q})"),
            lps_graph(&LpsParams { p, q })?.graph,
            true,
        ));
    }
    for spec in &args.circulants {
        let fixture = parse_fixture(&format!("circulant:{spec}"))?;
        owned.push((format!("circulant({spec})"), named_fixture(&fixture)?, true));
    }
    if owned.is_empty() {
        return Err(Error::InvalidParameter(
            "scan needs at least one graph".into(),
        ));
    }

    let mut members = Vec::new();
    for (label, graph, transitive) in &owned {
        let rho = spectral::spectral_report(graph, args.tol, MethodHint::Auto)?.rho;
        members.push(FamilyMember {
            label: label.clone(),
            graph,
            transitive: *transitive,
            rho,
        });
    }
    let cfg = ScanConfig {
        alpha_grid: parse_grid(&args.alpha_grid)?,
        eps_grid: parse_grid(&args.eps_grid)?,
        ..ScanConfig::default()
    };
    let scan = analysis::cutoff_scan(&members, &cfg)?;
    let config = json!({
        "alpha_grid": cfg.alpha_grid, "eps_grid": cfg.eps_grid,
        "members": owned.iter().map(|(l, _, _)| l.clone()).collect::<Vec<_>>(),
        "seed": cli.seed, "tol": args.tol,
    });
    match cli.format {
        Format::Csv => emit_text(cli, &scan.to_csv(&csv_comments("scan", &config))),
        Format::Json => emit_json(cli, "scan", config, serde_json::to_value(&scan)?),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tree(cli: &Cli, d: usize, t: usize, stats: bool) -> Result<ExitCode, Error> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("d >= 3 required, got {d}")));
    }
    let config = json!({ "d": d, "t": t, "stats": stats });
    match (cli.format, stats) {
        (Format::Csv, true) => {
            emit_text(cli, &tree::stats_csv(d, t, &csv_comments("tree", &config)))
        }
        (Format::Csv, false) => emit_text(
            cli,
            &tree::distributions_csv(d, t, &csv_comments("tree", &config)),
        ),
        (Format::Json, true) => {
            let rows = tree::tree_f_stats_sweep(d, t);
            emit_json(cli, "tree", config, serde_json::to_value(&rows)?)
        }
        (Format::Json, false) => {
            let mut rows = Vec::new();
            let mut cur = tree::RadialDist::origin();
            for step in 0..=t {
                rows.push(json!({ "t": step, "q": cur.masses() }));
                if step < t {
                    cur = cur.step(d);
                }
            }
            emit_json(cli, "tree", config, serde_json::Value::Array(rows))
        }
    }?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, suite: &str, trials: usize) -> Result<ExitCode, Error> {
    require_json(cli, "verify")?;
    let include_lps = match suite {
        "all" => true,
        "quick" => false,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected `all` or `quick`)"
            )))
        }
    };
    let cfg = SuiteConfig {
        trials,
        seed: cli.seed,
        include_lps,
    };
    let reports = verify::run_full_suite(&cfg)?;
    for r in &reports {
        eprintln!(
            "{} {} (min margin {:+.3e}, {} trials)",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.min_margin,
            r.trials
        );
    }
    let all_pass = verify::all_pass(&reports);
    let config = json!({ "suite": suite, "trials": trials, "seed": cli.seed });
    emit_json(cli, "verify", config, serde_json::to_value(&reports)?)?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    })
}

#[derive(Deserialize)]
struct ScanEnvelope {
    data: CutoffScan,
}

fn cmd_report(
    cli: &Cli,
    scan_path: &Path,
    alpha: f64,
    alpha_prime: f64,
    svg: Option<&Path>,
) -> Result<ExitCode, Error> {
    require_json(cli, "report")?;
    let text = fs::read_to_string(scan_path)?;
    let envelope: ScanEnvelope = serde_json::from_str(&text)?;
    let scan = envelope.data;
    let ratio = analysis::cutoff_ratio(&scan, alpha, alpha_prime)?;
    let normalized = scan.normalized_times_at(alpha);
    let config = json!({ "scan": scan_path, "alpha": alpha, "alpha_prime": alpha_prime });
    if let Some(svg_path) = svg {
        let series = Series {
            label: format!("T({alpha}) * h_d / log n"),
            points: normalized
                .iter()
                .map(|&(_, n, v)| ((n as f64).ln(), v))
                .collect(),
        };
        let plot = line_plot(
            "normalized mixing time",
            "log n",
            "normalized time",
            &[series],
        );
        fs::write(svg_path, with_svg_header(&plot, "report", &config))?;
    }
    emit_json(
        cli,
        "report",
        config,
        json!({
            "normalized_times": normalized,
            "ratio": serde_json::to_value(&ratio)?,
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn parse_fixture(name: &str) -> Result<Fixture, Error> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["petersen"] => Ok(Fixture::Petersen),
        ["complete", k] => k
            .parse()
            .map(Fixture::Complete)
            .map_err(|_| Error::InvalidParameter(format!("bad complete size `{k}`"))),
        ["circulant", n, offsets] => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad circulant size `{n}`")))?;
            let offsets: Result<Vec<usize>, Error> = offsets
                .split(',')
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad offset `{s}`")))
                })
                .collect();
            Ok(Fixture::Circulant {
                n,
                offsets: offsets?,
            })
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown fixture `{name}` (expected petersen, complete:K, or circulant:N:S1,S2,...)"
        ))),
    }
}
