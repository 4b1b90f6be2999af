//! `commgraph`: reports and sweeps over commuting graphs of generalized
//! dihedral groups.
//!
//! Exit codes: 0 when every checked invariant agrees, 2 when any formula
//! disagrees with its oracle, 1 on usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use commgraph_core::cache::{default_cache_path, Cache};
use commgraph_core::invariants::construct_coloring;
use commgraph_core::report::{
    Caps, Fault, InvariantReport, ReportBody, ReportOptions, DEFAULT_GRAPH_CAP,
};
use commgraph_core::sweep::{self, parse_family, report_with_cache, run_sweep, summarize};
use commgraph_core::{build_commuting_graph, AbelianGroup, DihedralGroup, Error, VertexSelector};

#[derive(Parser)]
#[command(
    name = "commgraph",
    version,
    about = "Commuting graphs of generalized dihedral groups D(G)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of one group, closed form against exact search.
    Report(ReportArgs),
    /// Run the report over a family of groups and emit one CSV row per group.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Largest detour-oracle graph (vertices).
    #[arg(long, default_value_t = 20)]
    max_detour_vertices: usize,
    /// Largest metric-dimension / resolving-polynomial graph (vertices).
    #[arg(long, default_value_t = 16)]
    max_resolving_vertices: usize,
    /// Largest chromatic-oracle graph (vertices).
    #[arg(long, default_value_t = 24)]
    max_chromatic_vertices: usize,
    /// Largest commuting graph that is built at all (vertices).
    #[arg(long, default_value_t = DEFAULT_GRAPH_CAP)]
    max_graph_vertices: usize,
    /// Report closed forms only.
    #[arg(long)]
    skip_oracles: bool,
    /// Bypass the result cache.
    #[arg(long)]
    no_cache: bool,
    /// Include per-phase timings (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
    /// Add one to the named formula, to exercise the disagreement path.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// Group spec, e.g. `Z4xZ3`.
    spec: String,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the commuting graph as Graphviz DOT.
    #[arg(long, value_name = "PATH")]
    export_dot: Option<PathBuf>,
    /// Write the 0/1 adjacency matrix as CSV.
    #[arg(long, value_name = "PATH")]
    export_adj: Option<PathBuf>,
    /// Write the part-wise coloring as JSON (label -> color).
    #[arg(long, value_name = "PATH")]
    export_coloring: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// `all-abelian` or a comma-separated list of specs.
    family: String,
    /// Upper order for `all-abelian`.
    #[arg(long)]
    max_order: Option<u64>,
    /// Write rows to this CSV file instead of stdout.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Print one JSON report per line instead of CSV.
    #[arg(long)]
    json: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 4)]
    jobs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

impl CommonArgs {
    fn options(&self) -> Result<ReportOptions, Error> {
        Ok(ReportOptions {
            caps: Caps {
                graph_vertices: self.max_graph_vertices,
                detour_vertices: self.max_detour_vertices,
                resolving_vertices: self.max_resolving_vertices,
                chromatic_vertices: self.max_chromatic_vertices,
                skip_oracles: self.skip_oracles,
            },
            fault: self
                .inject_fault
                .as_deref()
                .map(str::parse::<Fault>)
                .transpose()?,
            timings: self.timings,
        })
    }

    fn cache(&self) -> Result<Option<Cache>, Error> {
        if self.no_cache {
            return Ok(None);
        }
        let (cache, warnings) = Cache::open(default_cache_path())?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        Ok(Some(cache))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Report(args) => report(args),
        Command::Sweep(args) => sweep(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn write(path: &PathBuf, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn print_disagreements(report: &InvariantReport) {
    for d in &report.disagreements {
        eprintln!(
            "DISAGREE {} {}: formula {} oracle {}; witness: {}",
            report.spec, d.invariant, d.formula, d.oracle, d.witness
        );
    }
}

fn report(args: ReportArgs) -> Result<bool, Error> {
    let group = AbelianGroup::parse(&args.spec)?;
    let options = args.common.options()?;
    let cache = args.common.cache()?;
    let report = report_with_cache(&group, &options, cache.as_ref())?;

    if args.export_dot.is_some() || args.export_adj.is_some() || args.export_coloring.is_some() {
        let d = DihedralGroup::new(group.clone());
        let graph = build_commuting_graph(&d, &VertexSelector::All)?;
        if let Some(path) = &args.export_dot {
            write(path, &graph.to_dot())?;
        }
        if let Some(path) = &args.export_adj {
            write(path, &graph.to_adjacency_csv())?;
        }
        if let Some(path) = &args.export_coloring {
            let colors: Vec<usize> = match graph.parts() {
                Some(_) => construct_coloring(&graph)?.colors,
                None => (0..graph.vertex_count()).collect(),
            };
            let map: BTreeMap<String, usize> = graph.labels().into_iter().zip(colors).collect();
            write(
                path,
                &serde_json::to_string_pretty(&map).expect("map serializes"),
            )?;
        }
    }

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print_text(&report);
    }
    print_disagreements(&report);
    Ok(report.agree_all)
}

fn print_text(report: &InvariantReport) {
    println!("{}  n={} r={}", report.spec, report.n, report.r);
    let full = match &report.body {
        ReportBody::Abelian(a) => {
            println!(
                "D(G) is abelian: commuting graph {} (degree {}, {} edges)",
                a.graph, a.degree, a.edges
            );
            return;
        }
        ReportBody::Full(f) => f,
    };
    let json = serde_json::to_value(full).expect("report serializes");
    let row = |name: &str, v: &serde_json::Value| {
        let show = |x: &serde_json::Value| match x {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        println!(
            "  {name:<22} formula {:<10} oracle {:<10} {}",
            show(&v["formula"]),
            show(&v["oracle"]),
            if v["agree"] == true {
                "agree"
            } else if v["oracle"] == "unchecked" {
                "unchecked"
            } else {
                "DISAGREE"
            }
        );
    };
    println!(
        "  structure              {}  edge sets equal: {}",
        full.structure.decomposition, json["structure"]["edge_sets_equal"]
    );
    for part in ["omega1", "omega2", "omega3"] {
        row(&format!("degree {part}"), &json["degrees"][part]);
    }
    row("edges", &json["edges"]);
    row("chromatic number", &json["chromatic"]["number"]);
    row("coloring construction", &json["chromatic"]["construction"]);
    for part in ["omega1", "omega2", "omega3"] {
        row(&format!("detour ecc {part}"), &json["detour"]["ecc"][part]);
    }
    row("detour radius", &json["detour"]["radius"]);
    row("detour diameter", &json["detour"]["diameter"]);
    row("metric dimension", &json["resolving"]["beta"]);
    let poly = &full.resolving.poly;
    println!(
        "  resolving polynomial   {}  oracle: {}",
        poly.formula
            .as_ref()
            .map_or("(not expanded)".to_string(), |p| p.to_string()),
        poly.oracle
            .value()
            .map_or("unchecked".to_string(), |_| if poly.agree {
                "agree".into()
            } else {
                "DISAGREE".into()
            })
    );
    println!(
        "  checks: {} agree, {} disagree, {} unchecked",
        report.checks.agree, report.checks.disagree, report.checks.unchecked
    );
}

fn sweep(args: SweepArgs) -> Result<bool, Error> {
    let groups = parse_family(&args.family, args.max_order)?;
    let options = args.common.options()?;
    let cache = args.common.cache()?;
    let reports = run_sweep(&groups, &options, cache.as_ref(), args.jobs)?;

    if args.json {
        for r in &reports {
            println!("{}", serde_json::to_string(r).expect("report serializes"));
        }
    }
    let csv = sweep::to_csv(&reports);
    match &args.csv {
        Some(path) => write(path, &csv)?,
        None if !args.json => print!("{csv}"),
        None => {}
    }
    for r in &reports {
        print_disagreements(r);
    }
    let s = summarize(&reports);
    eprintln!(
        "{} rows, {} with disagreements; checks: {} agree, {} disagree, {} unchecked",
        s.rows, s.rows_with_disagreement, s.checks.agree, s.checks.disagree, s.checks.unchecked
    );
    Ok(s.rows_with_disagreement == 0)
}
