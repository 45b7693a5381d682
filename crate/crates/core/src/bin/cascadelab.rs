use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cascadelab::experiments::{self, ExperimentSummary, SweepParam};
use cascadelab::generators::GeneratorSpec;
use cascadelab::io::plot::{render_svg, Chart, Scale, Series};
use cascadelab::io::{config, edgelist, results};
use cascadelab::io::results::RunManifest;
use cascadelab::{Error, Result};

#[derive(Parser)]
#[command(name = "cascadelab", version, about = "Threshold cascades on random graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CASCADELAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Waxman,
    Ba,
    Price,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Ccdf,
    Sweep,
    Betweenness,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and write `graph.edges` (and `graph.pos` for Waxman).
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Waxman locality decay.
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        /// Target mean degree (Waxman, or ER instead of --q).
        #[arg(long)]
        z: Option<f64>,
        /// ER edge probability.
        #[arg(long)]
        q: Option<f64>,
        /// BA links per new node.
        #[arg(long)]
        m: Option<usize>,
        /// Price mean links per new node.
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Realization index; `--seed S --stream r` gives the graph of
        /// realization r in an experiment with master_seed S.
        #[arg(long, default_value_t = 0)]
        stream: usize,
        #[arg(long, env = "CASCADELAB_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Run one experiment from a config file.
    Experiment {
        config: PathBuf,
        #[arg(long, env = "CASCADELAB_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Run one experiment per parameter value.
    Sweep {
        config: PathBuf,
        /// One of s, z, c.
        #[arg(long)]
        param: SweepParam,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long, env = "CASCADELAB_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Mean degree of high-betweenness nodes on Waxman graphs.
    Betweenness {
        #[arg(long, value_delimiter = ',', required = true)]
        s_values: Vec<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6.0)]
        z: f64,
        #[arg(long, default_value_t = 30)]
        realizations: usize,
        #[arg(long, default_value_t = 0.03)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "CASCADELAB_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Render result files as an SVG chart.
    Plot {
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Network size for CCDFs when no `summary.json` sits next to the input.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        set_threads(threads)?;
    }
    let line = std::env::args().collect::<Vec<_>>().join(" ");
    match cli.command {
        Command::Generate { model, n, s, z, q, m, c, directed, seed, stream, out } => {
            let spec = generator_spec(model, n, s, z, q, m, c, directed)?;
            let manifest = RunManifest::new(&line, json!({ "generator": spec, "stream": stream }), seed);
            let g = spec.generate(experiments::graph_stream(seed, stream))?;
            std::fs::create_dir_all(&out)?;
            let mut outputs = vec!["graph.edges".to_string()];
            let pos_path = g.positions().map(|_| out.join("graph.pos"));
            if pos_path.is_some() {
                outputs.push("graph.pos".to_string());
            }
            edgelist::write_graph(&g, &out.join("graph.edges"), pos_path.as_deref())?;
            write_manifest(manifest, outputs, &out)?;
            let mean = if n > 0 { g.mean_degree()? } else { 0.0 };
            println!("{} nodes, {} edges, mean degree {mean:.4}", g.node_count(), g.edge_count());
        }
        Command::Experiment { config, out } => {
            let cfg = config::parse_config(&std::fs::read_to_string(&config)?)?;
            let manifest = RunManifest::new(&line, serde_json::to_value(&cfg)?, cfg.master_seed);
            let summary = experiments::run_experiment(&cfg)?;
            std::fs::create_dir_all(&out)?;
            write_experiment(&summary, &out)?;
            write_manifest(manifest, vec!["sizes.csv".into(), "summary.json".into()], &out)?;
            report("", &summary);
        }
        Command::Sweep { config, param, values, out } => {
            let cfg = config::parse_config(&std::fs::read_to_string(&config)?)?;
            let echo = json!({ "base": cfg, "param": param, "values": values });
            let manifest = RunManifest::new(&line, echo, cfg.master_seed);
            let rows = experiments::sweep(param, &values, &cfg)?;
            std::fs::create_dir_all(&out)?;
            let mut outputs = vec!["sweep.csv".to_string()];
            for (value, summary) in &rows {
                let sub = format!("{}={value}", param.name());
                std::fs::create_dir_all(out.join(&sub))?;
                write_experiment(summary, &out.join(&sub))?;
                outputs.push(format!("{sub}/sizes.csv"));
                outputs.push(format!("{sub}/summary.json"));
                report(&format!("{sub}: "), summary);
            }
            std::fs::write(out.join("sweep.csv"), results::format_sweep_csv(&rows))?;
            write_manifest(manifest, outputs, &out)?;
        }
        Command::Betweenness { s_values, n, z, realizations, tau, seed, out } => {
            let echo = json!({ "s_values": s_values, "n": n, "z": z, "realizations": realizations, "tau": tau });
            let manifest = RunManifest::new(&line, echo, seed);
            let points = experiments::betweenness_degree_experiment(&s_values, n, z, realizations, tau, seed)?;
            std::fs::create_dir_all(&out)?;
            std::fs::write(out.join("betweenness.csv"), results::format_betweenness_csv(&points))?;
            write_manifest(manifest, vec!["betweenness.csv".into()], &out)?;
            for p in &points {
                match p.mean_degree {
                    Some(ci) => println!("s={}: {:.3} [{:.3}, {:.3}] from {} realizations", p.s, ci.mean, ci.lo, ci.hi, p.used),
                    None => println!("s={}: no node above {tau}", p.s),
                }
            }
        }
        Command::Plot { kind, files, n, out } => {
            let chart = match kind {
                PlotKind::Ccdf => ccdf_chart(&files, n)?,
                PlotKind::Sweep => sweep_chart(&files)?,
                PlotKind::Betweenness => betweenness_chart(&files)?,
            };
            std::fs::write(&out, render_svg(&chart)?)?;
        }
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn set_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        return Err(Error::Validation("thread count must be >= 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Validation(e.to_string()))
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_threads: usize) -> Result<()> {
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generator_spec(
    model: Model,
    n: usize,
    s: f64,
    z: Option<f64>,
    q: Option<f64>,
    m: Option<usize>,
    c: Option<f64>,
    directed: bool,
) -> Result<GeneratorSpec> {
    let missing = |flag: &str| Error::Validation(format!("--{flag} is required for this model"));
    let spec = match model {
        Model::Er => {
            let q = match (q, z) {
                (Some(q), _) => q,
                (None, Some(z)) if n >= 2 => z / (n - 1) as f64,
                (None, Some(_)) => return Err(Error::Validation("--z needs n >= 2".into())),
                (None, None) => return Err(missing("q")),
            };
            GeneratorSpec::Er { n, q }
        }
        Model::Waxman => GeneratorSpec::Waxman { n, s, target_z: z.ok_or_else(|| missing("z"))? },
        Model::Ba => GeneratorSpec::Ba { n, m: m.ok_or_else(|| missing("m"))? },
        Model::Price => GeneratorSpec::Price { n, c: c.ok_or_else(|| missing("c"))?, directed },
    };
    spec.validate()?;
    Ok(spec)
}

fn write_experiment(summary: &ExperimentSummary, dir: &Path) -> Result<()> {
    std::fs::write(dir.join("sizes.csv"), results::format_sizes_csv(summary))?;
    std::fs::write(dir.join("summary.json"), results::format_summary_json(summary)?)?;
    Ok(())
}

fn write_manifest(manifest: RunManifest, outputs: Vec<String>, dir: &Path) -> Result<()> {
    manifest.finish(outputs).write(&dir.join("manifest.json"))
}

fn report(prefix: &str, s: &ExperimentSummary) {
    println!(
        "{prefix}frequency {:.4} [{:.4}, {:.4}], zero cascades {:.4}, {} shocks",
        s.frequency_mean,
        s.frequency_ci95.0,
        s.frequency_ci95.1,
        s.zero_fraction,
        s.total_shocks()
    );
}

/// Series label: the containing directory for the standard file names,
/// otherwise the file stem.
fn label(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("series");
    let standard = matches!(stem, "sizes" | "sweep" | "betweenness");
    match path.parent().and_then(Path::file_name).and_then(|s| s.to_str()) {
        Some(dir) if standard => dir.to_string(),
        _ => stem.to_string(),
    }
}

fn sibling_n(path: &Path) -> Result<Option<usize>> {
    let summary = path.with_file_name("summary.json");
    if !summary.exists() {
        return Ok(None);
    }
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&summary)?)?;
    Ok(value.get("n").and_then(serde_json::Value::as_u64).map(|n| n as usize))
}

fn ccdf_chart(files: &[PathBuf], n: Option<usize>) -> Result<Chart> {
    let mut series = Vec::new();
    for f in files {
        let rows = results::read_sizes_csv(f)?;
        let n = match n {
            Some(n) => n,
            None => sibling_n(f)?.ok_or_else(|| Error::Parse {
                location: f.display().to_string(),
                reason: "network size unknown: no summary.json alongside, pass --n".into(),
            })?,
        };
        let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        series.push(Series {
            label: label(f),
            points: experiments::ccdf(&sizes, n)?,
            error_bars: None,
            steps: true,
        });
    }
    Ok(Chart {
        title: "Cascade size CCDF".into(),
        x_label: "cascade size / n".into(),
        y_label: "P(size >= x)".into(),
        x_scale: Scale::Log,
        y_scale: Scale::Log,
        series,
    })
}

fn sweep_chart(files: &[PathBuf]) -> Result<Chart> {
    let mut series = Vec::new();
    for f in files {
        let rows = results::read_sweep_csv(f)?;
        series.push(Series {
            label: label(f),
            points: rows.iter().map(|r| (r.param_value, r.frequency_mean)).collect(),
            error_bars: Some(rows.iter().map(|r| (r.ci_lo, r.ci_hi)).collect()),
            steps: false,
        });
    }
    Ok(Chart {
        title: "Global cascade frequency".into(),
        x_label: "parameter value".into(),
        y_label: "frequency (95% CI)".into(),
        x_scale: Scale::Linear,
        y_scale: Scale::Linear,
        series,
    })
}

fn betweenness_chart(files: &[PathBuf]) -> Result<Chart> {
    let mut series = Vec::new();
    for f in files {
        let rows: Vec<_> = results::read_betweenness_csv(f)?
            .into_iter()
            .filter_map(|r| Some((r.s, r.mean_degree?, r.ci_lo?, r.ci_hi?)))
            .collect();
        series.push(Series {
            label: label(f),
            points: rows.iter().map(|&(s, m, _, _)| (s, m)).collect(),
            error_bars: Some(rows.iter().map(|&(_, _, lo, hi)| (lo, hi)).collect()),
            steps: false,
        });
    }
    Ok(Chart {
        title: "Degree of high-betweenness nodes".into(),
        x_label: "s".into(),
        y_label: "mean degree (95% CI)".into(),
        x_scale: Scale::Linear,
        y_scale: Scale::Linear,
        series,
    })
}
