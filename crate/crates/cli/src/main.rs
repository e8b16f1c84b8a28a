use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use kgb_core::benchgen::{audit, generate, BenchConfig, BenchDir};
use kgb_core::metrics::{evaluate_run, EvalReport};
use kgb_core::pipeline::{run_increments, validate_pipeline, Engine, PipelineFile, Registry, RunLayout};
use kgb_core::ranking::{rank_cohort, render_table, WeightScheme};

/// Generate benchmarks, run KG integration pipelines over them, and evaluate
/// and rank the results.
#[derive(Parser)]
#[command(name = "kgb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark bundle.
    Gen(GenArgs),
    /// Statically validate a pipeline file.
    Validate {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run a pipeline over increments 1..=N of a bundle.
    Run(RunArgs),
    /// Compute metric reports for the KGs of a run.
    Eval(EvalArgs),
    /// Rank pipelines from their evaluation reports.
    Rank(RankArgs),
    /// Recheck the construction constraints of a bundle.
    Audit {
        #[arg(long)]
        bench: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    films: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    bench: PathBuf,
    #[arg(long, default_value_t = 3)]
    increments: usize,
    #[arg(long)]
    out: PathBuf,
    /// Remove the output directory first.
    #[arg(long)]
    clean: bool,
    /// Config override `key=value` or `taskId.key=value`; values parse as
    /// JSON, falling back to a string.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    bench: PathBuf,
    /// Glob matching the `kg_<i>.nt` files of one run.
    #[arg(long)]
    kg: String,
    /// Staging root of the run (holding `inc<i>` directories).
    #[arg(long)]
    artifacts: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    /// Glob matching `eval_<i>.json` reports, one per pipeline.
    #[arg(long)]
    reports: String,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    scheme: Option<String>,
    /// Rank under all five weighting schemes.
    #[arg(long)]
    all: bool,
    /// Directory receiving `ranking_<scheme>.{json,txt}`.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Invalid(String),
    Runtime(String),
}

type Outcome = Result<(), Failure>;

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn expand(pattern: &str) -> Result<Vec<PathBuf>, Failure> {
    let mut paths: Vec<PathBuf> = glob::glob(pattern).map_err(runtime)?.collect::<Result<_, _>>().map_err(runtime)?;
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Runtime(format!("no files match {pattern}")));
    }
    Ok(paths)
}

fn parse_overrides(items: &[String]) -> Result<Map<String, Value>, Failure> {
    let mut out = Map::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .filter(|(k, _)| !k.is_empty())
            .ok_or_else(|| Failure::Invalid(format!("--set expects KEY=VALUE, got {item:?}")))?;
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        out.insert(k.to_string(), value);
    }
    Ok(out)
}

fn validate_file(file: &PipelineFile, engine: &Engine) -> Outcome {
    let mut lines = Vec::new();
    for stage in file.stages() {
        if let Err(violations) = validate_pipeline(&engine.effective_spec(stage), engine.registry()) {
            lines.extend(violations.iter().map(|v| format!("{}: {v}", stage.name)));
        }
    }
    if lines.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(lines.join("\n")))
    }
}

fn cmd_gen(a: &GenArgs) -> Outcome {
    let config = BenchConfig::with_films(a.films, a.seed);
    config.validate().map_err(|e| Failure::Invalid(e.to_string()))?;
    let manifest = generate(&config, &a.out).map_err(runtime)?;
    println!(
        "generated {} films in {} splits at {}",
        manifest.config.n_films,
        manifest.config.n_splits,
        a.out.display()
    );
    Ok(())
}

fn cmd_validate(spec: &Path) -> Outcome {
    let file = PipelineFile::load(spec).map_err(|e| Failure::Invalid(e.to_string()))?;
    validate_file(&file, &Engine::new(Registry::standard()))?;
    println!("{}: valid ({} stage(s))", file.name(), file.stages().len());
    Ok(())
}

fn cmd_run(a: &RunArgs) -> Outcome {
    if a.increments == 0 {
        return Err(Failure::Runtime("increments must be ≥ 1".into()));
    }
    let file = PipelineFile::load(&a.spec).map_err(|e| Failure::Invalid(e.to_string()))?;
    let bench = BenchDir::open(&a.bench).map_err(runtime)?;
    let engine = Engine::new(Registry::standard())
        .with_ontology(bench.ontology().map_err(runtime)?)
        .with_overrides(parse_overrides(&a.overrides)?);
    validate_file(&file, &engine)?;
    if a.clean && a.out.exists() {
        std::fs::remove_dir_all(&a.out).map_err(runtime)?;
    }
    let work_root = std::env::var_os("KGB_WORKDIR").map(PathBuf::from).unwrap_or_else(|| a.out.join("work"));
    let layout = RunLayout { bench_dir: a.bench.clone(), out_dir: a.out.clone(), work_root };
    let outcomes = run_increments(&engine, &file, &layout, a.increments).map_err(runtime)?;
    for (i, o) in outcomes.iter().enumerate() {
        let warnings: usize = o.report.tasks.iter().map(|t| t.warnings.len()).sum();
        println!(
            "increment {}: {} in {:.3} s, {warnings} warning(s)",
            i + 1,
            layout.kg_path(i + 1).display(),
            o.report.total_duration_seconds
        );
    }
    Ok(())
}

fn cmd_eval(a: &EvalArgs) -> Outcome {
    let bench = BenchDir::open(&a.bench).map_err(runtime)?;
    let kgs = expand(&a.kg)?;
    let reports = evaluate_run(&bench, &kgs, a.artifacts.as_deref(), &a.out).map_err(runtime)?;
    for r in &reports {
        let kg = &r.reference.fuzzy_reference_kg;
        println!(
            "{} increment {}: facts {}, O_Avg {:.3}, ~R_KG p {:.3} r {:.3}",
            r.pipeline, r.increment, r.statistics.fact_count, r.semantic.average, kg.precision, kg.recall
        );
    }
    Ok(())
}

fn cmd_rank(a: &RankArgs) -> Outcome {
    let mut cohort = Vec::new();
    for p in expand(&a.reports)? {
        let text = std::fs::read_to_string(&p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?;
        cohort.push(EvalReport::from_json(&text).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?);
    }
    let schemes = match &a.scheme {
        Some(name) => vec![WeightScheme::builtin(name).map_err(|e| Failure::Invalid(e.to_string()))?],
        None => WeightScheme::all(),
    };
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(runtime)?;
    }
    for scheme in &schemes {
        let ranked = rank_cohort(&cohort, scheme).map_err(runtime)?;
        let table = render_table(scheme, &ranked);
        print!("{table}");
        if let Some(dir) = &a.out {
            let json = serde_json::json!({ "scheme": scheme, "ranking": ranked });
            let base = dir.join(format!("ranking_{}", scheme.name));
            std::fs::write(base.with_extension("json"), serde_json::to_string_pretty(&json).map_err(runtime)? + "\n")
                .map_err(runtime)?;
            std::fs::write(base.with_extension("txt"), &table).map_err(runtime)?;
        }
    }
    Ok(())
}

fn cmd_audit(bench: &Path) -> Outcome {
    let report = audit(&BenchDir::open(bench).map_err(runtime)?).map_err(runtime)?;
    println!("split films {:?}", report.split_film_counts);
    if report.is_clean() {
        println!("audit clean");
        return Ok(());
    }
    let lines: Vec<String> = report.violations.iter().map(|v| format!("{:?}: {}", v.check, v.message)).collect();
    Err(Failure::Invalid(lines.join("\n")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Validate { spec } => cmd_validate(spec),
        Command::Run(a) => cmd_run(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Audit { bench } => cmd_audit(bench),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
