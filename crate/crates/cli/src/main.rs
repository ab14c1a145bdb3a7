use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wna_cli::config::{parse_p, parse_phase, RRule, SweepSpec, Task};
use wna_cli::emit::{emit, Format};
use wna_cli::error::{CliError, Result};
use wna_cli::row::ReportRow;
use wna_cli::sweep::run_sweep_with_jobs;
use wna_cli::verify::{verify_rows, DEFAULT_GAP_CAP};
use wna_core::asymptotics::{main_term_c, main_term_l};
use wna_core::Exponent;

#[derive(Parser, Debug)]
#[command(name = "wna", version, about = "Sharp Fourier-sum errors on Weyl-Nagy classes: values, main terms, checks")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Relative accuracy target (overrides the config file).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads; the WNA_JOBS environment variable takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    /// Uniform error on W^r_{β,p}.
    C,
    /// L_p error on W^r_{β,1}.
    L,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, value_enum, default_value_t = Metric::C)]
    metric: Metric,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    n: u64,
    /// Exponent in [1, inf]; `inf` is accepted.
    #[arg(long, default_value = "2", value_parser = parse_p)]
    p: Exponent<f64>,
    /// Constant phase, or `seq:<seed>` for pseudorandom phases.
    #[arg(long, default_value = "0")]
    beta: String,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, conflicts_with = "task")]
    config: Option<PathBuf>,
    #[arg(long)]
    task: Option<String>,
    /// Comma-separated n values.
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated r values or `band:<count>`.
    #[arg(long)]
    r: Option<String>,
    /// Comma-separated exponents.
    #[arg(long)]
    p: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sharp value at one (r, n, p).
    Eval(PointArgs),
    /// Asymptotic main term and remainder scale at one (r, n, p).
    MainTerm(PointArgs),
    /// Run a theorem, lemma or sum check and exit 1 if any point fails.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Cap on |normalized gap| for theorem rows.
        #[arg(long, default_value_t = DEFAULT_GAP_CAP)]
        cap: f64,
    },
    /// Run a sweep from a config file and write the report.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Special-function identity report.
    Identities,
}

fn usage(key: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Range { key, msg: msg.into() }
}

fn load_config(path: &PathBuf) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| usage("config", format!("{}: {e}", path.display())))?;
    wna_cli::parse_config(&text)
}

fn grid_spec(g: &GridArgs) -> Result<SweepSpec> {
    if let Some(path) = &g.config {
        return load_config(path);
    }
    let mut text = String::new();
    let task = g.task.as_deref().ok_or_else(|| usage("task", "or --config is required"))?;
    text.push_str(&format!("task={task}\n"));
    for (key, v) in [("n", &g.n), ("r", &g.r), ("p", &g.p)] {
        if let Some(v) = v {
            text.push_str(&format!("{key}={v}\n"));
        }
    }
    if task.eq_ignore_ascii_case("identities") && g.n.is_none() {
        text.push_str("n=1\n");
    }
    wna_cli::parse_config(&text)
}

fn point_spec(a: &PointArgs, tol: Option<f64>) -> Result<SweepSpec> {
    let task = match a.metric {
        Metric::C => Task::EvalC,
        Metric::L => Task::EvalL,
    };
    let mut spec = SweepSpec::new(task, vec![a.n]);
    spec.r_rule = RRule::Explicit(vec![a.r]);
    spec.p_values = vec![a.p];
    spec.phase = parse_phase(&a.beta).map_err(|m| usage("beta", m))?;
    if let Some(t) = tol {
        spec.accuracy.tol = t;
    }
    spec.validate()?;
    Ok(spec)
}

fn main_term_row(a: &PointArgs) -> Result<ReportRow> {
    let (m, task) = match a.metric {
        Metric::C => (main_term_c(a.p, a.r, a.n)?, "main-termC"),
        Metric::L => (main_term_l(a.p, a.r, a.n)?, "main-termL"),
    };
    Ok(ReportRow {
        task: task.into(),
        p: a.p.value(),
        r: a.r,
        n: a.n,
        beta: "-".into(),
        computed_mantissa: f64::NAN,
        log10_scale: m.main.log10_scale(),
        main_mantissa: m.main.mantissa,
        remainder_mantissa: m.remainder_scale.mantissa,
        gap: f64::NAN,
        normalized_gap: f64::NAN,
        regime: m.regime.label().into(),
        formula_id: m.formula_id.as_str().into(),
        quad_err: f64::NAN,
    })
}

fn run(cli: Cli) -> Result<bool> {
    let format = match cli.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
    };
    let (rows, verdict_task, cap, out) = match &cli.command {
        Command::Eval(a) => {
            let spec = point_spec(a, cli.tol)?;
            (run_sweep_with_jobs(&spec, cli.jobs)?, None, 0.0, cli.out.clone())
        }
        Command::MainTerm(a) => (vec![main_term_row(a)?], None, 0.0, cli.out.clone()),
        Command::Verify { grid, cap } => {
            let mut spec = grid_spec(grid)?;
            if let Some(t) = cli.tol {
                spec.accuracy.tol = t;
            }
            let out = cli.out.clone().or(spec.out.clone());
            (run_sweep_with_jobs(&spec, cli.jobs)?, Some(spec.task), *cap, out)
        }
        Command::Sweep { config } => {
            let mut spec = load_config(config)?;
            if let Some(t) = cli.tol {
                spec.accuracy.tol = t;
            }
            let out = cli.out.clone().or(spec.out.clone());
            let rows = run_sweep_with_jobs(&spec, cli.jobs)?;
            let failed = rows.iter().filter(|r| r.is_error()).count();
            if failed > 0 {
                eprintln!("{failed} of {} points failed; see error rows", rows.len());
            }
            (rows, None, 0.0, out)
        }
        Command::Identities => (wna_cli::identities::identity_rows()?, Some(Task::Identities), 0.0, cli.out.clone()),
    };
    emit(&rows, format, out.as_deref())?;
    let Some(task) = verdict_task else {
        return Ok(!rows.iter().any(|r| r.is_error()));
    };
    let v = verify_rows(task, &rows, cap);
    for f in &v.failures {
        eprintln!("FAIL row {}: {}", f.row, f.reason);
    }
    eprintln!(
        "{}: {} rows, {} failures, max |normalized gap| {:.6e}",
        task,
        v.checked,
        v.failures.len(),
        v.max_normalized_gap
    );
    Ok(v.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
