use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dixmier_core::catalog;
use dixmier_core::traces::ScaleKind;
use dixmier_core::weight::WeightSpec;
use dixmier_harness::config::{ExperimentConfig, ExperimentKind, GridConfig, QuantizationConfig};
use dixmier_harness::error::{HarnessError, Result};
use dixmier_harness::{csvio, init_threads, report, run, suite};

#[derive(Parser)]
#[command(name = "dixmier", version, about = "Singular traces, extrapolation norms and Weyl symbols")]
struct Cli {
    /// Run the experiment described in a JSON config instead of a subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write tabular samples here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Write the full report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Weight diagnostics.
    Psi {
        #[command(subcommand)]
        cmd: PsiCmd,
    },
    /// Extrapolation and Lorentz norms of a profile.
    Lorentz {
        #[command(subcommand)]
        cmd: LorentzCmd,
    },
    /// The four trace functionals side by side.
    Trace {
        #[command(subcommand)]
        cmd: TraceCmd,
    },
    /// Karamata identity on a catalog case.
    Karamata {
        #[command(subcommand)]
        cmd: KaramataCmd,
    },
    /// Quantize a symbol and compare operator and symbol sides.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Seeded suites and the standard experiments.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// List built-in ids.
    Catalog,
}

#[derive(Subcommand)]
enum PsiCmd {
    Inspect {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
}

#[derive(Args)]
struct ProfileArgs {
    /// Catalog id.
    #[arg(long, conflicts_with = "profile_csv")]
    profile: Option<String>,
    /// `knot,value` file.
    #[arg(long)]
    profile_csv: Option<PathBuf>,
    /// Weight as JSON, e.g. '{"family":"iterlog","n":1,"beta":1}'.
    #[arg(long)]
    psi: Option<String>,
}

#[derive(Subcommand)]
enum LorentzCmd {
    Report {
        #[command(flatten)]
        p: ProfileArgs,
    },
}

#[derive(Subcommand)]
enum TraceCmd {
    Compare {
        #[command(flatten)]
        p: ProfileArgs,
        #[arg(long, default_value_t = 30.0)]
        rmax: f64,
        #[arg(long, default_value_t = 36)]
        points: usize,
    },
}

#[derive(Subcommand)]
enum KaramataCmd {
    Check {
        #[arg(long)]
        case: String,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    Run {
        #[arg(long)]
        symbol: String,
        #[arg(long = "L", default_value_t = 12.0)]
        l: f64,
        #[arg(long = "N", default_value_t = 512)]
        n: usize,
        #[arg(long)]
        psi: Option<String>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    All {
        /// Directory for all suite outputs.
        #[arg(long, default_value = "dixmier-suite")]
        out: PathBuf,
    },
}

fn parse_psi(s: &Option<String>) -> Result<Option<WeightSpec>> {
    s.as_deref()
        .map(|t| serde_json::from_str(t).map_err(|e| HarnessError::Config(format!("--psi: {e}"))))
        .transpose()
}

fn with_profile(mut c: ExperimentConfig, p: &ProfileArgs) -> Result<ExperimentConfig> {
    c.profile = p.profile.clone();
    c.profile_csv = p.profile_csv.clone();
    if let Some(w) = parse_psi(&p.psi)? {
        c.weight = w;
    }
    Ok(c)
}

fn config_for(cmd: &Command) -> Result<Option<ExperimentConfig>> {
    let c = match cmd {
        Command::Psi { cmd: PsiCmd::Inspect { family, n, beta } } => {
            let mut c = ExperimentConfig::new(ExperimentKind::PsiReport);
            c.weight = match family.as_str() {
                "iterlog" => WeightSpec::Iterlog { n: *n, beta: *beta },
                "exppow" => WeightSpec::Exppow { n: *n, beta: *beta },
                other => return Err(HarnessError::Config(format!("unknown family `{other}`, expected iterlog or exppow"))),
            };
            c
        }
        Command::Lorentz { cmd: LorentzCmd::Report { p } } => with_profile(ExperimentConfig::new(ExperimentKind::LorentzReport), p)?,
        Command::Trace { cmd: TraceCmd::Compare { p, rmax, points } } => {
            let mut c = with_profile(ExperimentConfig::new(ExperimentKind::TraceCompare), p)?;
            c.grid = Some(GridConfig { kind: ScaleKind::Exponent, min: 2.0, max: *rmax, points: *points });
            c
        }
        Command::Karamata { cmd: KaramataCmd::Check { case } } => {
            let mut c = ExperimentConfig::new(ExperimentKind::Karamata);
            c.karamata = Some(case.clone());
            c
        }
        Command::Weyl { cmd: WeylCmd::Run { symbol, l, n, psi } } => {
            let mut c = ExperimentConfig::new(ExperimentKind::WeylCompare);
            c.symbol = Some(symbol.clone());
            c.quantization = Some(QuantizationConfig { l: *l, n: *n });
            if let Some(w) = parse_psi(psi)? {
                c.weight = w;
            }
            c
        }
        Command::Suite { .. } | Command::Catalog => return Ok(None),
    };
    Ok(Some(c))
}

fn run_one(mut c: ExperimentConfig, cli: &Cli) -> Result<bool> {
    if cli.csv.is_some() {
        c.outputs.csv = cli.csv.clone();
    }
    if cli.json.is_some() {
        c.outputs.json = cli.json.clone();
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    let r = run(&c)?;
    print!("{}", report::render(&r));
    Ok(true)
}

/// Sandwich suite plus the standard experiments, all written under `out`.
fn suite_all(out: &Path, cli: &Cli) -> Result<bool> {
    let seed = cli.seed.unwrap_or(0);
    let s = suite::sandwich_suite(seed)?;
    let csv = cli.csv.clone().unwrap_or_else(|| out.join("sandwich.csv"));
    csvio::write_file(&csv, s.csv().as_bytes())?;
    let summary = serde_json::json!({ "seed": s.seed, "checked": s.checked, "violations": s.violations });
    let json = cli.json.clone().unwrap_or_else(|| out.join("sandwich.json"));
    csvio::write_file(&json, serde_json::to_string_pretty(&summary).expect("json").as_bytes())?;
    println!("sandwich: {} checked, {} violations (seed {seed})", s.checked, s.violations);

    let mut runs: Vec<(String, ExperimentConfig)> = Vec::new();
    let mut trace = ExperimentConfig::new(ExperimentKind::TraceCompare);
    trace.profile = Some("harmonic".into());
    runs.push(("trace_harmonic".into(), trace));
    for (name, spec) in [
        ("psi_iterlog_1_1", WeightSpec::Iterlog { n: 1, beta: 1.0 }),
        ("psi_exppow_1_0.25", WeightSpec::Exppow { n: 1, beta: 0.25 }),
        ("psi_exppow_1_0.5", WeightSpec::Exppow { n: 1, beta: 0.5 }),
        ("psi_exppow_1_0.75", WeightSpec::Exppow { n: 1, beta: 0.75 }),
    ] {
        let mut c = ExperimentConfig::new(ExperimentKind::PsiReport);
        c.weight = spec;
        runs.push((name.into(), c));
    }
    for id in ["power1", "power2", "perturbed_linear"] {
        let mut c = ExperimentConfig::new(ExperimentKind::Karamata);
        c.karamata = Some(id.into());
        runs.push((format!("karamata_{id}"), c));
    }
    for (name, mut c) in runs {
        c.seed = seed;
        c.outputs.csv = Some(out.join(format!("{name}.csv")));
        c.outputs.json = Some(out.join(format!("{name}.json")));
        let r = run(&c)?;
        let verdicts: Vec<String> = r.verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{name}: {}", verdicts.join(" "));
    }
    Ok(s.violations == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<bool> {
        init_threads()?;
        match (&cli.config, &cli.command) {
            (Some(_), Some(_)) => Err(HarnessError::Config("give either --config or a subcommand".into())),
            (Some(path), None) => run_one(ExperimentConfig::load(path)?, &cli),
            (None, None) => Err(HarnessError::Config("no subcommand; try --help".into())),
            (None, Some(Command::Catalog)) => {
                print!("{}", report::render_catalog(&catalog::catalog()));
                Ok(true)
            }
            (None, Some(Command::Suite { cmd: SuiteCmd::All { out } })) => suite_all(out, &cli),
            (None, Some(cmd)) => run_one(config_for(cmd)?.expect("experiment command"), &cli),
        }
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
