use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ropesweep::cutwidth::DEFAULT_UNDIRECTED_LIMIT;
use ropesweep_cli::experiments::{self, ExperimentOptions};
use ropesweep_cli::{Budget, CliError, SeedFormat, Sidecar};

#[derive(Parser)]
#[command(name = "ropesweep", version, about = "Rope sweeps of pseudoline arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// How arrangement arguments are given.
    #[arg(long, global = true, value_enum, default_value_t = SeedFormat::File)]
    seed_format: SeedFormat,
    /// Maximum number of ideals (or ropes) a single solve may expand.
    #[arg(long, global = true)]
    budget_ideals: Option<u64>,
    /// Wall-clock limit per solve, in seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cross-check optima with the rope-flip search.
    #[arg(long, global = true)]
    oracle: bool,
    /// Check hugging and the structural claims after every sweep move.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical word of every arrangement of n lines.
    Enumerate {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        long: bool,
        #[arg(long)]
        very_long: bool,
    },
    /// Run the primal-dual sweep and write its trace.
    Sweep {
        arrangement: String,
        /// JSON-lines trace output.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exact minimum rope-length.
    Optimal {
        arrangement: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Optimum statistics over all arrangements for a range of n.
    Experiments {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        long: bool,
        #[arg(long)]
        very_long: bool,
        /// Write 0 in the seconds column.
        #[arg(long)]
        no_timing: bool,
    },
    /// Draw an arrangement as SVG, optionally with ropes and faces.
    Render {
        arrangement: String,
        /// Output SVG; with several steps, `-<step>` is inserted before the extension.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Trace steps whose rope is drawn, one SVG each.
        #[arg(long, value_delimiter = ',')]
        step: Vec<usize>,
        /// JSON sidecar naming faces to highlight.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Exact (directed) cutwidth of a small graph.
    Cutwidth {
        graph: PathBuf,
        /// Also build the directed gadget graph and solve it.
        #[arg(long)]
        reduce: bool,
        #[arg(long, default_value_t = DEFAULT_UNDIRECTED_LIMIT)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write the lower-bound family member for k (n = 4k + 3).
    GenLowerBound {
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the worst-case family member on n lines.
    GenWorstCase {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sidecar_path(p: &std::path::Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = cli.common;
    let budget = Budget {
        ideals: common.budget_ideals,
        seconds: common.budget_seconds,
    };
    match cli.command {
        Command::Enumerate {
            n,
            out,
            count,
            long,
            very_long,
        } => {
            ropesweep_cli::check_scale(n, long, very_long)?;
            let total = if count {
                ropesweep::enumerate(n, |_| {})?
            } else {
                match &out {
                    Some(p) => {
                        let mut w = BufWriter::new(fs::File::create(p)?);
                        let c = ropesweep_cli::cmd_enumerate(n, &mut w)?;
                        w.flush()?;
                        c
                    }
                    None => {
                        let stdout = io::stdout();
                        let mut w = BufWriter::new(stdout.lock());
                        let c = ropesweep_cli::cmd_enumerate(n, &mut w)?;
                        w.flush()?;
                        c
                    }
                }
            };
            if count || out.is_some() {
                println!("{total}");
            }
        }
        Command::Sweep { arrangement, trace } => {
            let wd = ropesweep_cli::read_arrangement(&arrangement, common.seed_format)?;
            let verify = common.verify || cfg!(debug_assertions);
            let (summary, lines) = ropesweep_cli::cmd_sweep(&wd, verify)?;
            if let Some(p) = trace {
                fs::write(p, lines)?;
            }
            println!("{}", serde_json::to_string(&summary)?);
        }
        Command::Optimal { arrangement, format } => {
            let wd = ropesweep_cli::read_arrangement(&arrangement, common.seed_format)?;
            let record = ropesweep_cli::cmd_optimal(&wd, budget, common.oracle)?;
            match format {
                Format::Csv => print!("{}", ropesweep_cli::optimal_csv(&[record])?),
                _ => println!("{}", serde_json::to_string(&record)?),
            }
        }
        Command::Experiments {
            from,
            to,
            out,
            long,
            very_long,
            no_timing,
        } => {
            if from < 2 || from > to {
                return Err(CliError::Input(format!("bad range {from}..={to}")));
            }
            ropesweep_cli::check_scale(to, long, very_long)?;
            let opts = ExperimentOptions {
                search: ropesweep::optimal::SearchBudget {
                    max_ideals: budget.ideals.or(Some(ropesweep::optimal::DEFAULT_MAX_IDEALS)),
                    deadline: None,
                },
                instance_seconds: budget.seconds,
                max_types: None,
            };
            let mut rows = Vec::new();
            for n in from..=to {
                let result = experiments::run_experiment(n, opts)?;
                eprintln!(
                    "n={} types={} min={} max={} argmax={} ({} up to symmetry) {:.1}s{}",
                    n,
                    result.row.types,
                    result.row.min,
                    result.row.max,
                    result.row.argmax_count_raw,
                    result.row.argmax_count_mod_symmetry,
                    result.row.seconds,
                    if result.row.complete { "" } else { " PARTIAL" }
                );
                rows.push(result.row);
            }
            let csv = experiments::rows_to_csv(&rows, !no_timing).map_err(|e| CliError::Input(e.to_string()))?;
            write_output(out.as_ref(), &csv)?;
            if rows.iter().any(|r| !r.complete) {
                return Err(CliError::Resource("some instances exceeded the budget".into()));
            }
        }
        Command::Render {
            arrangement,
            out,
            trace,
            step,
            sidecar,
        } => {
            let wd = ropesweep_cli::read_arrangement(&arrangement, common.seed_format)?;
            let trace_text = trace.map(fs::read_to_string).transpose()?;
            let sidecar: Option<Sidecar> = match sidecar {
                Some(p) => Some(serde_json::from_str(&fs::read_to_string(p)?)?),
                None => None,
            };
            if step.len() <= 1 {
                let svg =
                    ropesweep_cli::cmd_render(&wd, trace_text.as_deref(), step.first().copied(), sidecar.as_ref())?;
                fs::write(&out, svg)?;
            } else {
                let stem = out.file_stem().unwrap_or_default().to_string_lossy().into_owned();
                let ext = out
                    .extension()
                    .map(|e| e.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "svg".into());
                for s in step {
                    let svg = ropesweep_cli::cmd_render(&wd, trace_text.as_deref(), Some(s), sidecar.as_ref())?;
                    fs::write(out.with_file_name(format!("{stem}-{s}.{ext}")), svg)?;
                }
            }
        }
        Command::Cutwidth {
            graph,
            reduce,
            limit,
            format,
        } => {
            let g = ropesweep_cli::read_graph(&graph)?;
            let report = ropesweep_cli::cmd_cutwidth(&g, reduce, limit)?;
            match format {
                Format::Text => {
                    print!("{}", report.witness_text());
                    if let Some(r) = &report.reduced {
                        print!("{}", r.witness_text());
                    }
                }
                _ => println!("{}", serde_json::to_string(&report)?),
            }
        }
        Command::GenLowerBound { k, out } => {
            let (text, sidecar) = ropesweep_cli::cmd_gen_lower_bound(k)?;
            emit_generated(out, &text, &sidecar)?;
        }
        Command::GenWorstCase { n, out } => {
            let (text, sidecar) = ropesweep_cli::cmd_gen_worst_case(n)?;
            emit_generated(out, &text, &sidecar)?;
        }
    }
    Ok(())
}

fn emit_generated(out: Option<PathBuf>, text: &str, sidecar: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            fs::write(&p, text)?;
            fs::write(sidecar_path(&p), sidecar)?;
        }
        None => {
            print!("{text}");
        }
    }
    Ok(())
}
