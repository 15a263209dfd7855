//! Command line interface for the mismatch-norm graph similarity toolkit.
//!
//! Exit codes: 0 on success (all checks passed), 1 when a verification
//! found a counterexample, 2 on usage, precondition or resource errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mismatch_cli::claims::{self, ClaimParams, CLAIMS};
use mismatch_cli::ops::{self, DeltaSpec, GenSpec};
use mismatch_cli::{formats, pipeline, registry, render_report_text};
use mismatch_core::graph::Graph;
use mismatch_core::solve;

#[derive(Parser)]
#[command(name = "mismatch", version, about = "Graph similarity via mismatch norms: generators, exact solvers and a claim verification harness")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for all sampled checks (recorded in reports)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node-expansion budget for searches
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory to write artifacts into (otherwise stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a gadget-family graph plus sidecar structure metadata
    Gen {
        /// gq, dnq, hk, hat-g or hat-h
        #[arg(long)]
        family: String,
        /// Core fixture id (gq, hat-g), e.g. k4, k33, q3
        #[arg(long)]
        core: Option<String>,
        /// Clique parameter (gq, dnq); defaults to 3n+4
        #[arg(long)]
        q: Option<usize>,
        /// Cycle order (dnq)
        #[arg(long)]
        n: Option<usize>,
        /// Half-order (hk, hat-h)
        #[arg(long)]
        k: Option<usize>,
        /// Base name of the emitted files
        #[arg(long)]
        name: Option<String>,
    },
    /// Compute a mismatch-norm distance between two graphs
    Delta {
        /// Left graph: fixture id or file path
        g: String,
        /// Right graph: fixture id or file path
        h: String,
        /// edit, p1, p2, abs-p2, or p (with --p)
        #[arg(long)]
        metric: String,
        /// Exponent for --metric p
        #[arg(long)]
        p: Option<f64>,
        /// exhaustive, bnb or restricted
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Decide "distance <= c" instead of minimising to the end
        #[arg(long)]
        threshold: Option<f64>,
        /// Partition sidecar for restricted mode
        #[arg(long)]
        restricted_meta: Option<PathBuf>,
    },
    /// Emit a Cayley table, its Latin square graph, or the twinned pair
    Latin {
        /// trivial, z<n>, z2z2, s3, or product:<a>*<b>
        #[arg(long)]
        group: String,
        /// table, graph or twinned-alignment
        #[arg(long)]
        emit: String,
    },
    /// Run one registered claim check
    Verify {
        /// Claim id, e.g. fact-3.1 or prop-A.1
        claim: String,
        /// Sample count for sampled claims
        #[arg(long)]
        samples: Option<usize>,
        /// Largest catalog order (fact-3.1)
        #[arg(long)]
        max_n: Option<usize>,
        /// Group spec for the Latin-square claims
        #[arg(long)]
        gamma: Option<String>,
        /// Core fixture filter for the gadget claims
        #[arg(long)]
        core: Option<String>,
        /// Enumerate families exhaustively even when large
        #[arg(long)]
        exhaustive: bool,
    },
    /// List the registered claims
    Claims,
    /// Run a JSON config of gen, delta and verify stages
    Pipeline {
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(id_or_path: &str) -> Result<Graph> {
    if let Ok(g) = registry::named_graph(id_or_path) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(id_or_path)
        .with_context(|| format!("{id_or_path} is neither a fixture id nor a readable file"))?;
    Ok(formats::graph_from_str(&text)?)
}

fn write_or_print(out: &Option<PathBuf>, name: &str, contents: &str) -> Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            std::fs::write(&path, contents)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = cli.budget.unwrap_or(solve::DEFAULT_BUDGET);
    match cli.cmd {
        Cmd::Gen { family, core, q, n, k, name } => {
            let spec = GenSpec { family, core, q, n, k, name };
            let out = ops::generate(&spec)?;
            let (file, body) = match cli.format {
                Format::Json => (format!("{}.json", out.name), formats::graph_to_json(&out.graph)),
                Format::Text => (format!("{}.g", out.name), formats::graph_to_text(&out.graph)?),
            };
            write_or_print(&cli.out, &file, &body)?;
            write_or_print(
                &cli.out,
                &format!("{}.meta.json", out.name),
                &serde_json::to_string(&out.meta)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Delta { g, h, metric, p, mode, threshold, restricted_meta } => {
            let left = load_graph(&g)?;
            let right = load_graph(&h)?;
            let family = match restricted_meta {
                Some(path) => Some(ops::family_from_json(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            let spec = DeltaSpec { metric, p, mode, threshold, budget };
            let result = ops::run_delta(&left, &right, &spec, family.as_ref())?;
            write_or_print(&cli.out, "delta.json", &serde_json::to_string(&result)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Latin { group, emit } => {
            let value = ops::run_latin(&group, &emit)?;
            write_or_print(&cli.out, &format!("latin-{emit}.json"), &serde_json::to_string(&value)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { claim, samples, max_n, gamma, core, exhaustive } => {
            let params = ClaimParams { seed: cli.seed, samples, max_n, gamma, core, exhaustive, budget };
            let report = claims::run_claim(&claim, &params)?;
            let rendered = match cli.format {
                Format::Json => serde_json::to_string(&report)?,
                Format::Text => render_report_text(&report),
            };
            write_or_print(&cli.out, &format!("{}.report.json", report.claim_id), &rendered)?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Claims => {
            for c in CLAIMS {
                println!("{:<12} {}", c.id, c.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pipeline { config } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("cannot read {}", config.display()))?;
            let base = config.parent().unwrap_or(Path::new("."));
            let outcome = pipeline::run_pipeline(&text, base, Some(cli.seed), budget)?;
            if outcome.partial {
                eprint!("{}", outcome.summary);
                write_or_print(&cli.out, "bundle.json", &serde_json::to_string(&outcome.bundle)?)?;
                return Err(anyhow!("pipeline aborted on a stage error (partial bundle written)"));
            }
            match cli.format {
                Format::Text => print!("{}", outcome.summary),
                Format::Json => {}
            }
            write_or_print(&cli.out, "bundle.json", &serde_json::to_string(&outcome.bundle)?)?;
            Ok(if outcome.all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
