//! Config-driven batches: generation, distance evaluation and claim
//! verification stages, collected into one reproducible JSON bundle.
//!
//! The bundle carries no timestamps or other run-dependent bytes, so two
//! runs of one config and seed produce identical output.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::json;

use mismatch_core::graph::Graph;

use crate::claims::{self, ClaimParams};
use crate::formats;
use crate::ops::{self, DeltaSpec, GenSpec};
use crate::registry;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
struct Config {
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    gen: Vec<GenStage>,
    #[serde(default)]
    delta: Vec<DeltaStage>,
    #[serde(default)]
    verify: Vec<VerifyStage>,
}

#[derive(Deserialize)]
struct GenStage {
    family: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    core: Option<String>,
    #[serde(default)]
    q: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
}

#[derive(Deserialize)]
struct DeltaStage {
    g: String,
    h: String,
    metric: String,
    #[serde(default)]
    p: Option<f64>,
    #[serde(default = "default_mode")]
    mode: String,
    #[serde(default)]
    threshold: Option<f64>,
    #[serde(default)]
    budget: Option<u64>,
}

fn default_mode() -> String {
    "exhaustive".into()
}

#[derive(Deserialize)]
struct VerifyStage {
    claim: String,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    max_n: Option<usize>,
    #[serde(default)]
    gamma: Option<String>,
    #[serde(default)]
    core: Option<String>,
    #[serde(default)]
    exhaustive: bool,
}

pub struct PipelineOutcome {
    pub bundle: serde_json::Value,
    pub summary: String,
    /// Set when a stage errored and the bundle is incomplete.
    pub partial: bool,
    /// Every verify stage ran and found zero failures.
    pub all_passed: bool,
}

/// Runs the stages in order (gen, delta, verify); the first stage error
/// aborts the remainder and flags the bundle as partial.
pub fn run_pipeline(
    config_text: &str,
    base_dir: &Path,
    seed_override: Option<u64>,
    default_budget: u64,
) -> Result<PipelineOutcome, PipelineError> {
    let config: Config =
        serde_json::from_str(config_text).map_err(|e| PipelineError::Config(e.to_string()))?;
    let seed = seed_override.or(config.seed).unwrap_or(0);

    let mut generated: BTreeMap<String, Graph> = BTreeMap::new();
    let mut gen_out = Vec::new();
    let mut delta_out = Vec::new();
    let mut verify_out = Vec::new();
    let mut summary = String::new();
    let mut partial = false;
    let mut all_passed = true;
    let fail = |summary: &mut String, partial: &mut bool, stage: &str, e: String| {
        summary.push_str(&format!("{stage}: error: {e}\n"));
        *partial = true;
        json!({ "stage": stage, "error": e })
    };

    'stages: {
        for (i, stage) in config.gen.iter().enumerate() {
            let spec = GenSpec {
                family: stage.family.clone(),
                core: stage.core.clone(),
                q: stage.q,
                n: stage.n,
                k: stage.k,
                name: stage.name.clone(),
            };
            match ops::generate(&spec) {
                Ok(out) => {
                    summary.push_str(&format!(
                        "gen {}: {} vertices, {} edges\n",
                        out.name,
                        out.graph.vertex_count(),
                        out.graph.edge_count()
                    ));
                    gen_out.push(json!({
                        "name": out.name,
                        "graph": serde_json::from_str::<serde_json::Value>(
                            &formats::graph_to_json(&out.graph)
                        )
                        .unwrap(),
                        "meta": out.meta,
                    }));
                    generated.insert(out.name, out.graph);
                }
                Err(e) => {
                    gen_out.push(fail(&mut summary, &mut partial, &format!("gen[{i}]"), e.to_string()));
                    break 'stages;
                }
            }
        }
        for (i, stage) in config.delta.iter().enumerate() {
            let resolve = |id: &str| -> Result<Graph, String> {
                if let Some(g) = generated.get(id) {
                    return Ok(g.clone());
                }
                if let Ok(g) = registry::named_graph(id) {
                    return Ok(g);
                }
                let path = base_dir.join(id);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                formats::graph_from_str(&text).map_err(|e| e.to_string())
            };
            let run = resolve(&stage.g).and_then(|g| {
                let h = resolve(&stage.h)?;
                let spec = DeltaSpec {
                    metric: stage.metric.clone(),
                    p: stage.p,
                    mode: stage.mode.clone(),
                    threshold: stage.threshold,
                    budget: stage.budget.unwrap_or(default_budget),
                };
                ops::run_delta(&g, &h, &spec, None).map_err(|e| e.to_string())
            });
            match run {
                Ok(v) => {
                    summary.push_str(&format!(
                        "delta {} vs {} ({}): {}\n",
                        stage.g, stage.h, stage.metric, v["value"]
                    ));
                    delta_out.push(json!({
                        "g": stage.g,
                        "h": stage.h,
                        "metric": stage.metric,
                        "mode": stage.mode,
                        "result": v,
                    }));
                }
                Err(e) => {
                    delta_out.push(fail(&mut summary, &mut partial, &format!("delta[{i}]"), e));
                    break 'stages;
                }
            }
        }
        for (i, stage) in config.verify.iter().enumerate() {
            let params = ClaimParams {
                seed,
                samples: stage.samples,
                max_n: stage.max_n,
                gamma: stage.gamma.clone(),
                core: stage.core.clone(),
                exhaustive: stage.exhaustive,
                budget: default_budget,
            };
            match claims::run_claim(&stage.claim, &params) {
                Ok(report) => {
                    summary.push_str(&crate::render_report_line(&report));
                    if !report.passed() {
                        all_passed = false;
                    }
                    verify_out.push(serde_json::to_value(&report).unwrap());
                }
                Err(e) => {
                    verify_out.push(fail(
                        &mut summary,
                        &mut partial,
                        &format!("verify[{i}]"),
                        e.to_string(),
                    ));
                    break 'stages;
                }
            }
        }
    }

    let bundle = json!({
        "seed": seed,
        "gen": gen_out,
        "delta": delta_out,
        "verify": verify_out,
        "partial": partial,
    });
    Ok(PipelineOutcome { bundle, summary, partial, all_passed: all_passed && !partial })
}
