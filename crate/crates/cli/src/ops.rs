//! Shared implementations of the `gen`, `delta` and `latin` operations,
//! used by both the CLI subcommands and the pipeline runner.

use std::collections::BTreeSet;

use serde_json::json;

use mismatch_core::gadgets::{build_dnq, build_gq, build_hat, build_hk, canonical_ab};
use mismatch_core::graph::{Graph, VertexId};
use mismatch_core::latin::{latin_square_graph, twinned_alignment, LatinSquare};
use mismatch_core::metrics::PExponent;
use mismatch_core::solve::{
    self, delta_branch_and_bound, delta_exhaustive, min_over_restricted, DistanceQuery,
    DistanceResult, MetricKind, RestrictedFamily, SearchMode,
};
use mismatch_core::fixtures;

use crate::formats::{self, FormatError};
use crate::registry::{self, RegistryError};

#[derive(Debug, thiserror::Error)]
pub enum OpsError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Gadget(#[from] mismatch_core::gadgets::GadgetError),
    #[error("{0}")]
    Latin(#[from] mismatch_core::latin::LatinError),
    #[error("{0}")]
    Solve(#[from] solve::SolveError),
    #[error("bad arguments: {0}")]
    BadArgs(String),
}

#[derive(Clone, Debug)]
pub struct GenSpec {
    pub family: String,
    pub core: Option<String>,
    pub q: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub name: Option<String>,
}

pub struct GenOutput {
    pub name: String,
    pub graph: Graph,
    pub meta: serde_json::Value,
}

fn clique_map_json(m: &std::collections::BTreeMap<VertexId, Vec<VertexId>>) -> serde_json::Value {
    let obj: serde_json::Map<String, serde_json::Value> = m
        .iter()
        .map(|(v, members)| {
            (
                v.as_str().to_owned(),
                json!(members.iter().map(|x| x.as_str().to_owned()).collect::<Vec<_>>()),
            )
        })
        .collect();
    serde_json::Value::Object(obj)
}

/// Resolves a core argument: a named fixture or a path handled upstream.
fn need_core(spec: &GenSpec) -> Result<(String, Graph), OpsError> {
    let id = spec
        .core
        .as_deref()
        .ok_or_else(|| OpsError::BadArgs("this family needs --core".into()))?;
    Ok((id.to_owned(), registry::named_graph(id)?))
}

/// Builds one gadget-family instance plus its sidecar structure metadata.
pub fn generate(spec: &GenSpec) -> Result<GenOutput, OpsError> {
    match spec.family.as_str() {
        "gq" => {
            let (core_id, core) = need_core(spec)?;
            let n = core.vertex_count();
            let q = spec.q.unwrap_or(3 * n + 4);
            let gadget = build_gq(&core, q)?;
            Ok(GenOutput {
                name: spec.name.clone().unwrap_or(format!("gq-{core_id}-q{q}")),
                meta: json!({
                    "family": "gq",
                    "core": core_id,
                    "q": q,
                    "core_vertices": formats::labels_json(gadget.core.vertices()),
                    "clique_of": clique_map_json(&gadget.clique_of),
                }),
                graph: gadget.graph,
            })
        }
        "dnq" => {
            let n = spec.n.ok_or_else(|| OpsError::BadArgs("dnq needs --n".into()))?;
            let q = spec.q.unwrap_or(3 * n + 4);
            let gadget = build_dnq(n, q)?;
            let matching: Vec<(String, String)> = gadget
                .matching
                .iter()
                .map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned()))
                .collect();
            Ok(GenOutput {
                name: spec.name.clone().unwrap_or(format!("dnq-n{n}-q{q}")),
                meta: json!({
                    "family": "dnq",
                    "n": n,
                    "q": q,
                    "matching": matching,
                    "clique_of": clique_map_json(&gadget.base.clique_of),
                }),
                graph: gadget.base.graph,
            })
        }
        "hk" => {
            let k = spec.k.ok_or_else(|| OpsError::BadArgs("hk needs --k".into()))?;
            let hk = build_hk(k)?;
            let chords: Vec<(String, String)> = hk
                .chords
                .iter()
                .map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned()))
                .collect();
            Ok(GenOutput {
                name: spec.name.clone().unwrap_or(format!("hk-{k}")),
                meta: json!({
                    "family": "hk",
                    "k": k,
                    "chords": chords,
                    "even": formats::labels_json(hk.even_vertices().iter()),
                    "odd": formats::labels_json(hk.odd_vertices().iter()),
                    "degenerate": hk.degenerate,
                }),
                graph: hk.graph,
            })
        }
        "hat-g" => {
            let (core_id, core) = need_core(spec)?;
            let (a, b) = canonical_ab(&core)
                .ok()
                .or_else(|| fixtures::balanced_bipartition(&core))
                .ok_or_else(|| {
                    OpsError::BadArgs(format!("core {core_id} has no balanced bipartition"))
                })?;
            let hat = build_hat(&core, &a, &b, true)?;
            Ok(GenOutput {
                name: spec.name.clone().unwrap_or(format!("hat-g-{core_id}")),
                meta: json!({
                    "family": "hat-g",
                    "core": core_id,
                    "a_set": formats::labels_json(hat.a_set.iter()),
                    "b_set": formats::labels_json(hat.b_set.iter()),
                    "leaves_of": clique_map_json(&hat.leaves_of),
                }),
                graph: hat.graph,
            })
        }
        "hat-h" => {
            let k = spec.k.ok_or_else(|| OpsError::BadArgs("hat-h needs --k".into()))?;
            let hk = build_hk(k)?;
            let even: BTreeSet<VertexId> = hk.even_vertices().into_iter().collect();
            let odd: BTreeSet<VertexId> = hk.odd_vertices().into_iter().collect();
            let hat = build_hat(&hk.graph, &even, &odd, false)?;
            Ok(GenOutput {
                name: spec.name.clone().unwrap_or(format!("hat-h-{k}")),
                meta: json!({
                    "family": "hat-h",
                    "k": k,
                    "a_set": formats::labels_json(hat.a_set.iter()),
                    "b_set": formats::labels_json(hat.b_set.iter()),
                    "leaves_of": clique_map_json(&hat.leaves_of),
                }),
                graph: hat.graph,
            })
        }
        other => Err(OpsError::BadArgs(format!(
            "unknown family {other:?} (expected gq, dnq, hk, hat-g or hat-h)"
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct DeltaSpec {
    pub metric: String,
    pub p: Option<f64>,
    pub mode: String,
    pub threshold: Option<f64>,
    pub budget: u64,
}

pub fn parse_metric(metric: &str, p: Option<f64>) -> Result<MetricKind, OpsError> {
    let bad_p = |m: &str| OpsError::BadArgs(format!("metric {m} does not take --p"));
    match metric {
        "edit" => p.map_or(Ok(MetricKind::Edit), |_| Err(bad_p("edit"))),
        "p1" => p.map_or(Ok(MetricKind::P(PExponent::ONE)), |_| Err(bad_p("p1"))),
        "p2" => p.map_or(Ok(MetricKind::P(PExponent::TWO)), |_| Err(bad_p("p2"))),
        "abs-p2" => p.map_or(Ok(MetricKind::AbsP(PExponent::TWO)), |_| Err(bad_p("abs-p2"))),
        "p" => {
            let x = p.ok_or_else(|| OpsError::BadArgs("metric p needs --p <x>".into()))?;
            let pe = PExponent::new(x)
                .map_err(|e| OpsError::BadArgs(e.to_string()))?;
            Ok(MetricKind::P(pe))
        }
        other => Err(OpsError::BadArgs(format!(
            "unknown metric {other:?} (expected edit, p1, p2, abs-p2 or p)"
        ))),
    }
}

pub fn run_delta(
    g: &Graph,
    h: &Graph,
    spec: &DeltaSpec,
    family: Option<&RestrictedFamily>,
) -> Result<serde_json::Value, OpsError> {
    let metric = parse_metric(&spec.metric, spec.p)?;
    let mode = match spec.mode.as_str() {
        "exhaustive" => SearchMode::Exhaustive,
        "bnb" => SearchMode::BranchAndBound,
        "restricted" => SearchMode::Restricted,
        other => {
            return Err(OpsError::BadArgs(format!(
                "unknown mode {other:?} (expected exhaustive, bnb or restricted)"
            )))
        }
    };
    let mut query = DistanceQuery::new(metric, mode).with_budget(spec.budget);
    if let Some(c) = spec.threshold {
        query = query.with_threshold(c);
    }
    let result: DistanceResult = match mode {
        SearchMode::Exhaustive => delta_exhaustive(g, h, &query)?,
        SearchMode::BranchAndBound => delta_branch_and_bound(g, h, &query)?,
        SearchMode::Restricted => {
            let fam = family.ok_or_else(|| {
                OpsError::BadArgs("restricted mode needs --restricted-meta <file>".into())
            })?;
            min_over_restricted(g, h, fam, metric)?
        }
    };
    Ok(json!({
        "value": formats::norm_to_json(&result.value),
        "alignment": formats::alignment_to_json(&result.best_alignment),
        "optimal": result.optimal,
        "nodes": result.nodes_expanded,
    }))
}

/// Parses the restricted-family sidecar: four label lists.
pub fn family_from_json(s: &str) -> Result<RestrictedFamily, OpsError> {
    #[derive(serde::Deserialize)]
    struct Doc {
        source_a: Vec<String>,
        source_b: Vec<String>,
        target_even: Vec<String>,
        target_odd: Vec<String>,
    }
    let doc: Doc =
        serde_json::from_str(s).map_err(|e| OpsError::BadArgs(format!("restricted meta: {e}")))?;
    let ids = |v: Vec<String>| v.into_iter().map(VertexId::new);
    Ok(RestrictedFamily::new(
        ids(doc.source_a),
        ids(doc.source_b),
        ids(doc.target_even),
        ids(doc.target_odd),
    )?)
}

/// The `latin` operation: emit a table, its graph, or the twinned pair.
pub fn run_latin(group: &str, emit: &str) -> Result<serde_json::Value, OpsError> {
    let gamma = registry::named_group(group)?;
    match emit {
        "table" => Ok(serde_json::from_str(&formats::group_to_json(&gamma)).unwrap()),
        "graph" => {
            let lsg = latin_square_graph(&LatinSquare::from_group(&gamma)?);
            Ok(serde_json::from_str(&formats::graph_to_json(&lsg.graph)).unwrap())
        }
        "twinned-alignment" => {
            let t = twinned_alignment(&gamma)?;
            Ok(json!({
                "gamma": group,
                "n": t.n(),
                "sqrt_n": t.sqrt_n(),
                "group_g": serde_json::from_str::<serde_json::Value>(&formats::group_to_json(&t.group_g)).unwrap(),
                "group_h": serde_json::from_str::<serde_json::Value>(&formats::group_to_json(&t.group_h)).unwrap(),
                "g": serde_json::from_str::<serde_json::Value>(&formats::graph_to_json(&t.g.graph)).unwrap(),
                "h": serde_json::from_str::<serde_json::Value>(&formats::graph_to_json(&t.h.graph)).unwrap(),
                "alignment": formats::alignment_to_json(&t.alignment),
            }))
        }
        other => Err(OpsError::BadArgs(format!(
            "unknown emit target {other:?} (expected table, graph or twinned-alignment)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_families_produce_consistent_metadata() {
        let out = generate(&GenSpec {
            family: "gq".into(),
            core: Some("k4".into()),
            q: Some(16),
            n: None,
            k: None,
            name: None,
        })
        .unwrap();
        assert_eq!(out.name, "gq-k4-q16");
        assert_eq!(out.graph.vertex_count(), 72);
        assert_eq!(out.meta["q"], 16);

        let out = generate(&GenSpec {
            family: "hk".into(),
            core: None,
            q: None,
            n: None,
            k: Some(6),
            name: None,
        })
        .unwrap();
        assert_eq!(out.graph.vertex_count(), 12);
        assert_eq!(out.meta["even"].as_array().unwrap().len(), 6);

        assert!(generate(&GenSpec {
            family: "dnq".into(),
            core: None,
            q: Some(2),
            n: Some(5),
            k: None,
            name: None,
        })
        .is_err());
    }

    #[test]
    fn delta_json_shape() {
        let g = registry::named_graph("k4").unwrap();
        let h = registry::named_graph("c4").unwrap();
        let spec = DeltaSpec {
            metric: "edit".into(),
            p: None,
            mode: "exhaustive".into(),
            threshold: None,
            budget: solve::DEFAULT_BUDGET,
        };
        let v = run_delta(&g, &h, &spec, None).unwrap();
        assert_eq!(v["value"]["lo"], 2.0);
        assert_eq!(v["optimal"], true);
        assert!(v["alignment"].is_object());
    }

    #[test]
    fn metric_parsing() {
        assert!(matches!(parse_metric("edit", None), Ok(MetricKind::Edit)));
        assert!(parse_metric("p", Some(2.5)).is_ok());
        assert!(parse_metric("p", None).is_err());
        assert!(parse_metric("edit", Some(2.0)).is_err());
        assert!(parse_metric("q", None).is_err());
    }

    #[test]
    fn latin_emits() {
        let table = run_latin("z4", "table").unwrap();
        assert_eq!(table["elements"].as_array().unwrap().len(), 4);
        let graph = run_latin("z4", "graph").unwrap();
        assert_eq!(graph["vertices"].as_array().unwrap().len(), 16);
        let tw = run_latin("trivial", "twinned-alignment").unwrap();
        assert_eq!(tw["sqrt_n"], 4);
    }
}
