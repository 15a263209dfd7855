//! The claim registry: every mechanically checkable statement the library
//! is built around, runnable at desk scale with a recorded seed.
//!
//! A claim check never weakens on failure: a counterexample is serialized
//! in full (graphs plus alignment), because for the registered claims a
//! genuine failure would be publishable news.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use mismatch_core::dense::{self, DenseGraph};
use mismatch_core::gadgets::{
    self, build_dnq, build_gq, build_hat, check_spectral_gap, lift_leaf_alignment,
    verify_mismatch_structure, walk_matrix, LeafGadget, SPECTRAL_MARGIN,
};
use mismatch_core::graph::{mismatch_graph, Alignment, Graph, VertexId};
use mismatch_core::hamilton::hamiltonian_cycle;
use mismatch_core::latin::{
    self, cell_is_even, classify_edge, latin_square_graph, srg_bound_check, twinned_alignment,
    EdgeKind, LatinSquare,
};
use mismatch_core::metrics::{self, PExponent};
use mismatch_core::solve::{
    self, delta_branch_and_bound, delta_exhaustive, DistanceQuery, MetricKind, RestrictedFamily,
    SearchMode,
};
use mismatch_core::{fixtures, Edge};

use crate::formats;
use crate::registry::{self, res_core, ResCore, RegistryError};
use crate::sampling;

#[derive(Clone, Debug)]
pub struct ClaimParams {
    pub seed: u64,
    pub samples: Option<usize>,
    pub max_n: Option<usize>,
    pub gamma: Option<String>,
    pub core: Option<String>,
    pub exhaustive: bool,
    pub budget: u64,
}

impl Default for ClaimParams {
    fn default() -> Self {
        ClaimParams {
            seed: 0,
            samples: None,
            max_n: None,
            gamma: None,
            core: None,
            exhaustive: false,
            budget: solve::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// Outcome of one claim run. `wall_time` is reported in the human summary
/// only; the JSON form stays byte-identical across runs of one seed.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub seed: u64,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    fn new(claim_id: &str, seed: u64) -> Self {
        VerificationReport {
            claim_id: claim_id.to_owned(),
            seed,
            instances: 0,
            passes: 0,
            failures: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, instance: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.check_with(instance, ok, detail, || None)
    }

    fn check_with(
        &mut self,
        instance: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> String,
        witness: impl FnOnce() -> Option<serde_json::Value>,
    ) {
        self.instances += 1;
        if ok {
            self.passes += 1;
        } else {
            self.failures.push(Failure {
                instance: instance.into(),
                detail: detail(),
                witness: witness(),
            });
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ClaimError {
    #[error("unknown claim {0:?}; see `mismatch claims` for the registry")]
    Unknown(String),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("claim could not run: {0}")]
    Run(String),
}

impl From<solve::SolveError> for ClaimError {
    fn from(e: solve::SolveError) -> Self {
        ClaimError::Run(e.to_string())
    }
}

impl From<gadgets::GadgetError> for ClaimError {
    fn from(e: gadgets::GadgetError) -> Self {
        ClaimError::Run(e.to_string())
    }
}

impl From<latin::LatinError> for ClaimError {
    fn from(e: latin::LatinError) -> Self {
        ClaimError::Run(e.to_string())
    }
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub summary: &'static str,
}

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo { id: "fact-2.1", summary: "regular pairs balance positive and negative degree at every vertex" },
    ClaimInfo { id: "fact-3.1", summary: "cubic graphs sit at edit distance n/2 from the cycle exactly when Hamiltonian" },
    ClaimInfo { id: "lemma-3.3", summary: "clique-gadget alignments leaking across classes cost more than 3n; class-respecting search attains core distance plus n/2" },
    ClaimInfo { id: "lemma-3.4", summary: "clique-gadget pair distance is at most n exactly when the core is Hamiltonian" },
    ClaimInfo { id: "lemma-4.1", summary: "leaf-gadget alignments misplacing a leaf or an A-vertex exceed mismatch count 6; leaf-wise lifts preserve it" },
    ClaimInfo { id: "lemma-4.2", summary: "Hamiltonian cores admit a partition-respecting alignment with mismatch count 2" },
    ClaimInfo { id: "lemma-4.3", summary: "non-Hamiltonian cores, even half-order: every partition-respecting alignment reaches mismatch count 4" },
    ClaimInfo { id: "lemma-4.4", summary: "non-Hamiltonian cores, odd half-order: every partition-respecting alignment reaches mismatch count 4" },
    ClaimInfo { id: "lemma-4.5", summary: "degree-4 vertices of restricted mismatch graphs have a nonzero signed two-walk sum to another vertex" },
    ClaimInfo { id: "prop-4.6", summary: "Hamiltonicity, restricted mismatch count 2, and leaf-gadget p=1 distance at most 2 are equivalent" },
    ClaimInfo { id: "prop-4.7a", summary: "even half-order: restricted mismatch graphs have exactly one same-parity negative contact per vertex and degrees in {2,4,6}" },
    ClaimInfo { id: "prop-4.7b", summary: "odd half-order: same structure except the two chord-free vertices, which only meet the opposite parity" },
    ClaimInfo { id: "lemma-4.8", summary: "restricted mismatch graphs with a degree-4 vertex have squared spectral norm above 4" },
    ClaimInfo { id: "prop-4.9", summary: "Hamiltonicity is equivalent to restricted p=2 norms (signed and unsigned) at most 2" },
    ClaimInfo { id: "prop-5.2", summary: "non-isomorphic strongly regular pairs with equal parameters force mismatch count lambda - nu + 1 (2 when equal)" },
    ClaimInfo { id: "cor-5.3", summary: "non-isomorphic Latin square graphs force mismatch count sqrt(n) - 5" },
    ClaimInfo { id: "prop-A.1", summary: "the twinned-cell alignment yields a sqrt(n)-regular mismatch graph on even cells, entry edges only" },
    ClaimInfo { id: "lemma-A.2", summary: "twinned-cell parity rules: odd cells twin with their image, even cells exactly when both components are even" },
];

pub fn canonical_claim_id(id: &str) -> Option<&'static str> {
    let lower = id.trim().to_ascii_lowercase();
    CLAIMS
        .iter()
        .map(|c| c.id)
        .find(|c| c.to_ascii_lowercase() == lower)
}

pub fn run_claim(id: &str, params: &ClaimParams) -> Result<VerificationReport, ClaimError> {
    let canonical = canonical_claim_id(id).ok_or_else(|| ClaimError::Unknown(id.to_owned()))?;
    let start = Instant::now();
    let mut report = VerificationReport::new(canonical, params.seed);
    match canonical {
        "fact-2.1" => fact_2_1(&mut report, params)?,
        "fact-3.1" => fact_3_1(&mut report, params)?,
        "lemma-3.3" => lemma_3_3(&mut report, params)?,
        "lemma-3.4" => lemma_3_4(&mut report, params)?,
        "lemma-4.1" => lemma_4_1(&mut report, params)?,
        "lemma-4.2" => lemma_4_2(&mut report, params)?,
        "lemma-4.3" => lemma_4_3_4(&mut report, params, 0)?,
        "lemma-4.4" => lemma_4_3_4(&mut report, params, 1)?,
        "lemma-4.5" => lemma_4_5(&mut report, params)?,
        "prop-4.6" => prop_4_6(&mut report, params)?,
        "prop-4.7a" => prop_4_7(&mut report, params, 0)?,
        "prop-4.7b" => prop_4_7(&mut report, params, 1)?,
        "lemma-4.8" => lemma_4_8(&mut report, params)?,
        "prop-4.9" => prop_4_9(&mut report, params)?,
        "prop-5.2" => prop_5_2(&mut report, params)?,
        "cor-5.3" => cor_5_3(&mut report, params)?,
        "prop-A.1" => prop_a_1(&mut report, params)?,
        "lemma-A.2" => lemma_a_2(&mut report, params)?,
        _ => unreachable!("canonical ids are matched above"),
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn witness_pair(g: &Graph, h: &Graph, pi: &Alignment) -> Option<serde_json::Value> {
    Some(serde_json::json!({
        "g": serde_json::from_str::<serde_json::Value>(&formats::graph_to_json(g)).unwrap(),
        "h": serde_json::from_str::<serde_json::Value>(&formats::graph_to_json(h)).unwrap(),
        "alignment": formats::alignment_to_json(pi),
    }))
}

fn cores_for(params: &ClaimParams, default: &[&str]) -> Result<Vec<ResCore>, ClaimError> {
    let ids: Vec<String> = match &params.core {
        Some(c) => vec![c.clone()],
        None => default.iter().map(|s| (*s).to_owned()).collect(),
    };
    ids.iter().map(|id| Ok(res_core(id)?)).collect()
}

fn family_for(core: &ResCore) -> RestrictedFamily {
    RestrictedFamily::for_cores(core.a_set.iter().cloned(), core.b_set.iter().cloned(), &core.hk)
        .expect("registered cores have balanced partitions")
}

fn hat_pair_for(core: &ResCore) -> Result<(LeafGadget, LeafGadget), ClaimError> {
    let hat_g = build_hat(&core.graph, &core.a_set, &core.b_set, true)?;
    let even: BTreeSet<VertexId> = core.hk.even_vertices().into_iter().collect();
    let odd: BTreeSet<VertexId> = core.hk.odd_vertices().into_iter().collect();
    let hat_h = build_hat(&core.hk.graph, &even, &odd, false)?;
    Ok((hat_g, hat_h))
}

/// Exhaustive up to this family size, sampled beyond it.
const EXHAUSTIVE_FAMILY_LIMIT: u64 = 1_000_000;

fn for_each_restricted(
    core: &ResCore,
    params: &ClaimParams,
    default_samples: usize,
    mut f: impl FnMut(&Alignment, String),
) {
    let fam = family_for(core);
    if params.exhaustive || fam.size() <= EXHAUSTIVE_FAMILY_LIMIT {
        for (i, sigma) in solve::enumerate_restricted(&fam).enumerate() {
            f(&sigma, format!("{} restricted alignment {i}", core.name));
        }
    } else {
        let mut rng = sampling::rng(params.seed);
        let samples = params.samples.unwrap_or(default_samples);
        for i in 0..samples {
            let sigma = sampling::random_restricted(&mut rng, &fam);
            f(&sigma, format!("{} restricted sample {i}", core.name));
        }
    }
}

// --- individual claims ---------------------------------------------------

fn fact_2_1(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let samples = params.samples.unwrap_or(100);
    let mut rng = sampling::rng(params.seed);
    let pairs: Vec<(&str, Graph, Graph)> = vec![
        ("k4/k4", fixtures::complete(4), fixtures::complete(4)),
        ("c6/c6", fixtures::cycle(6), fixtures::cycle(6)),
        ("k33/prism", fixtures::complete_bipartite(3, 3), fixtures::prism(3)),
        ("q3/wagner-class", fixtures::hypercube(3), fixtures::cubic_catalog(8)[2].clone()),
        ("k4-k4/q3", fixtures::double_k4(), fixtures::hypercube(3)),
        ("shrikhande/rook4", fixtures::shrikhande(), fixtures::rook4()),
    ];
    for (name, g, h) in &pairs {
        for i in 0..samples {
            let pi = sampling::random_bijection(&mut rng, g, h);
            let balanced = mismatch_core::check_regular_balance(g, h, &pi)
                .map_err(|e| ClaimError::Run(e.to_string()))?;
            report.check_with(
                format!("{name} sample {i}"),
                balanced,
                || "a vertex has unequal positive and negative degree".into(),
                || witness_pair(g, h, &pi),
            );
        }
    }
    Ok(())
}

fn fact_3_1(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let max_n = params.max_n.unwrap_or(8);
    for n in [4usize, 6, 8] {
        if n > max_n {
            continue;
        }
        let cycle = fixtures::cycle(n);
        let mut graphs = fixtures::cubic_catalog(n);
        if n == 8 {
            graphs.push(fixtures::double_k4());
        }
        for (i, g) in graphs.iter().enumerate() {
            let ham = hamiltonian_cycle(g).map_err(|e| ClaimError::Run(e.to_string()))?;
            let query = DistanceQuery::new(MetricKind::Edit, SearchMode::Exhaustive)
                .with_budget(params.budget);
            let delta = delta_exhaustive(g, &cycle, &query)?.value.value().unwrap();
            let ok = if ham.is_some() {
                delta == (n / 2) as f64
            } else {
                delta > (n / 2) as f64
            };
            report.check_with(
                format!("n={n} graph {i} ({})", if ham.is_some() { "hamiltonian" } else { "not hamiltonian" }),
                ok,
                || format!("edit distance to the cycle is {delta}, half order is {}", n / 2),
                || {
                    Some(serde_json::json!({
                        "graph": serde_json::from_str::<serde_json::Value>(
                            &formats::graph_to_json(g)
                        )
                        .unwrap()
                    }))
                },
            );
        }
    }
    if max_n >= 10 {
        // Petersen: non-Hamiltonian, so the distance must exceed 5; the
        // branch and bound certifies that without full enumeration.
        let g = fixtures::petersen();
        let cycle = fixtures::cycle(10);
        let query = DistanceQuery::new(MetricKind::Edit, SearchMode::BranchAndBound)
            .with_threshold(5.0)
            .with_budget(params.budget);
        let r = delta_branch_and_bound(&g, &cycle, &query)?;
        report.check("n=10 petersen (not hamiltonian)", r.value.lo() > 5.0, || {
            format!("expected a certified no at threshold 5, got {}", r.value)
        });
    }
    Ok(())
}

fn lemma_3_3(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let samples = params.samples.unwrap_or(500);
    let core_ids: Vec<&str> = match params.core.as_deref() {
        Some(c) => vec![c],
        None => vec!["k4", "k33"],
    };
    let mut rng = sampling::rng(params.seed);
    for id in core_ids {
        let core = registry::named_graph(id)?;
        let n = core.vertex_count();
        let q = 3 * n + 4;
        let gq = build_gq(&core, q)?;
        let dnq = build_dnq(n, q)?;
        let dg = DenseGraph::from_graph(&gq.graph);
        let dh = DenseGraph::from_graph(dnq.graph());
        let clique_vertices: Vec<VertexId> = gq
            .graph
            .vertices()
            .filter(|v| !gq.is_core_vertex(v))
            .cloned()
            .collect();
        let cycle_targets: Vec<VertexId> = dnq.base.core.vertices().cloned().collect();
        for i in 0..samples {
            let src = sampling::pick(&mut rng, &clique_vertices).clone();
            let tgt = sampling::pick(&mut rng, &cycle_targets).clone();
            let pi = sampling::random_bijection_forcing(&mut rng, &gq.graph, dnq.graph(), &src, &tgt);
            let perm = dg.perm_from_alignment(&dh, &pi).expect("total bijection");
            let edit = dense::edit_count(&dg, &dh, &perm);
            report.check(
                format!("{id} leaky sample {i}"),
                edit > 3 * n,
                || format!("class-leaking alignment has edit norm {edit}, not above {}", 3 * n),
            );
        }
        // The class-respecting search lands exactly on core distance + n/2.
        let query =
            DistanceQuery::new(MetricKind::Edit, SearchMode::Exhaustive).with_budget(params.budget);
        let core_delta = delta_exhaustive(&core, &fixtures::cycle(n), &query)?
            .value
            .value()
            .unwrap();
        let found = solve::conservative_search(&gq, &dnq)?;
        report.check(
            format!("{id} class-respecting optimum"),
            found.value.value() == Some(core_delta + (n / 2) as f64) && found.optimal,
            || format!(
                "expected {} + {} = {}, got {}",
                core_delta,
                n / 2,
                core_delta + (n / 2) as f64,
                found.value
            ),
        );
    }
    Ok(())
}

fn lemma_3_4(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let core_ids: Vec<&str> = match params.core.as_deref() {
        Some(c) => vec![c],
        None => vec!["k4", "k33", "k4-k4"],
    };
    for id in core_ids {
        let core = registry::named_graph(id)?;
        let n = core.vertex_count();
        let q = 3 * n + 4;
        let gq = build_gq(&core, q)?;
        let dnq = build_dnq(n, q)?;
        let found = solve::conservative_search(&gq, &dnq)?;
        let delta = found.value.value().unwrap();
        let ham = hamiltonian_cycle(&core)
            .map_err(|e| ClaimError::Run(e.to_string()))?
            .is_some();
        report.check(
            format!("{id} (n={n}, q={q})"),
            found.optimal && ((delta <= n as f64) == ham),
            || format!("distance {delta} vs bound {n}; hamiltonian: {ham}"),
        );
    }
    Ok(())
}

fn lemma_4_1(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let samples = params.samples.unwrap_or(200);
    let cores = cores_for(params, &["k33", "q3"])?;
    let mut rng = sampling::rng(params.seed);
    for core in &cores {
        let (hat_g, hat_h) = hat_pair_for(core)?;
        let leaves: Vec<VertexId> = hat_g
            .leaves_of
            .values()
            .flat_map(|ls| ls.iter().cloned())
            .collect();
        let core_targets: Vec<VertexId> = hat_h.core.vertices().cloned().collect();
        let odd_targets: Vec<VertexId> = core.hk.odd_vertices();
        let a_vertices: Vec<VertexId> = core.a_set.iter().cloned().collect();
        for i in 0..samples {
            let leaf = sampling::pick(&mut rng, &leaves).clone();
            let tgt = sampling::pick(&mut rng, &core_targets).clone();
            let pi = sampling::random_bijection_forcing(&mut rng, &hat_g.graph, &hat_h.graph, &leaf, &tgt);
            let q = metrics::mmc(&hat_g.graph, &hat_h.graph, &pi)
                .map_err(|e| ClaimError::Run(e.to_string()))?
                .value;
            report.check(
                format!("{} leaf-onto-core sample {i}", core.name),
                q > 6,
                || format!("mismatch count {q} does not exceed 6"),
            );
        }
        for i in 0..samples {
            let a = sampling::pick(&mut rng, &a_vertices).clone();
            let tgt = sampling::pick(&mut rng, &odd_targets).clone();
            let pi = sampling::random_bijection_forcing(&mut rng, &hat_g.graph, &hat_h.graph, &a, &tgt);
            let q = metrics::mmc(&hat_g.graph, &hat_h.graph, &pi)
                .map_err(|e| ClaimError::Run(e.to_string()))?
                .value;
            report.check(
                format!("{} a-onto-odd sample {i}", core.name),
                q > 6,
                || format!("mismatch count {q} does not exceed 6"),
            );
        }
        // leaf-wise lifting preserves the core mismatch count
        let fam = family_for(core);
        let mut lift_checks = 0usize;
        for sigma in solve::enumerate_restricted(&fam) {
            if lift_checks >= 50 {
                break;
            }
            lift_checks += 1;
            let core_q = metrics::mmc(&core.graph, &core.hk.graph, &sigma)
                .map_err(|e| ClaimError::Run(e.to_string()))?
                .value;
            let pi = lift_leaf_alignment(&sigma, &hat_g, &hat_h)?;
            let hat_q = metrics::mmc(&hat_g.graph, &hat_h.graph, &pi)
                .map_err(|e| ClaimError::Run(e.to_string()))?
                .value;
            report.check(
                format!("{} lift {lift_checks}", core.name),
                core_q == hat_q && hat_q <= 6,
                || format!("core count {core_q}, lifted count {hat_q}"),
            );
        }
    }
    Ok(())
}

fn lemma_4_2(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let cores = cores_for(params, &["k33", "q3"])?;
    for core in &cores {
        if !core.hamiltonian {
            return Err(ClaimError::Run(format!(
                "core {} is not Hamiltonian; this claim needs a Hamiltonian core",
                core.name
            )));
        }
        let fam = family_for(core);
        let (q, sigma) = solve::min_mmc_restricted(&core.graph, &core.hk.graph, &fam)?;
        let witness: Vec<String> = sigma.iter().map(|(u, v)| format!("{u}->{v}")).collect();
        report.check_with(
            format!(
                "{} minimum over {} alignments is {} at [{}]",
                core.name,
                fam.size(),
                q.value,
                witness.join(", ")
            ),
            q.value == 2,
            || format!("minimum mismatch count is {}, expected 2", q.value),
            || witness_pair(&core.graph, &core.hk.graph, &sigma),
        );
    }
    Ok(())
}

fn lemma_4_3_4(
    report: &mut VerificationReport,
    params: &ClaimParams,
    parity: usize,
) -> Result<(), ClaimError> {
    let default_core = if parity == 0 { "k33-k33" } else { "q3-k33" };
    let cores = cores_for(params, &[default_core])?;
    for core in &cores {
        if core.k % 2 != parity {
            return Err(ClaimError::Run(format!(
                "core {} has half-order {} of the wrong parity for this claim",
                core.name, core.k
            )));
        }
        if core.hamiltonian {
            return Err(ClaimError::Run(format!(
                "core {} is Hamiltonian; this claim needs a non-Hamiltonian core",
                core.name
            )));
        }
        for_each_restricted(core, params, 1000, |sigma, instance| {
            let q = metrics::mmc(&core.graph, &core.hk.graph, sigma)
                .expect("family alignments are bijections")
                .value;
            report.check_with(
                instance,
                q >= 4,
                || format!("mismatch count {q} below 4 on a non-Hamiltonian core"),
                || witness_pair(&core.graph, &core.hk.graph, sigma),
            );
        });
    }
    Ok(())
}

fn lemma_4_5(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let cores = cores_for(params, &["k33", "q3", "k33-k33", "q3-k33"])?;
    for core in &cores {
        for_each_restricted(core, params, 1000, |sigma, instance| {
            let sg = mismatch_graph(&core.graph, &core.hk.graph, sigma).unwrap();
            let p = walk_matrix(&sg);
            let mut ok = true;
            let mut bad = String::new();
            for (i, v) in p.order.iter().enumerate() {
                if sg.degree(v).unwrap() == 4 {
                    let hit = (0..p.order.len()).any(|j| j != i && p.entries[i][j] != 0);
                    if !hit {
                        ok = false;
                        bad = format!("degree-4 vertex {v} has all-zero off-diagonal walk sums");
                        break;
                    }
                }
            }
            report.check_with(
                instance,
                ok,
                || bad.clone(),
                || witness_pair(&core.graph, &core.hk.graph, sigma),
            );
        });
    }
    Ok(())
}

fn prop_4_6(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let cores = cores_for(params, &["k33", "q3", "k33-k33", "q3-k33"])?;
    for core in &cores {
        let fam = family_for(core);
        // leg 1 <-> 2: Hamiltonicity matches the restricted minimum
        if params.exhaustive || fam.size() <= EXHAUSTIVE_FAMILY_LIMIT {
            let (q, _) = solve::min_mmc_restricted(&core.graph, &core.hk.graph, &fam)?;
            let ok = if core.hamiltonian { q.value == 2 } else { q.value >= 4 };
            report.check(
                format!("{}: restricted minimum is {}", core.name, q.value),
                ok,
                || format!("hamiltonian: {}, restricted minimum: {}", core.hamiltonian, q.value),
            );
        } else {
            // sampling can only support the lower bound side
            for_each_restricted(core, params, 1000, |sigma, instance| {
                let q = metrics::mmc(&core.graph, &core.hk.graph, sigma).unwrap().value;
                report.check(instance, q >= 4, || format!("sampled mismatch count {q} below 4"));
            });
        }
        // leg 2 <-> 3 via the leaf gadgets, where the order is small enough
        // for a certified threshold decision
        if core.graph.vertex_count() <= 8 {
            let (hat_g, hat_h) = hat_pair_for(core)?;
            let mut query =
                DistanceQuery::new(MetricKind::P(PExponent::ONE), SearchMode::BranchAndBound)
                    .with_threshold(2.0)
                    .with_budget(params.budget);
            query.bnb_cap_mmc = hat_g.graph.vertex_count();
            let r = delta_branch_and_bound(&hat_g.graph, &hat_h.graph, &query)?;
            let decided_yes = r.value.hi() <= 2.0;
            report.check(
                format!("{}: leaf-gadget p=1 decision at threshold 2", core.name),
                decided_yes == core.hamiltonian,
                || format!(
                    "hamiltonian: {}, leaf-gadget distance verdict: {}",
                    core.hamiltonian, r.value
                ),
            );
        }
    }
    Ok(())
}

fn prop_4_7(
    report: &mut VerificationReport,
    params: &ClaimParams,
    parity: usize,
) -> Result<(), ClaimError> {
    let defaults: &[&str] = if parity == 0 { &["q3", "k33-k33"] } else { &["k33", "q3-k33"] };
    let cores = cores_for(params, defaults)?;
    for core in &cores {
        if core.k % 2 != parity {
            return Err(ClaimError::Run(format!(
                "core {} has half-order {} of the wrong parity for this claim",
                core.name, core.k
            )));
        }
        for_each_restricted(core, params, 1000, |sigma, instance| {
            let sg = mismatch_graph(&core.graph, &core.hk.graph, sigma).unwrap();
            let r = verify_mismatch_structure(&sg, core.k);
            report.check_with(
                instance,
                r.passed(),
                || {
                    r.violations
                        .iter()
                        .map(|v| format!("{}: {}", v.vertex, v.issue))
                        .collect::<Vec<_>>()
                        .join("; ")
                },
                || witness_pair(&core.graph, &core.hk.graph, sigma),
            );
        });
    }
    Ok(())
}

fn lemma_4_8(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let cores = cores_for(params, &["k33", "q3", "k33-k33", "q3-k33"])?;
    for core in &cores {
        for_each_restricted(core, params, 1000, |sigma, instance| {
            let sg = mismatch_graph(&core.graph, &core.hk.graph, sigma).unwrap();
            report.check_with(
                instance,
                check_spectral_gap(&sg),
                || "squared spectral norm failed to clear 4".into(),
                || witness_pair(&core.graph, &core.hk.graph, sigma),
            );
        });
    }
    Ok(())
}

fn prop_4_9(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let cores = cores_for(params, &["k33", "q3", "k33-k33", "q3-k33"])?;
    for core in &cores {
        let fam = family_for(core);
        if core.hamiltonian {
            // both p=2 norms dip to 2 or below at the Hamiltonian witness
            let mut min_signed = f64::INFINITY;
            let mut min_unsigned = f64::INFINITY;
            for sigma in solve::enumerate_restricted(&fam) {
                let sg = mismatch_graph(&core.graph, &core.hk.graph, &sigma).unwrap();
                min_signed = min_signed
                    .min(metrics::signed_norm(&sg, PExponent::TWO).value().unwrap());
                min_unsigned = min_unsigned
                    .min(metrics::unsigned_norm(&sg, PExponent::TWO).value().unwrap());
            }
            report.check(
                format!("{}: restricted p=2 minima", core.name),
                min_signed <= 2.0 + SPECTRAL_MARGIN && min_unsigned <= 2.0 + SPECTRAL_MARGIN,
                || format!("signed minimum {min_signed}, unsigned minimum {min_unsigned}"),
            );
        } else {
            for_each_restricted(core, params, 1000, |sigma, instance| {
                let sg = mismatch_graph(&core.graph, &core.hk.graph, sigma).unwrap();
                let signed = metrics::signed_norm(&sg, PExponent::TWO).value().unwrap();
                let unsigned = metrics::unsigned_norm(&sg, PExponent::TWO).value().unwrap();
                report.check_with(
                    instance,
                    signed > 2.0 + SPECTRAL_MARGIN && unsigned > 2.0 + SPECTRAL_MARGIN,
                    || format!("signed norm {signed}, unsigned norm {unsigned}; both must exceed 2"),
                    || witness_pair(&core.graph, &core.hk.graph, sigma),
                );
            });
        }
    }
    Ok(())
}

fn prop_5_2(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let samples = params.samples.unwrap_or(10_000);
    let mut rng = sampling::rng(params.seed);

    let g = fixtures::shrikhande();
    let h = fixtures::rook4();
    let dg = DenseGraph::from_graph(&g);
    let dh = DenseGraph::from_graph(&h);
    for i in 0..samples {
        let perm = sampling::random_perm(&mut rng, dg.n());
        let q = dense::mmc_count(&dg, &dh, &perm).0;
        report.check_with(
            format!("shrikhande/rook4 sample {i}"),
            q >= 2,
            || format!("mismatch count {q} below 2 between non-isomorphic strongly regular graphs"),
            || witness_pair(&g, &h, &dg.alignment_from_perm(&dh, &perm)),
        );
    }
    // one audited sample through the full checker
    let pi = sampling::random_bijection(&mut rng, &g, &h);
    report.check(
        "shrikhande/rook4 bound checker",
        srg_bound_check(&g, &h, &pi)?,
        || "bound checker returned false".into(),
    );

    // order-6 Latin square graphs of the two non-isomorphic groups
    let a = latin_square_graph(&LatinSquare::from_group(&latin::cyclic_group(6))?).graph;
    let b = latin_square_graph(&LatinSquare::from_group(&latin::symmetric_group_3())?).graph;
    let da = DenseGraph::from_graph(&a);
    let db = DenseGraph::from_graph(&b);
    for i in 0..samples.min(500) {
        let perm = sampling::random_perm(&mut rng, da.n());
        let q = dense::mmc_count(&da, &db, &perm).0;
        report.check(
            format!("z6/s3 latin square graphs sample {i}"),
            q >= 2,
            || format!("mismatch count {q} below 2"),
        );
    }
    Ok(())
}

fn cor_5_3(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let samples = params.samples.unwrap_or(10_000);
    let gamma = registry::named_group(params.gamma.as_deref().unwrap_or("z2"))?;
    let t = twinned_alignment(&gamma)?;
    let n = t.n();
    let bound = t.sqrt_n().saturating_sub(5);
    let dg = DenseGraph::from_graph(&t.g.graph);
    let dh = DenseGraph::from_graph(&t.h.graph);
    let mut rng = sampling::rng(params.seed);
    for i in 0..samples {
        let perm = sampling::random_perm(&mut rng, dg.n());
        let q = dense::mmc_count(&dg, &dh, &perm).0;
        report.check_with(
            format!("n={n} sample {i}"),
            q >= bound,
            || format!("mismatch count {q} below sqrt(n) - 5 = {bound}"),
            || witness_pair(&t.g.graph, &t.h.graph, &dg.alignment_from_perm(&dh, &perm)),
        );
    }
    Ok(())
}

fn prop_a_1(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let gammas: Vec<String> = match &params.gamma {
        Some(g) => vec![g.clone()],
        None => vec!["trivial".into(), "z2".into(), "z3".into()],
    };
    for spec in &gammas {
        let gamma = registry::named_group(spec)?;
        let t = twinned_alignment(&gamma)?;
        let sqrt_n = t.sqrt_n();
        let sg = mismatch_graph(&t.g.graph, &t.h.graph, &t.alignment)
            .map_err(|e| ClaimError::Run(e.to_string()))?;

        let mut degree_ok = true;
        for v in sg.vertices() {
            let cell = t.h.cell_of(v).expect("mismatch vertices are target cells");
            let expect = if cell_is_even(cell) { sqrt_n } else { 0 };
            if sg.degree(v) != Some(expect) {
                degree_ok = false;
                break;
            }
        }
        report.check(
            format!("gamma={spec}: degrees (sqrt(n) = {sqrt_n})"),
            degree_ok,
            || "an even cell misses degree sqrt(n) or an odd cell is not isolated".into(),
        );

        let q = metrics::mmc_of(&sg).value;
        report.check(
            format!("gamma={spec}: maximum mismatch count"),
            q == sqrt_n,
            || format!("mismatch count {q}, expected {sqrt_n}"),
        );

        let inv = t.alignment.inverse();
        let mut entries_only = true;
        for e in sg.pos_edges() {
            let pre = Edge::new(inv.get(e.a()).unwrap().clone(), inv.get(e.b()).unwrap().clone());
            if classify_edge(&t.g, &pre)? != EdgeKind::Entry {
                entries_only = false;
            }
        }
        for e in sg.neg_edges() {
            if classify_edge(&t.h, &e)? != EdgeKind::Entry {
                entries_only = false;
            }
        }
        report.check(
            format!("gamma={spec}: edge kinds"),
            entries_only,
            || "a mismatch edge is a row or column edge".into(),
        );

        // tightness sandwich against the naive regular bound
        report.check(
            format!("gamma={spec}: tightness"),
            sqrt_n.saturating_sub(5) <= q && q <= 6 * (sqrt_n - 1),
            || format!("{q} escapes [{}, {}]", sqrt_n.saturating_sub(5), 6 * (sqrt_n - 1)),
        );
    }
    Ok(())
}

fn lemma_a_2(report: &mut VerificationReport, params: &ClaimParams) -> Result<(), ClaimError> {
    let gammas: Vec<String> = match &params.gamma {
        Some(g) => vec![g.clone()],
        None => vec!["trivial".into(), "z2".into()],
    };
    for spec in &gammas {
        let gamma = registry::named_group(spec)?;
        let t = twinned_alignment(&gamma)?;
        let alpha = t.group_g.alpha();

        let mut parity_ok = true;
        let mut twin_rule_ok = true;
        for a in 0..alpha {
            for b in 0..alpha {
                let twinned = latin::is_twinned(&t.group_g, &t.group_h, (a, b), (a, b))?;
                let even = cell_is_even((a, b));
                if !even && !twinned {
                    parity_ok = false;
                }
                if even {
                    let both_even = a % 2 == 0 && b % 2 == 0;
                    if twinned != both_even {
                        twin_rule_ok = false;
                    }
                }
            }
        }
        report.check(
            format!("gamma={spec}: odd cells twin with their image"),
            parity_ok,
            || "an odd cell is not twinned with its index-wise image".into(),
        );
        report.check(
            format!("gamma={spec}: even cells twin exactly when both components are even"),
            twin_rule_ok,
            || "the even-cell twinning rule fails".into(),
        );

        // products over odd inner components agree in one group exactly
        // when they agree in the other
        let odd_elems: Vec<usize> = (0..alpha).filter(|e| e % 2 == 1).collect();
        let mut product_ok = true;
        'outer: for &a in &odd_elems {
            for &b in &odd_elems {
                for &c in &odd_elems {
                    for &d in &odd_elems {
                        let left = t.group_g.mul(a, b) == t.group_g.mul(c, d);
                        let right = t.group_h.mul(a, b) == t.group_h.mul(c, d);
                        if left != right {
                            product_ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.check(
            format!("gamma={spec}: odd-component product correspondence"),
            product_ok,
            || "products disagree between the two groups".into(),
        );
    }
    Ok(())
}
