//! Acceptance suite: the contract this workspace is built against, one
//! test per criterion. Each prints a single pass line (visible with
//! `--nocapture`); a failing assertion is the corresponding fail line.
//!
//! Run with: cargo test -p mismatch-cli --test acceptance -- --nocapture

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mismatch_cli::sampling;
use mismatch_core::dense::{self, DenseGraph};
use mismatch_core::gadgets::{
    build_dnq, build_gq, build_hat, build_hk, canonical_ab, verify_mismatch_structure,
    walk_matrix,
};
use mismatch_core::graph::{mismatch_graph, Graph, VertexId};
use mismatch_core::hamilton::hamiltonian_cycle;
use mismatch_core::latin::{
    cell_is_even, classify_edge, cyclic_group, trivial_group, twinned_alignment, EdgeKind,
};
use mismatch_core::metrics::{self, mmc_sandwich, PExponent};
use mismatch_core::solve::{
    conservative_search, delta_branch_and_bound, delta_exhaustive, min_over_restricted,
    DistanceQuery, MetricKind, RestrictedFamily, SearchMode,
};
use mismatch_core::spectral;
use mismatch_core::{check_regular_balance, fixtures, Edge};

const SEED: u64 = 20_240_817;

fn conclude(criterion: usize, detail: &str, start: Instant, limit: Option<Duration>) {
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        assert!(
            elapsed <= limit,
            "criterion {criterion} took {elapsed:?}, over the {limit:?} budget"
        );
    }
    println!("acceptance criterion {criterion}: PASS — {detail} ({elapsed:.2?})");
}

/// Criterion 1: over the full catalogs of connected cubic graphs on 4, 6
/// and 8 vertices, the edit distance to the same-order cycle is exactly
/// n/2 for Hamiltonian graphs and larger otherwise.
#[test]
fn criterion_01_cubic_cycle_distance() {
    let start = Instant::now();
    let expected_counts = [(4usize, 1usize), (6, 2), (8, 5)];
    let mut checked = 0;
    for (n, count) in expected_counts {
        let catalog = fixtures::cubic_catalog(n);
        assert_eq!(catalog.len(), count, "catalog size at n={n}");
        let cycle = fixtures::cycle(n);
        for g in &catalog {
            let ham = hamiltonian_cycle(g).unwrap().is_some();
            let query = DistanceQuery::new(MetricKind::Edit, SearchMode::Exhaustive);
            let delta = delta_exhaustive(g, &cycle, &query).unwrap().value.value().unwrap();
            if ham {
                assert_eq!(delta, (n / 2) as f64, "hamiltonian graph at n={n}");
            } else {
                assert!(delta > (n / 2) as f64, "non-hamiltonian graph at n={n}");
            }
            checked += 1;
        }
    }
    conclude(
        1,
        &format!("{checked} catalog graphs, edit distance n/2 iff Hamiltonian"),
        start,
        Some(Duration::from_secs(60)),
    );
}

/// Criterion 2: every vertex of every mismatch graph of a d-regular
/// equal-order pair balances positive against negative degree.
#[test]
fn criterion_02_regular_balance() {
    let start = Instant::now();
    let mut rng = sampling::rng(SEED);
    let pairs: Vec<(Graph, Graph)> = vec![
        (fixtures::complete(4), fixtures::complete(4)),
        (fixtures::cycle(6), fixtures::cycle(6)),
        (fixtures::complete_bipartite(3, 3), fixtures::prism(3)),
        (fixtures::hypercube(3), fixtures::cubic_catalog(8)[4].clone()),
        (fixtures::double_k4(), fixtures::hypercube(3)),
        (fixtures::shrikhande(), fixtures::rook4()),
    ];
    let mut cases = 0;
    for (g, h) in &pairs {
        for _ in 0..100 {
            let pi = sampling::random_bijection(&mut rng, g, h);
            assert!(check_regular_balance(g, h, &pi).unwrap());
            cases += 1;
        }
    }
    conclude(2, &format!("{cases} seeded bijections balanced"), start, None);
}

/// Criterion 3: fifty seeded (g, h, pi, p) cases stay inside the
/// maximum-mismatch-count sandwich, and the p = 2 values agree with an
/// independent dense eigensolver to 1e-6.
#[test]
fn criterion_03_sandwich_and_p2_oracle() {
    let start = Instant::now();
    let mut rng = sampling::rng(SEED + 3);
    let pairs: Vec<(Graph, Graph)> = vec![
        (fixtures::complete(4), fixtures::cycle(4)),
        (fixtures::complete_bipartite(3, 3), fixtures::prism(3)),
        (fixtures::cycle(6), fixtures::prism(3)),
        (fixtures::hypercube(3), fixtures::double_k4()),
        (fixtures::petersen(), fixtures::petersen()),
    ];
    let exponents = [
        PExponent::ONE,
        PExponent::new(1.5).unwrap(),
        PExponent::TWO,
        PExponent::new(3.0).unwrap(),
        PExponent::INFINITY,
    ];
    let mut cases = 0;
    for (g, h) in &pairs {
        for _ in 0..2 {
            let pi = sampling::random_bijection(&mut rng, g, h);
            let q = metrics::mmc(g, h, &pi).unwrap().value;
            for p in exponents {
                let bound = mmc_sandwich(q, p);
                for v in [
                    metrics::mu_p(g, h, &pi, p).unwrap(),
                    metrics::mu_abs_p(g, h, &pi, p).unwrap(),
                ] {
                    assert!(v.lo() >= bound.lo() - 1e-9, "lower end under the sandwich");
                    assert!(v.hi() <= bound.hi() + 1e-9, "upper end over the sandwich");
                }
                cases += 1;
            }
            // independent eigensolver oracle for the exact p = 2 values
            let sg = mismatch_graph(g, h, &pi).unwrap();
            for (value, matrix) in [
                (
                    metrics::mu_p(g, h, &pi, PExponent::TWO).unwrap(),
                    spectral::signed_adjacency_matrix(&sg),
                ),
                (
                    metrics::mu_abs_p(g, h, &pi, PExponent::TWO).unwrap(),
                    spectral::unsigned_adjacency_matrix(&sg),
                ),
            ] {
                let n = matrix.len();
                let flat: Vec<f64> = matrix.iter().flatten().copied().collect();
                let oracle = nalgebra::DMatrix::from_row_slice(n, n, &flat)
                    .symmetric_eigen()
                    .eigenvalues
                    .iter()
                    .map(|x| x.abs())
                    .fold(0.0f64, f64::max);
                assert!(
                    (value.value().unwrap() - oracle).abs() <= 1e-6,
                    "p=2 disagrees with the dense oracle"
                );
            }
        }
    }
    assert_eq!(cases, 50);
    conclude(3, "50 sandwich cases, p=2 against dense eigensolver", start, None);
}

/// Criterion 4: with q = 3n+4, five hundred seeded alignments that leak a
/// clique vertex into the cycle core each cost more than 3n, while the
/// class-respecting search returns core distance + n/2 exactly.
#[test]
fn criterion_04_clique_gadget_costs() {
    let start = Instant::now();
    let mut rng = sampling::rng(SEED + 4);
    for (core, expected) in [
        (fixtures::complete(4), 4.0),
        (fixtures::complete_bipartite(3, 3), 6.0),
    ] {
        let n = core.vertex_count();
        let q = 3 * n + 4;
        let gq = build_gq(&core, q).unwrap();
        let dnq = build_dnq(n, q).unwrap();
        let dg = DenseGraph::from_graph(&gq.graph);
        let dh = DenseGraph::from_graph(dnq.graph());
        let clique_vertices: Vec<VertexId> = gq
            .graph
            .vertices()
            .filter(|v| !gq.is_core_vertex(v))
            .cloned()
            .collect();
        let cycle_targets: Vec<VertexId> = dnq.base.core.vertices().cloned().collect();
        for _ in 0..500 {
            let src = sampling::pick(&mut rng, &clique_vertices).clone();
            let tgt = sampling::pick(&mut rng, &cycle_targets).clone();
            let pi =
                sampling::random_bijection_forcing(&mut rng, &gq.graph, dnq.graph(), &src, &tgt);
            let perm = dg.perm_from_alignment(&dh, &pi).unwrap();
            assert!(dense::edit_count(&dg, &dh, &perm) > 3 * n);
        }
        let found = conservative_search(&gq, &dnq).unwrap();
        assert!(found.optimal);
        assert_eq!(found.value.value(), Some(expected));
    }
    conclude(
        4,
        "2 x 500 leaky alignments above 3n; class-respecting optima 4 and 6",
        start,
        Some(Duration::from_secs(300)),
    );
}

fn res_family(core: &Graph, k: usize) -> RestrictedFamily {
    let (a, b) = canonical_ab(core)
        .ok()
        .or_else(|| fixtures::balanced_bipartition(core))
        .unwrap();
    RestrictedFamily::for_cores(a, b, &build_hk(k).unwrap()).unwrap()
}

/// Criterion 5: Hamiltonian cores reach restricted mismatch count exactly
/// 2; non-Hamiltonian cores never drop under 4 (even half-order checked
/// exhaustively, odd half-order by seeded sampling).
#[test]
fn criterion_05_restricted_minimum_detects_hamiltonicity() {
    let start = Instant::now();
    for (core, k) in [(fixtures::complete_bipartite(3, 3), 3usize), (fixtures::hypercube(3), 4)] {
        let fam = res_family(&core, k);
        let hk = build_hk(k).unwrap();
        let r = min_over_restricted(&core, &hk.graph, &fam, MetricKind::P(PExponent::ONE)).unwrap();
        assert_eq!(r.value.value(), Some(2.0), "k = {k}");
    }
    // even half-order, exhaustively: (6!)^2 alignments
    {
        let core = fixtures::double_k33();
        let fam = res_family(&core, 6);
        let hk = build_hk(6).unwrap();
        assert_eq!(fam.size(), 518_400);
        let r = min_over_restricted(&core, &hk.graph, &fam, MetricKind::P(PExponent::ONE)).unwrap();
        assert!(r.value.value().unwrap() >= 4.0);
    }
    // odd half-order, sampled: the family is far too large to enumerate
    {
        let core = fixtures::cube_plus_k33();
        let fam = res_family(&core, 7);
        let hk = build_hk(7).unwrap();
        let dg = DenseGraph::from_graph(&core);
        let dh = DenseGraph::from_graph(&hk.graph);
        let mut rng = sampling::rng(SEED + 5);
        for _ in 0..1000 {
            let sigma = sampling::random_restricted(&mut rng, &fam);
            let perm = dg.perm_from_alignment(&dh, &sigma).unwrap();
            assert!(dense::mmc_count(&dg, &dh, &perm).0 >= 4);
        }
    }
    conclude(
        5,
        "minima 2 at k=3,4; all 518400 + 1000 non-Hamiltonian alignments at 4 or more",
        start,
        None,
    );
}

/// Criterion 6: exhaustively over both families at k = 3 and k = 4, the
/// parity structure holds, every degree-4 vertex carries a nonzero signed
/// two-walk sum to some other vertex, and any alignment with maximum
/// degree 4 or more has squared spectral norm above 4 + 1e-6.
#[test]
fn criterion_06_structure_walks_and_spectral_gap() {
    let start = Instant::now();
    let mut alignments = 0usize;
    for (core, k) in [(fixtures::complete_bipartite(3, 3), 3usize), (fixtures::hypercube(3), 4)] {
        let fam = res_family(&core, k);
        let hk = build_hk(k).unwrap();
        for sigma in mismatch_core::solve::enumerate_restricted(&fam) {
            alignments += 1;
            let sg = mismatch_graph(&core, &hk.graph, &sigma).unwrap();
            let report = verify_mismatch_structure(&sg, k);
            assert!(report.passed(), "k={k}: {:?}", report.violations);
            let p = walk_matrix(&sg);
            for (i, v) in p.order.iter().enumerate() {
                assert_eq!(p.entries[i][i], sg.degree(v).unwrap() as i64);
                if sg.degree(v).unwrap() == 4 {
                    assert!(
                        (0..p.order.len()).any(|j| j != i && p.entries[i][j] != 0),
                        "k={k}: degree-4 vertex {v} with zero off-diagonal row"
                    );
                }
            }
            let max_deg = sg.max_degree().map_or(0, |(d, _)| d);
            if max_deg >= 4 {
                let norm = spectral::spectral_norm(
                    spectral::signed_adjacency_matrix(&sg),
                    spectral::DEFAULT_TOL,
                );
                assert!(norm * norm > 4.0 + 1e-6, "k={k}: squared norm at most 4");
            }
        }
    }
    assert_eq!(alignments, 36 + 576);
    conclude(
        6,
        "612 restricted alignments: structure, walk sums and spectral gaps",
        start,
        Some(Duration::from_secs(120)),
    );
}

/// Criterion 7: ten thousand seeded bijections between the two
/// (16, 6, 2, 2) strongly regular graphs never drop under mismatch
/// count 2.
#[test]
fn criterion_07_srg_bound_sampled() {
    let start = Instant::now();
    let g = fixtures::shrikhande();
    let h = fixtures::rook4();
    let dg = DenseGraph::from_graph(&g);
    let dh = DenseGraph::from_graph(&h);
    let mut rng = sampling::rng(SEED + 7);
    for _ in 0..10_000 {
        let perm = sampling::random_perm(&mut rng, dg.n());
        assert!(dense::mmc_count(&dg, &dh, &perm).0 >= 2);
    }
    conclude(
        7,
        "10000 bijections between Shrikhande and rook at count 2 or more",
        start,
        Some(Duration::from_secs(30)),
    );
}

/// Criterion 8: the twinned-cell alignment is exactly sqrt(n)-regular on
/// even cells with sqrt(n) in {4, 8, 12}, odd cells isolated, and every
/// mismatch edge an entry edge.
#[test]
fn criterion_08_twinned_alignment_exact() {
    let start = Instant::now();
    let gammas = [trivial_group(), cyclic_group(2), cyclic_group(3)];
    let expected_sqrt = [4usize, 8, 12];
    for (gamma, sqrt_n) in gammas.iter().zip(expected_sqrt) {
        let t = twinned_alignment(gamma).unwrap();
        assert_eq!(t.sqrt_n(), sqrt_n);
        let sg = mismatch_graph(&t.g.graph, &t.h.graph, &t.alignment).unwrap();
        for v in sg.vertices() {
            let cell = t.h.cell_of(v).unwrap();
            let expect = if cell_is_even(cell) { sqrt_n } else { 0 };
            assert_eq!(sg.degree(v), Some(expect), "cell {cell:?}");
        }
        assert_eq!(metrics::mmc_of(&sg).value, sqrt_n);
        let inv = t.alignment.inverse();
        for e in sg.pos_edges() {
            let pre = Edge::new(inv.get(e.a()).unwrap().clone(), inv.get(e.b()).unwrap().clone());
            assert_eq!(classify_edge(&t.g, &pre).unwrap(), EdgeKind::Entry);
        }
        for e in sg.neg_edges() {
            assert_eq!(classify_edge(&t.h, &e).unwrap(), EdgeKind::Entry);
        }
    }
    conclude(8, "sqrt(n)-regular on evens for sqrt(n) = 4, 8, 12; entry edges only", start, Some(Duration::from_secs(60)));
}

/// Criterion 9: ten thousand seeded bijections between the order-64 Latin
/// square graphs stay at mismatch count sqrt(n) - 5 = 3 or more.
#[test]
fn criterion_09_latin_square_floor_sampled() {
    let start = Instant::now();
    let t = twinned_alignment(&cyclic_group(2)).unwrap();
    assert_eq!(t.n(), 64);
    let dg = DenseGraph::from_graph(&t.g.graph);
    let dh = DenseGraph::from_graph(&t.h.graph);
    let mut rng = sampling::rng(SEED + 9);
    for _ in 0..10_000 {
        let perm = sampling::random_perm(&mut rng, dg.n());
        assert!(dense::mmc_count(&dg, &dh, &perm).0 >= 3);
    }
    conclude(9, "10000 bijections at count 3 = sqrt(64) - 5 or more", start, None);
}

/// Criterion 10: branch and bound equals exhaustive search on every
/// fixture pair of order at most 8 for both integer objectives, and the
/// generated gadget families keep their counting identities.
#[test]
fn criterion_10_solver_soundness_and_generator_identities() {
    let start = Instant::now();
    let order4: Vec<Graph> = vec![
        fixtures::complete(4),
        fixtures::cycle(4),
        fixtures::path(4),
        fixtures::star(3),
    ];
    let order6: Vec<Graph> = vec![
        fixtures::complete_bipartite(3, 3),
        fixtures::prism(3),
        fixtures::cycle(6),
        fixtures::complete_bipartite(2, 4),
        fixtures::star(5),
        fixtures::path(6),
    ];
    let order8: Vec<Graph> =
        vec![fixtures::hypercube(3), fixtures::double_k4(), fixtures::cycle(8)];
    let mut pairs = 0;
    for group in [order4, order6, order8] {
        for i in 0..group.len() {
            for j in i..group.len() {
                pairs += 1;
                for metric in [MetricKind::Edit, MetricKind::P(PExponent::ONE)] {
                    let query = DistanceQuery::new(metric, SearchMode::Exhaustive);
                    let a = delta_exhaustive(&group[i], &group[j], &query).unwrap();
                    let b = delta_branch_and_bound(&group[i], &group[j], &query).unwrap();
                    assert_eq!(a.value.value(), b.value.value());
                    assert!(b.optimal);
                }
            }
        }
    }
    assert!(pairs >= 30, "only {pairs} pairs");

    // generator identities
    for core in [fixtures::complete(4), fixtures::complete_bipartite(3, 3), fixtures::prism(4)] {
        let n = core.vertex_count();
        for q in [1usize, 2, 3 * n + 4] {
            let gq = build_gq(&core, q).unwrap();
            let dnq = build_dnq(n, q).unwrap();
            assert_eq!(gq.graph.edge_count(), dnq.graph().edge_count());
        }
    }
    for (core, k) in [(fixtures::complete_bipartite(3, 3), 3usize), (fixtures::hypercube(3), 4)] {
        let (a, b) = canonical_ab(&core).unwrap();
        let hat_g = build_hat(&core, &a, &b, true).unwrap();
        let hk = build_hk(k).unwrap();
        let even: BTreeSet<VertexId> = hk.even_vertices().into_iter().collect();
        let odd: BTreeSet<VertexId> = hk.odd_vertices().into_iter().collect();
        let hat_h = build_hat(&hk.graph, &even, &odd, false).unwrap();
        assert_eq!(hat_g.graph.degree_sequence(), hat_h.graph.degree_sequence());
    }
    conclude(
        10,
        &format!("branch and bound equals exhaustive on {pairs} pairs; gadget identities hold"),
        start,
        None,
    );
}

/// The registered claim checks behind the criteria all pass end to end at
/// their default desk scale (big cores filtered to keep the suite brisk).
#[test]
fn claim_registry_smoke() {
    use mismatch_cli::claims::{run_claim, ClaimParams};
    let runs: Vec<(&str, ClaimParams)> = vec![
        ("fact-2.1", ClaimParams { samples: Some(20), ..Default::default() }),
        ("fact-3.1", ClaimParams { max_n: Some(6), ..Default::default() }),
        ("lemma-3.3", ClaimParams { samples: Some(50), core: Some("k4".into()), ..Default::default() }),
        ("lemma-3.4", ClaimParams::default()),
        ("lemma-4.1", ClaimParams { samples: Some(30), core: Some("k33".into()), ..Default::default() }),
        ("lemma-4.2", ClaimParams::default()),
        ("lemma-4.3", ClaimParams { samples: Some(100), ..Default::default() }),
        ("lemma-4.4", ClaimParams { samples: Some(100), ..Default::default() }),
        ("lemma-4.5", ClaimParams { core: Some("q3".into()), ..Default::default() }),
        ("prop-4.6", ClaimParams { core: Some("k33".into()), ..Default::default() }),
        ("prop-4.7a", ClaimParams { core: Some("q3".into()), ..Default::default() }),
        ("prop-4.7b", ClaimParams { core: Some("k33".into()), ..Default::default() }),
        ("lemma-4.8", ClaimParams { core: Some("q3".into()), ..Default::default() }),
        ("prop-4.9", ClaimParams { core: Some("q3".into()), ..Default::default() }),
        ("prop-5.2", ClaimParams { samples: Some(500), ..Default::default() }),
        ("cor-5.3", ClaimParams { samples: Some(500), ..Default::default() }),
        ("prop-A.1", ClaimParams::default()),
        ("lemma-A.2", ClaimParams::default()),
    ];
    for (id, params) in runs {
        let report = run_claim(id, &params).unwrap();
        assert!(report.passed(), "{id}: {:?}", report.failures);
        assert_eq!(report.passes + report.failures.len(), report.instances);
    }
}

/// Same command and seed, byte-identical JSON report.
#[test]
fn verify_reports_are_deterministic() {
    use mismatch_cli::claims::{run_claim, ClaimParams};
    let params = ClaimParams { seed: 99, samples: Some(25), ..Default::default() };
    let a = run_claim("prop-5.2", &params).unwrap();
    let b = run_claim("prop-5.2", &params).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
