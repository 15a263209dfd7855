//! Property tests over random small graphs and bijections.

use proptest::prelude::*;

use mismatch_core::graph::{mismatch_graph, Alignment, Graph, VertexId};
use mismatch_core::metrics::{self, PExponent};
use mismatch_core::{dense, iso, spectral};

/// A graph on labels 0..n with arbitrary edges.
fn arb_graph(n: usize) -> impl Strategy<Value = Graph> {
    let slots = n * (n - 1) / 2;
    prop::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
        let mut g = Graph::with_vertices(0..n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k] {
                    g.add_edge(VertexId::from(i), VertexId::from(j)).unwrap();
                }
                k += 1;
            }
        }
        g
    })
}

/// Two graphs of one order plus a bijection between them.
fn arb_pair() -> impl Strategy<Value = (Graph, Graph, Alignment)> {
    (2usize..7)
        .prop_flat_map(|n| {
            (
                arb_graph(n),
                arb_graph(n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(g, h, perm)| {
            let pi = Alignment::from_pairs(
                perm.iter()
                    .enumerate()
                    .map(|(i, &t)| (VertexId::from(i), VertexId::from(t))),
            )
            .unwrap();
            (g, h, pi)
        })
}

proptest! {
    #[test]
    fn mismatch_with_self_is_empty(g in (2usize..8).prop_flat_map(arb_graph)) {
        let sg = mismatch_graph(&g, &g, &Alignment::identity_on(&g)).unwrap();
        prop_assert!(sg.is_edgeless());
    }

    #[test]
    fn edit_norm_is_symmetric_and_half_volume((g, h, pi) in arb_pair()) {
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        let edit = metrics::mu_edit(&g, &h, &pi).unwrap();
        prop_assert_eq!(edit, sg.pos_count() + sg.neg_count());
        prop_assert_eq!(edit * 2, sg.volume());
        prop_assert_eq!(edit, metrics::mu_edit(&h, &g, &pi.inverse()).unwrap());
    }

    #[test]
    fn degree_like_norms_collapse_to_mmc((g, h, pi) in arb_pair()) {
        let q = metrics::mmc(&g, &h, &pi).unwrap().value as f64;
        for p in [PExponent::ONE, PExponent::INFINITY] {
            prop_assert_eq!(metrics::mu_p(&g, &h, &pi, p).unwrap().value(), Some(q));
            prop_assert_eq!(metrics::mu_abs_p(&g, &h, &pi, p).unwrap().value(), Some(q));
        }
    }

    #[test]
    fn norms_respect_the_mmc_sandwich((g, h, pi) in arb_pair()) {
        let q = metrics::mmc(&g, &h, &pi).unwrap().value;
        for p in [1.0, 1.5, 2.0, 3.0] {
            let p = PExponent::new(p).unwrap();
            let bound = metrics::mmc_sandwich(q, p);
            for v in [
                metrics::mu_p(&g, &h, &pi, p).unwrap(),
                metrics::mu_abs_p(&g, &h, &pi, p).unwrap(),
            ] {
                prop_assert!(v.lo() >= bound.lo() - 1e-9);
                prop_assert!(v.hi() <= bound.hi() + 1e-9);
                prop_assert!(v.lo() <= v.hi() + 1e-12);
            }
        }
    }

    #[test]
    fn dense_counts_agree_with_signed_graph((g, h, pi) in arb_pair()) {
        let dg = dense::DenseGraph::from_graph(&g);
        let dh = dense::DenseGraph::from_graph(&h);
        let perm = dg.perm_from_alignment(&dh, &pi).unwrap();
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        prop_assert_eq!(dense::edit_count(&dg, &dh, &perm), sg.edge_count());
        prop_assert_eq!(
            dense::mmc_count(&dg, &dh, &perm).0,
            sg.max_degree().map_or(0, |(d, _)| d)
        );
    }

    #[test]
    fn spectrum_trace_vanishes(g in (2usize..8).prop_flat_map(arb_graph)) {
        let sum: f64 = spectral::spectrum(&g).iter().sum();
        prop_assert!(sum.abs() <= 1e-6 * g.vertex_count() as f64);
    }

    #[test]
    fn isomorphism_witness_has_empty_mismatch(g in (2usize..7).prop_flat_map(arb_graph), seed in any::<u64>()) {
        // relabel by a seeded shuffle, then recover a witness
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut h = Graph::with_vertices(perm.iter().map(|&t| VertexId::from(t + 100)));
        for e in g.edges() {
            let a: usize = e.a().as_str().parse().unwrap();
            let b: usize = e.b().as_str().parse().unwrap();
            h.add_edge(VertexId::from(perm[a] + 100), VertexId::from(perm[b] + 100)).unwrap();
        }
        let witness = iso::are_isomorphic(&g, &h).unwrap();
        prop_assert!(witness.is_some());
        let sg = mismatch_graph(&g, &h, &witness.unwrap()).unwrap();
        prop_assert!(sg.is_edgeless());
    }
}
