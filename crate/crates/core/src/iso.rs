//! Exact graph isomorphism on small graphs.
//!
//! Cheap invariants (orders, sizes, degree multisets, bipartiteness,
//! spectra) run first and may refute isomorphism at any size. The witness
//! search itself is a backtracking matcher and is capped: above the cap,
//! an instance the prefilters cannot refute is an error, never a guess.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::dense::DenseGraph;
use crate::graph::{Alignment, Graph};
use crate::spectral;

/// Default cap on the order accepted by the exhaustive search.
pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoError {
    CapExceeded { order: usize, cap: usize },
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::CapExceeded { order, cap } => write!(
                f,
                "order {order} exceeds the search cap {cap} and prefilters cannot decide"
            ),
        }
    }
}

impl core::error::Error for IsoError {}

/// A witnessing isomorphism, or `None` when the graphs differ.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Alignment>, IsoError> {
    are_isomorphic_capped(g, h, DEFAULT_CAP)
}

pub fn are_isomorphic_capped(
    g: &Graph,
    h: &Graph,
    cap: usize,
) -> Result<Option<Alignment>, IsoError> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
        || g.two_coloring().is_some() != h.two_coloring().is_some()
    {
        return Ok(None);
    }
    if g.vertex_count() > 2 && !cospectral(g, h) {
        return Ok(None);
    }
    let n = g.vertex_count();
    if n > cap {
        return Err(IsoError::CapExceeded { order: n, cap });
    }
    if n == 0 {
        return Ok(Some(Alignment::from_pairs::<_, crate::graph::VertexId>([]).unwrap()));
    }
    let dg = DenseGraph::from_graph(g);
    let dh = DenseGraph::from_graph(h);
    let mut mapping = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    let order = search_order(&dg);
    if match_next(&dg, &dh, &order, 0, &mut mapping, &mut used) {
        Ok(Some(dg.alignment_from_perm(&dh, &mapping)))
    } else {
        Ok(None)
    }
}

fn cospectral(g: &Graph, h: &Graph) -> bool {
    let a = spectral::spectrum(g);
    let b = spectral::spectrum(h);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-6)
}

/// Static matching order: start from the highest degree vertex, then
/// greedily take the vertex with the most already-ordered neighbours.
fn search_order(g: &DenseGraph) -> Vec<usize> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = alloc::vec![false; n];
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let anchored = g.neighbors(v).filter(|&w| placed[w]).count();
                (anchored, g.degree(v), core::cmp::Reverse(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

fn match_next(
    g: &DenseGraph,
    h: &DenseGraph,
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    'cands: for w in 0..h.n() {
        if used[w] || g.degree(u) != h.degree(w) {
            continue;
        }
        // adjacency with every already-mapped vertex must agree exactly
        for &v in &order[..depth] {
            if g.has_edge(u, v) != h.has_edge(w, mapping[v]) {
                continue 'cands;
            }
        }
        mapping[u] = w;
        used[w] = true;
        if match_next(g, h, order, depth + 1, mapping, used) {
            return true;
        }
        mapping[u] = usize::MAX;
        used[w] = false;
    }
    false
}

/// True when `pi` maps `g` onto `h` edge-for-edge.
pub fn is_isomorphism(g: &Graph, h: &Graph, pi: &Alignment) -> bool {
    if !pi.is_bijection_between(g, h) {
        return false;
    }
    let image: BTreeMap<_, _> = pi.iter().collect();
    g.edges().all(|e| h.has_edge(image[e.a()], image[e.b()]))
        && g.edge_count() == h.edge_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::mismatch_graph;

    #[test]
    fn relabelled_cycles_match() {
        let g = fixtures::cycle(4);
        let h = Graph::from_edges(
            ["w", "x", "y", "z"],
            [("w", "y"), ("y", "x"), ("x", "z"), ("z", "w")],
        )
        .unwrap();
        let pi = are_isomorphic(&g, &h).unwrap().unwrap();
        assert!(is_isomorphism(&g, &h, &pi));
    }

    #[test]
    fn witness_has_empty_mismatch_graph() {
        let g = fixtures::prism(4);
        let h = fixtures::relabel_prefixed(&g, "p");
        let pi = are_isomorphic(&g, &h).unwrap().unwrap();
        assert!(mismatch_graph(&g, &h, &pi).unwrap().is_edgeless());
    }

    #[test]
    fn bipartiteness_prefilter_separates_k33_from_prism() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::prism(3);
        assert_eq!(are_isomorphic(&g, &h).unwrap(), None);
    }

    #[test]
    fn shrikhande_vs_rook_not_isomorphic() {
        // Cospectral with equal degree sequences: prefilters cannot refute
        // this pair, the search itself must.
        let s = fixtures::shrikhande();
        let r = fixtures::rook4();
        assert!(matches!(
            are_isomorphic(&s, &r),
            Err(IsoError::CapExceeded { order: 16, cap: 12 })
        ));
        assert_eq!(are_isomorphic_capped(&s, &r, 16).unwrap(), None);
        // sanity: each is isomorphic to a relabelling of itself
        let s2 = fixtures::relabel_prefixed(&s, "s");
        assert!(are_isomorphic_capped(&s, &s2, 16).unwrap().is_some());
    }

    #[test]
    fn cubic_catalog_members_are_pairwise_distinct() {
        let cat = fixtures::cubic_catalog(6);
        assert_eq!(cat.len(), 2);
        assert_eq!(are_isomorphic(&cat[0], &cat[1]).unwrap(), None);
    }
}
