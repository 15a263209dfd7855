//! Named small graphs used as ground truth across the test and
//! verification suites, plus a catalog of connected cubic graphs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::iso;

/// Complete graph on vertices `0..n`.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(VertexId::from(i), VertexId::from(j)).unwrap();
        }
    }
    g
}

/// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = Graph::with_vertices(0..n);
    for i in 0..n {
        g.add_edge(VertexId::from(i), VertexId::from((i + 1) % n)).unwrap();
    }
    g
}

/// Path 0-1-...-(n-1).
pub fn path(n: usize) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for i in 1..n {
        g.add_edge(VertexId::from(i - 1), VertexId::from(i)).unwrap();
    }
    g
}

/// Star with centre `0` and `leaves` outer vertices.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::with_vertices(0..=leaves);
    for i in 1..=leaves {
        g.add_edge(VertexId::from(0usize), VertexId::from(i)).unwrap();
    }
    g
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::with_vertices(0..a + b);
    for i in 0..a {
        for j in a..a + b {
            g.add_edge(VertexId::from(i), VertexId::from(j)).unwrap();
        }
    }
    g
}

/// Circular ladder: cycles `0..k` and `k..2k` joined by rungs. `prism(3)`
/// is the triangular prism, 3-regular on 6 vertices.
pub fn prism(k: usize) -> Graph {
    assert!(k >= 3);
    let mut g = Graph::with_vertices(0..2 * k);
    for i in 0..k {
        g.add_edge(VertexId::from(i), VertexId::from((i + 1) % k)).unwrap();
        g.add_edge(VertexId::from(k + i), VertexId::from(k + (i + 1) % k)).unwrap();
        g.add_edge(VertexId::from(i), VertexId::from(k + i)).unwrap();
    }
    g
}

/// The d-dimensional hypercube on labels `0..2^d`; `hypercube(3)` is the
/// cube graph, 3-regular bipartite on 8 vertices.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut g = Graph::with_vertices(0..n);
    for v in 0..n {
        for bit in 0..d {
            let w = v ^ (1 << bit);
            if v < w {
                g.add_edge(VertexId::from(v), VertexId::from(w)).unwrap();
            }
        }
    }
    g
}

/// The Petersen graph: the smallest connected non-Hamiltonian cubic graph.
pub fn petersen() -> Graph {
    let mut g = Graph::with_vertices(0..10usize);
    for i in 0..5 {
        // outer 5-cycle, spokes, inner pentagram
        g.add_edge(VertexId::from(i), VertexId::from((i + 1) % 5)).unwrap();
        g.add_edge(VertexId::from(i), VertexId::from(i + 5)).unwrap();
        g.add_edge(VertexId::from(5 + i), VertexId::from(5 + (i + 2) % 5)).unwrap();
    }
    g
}

/// The Shrikhande graph: vertices Z4 x Z4, adjacency by difference in
/// {±(1,0), ±(0,1), ±(1,1)}. Strongly regular with parameters (16,6,2,2).
pub fn shrikhande() -> Graph {
    let label = |i: usize, j: usize| VertexId::new(format!("({i},{j})"));
    let mut g = Graph::new();
    for i in 0..4 {
        for j in 0..4 {
            g.add_vertex(label(i, j));
        }
    }
    let deltas = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    for i in 0..4 {
        for j in 0..4 {
            for (di, dj) in deltas {
                let (a, b) = ((i + di) % 4, (j + dj) % 4);
                g.add_edge(label(i, j), label(a, b)).unwrap();
            }
        }
    }
    g
}

/// The 4x4 rook graph: cells of a 4x4 grid, adjacent in the same row or
/// column. Cospectral with the Shrikhande graph but not isomorphic to it.
pub fn rook4() -> Graph {
    let label = |i: usize, j: usize| VertexId::new(format!("({i},{j})"));
    let mut g = Graph::new();
    for i in 0..4 {
        for j in 0..4 {
            g.add_vertex(label(i, j));
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if k != j {
                    g.add_edge(label(i, j), label(i, k)).unwrap();
                }
                if k != i {
                    g.add_edge(label(i, j), label(k, j)).unwrap();
                }
            }
        }
    }
    g
}

/// Disjoint union. Label sets must already be disjoint.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new();
    for v in a.vertices().chain(b.vertices()) {
        assert!(g.add_vertex(v.clone()), "label collision at {v}");
    }
    for e in a.edges().chain(b.edges()) {
        g.add_edge(e.a().clone(), e.b().clone()).unwrap();
    }
    g
}

/// Copy of `g` with every label prefixed.
pub fn relabel_prefixed(g: &Graph, prefix: &str) -> Graph {
    let map = |v: &VertexId| VertexId::new(format!("{prefix}{v}"));
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(map(v));
    }
    for e in g.edges() {
        out.add_edge(map(e.a()), map(e.b())).unwrap();
    }
    out
}

/// Two disjoint copies of K4 on labels 0..3 and 4..7: the smallest
/// non-Hamiltonian 3-regular graph.
pub fn double_k4() -> Graph {
    let mut g = Graph::with_vertices(0..8usize);
    for c in [0usize, 4] {
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(VertexId::from(c + i), VertexId::from(c + j)).unwrap();
            }
        }
    }
    g
}

/// Two disjoint copies of K33 on labels 0..5 and 6..11: a non-Hamiltonian
/// 3-regular bipartite graph on 12 vertices.
pub fn double_k33() -> Graph {
    let mut g = Graph::with_vertices(0..12usize);
    for c in [0usize, 6] {
        for i in 0..3 {
            for j in 3..6 {
                g.add_edge(VertexId::from(c + i), VertexId::from(c + j)).unwrap();
            }
        }
    }
    g
}

/// Cube plus a disjoint K33 on labels 0..7 and 8..13: a non-Hamiltonian
/// 3-regular bipartite graph on 14 vertices (odd half-order).
pub fn cube_plus_k33() -> Graph {
    let cube = hypercube(3);
    let mut g = Graph::new();
    for v in cube.vertices() {
        g.add_vertex(v.clone());
    }
    for e in cube.edges() {
        g.add_edge(e.a().clone(), e.b().clone()).unwrap();
    }
    for i in 8..11usize {
        for j in 11..14usize {
            g.add_edge(VertexId::from(i), VertexId::from(j)).unwrap();
        }
    }
    g
}

/// For a bipartite regular graph, splits each component's colour classes
/// into two equal-size independent sets covering the graph. The class
/// containing a component's smallest vertex goes to the first set.
pub fn balanced_bipartition(g: &Graph) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
    let (a, b) = g.two_coloring()?;
    (a.len() == b.len()).then_some((a, b))
}

/// All connected 3-regular graphs on `n` vertices, one per isomorphism
/// class, generated by degree-constrained backtracking and deduplicated
/// with the exact isomorphism test. Feasible for n <= 10.
pub fn cubic_catalog(n: usize) -> Vec<Graph> {
    assert!(n <= 10, "catalog generation is exhaustive; keep n small");
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut reps: Vec<(Vec<u64>, Graph)> = Vec::new();
    let mut adj = alloc::vec![0u16; n];
    fill_cubic(0, &mut adj, n, &mut |adj| {
        let g = graph_of_masks(adj);
        if !g.is_connected() {
            return;
        }
        // spectrum keys keep the quadratic isomorphism pass cheap
        let key: Vec<u64> = crate::spectral::spectrum(&g)
            .iter()
            .map(|x| crate::flt::round(x * 1e6) as i64 as u64)
            .collect();
        for (k, rep) in &reps {
            if *k == key && iso::are_isomorphic(rep, &g).unwrap().is_some() {
                return;
            }
        }
        reps.push((key, g));
    });
    reps.into_iter().map(|(_, g)| g).collect()
}

fn graph_of_masks(adj: &[u16]) -> Graph {
    let n = adj.len();
    let mut g = Graph::with_vertices(0..n);
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] & (1 << v) != 0 {
                g.add_edge(VertexId::from(u), VertexId::from(v)).unwrap();
            }
        }
    }
    g
}

/// Completes vertex `u`'s adjacency using only higher-indexed partners;
/// earlier vertices are already saturated.
fn fill_cubic(u: usize, adj: &mut [u16], n: usize, emit: &mut impl FnMut(&[u16])) {
    if u == n {
        emit(adj);
        return;
    }
    let need = 3 - adj[u].count_ones() as usize;
    let candidates: Vec<usize> = (u + 1..n)
        .filter(|&w| adj[w].count_ones() < 3 && adj[u] & (1 << w) == 0)
        .collect();
    choose_partners(u, &candidates, 0, need, adj, n, emit);
}

fn choose_partners(
    u: usize,
    candidates: &[usize],
    from: usize,
    need: usize,
    adj: &mut [u16],
    n: usize,
    emit: &mut impl FnMut(&[u16]),
) {
    if need == 0 {
        fill_cubic(u + 1, adj, n, emit);
        return;
    }
    if candidates.len() - from < need {
        return;
    }
    for i in from..candidates.len() {
        let w = candidates[i];
        if adj[w].count_ones() >= 3 {
            continue;
        }
        adj[u] |= 1 << w;
        adj[w] |= 1 << u;
        choose_partners(u, candidates, i + 1, need - 1, adj, n, emit);
        adj[u] &= !(1 << w);
        adj[w] &= !(1 << u);
    }
}
