//! Exact Hamiltonian cycle search on small graphs.
//!
//! The search is a capped oracle: it backtracks over simple paths with
//! degree pruning and refuses instances above the cap instead of guessing,
//! because other modules use its answer as ground truth.

use alloc::vec::Vec;
use core::fmt;

use crate::dense::DenseGraph;
use crate::graph::{Graph, VertexId};

/// Default cap on the vertex count accepted by [`hamiltonian_cycle`].
pub const DEFAULT_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamError {
    CapExceeded { order: usize, cap: usize },
}

impl fmt::Display for HamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HamError::CapExceeded { order, cap } => {
                write!(f, "graph order {order} exceeds the search cap {cap}")
            }
        }
    }
}

impl core::error::Error for HamError {}

/// A Hamiltonian cycle as a vertex sequence (closing edge implied), or
/// `None` when the graph has none.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<VertexId>>, HamError> {
    hamiltonian_cycle_capped(g, DEFAULT_CAP)
}

pub fn hamiltonian_cycle_capped(g: &Graph, cap: usize) -> Result<Option<Vec<VertexId>>, HamError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(HamError::CapExceeded { order: n, cap });
    }
    if n < 3 || !g.is_connected() {
        return Ok(None);
    }
    if g.vertices().any(|v| g.degree(v).unwrap() < 2) {
        return Ok(None);
    }
    let dg = DenseGraph::from_graph(g);
    let mut path = Vec::with_capacity(n);
    path.push(0usize);
    let mut visited = alloc::vec![false; n];
    visited[0] = true;
    if extend(&dg, &mut path, &mut visited) {
        Ok(Some(path.into_iter().map(|i| dg.label(i).clone()).collect()))
    } else {
        Ok(None)
    }
}

fn extend(g: &DenseGraph, path: &mut Vec<usize>, visited: &mut [bool]) -> bool {
    let n = g.n();
    if path.len() == n {
        return g.has_edge(*path.last().unwrap(), path[0]);
    }
    let last = *path.last().unwrap();
    for w in g.neighbors(last) {
        if visited[w] {
            continue;
        }
        // Degree pruning: an unvisited vertex other than the frontier must
        // keep two open connections (start counts while the cycle is open).
        visited[w] = true;
        path.push(w);
        let feasible = (0..n).all(|x| {
            if visited[x] {
                return true;
            }
            let mut open = 0;
            for y in g.neighbors(x) {
                if !visited[y] || y == w || y == path[0] {
                    open += 1;
                }
            }
            open >= 2
        });
        if feasible && extend(g, path, visited) {
            return true;
        }
        path.pop();
        visited[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn check_cycle(g: &Graph, cycle: &[VertexId]) {
        assert_eq!(cycle.len(), g.vertex_count());
        for i in 0..cycle.len() {
            let j = (i + 1) % cycle.len();
            assert!(g.has_edge(&cycle[i], &cycle[j]), "missing edge {i}-{j}");
        }
        let mut sorted: Vec<_> = cycle.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), cycle.len());
    }

    #[test]
    fn complete_graph_has_cycle() {
        let g = fixtures::complete(4);
        let c = hamiltonian_cycle(&g).unwrap().unwrap();
        check_cycle(&g, &c);
    }

    #[test]
    fn k33_has_alternating_cycle() {
        let g = fixtures::complete_bipartite(3, 3);
        let c = hamiltonian_cycle(&g).unwrap().unwrap();
        check_cycle(&g, &c);
    }

    #[test]
    fn star_has_none() {
        assert_eq!(hamiltonian_cycle(&fixtures::star(3)).unwrap(), None);
    }

    #[test]
    fn petersen_has_none() {
        assert_eq!(hamiltonian_cycle(&fixtures::petersen()).unwrap(), None);
    }

    #[test]
    fn disconnected_has_none() {
        assert_eq!(hamiltonian_cycle(&fixtures::double_k33()).unwrap(), None);
    }

    #[test]
    fn cap_is_enforced() {
        let g = fixtures::cycle(10);
        assert!(matches!(
            hamiltonian_cycle_capped(&g, 8),
            Err(HamError::CapExceeded { order: 10, cap: 8 })
        ));
    }

    /// Independent oracle: try every cyclic vertex order.
    fn brute_force_hamiltonian(g: &Graph) -> bool {
        use core::ops::ControlFlow;
        let dg = DenseGraph::from_graph(g);
        let n = dg.n();
        if n < 3 {
            return false;
        }
        let mut found = false;
        crate::perm::visit_permutations(n - 1, |tail| {
            let mut order = alloc::vec![0usize];
            order.extend(tail.iter().map(|&x| x + 1));
            let ok = (0..n).all(|i| dg.has_edge(order[i], order[(i + 1) % n]));
            if ok {
                found = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found
    }

    #[test]
    fn agrees_with_permutation_search_up_to_eight_vertices() {
        let mut graphs = alloc::vec![
            fixtures::complete(4),
            fixtures::cycle(5),
            fixtures::path(5),
            fixtures::star(4),
            fixtures::complete_bipartite(2, 3),
            fixtures::complete_bipartite(3, 3),
            fixtures::prism(3),
            fixtures::prism(4),
            fixtures::hypercube(3),
        ];
        graphs.extend(fixtures::cubic_catalog(8));
        for g in &graphs {
            let fast = hamiltonian_cycle(g).unwrap();
            assert_eq!(fast.is_some(), brute_force_hamiltonian(g), "{g:?}");
            if let Some(c) = fast {
                check_cycle(g, &c);
            }
        }
    }
}
