//! Named fixtures and group specifications accepted on the command line.

use std::collections::BTreeSet;

use mismatch_core::fixtures;
use mismatch_core::gadgets::{build_hk, canonical_ab, HkGraph};
use mismatch_core::graph::{Graph, VertexId};
use mismatch_core::latin::{self, GroupTable};

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown graph id {0:?}")]
    UnknownGraph(String),
    #[error("unknown core id {0:?} (expected one of k33, q3, k33-k33, q3-k33)")]
    UnknownCore(String),
    #[error("bad group spec {0:?} (expected trivial, z<n>, z2z2, s3 or product:<a>*<b>)")]
    BadGroupSpec(String),
}

/// Resolves a fixture id such as `k4`, `c6`, `q3` or `shrikhande`.
pub fn named_graph(id: &str) -> Result<Graph, RegistryError> {
    let id = id.trim().to_ascii_lowercase();
    // exact ids win over the c<n>/k<n> prefix rules (k33 is the bipartite one)
    match id.as_str() {
        "k33" => return Ok(fixtures::complete_bipartite(3, 3)),
        "prism" => return Ok(fixtures::prism(3)),
        "q3" | "cube" => return Ok(fixtures::hypercube(3)),
        "petersen" => return Ok(fixtures::petersen()),
        "shrikhande" => return Ok(fixtures::shrikhande()),
        "rook4" => return Ok(fixtures::rook4()),
        "k4-k4" => return Ok(fixtures::double_k4()),
        "k33-k33" => return Ok(fixtures::double_k33()),
        "q3-k33" => return Ok(fixtures::cube_plus_k33()),
        _ => {}
    }
    if let Some(n) = id.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 3 {
            return Ok(fixtures::cycle(n));
        }
    }
    if let Some(n) = id.strip_prefix('k').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(fixtures::complete(n));
        }
    }
    Err(RegistryError::UnknownGraph(id))
}

/// A 3-regular bipartite core paired with its chorded-cycle counterpart
/// and balanced independent partition.
pub struct ResCore {
    pub name: String,
    pub graph: Graph,
    pub k: usize,
    pub a_set: BTreeSet<VertexId>,
    pub b_set: BTreeSet<VertexId>,
    pub hk: HkGraph,
    pub hamiltonian: bool,
}

/// The cores the restricted-family claims run on. `k33` and `q3` are
/// Hamiltonian; the disjoint unions are not.
pub fn res_core(id: &str) -> Result<ResCore, RegistryError> {
    let id = id.trim().to_ascii_lowercase();
    let (graph, hamiltonian) = match id.as_str() {
        "k33" => (fixtures::complete_bipartite(3, 3), true),
        "q3" | "cube" => (fixtures::hypercube(3), true),
        "k33-k33" => (fixtures::double_k33(), false),
        "q3-k33" => (fixtures::cube_plus_k33(), false),
        _ => return Err(RegistryError::UnknownCore(id)),
    };
    let (a_set, b_set) = canonical_ab(&graph)
        .ok()
        .or_else(|| fixtures::balanced_bipartition(&graph))
        .expect("registered cores are bipartite and balanced");
    let k = graph.vertex_count() / 2;
    let hk = build_hk(k).expect("k >= 2 for registered cores");
    Ok(ResCore { name: id, graph, k, a_set, b_set, hk, hamiltonian })
}

pub const RES_CORES: [&str; 4] = ["k33", "q3", "k33-k33", "q3-k33"];

/// Parses a group spec: `trivial`, `z<n>`, `z2z2`, `s3`, or
/// `product:<a>*<b>` with recursive factors.
pub fn named_group(spec: &str) -> Result<GroupTable, RegistryError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("product:") {
        let (a, b) = rest
            .split_once('*')
            .ok_or_else(|| RegistryError::BadGroupSpec(spec.into()))?;
        return Ok(latin::group_product(&named_group(a)?, &named_group(b)?));
    }
    match spec.to_ascii_lowercase().as_str() {
        "trivial" => Ok(latin::trivial_group()),
        "z2z2" => Ok(latin::builtin_groups().1),
        "s3" => Ok(latin::symmetric_group_3()),
        s => {
            if let Some(n) = s.strip_prefix('z').and_then(|x| x.parse::<usize>().ok()) {
                if n >= 1 {
                    return Ok(latin::cyclic_group(n));
                }
            }
            Err(RegistryError::BadGroupSpec(spec.into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_fixture_ids() {
        assert_eq!(named_graph("k4").unwrap().vertex_count(), 4);
        assert_eq!(named_graph("c6").unwrap().edge_count(), 6);
        assert_eq!(named_graph("q3-k33").unwrap().vertex_count(), 14);
        assert!(named_graph("nope").is_err());
        // the exact id k33 must beat the k<n> rule
        let k33 = named_graph("k33").unwrap();
        assert_eq!(k33.vertex_count(), 6);
        assert_eq!(k33.regular_degree(), Some(3));
        assert_eq!(named_graph("k5").unwrap().vertex_count(), 5);
    }

    #[test]
    fn res_cores_are_well_formed() {
        for id in RES_CORES {
            let core = res_core(id).unwrap();
            assert_eq!(core.graph.regular_degree(), Some(3));
            assert_eq!(core.a_set.len(), core.k);
            assert_eq!(core.b_set.len(), core.k);
            assert_eq!(core.hk.graph.vertex_count(), 2 * core.k);
            let expected = mismatch_core::hamilton::hamiltonian_cycle(&core.graph)
                .unwrap()
                .is_some();
            assert_eq!(core.hamiltonian, expected, "{id}");
        }
    }

    #[test]
    fn parses_group_specs() {
        assert_eq!(named_group("trivial").unwrap().alpha(), 1);
        assert_eq!(named_group("z6").unwrap().alpha(), 6);
        assert_eq!(named_group("s3").unwrap().alpha(), 6);
        assert_eq!(named_group("product:z2*z4").unwrap().alpha(), 8);
        assert_eq!(named_group("product:z2*product:z2*z2").unwrap().alpha(), 8);
        assert!(named_group("q8").is_err());
    }
}
