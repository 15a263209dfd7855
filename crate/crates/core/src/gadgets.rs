//! Degree-forcing gadget constructions and their structural verifiers.
//!
//! Attaching a large clique to every vertex (or a parity-dependent number
//! of pendant leaves) forces any cheap alignment to respect the original
//! vertex classes; the builders here record that structure so solvers and
//! verifiers can exploit it. The chorded-cycle family `hk` provides the
//! 3-regular non-bipartite Hamiltonian counterpart graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Alignment, Edge, Graph, SignedGraph, VertexId};
use crate::spectral;

/// Margin for strict spectral comparisons such as "squared norm above 4";
/// the integer matrices involved keep true gaps far larger at this scale.
pub const SPECTRAL_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetError {
    BadParameter(String),
    LabelClash(VertexId),
    BadPartition(String),
    NotBipartite,
    NotConnected,
}

impl fmt::Display for GadgetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetError::BadParameter(s) => write!(f, "bad parameter: {s}"),
            GadgetError::LabelClash(v) => {
                write!(f, "core label {v} contains '#', which gadget labels reserve")
            }
            GadgetError::BadPartition(s) => write!(f, "bad partition: {s}"),
            GadgetError::NotBipartite => write!(f, "core graph is not bipartite"),
            GadgetError::NotConnected => write!(f, "core graph is not connected"),
        }
    }
}

impl core::error::Error for GadgetError {}

fn check_labels(core: &Graph) -> Result<(), GadgetError> {
    match core.vertices().find(|v| v.as_str().contains('#')) {
        Some(v) => Err(GadgetError::LabelClash(v.clone())),
        None => Ok(()),
    }
}

/// A graph with a `(q+1)`-clique pendant on every original vertex via the
/// edge `(v#1, v)`.
#[derive(Clone, Debug)]
pub struct CliqueGadget {
    pub core: Graph,
    pub q: usize,
    pub graph: Graph,
    /// Original vertex -> its clique's labels `v#1..v#(q+1)`.
    pub clique_of: BTreeMap<VertexId, Vec<VertexId>>,
}

impl CliqueGadget {
    pub fn core_vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.core.vertices()
    }

    pub fn is_core_vertex(&self, v: &VertexId) -> bool {
        self.core.has_vertex(v)
    }
}

/// Builds the clique gadget of `core` with parameter `q >= 1`. The result
/// has `n(q+2)` vertices; vertex `v#i` has degree `q` plus one when `i = 1`.
pub fn build_gq(core: &Graph, q: usize) -> Result<CliqueGadget, GadgetError> {
    if q < 1 {
        return Err(GadgetError::BadParameter("q must be at least 1".into()));
    }
    check_labels(core)?;
    let mut graph = core.clone();
    let mut clique_of = BTreeMap::new();
    for v in core.vertices() {
        let members: Vec<VertexId> = (1..=q + 1).map(|i| VertexId::indexed(v, i)).collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                graph.add_edge(a.clone(), b.clone()).unwrap();
            }
        }
        graph.add_edge(members[0].clone(), v.clone()).unwrap();
        clique_of.insert(v.clone(), members);
    }
    Ok(CliqueGadget { core: core.clone(), q, graph, clique_of })
}

/// The clique gadget of the n-cycle plus a perfect matching between the
/// clique attachment vertices of matched cycle vertices.
#[derive(Clone, Debug)]
pub struct CycleCliqueGadget {
    pub n: usize,
    pub q: usize,
    /// Gadget over the canonical cycle 0-1-...-(n-1)-0.
    pub base: CliqueGadget,
    /// The matching on the cycle, fixed to {(2i, 2i+1)}.
    pub matching: Vec<Edge>,
}

impl CycleCliqueGadget {
    pub fn graph(&self) -> &Graph {
        &self.base.graph
    }
}

/// Builds the matched cycle-clique gadget for even `n >= 4`, `q >= 1`. Of
/// the cycle's two perfect matchings the one containing (0, 1) is used.
pub fn build_dnq(n: usize, q: usize) -> Result<CycleCliqueGadget, GadgetError> {
    if n < 4 || n % 2 != 0 {
        return Err(GadgetError::BadParameter("n must be even and at least 4".into()));
    }
    let cycle = crate::fixtures::cycle(n);
    let mut base = build_gq(&cycle, q)?;
    let mut matching = Vec::with_capacity(n / 2);
    for i in 0..n / 2 {
        let (u, v) = (VertexId::from(2 * i), VertexId::from(2 * i + 1));
        let (u1, v1) = (base.clique_of[&u][0].clone(), base.clique_of[&v][0].clone());
        base.graph.add_edge(u1, v1).unwrap();
        matching.push(Edge::new(u, v));
    }
    Ok(CycleCliqueGadget { n, q, base, matching })
}

/// The chorded even cycle on `{0, ..., 2k-1}`: 3-regular, non-bipartite,
/// Hamiltonian along `0, 1, ..., 2k-1`. The chord rule depends on the
/// parity of `k`; `k = 2` and `k = 3` are degenerate (some of the stated
/// triangle-avoidance structure collapses) and flagged as such.
#[derive(Clone, Debug)]
pub struct HkGraph {
    pub k: usize,
    pub graph: Graph,
    pub chords: BTreeSet<Edge>,
    pub degenerate: bool,
}

impl HkGraph {
    /// Vertices with even numeric label, in order.
    pub fn even_vertices(&self) -> Vec<VertexId> {
        (0..self.k).map(|i| VertexId::from(2 * i)).collect()
    }

    /// Vertices with odd numeric label, in order.
    pub fn odd_vertices(&self) -> Vec<VertexId> {
        (0..self.k).map(|i| VertexId::from(2 * i + 1)).collect()
    }

    /// The built-in Hamiltonian cycle 0, 1, ..., 2k-1.
    pub fn hamiltonian_witness(&self) -> Vec<VertexId> {
        (0..2 * self.k).map(VertexId::from).collect()
    }
}

/// Builds the chorded cycle for `k >= 2`.
pub fn build_hk(k: usize) -> Result<HkGraph, GadgetError> {
    if k < 2 {
        return Err(GadgetError::BadParameter("k must be at least 2".into()));
    }
    let n = 2 * k;
    let mut graph = crate::fixtures::cycle(n);
    let mut chords = BTreeSet::new();
    let mut chord = |graph: &mut Graph, i: usize, j: usize| {
        graph.add_edge(VertexId::from(i), VertexId::from(j)).unwrap();
        chords.insert(Edge::new(VertexId::from(i), VertexId::from(j)));
    };
    if k % 2 == 0 {
        for i in (0..n).step_by(4) {
            chord(&mut graph, i, i + 2);
        }
        for i in (1..n).step_by(4) {
            chord(&mut graph, i, i + 2);
        }
    } else {
        for i in (2..n).step_by(4) {
            chord(&mut graph, i, i - 2);
        }
        for i in (3..n - 1).step_by(4) {
            chord(&mut graph, i, i + 2);
        }
        chord(&mut graph, n - 2, 1);
    }
    Ok(HkGraph { k, graph, chords, degenerate: k <= 3 })
}

/// A graph with pendant leaves attached to a partitioned 3-regular core:
/// 5 leaves per `a_set` vertex and 12 per `b_set` vertex, lifting the core
/// degrees to 8 and 15.
#[derive(Clone, Debug)]
pub struct LeafGadget {
    pub core: Graph,
    pub a_set: BTreeSet<VertexId>,
    pub b_set: BTreeSet<VertexId>,
    pub graph: Graph,
    /// Core vertex -> its leaf labels in index order.
    pub leaves_of: BTreeMap<VertexId, Vec<VertexId>>,
}

pub const LEAVES_A: usize = 5;
pub const LEAVES_B: usize = 12;

impl LeafGadget {
    pub fn is_core_vertex(&self, v: &VertexId) -> bool {
        self.core.has_vertex(v)
    }

    pub fn leaf_count(&self) -> usize {
        self.graph.vertex_count() - self.core.vertex_count()
    }
}

/// Attaches the leaves. The sets must be disjoint, equal-sized and cover
/// the 3-regular core; independence is demanded only when
/// `require_independent` is set, because the chorded-cycle side of the
/// construction uses parity classes that are not independent.
pub fn build_hat(
    core: &Graph,
    a_set: &BTreeSet<VertexId>,
    b_set: &BTreeSet<VertexId>,
    require_independent: bool,
) -> Result<LeafGadget, GadgetError> {
    check_labels(core)?;
    if core.regular_degree() != Some(3) {
        return Err(GadgetError::BadParameter("core must be 3-regular".into()));
    }
    if a_set.len() != b_set.len() {
        return Err(GadgetError::BadPartition("parts have different sizes".into()));
    }
    if !a_set.is_disjoint(b_set) {
        return Err(GadgetError::BadPartition("parts overlap".into()));
    }
    if a_set.len() + b_set.len() != core.vertex_count()
        || a_set.iter().chain(b_set).any(|v| !core.has_vertex(v))
    {
        return Err(GadgetError::BadPartition("parts do not cover the core".into()));
    }
    if require_independent {
        for e in core.edges() {
            let same_a = a_set.contains(e.a()) && a_set.contains(e.b());
            let same_b = b_set.contains(e.a()) && b_set.contains(e.b());
            if same_a || same_b {
                return Err(GadgetError::BadPartition(format!(
                    "edge {e:?} lies inside one part"
                )));
            }
        }
    }
    let mut graph = core.clone();
    let mut leaves_of = BTreeMap::new();
    for v in core.vertices() {
        let count = if a_set.contains(v) { LEAVES_A } else { LEAVES_B };
        let leaves: Vec<VertexId> = (1..=count).map(|i| VertexId::indexed(v, i)).collect();
        for leaf in &leaves {
            graph.add_edge(v.clone(), leaf.clone()).unwrap();
        }
        leaves_of.insert(v.clone(), leaves);
    }
    Ok(LeafGadget {
        core: core.clone(),
        a_set: a_set.clone(),
        b_set: b_set.clone(),
        graph,
        leaves_of,
    })
}

/// The canonical partition of a connected bipartite core: its two colour
/// classes, the one containing the smallest label first.
pub fn canonical_ab(core: &Graph) -> Result<(BTreeSet<VertexId>, BTreeSet<VertexId>), GadgetError> {
    if !core.is_connected() {
        return Err(GadgetError::NotConnected);
    }
    let (a, b) = core.two_coloring().ok_or(GadgetError::NotBipartite)?;
    // two_coloring puts the class of the smallest vertex first already
    Ok((a, b))
}

/// Extends a core alignment of a leaf-gadget pair leaf-wise: `v#i` maps to
/// `sigma(v)#i`. Requires matching leaf counts, i.e. `sigma` must respect
/// the partition.
pub fn lift_leaf_alignment(
    sigma: &Alignment,
    g: &LeafGadget,
    h: &LeafGadget,
) -> Result<Alignment, GadgetError> {
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, w) in sigma.iter() {
        let gu = g.leaves_of.get(u).ok_or_else(|| {
            GadgetError::BadPartition(format!("{u} is not a core vertex of the source"))
        })?;
        let hw = h.leaves_of.get(w).ok_or_else(|| {
            GadgetError::BadPartition(format!("{w} is not a core vertex of the target"))
        })?;
        if gu.len() != hw.len() {
            return Err(GadgetError::BadPartition(format!(
                "{u} and {w} carry different leaf counts"
            )));
        }
        pairs.push((u.clone(), w.clone()));
        pairs.extend(gu.iter().cloned().zip(hw.iter().cloned()));
    }
    Alignment::from_pairs(pairs)
        .map_err(|e| GadgetError::BadPartition(format!("core alignment not injective: {e}")))
}

/// One structural violation found by [`verify_mismatch_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureViolation {
    pub vertex: VertexId,
    pub issue: String,
}

/// Outcome of checking the parity structure of a restricted-alignment
/// mismatch graph.
#[derive(Clone, Debug, Default)]
pub struct StructureReport {
    pub violations: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks each vertex of a mismatch graph arising from a partition
/// respecting alignment against the chorded cycle on `2k` vertices.
///
/// For even `k`: every vertex has exactly one neighbour of its own parity,
/// joined by a negative edge, and total degree 2, 4 or 6. For odd `k` the
/// two chord-free vertices `1` and `2k-2` instead have only opposite-parity
/// neighbours and degree 0, 2, 4 or 6.
pub fn verify_mismatch_structure(sg: &SignedGraph, k: usize) -> StructureReport {
    let mut report = StructureReport::default();
    let special: BTreeSet<VertexId> = if k % 2 == 1 {
        [VertexId::from(1usize), VertexId::from(2 * k - 2)].into_iter().collect()
    } else {
        BTreeSet::new()
    };
    let parity_of = |v: &VertexId| -> Option<usize> {
        v.as_str().parse::<usize>().ok().map(|x| x % 2)
    };
    for v in sg.vertices() {
        let Some(pv) = parity_of(v) else {
            report.violations.push(StructureViolation {
                vertex: v.clone(),
                issue: "label is not numeric".into(),
            });
            continue;
        };
        let degree = sg.degree(v).unwrap();
        let same_parity_neg = sg
            .neg_neighbors(v)
            .filter(|w| parity_of(w) == Some(pv))
            .count();
        let same_parity_pos = sg
            .pos_neighbors(v)
            .filter(|w| parity_of(w) == Some(pv))
            .count();
        if special.contains(v) {
            if !matches!(degree, 0 | 2 | 4 | 6) {
                report.violations.push(StructureViolation {
                    vertex: v.clone(),
                    issue: format!("chord-free vertex has degree {degree}"),
                });
            }
            if same_parity_neg + same_parity_pos != 0 {
                report.violations.push(StructureViolation {
                    vertex: v.clone(),
                    issue: "chord-free vertex has a same-parity neighbour".into(),
                });
            }
        } else {
            if !matches!(degree, 2 | 4 | 6) {
                report.violations.push(StructureViolation {
                    vertex: v.clone(),
                    issue: format!("degree {degree} outside {{2, 4, 6}}"),
                });
            }
            if same_parity_neg != 1 || same_parity_pos != 0 {
                report.violations.push(StructureViolation {
                    vertex: v.clone(),
                    issue: format!(
                        "same-parity contacts: {same_parity_neg} negative, {same_parity_pos} positive; expected exactly one negative"
                    ),
                });
            }
        }
    }
    report
}

/// The square of the ±1 adjacency matrix, in sorted vertex order. Entry
/// `(x, v)` sums the signs of all two-step walks from x to v; the diagonal
/// is the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    pub order: Vec<VertexId>,
    pub entries: Vec<Vec<i64>>,
}

impl WalkMatrix {
    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.order.binary_search(v).ok()
    }

    pub fn get(&self, x: &VertexId, v: &VertexId) -> Option<i64> {
        Some(self.entries[self.index_of(x)?][self.index_of(v)?])
    }
}

pub fn walk_matrix(sg: &SignedGraph) -> WalkMatrix {
    let order: Vec<VertexId> = sg.vertices().cloned().collect();
    let n = order.len();
    let mut a = alloc::vec![alloc::vec![0i64; n]; n];
    for (i, u) in order.iter().enumerate() {
        for (j, v) in order.iter().enumerate().skip(i + 1) {
            let w = if sg.has_pos_edge(u, v) {
                1
            } else if sg.has_neg_edge(u, v) {
                -1
            } else {
                continue;
            };
            a[i][j] = w;
            a[j][i] = w;
        }
    }
    let mut entries = alloc::vec![alloc::vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for (k, aik) in a[i].iter().enumerate() {
                s += aik * a[k][j];
            }
            entries[i][j] = s;
        }
    }
    WalkMatrix { order, entries }
}

/// True when the mismatch graph either has maximum degree below 4 or its
/// squared spectral norm clears 4 by the decision margin. Restricted
/// alignment mismatch graphs always satisfy this; the check is an oracle.
pub fn check_spectral_gap(sg: &SignedGraph) -> bool {
    let max_deg = sg.max_degree().map_or(0, |(d, _)| d);
    if max_deg < 4 {
        return true;
    }
    let norm = spectral::spectral_norm(
        spectral::signed_adjacency_matrix(sg),
        spectral::DEFAULT_TOL,
    );
    norm * norm > 4.0 + SPECTRAL_MARGIN
}
