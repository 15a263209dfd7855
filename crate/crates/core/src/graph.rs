//! Graphs, signed graphs, alignments and the mismatch-graph constructor.
//!
//! All types are plain data, immutable once built, and ordered
//! deterministically: vertices carry string labels with their lexicographic
//! order, edges are stored with endpoints sorted.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A vertex label. Labels are opaque, totally ordered strings; gadget
/// builders derive structured labels such as `v#3` from them so that the
/// provenance of a vertex survives the construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Label `base#i`, used for auxiliary clique and leaf vertices.
    pub fn indexed(base: &VertexId, i: usize) -> Self {
        let mut s = base.0.clone();
        s.push('#');
        s.push_str(itoa(i).as_str());
        VertexId(s)
    }
}

fn itoa(mut n: usize) -> String {
    if n == 0 {
        return "0".to_owned();
    }
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(b'0' + (n % 10) as u8);
        n /= 10;
    }
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<usize> for VertexId {
    fn from(n: usize) -> Self {
        VertexId(itoa(n))
    }
}

/// An undirected edge with endpoints stored in sorted order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Panics on a self-loop; simple graphs never contain one.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "self-loop at {u}");
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn a(&self) -> &VertexId {
        &self.0
    }

    pub fn b(&self) -> &VertexId {
        &self.1
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        &self.0 == v || &self.1 == v
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(VertexId),
    MissingVertex(VertexId),
    /// An edge cannot be both positive and negative in a signed graph.
    SignConflict(VertexId, VertexId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::MissingVertex(v) => write!(f, "vertex {v} is not in the graph"),
            GraphError::SignConflict(u, v) => {
                write!(f, "edge ({u}, {v}) already carries the opposite sign")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A simple undirected graph over labelled vertices.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn with_vertices<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.into());
        }
        g
    }

    /// Builds a graph from explicit parts. Endpoints not listed among the
    /// vertices are added implicitly.
    pub fn from_edges<I, V, E>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
        E: IntoIterator<Item = (V, V)>,
    {
        let mut g = Graph::with_vertices(vertices);
        for (u, v) in edges {
            g.add_edge(u.into(), v.into())?;
        }
        Ok(g)
    }

    /// Returns `true` if the vertex was not present before.
    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        match self.adj.entry(v) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(BTreeSet::new());
                true
            }
            alloc::collections::btree_map::Entry::Occupied(_) => false,
        }
    }

    /// Inserts an undirected edge, adding missing endpoints. Returns
    /// `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_vertex(u.clone());
        self.add_vertex(v.clone());
        let fresh = self.adj.get_mut(&u).unwrap().insert(v.clone());
        if fresh {
            self.adj.get_mut(&v).unwrap().insert(u);
            self.edge_count += 1;
        }
        Ok(fresh)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Twice the number of edges.
    pub fn volume(&self) -> usize {
        2 * self.edge_count
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.adj.contains_key(v)
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        self.adj.get(u).is_some_and(|nb| nb.contains(v))
    }

    /// Vertices in label order.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.adj.keys()
    }

    /// Edges in canonical order (endpoints sorted, then lexicographic).
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(u, nb)| {
            nb.iter()
                .filter(move |v| u < *v)
                .map(move |v| Edge(u.clone(), v.clone()))
        })
    }

    pub fn neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> + '_ {
        self.adj.get(v).into_iter().flatten()
    }

    pub fn degree(&self, v: &VertexId) -> Option<usize> {
        self.adj.get(v).map(|nb| nb.len())
    }

    /// `Some(d)` when every vertex has degree `d`; `None` for irregular or
    /// empty graphs.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut it = self.adj.values().map(|nb| nb.len());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Degrees in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.adj.values().map(|nb| nb.len()).collect();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.adj.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in &self.adj[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    /// A proper 2-colouring if one exists. Within each connected component
    /// the class containing the component's smallest vertex is put first,
    /// which makes the result deterministic.
    pub fn two_coloring(&self) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        let mut color: BTreeMap<&VertexId, bool> = BTreeMap::new();
        for root in self.adj.keys() {
            if color.contains_key(root) {
                continue;
            }
            color.insert(root, false);
            let mut queue = alloc::vec![root];
            while let Some(v) = queue.pop() {
                let cv = color[v];
                for w in &self.adj[v] {
                    match color.get(w) {
                        None => {
                            color.insert(w, !cv);
                            queue.push(w);
                        }
                        Some(&cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for (v, c) in color {
            if c {
                b.insert(v.clone());
            } else {
                a.insert(v.clone());
            }
        }
        Some((a, b))
    }

    /// The subgraph induced by `keep`. Vertices not present are ignored.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for v in keep {
            if self.has_vertex(v) {
                g.add_vertex(v.clone());
            }
        }
        for e in self.edges() {
            if keep.contains(e.a()) && keep.contains(e.b()) {
                g.add_edge(e.a().clone(), e.b().clone()).unwrap();
            }
        }
        g
    }

    /// The record of cheap predicates used throughout the gadget checks.
    pub fn facts(&self) -> GraphFacts {
        GraphFacts {
            is_bipartite: self.two_coloring().is_some(),
            degree_sequence: self.degree_sequence(),
            volume: self.volume(),
            is_regular: self.regular_degree().is_some(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count)
    }
}

/// Cheap structural predicates of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFacts {
    pub is_bipartite: bool,
    pub degree_sequence: Vec<usize>,
    pub volume: usize,
    pub is_regular: bool,
}

/// A graph whose edges carry weight +1 or -1. An edge has exactly one sign;
/// the degree of a vertex counts incident edges regardless of sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedGraph {
    pos_adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    neg_adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    pos_count: usize,
    neg_count: usize,
}

impl SignedGraph {
    pub fn new<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut sg = SignedGraph::default();
        for v in vertices {
            sg.add_vertex(v.into());
        }
        sg
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        let fresh = self.pos_adj.entry(v.clone()).or_default();
        let was_empty = fresh.is_empty() && !self.neg_adj.contains_key(&v);
        self.neg_adj.entry(v).or_default();
        was_empty
    }

    pub fn add_pos_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.add_signed(u, v, true)
    }

    pub fn add_neg_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.add_signed(u, v, false)
    }

    fn add_signed(&mut self, u: VertexId, v: VertexId, positive: bool) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.pos_adj.contains_key(&u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.pos_adj.contains_key(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        let (this, other) = if positive {
            (&mut self.pos_adj, &mut self.neg_adj)
        } else {
            (&mut self.neg_adj, &mut self.pos_adj)
        };
        if other.get(&u).is_some_and(|nb| nb.contains(&v)) {
            return Err(GraphError::SignConflict(u, v));
        }
        let fresh = this.get_mut(&u).unwrap().insert(v.clone());
        if fresh {
            this.get_mut(&v).unwrap().insert(u);
            if positive {
                self.pos_count += 1;
            } else {
                self.neg_count += 1;
            }
        }
        Ok(fresh)
    }

    pub fn vertex_count(&self) -> usize {
        self.pos_adj.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.pos_adj.keys()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.pos_adj.contains_key(v)
    }

    pub fn pos_count(&self) -> usize {
        self.pos_count
    }

    pub fn neg_count(&self) -> usize {
        self.neg_count
    }

    /// Total number of (signed) edges.
    pub fn edge_count(&self) -> usize {
        self.pos_count + self.neg_count
    }

    pub fn pos_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        edges_of(&self.pos_adj)
    }

    pub fn neg_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        edges_of(&self.neg_adj)
    }

    pub fn has_pos_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        self.pos_adj.get(u).is_some_and(|nb| nb.contains(v))
    }

    pub fn has_neg_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        self.neg_adj.get(u).is_some_and(|nb| nb.contains(v))
    }

    pub fn pos_neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> + '_ {
        self.pos_adj.get(v).into_iter().flatten()
    }

    pub fn neg_neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> + '_ {
        self.neg_adj.get(v).into_iter().flatten()
    }

    pub fn pos_degree(&self, v: &VertexId) -> Option<usize> {
        self.pos_adj.get(v).map(|nb| nb.len())
    }

    pub fn neg_degree(&self, v: &VertexId) -> Option<usize> {
        self.neg_adj.get(v).map(|nb| nb.len())
    }

    /// Sign-blind degree.
    pub fn degree(&self, v: &VertexId) -> Option<usize> {
        Some(self.pos_degree(v)? + self.neg_degree(v)?)
    }

    /// Sum of all degrees, i.e. twice the edge count.
    pub fn volume(&self) -> usize {
        2 * self.edge_count()
    }

    /// Per-vertex `(positive degree, negative degree)`.
    pub fn degree_profile(&self) -> BTreeMap<VertexId, (usize, usize)> {
        self.pos_adj
            .iter()
            .map(|(v, pnb)| (v.clone(), (pnb.len(), self.neg_adj[v].len())))
            .collect()
    }

    /// Maximum sign-blind degree with the smallest vertex attaining it.
    /// `None` only on an empty vertex set.
    pub fn max_degree(&self) -> Option<(usize, &VertexId)> {
        self.pos_adj
            .keys()
            .map(|v| (self.degree(v).unwrap(), v))
            .max_by(|(da, va), (db, vb)| da.cmp(db).then(vb.cmp(va)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.edge_count() == 0
    }
}

fn edges_of(adj: &BTreeMap<VertexId, BTreeSet<VertexId>>) -> impl Iterator<Item = Edge> + '_ {
    adj.iter().flat_map(|(u, nb)| {
        nb.iter()
            .filter(move |v| u < *v)
            .map(move |v| Edge(u.clone(), v.clone()))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlignmentError {
    DuplicateSource(VertexId),
    DuplicateTarget(VertexId),
}

impl fmt::Display for AlignmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlignmentError::DuplicateSource(v) => write!(f, "source vertex {v} mapped twice"),
            AlignmentError::DuplicateTarget(v) => write!(f, "target vertex {v} used twice"),
        }
    }
}

impl core::error::Error for AlignmentError {}

/// An injective vertex mapping. Bijective whenever the graph orders match,
/// which is the only situation the mismatch constructor accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    forward: BTreeMap<VertexId, VertexId>,
}

impl Alignment {
    pub fn from_pairs<I, V>(pairs: I) -> Result<Self, AlignmentError>
    where
        I: IntoIterator<Item = (V, V)>,
        V: Into<VertexId>,
    {
        let mut forward = BTreeMap::new();
        let mut used = BTreeSet::new();
        for (u, v) in pairs {
            let (u, v) = (u.into(), v.into());
            if !used.insert(v.clone()) {
                return Err(AlignmentError::DuplicateTarget(v));
            }
            if forward.insert(u.clone(), v).is_some() {
                return Err(AlignmentError::DuplicateSource(u));
            }
        }
        Ok(Alignment { forward })
    }

    pub fn identity_on(g: &Graph) -> Self {
        Alignment {
            forward: g.vertices().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn get(&self, v: &VertexId) -> Option<&VertexId> {
        self.forward.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.forward.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.forward.keys()
    }

    pub fn image(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.forward.values()
    }

    /// Injectivity makes the inverse well defined.
    pub fn inverse(&self) -> Alignment {
        Alignment {
            forward: self.forward.iter().map(|(u, v)| (v.clone(), u.clone())).collect(),
        }
    }

    /// Total on `V(g)` and onto `V(h)`.
    pub fn is_bijection_between(&self, g: &Graph, h: &Graph) -> bool {
        if self.forward.len() != g.vertex_count() || g.vertex_count() != h.vertex_count() {
            return false;
        }
        self.forward.iter().all(|(u, v)| g.has_vertex(u) && h.has_vertex(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MismatchError {
    OrderMismatch { left: usize, right: usize },
    UnmappedVertex(VertexId),
    TargetNotInGraph(VertexId),
    /// `check_regular_balance` requires both graphs d-regular for one d.
    NotRegularPair,
}

impl fmt::Display for MismatchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MismatchError::OrderMismatch { left, right } => {
                write!(f, "graph orders differ: {left} vs {right}")
            }
            MismatchError::UnmappedVertex(v) => write!(f, "vertex {v} has no image"),
            MismatchError::TargetNotInGraph(v) => {
                write!(f, "image vertex {v} is not in the target graph")
            }
            MismatchError::NotRegularPair => {
                write!(f, "graphs are not both d-regular for the same d")
            }
        }
    }
}

impl core::error::Error for MismatchError {}

/// The mismatch graph of an alignment: a signed graph on `V(h)` whose
/// positive edges are the images of `g`-edges absent from `h`, and whose
/// negative edges are `h`-edges without a `g`-preimage. Edges present on
/// both sides (neutral) are omitted.
pub fn mismatch_graph(g: &Graph, h: &Graph, pi: &Alignment) -> Result<SignedGraph, MismatchError> {
    if g.vertex_count() != h.vertex_count() {
        return Err(MismatchError::OrderMismatch {
            left: g.vertex_count(),
            right: h.vertex_count(),
        });
    }
    let mut sg = SignedGraph::new(h.vertices().cloned());
    // Image lookup also validates totality and range.
    let mut image = BTreeMap::new();
    for u in g.vertices() {
        let v = pi.get(u).ok_or_else(|| MismatchError::UnmappedVertex(u.clone()))?;
        if !h.has_vertex(v) {
            return Err(MismatchError::TargetNotInGraph(v.clone()));
        }
        image.insert(u, v);
    }
    // Injectivity plus equal orders makes pi a bijection onto V(h).
    for e in g.edges() {
        let (a, b) = (image[e.a()], image[e.b()]);
        if !h.has_edge(a, b) {
            sg.add_pos_edge(a.clone(), b.clone()).unwrap();
        }
    }
    let inv = pi.inverse();
    for e in h.edges() {
        let (a, b) = (inv.get(e.a()).unwrap(), inv.get(e.b()).unwrap());
        if !g.has_edge(a, b) {
            sg.add_neg_edge(e.a().clone(), e.b().clone()).unwrap();
        }
    }
    Ok(sg)
}

/// For d-regular pairs every vertex of the mismatch graph has as many
/// positive as negative incident edges; this checks it. It always returns
/// `true` on valid inputs and exists as a self-test oracle.
pub fn check_regular_balance(g: &Graph, h: &Graph, pi: &Alignment) -> Result<bool, MismatchError> {
    match (g.regular_degree(), h.regular_degree()) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Err(MismatchError::NotRegularPair),
    }
    let sg = mismatch_graph(g, h, pi)?;
    Ok(sg
        .degree_profile()
        .values()
        .all(|&(pos, neg)| pos == neg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vid(s: &str) -> VertexId {
        VertexId::from(s)
    }

    /// Path u1-u2-u3 plus isolated u4 against path v2-v3-v4 plus isolated
    /// v1, aligned index-wise.
    fn figure_pair() -> (Graph, Graph, Alignment) {
        let g = Graph::from_edges(["u1", "u2", "u3", "u4"], [("u1", "u2"), ("u2", "u3")]).unwrap();
        let h = Graph::from_edges(["v1", "v2", "v3", "v4"], [("v2", "v3"), ("v3", "v4")]).unwrap();
        let pi =
            Alignment::from_pairs([("u1", "v1"), ("u2", "v2"), ("u3", "v3"), ("u4", "v4")]).unwrap();
        (g, h, pi)
    }

    #[test]
    fn mismatch_of_shifted_paths() {
        let (g, h, pi) = figure_pair();
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        let pos: Vec<Edge> = sg.pos_edges().collect();
        let neg: Vec<Edge> = sg.neg_edges().collect();
        assert_eq!(pos, alloc::vec![Edge::new(vid("v1"), vid("v2"))]);
        assert_eq!(neg, alloc::vec![Edge::new(vid("v3"), vid("v4"))]);
        let profile = sg.degree_profile();
        assert_eq!(profile[&vid("v1")], (1, 0));
        assert_eq!(profile[&vid("v2")], (1, 0));
        assert_eq!(profile[&vid("v3")], (0, 1));
        assert_eq!(profile[&vid("v4")], (0, 1));
    }

    #[test]
    fn mismatch_identity_is_empty() {
        let g = crate::fixtures::cycle(4);
        let sg = mismatch_graph(&g, &g, &Alignment::identity_on(&g)).unwrap();
        assert!(sg.is_edgeless());
        assert!(sg.degree_profile().values().all(|&d| d == (0, 0)));
    }

    #[test]
    fn k4_vs_c4_positive_diagonals() {
        let g = crate::fixtures::complete(4);
        let h = crate::fixtures::cycle(4);
        let pi = Alignment::identity_on(&g);
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        let pos: Vec<Edge> = sg.pos_edges().collect();
        assert_eq!(
            pos,
            alloc::vec![
                Edge::new(vid("0"), vid("2")),
                Edge::new(vid("1"), vid("3"))
            ]
        );
        assert_eq!(sg.neg_count(), 0);
        assert!(sg.degree_profile().values().all(|&d| d == (1, 0)));
    }

    #[test]
    fn mismatch_rejects_order_mismatch() {
        let g = crate::fixtures::complete(4);
        let h = crate::fixtures::cycle(5);
        let err = mismatch_graph(&g, &h, &Alignment::identity_on(&g)).unwrap_err();
        assert_eq!(err, MismatchError::OrderMismatch { left: 4, right: 5 });
    }

    #[test]
    fn mismatch_rejects_partial_alignment() {
        let g = crate::fixtures::cycle(4);
        let pi = Alignment::from_pairs([("0", "0"), ("1", "1"), ("2", "2")]).unwrap();
        assert!(matches!(
            mismatch_graph(&g, &g, &pi),
            Err(MismatchError::UnmappedVertex(_))
        ));
    }

    #[test]
    fn alignment_rejects_non_injective() {
        let err = Alignment::from_pairs([("a", "x"), ("b", "x")]).unwrap_err();
        assert_eq!(err, AlignmentError::DuplicateTarget(vid("x")));
    }

    #[test]
    fn regular_balance_on_regular_pairs() {
        let g = crate::fixtures::cycle(6);
        assert!(check_regular_balance(&g, &g, &Alignment::identity_on(&g)).unwrap());

        let g = crate::fixtures::complete_bipartite(3, 3);
        let h = crate::fixtures::prism(3);
        let pi = Alignment::from_pairs(
            g.vertices()
                .cloned()
                .zip(h.vertices().cloned())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(check_regular_balance(&g, &h, &pi).unwrap());
    }

    #[test]
    fn regular_balance_rejects_degree_mismatch() {
        let g = crate::fixtures::complete(4);
        let h = crate::fixtures::cycle(4);
        let err = check_regular_balance(&g, &h, &Alignment::identity_on(&g)).unwrap_err();
        assert_eq!(err, MismatchError::NotRegularPair);
    }

    #[test]
    fn signed_graph_rejects_sign_conflict() {
        let mut sg = SignedGraph::new(["a", "b"]);
        sg.add_pos_edge(vid("a"), vid("b")).unwrap();
        assert!(matches!(
            sg.add_neg_edge(vid("a"), vid("b")),
            Err(GraphError::SignConflict(_, _))
        ));
    }

    #[test]
    fn facts_of_k33() {
        let g = crate::fixtures::complete_bipartite(3, 3);
        let facts = g.facts();
        assert!(facts.is_bipartite);
        assert_eq!(facts.degree_sequence, alloc::vec![3; 6]);
        assert_eq!(facts.volume, 18);
        assert!(facts.is_regular);
    }

    #[test]
    fn volume_equals_twice_mismatch_edges() {
        let (g, h, pi) = figure_pair();
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        assert_eq!(sg.volume(), 2 * sg.edge_count());
    }
}
