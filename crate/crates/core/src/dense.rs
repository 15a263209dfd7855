//! Bitset-backed adjacency used by the enumeration-heavy paths: exhaustive
//! distance search, restricted-family scans and sampled alignment checks.
//!
//! Vertex `i` of a [`DenseGraph`] is the i-th label in sorted order, so
//! indices agree with [`Graph::vertices`] iteration order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{Alignment, Graph, VertexId};

pub type BitRow = Vec<u64>;

#[derive(Clone, Debug)]
pub struct DenseGraph {
    labels: Vec<VertexId>,
    rows: Vec<BitRow>,
    degrees: Vec<usize>,
    words: usize,
}

impl DenseGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let labels: Vec<VertexId> = g.vertices().cloned().collect();
        let index: BTreeMap<&VertexId, usize> =
            labels.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = labels.len();
        let words = n.div_ceil(64).max(1);
        let mut rows = alloc::vec![alloc::vec![0u64; words]; n];
        for e in g.edges() {
            let (a, b) = (index[e.a()], index[e.b()]);
            rows[a][b / 64] |= 1 << (b % 64);
            rows[b][a / 64] |= 1 << (a % 64);
        }
        let degrees = rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum())
            .collect();
        DenseGraph { labels, rows, degrees, words }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn row(&self, i: usize) -> &BitRow {
        &self.rows[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] & (1 << (j % 64)) != 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits(&self.rows[i])
    }

    /// Converts a labelled alignment to `perm[i] = image index`, failing on
    /// unmapped or unknown vertices.
    pub fn perm_from_alignment(&self, target: &DenseGraph, pi: &Alignment) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.n());
        for v in &self.labels {
            let w = pi.get(v)?;
            perm.push(target.index_of(w)?);
        }
        Some(perm)
    }

    pub fn alignment_from_perm(&self, target: &DenseGraph, perm: &[usize]) -> Alignment {
        Alignment::from_pairs(
            perm.iter()
                .enumerate()
                .map(|(i, &t)| (self.labels[i].clone(), target.labels[t].clone())),
        )
        .expect("permutations are injective")
    }
}

pub fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// Per-target-vertex mismatch degrees of the bijection `perm` (source index
/// -> target index), written into `out`. Sign-blind.
pub fn mismatch_degrees(g: &DenseGraph, h: &DenseGraph, perm: &[usize], out: &mut [usize]) {
    let words = h.words();
    let mut permuted = alloc::vec![0u64; words];
    out.fill(0);
    for i in 0..g.n() {
        permuted.fill(0);
        for j in g.neighbors(i) {
            let t = perm[j];
            permuted[t / 64] |= 1 << (t % 64);
        }
        let hrow = h.row(perm[i]);
        let mut deg = 0usize;
        for w in 0..words {
            deg += (permuted[w] ^ hrow[w]).count_ones() as usize;
        }
        out[perm[i]] = deg;
    }
}

/// Number of mismatch edges under `perm`: positive plus negative.
pub fn edit_count(g: &DenseGraph, h: &DenseGraph, perm: &[usize]) -> usize {
    let mut degs = alloc::vec![0usize; h.n()];
    mismatch_degrees(g, h, perm, &mut degs);
    degs.iter().sum::<usize>() / 2
}

/// Maximum mismatch degree under `perm` and the smallest target index
/// attaining it. Returns `(0, 0)` for empty graphs.
pub fn mmc_count(g: &DenseGraph, h: &DenseGraph, perm: &[usize]) -> (usize, usize) {
    let mut degs = alloc::vec![0usize; h.n()];
    mismatch_degrees(g, h, perm, &mut degs);
    let mut best = 0usize;
    let mut arg = 0usize;
    for (t, &d) in degs.iter().enumerate() {
        if d > best {
            best = d;
            arg = t;
        }
    }
    (best, arg)
}

/// Signed adjacency matrix of the mismatch graph under `perm`, in target
/// index order: +1 where only the permuted source has the edge, -1 where
/// only the target does.
pub fn signed_mismatch_matrix(g: &DenseGraph, h: &DenseGraph, perm: &[usize]) -> Vec<Vec<f64>> {
    let n = h.n();
    let mut m = alloc::vec![alloc::vec![0.0; n]; n];
    for i in 0..n {
        for j in g.neighbors(i) {
            if i < j {
                let (a, b) = (perm[i], perm[j]);
                if !h.has_edge(a, b) {
                    m[a][b] = 1.0;
                    m[b][a] = 1.0;
                }
            }
        }
    }
    let mut inv = alloc::vec![0usize; n];
    for (i, &t) in perm.iter().enumerate() {
        inv[t] = i;
    }
    for a in 0..n {
        for b in h.neighbors(a) {
            if a < b && !g.has_edge(inv[a], inv[b]) {
                m[a][b] = -1.0;
                m[b][a] = -1.0;
            }
        }
    }
    m
}
