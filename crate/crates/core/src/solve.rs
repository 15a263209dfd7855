//! Minimisation of mismatch norms over alignments.
//!
//! Three engines, all exact within their domain:
//!
//! * [`delta_exhaustive`] walks every bijection of two small graphs;
//! * [`delta_branch_and_bound`] solves the integer-valued objectives (edit
//!   count and maximum mismatch count) with admissible lower bounds and
//!   supports certified threshold decisions;
//! * [`min_over_restricted`] minimises over a structured family of
//!   bijections that respects a vertex partition on both sides, and
//!   [`conservative_search`] over clique-respecting alignments of the
//!   clique-gadget pairs.
//!
//! Interval-valued objectives (lp norms away from 1, 2 and infinity) are
//! only ever minimised exhaustively, and the result is the interval of the
//! pointwise minima; pruning against intervals would be unsound.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::dense::{self, DenseGraph};
use crate::gadgets::{CliqueGadget, CycleCliqueGadget, HkGraph};
use crate::graph::{Alignment, Graph, VertexId};
use crate::metrics::{MmcValue, NormValue, PExponent};
use crate::perm;
use crate::spectral;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 10;
pub const DEFAULT_BNB_CAP_EDIT: usize = 24;
pub const DEFAULT_BNB_CAP_MMC: usize = 20;

/// Which mismatch norm is being minimised.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricKind {
    Edit,
    P(PExponent),
    AbsP(PExponent),
}

impl MetricKind {
    /// Objectives that reduce to the maximum mismatch count.
    fn is_degree_like(&self) -> bool {
        matches!(self, MetricKind::P(p) | MetricKind::AbsP(p) if p.is_degree_like())
    }

    fn is_integer_valued(&self) -> bool {
        matches!(self, MetricKind::Edit) || self.is_degree_like()
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricKind::Edit => write!(f, "edit"),
            MetricKind::P(p) => write!(f, "p={p}"),
            MetricKind::AbsP(p) => write!(f, "abs-p={p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    BranchAndBound,
    Restricted,
}

/// Parameters of a distance computation.
#[derive(Clone, Debug)]
pub struct DistanceQuery {
    pub metric: MetricKind,
    pub mode: SearchMode,
    /// Node-expansion cap; exhaustion is an error, never an approximation.
    pub budget: u64,
    /// Decision threshold: search may stop once the answer to
    /// "is the distance <= threshold?" is certified either way.
    pub threshold: Option<f64>,
    pub exhaustive_cap: usize,
    pub bnb_cap_edit: usize,
    pub bnb_cap_mmc: usize,
}

impl DistanceQuery {
    pub fn new(metric: MetricKind, mode: SearchMode) -> Self {
        DistanceQuery {
            metric,
            mode,
            budget: DEFAULT_BUDGET,
            threshold: None,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            bnb_cap_edit: DEFAULT_BNB_CAP_EDIT,
            bnb_cap_mmc: DEFAULT_BNB_CAP_MMC,
        }
    }

    pub fn with_threshold(mut self, c: f64) -> Self {
        self.threshold = Some(c);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Outcome of a distance computation. `best_alignment` always attains
/// `value.hi()`; `optimal` is set only when the search space was exhausted,
/// in which case integer-valued objectives are exact.
#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub value: NormValue,
    pub best_alignment: Alignment,
    pub optimal: bool,
    pub nodes_expanded: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    OrderMismatch { left: usize, right: usize },
    CapExceeded { order: usize, cap: usize },
    BudgetExhausted { nodes: u64, best_value: Option<f64> },
    UnsupportedMetric(String),
    BadFamily(String),
    GadgetMismatch(String),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::OrderMismatch { left, right } => {
                write!(f, "graph orders differ: {left} vs {right}")
            }
            SolveError::CapExceeded { order, cap } => {
                write!(f, "order {order} exceeds the cap {cap} for this mode")
            }
            SolveError::BudgetExhausted { nodes, best_value } => {
                write!(f, "budget exhausted after {nodes} nodes without a certificate")?;
                if let Some(v) = best_value {
                    write!(f, " (best value seen: {v})")?;
                }
                Ok(())
            }
            SolveError::UnsupportedMetric(s) => write!(f, "unsupported metric: {s}"),
            SolveError::BadFamily(s) => write!(f, "bad restricted family: {s}"),
            SolveError::GadgetMismatch(s) => write!(f, "gadget inputs disagree: {s}"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Dispatches on the query's mode. Restricted mode needs a family and has
/// its own entry points.
pub fn solve(g: &Graph, h: &Graph, query: &DistanceQuery) -> Result<DistanceResult, SolveError> {
    match query.mode {
        SearchMode::Exhaustive => delta_exhaustive(g, h, query),
        SearchMode::BranchAndBound => delta_branch_and_bound(g, h, query),
        SearchMode::Restricted => Err(SolveError::BadFamily(
            "restricted mode needs a vertex partition; use min_over_restricted".into(),
        )),
    }
}

fn check_orders(g: &Graph, h: &Graph) -> Result<usize, SolveError> {
    let (left, right) = (g.vertex_count(), h.vertex_count());
    if left != right {
        return Err(SolveError::OrderMismatch { left, right });
    }
    Ok(left)
}

/// Exact minimum over all bijections. For interval-valued objectives the
/// result is the interval of the pointwise minima: its high end is
/// attained by `best_alignment`, its low end is a certified lower bound on
/// the distance.
pub fn delta_exhaustive(
    g: &Graph,
    h: &Graph,
    query: &DistanceQuery,
) -> Result<DistanceResult, SolveError> {
    let n = check_orders(g, h)?;
    if n > query.exhaustive_cap {
        return Err(SolveError::CapExceeded { order: n, cap: query.exhaustive_cap });
    }
    let dg = DenseGraph::from_graph(g);
    let dh = DenseGraph::from_graph(h);
    let mut nodes = 0u64;
    let mut best_hi = f64::INFINITY;
    let mut best_lo = f64::INFINITY;
    let mut best_perm: Vec<usize> = (0..n).collect();
    let mut exact = true;
    let mut out_of_budget = false;
    perm::visit_permutations(n, |p| {
        nodes += 1;
        if nodes > query.budget {
            out_of_budget = true;
            return ControlFlow::Break(());
        }
        let v = evaluate_metric(&dg, &dh, p, query.metric);
        if v.hi() < best_hi {
            best_hi = v.hi();
            best_perm.copy_from_slice(p);
            exact = v.is_exact();
        }
        best_lo = best_lo.min(v.lo());
        if best_hi == 0.0 {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if out_of_budget {
        return Err(SolveError::BudgetExhausted {
            nodes,
            best_value: (best_hi < f64::INFINITY).then_some(best_hi),
        });
    }
    let value = if exact && best_lo == best_hi {
        NormValue::exact(best_hi)
    } else {
        NormValue::interval(best_lo, best_hi)
    };
    Ok(DistanceResult {
        value,
        best_alignment: dg.alignment_from_perm(&dh, &best_perm),
        optimal: true,
        nodes_expanded: nodes,
    })
}

fn evaluate_metric(g: &DenseGraph, h: &DenseGraph, p: &[usize], metric: MetricKind) -> NormValue {
    match metric {
        MetricKind::Edit => NormValue::exact(dense::edit_count(g, h, p) as f64),
        m if m.is_degree_like() => NormValue::exact(dense::mmc_count(g, h, p).0 as f64),
        MetricKind::P(pe) if pe.is_two() => {
            let m = dense::signed_mismatch_matrix(g, h, p);
            NormValue::exact(spectral::spectral_norm(m, spectral::DEFAULT_TOL))
        }
        MetricKind::AbsP(pe) if pe.is_two() => {
            let mut m = dense::signed_mismatch_matrix(g, h, p);
            for row in &mut m {
                for x in row {
                    *x = x.abs();
                }
            }
            NormValue::exact(spectral::spectral_norm(m, spectral::DEFAULT_TOL))
        }
        MetricKind::P(pe) | MetricKind::AbsP(pe) => {
            crate::metrics::mmc_sandwich(dense::mmc_count(g, h, p).0, pe)
        }
    }
}

/// Exact branch-and-bound minimisation of the integer-valued objectives.
///
/// Source vertices are assigned in descending degree order; candidate
/// targets are tried by ascending bound increment. The lower bound of a
/// partial assignment combines the mismatch edges already forced between
/// assigned pairs with each assigned pair's degree difference, both of
/// which only grow as the assignment extends.
///
/// With a threshold c the search becomes a decision procedure: it returns
/// early with the first full assignment of value <= c, or certifies that
/// every bijection exceeds c (`value.lo() = floor(c) + 1`). Either way
/// `optimal` is false. Without a threshold the completed search returns
/// the exact minimum.
pub fn delta_branch_and_bound(
    g: &Graph,
    h: &Graph,
    query: &DistanceQuery,
) -> Result<DistanceResult, SolveError> {
    let n = check_orders(g, h)?;
    let (cap, use_edit) = match query.metric {
        MetricKind::Edit => (query.bnb_cap_edit, true),
        m if m.is_degree_like() => (query.bnb_cap_mmc, false),
        m => {
            return Err(SolveError::UnsupportedMetric(format!(
                "branch and bound needs an integer objective, not {m}"
            )))
        }
    };
    if n > cap {
        return Err(SolveError::CapExceeded { order: n, cap });
    }
    let dg = DenseGraph::from_graph(g);
    let dh = DenseGraph::from_graph(h);
    if n == 0 {
        return Ok(DistanceResult {
            value: NormValue::exact(0.0),
            best_alignment: Alignment::from_pairs::<_, VertexId>([]).unwrap(),
            optimal: true,
            nodes_expanded: 0,
        });
    }
    // Thresholds decide "value <= c" on integers, i.e. "value <= floor(c)".
    let cutoff: Option<u64> = query.threshold.map(|c| {
        assert!(c >= 0.0, "threshold must be non-negative");
        c as u64
    });

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(dg.degree(v)), v));

    let mut search = Bnb {
        g: &dg,
        h: &dh,
        order,
        use_edit,
        perm: alloc::vec![usize::MAX; n],
        inv: alloc::vec![usize::MAX; n],
        forced: alloc::vec![0; n],
        contribution: alloc::vec![0; n],
        contribution_sum: 0,
        contribution_max: 0,
        incumbent: None,
        cutoff,
        budget: query.budget,
        nodes: 0,
        yes_exit: false,
    };
    // Seed the incumbent so the reported upper end always has a witness.
    let seed: Vec<usize> = {
        let mut tgt: Vec<usize> = (0..n).collect();
        tgt.sort_by_key(|&w| (core::cmp::Reverse(dh.degree(w)), w));
        let mut p = alloc::vec![0usize; n];
        for (i, &u) in search.order.iter().enumerate() {
            p[u] = tgt[i];
        }
        p
    };
    let seed_value = if use_edit {
        dense::edit_count(&dg, &dh, &seed) as u64
    } else {
        dense::mmc_count(&dg, &dh, &seed).0 as u64
    };
    search.incumbent = Some((seed_value, seed));
    if cutoff.is_some_and(|c| seed_value <= c) {
        return Ok(DistanceResult {
            value: NormValue::exact(seed_value as f64),
            best_alignment: dg.alignment_from_perm(&dh, &search.incumbent.unwrap().1),
            optimal: false,
            nodes_expanded: 0,
        });
    }

    let finished = search.descend(0);
    let (best_value, best_perm) = search.incumbent.clone().unwrap();
    if !finished && !search.yes_exit {
        return Err(SolveError::BudgetExhausted {
            nodes: search.nodes,
            best_value: Some(best_value as f64),
        });
    }
    let best_alignment = dg.alignment_from_perm(&dh, &best_perm);
    if search.yes_exit {
        return Ok(DistanceResult {
            value: NormValue::exact(best_value as f64),
            best_alignment,
            optimal: false,
            nodes_expanded: search.nodes,
        });
    }
    match cutoff {
        Some(c) if best_value > c => Ok(DistanceResult {
            // Certified "no": every bijection exceeds the threshold.
            value: NormValue::interval((c + 1) as f64, best_value as f64),
            best_alignment,
            optimal: false,
            nodes_expanded: search.nodes,
        }),
        _ => Ok(DistanceResult {
            value: NormValue::exact(best_value as f64),
            best_alignment,
            optimal: true,
            nodes_expanded: search.nodes,
        }),
    }
}

struct Bnb<'a> {
    g: &'a DenseGraph,
    h: &'a DenseGraph,
    order: Vec<usize>,
    use_edit: bool,
    perm: Vec<usize>,
    inv: Vec<usize>,
    /// Mismatch edges already forced at each assigned target.
    forced: Vec<u64>,
    /// max(forced, degree difference) per assigned target.
    contribution: Vec<u64>,
    contribution_sum: u64,
    contribution_max: u64,
    incumbent: Option<(u64, Vec<usize>)>,
    cutoff: Option<u64>,
    budget: u64,
    nodes: u64,
    yes_exit: bool,
}

impl Bnb<'_> {
    fn lower_bound(&self) -> u64 {
        if self.use_edit {
            self.contribution_sum.div_ceil(2)
        } else {
            self.contribution_max
        }
    }

    fn prune_limit(&self) -> u64 {
        let inc = self.incumbent.as_ref().map_or(u64::MAX, |(v, _)| *v);
        match self.cutoff {
            Some(c) => inc.min(c + 1),
            None => inc,
        }
    }

    /// Returns false when the budget ran out.
    fn descend(&mut self, depth: usize) -> bool {
        let n = self.g.n();
        if depth == n {
            // Every pair is assigned, so the bound is the exact value.
            let value = self.lower_bound();
            if self.incumbent.as_ref().is_none_or(|(v, _)| value < *v) {
                self.incumbent = Some((value, self.perm.clone()));
            }
            if self.cutoff.is_some_and(|c| value <= c) {
                self.yes_exit = true;
            }
            return true;
        }
        let u = self.order[depth];
        let mut candidates: Vec<(u64, usize)> = (0..n)
            .filter(|&w| self.inv[w] == usize::MAX)
            .map(|w| (self.increment_score(u, w), w))
            .collect();
        candidates.sort_unstable();
        for (_, w) in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let undo = self.assign(u, w);
            if self.lower_bound() < self.prune_limit() {
                if !self.descend(depth + 1) {
                    self.unassign(u, w, undo);
                    return false;
                }
                if self.yes_exit {
                    self.unassign(u, w, undo);
                    return true;
                }
            }
            self.unassign(u, w, undo);
        }
        true
    }

    /// Ordering heuristic: forced mismatches this assignment would create
    /// plus the degree gap of the pair.
    fn increment_score(&self, u: usize, w: usize) -> u64 {
        let mut score = self.g.degree(u).abs_diff(self.h.degree(w)) as u64;
        for &v in &self.order {
            let x = self.perm[v];
            if x == usize::MAX {
                continue;
            }
            if self.g.has_edge(u, v) != self.h.has_edge(w, x) {
                score += 1;
            }
        }
        score
    }

    fn assign(&mut self, u: usize, w: usize) -> Undo {
        self.perm[u] = w;
        self.inv[w] = u;
        let mut undo = Undo {
            touched: Vec::new(),
            old_sum: self.contribution_sum,
            old_max: self.contribution_max,
        };
        let mut forced_w = 0u64;
        for &v in &self.order {
            if v == u {
                continue;
            }
            let x = self.perm[v];
            if x == usize::MAX {
                continue;
            }
            if self.g.has_edge(u, v) != self.h.has_edge(w, x) {
                forced_w += 1;
                self.forced[x] += 1;
                let c = self.forced[x].max(self.ddiff(v, x));
                if c > self.contribution[x] {
                    self.contribution_sum += c - self.contribution[x];
                    self.contribution[x] = c;
                    self.contribution_max = self.contribution_max.max(c);
                }
                undo.touched.push(x);
            }
        }
        self.forced[w] = forced_w;
        self.contribution[w] = forced_w.max(self.ddiff(u, w));
        self.contribution_sum += self.contribution[w];
        self.contribution_max = self.contribution_max.max(self.contribution[w]);
        undo
    }

    fn ddiff(&self, src: usize, tgt: usize) -> u64 {
        self.g.degree(src).abs_diff(self.h.degree(tgt)) as u64
    }

    fn unassign(&mut self, u: usize, w: usize, undo: Undo) {
        for &x in undo.touched.iter().rev() {
            self.forced[x] -= 1;
            self.contribution[x] = self.forced[x].max(self.ddiff(self.inv[x], x));
        }
        self.forced[w] = 0;
        self.contribution[w] = 0;
        self.contribution_sum = undo.old_sum;
        self.contribution_max = undo.old_max;
        self.perm[u] = usize::MAX;
        self.inv[w] = usize::MAX;
    }
}

struct Undo {
    touched: Vec<usize>,
    old_sum: u64,
    old_max: u64,
}

/// The bijections sending one source part onto one target part and the
/// other onto the other, enumerated lexicographically.
#[derive(Clone, Debug)]
pub struct RestrictedFamily {
    pub source_a: Vec<VertexId>,
    pub source_b: Vec<VertexId>,
    pub target_even: Vec<VertexId>,
    pub target_odd: Vec<VertexId>,
}

impl RestrictedFamily {
    pub fn new(
        source_a: impl IntoIterator<Item = VertexId>,
        source_b: impl IntoIterator<Item = VertexId>,
        target_even: impl IntoIterator<Item = VertexId>,
        target_odd: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self, SolveError> {
        let mut fam = RestrictedFamily {
            source_a: source_a.into_iter().collect(),
            source_b: source_b.into_iter().collect(),
            target_even: target_even.into_iter().collect(),
            target_odd: target_odd.into_iter().collect(),
        };
        for part in [
            &mut fam.source_a,
            &mut fam.source_b,
            &mut fam.target_even,
            &mut fam.target_odd,
        ] {
            part.sort();
            let before = part.len();
            part.dedup();
            if part.len() != before {
                return Err(SolveError::BadFamily("parts contain duplicates".into()));
            }
        }
        if fam.source_a.len() != fam.target_even.len()
            || fam.source_b.len() != fam.target_odd.len()
        {
            return Err(SolveError::BadFamily("part sizes disagree".into()));
        }
        let overlap = |a: &[VertexId], b: &[VertexId]| {
            let set: BTreeSet<_> = a.iter().collect();
            b.iter().any(|v| set.contains(v))
        };
        if overlap(&fam.source_a, &fam.source_b) || overlap(&fam.target_even, &fam.target_odd) {
            return Err(SolveError::BadFamily("parts overlap".into()));
        }
        Ok(fam)
    }

    /// Family from an independent-set partition of a bipartite core against
    /// the parity classes of a chorded cycle.
    pub fn for_cores(
        a: impl IntoIterator<Item = VertexId>,
        b: impl IntoIterator<Item = VertexId>,
        hk: &HkGraph,
    ) -> Result<Self, SolveError> {
        RestrictedFamily::new(a, b, hk.even_vertices(), hk.odd_vertices())
    }

    /// Both partitions must exactly cover their graphs.
    pub fn validate_cover(&self, g: &Graph, h: &Graph) -> Result<(), SolveError> {
        let sources: BTreeSet<_> = self.source_a.iter().chain(&self.source_b).collect();
        let targets: BTreeSet<_> = self.target_even.iter().chain(&self.target_odd).collect();
        if sources.len() != g.vertex_count() || !g.vertices().all(|v| sources.contains(v)) {
            return Err(SolveError::BadFamily("source parts do not cover the graph".into()));
        }
        if targets.len() != h.vertex_count() || !h.vertices().all(|v| targets.contains(v)) {
            return Err(SolveError::BadFamily("target parts do not cover the graph".into()));
        }
        Ok(())
    }

    /// |A|! * |B|!
    pub fn size(&self) -> u64 {
        perm::factorial(self.source_a.len()) * perm::factorial(self.source_b.len())
    }
}

/// Streams every alignment of the family exactly once, ordered
/// lexicographically by the permutation applied to the first part and then
/// the second.
pub fn enumerate_restricted(fam: &RestrictedFamily) -> RestrictedAlignments {
    RestrictedAlignments {
        fam: fam.clone(),
        pa: (0..fam.source_a.len()).collect(),
        pb: (0..fam.source_b.len()).collect(),
        done: false,
    }
}

pub struct RestrictedAlignments {
    fam: RestrictedFamily,
    pa: Vec<usize>,
    pb: Vec<usize>,
    done: bool,
}

impl Iterator for RestrictedAlignments {
    type Item = Alignment;

    fn next(&mut self) -> Option<Alignment> {
        if self.done {
            return None;
        }
        let fam = &self.fam;
        let pairs = fam
            .source_a
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), fam.target_even[self.pa[i]].clone()))
            .chain(
                fam.source_b
                    .iter()
                    .enumerate()
                    .map(|(j, v)| (v.clone(), fam.target_odd[self.pb[j]].clone())),
            );
        let out = Alignment::from_pairs(pairs).expect("parts are disjoint");
        if !perm::next_permutation(&mut self.pb) {
            self.pb = (0..self.fam.source_b.len()).collect();
            if !perm::next_permutation(&mut self.pa) {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// Index-level enumeration of the family against dense graphs: calls `f`
/// with a full source-index -> target-index permutation per member.
fn visit_restricted_perms<F>(
    dg: &DenseGraph,
    dh: &DenseGraph,
    fam: &RestrictedFamily,
    mut f: F,
) -> Result<(), SolveError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let resolve = |d: &DenseGraph, vs: &[VertexId]| -> Result<Vec<usize>, SolveError> {
        vs.iter()
            .map(|v| {
                d.index_of(v)
                    .ok_or_else(|| SolveError::BadFamily(format!("vertex {v} not in graph")))
            })
            .collect()
    };
    let ai = resolve(dg, &fam.source_a)?;
    let bi = resolve(dg, &fam.source_b)?;
    let ei = resolve(dh, &fam.target_even)?;
    let oi = resolve(dh, &fam.target_odd)?;
    let mut pa: Vec<usize> = (0..ai.len()).collect();
    let mut full = alloc::vec![usize::MAX; dg.n()];
    loop {
        for (i, &src) in ai.iter().enumerate() {
            full[src] = ei[pa[i]];
        }
        let mut pb: Vec<usize> = (0..bi.len()).collect();
        loop {
            for (j, &src) in bi.iter().enumerate() {
                full[src] = oi[pb[j]];
            }
            if f(&full).is_break() {
                return Ok(());
            }
            if !perm::next_permutation(&mut pb) {
                break;
            }
        }
        if !perm::next_permutation(&mut pa) {
            break;
        }
    }
    Ok(())
}

/// Exact minimum of an integer objective over the family, with a witness.
/// `optimal` refers to the family, not to all bijections.
pub fn min_over_restricted(
    g: &Graph,
    h: &Graph,
    fam: &RestrictedFamily,
    metric: MetricKind,
) -> Result<DistanceResult, SolveError> {
    check_orders(g, h)?;
    fam.validate_cover(g, h)?;
    if !metric.is_integer_valued() {
        return Err(SolveError::UnsupportedMetric(format!(
            "restricted minimisation needs an integer objective, not {metric}"
        )));
    }
    let dg = DenseGraph::from_graph(g);
    let dh = DenseGraph::from_graph(h);
    let use_edit = matches!(metric, MetricKind::Edit);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut nodes = 0u64;
    visit_restricted_perms(&dg, &dh, fam, |p| {
        nodes += 1;
        let v = if use_edit {
            dense::edit_count(&dg, &dh, p)
        } else {
            dense::mmc_count(&dg, &dh, p).0
        };
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, p.to_vec()));
            if v == 0 {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    let (value, perm) = best.ok_or_else(|| SolveError::BadFamily("empty family".into()))?;
    Ok(DistanceResult {
        value: NormValue::exact(value as f64),
        best_alignment: dg.alignment_from_perm(&dh, &perm),
        optimal: true,
        nodes_expanded: nodes,
    })
}

/// The minimum maximum-mismatch-count over the family, with its witness
/// vertex and alignment.
pub fn min_mmc_restricted(
    g: &Graph,
    h: &Graph,
    fam: &RestrictedFamily,
) -> Result<(MmcValue, Alignment), SolveError> {
    let result = min_over_restricted(g, h, fam, MetricKind::P(PExponent::ONE))?;
    let sg = crate::graph::mismatch_graph(g, h, &result.best_alignment)
        .map_err(|e| SolveError::BadFamily(format!("{e}")))?;
    Ok((crate::metrics::mmc_of(&sg), result.best_alignment))
}

/// Minimises the edit norm of a clique-gadget pair over the alignments
/// that map core onto cycle and cliques onto cliques index-wise. For every
/// such alignment the clique and attachment edges are neutral and the
/// matching edges are negative, so the value decomposes as
/// (core-vs-cycle edit count) + n/2; the search minimises the core part
/// exhaustively.
///
/// When `q >= 3n + 4` any alignment outside this family pays more than 3n,
/// so the returned value is the true distance and `optimal` is set.
pub fn conservative_search(
    gq: &CliqueGadget,
    dnq: &CycleCliqueGadget,
) -> Result<DistanceResult, SolveError> {
    conservative_search_capped(gq, dnq, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn conservative_search_capped(
    gq: &CliqueGadget,
    dnq: &CycleCliqueGadget,
    cap: usize,
) -> Result<DistanceResult, SolveError> {
    if gq.q != dnq.q {
        return Err(SolveError::GadgetMismatch(format!(
            "clique parameters differ: {} vs {}",
            gq.q, dnq.q
        )));
    }
    let n = gq.core.vertex_count();
    if n != dnq.n {
        return Err(SolveError::GadgetMismatch(format!(
            "core orders differ: {} vs {}",
            n, dnq.n
        )));
    }
    if n > cap {
        return Err(SolveError::CapExceeded { order: n, cap });
    }
    let dg = DenseGraph::from_graph(&gq.core);
    let dh = DenseGraph::from_graph(&dnq.base.core);
    let mut nodes = 0u64;
    let mut best: Option<(usize, Vec<usize>)> = None;
    perm::visit_permutations(n, |p| {
        nodes += 1;
        let v = dense::edit_count(&dg, &dh, p);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, p.to_vec()));
        }
        ControlFlow::Continue(())
    });
    let (core_value, core_perm) = best.expect("n >= 1");
    let sigma = dg.alignment_from_perm(&dh, &core_perm);
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for (v, w) in sigma.iter() {
        pairs.push((v.clone(), w.clone()));
        let from = &gq.clique_of[v];
        let to = &dnq.base.clique_of[w];
        pairs.extend(from.iter().cloned().zip(to.iter().cloned()));
    }
    let total = core_value + n / 2;
    Ok(DistanceResult {
        value: NormValue::exact(total as f64),
        best_alignment: Alignment::from_pairs(pairs).expect("clique labels are disjoint"),
        optimal: gq.q >= 3 * n + 4,
        nodes_expanded: nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gadgets;

    fn edit_query(mode: SearchMode) -> DistanceQuery {
        DistanceQuery::new(MetricKind::Edit, mode)
    }

    #[test]
    fn k4_vs_c4_edit_distance() {
        let g = fixtures::complete(4);
        let h = fixtures::cycle(4);
        let r = delta_exhaustive(&g, &h, &edit_query(SearchMode::Exhaustive)).unwrap();
        assert_eq!(r.value.value(), Some(2.0));
        assert!(r.optimal);
    }

    #[test]
    fn isomorphic_pair_distance_zero() {
        let g = fixtures::prism(3);
        let h = fixtures::relabel_prefixed(&g, "x");
        let r = delta_exhaustive(&g, &h, &edit_query(SearchMode::Exhaustive)).unwrap();
        assert_eq!(r.value.value(), Some(0.0));
        assert!(crate::metrics::mu_edit(&g, &h, &r.best_alignment).unwrap() == 0);
    }

    #[test]
    fn k33_vs_c6_is_half_order() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::cycle(6);
        let r = delta_exhaustive(&g, &h, &edit_query(SearchMode::Exhaustive)).unwrap();
        assert_eq!(r.value.value(), Some(3.0));
    }

    /// For intermediate p the search returns the interval of pointwise
    /// minima: its ends match a brute-force scan of the sandwich bounds.
    #[test]
    fn exhaustive_interval_metric_minima() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::prism(3);
        let p = PExponent::new(3.0).unwrap();
        let q = DistanceQuery::new(MetricKind::P(p), SearchMode::Exhaustive);
        let r = delta_exhaustive(&g, &h, &q).unwrap();
        let dg = DenseGraph::from_graph(&g);
        let dh = DenseGraph::from_graph(&h);
        let mut min_lo = f64::INFINITY;
        let mut min_hi = f64::INFINITY;
        perm::visit_permutations(6, |perm| {
            let bound = crate::metrics::mmc_sandwich(dense::mmc_count(&dg, &dh, perm).0, p);
            min_lo = min_lo.min(bound.lo());
            min_hi = min_hi.min(bound.hi());
            ControlFlow::Continue(())
        });
        assert_eq!(r.value.lo(), min_lo);
        assert_eq!(r.value.hi(), min_hi);
        assert!(!r.value.is_exact());
        // the witness alignment attains the interval's upper end
        let direct = crate::metrics::mu_p(&g, &h, &r.best_alignment, p).unwrap();
        assert_eq!(direct.hi(), r.value.hi());
    }

    #[test]
    fn exhaustive_respects_cap() {
        let g = fixtures::cycle(11);
        let h = fixtures::cycle(11);
        assert!(matches!(
            delta_exhaustive(&g, &h, &edit_query(SearchMode::Exhaustive)),
            Err(SolveError::CapExceeded { order: 11, cap: 10 })
        ));
    }

    #[test]
    fn exhaustive_budget_is_enforced() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::prism(3);
        let q = edit_query(SearchMode::Exhaustive).with_budget(10);
        assert!(matches!(
            delta_exhaustive(&g, &h, &q),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn bnb_matches_exhaustive_on_fixture_pairs() {
        let order4: Vec<Graph> = alloc::vec![
            fixtures::complete(4),
            fixtures::cycle(4),
            fixtures::path(4),
            fixtures::star(3),
        ];
        let order6: Vec<Graph> = alloc::vec![
            fixtures::complete_bipartite(3, 3),
            fixtures::prism(3),
            fixtures::cycle(6),
            fixtures::complete_bipartite(2, 4),
        ];
        let mut pairs: Vec<(Graph, Graph)> = Vec::new();
        for group in [order4, order6] {
            for i in 0..group.len() {
                for j in i..group.len() {
                    pairs.push((group[i].clone(), group[j].clone()));
                }
            }
        }
        for metric in [MetricKind::Edit, MetricKind::P(PExponent::ONE)] {
            for (g, h) in &pairs {
                let q = DistanceQuery::new(metric, SearchMode::Exhaustive);
                let a = delta_exhaustive(g, h, &q).unwrap();
                let b = delta_branch_and_bound(g, h, &q).unwrap();
                assert_eq!(a.value.value(), b.value.value(), "{metric} on {g:?} {h:?}");
                assert!(b.optimal);
            }
        }
    }

    #[test]
    fn bnb_self_distance_is_zero_at_root() {
        let g = fixtures::hypercube(3);
        let r = delta_branch_and_bound(&g, &g, &edit_query(SearchMode::BranchAndBound)).unwrap();
        assert_eq!(r.value.value(), Some(0.0));
    }

    #[test]
    fn bnb_threshold_no_certificate() {
        // delta_edit(K33, C6) = 3, so threshold 2 certifies a no.
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::cycle(6);
        let q = edit_query(SearchMode::BranchAndBound).with_threshold(2.0);
        let r = delta_branch_and_bound(&g, &h, &q).unwrap();
        assert!(!r.optimal);
        assert!(r.value.lo() > 2.0);
        assert_eq!(r.value.lo(), 3.0);
    }

    #[test]
    fn bnb_threshold_yes_certificate() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::cycle(6);
        let q = edit_query(SearchMode::BranchAndBound).with_threshold(3.0);
        let r = delta_branch_and_bound(&g, &h, &q).unwrap();
        assert!(r.value.hi() <= 3.0);
        assert_eq!(
            crate::metrics::mu_edit(&g, &h, &r.best_alignment).unwrap() as f64,
            r.value.hi()
        );
    }

    #[test]
    fn bnb_rejects_interval_metrics() {
        let g = fixtures::cycle(4);
        let q = DistanceQuery::new(
            MetricKind::P(PExponent::new(1.5).unwrap()),
            SearchMode::BranchAndBound,
        );
        assert!(matches!(
            delta_branch_and_bound(&g, &g, &q),
            Err(SolveError::UnsupportedMetric(_))
        ));
    }

    /// The partial-assignment bound never exceeds the best completion.
    #[test]
    fn lower_bound_is_admissible() {
        use rand::seq::SliceRandom;
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let pairs = [
            (fixtures::complete_bipartite(3, 3), fixtures::prism(3)),
            (fixtures::complete(4), fixtures::cycle(4)),
            (fixtures::cycle(6), fixtures::prism(3)),
        ];
        for (g, h) in &pairs {
            let dg = DenseGraph::from_graph(g);
            let dh = DenseGraph::from_graph(h);
            let n = dg.n();
            for _ in 0..350 {
                let depth = rng.gen_range(1..n);
                let mut sources: Vec<usize> = (0..n).collect();
                sources.shuffle(&mut rng);
                let mut targets: Vec<usize> = (0..n).collect();
                targets.shuffle(&mut rng);
                let order: Vec<usize> = sources.clone();
                let mut bnb = Bnb {
                    g: &dg,
                    h: &dh,
                    order,
                    use_edit: true,
                    perm: alloc::vec![usize::MAX; n],
                    inv: alloc::vec![usize::MAX; n],
                    forced: alloc::vec![0; n],
                    contribution: alloc::vec![0; n],
                    contribution_sum: 0,
                    contribution_max: 0,
                    incumbent: None,
                    cutoff: None,
                    budget: u64::MAX,
                    nodes: 0,
                    yes_exit: false,
                };
                for i in 0..depth {
                    bnb.assign(sources[i], targets[i]);
                }
                let lb_edit = bnb.lower_bound();
                let lb_mmc = bnb.contribution_max;
                // brute-force the best completion of this partial map
                let free_src: Vec<usize> = sources[depth..].to_vec();
                let free_tgt: Vec<usize> = targets[depth..].to_vec();
                let mut best_edit = usize::MAX;
                let mut best_mmc = usize::MAX;
                perm::visit_permutations(free_src.len(), |p| {
                    let mut full: Vec<usize> = alloc::vec![0; n];
                    for i in 0..depth {
                        full[sources[i]] = targets[i];
                    }
                    for (i, &pi) in p.iter().enumerate() {
                        full[free_src[i]] = free_tgt[pi];
                    }
                    best_edit = best_edit.min(dense::edit_count(&dg, &dh, &full));
                    best_mmc = best_mmc.min(dense::mmc_count(&dg, &dh, &full).0);
                    ControlFlow::Continue(())
                });
                assert!(lb_edit as usize <= best_edit, "edit bound inadmissible");
                assert!(lb_mmc as usize <= best_mmc, "mmc bound inadmissible");
            }
        }
    }

    #[test]
    fn restricted_enumeration_counts() {
        let fam = RestrictedFamily::new(
            [VertexId::from(0usize), VertexId::from(1usize)],
            [VertexId::from(2usize), VertexId::from(3usize)],
            [VertexId::from(10usize), VertexId::from(11usize)],
            [VertexId::from(12usize), VertexId::from(13usize)],
        )
        .unwrap();
        let all: Vec<Alignment> = enumerate_restricted(&fam).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(fam.size(), 4);
        let distinct: BTreeSet<Vec<(VertexId, VertexId)>> = all
            .iter()
            .map(|a| a.iter().map(|(u, v)| (u.clone(), v.clone())).collect())
            .collect();
        assert_eq!(distinct.len(), 4);
        for a in &all {
            for (u, v) in a.iter() {
                let u_in_a = u == &VertexId::from(0usize) || u == &VertexId::from(1usize);
                let v_in_even = v == &VertexId::from(10usize) || v == &VertexId::from(11usize);
                assert_eq!(u_in_a, v_in_even);
            }
        }
    }

    #[test]
    fn restricted_family_of_k33_vs_h3() {
        let g = fixtures::complete_bipartite(3, 3);
        let hk = gadgets::build_hk(3).unwrap();
        let (a, b) = gadgets::canonical_ab(&g).unwrap();
        let fam = RestrictedFamily::for_cores(a, b, &hk).unwrap();
        assert_eq!(fam.size(), 36);
        assert_eq!(enumerate_restricted(&fam).count(), 36);
        let (mmc, sigma) = min_mmc_restricted(&g, &hk.graph, &fam).unwrap();
        assert_eq!(mmc.value, 2);
        assert_eq!(crate::metrics::mmc(&g, &hk.graph, &sigma).unwrap().value, 2);
    }

    #[test]
    fn restricted_identity_pair_reaches_zero() {
        let hk = gadgets::build_hk(3).unwrap();
        let fam = RestrictedFamily::new(
            hk.even_vertices(),
            hk.odd_vertices(),
            hk.even_vertices(),
            hk.odd_vertices(),
        )
        .unwrap();
        let (mmc, _) = min_mmc_restricted(&hk.graph, &hk.graph, &fam).unwrap();
        assert_eq!(mmc.value, 0);
    }

    #[test]
    fn conservative_search_values() {
        // Hamiltonian cores: value = n/2 + n/2 = n.
        for (core, n) in [(fixtures::complete(4), 4), (fixtures::complete_bipartite(3, 3), 6)] {
            let q = 3 * n + 4;
            let gq = gadgets::build_gq(&core, q).unwrap();
            let dnq = gadgets::build_dnq(n, q).unwrap();
            let r = conservative_search(&gq, &dnq).unwrap();
            assert_eq!(r.value.value(), Some(n as f64));
            assert!(r.optimal);
            // the claimed value is the actual edit norm of the alignment
            let direct =
                crate::metrics::mu_edit(&gq.graph, dnq.graph(), &r.best_alignment).unwrap();
            assert_eq!(direct as f64, r.value.value().unwrap());
        }
    }

    #[test]
    fn conservative_search_rejects_mismatched_gadgets() {
        let gq = gadgets::build_gq(&fixtures::complete(4), 5).unwrap();
        let dnq = gadgets::build_dnq(4, 6).unwrap();
        assert!(matches!(
            conservative_search(&gq, &dnq),
            Err(SolveError::GadgetMismatch(_))
        ));
    }

    /// A Hamiltonian-cycle-induced core bijection leaves every cycle edge
    /// neutral, so the structured alignment built on it costs exactly
    /// n/2 + n/2.
    #[test]
    fn hamiltonian_sigma_gives_exactly_n() {
        let core = fixtures::complete_bipartite(3, 3);
        let n = 6;
        let cycle_order = crate::hamilton::hamiltonian_cycle(&core).unwrap().unwrap();
        let gq = gadgets::build_gq(&core, 3 * n + 4).unwrap();
        let dnq = gadgets::build_dnq(n, 3 * n + 4).unwrap();
        let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
        for (i, v) in cycle_order.iter().enumerate() {
            let w = VertexId::from(i);
            pairs.push((v.clone(), w.clone()));
            let from = &gq.clique_of[v];
            let to = &dnq.base.clique_of[&w];
            pairs.extend(from.iter().cloned().zip(to.iter().cloned()));
        }
        let pi = Alignment::from_pairs(pairs).unwrap();
        let value = crate::metrics::mu_edit(&gq.graph, dnq.graph(), &pi).unwrap();
        assert_eq!(value, n / 2 + n / 2);
    }
}
