//! The three mismatch norms of a fixed alignment.
//!
//! * `mu_edit` counts signed edges of the mismatch graph.
//! * `mu_p` is the lp operator norm of the signed adjacency matrix.
//! * `mu_abs_p` is the same norm after taking componentwise absolute
//!   values.
//!
//! For p = 1 and p = infinity the operator norm of a symmetric matrix is
//! the maximum absolute column sum, which for a ±1 adjacency matrix is the
//! maximum degree — the maximum mismatch count, `mmc`. For p = 2 the norm
//! is the largest absolute eigenvalue and is computed exactly. For every
//! other p exact evaluation is out of reach and the result is a certified
//! interval around the true value: with q the maximum mismatch count,
//! `max(q^(1/p), q^(1-1/p)) <= mu <= q`.

use core::fmt;

use crate::flt::powf;
use crate::graph::{mismatch_graph, Alignment, Graph, MismatchError, SignedGraph, VertexId};
use crate::spectral;

/// The exponent of an lp operator norm: a finite real >= 1, or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self, MetricError> {
        if p.is_nan() || !p.is_finite() || p < 1.0 {
            return Err(MetricError::InvalidExponent(p));
        }
        Ok(PExponent::Finite(p))
    }

    pub const INFINITY: PExponent = PExponent::Infinity;
    pub const ONE: PExponent = PExponent::Finite(1.0);
    pub const TWO: PExponent = PExponent::Finite(2.0);

    pub fn is_one(&self) -> bool {
        matches!(self, PExponent::Finite(p) if *p == 1.0)
    }

    pub fn is_two(&self) -> bool {
        matches!(self, PExponent::Finite(p) if *p == 2.0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PExponent::Infinity)
    }

    /// Column-sum cases where the norm collapses to the maximum degree.
    pub fn is_degree_like(&self) -> bool {
        self.is_one() || self.is_infinite()
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// A non-negative value that is either exact or a certified interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormValue {
    lo: f64,
    hi: f64,
    exact: bool,
}

impl NormValue {
    pub fn exact(x: f64) -> Self {
        assert!(x >= 0.0, "norms are non-negative");
        NormValue { lo: x, hi: x, exact: true }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        assert!(0.0 <= lo && lo <= hi, "invalid interval [{lo}, {hi}]");
        NormValue { lo, hi, exact: false }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The exact value, when there is one.
    pub fn value(&self) -> Option<f64> {
        self.exact.then_some(self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.hi)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Maximum mismatch count with a vertex attaining it. `witness` is `None`
/// only when the mismatch graph has no vertices at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmcValue {
    pub value: usize,
    pub witness: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricError {
    Mismatch(MismatchError),
    InvalidExponent(f64),
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::Mismatch(e) => write!(f, "{e}"),
            MetricError::InvalidExponent(p) => write!(f, "invalid exponent {p}; need p >= 1"),
        }
    }
}

impl core::error::Error for MetricError {}

impl From<MismatchError> for MetricError {
    fn from(e: MismatchError) -> Self {
        MetricError::Mismatch(e)
    }
}

/// Number of edges of the mismatch graph of `pi`.
pub fn mu_edit(g: &Graph, h: &Graph, pi: &Alignment) -> Result<usize, MetricError> {
    Ok(mismatch_graph(g, h, pi)?.edge_count())
}

/// Maximum degree of the mismatch graph of `pi`, with a witness.
pub fn mmc(g: &Graph, h: &Graph, pi: &Alignment) -> Result<MmcValue, MetricError> {
    Ok(mmc_of(&mismatch_graph(g, h, pi)?))
}

pub fn mmc_of(sg: &SignedGraph) -> MmcValue {
    match sg.max_degree() {
        Some((value, witness)) => MmcValue { value, witness: Some(witness.clone()) },
        None => MmcValue { value: 0, witness: None },
    }
}

/// lp operator norm of the mismatch graph of `pi`.
pub fn mu_p(g: &Graph, h: &Graph, pi: &Alignment, p: PExponent) -> Result<NormValue, MetricError> {
    Ok(signed_norm(&mismatch_graph(g, h, pi)?, p))
}

/// Absolute lp operator norm of the mismatch graph of `pi`.
pub fn mu_abs_p(
    g: &Graph,
    h: &Graph,
    pi: &Alignment,
    p: PExponent,
) -> Result<NormValue, MetricError> {
    Ok(unsigned_norm(&mismatch_graph(g, h, pi)?, p))
}

/// lp operator norm of a signed graph's ±1 adjacency matrix: exact for
/// p in {1, 2, inf}, otherwise the maximum-degree interval.
pub fn signed_norm(sg: &SignedGraph, p: PExponent) -> NormValue {
    let q = mmc_of(sg).value;
    if p.is_degree_like() {
        return NormValue::exact(q as f64);
    }
    if p.is_two() {
        let m = spectral::signed_adjacency_matrix(sg);
        return NormValue::exact(spectral::spectral_norm(m, spectral::DEFAULT_TOL));
    }
    mmc_sandwich(q, p)
}

/// Same policy on the componentwise absolute value of the matrix. For
/// intermediate p the interval's lower end is tightened by evaluating the
/// norm ratio at candidate vectors; any nonzero vector certifies a lower
/// bound.
pub fn unsigned_norm(sg: &SignedGraph, p: PExponent) -> NormValue {
    let q = mmc_of(sg).value;
    if p.is_degree_like() {
        return NormValue::exact(q as f64);
    }
    if p.is_two() {
        let m = spectral::unsigned_adjacency_matrix(sg);
        return NormValue::exact(spectral::spectral_norm(m, spectral::DEFAULT_TOL));
    }
    let base = mmc_sandwich(q, p);
    if q == 0 {
        return base;
    }
    let m = spectral::unsigned_adjacency_matrix(sg);
    let lo = base.lo().max(candidate_lower_bound(&m, p));
    NormValue::interval(lo.min(base.hi()), base.hi())
}

/// The certified interval around any lp mismatch norm implied by the
/// maximum mismatch count q. Collapses to a point at p = 1 and p = inf.
pub fn mmc_sandwich(q: usize, p: PExponent) -> NormValue {
    if q == 0 {
        return NormValue::exact(0.0);
    }
    let q = q as f64;
    if p.is_degree_like() {
        return NormValue::exact(q);
    }
    let PExponent::Finite(p) = p else {
        unreachable!("an infinite exponent is degree-like")
    };
    let lo = powf(q, 1.0 / p).max(powf(q, 1.0 - 1.0 / p));
    if lo >= q {
        NormValue::exact(q)
    } else {
        NormValue::interval(lo, q)
    }
}

/// max ||Mx||_p / ||x||_p over a few cheap candidate vectors: the indicator
/// of the max-degree column and two power-iteration refinements of it.
fn candidate_lower_bound(m: &[alloc::vec::Vec<f64>], p: PExponent) -> f64 {
    let PExponent::Finite(p) = p else { return 0.0 };
    let n = m.len();
    let col_sums: alloc::vec::Vec<f64> = (0..n).map(|j| (0..n).map(|i| m[i][j]).sum()).collect();
    let Some(start) = (0..n).max_by(|&a, &b| col_sums[a].total_cmp(&col_sums[b])) else {
        return 0.0;
    };
    let mut x = alloc::vec![0.0; n];
    x[start] = 1.0;
    let mut best = 0.0f64;
    for _ in 0..3 {
        let y = mat_vec(m, &x);
        let (nx, ny) = (norm_p(&x, p), norm_p(&y, p));
        if nx > 0.0 {
            best = best.max(ny / nx);
        }
        if ny == 0.0 {
            break;
        }
        x = y;
    }
    best
}

fn mat_vec(m: &[alloc::vec::Vec<f64>], x: &[f64]) -> alloc::vec::Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn norm_p(x: &[f64], p: f64) -> f64 {
    let s: f64 = x.iter().map(|v| powf(crate::flt::abs(*v), p)).sum();
    powf(s, 1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_abs_diff_eq;

    fn figure_pair() -> (Graph, Graph, Alignment) {
        let g = Graph::from_edges(["u1", "u2", "u3", "u4"], [("u1", "u2"), ("u2", "u3")]).unwrap();
        let h = Graph::from_edges(["v1", "v2", "v3", "v4"], [("v2", "v3"), ("v3", "v4")]).unwrap();
        let pi =
            Alignment::from_pairs([("u1", "v1"), ("u2", "v2"), ("u3", "v3"), ("u4", "v4")]).unwrap();
        (g, h, pi)
    }

    #[test]
    fn edit_counts_mismatch_edges() {
        let (g, h, pi) = figure_pair();
        assert_eq!(mu_edit(&g, &h, &pi).unwrap(), 2);
        let c = fixtures::cycle(5);
        assert_eq!(mu_edit(&c, &c, &Alignment::identity_on(&c)).unwrap(), 0);
    }

    #[test]
    fn edit_is_half_the_volume() {
        let g = fixtures::complete(4);
        let h = fixtures::cycle(4);
        let pi = Alignment::identity_on(&g);
        let sg = mismatch_graph(&g, &h, &pi).unwrap();
        assert_eq!(mu_edit(&g, &h, &pi).unwrap(), sg.volume() / 2);
    }

    #[test]
    fn edit_symmetric_under_inverse() {
        let g = fixtures::complete_bipartite(3, 3);
        let h = fixtures::prism(3);
        let pi = Alignment::from_pairs(
            g.vertices().cloned().zip(h.vertices().cloned()).collect::<alloc::vec::Vec<_>>(),
        )
        .unwrap();
        assert_eq!(
            mu_edit(&g, &h, &pi).unwrap(),
            mu_edit(&h, &g, &pi.inverse()).unwrap()
        );
    }

    #[test]
    fn mmc_of_figure_pair_is_one() {
        let (g, h, pi) = figure_pair();
        let m = mmc(&g, &h, &pi).unwrap();
        assert_eq!(m.value, 1);
        assert!(m.witness.is_some());
    }

    #[test]
    fn mmc_identity_is_zero() {
        let g = fixtures::prism(3);
        assert_eq!(mmc(&g, &g, &Alignment::identity_on(&g)).unwrap().value, 0);
    }

    #[test]
    fn k4_vs_c4_mmc_is_one() {
        let g = fixtures::complete(4);
        let h = fixtures::cycle(4);
        assert_eq!(mmc(&g, &h, &Alignment::identity_on(&g)).unwrap().value, 1);
    }

    #[test]
    fn p1_and_inf_collapse_to_mmc() {
        let g = fixtures::complete(4);
        let h = fixtures::cycle(4);
        let pi = Alignment::identity_on(&g);
        let q = mmc(&g, &h, &pi).unwrap().value as f64;
        for p in [PExponent::ONE, PExponent::INFINITY] {
            assert_eq!(mu_p(&g, &h, &pi, p).unwrap().value(), Some(q));
            assert_eq!(mu_abs_p(&g, &h, &pi, p).unwrap().value(), Some(q));
        }
    }

    #[test]
    fn p2_of_disjoint_edges_is_one() {
        let (g, h, pi) = figure_pair();
        let v = mu_p(&g, &h, &pi, PExponent::TWO).unwrap();
        assert_abs_diff_eq!(v.value().unwrap(), 1.0, epsilon = 1e-9);
        let v = mu_abs_p(&g, &h, &pi, PExponent::TWO).unwrap();
        assert_abs_diff_eq!(v.value().unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn identity_alignment_gives_zero_for_any_p() {
        let g = fixtures::hypercube(3);
        let pi = Alignment::identity_on(&g);
        for p in [PExponent::ONE, PExponent::TWO, PExponent::new(2.5).unwrap()] {
            assert_eq!(mu_p(&g, &g, &pi, p).unwrap().value(), Some(0.0));
        }
    }

    /// One 4-cycle with three positive edges and one negative: taking
    /// absolute values erases the frustration, so the unsigned norm is 2
    /// while the signed norm drops to sqrt(2).
    #[test]
    fn frustrated_cycle_separates_signed_from_unsigned() {
        let mut sg = SignedGraph::new(["a", "b", "c", "d"]);
        sg.add_pos_edge("a".into(), "b".into()).unwrap();
        sg.add_pos_edge("b".into(), "c".into()).unwrap();
        sg.add_pos_edge("c".into(), "d".into()).unwrap();
        sg.add_neg_edge("d".into(), "a".into()).unwrap();
        let signed = signed_norm(&sg, PExponent::TWO).value().unwrap();
        let unsigned = unsigned_norm(&sg, PExponent::TWO).value().unwrap();
        assert_abs_diff_eq!(unsigned, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(signed, core::f64::consts::SQRT_2, epsilon = 1e-9);
        assert!(signed < unsigned);
    }

    #[test]
    fn star_signed_norm_is_sqrt_degree() {
        for d in [3usize, 6] {
            let mut sg = SignedGraph::new(0..=d);
            for i in 1..=d {
                sg.add_pos_edge(VertexId::from(0usize), VertexId::from(i)).unwrap();
            }
            let v = signed_norm(&sg, PExponent::TWO).value().unwrap();
            assert_abs_diff_eq!(v, (d as f64).sqrt(), epsilon = 1e-9);
        }
    }

    #[test]
    fn sandwich_examples() {
        let v = mmc_sandwich(4, PExponent::TWO);
        assert_eq!((v.lo(), v.hi()), (2.0, 4.0));
        let v = mmc_sandwich(0, PExponent::new(3.0).unwrap());
        assert_eq!(v.value(), Some(0.0));
        let v = mmc_sandwich(4, PExponent::new(4.0).unwrap());
        assert_abs_diff_eq!(v.lo(), 4.0f64.powf(0.75), epsilon = 1e-12);
        assert_eq!(v.hi(), 4.0);
        assert_eq!(mmc_sandwich(5, PExponent::ONE).value(), Some(5.0));
        assert_eq!(mmc_sandwich(5, PExponent::INFINITY).value(), Some(5.0));
    }

    #[test]
    fn interval_p_stays_inside_sandwich() {
        let g = fixtures::complete(4);
        let h = fixtures::cycle(4);
        let pi = Alignment::identity_on(&g);
        let q = mmc(&g, &h, &pi).unwrap().value;
        for p in [1.5, 3.0, 7.0] {
            let p = PExponent::new(p).unwrap();
            let sandwich = mmc_sandwich(q, p);
            for v in [mu_p(&g, &h, &pi, p).unwrap(), mu_abs_p(&g, &h, &pi, p).unwrap()] {
                assert!(v.lo() >= sandwich.lo() - 1e-12);
                assert!(v.hi() <= sandwich.hi() + 1e-12);
                assert!(v.lo() <= v.hi());
            }
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(PExponent::new(0.5).is_err());
        assert!(PExponent::new(f64::NAN).is_err());
        assert!(PExponent::new(1.0).is_ok());
    }
}
