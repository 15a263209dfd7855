//! Finite groups as Cayley tables, Latin squares and their graphs,
//! strongly regular parameter detection, and the twinned-cell alignment
//! between the Latin square graphs of `Gamma x Z4` and `Gamma x (Z2)^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dense::DenseGraph;
use crate::graph::{mismatch_graph, Alignment, Edge, Graph, MismatchError, VertexId};
use crate::metrics;

#[derive(Clone, Debug, PartialEq)]
pub enum LatinError {
    NotSquare,
    NotLatin(String),
    NoIdentity,
    NoInverse(String),
    NotAssociative(String),
    BadAlphabet(String),
    AlphabetTooSmall,
    NotStronglyRegular,
    ParamsMismatch,
    LambdaBelowNu,
    BadCell,
    NotAnEdge,
    Mismatch(MismatchError),
}

impl fmt::Display for LatinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinError::NotSquare => write!(f, "table is not square"),
            LatinError::NotLatin(s) => write!(f, "not a Latin square: {s}"),
            LatinError::NoIdentity => write!(f, "no identity element"),
            LatinError::NoInverse(s) => write!(f, "missing inverse for {s}"),
            LatinError::NotAssociative(s) => write!(f, "not associative at {s}"),
            LatinError::BadAlphabet(s) => write!(f, "bad alphabet: {s}"),
            LatinError::AlphabetTooSmall => write!(f, "alphabet needs at least 2 symbols"),
            LatinError::NotStronglyRegular => write!(f, "graph is not strongly regular"),
            LatinError::ParamsMismatch => write!(f, "strongly regular parameters differ"),
            LatinError::LambdaBelowNu => write!(f, "lambda below nu is out of scope"),
            LatinError::BadCell => write!(f, "cell out of range"),
            LatinError::NotAnEdge => write!(f, "vertices are not adjacent"),
            LatinError::Mismatch(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LatinError {}

impl From<MismatchError> for LatinError {
    fn from(e: MismatchError) -> Self {
        LatinError::Mismatch(e)
    }
}

/// A finite group given by its Cayley table. Construction verifies the
/// Latin property and the group axioms outright; at the table sizes this
/// crate works with the exhaustive associativity check is cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    elements: Vec<String>,
    /// `table[i][j]` is the index of `elements[i] * elements[j]`.
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let alpha = elements.len();
        if alpha == 0 {
            return Err(LatinError::AlphabetTooSmall);
        }
        {
            let mut sorted = elements.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != alpha {
                return Err(LatinError::BadAlphabet("duplicate element names".into()));
            }
        }
        if table.len() != alpha || table.iter().any(|r| r.len() != alpha) {
            return Err(LatinError::NotSquare);
        }
        check_latin(&table)?;
        let identity = (0..alpha)
            .find(|&e| (0..alpha).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or(LatinError::NoIdentity)?;
        for i in 0..alpha {
            let has_inverse =
                (0..alpha).any(|j| table[i][j] == identity && table[j][i] == identity);
            if !has_inverse {
                return Err(LatinError::NoInverse(elements[i].clone()));
            }
        }
        for a in 0..alpha {
            for b in 0..alpha {
                for c in 0..alpha {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(LatinError::NotAssociative(format!(
                            "({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { elements, table, identity })
    }

    pub fn alpha(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut x = i;
        let mut ord = 1;
        while x != self.identity {
            x = self.mul(x, i);
            ord += 1;
        }
        ord
    }
}

fn check_latin(table: &[Vec<usize>]) -> Result<(), LatinError> {
    let alpha = table.len();
    for (i, row) in table.iter().enumerate() {
        let mut seen = alloc::vec![false; alpha];
        for &x in row {
            if x >= alpha || seen[x] {
                return Err(LatinError::NotLatin(format!("row {i}")));
            }
            seen[x] = true;
        }
    }
    for j in 0..alpha {
        let mut seen = alloc::vec![false; alpha];
        for row in table {
            let x = row[j];
            if seen[x] {
                return Err(LatinError::NotLatin(format!("column {j}")));
            }
            seen[x] = true;
        }
    }
    Ok(())
}

pub fn trivial_group() -> GroupTable {
    GroupTable::new(alloc::vec!["0".into()], alloc::vec![alloc::vec![0]]).unwrap()
}

/// The cyclic group of order n over `{"0", ..., "n-1"}`.
pub fn cyclic_group(n: usize) -> GroupTable {
    assert!(n >= 1);
    let elements = (0..n).map(|i| format!("{i}")).collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupTable::new(elements, table).unwrap()
}

/// The two order-4 groups with their conventional alphabets: the cyclic
/// one over `{0,1,2,3}` and the Klein one over `{0_s,1_s,2_s,3_s}` (whose
/// table is bitwise xor).
pub fn builtin_groups() -> (GroupTable, GroupTable) {
    let z4 = cyclic_group(4);
    let z2z2 = GroupTable::new(
        (0..4).map(|i| format!("{i}_s")).collect(),
        (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect(),
    )
    .unwrap();
    (z4, z2z2)
}

/// The symmetric group on three points; elements are named by their
/// one-line notation. The smallest non-abelian group.
pub fn symmetric_group_3() -> GroupTable {
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let name = |p: &[usize; 3]| format!("{}{}{}", p[0], p[1], p[2]);
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let index = |p: &[usize; 3]| perms.iter().position(|x| x == p).unwrap();
    let elements = perms.iter().map(name).collect();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index(&compose(p, q))).collect())
        .collect();
    GroupTable::new(elements, table).unwrap()
}

/// Direct product with lexicographically ordered elements named `(a,b)`.
pub fn group_product(g1: &GroupTable, g2: &GroupTable) -> GroupTable {
    let (a1, a2) = (g1.alpha(), g2.alpha());
    let elements: Vec<String> = g1
        .elements()
        .iter()
        .flat_map(|a| g2.elements().iter().map(move |b| format!("({a},{b})")))
        .collect();
    let idx = |i: usize, j: usize| i * a2 + j;
    let mut table = alloc::vec![alloc::vec![0usize; a1 * a2]; a1 * a2];
    for i1 in 0..a1 {
        for j1 in 0..a2 {
            for i2 in 0..a1 {
                for j2 in 0..a2 {
                    table[idx(i1, j1)][idx(i2, j2)] = idx(g1.mul(i1, i2), g2.mul(j1, j2));
                }
            }
        }
    }
    GroupTable::new(elements, table).expect("direct product of groups is a group")
}

/// An alphabet-indexed Latin square; rows and columns are labelled by the
/// alphabet itself, matching the Cayley table view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    alphabet: Vec<String>,
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(alphabet: Vec<String>, cells: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        if alphabet.len() < 2 {
            return Err(LatinError::AlphabetTooSmall);
        }
        if cells.len() != alphabet.len() || cells.iter().any(|r| r.len() != alphabet.len()) {
            return Err(LatinError::NotSquare);
        }
        if alphabet.iter().any(|a| a.contains(':')) {
            return Err(LatinError::BadAlphabet(
                "':' is reserved for cell labels".into(),
            ));
        }
        check_latin(&cells)?;
        Ok(LatinSquare { alphabet, cells })
    }

    pub fn from_group(g: &GroupTable) -> Result<Self, LatinError> {
        LatinSquare::new(g.elements().to_vec(), g.table().to_vec())
    }

    pub fn alpha(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.cells[row][col]
    }

    pub fn cell_label(&self, row: usize, col: usize) -> VertexId {
        VertexId::new(format!("{}:{}", self.alphabet[row], self.alphabet[col]))
    }
}

/// A Latin square graph with its cell bookkeeping: vertices are the cells,
/// adjacent when they share a row, a column or an entry.
#[derive(Clone, Debug)]
pub struct LatinSquareGraph {
    pub square: LatinSquare,
    pub graph: Graph,
    cell_of: BTreeMap<VertexId, (usize, usize)>,
}

impl LatinSquareGraph {
    pub fn cell_of(&self, v: &VertexId) -> Option<(usize, usize)> {
        self.cell_of.get(v).copied()
    }

    pub fn label_of(&self, cell: (usize, usize)) -> VertexId {
        self.square.cell_label(cell.0, cell.1)
    }
}

/// Builds the Latin square graph: alpha^2 vertices, 3(alpha-1)-regular.
pub fn latin_square_graph(square: &LatinSquare) -> LatinSquareGraph {
    let alpha = square.alpha();
    let mut graph = Graph::new();
    let mut cell_of = BTreeMap::new();
    let mut by_entry: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); alpha];
    for r in 0..alpha {
        for c in 0..alpha {
            let v = square.cell_label(r, c);
            graph.add_vertex(v.clone());
            cell_of.insert(v, (r, c));
            by_entry[square.entry(r, c)].push((r, c));
        }
    }
    for r in 0..alpha {
        for c1 in 0..alpha {
            for c2 in c1 + 1..alpha {
                graph
                    .add_edge(square.cell_label(r, c1), square.cell_label(r, c2))
                    .unwrap();
                graph
                    .add_edge(square.cell_label(c1, r), square.cell_label(c2, r))
                    .unwrap();
            }
        }
    }
    for cells in &by_entry {
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                graph
                    .add_edge(square.cell_label(a.0, a.1), square.cell_label(b.0, b.1))
                    .unwrap();
            }
        }
    }
    LatinSquareGraph { square: square.clone(), graph, cell_of }
}

/// How two adjacent Latin square graph vertices are related; exactly one
/// kind applies to any edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Row,
    Column,
    Entry,
}

pub fn classify_edge(lsg: &LatinSquareGraph, e: &Edge) -> Result<EdgeKind, LatinError> {
    let a = lsg.cell_of(e.a()).ok_or(LatinError::BadCell)?;
    let b = lsg.cell_of(e.b()).ok_or(LatinError::BadCell)?;
    if a.0 == b.0 {
        return Ok(EdgeKind::Row);
    }
    if a.1 == b.1 {
        return Ok(EdgeKind::Column);
    }
    if lsg.square.entry(a.0, a.1) == lsg.square.entry(b.0, b.1) {
        return Ok(EdgeKind::Entry);
    }
    Err(LatinError::NotAnEdge)
}

/// Strongly regular parameters `(n, d, lambda, nu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub d: usize,
    pub lambda: usize,
    pub nu: usize,
}

impl SrgParams {
    /// The counting identity d(d - lambda - 1) = (n - d - 1) nu.
    pub fn feasible(&self) -> bool {
        let (n, d, l, nu) = (self.n as i64, self.d as i64, self.lambda as i64, self.nu as i64);
        d * (d - l - 1) == (n - d - 1) * nu
    }
}

/// Detects strong regularity by counting common neighbours of every pair.
/// Degenerate graphs without adjacent (resp. non-adjacent) pairs report
/// lambda = 0 (resp. nu = 0).
pub fn detect_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let d = g.regular_degree()?;
    let dg = DenseGraph::from_graph(g);
    let mut lambda: Option<usize> = None;
    let mut nu: Option<usize> = None;
    for i in 0..n {
        for j in i + 1..n {
            let common: usize = dg
                .row(i)
                .iter()
                .zip(dg.row(j))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            let slot = if dg.has_edge(i, j) { &mut lambda } else { &mut nu };
            match slot {
                Some(x) if *x != common => return None,
                Some(_) => {}
                None => *slot = Some(common),
            }
        }
    }
    let params = SrgParams { n, d, lambda: lambda.unwrap_or(0), nu: nu.unwrap_or(0) };
    debug_assert!(params.feasible(), "common-neighbour counts violate the identity");
    Some(params)
}

/// For non-isomorphic strongly regular graphs with equal parameters and
/// lambda >= nu, every bijection's maximum mismatch count reaches
/// lambda - nu + 1 (and 2 when lambda = nu). Returns true when `pi`
/// witnesses an isomorphism or clears that bound; on valid inputs this is
/// always true and serves as a self-test oracle.
pub fn srg_bound_check(g: &Graph, h: &Graph, pi: &Alignment) -> Result<bool, LatinError> {
    let pg = detect_srg(g).ok_or(LatinError::NotStronglyRegular)?;
    let ph = detect_srg(h).ok_or(LatinError::NotStronglyRegular)?;
    if pg != ph {
        return Err(LatinError::ParamsMismatch);
    }
    if pg.lambda < pg.nu {
        return Err(LatinError::LambdaBelowNu);
    }
    let sg = mismatch_graph(g, h, pi)?;
    if sg.is_edgeless() {
        return Ok(true);
    }
    let required = (pg.lambda - pg.nu + 1).max(2);
    Ok(metrics::mmc_of(&sg).value >= required)
}

/// The twinned-cell alignment between the Latin square graphs of
/// `Gamma x Z4` and `Gamma x (Z2)^2`: cells map index-wise, which matches
/// the component-preserving substitution of the inner factor.
#[derive(Clone, Debug)]
pub struct TwinnedAlignment {
    pub group_g: GroupTable,
    pub group_h: GroupTable,
    pub g: LatinSquareGraph,
    pub h: LatinSquareGraph,
    pub alignment: Alignment,
}

impl TwinnedAlignment {
    /// Number of vertices of either graph: 16 |Gamma|^2.
    pub fn n(&self) -> usize {
        self.group_g.alpha() * self.group_g.alpha()
    }

    /// sqrt(n) = 4 |Gamma|, the degree every even cell attains in the
    /// mismatch graph.
    pub fn sqrt_n(&self) -> usize {
        self.group_g.alpha()
    }
}

pub fn twinned_alignment(gamma: &GroupTable) -> Result<TwinnedAlignment, LatinError> {
    let (z4, z2z2) = builtin_groups();
    let group_g = group_product(gamma, &z4);
    let group_h = group_product(gamma, &z2z2);
    let g = latin_square_graph(&LatinSquare::from_group(&group_g)?);
    let h = latin_square_graph(&LatinSquare::from_group(&group_h)?);
    let alpha = group_g.alpha();
    let mut pairs = Vec::with_capacity(alpha * alpha);
    for r in 0..alpha {
        for c in 0..alpha {
            pairs.push((g.square.cell_label(r, c), h.square.cell_label(r, c)));
        }
    }
    let alignment = Alignment::from_pairs(pairs).expect("cell labels are unique");
    Ok(TwinnedAlignment { group_g, group_h, g, h, alignment })
}

/// Whether cells of the two product tables carry corresponding entries.
/// Presumes both groups are built by [`group_product`] over the same
/// `Gamma` with the order-4 factors of [`builtin_groups`], so that equal
/// indices mean corresponding elements.
pub fn is_twinned(
    group_g: &GroupTable,
    group_h: &GroupTable,
    u: (usize, usize),
    v: (usize, usize),
) -> Result<bool, LatinError> {
    let alpha = group_g.alpha();
    if group_h.alpha() != alpha || alpha % 4 != 0 {
        return Err(LatinError::ParamsMismatch);
    }
    if u.0 >= alpha || u.1 >= alpha || v.0 >= alpha || v.1 >= alpha {
        return Err(LatinError::BadCell);
    }
    Ok(group_g.mul(u.0, u.1) == group_h.mul(v.0, v.1))
}

/// Parity of a product-table cell: the inner (order-4) components of the
/// row and column elements summed. Even cells are the only ones that can
/// touch mismatch edges of the twinned alignment.
pub fn cell_is_even(cell: (usize, usize)) -> bool {
    ((cell.0 % 4) + (cell.1 % 4)) % 2 == 0
}
