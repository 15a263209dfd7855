//! Text and JSON interchange formats.
//!
//! Emission is canonical: vertices sorted, edge endpoints sorted, edges
//! sorted. Parsing a canonical document and re-emitting it reproduces the
//! bytes; parsing any emitted document reproduces the value.



use mismatch_core::graph::{Alignment, Graph, SignedGraph, VertexId};
use mismatch_core::latin::GroupTable;
use mismatch_core::metrics::NormValue;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
    #[error("graph: {0}")]
    BadGraph(String),
    #[error("group: {0}")]
    BadGroup(String),
}

fn canonical_edges(edges: impl Iterator<Item = (String, String)>) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = edges
        .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect();
    out.sort();
    out
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphDoc {
        vertices: g.vertices().map(|v| v.as_str().to_owned()).collect(),
        edges: canonical_edges(
            g.edges().map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned())),
        ),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn graph_from_json(s: &str) -> Result<Graph, FormatError> {
    let doc: GraphDoc = serde_json::from_str(s)?;
    build_graph(doc.vertices, doc.edges)
}

fn build_graph(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Graph, FormatError> {
    let mut g = Graph::new();
    for v in vertices {
        if !g.add_vertex(VertexId::new(v.clone())) {
            return Err(FormatError::BadGraph(format!("duplicate vertex {v}")));
        }
    }
    for (a, b) in edges {
        for x in [&a, &b] {
            if !g.has_vertex(&VertexId::new(x.clone())) {
                return Err(FormatError::BadGraph(format!("edge endpoint {x} not listed")));
            }
        }
        match g.add_edge(VertexId::new(a.clone()), VertexId::new(b.clone())) {
            Ok(true) => {}
            Ok(false) => {
                return Err(FormatError::BadGraph(format!("duplicate edge ({a}, {b})")))
            }
            Err(e) => return Err(FormatError::BadGraph(e.to_string())),
        }
    }
    Ok(g)
}

/// Header `p <n> <m>` followed by `m` lines `e <label> <label>`. The
/// format carries no vertex list, so isolated vertices and labels with
/// whitespace are not representable; use the JSON format for those.
pub fn graph_to_text(g: &Graph) -> Result<String, FormatError> {
    for v in g.vertices() {
        if v.as_str().chars().any(char::is_whitespace) {
            return Err(FormatError::BadGraph(format!(
                "label {v:?} contains whitespace; not representable in the text format"
            )));
        }
        if g.degree(v) == Some(0) {
            return Err(FormatError::BadGraph(format!(
                "isolated vertex {v}; not representable in the text format"
            )));
        }
    }
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (a, b) in canonical_edges(
        g.edges().map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned())),
    ) {
        out.push_str(&format!("e {a} {b}\n"));
    }
    Ok(out)
}

pub fn graph_from_text(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines
        .next()
        .ok_or(FormatError::Text { line: 0, msg: "empty input".into() })?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("p") {
        return Err(FormatError::Text { line: ln + 1, msg: "expected 'p <n> <m>'".into() });
    }
    let parse = |tok: Option<&str>, ln: usize| -> Result<usize, FormatError> {
        tok.and_then(|t| t.parse().ok())
            .ok_or(FormatError::Text { line: ln + 1, msg: "bad header count".into() })
    };
    let n = parse(parts.next(), ln)?;
    let m = parse(parts.next(), ln)?;
    let mut g = Graph::new();
    let mut edges = 0usize;
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("e") {
            return Err(FormatError::Text { line: ln + 1, msg: "expected 'e <a> <b>'".into() });
        }
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(FormatError::Text { line: ln + 1, msg: "expected two labels".into() })
            }
        };
        g.add_edge(VertexId::new(a), VertexId::new(b))
            .map_err(|e| FormatError::Text { line: ln + 1, msg: e.to_string() })?;
        edges += 1;
    }
    if edges != m {
        return Err(FormatError::BadGraph(format!("header claims {m} edges, found {edges}")));
    }
    if g.vertex_count() != n {
        return Err(FormatError::BadGraph(format!(
            "header claims {n} vertices, edges mention {}; isolated vertices need the JSON format",
            g.vertex_count()
        )));
    }
    Ok(g)
}

/// Reads either format, sniffing JSON by its leading brace.
pub fn graph_from_str(s: &str) -> Result<Graph, FormatError> {
    if s.trim_start().starts_with('{') {
        graph_from_json(s)
    } else {
        graph_from_text(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SignedDoc {
    vertices: Vec<String>,
    pos: Vec<(String, String)>,
    neg: Vec<(String, String)>,
}

pub fn signed_to_json(sg: &SignedGraph) -> String {
    let doc = SignedDoc {
        vertices: sg.vertices().map(|v| v.as_str().to_owned()).collect(),
        pos: canonical_edges(
            sg.pos_edges().map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned())),
        ),
        neg: canonical_edges(
            sg.neg_edges().map(|e| (e.a().as_str().to_owned(), e.b().as_str().to_owned())),
        ),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn signed_from_json(s: &str) -> Result<SignedGraph, FormatError> {
    let doc: SignedDoc = serde_json::from_str(s)?;
    let mut sg = SignedGraph::new(doc.vertices.iter().map(|v| VertexId::new(v.clone())));
    if sg.vertex_count() != doc.vertices.len() {
        return Err(FormatError::BadGraph("duplicate vertex".into()));
    }
    for (edges, positive) in [(&doc.pos, true), (&doc.neg, false)] {
        for (a, b) in edges {
            let r = if positive {
                sg.add_pos_edge(VertexId::new(a.clone()), VertexId::new(b.clone()))
            } else {
                sg.add_neg_edge(VertexId::new(a.clone()), VertexId::new(b.clone()))
            };
            match r {
                Ok(true) => {}
                Ok(false) => {
                    return Err(FormatError::BadGraph(format!("duplicate edge ({a}, {b})")))
                }
                Err(e) => return Err(FormatError::BadGraph(e.to_string())),
            }
        }
    }
    Ok(sg)
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

pub fn group_to_json(g: &GroupTable) -> String {
    let doc = GroupDoc {
        elements: g.elements().to_vec(),
        table: g
            .table()
            .iter()
            .map(|row| row.iter().map(|&x| g.element(x).to_owned()).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn group_from_json(s: &str) -> Result<GroupTable, FormatError> {
    let doc: GroupDoc = serde_json::from_str(s)?;
    let index = |name: &str| -> Result<usize, FormatError> {
        doc.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| FormatError::BadGroup(format!("unknown element {name}")))
    };
    let table: Vec<Vec<usize>> = doc
        .table
        .iter()
        .map(|row| row.iter().map(|x| index(x)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    GroupTable::new(doc.elements, table).map_err(|e| FormatError::BadGroup(e.to_string()))
}

pub fn alignment_to_json(pi: &Alignment) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = pi
        .iter()
        .map(|(u, v)| (u.as_str().to_owned(), serde_json::Value::String(v.as_str().to_owned())))
        .collect();
    serde_json::Value::Object(map)
}

pub fn alignment_from_json(v: &serde_json::Value) -> Result<Alignment, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| FormatError::BadGraph("alignment must be an object".into()))?;
    let pairs: Vec<(String, String)> = obj
        .iter()
        .map(|(k, v)| {
            v.as_str()
                .map(|s| (k.clone(), s.to_owned()))
                .ok_or_else(|| FormatError::BadGraph("alignment values must be strings".into()))
        })
        .collect::<Result<_, _>>()?;
    Alignment::from_pairs(pairs).map_err(|e| FormatError::BadGraph(e.to_string()))
}

pub fn norm_to_json(v: &NormValue) -> serde_json::Value {
    serde_json::json!({ "lo": v.lo(), "hi": v.hi(), "exact": v.is_exact() })
}

/// Vertex sets as sorted label lists, used in gadget sidecar metadata.
pub fn labels_json<'a>(it: impl Iterator<Item = &'a VertexId>) -> serde_json::Value {
    let mut v: Vec<String> = it.map(|x| x.as_str().to_owned()).collect();
    v.sort();
    serde_json::json!(v)
}
