//! Finite directed multigraphs and their structural analysis.
//!
//! Orientation: a path is `e1 e2 … en` with `src(e_i) == rng(e_{i+1})`. A path
//! is *continued* by appending an edge `e` with `rng(e)` equal to the current
//! source, so the continuation graph has an arc `rng(e) -> src(e)` for every
//! edge. A *terminus* is a vertex at which no path can be continued.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// One edge of a [`Graph`], with endpoints as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub rng: VertexId,
}

/// Wire form of a graph: `{"vertices": [...], "edges": [{"id", "src", "rng"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// A validated finite directed multigraph.
///
/// Vertices and edges are stored sorted by id, so comparing index sequences
/// is the same as comparing id sequences lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    /// `continuations[v]` lists edges `e` with `rng(e) == v`, ascending.
    continuations: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, src, rng)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateVertex(pair[0].clone()));
            }
        }
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();

        let mut raw: Vec<(String, String, String)> = edges.into_iter().collect();
        raw.sort();
        let mut edge_list = Vec::with_capacity(raw.len());
        let mut edge_index = HashMap::with_capacity(raw.len());
        for (name, src, rng) in raw {
            if edge_index.contains_key(&name) {
                return Err(GraphError::DuplicateEdge(name));
            }
            let s = *vertex_index
                .get(&src)
                .ok_or_else(|| GraphError::UnknownVertex { edge: name.clone(), vertex: src.clone() })?;
            let r = *vertex_index
                .get(&rng)
                .ok_or_else(|| GraphError::UnknownVertex { edge: name.clone(), vertex: rng.clone() })?;
            edge_index.insert(name.clone(), edge_list.len());
            edge_list.push(Edge { name, src: s, rng: r });
        }

        let mut continuations = vec![Vec::new(); vertices.len()];
        for (i, e) in edge_list.iter().enumerate() {
            continuations[e.rng].push(i);
        }

        Ok(Self { vertices, edges: edge_list, vertex_index, edge_index, continuations })
    }

    /// Convenience constructor from string slices.
    pub fn from_parts(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().map(|v| v.to_string()),
            edges.iter().map(|(id, s, r)| (id.to_string(), s.to_string(), r.to_string())),
        )
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
        Self::new(
            doc.vertices.iter().cloned(),
            doc.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.rng.clone())),
        )
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.name.clone(),
                    src: self.vertices[e.src].clone(),
                    rng: self.vertices[e.rng].clone(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::NoSuchVertex(name.to_string()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::NoSuchEdge(name.to_string()))
    }

    pub fn edges_by_name<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<EdgeId>, GraphError> {
        names.iter().map(|n| self.edge_by_name(n.as_ref())).collect()
    }

    /// Edges that continue a path currently sitting at `v`.
    pub fn continuations(&self, v: VertexId) -> &[EdgeId] {
        &self.continuations[v]
    }

    pub fn is_terminus(&self, v: VertexId) -> bool {
        self.continuations[v].is_empty()
    }

    pub fn termini(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.is_terminus(v)).collect()
    }

    /// Whether `path` is a composable edge sequence.
    pub fn is_composable(&self, path: &[EdgeId]) -> bool {
        path.iter().all(|&e| e < self.edges.len())
            && path.windows(2).all(|w| self.edges[w[0]].src == self.edges[w[1]].rng)
    }

    /// Vertices visited by a nonempty path, `rng(e1), src(e1), …, src(en)`.
    pub fn path_vertices(&self, path: &[EdgeId]) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(path.len() + 1);
        if let Some(&first) = path.first() {
            out.push(self.edges[first].rng);
        }
        out.extend(path.iter().map(|&e| self.edges[e].src));
        out
    }

    /// Continuation reachability: is there a path `μ` with `rng(μ) = a` and
    /// `src(μ) = b`?
    pub fn reaches(&self, a: VertexId, b: VertexId) -> bool {
        self.reachable_from(a)[b]
    }

    /// Name-based variant of [`Graph::reaches`].
    pub fn reaches_by_name(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.reaches(self.vertex(a)?, self.vertex(b)?))
    }

    /// Reachability vector from `a` in continuation orientation.
    pub fn reachable_from(&self, a: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.continuations[v] {
                let w = self.edges[e].src;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Full reachability matrix, `m[a][b] == reaches(a, b)`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        (0..self.vertex_count()).map(|a| self.reachable_from(a)).collect()
    }

    /// DOT rendering of the graph. Arrows are drawn from `rng` to `src`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("// Edges are drawn as arrows from rng(e) to src(e): following an arrow\n");
        out.push_str("// continues a path, and a path e1 e2 ... satisfies src(e_i) = rng(e_{i+1}).\n");
        out.push_str("digraph G {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", escape(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.vertices[e.rng]),
                escape(&self.vertices[e.src]),
                escape(&e.name)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Parses and validates a graph JSON document.
pub fn parse_graph(document: &str) -> Result<Graph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(document).map_err(|e| GraphError::Schema(e.to_string()))?;
    Graph::from_document(&doc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    /// No internal edge.
    Trivial,
    /// Strongly connected with as many internal edges as vertices.
    SimpleCycle,
    /// Strongly connected with more internal edges than vertices.
    Branched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Member vertices, ascending.
    pub vertices: Vec<VertexId>,
    /// Edges with both endpoints inside, ascending.
    pub internal_edges: Vec<EdgeId>,
    pub kind: ComponentKind,
}

/// Strongly connected components of the continuation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Components, ordered by their smallest vertex.
    pub components: Vec<Component>,
    /// `component_of[v]` indexes `components`.
    pub component_of: Vec<usize>,
    /// Condensation arcs `(from, to)` in continuation orientation, sorted.
    pub condensation: Vec<(usize, usize)>,
}

impl SccDecomposition {
    pub fn kind_of(&self, v: VertexId) -> ComponentKind {
        self.components[self.component_of[v]].kind
    }

    pub fn has_branched(&self) -> bool {
        self.components.iter().any(|c| c.kind == ComponentKind::Branched)
    }

    /// DOT rendering of the condensation with component kinds color-coded.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::new();
        out.push_str("// Condensation of the continuation graph; arrows point from rng to src.\n");
        out.push_str("// trivial = white, simple-cycle = lightblue, branched = salmon\n");
        out.push_str("digraph condensation {\n  node [style=filled];\n");
        for (i, c) in self.components.iter().enumerate() {
            let names: Vec<&str> = c.vertices.iter().map(|&v| g.vertex_name(v)).collect();
            let (kind, color) = match c.kind {
                ComponentKind::Trivial => ("trivial", "white"),
                ComponentKind::SimpleCycle => ("simple-cycle", "lightblue"),
                ComponentKind::Branched => ("branched", "salmon"),
            };
            let _ = writeln!(
                out,
                "  c{} [label=\"{{{}}}\\n{}\", fillcolor={}];",
                i,
                escape(&names.join(",")),
                kind,
                color
            );
        }
        for &(a, b) in &self.condensation {
            let _ = writeln!(out, "  c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Strongly connected components of the continuation graph.
pub fn scc_decompose(g: &Graph) -> SccDecomposition {
    let n = g.vertex_count();
    let succ: Vec<Vec<VertexId>> = (0..n)
        .map(|v| g.continuations(v).iter().map(|&e| g.edge(e).src).collect())
        .collect();
    let mut raw = tarjan(&succ);
    raw.sort_by_key(|c| c[0]);
    let mut component_of = vec![0usize; n];
    for (i, c) in raw.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }

    let mut internal: Vec<Vec<EdgeId>> = vec![Vec::new(); raw.len()];
    let mut arcs = BTreeSet::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (component_of[e.rng], component_of[e.src]);
        if a == b {
            internal[a].push(i);
        } else {
            arcs.insert((a, b));
        }
    }

    let components = raw
        .into_iter()
        .zip(internal)
        .map(|(vertices, internal_edges)| {
            let kind = if internal_edges.is_empty() {
                ComponentKind::Trivial
            } else if internal_edges.len() == vertices.len() {
                ComponentKind::SimpleCycle
            } else {
                ComponentKind::Branched
            };
            Component { vertices, internal_edges, kind }
        })
        .collect();

    SccDecomposition { components, component_of, condensation: arcs.into_iter().collect() }
}

/// Tarjan's algorithm (iterative) over an adjacency list. Each returned
/// component is sorted ascending; component order is unspecified.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0usize;
    let mut out: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph() -> Graph {
        Graph::from_parts(&["v"], &[("e", "v", "v")]).unwrap()
    }

    #[test]
    fn parses_smallest_cyclic_graph() {
        let g = parse_graph(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","rng":"v"}]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.continuations(0), &[0]);
    }

    #[test]
    fn rejects_dangling_endpoint() {
        let err = parse_graph(r#"{"vertices":["v"],"edges":[{"id":"e","src":"w","rng":"v"}]}"#)
            .unwrap_err();
        assert!(matches!(err, GraphError::UnknownVertex { .. }));
    }

    #[test]
    fn rejects_duplicates_and_bad_schema() {
        assert!(matches!(
            parse_graph(r#"{"vertices":["v","v"],"edges":[]}"#),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            parse_graph(
                r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","rng":"v"},{"id":"e","src":"v","rng":"v"}]}"#
            ),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert!(matches!(parse_graph(r#"{"vertices":"v"}"#), Err(GraphError::Schema(_))));
    }

    #[test]
    fn accepts_tree_fragment() {
        // root v with two children; edges point toward the root
        let doc = r#"{"vertices":["v","l","r"],"edges":[
            {"id":"a","src":"l","rng":"v"},{"id":"b","src":"r","rng":"v"}]}"#;
        let g = parse_graph(doc).unwrap();
        assert_eq!(g.termini().len(), 2);
        let v = g.vertex("v").unwrap();
        assert_eq!(g.continuations(v).len(), 2);
    }

    #[test]
    fn scc_kinds() {
        let d = scc_decompose(&loop_graph());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].kind, ComponentKind::SimpleCycle);

        let fig8 = Graph::from_parts(&["w"], &[("e", "w", "w"), ("f", "w", "w")]).unwrap();
        assert_eq!(scc_decompose(&fig8).components[0].kind, ComponentKind::Branched);

        let line =
            Graph::from_parts(&["a", "b", "c"], &[("x", "b", "a"), ("y", "c", "b")]).unwrap();
        let d = scc_decompose(&line);
        assert_eq!(d.components.len(), 3);
        assert!(d.components.iter().all(|c| c.kind == ComponentKind::Trivial));
        assert_eq!(d.condensation, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn reaches_follows_continuation() {
        // loop at v, plus x with rng(x) = v and src(x) = w
        let g = Graph::from_parts(&["v", "w"], &[("c", "v", "v"), ("x", "w", "v")]).unwrap();
        assert!(g.reaches_by_name("v", "v").unwrap());
        assert!(g.reaches_by_name("v", "w").unwrap());
        assert!(!g.reaches_by_name("w", "v").unwrap());
        assert!(g.reaches_by_name("v", "q").is_err());
    }

    #[test]
    fn dot_header_documents_orientation() {
        let g = Graph::from_parts(&["v", "w"], &[("x", "w", "v")]).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("// Edges are drawn as arrows from rng(e) to src(e)"));
        assert!(dot.contains("\"v\" -> \"w\" [label=\"x\"]"));
    }
}
