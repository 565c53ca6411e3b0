use crate::graph::{EdgeId, Graph, VertexId};

/// A composable edge sequence that is a prefix of some boundary path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPrefix {
    pub root: VertexId,
    pub edges: Vec<EdgeId>,
    /// The sequence is itself a boundary path (it ends at a terminus).
    pub complete: bool,
}

/// Every boundary-path prefix of length at most `depth` rooted at `root`, in
/// shortlex order.
pub fn enumerate_boundary_prefixes_from(g: &Graph, root: VertexId, depth: usize) -> Vec<BoundaryPrefix> {
    let mut out = Vec::new();
    let mut layer: Vec<(VertexId, Vec<EdgeId>)> = vec![(root, Vec::new())];
    for len in 0..=depth {
        let mut next = Vec::new();
        for (at, edges) in layer {
            out.push(BoundaryPrefix { root, edges: edges.clone(), complete: g.is_terminus(at) });
            if len < depth {
                for &e in g.continuations(at) {
                    let mut longer = edges.clone();
                    longer.push(e);
                    next.push((g.edge(e).src, longer));
                }
            }
        }
        layer = next;
    }
    out
}

/// Boundary-path prefixes of length at most `depth` from every vertex.
///
/// In a finite graph every vertex either continues or is a terminus, so every
/// composable sequence extends to a boundary path.
pub fn enumerate_boundary_prefixes(g: &Graph, depth: usize) -> Vec<BoundaryPrefix> {
    (0..g.vertex_count())
        .flat_map(|v| enumerate_boundary_prefixes_from(g, v, depth))
        .collect()
}
