//! Exhaustive enumeration of small directed multigraphs up to isomorphism.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Every multigraph with at most `max_vertices` vertices and `max_edges`
/// edges, one per isomorphism class, including the empty graph.
///
/// Vertices are named `v0, v1, …` and edges `e0, e1, …`, numbered along the
/// canonical edge list so that the output is deterministic.
pub fn small_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
        let perms = permutations(n);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        for m in 0..=max_edges {
            if n == 0 && m > 0 {
                break;
            }
            for combo in multisets(pairs.len(), m) {
                let edges: Vec<(usize, usize)> = combo.iter().map(|&i| pairs[i]).collect();
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> = edges.iter().map(|&(s, r)| (p[s], p[r])).collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .expect("at least the identity permutation");
                if seen.insert(canon.clone()) {
                    out.push(build(n, &canon));
                }
            }
        }
    }
    out
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, r))| (format!("e{i}"), vertices[s].clone(), vertices[r].clone()));
    Graph::new(vertices.clone(), edges).expect("well-formed by construction")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Non-decreasing index sequences of length `m` over `0..k`.
fn multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, 0, &mut Vec::new(), &mut out);
    out
}
