//! Brute-force semi-decision of conditions M and N by bounded path search.
//!
//! Orbit representatives are primitive closed paths of length at most `L`
//! (one per rotation class) and termini; every boundary path that is a lasso
//! shares its orbit with one of these. For M the oracle looks for a pumped
//! family: a connector `α·β·γ` with `β` closed such that deleting `β` changes
//! the orbit element, which forces infinitely many distinct elements. For N it
//! looks for a cylinder around `x` that contains no other element of `Orb_x`.

use std::collections::VecDeque;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::paths::{min_rotation, normalize_unchecked, primitive_root, LassoPath};

use super::{Condition, Method, OracleInfo, TopologyVerdict, Witness};

pub const DEFAULT_ORACLE_DEPTH: usize = 6;
pub const RELEASE_ORACLE_DEPTH: usize = 8;

/// Runs the bounded search for `condition` with depth `depth` (at least 1).
///
/// Failures are always proofs. A "holds" answer is conclusive once the depth
/// covers every simple cycle and connectors of length `2·depth` cover
/// `3·|V| + 1`; otherwise it is reported as tentative.
pub fn oracle_condition(g: &Graph, condition: Condition, depth: usize) -> TopologyVerdict {
    let depth = depth.max(1);
    let n = g.vertex_count();
    let witness = match condition {
        Condition::M => search_m(g, depth),
        Condition::N => search_n(g, depth),
    };
    let conclusive = witness.is_some() || (depth >= n && 2 * depth > 3 * n);
    TopologyVerdict {
        condition,
        holds: witness.is_none(),
        witness,
        method: Method::Oracle,
        oracle: Some(OracleInfo { depth, conclusive }),
    }
}

/// Primitive closed paths of length ≤ `depth` in least rotation, then the
/// bare termini; sorted.
fn representatives(g: &Graph, depth: usize) -> Vec<LassoPath> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for v in 0..g.vertex_count() {
        closed_from(g, v, v, depth, &mut path, &mut out);
    }
    out.sort();
    out.dedup();
    let mut reps: Vec<LassoPath> = out
        .into_iter()
        .map(|c| LassoPath::periodic(g, &c).expect("closed path"))
        .collect();
    reps.extend(g.termini().into_iter().map(|t| LassoPath::vertex(g, t).expect("terminus")));
    reps.sort();
    reps
}

fn closed_from(g: &Graph, start: VertexId, at: VertexId, left: usize, path: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
    if left == 0 {
        return;
    }
    for &e in g.continuations(at) {
        path.push(e);
        let w = g.edge(e).src;
        if w == start && primitive_root(path).len() == path.len() && min_rotation(path) == *path {
            out.push(path.clone());
        }
        closed_from(g, start, w, left - 1, path, out);
        path.pop();
    }
}

/// Vertices from which some vertex in `targets` can be visited.
fn co_reach(g: &Graph, targets: &[VertexId]) -> Vec<bool> {
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        pred[e.src].push(e.rng);
    }
    let mut mark = vec![false; g.vertex_count()];
    let mut queue: VecDeque<VertexId> = targets.iter().copied().collect();
    for &t in targets {
        mark[t] = true;
    }
    while let Some(b) = queue.pop_front() {
        for &a in &pred[b] {
            if !mark[a] {
                mark[a] = true;
                queue.push_back(a);
            }
        }
    }
    mark
}

/// Vertices where `x`'s tail can be joined.
fn tail_vertices(g: &Graph, x: &LassoPath) -> Vec<VertexId> {
    match (x.cycle(), x.terminus()) {
        (Some(c), _) => g.path_vertices(c),
        (None, Some(t)) => vec![t],
        _ => unreachable!("lasso has a cycle or a terminus"),
    }
}

/// Every orbit element `μ·R^∞` (or finite `μ` into the terminus) whose
/// connector is exactly `mu`, for `mu` ending at `end`.
fn completions(g: &Graph, x: &LassoPath, mu: &[EdgeId], end: VertexId) -> Vec<(usize, LassoPath)> {
    match (x.cycle(), x.terminus()) {
        (Some(c), _) => (0..c.len())
            .filter(|&i| g.edge(c[i]).rng == end)
            .map(|i| {
                let mut r = c.to_vec();
                r.rotate_left(i);
                (i, normalize_unchecked(mu, &r))
            })
            .collect(),
        (None, Some(t)) if end == t => {
            let y = if mu.is_empty() {
                LassoPath::vertex(g, t).expect("terminus")
            } else {
                crate::paths::lasso_normalize(g, mu, None).expect("path into terminus")
            };
            vec![(0, y)]
        }
        _ => Vec::new(),
    }
}

/// Shortlex search over paths from `from` of length ≤ `max_len` through
/// `allowed` vertices; stops when `visit` returns `Some`.
fn search<T>(
    g: &Graph,
    from: VertexId,
    max_len: usize,
    allowed: &[bool],
    mut visit: impl FnMut(&[EdgeId], VertexId) -> Option<T>,
) -> Option<T> {
    if !allowed[from] {
        return None;
    }
    let mut layer: Vec<(Vec<EdgeId>, VertexId)> = vec![(Vec::new(), from)];
    for len in 0..=max_len {
        for (p, end) in &layer {
            if let Some(found) = visit(p, *end) {
                return Some(found);
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (p, end) in &layer {
            for &e in g.continuations(*end) {
                let w = g.edge(e).src;
                if allowed[w] {
                    let mut q = p.clone();
                    q.push(e);
                    next.push((q, w));
                }
            }
        }
        layer = next;
    }
    None
}

fn search_m(g: &Graph, depth: usize) -> Option<Witness> {
    for x in representatives(g, depth) {
        let allowed = co_reach(g, &tail_vertices(g, &x));
        for v in 0..g.vertex_count() {
            let pumped = search(g, v, 2 * depth, &allowed, |mu, end| {
                let ys = completions(g, &x, mu, end);
                if ys.is_empty() {
                    return None;
                }
                let verts = g.path_vertices(mu);
                for i in 0..mu.len() {
                    for j in i + 1..=mu.len() {
                        if verts[i] != verts[j] {
                            continue;
                        }
                        let mut shorter = mu[..i].to_vec();
                        shorter.extend_from_slice(&mu[j..]);
                        let changed = completions(g, &x, &shorter, end)
                            .into_iter()
                            .zip(&ys)
                            .any(|((_, a), (_, b))| a != *b);
                        if changed {
                            return Some(());
                        }
                    }
                }
                None
            });
            if pumped.is_some() {
                return Some(Witness::Orbit { x, v, pump: None });
            }
        }
    }
    None
}

fn search_n(g: &Graph, depth: usize) -> Option<Witness> {
    for x in representatives(g, depth) {
        if x.is_finite() {
            // A bare terminus is the only element of its own cylinder.
            continue;
        }
        let allowed = co_reach(g, &tail_vertices(g, &x));
        let mut intruder = None;
        for n in 0..=depth {
            let mu = x.expand(n);
            let start = match mu.last() {
                Some(&e) => g.edge(e).src,
                None => x.range(g),
            };
            let found = search(g, start, 2 * depth, &allowed, |zeta, end| {
                let mut full = mu.clone();
                full.extend_from_slice(zeta);
                completions(g, &x, &full, end).into_iter().map(|(_, y)| y).find(|y| *y != x)
            });
            match found {
                Some(y) => intruder = Some(y),
                None => {
                    intruder = None;
                    break;
                }
            }
        }
        if let Some(intruder) = intruder {
            return Some(Witness::NotIsolated { x, intruder });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_eight_fails_n_at_depth_4() {
        let g = fixtures::figure_eight();
        let v = oracle_condition(&g, Condition::N, 4);
        assert!(!v.holds);
        assert!(v.is_conclusive());
        let v = oracle_condition(&g, Condition::M, 4);
        assert!(!v.holds);
    }

    #[test]
    fn loop_with_entrance_holds_m_at_depth_6() {
        let g = fixtures::loop_with_entrance();
        let v = oracle_condition(&g, Condition::M, 6);
        assert!(v.holds && v.is_conclusive());
        assert!(oracle_condition(&g, Condition::N, 6).holds);
    }

    #[test]
    fn acyclic_graphs_hold_at_any_depth() {
        let g = fixtures::line(3);
        for depth in 1..=6 {
            assert!(oracle_condition(&g, Condition::M, depth).holds);
        }
        assert!(!oracle_condition(&g, Condition::M, 1).is_conclusive());
    }

    #[test]
    fn toeplitz_graph_pumps_into_the_terminus() {
        let g = fixtures::loop_with_exit();
        let m = oracle_condition(&g, Condition::M, 6);
        let Some(Witness::Orbit { x, v, .. }) = m.witness else { panic!("{m:?}") };
        assert_eq!(x, LassoPath::vertex(&g, g.vertex("t").unwrap()).unwrap());
        assert_eq!(v, g.vertex("w").unwrap());
        assert!(oracle_condition(&g, Condition::N, 6).holds);
    }
}
