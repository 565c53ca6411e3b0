//! Deciders for the orbit-space separation conditions of a finite graph.
//!
//! * Condition **N** (orbit space T0): every strongly connected component of
//!   the continuation graph is trivial or a simple cycle.
//! * Condition **M** (orbit space T1): N holds and no simple-cycle component
//!   has an edge leaving it.
//!
//! Each condition is decided three ways: structurally from the SCC
//! decomposition, through connector automata, and by the brute-force
//! [`oracle_condition`].

mod closure;
mod oracle;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{scc_decompose, ComponentKind, EdgeId, Graph, SccDecomposition, VertexId};
use crate::paths::{
    connector_automaton, min_rotation, orbit_intersection_size, Cardinality, LassoPath, Pump,
};

pub use closure::{orbit_closure, OrbitClosure};
pub use oracle::{oracle_condition, DEFAULT_ORACLE_DEPTH, RELEASE_ORACLE_DEPTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    M,
    N,
}

impl std::str::FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "M" | "m" => Ok(Condition::M),
            "N" | "n" => Ok(Condition::N),
            other => Err(format!("unknown condition {other:?} (expected M or N)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Structural,
    Automaton,
    Oracle,
}

/// Evidence attached to a failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `Z(v) ∩ Orb_x` is infinite; `pump` generates infinitely many elements.
    Orbit { x: LassoPath, v: VertexId, pump: Option<Pump> },
    /// Two distinct simple cycles through a common vertex.
    CyclePair { first: Vec<EdgeId>, second: Vec<EdgeId> },
    /// The oracle found no isolating cylinder for `x` up to its depth.
    NotIsolated { x: LassoPath, intruder: LassoPath },
}

/// Oracle bookkeeping: the depth used and whether the answer is a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub depth: usize,
    pub conclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyVerdict {
    pub condition: Condition,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: Method,
    /// Present for oracle verdicts only.
    pub oracle: Option<OracleInfo>,
}

impl TopologyVerdict {
    pub(crate) fn decided(condition: Condition, method: Method, witness: Option<Witness>) -> Self {
        Self { condition, holds: witness.is_none(), witness, method, oracle: None }
    }

    /// Whether an oracle verdict is conclusive; always true for the exact deciders.
    pub fn is_conclusive(&self) -> bool {
        self.oracle.is_none_or(|o| o.conclusive)
    }
}

/// Vertex-simple closed paths, each in least rotation, sorted; at most
/// `limit` are produced.
pub fn simple_cycles(g: &Graph, limit: usize) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for s in 0..n {
        // DFS over paths from s through vertices > s.
        let mut on_path = vec![false; n];
        let mut path: Vec<EdgeId> = Vec::new();
        let mut stack: Vec<(VertexId, usize)> = vec![(s, 0)];
        on_path[s] = true;
        while let Some(&mut (at, ref mut pos)) = stack.last_mut() {
            let conts = g.continuations(at);
            if *pos >= conts.len() {
                stack.pop();
                on_path[at] = false;
                path.pop();
                continue;
            }
            let e = conts[*pos];
            *pos += 1;
            let w = g.edge(e).src;
            if w == s {
                let mut c = path.clone();
                c.push(e);
                out.push(min_rotation(&c));
                if out.len() >= limit {
                    out.sort();
                    return out;
                }
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                path.push(e);
                stack.push((w, 0));
            }
        }
    }
    out.sort();
    out
}

const CYCLE_LIMIT: usize = 100_000;

/// The least pair of distinct simple cycles sharing a vertex inside one
/// branched component, if any.
pub(crate) fn cycle_pair_witness(g: &Graph, scc: &SccDecomposition) -> Option<Witness> {
    if !scc.has_branched() {
        return None;
    }
    let cycles = simple_cycles(g, CYCLE_LIMIT);
    let verts: Vec<Vec<VertexId>> = cycles.iter().map(|c| g.path_vertices(c)).collect();
    for i in 0..cycles.len() {
        if scc.kind_of(verts[i][0]) != ComponentKind::Branched {
            continue;
        }
        for j in i + 1..cycles.len() {
            if verts[i].iter().any(|v| verts[j].contains(v)) {
                return Some(Witness::CyclePair { first: cycles[i].clone(), second: cycles[j].clone() });
            }
        }
    }
    None
}

/// Orbit representatives when condition N holds: `c^∞` for the cycle of each
/// simple-cycle component and the bare path at each terminus, sorted.
pub fn orbit_representatives(g: &Graph, scc: &SccDecomposition) -> Vec<LassoPath> {
    let mut reps: Vec<LassoPath> = Vec::new();
    for comp in &scc.components {
        if comp.kind == ComponentKind::SimpleCycle {
            let c = cycle_through(g, comp.vertices[0], |w| scc.component_of[w] == scc.component_of[comp.vertices[0]])
                .expect("simple-cycle component has a cycle");
            reps.push(LassoPath::periodic(g, &c).expect("cycle is closed").orbit_representative());
        }
    }
    for t in g.termini() {
        reps.push(LassoPath::vertex(g, t).expect("terminus"));
    }
    reps.sort();
    reps
}

/// Shortest (then least) closed path from `u` back to `u` through vertices
/// accepted by `inside`.
pub(crate) fn cycle_through(g: &Graph, u: VertexId, inside: impl Fn(VertexId) -> bool) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([u]);
    seen[u] = true;
    while let Some(a) = queue.pop_front() {
        for &e in g.continuations(a) {
            let w = g.edge(e).src;
            if !inside(w) {
                continue;
            }
            if w == u {
                let mut c = vec![e];
                let mut cur = a;
                while cur != u {
                    let (p, pe) = parent[cur].expect("parent");
                    c.push(pe);
                    cur = p;
                }
                c.reverse();
                return Some(c);
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((a, e));
                queue.push_back(w);
            }
        }
    }
    None
}

fn tail_vertex(g: &Graph, x: &LassoPath) -> VertexId {
    match x.cycle() {
        Some(c) => g.edge(c[0]).rng,
        None => x.terminus().expect("terminus path"),
    }
}

fn orbit_witness_for_cycle(g: &Graph, cycle: &[EdgeId]) -> Witness {
    let x = LassoPath::periodic(g, cycle).expect("cycle is closed");
    let v = x.range(g);
    let pump = orbit_intersection_size(g, &x, v).pump;
    Witness::Orbit { x, v, pump }
}

/// Structural decision of condition N.
pub fn check_condition_n(g: &Graph) -> TopologyVerdict {
    let scc = scc_decompose(g);
    let witness = if scc.has_branched() { cycle_pair_witness(g, &scc) } else { None };
    TopologyVerdict::decided(Condition::N, Method::Structural, witness)
}

/// Structural decision of condition M.
pub fn check_condition_m(g: &Graph) -> TopologyVerdict {
    let scc = scc_decompose(g);
    if scc.has_branched() {
        let first = match cycle_pair_witness(g, &scc) {
            Some(Witness::CyclePair { first, .. }) => first,
            _ => unreachable!("branched component always has a cycle pair"),
        };
        return TopologyVerdict::decided(Condition::M, Method::Structural, Some(orbit_witness_for_cycle(g, &first)));
    }
    let reach = g.reachability();
    let reps = orbit_representatives(g, &scc);
    let cyclic: Vec<&crate::graph::Component> =
        scc.components.iter().filter(|c| c.kind == ComponentKind::SimpleCycle).collect();
    for x in &reps {
        let tail = tail_vertex(g, x);
        let tail_comp = scc.component_of[tail];
        for v in 0..g.vertex_count() {
            let pumped = cyclic.iter().any(|k| {
                let k0 = k.vertices[0];
                scc.component_of[k0] != tail_comp && reach[v][k0] && reach[k0][tail]
            });
            if pumped {
                let pump = orbit_intersection_size(g, x, v).pump;
                return TopologyVerdict::decided(
                    Condition::M,
                    Method::Structural,
                    Some(Witness::Orbit { x: x.clone(), v, pump }),
                );
            }
        }
    }
    TopologyVerdict::decided(Condition::M, Method::Structural, None)
}

/// Whether `c^∞` fails to be isolated in its orbit: some orbit element other
/// than `c^∞` begins with a full lap of `c`.
fn lap_is_not_isolating(g: &Graph, cycle: &[EdgeId]) -> bool {
    let x = LassoPath::periodic(g, cycle).expect("cycle is closed");
    let aut = connector_automaton(g, &x, x.range(g));
    // The cycle is vertex-simple, so any other orbit element in the cylinder
    // of k laps has a connector that starts with those laps, and every lap
    // leaves the automaton in the same fully matched state.
    aut.accepts_extension_of(x.cycle().expect("periodic"))
}

/// Condition N decided through connector automata.
pub fn check_condition_n_automaton(g: &Graph) -> TopologyVerdict {
    let scc = scc_decompose(g);
    for comp in &scc.components {
        if comp.kind == ComponentKind::Trivial {
            continue;
        }
        let id = scc.component_of[comp.vertices[0]];
        for &u in &comp.vertices {
            let c = cycle_through(g, u, |w| scc.component_of[w] == id).expect("nontrivial component");
            if lap_is_not_isolating(g, &c) {
                let witness = cycle_pair_witness(g, &scc).unwrap_or_else(|| orbit_witness_for_cycle(g, &c));
                return TopologyVerdict::decided(Condition::N, Method::Automaton, Some(witness));
            }
        }
    }
    TopologyVerdict::decided(Condition::N, Method::Automaton, None)
}

/// Condition M decided through connector automata: quantifies over cycle and
/// terminus orbits and all vertices once N is known to hold.
pub fn check_condition_m_automaton(g: &Graph) -> TopologyVerdict {
    let n = check_condition_n_automaton(g);
    if let Some(w) = n.witness {
        let witness = match w {
            Witness::CyclePair { first, .. } => orbit_witness_for_cycle(g, &first),
            other => other,
        };
        return TopologyVerdict::decided(Condition::M, Method::Automaton, Some(witness));
    }
    let scc = scc_decompose(g);
    for x in orbit_representatives(g, &scc) {
        for v in 0..g.vertex_count() {
            let count = orbit_intersection_size(g, &x, v);
            if count.cardinality == Cardinality::Infinite {
                return TopologyVerdict::decided(
                    Condition::M,
                    Method::Automaton,
                    Some(Witness::Orbit { x, v, pump: count.pump }),
                );
            }
        }
    }
    TopologyVerdict::decided(Condition::M, Method::Automaton, None)
}

/// Re-checks a failure witness independently of the decider that produced it.
pub fn verify_witness(g: &Graph, condition: Condition, witness: &Witness) -> bool {
    match witness {
        Witness::Orbit { x, v, .. } => orbit_intersection_size(g, x, *v).cardinality == Cardinality::Infinite,
        Witness::CyclePair { first, second } => {
            let closed = |c: &[EdgeId]| {
                LassoPath::periodic(g, c).is_ok() && {
                    let vs = g.path_vertices(c);
                    let mut inner = vs[..vs.len() - 1].to_vec();
                    inner.sort_unstable();
                    inner.windows(2).all(|w| w[0] != w[1])
                }
            };
            let scc = scc_decompose(g);
            let (vf, vs) = (g.path_vertices(first), g.path_vertices(second));
            condition == Condition::N
                && closed(first)
                && closed(second)
                && !crate::paths::is_rotation(first, second)
                && vf.iter().any(|v| vs.contains(v))
                && scc.component_of[vf[0]] == scc.component_of[vs[0]]
        }
        Witness::NotIsolated { x, intruder } => {
            x != intruder && crate::paths::tail_equivalent(x, intruder)
        }
    }
}
