use crate::error::TopologyError;
use crate::graph::{scc_decompose, ComponentKind, Graph};
use crate::paths::LassoPath;

use super::{cycle_through, tail_vertex};

/// Closure data for one orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClosure {
    /// Canonical representative of the orbit itself.
    pub orbit: LassoPath,
    /// Representatives of every orbit meeting the closure, sorted; includes `orbit`.
    pub members: Vec<LassoPath>,
    pub is_closed: bool,
    /// Whether the orbit is open in its closure.
    pub is_locally_closed: bool,
}

/// The orbits in the closure of `Orb_x`.
///
/// An orbit `Orb_{d^∞}` lies in the closure exactly when every prefix of
/// `d^∞` continues into the tail of `x`, i.e. when the cycle `d` reaches that
/// tail. Terminus orbits are open points and never accrue.
pub fn orbit_closure(g: &Graph, x: &LassoPath) -> Result<OrbitClosure, TopologyError> {
    let scc = scc_decompose(g);
    if scc.has_branched() {
        return Err(TopologyError::BranchedComponent);
    }
    let reach = g.reachability();
    let orbit = x.orbit_representative();
    let tail = tail_vertex(g, x);
    let tail_comp = scc.component_of[tail];
    let mut others = Vec::new();
    for comp in &scc.components {
        let d0 = comp.vertices[0];
        if comp.kind != ComponentKind::SimpleCycle || scc.component_of[d0] == tail_comp || !reach[d0][tail] {
            continue;
        }
        let id = scc.component_of[d0];
        let d = cycle_through(g, d0, |w| scc.component_of[w] == id).expect("simple-cycle component");
        others.push((d0, LassoPath::periodic(g, &d)?.orbit_representative()));
    }
    // The cylinder of x cut one lap into its tail (or the whole finite path)
    // ends at the tail vertex; it meets another member orbit iff that vertex
    // reaches the member's cycle.
    let is_locally_closed = !others.iter().any(|&(d0, _)| reach[tail][d0]);
    let mut members: Vec<LassoPath> = others.into_iter().map(|(_, d)| d).collect();
    members.push(orbit.clone());
    members.sort();
    Ok(OrbitClosure { is_closed: members.len() == 1, orbit, members, is_locally_closed })
}
