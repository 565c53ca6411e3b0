//! JSON and text renderings of verdicts and witnesses. Paths are written with
//! edge and vertex names so reports read without the graph at hand.

use serde_json::{json, Value};

use crate::classify::{ProductVerdict, Verdict, C_STAR_REMARK, ISOTROPY_NOTE};
use crate::graph::{EdgeId, Graph};
use crate::paths::{orbit_intersection_size, LassoPath, Pump};
use crate::topology::{OrbitClosure, TopologyVerdict, Witness};

fn names(g: &Graph, p: &[EdgeId]) -> Vec<String> {
    p.iter().map(|&e| g.edge_name(e).to_string()).collect()
}

fn word(g: &Graph, p: &[EdgeId]) -> String {
    if p.is_empty() {
        "ε".to_string()
    } else {
        names(g, p).join("·")
    }
}

pub fn lasso_json(g: &Graph, x: &LassoPath) -> Value {
    json!({ "path": x.to_document(g), "display": x.display(g) })
}

fn pump_json(g: &Graph, p: &Pump) -> Value {
    json!({ "lead": names(g, &p.lead), "cycle": names(g, &p.cycle), "finish": names(g, &p.finish) })
}

pub fn witness_json(g: &Graph, w: &Witness) -> Value {
    match w {
        Witness::Orbit { x, v, pump } => json!({
            "kind": "orbit",
            "x": lasso_json(g, x),
            "v": g.vertex_name(*v),
            "cardinality": orbit_intersection_size(g, x, *v).cardinality,
            "pump": pump.as_ref().map(|p| pump_json(g, p)),
        }),
        Witness::CyclePair { first, second } => json!({
            "kind": "cycle_pair",
            "first": names(g, first),
            "second": names(g, second),
        }),
        Witness::NotIsolated { x, intruder } => json!({
            "kind": "not_isolated",
            "x": lasso_json(g, x),
            "intruder": lasso_json(g, intruder),
        }),
    }
}

/// One-line human-readable witness.
pub fn witness_text(g: &Graph, w: &Witness) -> String {
    match w {
        Witness::Orbit { x, v, pump } => {
            let card = orbit_intersection_size(g, x, *v).cardinality;
            let mut s = format!("x = {}, v = {}, |Z(v)∩Orb_x| = {}", x.display(g), g.vertex_name(*v), card);
            if let Some(p) = pump {
                s.push_str(&format!(" via pump {}", word(g, &p.cycle)));
            }
            s
        }
        Witness::CyclePair { first, second } => {
            format!("cycles {} and {} share a vertex", word(g, first), word(g, second))
        }
        Witness::NotIsolated { x, intruder } => {
            format!("x = {} is not isolated in its orbit: {} enters every cylinder searched", x.display(g), intruder.display(g))
        }
    }
}

pub fn topology_json(g: &Graph, v: &TopologyVerdict) -> Value {
    json!({
        "condition": v.condition,
        "holds": v.holds,
        "method": v.method,
        "witness": v.witness.as_ref().map(|w| witness_json(g, w)),
        "oracle": v.oracle,
    })
}

pub fn topology_text(g: &Graph, v: &TopologyVerdict) -> String {
    let mut s = format!("condition {:?} ({:?}): {}", v.condition, v.method, if v.holds { "holds" } else { "fails" });
    if let Some(o) = v.oracle {
        s.push_str(&format!(" [depth {}, {}]", o.depth, if o.conclusive { "conclusive" } else { "inconclusive" }));
    }
    if let Some(w) = &v.witness {
        s.push_str(&format!("\n  witness: {}", witness_text(g, w)));
    }
    s
}

pub fn verdict_json(g: &Graph, v: &Verdict) -> Value {
    json!({
        "level": v.level,
        "established": v.established,
        "field": v.field,
        "conditions": { "M": topology_json(g, &v.m), "N": topology_json(g, &v.n) },
        "isotropy": ISOTROPY_NOTE,
        "caveats": v.caveats,
        "remark": C_STAR_REMARK,
    })
}

pub fn verdict_text(g: &Graph, v: &Verdict) -> String {
    let mut s = format!("level: {}\n{}\n{}", v.level, topology_text(g, &v.m), topology_text(g, &v.n));
    for c in &v.caveats {
        s.push_str(&format!("\ncaveat: {c}"));
    }
    s
}

pub fn product_json(graphs: &[Graph], v: &ProductVerdict) -> Value {
    json!({
        "level": v.level,
        "established": v.established,
        "factors": graphs.iter().zip(&v.factors).map(|(g, f)| verdict_json(g, f)).collect::<Vec<_>>(),
        "caveats": v.caveats,
    })
}

pub fn closure_json(g: &Graph, c: &OrbitClosure) -> Value {
    json!({
        "orbit": lasso_json(g, &c.orbit),
        "closure": c.members.iter().map(|m| lasso_json(g, m)).collect::<Vec<_>>(),
        "closed": c.is_closed,
        "locally_closed": c.is_locally_closed,
    })
}
