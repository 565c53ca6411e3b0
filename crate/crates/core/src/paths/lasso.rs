use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::PathError;
use crate::graph::{EdgeId, Graph, VertexId};

/// What follows the prefix of a boundary path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// Repeats forever. Always a primitive closed path.
    Cycle(Vec<EdgeId>),
    /// The path stops at this terminus.
    Terminus(VertexId),
}

/// Canonical form of an eventually periodic or terminus-bound boundary path.
///
/// Two values are equal exactly when they describe the same boundary path:
/// the cycle is primitive and the prefix never ends with the cycle's last edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoPath {
    prefix: Vec<EdgeId>,
    tail: Tail,
}

/// Wire form: `{"prefix": [...], "cycle": [...] | null, "terminus": id | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoDocument {
    pub prefix: Vec<String>,
    pub cycle: Option<Vec<String>>,
    pub terminus: Option<String>,
}

/// Smallest `d` such that `cycle` is `cycle[..d]` repeated.
pub fn primitive_root(cycle: &[EdgeId]) -> &[EdgeId] {
    let n = cycle.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| cycle[i] == cycle[i - d]) {
            return &cycle[..d];
        }
    }
    cycle
}

/// Whether `a` and `b` are cyclic rotations of one another.
pub fn is_rotation(a: &[EdgeId], b: &[EdgeId]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter())))
}

/// Lexicographically least rotation.
pub fn min_rotation(cycle: &[EdgeId]) -> Vec<EdgeId> {
    let mut best = cycle.to_vec();
    let mut rot = cycle.to_vec();
    for _ in 1..cycle.len() {
        rot.rotate_left(1);
        if rot < best {
            best.clone_from(&rot);
        }
    }
    best
}

fn is_closed(g: &Graph, cycle: &[EdgeId]) -> bool {
    match (cycle.first(), cycle.last()) {
        (Some(&first), Some(&last)) => g.is_composable(cycle) && g.edge(last).src == g.edge(first).rng,
        _ => false,
    }
}

/// Canonical form of `prefix · cycle^∞`, or of the finite path `prefix` when
/// `cycle` is `None` (which must then end at a terminus).
pub fn lasso_normalize(
    g: &Graph,
    prefix: &[EdgeId],
    cycle: Option<&[EdgeId]>,
) -> Result<LassoPath, PathError> {
    if !g.is_composable(prefix) {
        return Err(PathError::NotComposable);
    }
    match cycle {
        Some(cycle) => {
            if !is_closed(g, cycle) {
                return Err(PathError::NotClosed);
            }
            if let Some(&last) = prefix.last() {
                if g.edge(last).src != g.edge(cycle[0]).rng {
                    return Err(PathError::Detached);
                }
            }
            Ok(normalize_unchecked(prefix, cycle))
        }
        None => {
            let &last = prefix.last().ok_or(PathError::MissingTerminus)?;
            let t = g.edge(last).src;
            if !g.is_terminus(t) {
                return Err(PathError::NotBoundary);
            }
            Ok(LassoPath { prefix: prefix.to_vec(), tail: Tail::Terminus(t) })
        }
    }
}

/// Normalization without composability checks; callers guarantee the input
/// is a valid lasso.
pub(crate) fn normalize_unchecked(prefix: &[EdgeId], cycle: &[EdgeId]) -> LassoPath {
    let mut cycle = primitive_root(cycle).to_vec();
    let mut keep = prefix.len();
    while keep > 0 && prefix[keep - 1] == *cycle.last().expect("nonempty cycle") {
        keep -= 1;
        cycle.rotate_right(1);
    }
    LassoPath { prefix: prefix[..keep].to_vec(), tail: Tail::Cycle(cycle) }
}

impl LassoPath {
    /// The length-zero boundary path sitting at terminus `t`.
    pub fn vertex(g: &Graph, t: VertexId) -> Result<Self, PathError> {
        if !g.is_terminus(t) {
            return Err(PathError::NotBoundary);
        }
        Ok(Self { prefix: Vec::new(), tail: Tail::Terminus(t) })
    }

    /// `cycle^∞` in canonical form.
    pub fn periodic(g: &Graph, cycle: &[EdgeId]) -> Result<Self, PathError> {
        lasso_normalize(g, &[], Some(cycle))
    }

    pub fn prefix(&self) -> &[EdgeId] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn cycle(&self) -> Option<&[EdgeId]> {
        match &self.tail {
            Tail::Cycle(c) => Some(c),
            Tail::Terminus(_) => None,
        }
    }

    pub fn terminus(&self) -> Option<VertexId> {
        match self.tail {
            Tail::Terminus(t) => Some(t),
            Tail::Cycle(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.tail, Tail::Terminus(_))
    }

    /// Number of edges of a finite path.
    pub fn finite_len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// `rng` of the path: the vertex it starts from.
    pub fn range(&self, g: &Graph) -> VertexId {
        match (self.prefix.first(), &self.tail) {
            (Some(&e), _) => g.edge(e).rng,
            (None, Tail::Cycle(c)) => g.edge(c[0]).rng,
            (None, Tail::Terminus(t)) => *t,
        }
    }

    /// The first `n` edges (all of them for a shorter finite path).
    pub fn expand(&self, n: usize) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.prefix.iter().take(n).copied().collect();
        if let Tail::Cycle(c) = &self.tail {
            out.extend(c.iter().cycle().take(n.saturating_sub(self.prefix.len())));
        }
        out
    }

    /// The edge at position `i`, if any.
    pub fn edge_at(&self, i: usize) -> Option<EdgeId> {
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        match &self.tail {
            Tail::Cycle(c) => Some(c[(i - self.prefix.len()) % c.len()]),
            Tail::Terminus(_) => None,
        }
    }

    /// Whether the path begins with `nu`.
    pub fn starts_with(&self, nu: &[EdgeId]) -> bool {
        nu.iter().enumerate().all(|(i, &e)| self.edge_at(i) == Some(e))
    }

    /// `μ · self`, normalized. Requires `src(μ) == rng(self)`.
    pub fn prepend(&self, g: &Graph, mu: &[EdgeId]) -> Result<Self, PathError> {
        if mu.is_empty() {
            return Ok(self.clone());
        }
        if !g.is_composable(mu) || g.edge(*mu.last().unwrap()).src != self.range(g) {
            return Err(PathError::NotComposable);
        }
        let mut prefix = mu.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Ok(match &self.tail {
            Tail::Cycle(c) => normalize_unchecked(&prefix, c),
            Tail::Terminus(t) => Self { prefix, tail: Tail::Terminus(*t) },
        })
    }

    /// One canonical representative of the orbit (tail-equivalence class):
    /// the least rotation of the cycle with empty prefix, or the bare terminus.
    pub fn orbit_representative(&self) -> Self {
        match &self.tail {
            Tail::Cycle(c) => Self { prefix: Vec::new(), tail: Tail::Cycle(min_rotation(c)) },
            Tail::Terminus(t) => Self { prefix: Vec::new(), tail: Tail::Terminus(*t) },
        }
    }

    pub fn to_document(&self, g: &Graph) -> LassoDocument {
        let names = |p: &[EdgeId]| p.iter().map(|&e| g.edge_name(e).to_string()).collect::<Vec<_>>();
        LassoDocument {
            prefix: names(&self.prefix),
            cycle: self.cycle().map(names),
            terminus: self.terminus().map(|t| g.vertex_name(t).to_string()),
        }
    }

    pub fn from_document(g: &Graph, doc: &LassoDocument) -> Result<Self, PathError> {
        let prefix = g.edges_by_name(&doc.prefix)?;
        match (&doc.cycle, &doc.terminus) {
            (Some(c), None) => lasso_normalize(g, &prefix, Some(&g.edges_by_name(c)?)),
            (None, Some(t)) => {
                let t = g.vertex(t)?;
                let x = if prefix.is_empty() {
                    Self::vertex(g, t)?
                } else {
                    lasso_normalize(g, &prefix, None)?
                };
                if x.terminus() != Some(t) {
                    return Err(PathError::NotBoundary);
                }
                Ok(x)
            }
            _ => Err(PathError::Schema("exactly one of cycle and terminus must be present".into())),
        }
    }

    /// Human-readable form, e.g. `a·(c)^∞`, `a·b`, or `[t]` for a bare terminus.
    pub fn display(&self, g: &Graph) -> String {
        let join = |p: &[EdgeId]| p.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join("·");
        let mut out = String::new();
        match &self.tail {
            Tail::Cycle(c) => {
                if !self.prefix.is_empty() {
                    let _ = write!(out, "{}·", join(&self.prefix));
                }
                let _ = write!(out, "({})^∞", join(c));
            }
            Tail::Terminus(t) => {
                if self.prefix.is_empty() {
                    let _ = write!(out, "[{}]", g.vertex_name(*t));
                } else {
                    out.push_str(&join(&self.prefix));
                }
            }
        }
        out
    }
}

/// `σ^n(x)`: drop the first `n` edges.
pub fn shift(g: &Graph, x: &LassoPath, n: usize) -> Result<LassoPath, PathError> {
    let p = x.prefix.len();
    match &x.tail {
        Tail::Terminus(t) => {
            if n > p {
                return Err(PathError::ShiftTooFar { len: p, by: n });
            }
            if n == p {
                LassoPath::vertex(g, *t)
            } else {
                Ok(LassoPath { prefix: x.prefix[n..].to_vec(), tail: Tail::Terminus(*t) })
            }
        }
        Tail::Cycle(c) => {
            if n <= p {
                Ok(LassoPath { prefix: x.prefix[n..].to_vec(), tail: Tail::Cycle(c.clone()) })
            } else {
                let mut c = c.clone();
                let k = (n - p) % c.len();
                c.rotate_left(k);
                Ok(LassoPath { prefix: Vec::new(), tail: Tail::Cycle(c) })
            }
        }
    }
}

/// Whether some shift of `x` equals some shift of `y`.
pub fn tail_equivalent(x: &LassoPath, y: &LassoPath) -> bool {
    match (&x.tail, &y.tail) {
        (Tail::Cycle(a), Tail::Cycle(b)) => is_rotation(a, b),
        (Tail::Terminus(s), Tail::Terminus(t)) => s == t,
        _ => false,
    }
}
