use std::collections::BTreeMap;

use crate::error::{GroupoidError, PathError};
use crate::field::Field;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::paths::{orbit_intersection_size, shift, tail_equivalent, Cardinality, LassoPath};

/// The indicator of `Z(μ, ν)`: it sends `ν·y` to `μ·y` and everything else to
/// zero. Both paths have source `vertex`; empty paths stand for the vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPGenerator {
    pub mu: Vec<EdgeId>,
    pub nu: Vec<EdgeId>,
    pub vertex: VertexId,
}

fn source_of(g: &Graph, p: &[EdgeId], vertex: VertexId) -> VertexId {
    p.last().map_or(vertex, |&e| g.edge(e).src)
}

fn range_of(g: &Graph, p: &[EdgeId], vertex: VertexId) -> VertexId {
    p.first().map_or(vertex, |&e| g.edge(e).rng)
}

impl KPGenerator {
    pub fn new(g: &Graph, mu: Vec<EdgeId>, nu: Vec<EdgeId>, vertex: VertexId) -> Result<Self, GroupoidError> {
        if vertex >= g.vertex_count() || mu.iter().chain(&nu).any(|&e| e >= g.edge_count()) {
            return Err(PathError::NotComposable.into());
        }
        if !g.is_composable(&mu) || !g.is_composable(&nu) {
            return Err(PathError::NotComposable.into());
        }
        if source_of(g, &mu, vertex) != vertex || source_of(g, &nu, vertex) != vertex {
            return Err(PathError::Detached.into());
        }
        Ok(Self { mu, nu, vertex })
    }

    /// The projection onto `Z(v)`.
    pub fn vertex_projection(v: VertexId) -> Self {
        Self { mu: Vec::new(), nu: Vec::new(), vertex: v }
    }

    pub fn adjoint(&self) -> Self {
        Self { mu: self.nu.clone(), nu: self.mu.clone(), vertex: self.vertex }
    }

    /// `self ∗ other`: act by `other`, then by `self`. `None` is zero.
    pub fn compose(&self, g: &Graph, other: &Self) -> Option<Self> {
        let (mu, nu, alpha, beta) = (&self.mu, &self.nu, &other.mu, &other.nu);
        if range_of(g, nu, self.vertex) != range_of(g, alpha, other.vertex) {
            return None;
        }
        if alpha.len() >= nu.len() && alpha.starts_with(nu) {
            let mut m = mu.clone();
            m.extend_from_slice(&alpha[nu.len()..]);
            Some(Self { mu: m, nu: beta.clone(), vertex: other.vertex })
        } else if nu.starts_with(alpha) {
            let mut n = beta.clone();
            n.extend_from_slice(&nu[alpha.len()..]);
            Some(Self { mu: mu.clone(), nu: n, vertex: self.vertex })
        } else {
            None
        }
    }

    pub fn display(&self, g: &Graph) -> String {
        let show = |p: &[EdgeId]| {
            if p.is_empty() {
                g.vertex_name(self.vertex).to_string()
            } else {
                p.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join("·")
            }
        };
        format!("({}, {})", show(&self.mu), show(&self.nu))
    }
}

/// The image of the basis vector `y`: `μ·y'` if `y = ν·y'`, otherwise `None`.
pub fn kp_orbit_action(g: &Graph, gen: &KPGenerator, y: &LassoPath) -> Result<Option<LassoPath>, GroupoidError> {
    if !y.starts_with(&gen.nu) {
        return Ok(None);
    }
    let rest = shift(g, y, gen.nu.len())?;
    if rest.range(g) != gen.vertex {
        return Ok(None);
    }
    Ok(Some(rest.prepend(g, &gen.mu)?))
}

/// A finitely supported vector on the canonical forms of one orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVector<E> {
    entries: BTreeMap<LassoPath, E>,
}

impl<E: Clone + PartialEq> OrbitVector<E> {
    pub fn zero() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn basis<F: Field<Elem = E>>(f: &F, y: LassoPath) -> Self {
        Self { entries: BTreeMap::from([(y, f.one())]) }
    }

    /// Sums repeated paths and drops zeros; all paths must be tail equivalent.
    pub fn new<F: Field<Elem = E>>(f: &F, terms: impl IntoIterator<Item = (LassoPath, E)>) -> Result<Self, GroupoidError> {
        let mut out = Self::zero();
        for (y, c) in terms {
            if out.entries.keys().next().is_some_and(|first| !tail_equivalent(first, &y)) {
                return Err(GroupoidError::SupportNotInOneOrbit);
            }
            out.add_term(f, y, c);
        }
        Ok(out)
    }

    fn add_term<F: Field<Elem = E>>(&mut self, f: &F, y: LassoPath, c: E) {
        let sum = match self.entries.get(&y) {
            Some(old) => f.add(old, &c),
            None => c,
        };
        if f.is_zero(&sum) {
            self.entries.remove(&y);
        } else {
            self.entries.insert(y, sum);
        }
    }

    pub fn entries(&self) -> &BTreeMap<LassoPath, E> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Linear extension of [`kp_orbit_action`].
pub fn kp_orbit_action_vector<F: Field>(
    f: &F,
    g: &Graph,
    gen: &KPGenerator,
    v: &OrbitVector<F::Elem>,
) -> Result<OrbitVector<F::Elem>, GroupoidError> {
    let mut out = OrbitVector::zero();
    for (y, c) in &v.entries {
        if let Some(z) = kp_orbit_action(g, gen, y)? {
            out.add_term(f, z, c.clone());
        }
    }
    Ok(out)
}

/// Rank of the generator on the orbit module of `x`: the size of
/// `Z(ν) ∩ Orb_x`, which is in bijection with `Z(src ν) ∩ Orb_x`.
pub fn generator_rank(g: &Graph, gen: &KPGenerator, x: &LassoPath) -> Cardinality {
    orbit_intersection_size(g, x, gen.vertex).cardinality
}
