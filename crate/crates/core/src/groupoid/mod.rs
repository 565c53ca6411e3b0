//! Finite discrete groupoids and their convolution algebras, plus the orbit
//! modules of graph boundary-path groupoids presented by Kumjian–Pask
//! generators.

mod kp;
mod matrix_iso;
mod orbit;
mod steinberg;

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GroupoidError;
use crate::group::Group;

pub use kp::{generator_rank, kp_orbit_action, kp_orbit_action_vector, KPGenerator, OrbitVector};
pub use matrix_iso::{matrix_iso, verify_matrix_iso, MatrixIso, MatrixIsoReport};
pub use orbit::{endo_dim_orbit, is_simple_orbit_module, orbit_action_finite, orbit_module_matrices, ObjectVector};
pub use steinberg::{
    convolve, involute, restrict_to_closed_invariant, verify_restriction, RestrictionReport, SteinbergElement,
};

pub type ObjectId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjectId,
    pub rng: ObjectId,
}

/// A finite groupoid. Composition `a·b` is defined when `src(a) = rng(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    compose: Vec<Vec<Option<ArrowId>>>,
    inverse: Vec<ArrowId>,
    units: Vec<ArrowId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDocument {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// JSON form: objects, arrows, and every defined product as `[a, b, ab]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDocument {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDocument>,
    pub composition: Vec<[String; 3]>,
}

impl FiniteGroupoid {
    /// Validates the groupoid axioms and derives units and inverses.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, products: &[(ArrowId, ArrowId, ArrowId)]) -> Result<Self, GroupoidError> {
        let bad = |m: String| GroupoidError::Malformed(m);
        let n = arrows.len();
        if arrows.iter().any(|a| a.src >= objects.len() || a.rng >= objects.len()) {
            return Err(bad("arrow endpoint out of range".into()));
        }
        let mut compose = vec![vec![None; n]; n];
        for &(a, b, ab) in products {
            if a >= n || b >= n || ab >= n {
                return Err(bad("product names an unknown arrow".into()));
            }
            if arrows[a].src != arrows[b].rng {
                return Err(bad(format!("{} · {} is not composable", arrows[a].name, arrows[b].name)));
            }
            if compose[a][b].replace(ab).is_some() {
                return Err(bad(format!("{} · {} given twice", arrows[a].name, arrows[b].name)));
            }
            if arrows[ab].src != arrows[b].src || arrows[ab].rng != arrows[a].rng {
                return Err(bad(format!("{} · {} has the wrong endpoints", arrows[a].name, arrows[b].name)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if arrows[a].src == arrows[b].rng && compose[a][b].is_none() {
                    return Err(bad(format!("{} · {} is missing", arrows[a].name, arrows[b].name)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = compose[a][b] else { continue };
                for c in 0..n {
                    if let Some(bc) = compose[b][c] {
                        if compose[ab][c] != compose[a][bc] {
                            return Err(bad("composition is not associative".into()));
                        }
                    }
                }
            }
        }
        let mut units = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let u = (0..n)
                .find(|&u| {
                    arrows[u].src == x
                        && arrows[u].rng == x
                        && (0..n).all(|a| (arrows[a].rng != x || compose[u][a] == Some(a)) && (arrows[a].src != x || compose[a][u] == Some(a)))
                })
                .ok_or_else(|| bad(format!("object {} has no unit", objects[x])))?;
            units.push(u);
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| compose[a][b] == Some(units[arrows[b].src]) && compose[b][a] == Some(units[arrows[a].src]))
                .ok_or_else(|| bad(format!("arrow {} has no inverse", arrows[a].name)))?;
            inverse.push(inv);
        }
        Ok(Self { objects, arrows, compose, inverse, units })
    }

    pub fn from_document(doc: &GroupoidDocument) -> Result<Self, GroupoidError> {
        let obj: HashMap<&str, usize> = doc.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |m: &HashMap<&str, usize>, s: &str| m.get(s).copied().ok_or_else(|| GroupoidError::UnknownName(s.to_string()));
        let arrows = doc
            .arrows
            .iter()
            .map(|a| Ok(Arrow { name: a.id.clone(), src: lookup(&obj, &a.src)?, rng: lookup(&obj, &a.rng)? }))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        let arr: HashMap<&str, usize> = doc.arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
        if arr.len() != arrows.len() || obj.len() != doc.objects.len() {
            return Err(GroupoidError::Malformed("duplicate names".into()));
        }
        let products = doc
            .composition
            .iter()
            .map(|[a, b, ab]| Ok((lookup(&arr, a)?, lookup(&arr, b)?, lookup(&arr, ab)?)))
            .collect::<Result<Vec<_>, GroupoidError>>()?;
        Self::new(doc.objects.clone(), arrows, &products)
    }

    pub fn to_document(&self) -> GroupoidDocument {
        let mut composition = Vec::new();
        for a in 0..self.arrow_count() {
            for b in 0..self.arrow_count() {
                if let Some(ab) = self.compose[a][b] {
                    composition.push([self.arrows[a].name.clone(), self.arrows[b].name.clone(), self.arrows[ab].name.clone()]);
                }
            }
        }
        GroupoidDocument {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDocument { id: a.name.clone(), src: self.objects[a.src].clone(), rng: self.objects[a.rng].clone() })
                .collect(),
            composition,
        }
    }

    /// The transitive groupoid `{0..n} × G × {0..n}` with arrows `(v, g, w)`
    /// from `w` to `v` and `(v,g,w)·(w,h,u) = (v,gh,u)`. The arrow order is
    /// shuffled by `seed`.
    pub fn transitive(n: usize, group: &Group, seed: u64) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let mut triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|v| (0..group.order()).flat_map(move |g| (0..n).map(move |w| (v, g, w)))).collect();
        triples.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let index: HashMap<(usize, usize, usize), usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let arrows = triples
            .iter()
            .map(|&(v, g, w)| Arrow { name: format!("{}[{v}<-{w}]", group.element_name(g)), src: w, rng: v })
            .collect();
        let mut products = Vec::new();
        for (i, &(v, g, w)) in triples.iter().enumerate() {
            for (j, &(w2, h, u)) in triples.iter().enumerate() {
                if w == w2 {
                    products.push((i, j, index[&(v, group.mul(g, h), u)]));
                }
            }
        }
        Self::new(objects, arrows, &products).expect("transitive groupoid satisfies the axioms")
    }

    /// The pair groupoid on `n` objects: one arrow between each ordered pair.
    pub fn pair(n: usize) -> Self {
        Self::transitive(n, &Group::trivial(), 0)
    }

    /// A group as a one-object groupoid.
    pub fn from_group(group: &Group) -> Self {
        Self::transitive(1, group, 0)
    }

    /// Disjoint union; object and arrow names get the prefix `k:` for part `k`.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut products = Vec::new();
        for (k, g) in parts.iter().enumerate() {
            let (o0, a0) = (objects.len(), arrows.len());
            objects.extend(g.objects.iter().map(|o| format!("{k}:{o}")));
            arrows.extend(g.arrows.iter().map(|a| Arrow { name: format!("{k}:{}", a.name), src: a.src + o0, rng: a.rng + o0 }));
            for a in 0..g.arrow_count() {
                for b in 0..g.arrow_count() {
                    if let Some(ab) = g.compose[a][b] {
                        products.push((a + a0, b + a0, ab + a0));
                    }
                }
            }
        }
        Self::new(objects, arrows, &products).expect("disjoint union of groupoids")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x]
    }

    pub fn object(&self, name: &str) -> Result<ObjectId, GroupoidError> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| GroupoidError::UnknownName(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, GroupoidError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| GroupoidError::UnknownName(name.to_string()))
    }

    pub fn arrow_data(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn src(&self, a: ArrowId) -> ObjectId {
        self.arrows[a].src
    }

    pub fn rng(&self, a: ArrowId) -> ObjectId {
        self.arrows[a].rng
    }

    /// `a·b`, defined when `src(a) = rng(b)`.
    pub fn compose(&self, a: ArrowId, b: ArrowId) -> Option<ArrowId> {
        self.compose[a][b]
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        self.inverse[a]
    }

    pub fn unit(&self, x: ObjectId) -> ArrowId {
        self.units[x]
    }

    pub fn units(&self) -> &[ArrowId] {
        &self.units
    }

    pub fn arrows_from(&self, w: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrow_count()).filter(move |&a| self.arrows[a].src == w)
    }

    /// Arrows `w → v`.
    pub fn arrows_between(&self, w: ObjectId, v: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrow_count()).filter(move |&a| self.arrows[a].src == w && self.arrows[a].rng == v)
    }

    pub fn isotropy(&self, x: ObjectId) -> Vec<ArrowId> {
        self.arrows_between(x, x).collect()
    }

    /// Orbits as sorted object lists, ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<ObjectId>> {
        let mut label: BTreeMap<ObjectId, ObjectId> = BTreeMap::new();
        for x in 0..self.object_count() {
            if label.contains_key(&x) {
                continue;
            }
            for a in self.arrows_from(x) {
                label.insert(self.rng(a), x);
            }
        }
        let mut out: BTreeMap<ObjectId, Vec<ObjectId>> = BTreeMap::new();
        for (x, root) in label {
            out.entry(root).or_default().push(x);
        }
        out.into_values().collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Whether `set` is a union of orbits.
    pub fn is_invariant(&self, set: &[ObjectId]) -> bool {
        self.arrows.iter().all(|a| set.contains(&a.src) == set.contains(&a.rng))
    }

    /// Arrows that are bisections' worth of data: injective on source and range.
    pub fn is_bisection(&self, set: &[ArrowId]) -> bool {
        let mut srcs: Vec<_> = set.iter().map(|&a| self.src(a)).collect();
        let mut rngs: Vec<_> = set.iter().map(|&a| self.rng(a)).collect();
        srcs.sort_unstable();
        rngs.sort_unstable();
        srcs.windows(2).all(|w| w[0] != w[1]) && rngs.windows(2).all(|w| w[0] != w[1])
    }

    /// `UV = {uv : u ∈ U, v ∈ V, src(u) = rng(v)}`, sorted.
    pub fn product_set(&self, u: &[ArrowId], v: &[ArrowId]) -> Vec<ArrowId> {
        let mut out: Vec<ArrowId> = u.iter().flat_map(|&a| v.iter().filter_map(move |&b| self.compose(a, b))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The reduction to the objects in `set`.
    pub fn reduction(&self, set: &[ObjectId]) -> (FiniteGroupoid, Vec<ArrowId>) {
        let objects: Vec<ObjectId> = (0..self.object_count()).filter(|x| set.contains(x)).collect();
        let obj_new: HashMap<ObjectId, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let kept: Vec<ArrowId> =
            (0..self.arrow_count()).filter(|&a| obj_new.contains_key(&self.src(a)) && obj_new.contains_key(&self.rng(a))).collect();
        let arr_new: HashMap<ArrowId, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let arrows = kept
            .iter()
            .map(|&a| Arrow { name: self.arrows[a].name.clone(), src: obj_new[&self.src(a)], rng: obj_new[&self.rng(a)] })
            .collect();
        let mut products = Vec::new();
        for &a in &kept {
            for &b in &kept {
                if let Some(ab) = self.compose(a, b) {
                    products.push((arr_new[&a], arr_new[&b], arr_new[&ab]));
                }
            }
        }
        let names = objects.iter().map(|&x| self.objects[x].clone()).collect();
        (Self::new(names, arrows, &products).expect("reduction of a groupoid"), kept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_groupoid_sizes() {
        let g = FiniteGroupoid::transitive(2, &Group::cyclic(2), 7);
        assert_eq!((g.object_count(), g.arrow_count()), (2, 8));
        assert!(g.is_transitive());
        assert_eq!(g.isotropy(0).len(), 2);
        let pair = FiniteGroupoid::pair(3);
        assert_eq!(pair.arrow_count(), 9);
    }

    #[test]
    fn document_round_trip() {
        let g = FiniteGroupoid::transitive(2, &Group::cyclic(3), 1);
        let doc = g.to_document();
        assert_eq!(FiniteGroupoid::from_document(&doc).unwrap(), g);
        let mut broken = doc.clone();
        broken.composition.pop();
        assert!(FiniteGroupoid::from_document(&broken).is_err());
    }

    #[test]
    fn orbits_of_a_union() {
        let g = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2), FiniteGroupoid::from_group(&Group::cyclic(2))]);
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2]]);
        assert!(g.is_invariant(&[2]) && !g.is_invariant(&[1]));
        let (r, kept) = g.reduction(&[0, 1]);
        assert_eq!((r.arrow_count(), kept.len()), (4, 4));
    }
}
