//! Connector automata: deterministic automata whose accepted words index the
//! elements of `Z(v) ∩ Orb_x`.
//!
//! Every `y` in the orbit of a lasso `x = P·C^∞` can be written uniquely as
//! `μ·C^∞` with `μ` not ending in a full copy of `C`; for a terminus path the
//! orbit is the set of finite paths into the same terminus. The automaton
//! reads `μ` edge by edge from `v` while tracking, as in string matching, the
//! longest suffix read so far that is a prefix of `C`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{tarjan, EdgeId, Graph, VertexId};
use crate::paths::lasso::{lasso_normalize, LassoPath, Tail};

/// Size of a possibly infinite set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinality {
    /// Exact count; saturates at `u128::MAX`.
    Finite(u128),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl std::fmt::Display for Cardinality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("∞"),
        }
    }
}

/// Witness that a language is infinite: `lead · cycle^k · finish` is accepted
/// for every `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pump {
    pub lead: Vec<EdgeId>,
    pub cycle: Vec<EdgeId>,
    pub finish: Vec<EdgeId>,
}

impl Pump {
    /// The accepted word with `k` copies of the pumped cycle.
    pub fn word(&self, k: usize) -> Vec<EdgeId> {
        let mut w = self.lead.clone();
        for _ in 0..k {
            w.extend_from_slice(&self.cycle);
        }
        w.extend_from_slice(&self.finish);
        w
    }
}

/// Result of [`orbit_intersection_size`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCount {
    pub cardinality: Cardinality,
    /// Present exactly when the cardinality is infinite.
    pub pump: Option<Pump>,
}

#[derive(Debug, Clone)]
pub struct ConnectorAutomaton {
    start: usize,
    /// `transitions[q]` holds `(edge, next)` pairs in edge order.
    transitions: Vec<Vec<(EdgeId, usize)>>,
    accepting: Vec<bool>,
    tail: Tail,
    range: VertexId,
}

/// Prefix function of `pattern`: `fail[i]` is the length of the longest
/// proper border of `pattern[..=i]`.
fn prefix_function(pattern: &[EdgeId]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len()];
    for i in 1..pattern.len() {
        let mut k = fail[i - 1];
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Builds the automaton for `Z(v) ∩ Orb_x`.
///
/// States are pairs `(vertex, matched)` with `matched` in `0..=|C|`, numbered
/// `vertex·(|C|+1) + matched`; terminus paths use `|C| = 0`.
pub fn connector_automaton(g: &Graph, x: &LassoPath, v: VertexId) -> ConnectorAutomaton {
    let n = g.vertex_count();
    let pattern: Vec<EdgeId> = x.cycle().map(<[EdgeId]>::to_vec).unwrap_or_default();
    let width = pattern.len() + 1;
    let fail = prefix_function(&pattern);
    let step = |mut k: usize, e: EdgeId| -> usize {
        loop {
            if k < pattern.len() && pattern[k] == e {
                return k + 1;
            }
            if k == 0 {
                return 0;
            }
            k = fail[k - 1];
        }
    };
    let mut transitions = vec![Vec::new(); n * width];
    for a in 0..n {
        for k in 0..width {
            transitions[a * width + k] =
                g.continuations(a).iter().map(|&e| (e, g.edge(e).src * width + step(k, e))).collect();
        }
    }
    let mut accepting = vec![false; n * width];
    let join = match x.tail() {
        Tail::Cycle(c) => g.edge(c[0]).rng,
        Tail::Terminus(t) => *t,
    };
    for k in 0..width {
        // A full match means the connector ends in a copy of the cycle.
        accepting[join * width + k] = pattern.is_empty() || k < pattern.len();
    }
    ConnectorAutomaton { start: v * width, transitions, accepting, tail: x.tail().clone(), range: v }
}

impl ConnectorAutomaton {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    fn run(&self, word: &[EdgeId]) -> Option<usize> {
        word.iter().try_fold(self.start, |q, &e| {
            self.transitions[q].iter().find(|&&(f, _)| f == e).map(|&(_, next)| next)
        })
    }

    pub fn accepts(&self, word: &[EdgeId]) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    /// The orbit element named by an accepted word.
    pub fn decode(&self, g: &Graph, word: &[EdgeId]) -> Option<LassoPath> {
        if !self.accepts(word) {
            return None;
        }
        match &self.tail {
            Tail::Cycle(c) => lasso_normalize(g, word, Some(c)).ok(),
            Tail::Terminus(t) if word.is_empty() => LassoPath::vertex(g, *t).ok(),
            Tail::Terminus(_) => lasso_normalize(g, word, None).ok(),
        }
    }

    /// Whether some accepted word begins with `prefix`.
    pub fn accepts_extension_of(&self, prefix: &[EdgeId]) -> bool {
        self.run(prefix).is_some_and(|q| self.co_reachable()[q])
    }

    /// States both reachable from the start and co-reachable to acceptance.
    fn useful(&self) -> Vec<bool> {
        let m = self.state_count();
        let mut reach = vec![false; m];
        let mut queue = VecDeque::from([self.start]);
        reach[self.start] = true;
        while let Some(q) = queue.pop_front() {
            for &(_, r) in &self.transitions[q] {
                if !reach[r] {
                    reach[r] = true;
                    queue.push_back(r);
                }
            }
        }
        let co = self.co_reachable();
        (0..m).map(|q| reach[q] && co[q]).collect()
    }

    fn co_reachable(&self) -> Vec<bool> {
        let m = self.state_count();
        let mut pred = vec![Vec::new(); m];
        for (q, ts) in self.transitions.iter().enumerate() {
            for &(_, r) in ts {
                pred[r].push(q);
            }
        }
        let mut co = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..m).filter(|&q| co[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &pred[q] {
                if !co[p] {
                    co[p] = true;
                    queue.push_back(p);
                }
            }
        }
        co
    }

    fn useful_successors(&self, useful: &[bool]) -> Vec<Vec<usize>> {
        self.transitions
            .iter()
            .enumerate()
            .map(|(q, ts)| {
                if useful[q] {
                    ts.iter().filter(|&&(_, r)| useful[r]).map(|&(_, r)| r).collect()
                } else {
                    Vec::new()
                }
            })
            .collect()
    }

    /// Useful states lying on a cycle of useful states.
    fn cyclic_useful(&self, useful: &[bool]) -> Vec<bool> {
        let succ = self.useful_successors(useful);
        let mut cyclic = vec![false; self.state_count()];
        for comp in tarjan(&succ) {
            let looped = comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
            if looped && useful[comp[0]] {
                for q in comp {
                    cyclic[q] = true;
                }
            }
        }
        cyclic
    }

    pub fn is_finite(&self) -> bool {
        let useful = self.useful();
        !self.cyclic_useful(&useful).iter().any(|&c| c)
    }

    /// Shortest, then lexicographically least, word from `from` to any state
    /// satisfying `goal`, moving only through `allowed` states. With
    /// `nonempty`, the empty word does not count.
    fn shortest_word(
        &self,
        from: usize,
        allowed: &[bool],
        goal: impl Fn(usize) -> bool,
        nonempty: bool,
    ) -> Option<Vec<EdgeId>> {
        if !nonempty && goal(from) {
            return Some(Vec::new());
        }
        // Node `m` is a virtual root standing for `from` before any edge is read.
        let m = self.state_count();
        let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::from([m]);
        while let Some(node) = queue.pop_front() {
            let q = if node == m { from } else { node };
            for &(e, r) in &self.transitions[q] {
                if !allowed[r] {
                    continue;
                }
                if goal(r) {
                    let mut word = vec![e];
                    let mut cur = node;
                    while cur != m {
                        let (p, pe) = parent[cur].expect("visited node has a parent");
                        word.push(pe);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((node, e));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Decides finiteness and counts the language exactly, or produces a pump.
    pub fn cardinality(&self) -> OrbitCount {
        let useful = self.useful();
        let cyclic = self.cyclic_useful(&useful);
        if cyclic.iter().any(|&c| c) {
            return OrbitCount { cardinality: Cardinality::Infinite, pump: Some(self.pump(&useful, &cyclic)) };
        }
        // Acyclic useful part: count accepting paths by memoized DFS.
        let m = self.state_count();
        let mut memo: Vec<Option<u128>> = vec![None; m];
        fn count(a: &ConnectorAutomaton, q: usize, useful: &[bool], memo: &mut Vec<Option<u128>>) -> u128 {
            if let Some(c) = memo[q] {
                return c;
            }
            let mut total = u128::from(a.accepting[q]);
            for &(_, r) in &a.transitions[q] {
                if useful[r] {
                    total = total.saturating_add(count(a, r, useful, memo));
                }
            }
            memo[q] = Some(total);
            total
        }
        let n = if useful[self.start] { count(self, self.start, &useful, &mut memo) } else { 0 };
        OrbitCount { cardinality: Cardinality::Finite(n), pump: None }
    }

    fn pump(&self, useful: &[bool], cyclic: &[bool]) -> Pump {
        // Lead: BFS from start in edge order gives shortest, lexicographically
        // least words; take the first cyclic state discovered.
        let lead = self
            .shortest_word(self.start, useful, |q| cyclic[q], false)
            .expect("a cyclic useful state is reachable");
        let q = self.run(&lead).expect("lead is a valid run");
        let cycle = self
            .shortest_word(q, useful, |r| r == q, true)
            .expect("cyclic state has a return path");
        let finish = self
            .shortest_word(q, useful, |r| self.accepting[r], false)
            .expect("useful state reaches acceptance");
        Pump { lead, cycle, finish }
    }

    /// All accepted words of length at most `max_len`, in shortlex order.
    pub fn words(&self, max_len: usize) -> Vec<Vec<EdgeId>> {
        let useful = self.useful();
        let mut out = Vec::new();
        if !useful[self.start] {
            return out;
        }
        let mut layer: Vec<(usize, Vec<EdgeId>)> = vec![(self.start, Vec::new())];
        for len in 0..=max_len {
            for (q, w) in &layer {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (q, w) in &layer {
                for &(e, r) in &self.transitions[*q] {
                    if useful[r] {
                        let mut w2 = w.clone();
                        w2.push(e);
                        next.push((r, w2));
                    }
                }
            }
            next.sort_by(|a, b| a.1.cmp(&b.1));
            layer = next;
        }
        out
    }
}

/// `|Z(v) ∩ Orb_x|`, exactly, with a pumping witness when infinite.
pub fn orbit_intersection_size(g: &Graph, x: &LassoPath, v: VertexId) -> OrbitCount {
    connector_automaton(g, x, v).cardinality()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop_has_one_element() {
        let g = Graph::from_parts(&["w"], &[("c", "w", "w")]).unwrap();
        let c = g.edge_by_name("c").unwrap();
        let x = LassoPath::periodic(&g, &[c]).unwrap();
        let a = connector_automaton(&g, &x, 0);
        assert_eq!(a.words(5), vec![Vec::<EdgeId>::new()]);
        assert_eq!(a.cardinality().cardinality, Cardinality::Finite(1));
    }

    #[test]
    fn entrance_adds_one_connector() {
        let g = Graph::from_parts(&["v", "w"], &[("a", "w", "v"), ("c", "w", "w")]).unwrap();
        let [a, c] = ["a", "c"].map(|n| g.edge_by_name(n).unwrap());
        let x = LassoPath::periodic(&g, &[c]).unwrap();
        let v = g.vertex("v").unwrap();
        let aut = connector_automaton(&g, &x, v);
        assert_eq!(aut.words(6), vec![vec![a]]);
        assert_eq!(aut.cardinality().cardinality, Cardinality::Finite(1));
        let y = aut.decode(&g, &[a]).unwrap();
        assert_eq!(y, lasso_normalize(&g, &[a], Some(&[c])).unwrap());
    }

    #[test]
    fn figure_eight_pumps_on_f() {
        let g = Graph::from_parts(&["w"], &[("e", "w", "w"), ("f", "w", "w")]).unwrap();
        let [e, f] = ["e", "f"].map(|n| g.edge_by_name(n).unwrap());
        let x = LassoPath::periodic(&g, &[e]).unwrap();
        let aut = connector_automaton(&g, &x, 0);
        let words = aut.words(2);
        assert_eq!(words, vec![vec![], vec![f], vec![e, f], vec![f, f]]);
        let count = aut.cardinality();
        assert_eq!(count.cardinality, Cardinality::Infinite);
        let pump = count.pump.unwrap();
        for k in 0..4 {
            assert!(aut.accepts(&pump.word(k)));
        }
        assert_eq!(pump.lead, Vec::<EdgeId>::new());
        assert_eq!(pump.cycle, vec![f]);
        assert!(pump.finish.is_empty());
    }

    #[test]
    fn acyclic_path_to_terminus() {
        let g = Graph::from_parts(&["u", "m", "t"], &[("a", "m", "u"), ("b", "t", "m")]).unwrap();
        let [a, b] = ["a", "b"].map(|n| g.edge_by_name(n).unwrap());
        let x = lasso_normalize(&g, &[a, b], None).unwrap();
        let count = orbit_intersection_size(&g, &x, g.vertex("u").unwrap());
        assert_eq!(count.cardinality, Cardinality::Finite(1));
        let t = g.vertex("t").unwrap();
        assert_eq!(orbit_intersection_size(&g, &x, t).cardinality, Cardinality::Finite(1));
    }

    #[test]
    fn unreachable_orbit_is_empty() {
        let g = Graph::from_parts(&["v", "w"], &[("c", "w", "w"), ("d", "v", "v")]).unwrap();
        let c = g.edge_by_name("c").unwrap();
        let x = LassoPath::periodic(&g, &[c]).unwrap();
        let count = orbit_intersection_size(&g, &x, g.vertex("v").unwrap());
        assert_eq!(count.cardinality, Cardinality::Finite(0));
    }
}
