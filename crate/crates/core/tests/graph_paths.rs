use std::collections::BTreeSet;
use std::sync::OnceLock;

use kpclass::family::small_graphs;
use kpclass::graph::{scc_decompose, ComponentKind, EdgeId, Graph, VertexId};
use kpclass::paths::{
    connector_automaton, enumerate_boundary_prefixes, enumerate_boundary_prefixes_from, lasso_normalize, shift, tail_equivalent,
    LassoPath, Tail,
};
use kpclass::topology::simple_cycles;
use proptest::prelude::*;

fn family() -> &'static [Graph] {
    static FAMILY: OnceLock<Vec<Graph>> = OnceLock::new();
    FAMILY.get_or_init(|| small_graphs(3, 4))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Orbits of `S_n` on multisets of `m` ordered vertex pairs, counted by Burnside's lemma.
fn burnside(n: usize, max_edges: usize) -> u64 {
    let mut perms = vec![Vec::<usize>::new()];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..=k).map(move |i| {
                let mut q = p.clone();
                q.insert(i, k);
                q
            }))
            .collect();
    }
    let mut total = 0u64;
    for p in &perms {
        // cycle lengths of the induced permutation of pairs
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let mut seen = vec![false; pairs.len()];
        let mut lens = Vec::new();
        for i in 0..pairs.len() {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                let (a, b) = pairs[j];
                j = p[a] * n + p[b];
            }
            if len > 0 {
                lens.push(len);
            }
        }
        // fixed multisets of size ≤ max_edges: coefficients of ∏ 1/(1 - x^len)
        let mut coeff = vec![0u64; max_edges + 1];
        coeff[0] = 1;
        for &l in &lens {
            for d in l..=max_edges {
                coeff[d] += coeff[d - l];
            }
        }
        total += coeff.iter().sum::<u64>();
    }
    total / factorial(n)
}

#[test]
fn family_size_matches_burnside_count() {
    let expected: u64 = 1 + (1..=3).map(|n| burnside(n, 4)).sum::<u64>();
    assert_eq!(family().len() as u64, expected);
    assert_eq!(expected, 178);
}

#[test]
fn scc_partition_and_kinds() {
    for g in family() {
        let scc = scc_decompose(g);
        let mut all: Vec<VertexId> = scc.components.iter().flat_map(|c| c.vertices.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.vertex_count()).collect::<Vec<_>>());
        for (i, c) in scc.components.iter().enumerate() {
            assert!(c.vertices.iter().all(|&v| scc.component_of[v] == i));
            let expected = match c.internal_edges.len() {
                0 => ComponentKind::Trivial,
                k if k == c.vertices.len() => ComponentKind::SimpleCycle,
                _ => ComponentKind::Branched,
            };
            assert_eq!(c.kind, expected, "{:?}", g.to_document());
        }
    }
}

#[test]
fn reachability_is_a_preorder_total_on_components() {
    for g in family() {
        let n = g.vertex_count();
        let r = g.reachability();
        let scc = scc_decompose(g);
        for a in 0..n {
            assert!(r[a][a]);
            for b in 0..n {
                for c in 0..n {
                    if r[a][b] && r[b][c] {
                        assert!(r[a][c]);
                    }
                }
                if scc.component_of[a] == scc.component_of[b] {
                    assert!(r[a][b] && r[b][a]);
                }
            }
        }
    }
}

#[test]
fn reachability_matches_enumerated_prefixes() {
    for g in family() {
        for a in 0..g.vertex_count() {
            let mut visited = BTreeSet::from([a]);
            for p in enumerate_boundary_prefixes_from(g, a, 6) {
                visited.extend(g.path_vertices(&p.edges));
            }
            for b in 0..g.vertex_count() {
                assert_eq!(g.reaches(a, b), visited.contains(&b), "{:?} {a} {b}", g.to_document());
            }
        }
    }
}

#[test]
fn binary_tree_has_seven_prefixes_from_the_root() {
    let g = kpclass::fixtures::binary_tree(2);
    let root = g.vertex("v").unwrap();
    assert_eq!(enumerate_boundary_prefixes_from(&g, root, 2).len(), 7);
    assert_eq!(enumerate_boundary_prefixes(&g, 0).len(), 7);
}

/// Lasso tails available in `g`: every simple cycle in least rotation, and every terminus.
fn tails(g: &Graph) -> Vec<Tail> {
    let mut out: Vec<Tail> = simple_cycles(g, 64).into_iter().map(Tail::Cycle).collect();
    out.extend(g.termini().into_iter().map(Tail::Terminus));
    out
}

fn lasso_for(g: &Graph, tail: &Tail) -> LassoPath {
    match tail {
        Tail::Cycle(c) => LassoPath::periodic(g, c).unwrap(),
        Tail::Terminus(t) => LassoPath::vertex(g, *t).unwrap(),
    }
}

/// Length of the shortest `μ` with `y = μ·c^∞`, for `y` tail-equivalent to `c^∞`.
fn connector_len(y: &LassoPath, c: &[EdgeId]) -> usize {
    let d = y.cycle().expect("periodic tail");
    let k = (0..d.len())
        .find(|&k| d[k..].iter().chain(&d[..k]).eq(c.iter()))
        .expect("rotation of c");
    y.prefix().len() + k
}

/// Every orbit element with range `v` whose connector has length at most `depth`,
/// found by attaching each rotation of the tail to each enumerated prefix.
fn brute_orbit(g: &Graph, tail: &Tail, v: VertexId, depth: usize) -> BTreeSet<LassoPath> {
    let mut out = BTreeSet::new();
    for p in enumerate_boundary_prefixes_from(g, v, depth) {
        let end = g.path_vertices(&p.edges).last().copied().unwrap_or(v);
        match tail {
            Tail::Cycle(c) => {
                for k in 0..c.len() {
                    let mut rot = c.clone();
                    rot.rotate_left(k);
                    if g.edge(rot[0]).rng == end {
                        let y = lasso_normalize(g, &p.edges, Some(&rot)).unwrap();
                        if connector_len(&y, c) <= depth {
                            out.insert(y);
                        }
                    }
                }
            }
            Tail::Terminus(t) => {
                if end == *t {
                    out.insert(if p.edges.is_empty() {
                        LassoPath::vertex(g, *t).unwrap()
                    } else {
                        lasso_normalize(g, &p.edges, None).unwrap()
                    });
                }
            }
        }
    }
    out
}

#[test]
fn decoded_words_are_sound_and_complete_at_depth() {
    const DEPTH: usize = 5;
    let mut checked = 0usize;
    for g in family() {
        for tail in tails(g) {
            let x = lasso_for(g, &tail);
            for v in 0..g.vertex_count() {
                let aut = connector_automaton(g, &x, v);
                let mut decoded = BTreeSet::new();
                for w in aut.words(DEPTH) {
                    let y = aut.decode(g, &w).expect("accepted word decodes");
                    assert_eq!(y.range(g), v);
                    assert!(tail_equivalent(&y, &x));
                    match &tail {
                        Tail::Cycle(c) => {
                            let n = 3 * (w.len() + c.len());
                            assert_eq!(y.expand(n), expand_raw(&w, c, n));
                            assert_eq!(connector_len(&y, c), w.len(), "word is the shortest connector");
                        }
                        Tail::Terminus(_) => assert_eq!(y.prefix(), &w[..]),
                    }
                    assert!(decoded.insert(y), "two words decode to one path");
                }
                assert_eq!(decoded, brute_orbit(g, &tail, v, DEPTH), "{:?} x={x:?} v={v}", g.to_document());
                checked += 1;
            }
        }
    }
    assert!(checked > 300, "{checked}");
}

#[test]
fn tail_equivalence_is_an_equivalence_compatible_with_shift() {
    for g in family() {
        let mut sample: Vec<LassoPath> = Vec::new();
        for tail in tails(g) {
            for v in 0..g.vertex_count() {
                sample.extend(brute_orbit(g, &tail, v, 2));
            }
        }
        for x in &sample {
            assert!(tail_equivalent(x, x));
            let max = x.finite_len().unwrap_or(2 * x.prefix().len() + 4);
            for n in 0..=max {
                assert!(tail_equivalent(x, &shift(g, x, n).unwrap()));
            }
            for y in &sample {
                assert_eq!(tail_equivalent(x, y), tail_equivalent(y, x));
                if tail_equivalent(x, y) {
                    for z in &sample {
                        if tail_equivalent(y, z) {
                            assert!(tail_equivalent(x, z));
                        }
                    }
                }
            }
        }
    }
}

fn cyclic_graphs() -> &'static [(Graph, Vec<Vec<EdgeId>>)] {
    static CYCLIC: OnceLock<Vec<(Graph, Vec<Vec<EdgeId>>)>> = OnceLock::new();
    CYCLIC.get_or_init(|| {
        family()
            .iter()
            .filter_map(|g| {
                let cycles = simple_cycles(g, 64);
                (!cycles.is_empty()).then(|| (g.clone(), cycles))
            })
            .collect()
    })
}

fn expand_raw(prefix: &[EdgeId], cycle: &[EdgeId], n: usize) -> Vec<EdgeId> {
    prefix.iter().chain(cycle.iter().cycle()).take(n).copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalization_preserves_the_path(
        gi in any::<prop::sample::Index>(),
        ci in any::<prop::sample::Index>(),
        rot in 0usize..8,
        power in 1usize..4,
        laps in 0usize..3,
        back in prop::collection::vec(any::<prop::sample::Index>(), 0..5),
    ) {
        let (g, cycles) = &cyclic_graphs()[gi.index(cyclic_graphs().len())];
        let mut base = cycles[ci.index(cycles.len())].clone();
        let k = rot % base.len();
        base.rotate_left(k);
        let cycle: Vec<EdgeId> = base.iter().copied().cycle().take(base.len() * power).collect();
        // prefix: a backward walk into the cycle, followed by whole laps of it
        let mut prefix: Vec<EdgeId> = Vec::new();
        let mut at = g.edge(cycle[0]).rng;
        for choice in &back {
            let into: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| g.edge(e).src == at).collect();
            if into.is_empty() {
                break;
            }
            let e = into[choice.index(into.len())];
            prefix.insert(0, e);
            at = g.edge(e).rng;
        }
        for _ in 0..laps {
            prefix.extend_from_slice(&cycle);
        }
        let y = lasso_normalize(g, &prefix, Some(&cycle)).unwrap();
        let n = 4 * (prefix.len() + cycle.len());
        prop_assert_eq!(y.expand(n), expand_raw(&prefix, &cycle, n));
        let again = lasso_normalize(g, y.prefix(), y.cycle()).unwrap();
        prop_assert_eq!(&again, &y);
        let c = y.cycle().unwrap();
        prop_assert!(y.prefix().last() != c.last());
    }
}
