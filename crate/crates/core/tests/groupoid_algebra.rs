use std::sync::Arc;

use kpclass::family::small_graphs;
use kpclass::field::{Field, GaloisField, Rationals};
use kpclass::fixtures;
use kpclass::graph::{scc_decompose, Graph};
use kpclass::group::Group;
use kpclass::groupoid::*;
use kpclass::matrix::{Matrix, Subspace};
use kpclass::paths::{connector_automaton, orbit_intersection_size, Cardinality, LassoPath};
use kpclass::topology::{check_condition_m, simple_cycles};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
    Arc::new(g)
}

/// `Σ_{βα = γ} a(β) b(α)`, looping over every pair of arrows.
fn double_loop(a: &SteinbergElement<Q>, b: &SteinbergElement<Q>) -> Vec<Q> {
    let g = a.groupoid();
    let f = Rationals;
    let mut out = vec![f.zero(); g.arrow_count()];
    for beta in 0..g.arrow_count() {
        for alpha in 0..g.arrow_count() {
            if let Some(gamma) = g.compose(beta, alpha) {
                out[gamma] = f.add(&out[gamma], &f.mul(a.coeff(beta), b.coeff(alpha)));
            }
        }
    }
    out
}

fn bisections(g: &FiniteGroupoid) -> Vec<Vec<usize>> {
    let n = g.arrow_count();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&a| mask >> a & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.is_bisection(s))
        .collect()
}

/// Pair groupoid on two objects plus two lone objects: six arrows, trivial isotropy.
fn six_arrow_groupoid() -> FiniteGroupoid {
    FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2), FiniteGroupoid::pair(1), FiniteGroupoid::pair(1)])
}

#[test]
fn bisection_indicators_multiply_to_product_sets() {
    let g = arc(FiniteGroupoid::transitive(2, &Group::cyclic(2), 3));
    let f = GaloisField::prime(5).unwrap();
    let bis = bisections(&g);
    assert_eq!(bis.len(), 17);
    for u in &bis {
        for v in &bis {
            let lhs = convolve(&f, &SteinbergElement::indicator(&f, &g, u), &SteinbergElement::indicator(&f, &g, v)).unwrap();
            assert_eq!(lhs, SteinbergElement::indicator(&f, &g, &g.product_set(u, v)));
        }
    }
}

#[test]
fn convolution_matches_double_loop_on_six_arrows() {
    let g = arc(six_arrow_groupoid());
    assert_eq!(g.arrow_count(), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let a = SteinbergElement::random(&Rationals, &g, &mut rng);
        let b = SteinbergElement::random(&Rationals, &g, &mut rng);
        assert_eq!(convolve(&Rationals, &a, &b).unwrap().coeffs(), double_loop(&a, &b).as_slice());
    }
}

#[test]
fn unit_is_the_identity() {
    let g = arc(six_arrow_groupoid());
    let x = SteinbergElement::random(&Rationals, &g, &mut ChaCha8Rng::seed_from_u64(2));
    assert_eq!(convolve(&Rationals, &SteinbergElement::unit(&Rationals, &g), &x).unwrap(), x);
}

#[test]
fn involution_of_an_indicator_inverts_the_set() {
    let g = arc(FiniteGroupoid::transitive(2, &Group::cyclic(3), 5));
    let f = GaloisField::prime(7).unwrap();
    for u in bisections(&g) {
        let inv: Vec<_> = u.iter().map(|&a| g.inverse(a)).collect();
        assert_eq!(involute(&SteinbergElement::indicator(&f, &g, &u)), SteinbergElement::indicator(&f, &g, &inv));
    }
}

#[test]
fn matrix_iso_on_pair_groupoid_matches_matrix_units() {
    let g = FiniteGroupoid::pair(2);
    let ga = arc(g.clone());
    let iso = matrix_iso(&g, 0).unwrap();
    assert!(verify_matrix_iso(&g, &iso).passed());
    let f = Rationals;
    let image = |el: &SteinbergElement<Q>| {
        let mut m = Matrix::zeros(&f, 2, 2);
        for a in 0..g.arrow_count() {
            let (_, v, w) = iso.images[a];
            m.set(v, w, f.add(m.get(v, w), el.coeff(a)));
        }
        m
    };
    for a in 0..4 {
        for b in 0..4 {
            let (x, y) = (SteinbergElement::indicator(&f, &ga, &[a]), SteinbergElement::indicator(&f, &ga, &[b]));
            assert_eq!(image(&convolve(&f, &x, &y).unwrap()), image(&x).mul(&f, &image(&y)));
        }
    }
}

/// `Φ` realised on `k^{n·|G|}`: `g E_{vw}` becomes `E_{vw} ⊗ L(g)` with `L` the
/// left regular representation of the isotropy group.
fn regular_block_image(g: &FiniteGroupoid, iso: &MatrixIso, el: &SteinbergElement<Q>) -> Matrix<Q> {
    let f = Rationals;
    let h = &iso.isotropy;
    let n = g.object_count();
    let mut out = Matrix::zeros(&f, n * h.len(), n * h.len());
    for a in 0..g.arrow_count() {
        let (k, v, w) = iso.images[a];
        let left = Matrix::from_fn(h.len(), h.len(), |i, j| {
            if g.compose(k, h[j]) == Some(h[i]) { f.one() } else { f.zero() }
        });
        let block = Matrix::unit(&f, n, v, w).kron(&f, &left).scale(&f, el.coeff(a));
        out = out.add(&f, &block);
    }
    out
}

#[test]
fn matrix_iso_with_c2_isotropy_checks_all_products() {
    let g = FiniteGroupoid::transitive(2, &Group::cyclic(2), 9);
    assert_eq!(g.arrow_count(), 8);
    let iso = matrix_iso(&g, 0).unwrap();
    let report = verify_matrix_iso(&g, &iso);
    assert!(report.passed());
    assert_eq!(report.pairs_checked, 64);
    let ga = arc(g.clone());
    let f = Rationals;
    for a in 0..8 {
        for b in 0..8 {
            let (x, y) = (SteinbergElement::indicator(&f, &ga, &[a]), SteinbergElement::indicator(&f, &ga, &[b]));
            let lhs = regular_block_image(&g, &iso, &convolve(&f, &x, &y).unwrap());
            assert_eq!(lhs, regular_block_image(&g, &iso, &x).mul(&f, &regular_block_image(&g, &iso, &y)));
        }
    }
}

#[test]
fn matrix_iso_passes_on_small_transitive_groupoids() {
    for grp in [Group::trivial(), Group::cyclic(2), Group::cyclic(3)] {
        for n in 1..=3 {
            for seed in 0..3 {
                let g = FiniteGroupoid::transitive(n, &grp, seed);
                for base in 0..n {
                    assert!(verify_matrix_iso(&g, &matrix_iso(&g, base).unwrap()).passed());
                }
            }
        }
    }
}

#[test]
fn pair_groupoid_arrow_moves_basis_vectors() {
    let g = arc(FiniteGroupoid::pair(2));
    let f = Rationals;
    let arrow = g.arrows_between(0, 1).next().unwrap();
    let out = orbit_action_finite(&f, &SteinbergElement::indicator(&f, &g, &[arrow]), &ObjectVector::basis(&f, &g, 0)).unwrap();
    assert_eq!(out, ObjectVector::basis(&f, &g, 1));
    let v = ObjectVector { coeffs: vec![f.from_int(3), f.from_int(-2)] };
    assert_eq!(orbit_action_finite(&f, &SteinbergElement::unit(&f, &g), &v).unwrap(), v);
}

#[test]
fn every_nonzero_vector_generates_the_pair_module() {
    let g = arc(FiniteGroupoid::pair(2));
    for p in [2, 3, 5] {
        let f = GaloisField::prime(p).unwrap();
        let elems = f.elements().unwrap();
        for a in &elems {
            for b in &elems {
                if f.is_zero(a) && f.is_zero(b) {
                    continue;
                }
                let w = ObjectVector { coeffs: vec![*a, *b] };
                let mut span = Subspace::new(2);
                for arrow in 0..g.arrow_count() {
                    let image = orbit_action_finite(&f, &SteinbergElement::indicator(&f, &g, &[arrow]), &w).unwrap();
                    span.insert(&f, &image.coeffs);
                }
                assert_eq!(span.dim(), 2);
            }
        }
        assert_eq!(is_simple_orbit_module(&f, &g, &[0, 1]), Some(true));
    }
}

#[test]
fn entrance_generator_moves_the_loop_path() {
    let g = fixtures::loop_with_entrance();
    let [a, c] = ["a", "c"].map(|n| g.edge_by_name(n).unwrap());
    let w = g.vertex("w").unwrap();
    let x = LassoPath::periodic(&g, &[c]).unwrap();
    let gen = KPGenerator::new(&g, vec![a], vec![], w).unwrap();
    let y = kp_orbit_action(&g, &gen, &x).unwrap().unwrap();
    assert_ne!(y, x);
    assert_eq!(y, x.prepend(&g, &[a]).unwrap());
    assert_eq!(kp_orbit_action(&g, &gen.adjoint(), &y).unwrap(), Some(x));
}

#[test]
fn generator_ranks_on_named_graphs() {
    let tree = fixtures::binary_tree(3);
    let scc = scc_decompose(&tree);
    for x in kpclass::topology::orbit_representatives(&tree, &scc) {
        for v in 0..tree.vertex_count() {
            assert!(generator_rank(&tree, &KPGenerator::vertex_projection(v), &x).is_finite());
        }
    }
    let eight = fixtures::figure_eight();
    let e = eight.edge_by_name("e").unwrap();
    let w = eight.vertex("w").unwrap();
    let x = LassoPath::periodic(&eight, &[e]).unwrap();
    let rank = generator_rank(&eight, &KPGenerator::vertex_projection(w), &x);
    assert_eq!(rank, Cardinality::Infinite);
    assert_eq!(rank, orbit_intersection_size(&eight, &x, w).cardinality);
    let loops = fixtures::two_separate_loops();
    let d = loops.edge_by_name("d").unwrap();
    let u = loops.vertex("u").unwrap();
    let y = LassoPath::periodic(&loops, &[d]).unwrap();
    assert_eq!(generator_rank(&loops, &KPGenerator::vertex_projection(u), &y), Cardinality::Finite(0));
}

#[test]
fn restriction_examples() {
    let g = arc(FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2), FiniteGroupoid::transitive(1, &Group::cyclic(3), 0)]));
    let f = Rationals;
    let x = SteinbergElement::random(&f, &g, &mut ChaCha8Rng::seed_from_u64(5));
    let all: Vec<usize> = (0..g.object_count()).collect();
    let full = restrict_to_closed_invariant(&x, &all).unwrap();
    assert_eq!(full.coeffs(), x.coeffs());
    let report = verify_restriction(&f, &g, &[0, 1]).unwrap();
    assert!(report.passed());
    assert_eq!(report.kernel_dim, 3);
    let report = verify_restriction(&f, &g, &[2]).unwrap();
    assert!(report.passed());
    assert_eq!(report.kernel_dim, 4);
}

#[test]
fn commutant_of_orbit_modules_is_scalar() {
    assert_eq!(endo_dim_orbit(&FiniteGroupoid::pair(3)).unwrap(), 1);
    assert_eq!(endo_dim_orbit(&FiniteGroupoid::from_group(&Group::cyclic(2))).unwrap(), 1);
    assert_eq!(endo_dim_orbit(&FiniteGroupoid::transitive(2, &Group::cyclic(2), 1)).unwrap(), 1);
}

#[test]
fn associativity_exhaustive_up_to_twelve_arrows() {
    let f = GaloisField::prime(7).unwrap();
    let cases = [
        FiniteGroupoid::transitive(2, &Group::cyclic(3), 0),
        FiniteGroupoid::pair(3),
        six_arrow_groupoid(),
        FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2), FiniteGroupoid::from_group(&Group::cyclic(4))]),
    ];
    for g in cases {
        assert!(g.arrow_count() <= 12);
        let g = arc(g);
        let basis: Vec<_> = (0..g.arrow_count()).map(|a| SteinbergElement::indicator(&f, &g, &[a])).collect();
        for a in &basis {
            for b in &basis {
                let ab = convolve(&f, a, b).unwrap();
                for c in &basis {
                    let left = convolve(&f, &ab, c).unwrap();
                    let right = convolve(&f, a, &convolve(&f, b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

fn medium_groupoid(choice: usize, seed: u64) -> FiniteGroupoid {
    match choice % 4 {
        0 => FiniteGroupoid::transitive(2, &Group::symmetric3(), seed),
        1 => FiniteGroupoid::transitive(3, &Group::cyclic(3), seed),
        2 => FiniteGroupoid::transitive(2, &Group::quaternion8(), seed),
        _ => FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(2), FiniteGroupoid::transitive(2, &Group::dihedral4(), seed)]),
    }
}

/// Some vertices' worth of boundary paths for each orbit: the connectors of
/// length at most two attached to every representative.
fn sample_paths(g: &Graph) -> Vec<LassoPath> {
    let mut reps: Vec<LassoPath> =
        simple_cycles(g, 64).iter().map(|c| LassoPath::periodic(g, c).unwrap()).collect();
    reps.extend(g.termini().into_iter().map(|t| LassoPath::vertex(g, t).unwrap()));
    let mut out = Vec::new();
    for x in &reps {
        for v in 0..g.vertex_count() {
            let aut = connector_automaton(g, x, v);
            out.extend(aut.words(2).iter().filter_map(|w| aut.decode(g, w)));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn generators(g: &Graph, max_len: usize) -> Vec<KPGenerator> {
    let mut by_source: Vec<Vec<Vec<usize>>> = vec![Vec::new(); g.vertex_count()];
    for v in 0..g.vertex_count() {
        by_source[v].push(Vec::new());
    }
    let mut layer: Vec<Vec<usize>> = (0..g.edge_count()).map(|e| vec![e]).collect();
    for _ in 0..max_len {
        for p in &layer {
            by_source[g.edge(*p.last().unwrap()).src].push(p.clone());
        }
        layer = layer
            .iter()
            .flat_map(|p| g.continuations(g.edge(*p.last().unwrap()).src).iter().map(move |&e| [p.as_slice(), &[e]].concat()))
            .collect();
    }
    let mut out = Vec::new();
    for (v, paths) in by_source.iter().enumerate() {
        for mu in paths {
            for nu in paths {
                out.push(KPGenerator::new(g, mu.clone(), nu.clone(), v).unwrap());
            }
        }
    }
    out
}

#[test]
fn kp_action_respects_generator_products() {
    let graphs: Vec<Graph> = small_graphs(2, 3).into_iter().chain(fixtures::canonical().into_iter().map(|(_, g)| g)).collect();
    let mut checked = 0usize;
    for g in &graphs {
        let paths = sample_paths(g);
        let gens = generators(g, 2);
        for a in &gens {
            for b in &gens {
                let product = a.compose(g, b);
                for y in &paths {
                    let two_step = match kp_orbit_action(g, b, y).unwrap() {
                        Some(z) => kp_orbit_action(g, a, &z).unwrap(),
                        None => None,
                    };
                    let direct = match &product {
                        Some(p) => kp_orbit_action(g, p, y).unwrap(),
                        None => None,
                    };
                    assert_eq!(two_step, direct, "{} ∗ {} on {}", a.display(g), b.display(g), y.display(g));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn generator_ranks_are_finite_exactly_when_m_holds() {
    for g in small_graphs(3, 4) {
        let mut reps: Vec<LassoPath> = simple_cycles(&g, 256).iter().map(|c| LassoPath::periodic(&g, c).unwrap()).collect();
        reps.extend(g.termini().into_iter().map(|t| LassoPath::vertex(&g, t).unwrap()));
        let all_finite = reps
            .iter()
            .all(|x| (0..g.vertex_count()).all(|v| generator_rank(&g, &KPGenerator::vertex_projection(v), x).is_finite()));
        assert_eq!(all_finite, check_condition_m(&g).holds, "{:?}", g.to_document());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity_on_random_triples(choice in 0usize..4, seed in 0u64..1000) {
        let g = arc(medium_groupoid(choice, seed));
        prop_assert!(g.arrow_count() <= 40);
        let f = GaloisField::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| SteinbergElement::random(&f, &g, &mut rng));
        let left = convolve(&f, &convolve(&f, &a, &b).unwrap(), &c).unwrap();
        let right = convolve(&f, &a, &convolve(&f, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_is_an_anti_automorphism_of_order_two(choice in 0usize..4, seed in 0u64..1000) {
        let g = arc(medium_groupoid(choice, seed));
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SteinbergElement::random(&f, &g, &mut rng);
        let b = SteinbergElement::random(&f, &g, &mut rng);
        prop_assert_eq!(&involute(&involute(&a)), &a);
        let lhs = involute(&convolve(&f, &a, &b).unwrap());
        let rhs = convolve(&f, &involute(&b), &involute(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_is_multiplicative(seed in 0u64..1000) {
        let g = arc(FiniteGroupoid::disjoint_union(&[
            FiniteGroupoid::transitive(2, &Group::cyclic(2), seed),
            FiniteGroupoid::pair(2),
        ]));
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = SteinbergElement::random(&f, &g, &mut rng);
        let b = SteinbergElement::random(&f, &g, &mut rng);
        let lhs = restrict_to_closed_invariant(&convolve(&f, &a, &b).unwrap(), &[2, 3]).unwrap();
        let ra = restrict_to_closed_invariant(&a, &[2, 3]).unwrap();
        let rb = restrict_to_closed_invariant(&b, &[2, 3]).unwrap();
        prop_assert_eq!(lhs, convolve(&f, &ra, &rb).unwrap());
    }
}
