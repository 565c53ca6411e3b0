use kpclass::error::RepnError;
use kpclass::field::{Field, GaloisField};
use kpclass::group::Group;
use kpclass::matrix::Matrix;
use kpclass::repn::*;
use proptest::prelude::*;

fn gf(q: u64) -> GaloisField {
    GaloisField::of_order(q).unwrap()
}

fn dims(series: &CompositionSeries) -> Vec<(usize, usize)> {
    series.factors.iter().map(|x| (x.module.dim, x.multiplicity)).collect()
}

fn cfg() -> RepnConfig {
    RepnConfig::default()
}

#[test]
fn s3_over_f7_has_two_linear_and_one_plane_factor() {
    let m = regular_module(&Group::symmetric3(), &gf(7), &cfg()).unwrap();
    let s = chop(&m, &cfg()).unwrap();
    assert_eq!(dims(&s), vec![(1, 1), (1, 1), (2, 2)]);
    assert_eq!(s.total_dim(), 6);
    assert!(s.factors.iter().all(|x| x.endo_dim == 1));
}

#[test]
fn c3_over_f7_splits_into_cube_roots_of_unity() {
    let f = gf(7);
    let roots = (0..7u32).filter(|&t| f.mul(&f.mul(&t, &t), &t) == f.one()).count();
    let s = chop(&regular_module(&Group::cyclic(3), &f, &cfg()).unwrap(), &cfg()).unwrap();
    assert_eq!(s.factors.len(), roots);
    assert!(s.factors.iter().all(|x| x.module.dim == 1 && x.multiplicity == 1));
}

#[test]
fn simple_input_is_its_own_factor() {
    let f = gf(7);
    // charpoly x²+x+1 has no root mod 5, so no line is invariant
    let f5 = gf(5);
    let rot = Matrix::from_rows(vec![vec![0, 1], vec![4, 4]], 2);
    let m = MatrixAlgebraModule::new(f5, 2, vec![rot]).unwrap();
    let s = chop(&m, &cfg()).unwrap();
    assert_eq!(s.factors.len(), 1);
    assert_eq!(s.factors[0].module, m);
    let one = MatrixAlgebraModule::new(f.clone(), 1, vec![Matrix::identity(&f, 1)]).unwrap();
    assert_eq!(endo_dim(&one, &cfg()).unwrap(), 1);
}

#[test]
fn c4_over_f3_has_a_non_split_plane() {
    let f = gf(3);
    let irreducible = (0..3u32).all(|t| f.add(&f.mul(&t, &t), &f.one()) != 0);
    assert!(irreducible);
    let s = chop(&regular_module(&Group::cyclic(4), &f, &cfg()).unwrap(), &cfg()).unwrap();
    let plane = s.factors.iter().find(|x| x.module.dim == 2).unwrap();
    assert_eq!(endo_dim(&plane.module, &cfg()).unwrap(), 2);
    assert_eq!(dims(&s), vec![(1, 1), (1, 1), (2, 1)]);
}

#[test]
fn endo_dim_rejects_reducible_modules() {
    let m = regular_module(&Group::cyclic(2), &gf(7), &cfg()).unwrap();
    assert_eq!(endo_dim(&m, &cfg()), Err(RepnError::NotSimple));
}

#[test]
fn splitting_extension_for_c3_over_f5() {
    let c3 = Group::cyclic(3);
    let k = (1..).find(|&k| (5u64.pow(k) - 1) % 3 == 0).unwrap();
    let m = regular_module_with_policy(&c3, &gf(5), SplitPolicy::Extend, &cfg()).unwrap();
    assert_eq!(m.field.size(), 5u64.pow(k));
    assert!(matches!(
        regular_module_with_policy(&c3, &gf(5), SplitPolicy::Require, &cfg()),
        Err(RepnError::NotSplitting { suggested: 25, .. })
    ));
    let s = chop(&m, &cfg()).unwrap();
    assert_eq!(s.factors.len(), 3);
}

#[test]
fn clifford_examples() {
    let s3 = Group::symmetric3();
    let a3 = s3.closure(&[s3.generators()[1]]);
    let r = clifford_check(&s3, &a3, &gf(7), &cfg()).unwrap();
    assert!(r.passed);
    assert_eq!((r.index, r.max_dim), (2, 2));

    let d4 = Group::dihedral4();
    let c4 = d4.closure(&[d4.generators()[0]]);
    let r = clifford_check(&d4, &c4, &gf(9), &cfg()).unwrap();
    assert!(r.passed);
    assert_eq!(r.max_dim, 2);
    assert_eq!(r.factors.iter().filter(|x| x.dim == 2).count(), 1);

    let c6 = Group::cyclic(6);
    let all: Vec<usize> = (0..6).collect();
    let r = clifford_check(&c6, &all, &gf(7), &cfg()).unwrap();
    assert!(r.passed && r.max_dim == 1);
}

#[test]
fn clifford_preconditions() {
    let s3 = Group::symmetric3();
    let swap = s3.closure(&[s3.generators()[0]]);
    assert_eq!(clifford_check(&s3, &swap, &gf(7), &cfg()), Err(RepnError::NotNormal));
    let all: Vec<usize> = (0..6).collect();
    assert_eq!(clifford_check(&s3, &all, &gf(7), &cfg()), Err(RepnError::NotAbelian));
    assert_eq!(clifford_check(&s3, &[s3.generators()[1]], &gf(7), &cfg()).unwrap_err(), RepnError::NotSubgroup);
    let a3 = s3.closure(&[s3.generators()[1]]);
    assert!(matches!(clifford_check(&s3, &a3, &gf(3), &cfg()), Err(RepnError::CharacteristicDividesOrder { .. })));
    let c4 = Group::cyclic(4);
    let all: Vec<usize> = (0..4).collect();
    assert_eq!(clifford_check(&c4, &all, &gf(3), &cfg()), Err(RepnError::NonSplittingFactor { dim: 2, endo_dim: 2 }));
}

#[test]
fn amplification_examples() {
    let m = regular_module(&Group::cyclic(2), &gf(5), &cfg()).unwrap();
    let r = matrix_amplification_check(&m, 3, &cfg()).unwrap();
    assert!(r.passed);
    assert_eq!(r.amplified.iter().map(|x| x.dim).collect::<Vec<_>>(), vec![3, 3]);

    let f7 = gf(7);
    let scalar = MatrixAlgebraModule::new(f7, 1, vec![]).unwrap();
    let r = matrix_amplification_check(&scalar, 2, &cfg()).unwrap();
    assert!(r.passed);
    assert_eq!(r.amplified.iter().map(|x| x.dim).collect::<Vec<_>>(), vec![2]);

    let c4 = regular_module(&Group::cyclic(4), &gf(3), &cfg()).unwrap();
    let r = matrix_amplification_check(&c4, 2, &cfg()).unwrap();
    assert!(r.passed);
    assert!(r.amplified.iter().any(|x| x.dim == 4 && x.endo_dim == 2));

    assert!(matches!(matrix_amplification_check(&m, 5, &cfg()), Err(RepnError::AmplificationTooLarge { .. })));
}

#[test]
fn corner_examples() {
    let f5 = gf(5);
    let gens = vec![Matrix::unit(&f5, 2, 0, 0), Matrix::unit(&f5, 2, 0, 1), Matrix::unit(&f5, 2, 1, 0)];
    let m2 = MatrixAlgebraModule::new(f5.clone(), 2, gens).unwrap();
    let r = corner_simples_check(&m2, &Matrix::unit(&f5, 2, 0, 0), &cfg()).unwrap();
    assert!(r.passed);
    assert_eq!(r.factors.iter().map(|c| (c.dim, c.corner_dim)).collect::<Vec<_>>(), vec![(2, 1)]);
    assert_eq!(r.corner_algebra_dim, 1);

    let f7 = gf(7);
    let s3 = Group::symmetric3();
    let m = regular_module(&s3, &f7, &cfg()).unwrap();
    let elems = element_matrices(&s3, &f7);
    let a3 = s3.closure(&[s3.generators()[1]]);
    let third = f7.inv(&f7.from_int(3)).unwrap();
    let e = a3.iter().fold(Matrix::zeros(&f7, 6, 6), |acc, &h| acc.add(&f7, &elems[h])).scale(&f7, &third);
    let r = corner_simples_check(&m, &e, &cfg()).unwrap();
    assert!(r.passed);
    // the A3-average kills the plane and keeps both linear characters
    assert_eq!(r.factors.iter().map(|c| c.corner_dim).collect::<Vec<_>>(), vec![1, 1, 0]);

    let r = corner_simples_check(&m, &Matrix::identity(&f7, 6), &cfg()).unwrap();
    assert!(r.passed);
    assert!(r.factors.iter().all(|c| c.corner_dim == c.dim));

    let bad = Matrix::unit(&f7, 6, 0, 1);
    assert_eq!(corner_simples_check(&m, &bad, &cfg()), Err(RepnError::NotIdempotent));
}

#[test]
fn caps_are_configuration() {
    let small = RepnConfig { max_dim: 4, ..RepnConfig::default() };
    assert!(matches!(regular_module(&Group::symmetric3(), &gf(7), &small), Err(RepnError::DimensionTooLarge { .. })));
    let tiny = RepnConfig { max_group_order: 3, ..RepnConfig::default() };
    assert!(matches!(regular_module(&Group::cyclic(4), &gf(5), &tiny), Err(RepnError::GroupTooLarge { .. })));
}

fn preset_groups() -> Vec<Group> {
    vec![
        Group::trivial(),
        Group::cyclic(2),
        Group::cyclic(3),
        Group::cyclic(4),
        Group::cyclic(5),
        Group::cyclic(6),
        Group::symmetric3(),
        Group::dihedral4(),
        Group::quaternion8(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn chop_dimensions_add_up(gi in 0usize..9, qi in 0usize..6) {
        let g = &preset_groups()[gi];
        let q = [2u64, 3, 4, 5, 7, 9][qi];
        let m = regular_module(g, &gf(q), &cfg()).unwrap();
        let s = chop(&m, &cfg()).unwrap();
        prop_assert_eq!(s.total_dim(), m.dim);
    }

    #[test]
    fn factors_rechop_to_themselves_when_semisimple(gi in 0usize..9, qi in 0usize..4) {
        let g = &preset_groups()[gi];
        let q = [5u64, 7, 11, 13][qi];
        prop_assume!(!(g.order() as u64).is_multiple_of(q));
        let s = chop(&regular_module(g, &gf(q), &cfg()).unwrap(), &cfg()).unwrap();
        for x in &s.factors {
            let again = chop(&x.module, &cfg()).unwrap();
            prop_assert_eq!(again.factors.len(), 1);
            prop_assert_eq!(&again.factors[0].module, &x.module);
        }
    }

    #[test]
    fn schur_over_splitting_fields(gi in 0usize..9, pi in 0usize..3) {
        let g = &preset_groups()[gi];
        let p = [5u64, 7, 13][pi];
        prop_assume!(!(g.order() as u64).is_multiple_of(p));
        let m = regular_module_with_policy(g, &gf(p), SplitPolicy::Extend, &cfg()).unwrap();
        let s = chop(&m, &cfg()).unwrap();
        prop_assert!(s.factors.iter().all(|x| x.endo_dim == 1));
    }

    #[test]
    fn chop_is_deterministic(gi in 0usize..9, seed in any::<u64>()) {
        let g = &preset_groups()[gi];
        let c = RepnConfig { seed, ..RepnConfig::default() };
        let m = regular_module(g, &gf(7), &c).unwrap();
        prop_assert_eq!(chop(&m, &c).unwrap(), chop(&m, &c).unwrap());
    }
}
