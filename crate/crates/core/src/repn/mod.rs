//! Exact representation theory of finite groups and small matrix algebras over
//! finite fields: composition series by the MeatAxe, endomorphism rings, and
//! the Clifford, matrix-amplification and corner checks.
//!
//! These algebras are finite-dimensional, so the CCR ring predicate holds
//! trivially for them; the checks verify the supporting lemmas instead.

mod checks;
mod meataxe;
mod module;

use serde::Serialize;

use crate::error::RepnError;
use crate::field::{prime_power, Field, GaloisField, MAX_FIELD_ORDER};
use crate::group::{Group, MAX_GROUP_ORDER};
use crate::matrix::Matrix;

pub use checks::{
    clifford_check, corner_simples_check, matrix_amplification_check, AmplificationReport, CliffordReport, CornerFactor, CornerReport,
};
pub use meataxe::{chop, endo_dim, find_submodule, hom_dim, is_simple, CompositionSeries, Factor};
pub use module::{AlgebraBasis, FactorSummary, MatrixAlgebraModule};

/// Size limits and the MeatAxe seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepnConfig {
    pub max_group_order: usize,
    pub max_dim: usize,
    pub max_algebra_dim: usize,
    pub max_amplification: usize,
    pub retries: usize,
    pub seed: u64,
}

impl Default for RepnConfig {
    fn default() -> Self {
        Self { max_group_order: MAX_GROUP_ORDER, max_dim: 64, max_algebra_dim: 16, max_amplification: 4, retries: 64, seed: 0x6d65_6174 }
    }
}

/// What to do when the field does not split the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitPolicy {
    #[default]
    Ignore,
    Require,
    Extend,
}

/// Smallest `p^k` with `exponent | p^k − 1`, when that fits the field tables.
pub fn splitting_field_order(p: u64, exponent: usize) -> Option<u64> {
    let e = exponent as u64;
    if e == 0 || e.is_multiple_of(p) {
        return None;
    }
    let mut q = p;
    while q <= MAX_FIELD_ORDER {
        if (q - 1).is_multiple_of(e) {
            return Some(q);
        }
        q = q.checked_mul(p)?;
    }
    None
}

/// Whether `field` contains the `exponent`-th roots of unity.
pub fn splits(field: &GaloisField, group: &Group) -> bool {
    (field.size() - 1).is_multiple_of(group.exponent() as u64)
}

/// Applies `policy`, returning the field to work over.
pub fn choose_field(field: &GaloisField, group: &Group, policy: SplitPolicy) -> Result<GaloisField, RepnError> {
    if policy == SplitPolicy::Ignore || splits(field, group) {
        return Ok(field.clone());
    }
    let p = field.characteristic();
    let suggested = splitting_field_order(p, group.exponent())
        .ok_or(RepnError::CharacteristicDividesOrder { p, order: group.order() })?;
    // The splitting field must contain the given one.
    let k0 = field.degree();
    let (_, k) = prime_power(suggested).expect("prime power");
    let target = p.checked_pow(lcm(k0, k)).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(RepnError::NotSplitting {
        order: field.size(),
        exponent: group.exponent(),
        suggested,
    })?;
    match policy {
        SplitPolicy::Require => Err(RepnError::NotSplitting { order: field.size(), exponent: group.exponent(), suggested: target }),
        _ => Ok(GaloisField::of_order(target)?),
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn check_group(group: &Group, config: &RepnConfig) -> Result<(), RepnError> {
    if group.order() > config.max_group_order {
        return Err(RepnError::GroupTooLarge { order: group.order(), cap: config.max_group_order });
    }
    Ok(())
}

/// Permutation matrix of left multiplication by `g` on the group basis, acting
/// on row vectors: `e_h ↦ e_{gh}`.
fn left_multiplication(field: &GaloisField, group: &Group, g: usize) -> Matrix<u32> {
    let n = group.order();
    Matrix::from_fn(n, n, |h, k| if group.mul(g, h) == k { field.one() } else { field.zero() })
}

/// The regular module: one permutation matrix per group generator.
pub fn regular_module(group: &Group, field: &GaloisField, config: &RepnConfig) -> Result<MatrixAlgebraModule, RepnError> {
    check_group(group, config)?;
    if group.order() > config.max_dim {
        return Err(RepnError::DimensionTooLarge { dim: group.order(), cap: config.max_dim });
    }
    let gens = group.generators().iter().map(|&g| left_multiplication(field, group, g)).collect();
    MatrixAlgebraModule::new(field.clone(), group.order(), gens)
}

/// The regular module over the field chosen by `policy`.
pub fn regular_module_with_policy(
    group: &Group,
    field: &GaloisField,
    policy: SplitPolicy,
    config: &RepnConfig,
) -> Result<MatrixAlgebraModule, RepnError> {
    regular_module(group, &choose_field(field, group, policy)?, config)
}

/// Left-multiplication matrices of every group element, in element order.
pub fn element_matrices(group: &Group, field: &GaloisField) -> Vec<Matrix<u32>> {
    (0..group.order()).map(|g| left_multiplication(field, group, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_field_orders() {
        assert_eq!(splitting_field_order(5, 3), Some(25));
        assert_eq!(splitting_field_order(7, 6), Some(7));
        assert_eq!(splitting_field_order(3, 4), Some(9));
        assert_eq!(splitting_field_order(3, 6), None);
    }

    #[test]
    fn policy_extends_or_refuses() {
        let f5 = GaloisField::prime(5).unwrap();
        let c3 = Group::cyclic(3);
        assert_eq!(choose_field(&f5, &c3, SplitPolicy::Extend).unwrap().size(), 25);
        assert_eq!(
            choose_field(&f5, &c3, SplitPolicy::Require),
            Err(RepnError::NotSplitting { order: 5, exponent: 3, suggested: 25 })
        );
        assert_eq!(choose_field(&f5, &c3, SplitPolicy::Ignore).unwrap().size(), 5);
    }

    #[test]
    fn regular_module_shapes() {
        let f7 = GaloisField::prime(7).unwrap();
        let cfg = RepnConfig::default();
        let c2 = regular_module(&Group::cyclic(2), &f7, &cfg).unwrap();
        assert_eq!((c2.dim, c2.generators.len()), (2, 1));
        let all = element_matrices(&Group::cyclic(2), &f7);
        assert_eq!(all[0], Matrix::identity(&f7, 2));
        assert_eq!(all[1], Matrix::from_rows(vec![vec![0, 1], vec![1, 0]], 2));
        let s3 = regular_module(&Group::symmetric3(), &f7, &cfg).unwrap();
        assert_eq!((s3.dim, s3.generators.len()), (6, 2));
    }
}
