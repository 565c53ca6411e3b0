use serde::Serialize;

use crate::error::RepnError;
use crate::field::{Field, GaloisField};
use crate::group::Group;
use crate::matrix::{Matrix, Subspace};

use super::meataxe::{chop, hom_dim, is_simple, CompositionSeries};
use super::module::{AlgebraBasis, FactorSummary, MatrixAlgebraModule};
use super::{check_group, regular_module, RepnConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordReport {
    pub group: String,
    pub subgroup: Vec<String>,
    pub field: String,
    pub index: usize,
    pub factors: Vec<FactorSummary>,
    pub max_dim: usize,
    pub passed: bool,
}

/// Every simple module of `group` over a splitting field has dimension at most
/// the index of a normal abelian subgroup.
pub fn clifford_check(group: &Group, subgroup: &[usize], field: &GaloisField, config: &RepnConfig) -> Result<CliffordReport, RepnError> {
    check_group(group, config)?;
    if !group.is_subgroup(subgroup) {
        return Err(RepnError::NotSubgroup);
    }
    if !group.is_normal(subgroup) {
        return Err(RepnError::NotNormal);
    }
    if !group.is_abelian_set(subgroup) {
        return Err(RepnError::NotAbelian);
    }
    let p = field.characteristic();
    if (group.order() as u64).is_multiple_of(p) {
        return Err(RepnError::CharacteristicDividesOrder { p, order: group.order() });
    }
    let series = chop(&regular_module(group, field, config)?, config)?;
    if let Some(bad) = series.factors.iter().find(|x| x.endo_dim != 1) {
        return Err(RepnError::NonSplittingFactor { dim: bad.module.dim, endo_dim: bad.endo_dim });
    }
    let index = group.order() / subgroup.len();
    let max_dim = series.factors.iter().map(|x| x.module.dim).max().unwrap_or(0);
    let mut names: Vec<String> = subgroup.iter().map(|&h| group.element_name(h).to_string()).collect();
    names.sort();
    Ok(CliffordReport {
        group: group.name().to_string(),
        subgroup: names,
        field: field.name(),
        index,
        factors: series.summary(),
        max_dim,
        passed: max_dim <= index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmplificationReport {
    pub n: usize,
    pub algebra_dim: usize,
    pub factors: Vec<FactorSummary>,
    pub amplified: Vec<FactorSummary>,
    pub passed: bool,
}

fn simple_types(series: &CompositionSeries) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = series.factors.iter().map(|x| (x.module.dim, x.endo_dim)).collect();
    out.sort_unstable();
    out
}

/// Compares the simple modules of the algebra generated by `module` with those
/// of `M_n` of it: dimensions scale by `n` and endomorphism rings agree.
pub fn matrix_amplification_check(module: &MatrixAlgebraModule, n: usize, config: &RepnConfig) -> Result<AmplificationReport, RepnError> {
    if n > config.max_amplification {
        return Err(RepnError::AmplificationTooLarge { n, cap: config.max_amplification });
    }
    if n == 0 {
        return Err(RepnError::Dimension("amplification degree must be positive".into()));
    }
    let basis = AlgebraBasis::generate(&module.field, module.dim, &module.generators, config.max_algebra_dim)?;
    let regular = basis.regular_module(&module.generators);
    let base = chop(&regular, config)?;
    let amplified = chop(&regular.amplify(n), config)?;
    let expected: Vec<(usize, usize)> = simple_types(&base).into_iter().map(|(d, e)| (n * d, e)).collect();
    Ok(AmplificationReport {
        n,
        algebra_dim: basis.dim(),
        passed: simple_types(&amplified) == expected,
        factors: base.summary(),
        amplified: amplified.summary(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerFactor {
    pub dim: usize,
    pub endo_dim: usize,
    /// `dim Ve`.
    pub corner_dim: usize,
    /// Whether `Ve` is zero or simple over the corner.
    pub simple: bool,
    /// Endomorphism dimension of `Ve` over the corner; zero when `Ve = 0`.
    pub corner_endo_dim: usize,
    /// Index into `corner_simples` of the simple isomorphic to `Ve`.
    pub matches: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerReport {
    pub algebra_dim: usize,
    pub corner_algebra_dim: usize,
    pub factors: Vec<CornerFactor>,
    pub corner_simples: Vec<FactorSummary>,
    pub passed: bool,
}

/// Restriction of the corner elements `e b e` to the invariant subspace `Ve`.
fn corner_module(field: &GaloisField, dim: usize, e: &Matrix<u32>, basis_images: &[Matrix<u32>]) -> MatrixAlgebraModule {
    let mut ve = Subspace::new(dim);
    for r in e.to_rows() {
        ve.insert(field, &r);
    }
    let gens = basis_images.iter().map(|b| e.mul(field, b).mul(field, e)).collect();
    MatrixAlgebraModule { field: field.clone(), dim, generators: gens }.submodule(&ve)
}

/// For each simple module `V` of the algebra, `Ve` is zero or a simple module
/// of the corner `eAe` with the same endomorphism ring, and every simple
/// corner module arises exactly once this way.
pub fn corner_simples_check(module: &MatrixAlgebraModule, e: &Matrix<u32>, config: &RepnConfig) -> Result<CornerReport, RepnError> {
    let f = &module.field;
    if e.rows() != module.dim || e.cols() != module.dim {
        return Err(RepnError::Dimension("idempotent has the wrong size".into()));
    }
    if e.mul(f, e) != *e {
        return Err(RepnError::NotIdempotent);
    }
    let basis = AlgebraBasis::generate(f, module.dim, &module.generators, config.max_algebra_dim)?;
    let e_coords = basis.coordinates(e).ok_or(RepnError::NotInAlgebra)?;
    let series = chop(&basis.regular_module(&module.generators), config)?;

    // The corner acts faithfully on Ve for the faithful module V we were given.
    let images: Vec<Matrix<u32>> = basis.elements.clone();
    let faithful = corner_module(f, module.dim, e, &images);
    let corner_basis = AlgebraBasis::generate(f, faithful.dim, &faithful.generators, config.max_algebra_dim)?;
    let corner_series = chop(&corner_basis.regular_module(&faithful.generators), config)?;
    // Factor generators stay indexed like `faithful.generators`.
    let corner_simples: Vec<&MatrixAlgebraModule> = corner_series.factors.iter().map(|x| &x.module).collect();

    let mut factors = Vec::new();
    let mut hit = vec![0usize; corner_simples.len()];
    for x in &series.factors {
        let w = &x.module;
        let e_w = basis.evaluate(&e_coords, &w.generators, w.dim);
        let images: Vec<Matrix<u32>> = (0..basis.dim())
            .map(|i| {
                let mut c = vec![f.zero(); basis.dim()];
                c[i] = f.one();
                basis.evaluate(&c, &w.generators, w.dim)
            })
            .collect();
        let we = corner_module(f, w.dim, &e_w, &images);
        let (simple, corner_endo_dim, matches) = if we.dim == 0 {
            (true, 0, None)
        } else {
            let simple = is_simple(&we, config)?;
            let mut matches = None;
            for (k, s) in corner_simples.iter().enumerate() {
                if s.dim == we.dim && hom_dim(s, &we)? > 0 {
                    matches = Some(k);
                    hit[k] += 1;
                    break;
                }
            }
            (simple, hom_dim(&we, &we)?, matches)
        };
        factors.push(CornerFactor { dim: w.dim, endo_dim: x.endo_dim, corner_dim: we.dim, simple, corner_endo_dim, matches });
    }
    let passed = factors.iter().all(|c| c.simple && (c.corner_dim == 0 || (c.matches.is_some() && c.corner_endo_dim == c.endo_dim)))
        && hit.iter().all(|&h| h == 1);
    Ok(CornerReport {
        algebra_dim: basis.dim(),
        corner_algebra_dim: corner_basis.dim(),
        factors,
        corner_simples: corner_series.summary(),
        passed,
    })
}
