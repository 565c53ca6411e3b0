use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RepnError;
use crate::field::{Field, GaloisField};
use crate::matrix::{Matrix, Subspace};
use crate::poly;

use super::module::{FactorSummary, MatrixAlgebraModule};
use super::RepnConfig;

/// One isomorphism class of composition factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub module: MatrixAlgebraModule,
    pub multiplicity: usize,
    pub endo_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    pub module_dim: usize,
    /// Sorted by dimension, then endomorphism dimension, then discovery order.
    pub factors: Vec<Factor>,
}

impl CompositionSeries {
    pub fn summary(&self) -> Vec<FactorSummary> {
        self.factors
            .iter()
            .map(|x| FactorSummary { dim: x.module.dim, multiplicity: x.multiplicity, endo_dim: x.endo_dim })
            .collect()
    }

    /// `Σ dim × multiplicity`.
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|x| x.module.dim * x.multiplicity).sum()
    }
}

fn random_element(m: &MatrixAlgebraModule, rng: &mut ChaCha8Rng) -> Matrix<u32> {
    let f = &m.field;
    let mut pool: Vec<Matrix<u32>> = m.generators.clone();
    pool.push(Matrix::identity(f, m.dim));
    for _ in 0..pool.len().min(4) {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        pool.push(pool[i].mul(f, &pool[j]));
    }
    pool.iter().fold(Matrix::zeros(f, m.dim, m.dim), |acc, x| acc.add(f, &x.scale(f, &f.random(rng))))
}

/// One round of Norton's test with algebra element `a`. `Ok(Some)` is a proper
/// submodule, `Ok(None)` proves simplicity, `Err(())` is inconclusive.
fn norton(m: &MatrixAlgebraModule, a: &Matrix<u32>) -> Result<Option<Subspace<u32>>, ()> {
    let f = &m.field;
    let n = m.dim;
    let mut factors = poly::factor(f, &a.charpoly(f));
    factors.sort_by_key(|(p, _)| p.len());
    let transposed = m.transposed();
    for (p, _) in factors {
        let pa = a.eval_poly(f, &p);
        let kernel = pa.left_nullspace(f);
        let s = Subspace::spin(f, n, &kernel[..1], &m.generators);
        if s.dim() < n {
            return Ok(Some(s));
        }
        let dual_kernel = pa.nullspace(f);
        let w = Subspace::spin(f, n, &dual_kernel[..1], &transposed);
        if w.dim() < n {
            return Ok(Some(annihilator(f, &w)));
        }
        if kernel.len() == p.len() - 1 {
            return Ok(None);
        }
    }
    Err(())
}

/// `{v : v·wᵀ = 0 for every w in w}`, invariant when `w` is invariant under the
/// transposed action.
fn annihilator(f: &GaloisField, w: &Subspace<u32>) -> Subspace<u32> {
    let mut s = Subspace::new(w.ambient());
    for v in w.to_matrix().nullspace(f) {
        s.insert(f, &v);
    }
    s
}

/// A proper nonzero submodule, or `None` when the module is simple.
pub fn find_submodule(m: &MatrixAlgebraModule, config: &RepnConfig, rng: &mut ChaCha8Rng) -> Result<Option<Subspace<u32>>, RepnError> {
    if m.dim <= 1 {
        return Ok(None);
    }
    for _ in 0..config.retries {
        if let Ok(found) = norton(m, &random_element(m, rng)) {
            return Ok(found);
        }
    }
    // Deterministic probes: each generator and each unit vector.
    let f = &m.field;
    for g in &m.generators {
        if let Ok(found) = norton(m, g) {
            return Ok(found);
        }
    }
    for k in 0..m.dim {
        let mut e = vec![0; m.dim];
        e[k] = f.one();
        let s = Subspace::spin(f, m.dim, &[e], &m.generators);
        if s.dim() < m.dim {
            return Ok(Some(s));
        }
    }
    Err(RepnError::Undecided(config.retries))
}

pub fn is_simple(m: &MatrixAlgebraModule, config: &RepnConfig) -> Result<bool, RepnError> {
    Ok(m.dim > 0 && find_submodule(m, config, &mut ChaCha8Rng::seed_from_u64(config.seed))?.is_none())
}

/// `dim Hom(a, b)`: solutions of `A_g X = X B_g` for every generator.
pub fn hom_dim(a: &MatrixAlgebraModule, b: &MatrixAlgebraModule) -> Result<usize, RepnError> {
    if a.generators.len() != b.generators.len() {
        return Err(RepnError::Dimension("modules have different generator counts".into()));
    }
    let f = &a.field;
    let (da, db) = (a.dim, b.dim);
    if da == 0 || db == 0 {
        return Ok(0);
    }
    let mut equations: Vec<Vec<u32>> = Vec::new();
    for (ga, gb) in a.generators.iter().zip(&b.generators) {
        for i in 0..da {
            for j in 0..db {
                let mut row = vec![0; da * db];
                for k in 0..da {
                    row[k * db + j] = f.add(&row[k * db + j], ga.get(i, k));
                }
                for k in 0..db {
                    row[i * db + k] = f.sub(&row[i * db + k], gb.get(k, j));
                }
                equations.push(row);
            }
        }
    }
    if equations.is_empty() {
        return Ok(da * db);
    }
    Ok(Matrix::from_rows(equations, da * db).nullspace(f).len())
}

/// Dimension of the endomorphism ring of a simple module.
pub fn endo_dim(m: &MatrixAlgebraModule, config: &RepnConfig) -> Result<usize, RepnError> {
    if !is_simple(m, config)? {
        return Err(RepnError::NotSimple);
    }
    hom_dim(m, m)
}

/// Composition factors with multiplicities.
pub fn chop(m: &MatrixAlgebraModule, config: &RepnConfig) -> Result<CompositionSeries, RepnError> {
    if m.dim > config.max_dim {
        return Err(RepnError::DimensionTooLarge { dim: m.dim, cap: config.max_dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut simples = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.dim == 0 {
            continue;
        }
        match find_submodule(&x, config, &mut rng)? {
            None => simples.push(x),
            Some(s) => {
                stack.push(x.quotient(&s));
                stack.push(x.submodule(&s));
            }
        }
    }
    let mut factors: Vec<Factor> = Vec::new();
    for s in simples {
        let mut matched = false;
        for fac in factors.iter_mut() {
            if fac.module.dim == s.dim && hom_dim(&fac.module, &s)? > 0 {
                fac.multiplicity += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            let endo_dim = hom_dim(&s, &s)?;
            factors.push(Factor { module: s, multiplicity: 1, endo_dim });
        }
    }
    factors.sort_by_key(|x| (x.module.dim, x.endo_dim));
    Ok(CompositionSeries { module_dim: m.dim, factors })
}
