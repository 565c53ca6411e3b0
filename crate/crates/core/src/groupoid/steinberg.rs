use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::GroupoidError;
use crate::field::Field;
use crate::matrix::Matrix;

use super::{ArrowId, FiniteGroupoid, ObjectId};

/// A function from arrows to scalars. The groupoid is finite and discrete, so
/// these are all of its convolution algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergElement<E> {
    groupoid: Arc<FiniteGroupoid>,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> SteinbergElement<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, g: &Arc<FiniteGroupoid>) -> Self {
        Self { groupoid: Arc::clone(g), coeffs: vec![f.zero(); g.arrow_count()] }
    }

    pub fn from_coeffs(g: &Arc<FiniteGroupoid>, coeffs: Vec<E>) -> Result<Self, GroupoidError> {
        if coeffs.len() != g.arrow_count() {
            return Err(GroupoidError::Malformed(format!("{} coefficients for {} arrows", coeffs.len(), g.arrow_count())));
        }
        Ok(Self { groupoid: Arc::clone(g), coeffs })
    }

    /// `1_U` for a set of arrows `U`.
    pub fn indicator<F: Field<Elem = E>>(f: &F, g: &Arc<FiniteGroupoid>, set: &[ArrowId]) -> Self {
        let mut out = Self::zero(f, g);
        for &a in set {
            out.coeffs[a] = f.one();
        }
        out
    }

    /// `1_{𝒢⁰}`, the unit of the algebra.
    pub fn unit<F: Field<Elem = E>>(f: &F, g: &Arc<FiniteGroupoid>) -> Self {
        Self::indicator(f, g, g.units())
    }

    pub fn random<F: Field<Elem = E>, R: rand::Rng + ?Sized>(f: &F, g: &Arc<FiniteGroupoid>, rng: &mut R) -> Self {
        Self { groupoid: Arc::clone(g), coeffs: (0..g.arrow_count()).map(|_| f.random(rng)).collect() }
    }

    /// Parses a map from arrow names to scalars; absent arrows are zero.
    pub fn from_names<F: Field<Elem = E>>(
        f: &F,
        g: &Arc<FiniteGroupoid>,
        map: &BTreeMap<String, String>,
    ) -> Result<Self, GroupoidError> {
        let mut out = Self::zero(f, g);
        for (name, value) in map {
            let a = g.arrow(name)?;
            out.coeffs[a] = f.parse(value).map_err(|_| GroupoidError::BadCoefficient(value.clone()))?;
        }
        Ok(out)
    }

    /// Nonzero coefficients keyed by arrow name.
    pub fn to_names<F: Field<Elem = E>>(&self, f: &F) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(a, c)| (self.groupoid.arrow_data(a).name.clone(), f.format(c)))
            .collect()
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, a: ArrowId) -> &E {
        &self.coeffs[a]
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, GroupoidError> {
        same_groupoid(self, other)?;
        Ok(Self { groupoid: Arc::clone(&self.groupoid), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect() })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self { groupoid: Arc::clone(&self.groupoid), coeffs: self.coeffs.iter().map(|a| f.mul(c, a)).collect() }
    }

    pub fn support(&self, f: &impl Field<Elem = E>) -> Vec<ArrowId> {
        (0..self.coeffs.len()).filter(|&a| !f.is_zero(&self.coeffs[a])).collect()
    }
}

fn same_groupoid<E>(a: &SteinbergElement<E>, b: &SteinbergElement<E>) -> Result<(), GroupoidError> {
    if Arc::ptr_eq(&a.groupoid, &b.groupoid) || a.groupoid == b.groupoid {
        Ok(())
    } else {
        Err(GroupoidError::MismatchedGroupoids)
    }
}

/// `(a ∗ b)(γ) = Σ_{src α = src γ} a(γα⁻¹) b(α)`.
pub fn convolve<F: Field>(
    f: &F,
    a: &SteinbergElement<F::Elem>,
    b: &SteinbergElement<F::Elem>,
) -> Result<SteinbergElement<F::Elem>, GroupoidError> {
    same_groupoid(a, b)?;
    let g = &a.groupoid;
    let coeffs = (0..g.arrow_count())
        .map(|gamma| {
            g.arrows_from(g.src(gamma)).fold(f.zero(), |acc, alpha| {
                let beta = g.compose(gamma, g.inverse(alpha)).expect("γα⁻¹ is composable");
                if f.is_zero(&b.coeffs[alpha]) {
                    acc
                } else {
                    f.add(&acc, &f.mul(&a.coeffs[beta], &b.coeffs[alpha]))
                }
            })
        })
        .collect();
    Ok(SteinbergElement { groupoid: Arc::clone(g), coeffs })
}

/// `a*(γ) = a(γ⁻¹)`.
pub fn involute<E: Clone>(a: &SteinbergElement<E>) -> SteinbergElement<E> {
    let g = &a.groupoid;
    SteinbergElement { groupoid: Arc::clone(g), coeffs: (0..g.arrow_count()).map(|x| a.coeffs[g.inverse(x)].clone()).collect() }
}

/// Restriction of coefficients to the reduction over an invariant object set.
pub fn restrict_to_closed_invariant<E: Clone>(
    a: &SteinbergElement<E>,
    set: &[ObjectId],
) -> Result<SteinbergElement<E>, GroupoidError> {
    let g = &a.groupoid;
    if !g.is_invariant(set) {
        return Err(GroupoidError::NotInvariant);
    }
    let (reduced, kept) = g.reduction(set);
    Ok(SteinbergElement { groupoid: Arc::new(reduced), coeffs: kept.iter().map(|&x| a.coeffs[x].clone()).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub homomorphism: bool,
    pub surjective: bool,
    pub kernel_dim: usize,
    /// Arrows whose source lies outside the invariant set.
    pub arrows_outside: usize,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.surjective && self.kernel_dim == self.arrows_outside
    }
}

/// Checks the restriction map on the arrow basis: multiplicativity on every
/// basis pair, surjectivity, and the kernel dimension from the rank.
pub fn verify_restriction<F: Field>(f: &F, g: &Arc<FiniteGroupoid>, set: &[ObjectId]) -> Result<RestrictionReport, GroupoidError> {
    let n = g.arrow_count();
    let basis: Vec<_> = (0..n).map(|a| SteinbergElement::indicator(f, g, &[a])).collect();
    let images = basis.iter().map(|b| restrict_to_closed_invariant(b, set)).collect::<Result<Vec<_>, _>>()?;
    let mut homomorphism = true;
    for a in 0..n {
        for b in 0..n {
            let lhs = restrict_to_closed_invariant(&convolve(f, &basis[a], &basis[b])?, set)?;
            homomorphism &= lhs == convolve(f, &images[a], &images[b])?;
        }
    }
    let m = images.first().map_or(0, |i| i.coeffs.len());
    let map = Matrix::from_rows(images.iter().map(|i| i.coeffs.clone()).collect(), m);
    let rank = map.rank(f);
    Ok(RestrictionReport {
        homomorphism,
        surjective: rank == m,
        kernel_dim: n - rank,
        arrows_outside: (0..n).filter(|&a| !set.contains(&g.src(a))).count(),
    })
}
