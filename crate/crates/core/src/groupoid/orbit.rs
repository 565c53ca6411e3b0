use std::sync::Arc;

use num_rational::BigRational;

use crate::error::GroupoidError;
use crate::field::{Field, Rationals};
use crate::matrix::{Matrix, Subspace};

use super::{FiniteGroupoid, ObjectId, SteinbergElement};

/// A vector in the span of the objects of a finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectVector<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> ObjectVector<E> {
    pub fn basis<F: Field<Elem = E>>(f: &F, g: &FiniteGroupoid, x: ObjectId) -> Self {
        let mut coeffs = vec![f.zero(); g.object_count()];
        coeffs[x] = f.one();
        Self { coeffs }
    }

    pub fn support<F: Field<Elem = E>>(&self, f: &F) -> Vec<ObjectId> {
        (0..self.coeffs.len()).filter(|&x| !f.is_zero(&self.coeffs[x])).collect()
    }
}

/// `a · v = Σ_γ a(γ) v(src γ) rng(γ)`, on vectors supported in one orbit.
pub fn orbit_action_finite<F: Field>(
    f: &F,
    a: &SteinbergElement<F::Elem>,
    v: &ObjectVector<F::Elem>,
) -> Result<ObjectVector<F::Elem>, GroupoidError> {
    let g = a.groupoid();
    if v.coeffs.len() != g.object_count() {
        return Err(GroupoidError::Malformed("vector length does not match the object count".into()));
    }
    let support = v.support(f);
    if let Some(&first) = support.first() {
        let orbit = g.orbits().into_iter().find(|o| o.contains(&first)).expect("every object has an orbit");
        if !support.iter().all(|x| orbit.contains(x)) {
            return Err(GroupoidError::SupportNotInOneOrbit);
        }
    }
    let mut out = vec![f.zero(); g.object_count()];
    for gamma in 0..g.arrow_count() {
        let (s, r) = (g.src(gamma), g.rng(gamma));
        if f.is_zero(&v.coeffs[s]) || f.is_zero(a.coeff(gamma)) {
            continue;
        }
        out[r] = f.add(&out[r], &f.mul(a.coeff(gamma), &v.coeffs[s]));
    }
    Ok(ObjectVector { coeffs: out })
}

/// The action of each arrow indicator on the orbit module over `orbit`, as
/// matrices acting on row vectors indexed by position in `orbit`.
pub fn orbit_module_matrices<F: Field>(f: &F, g: &FiniteGroupoid, orbit: &[ObjectId]) -> Vec<Matrix<F::Elem>> {
    let pos = |x: ObjectId| orbit.iter().position(|&o| o == x);
    (0..g.arrow_count())
        .filter_map(|gamma| {
            let (s, r) = (pos(g.src(gamma))?, pos(g.rng(gamma))?);
            let mut m = Matrix::zeros(f, orbit.len(), orbit.len());
            m.set(s, r, f.one());
            Some(m)
        })
        .collect()
}

/// Dimension of the commutant of the orbit-module action: the solutions of
/// `M A = A M` for every arrow matrix `M`.
pub fn endo_dim_orbit(g: &FiniteGroupoid) -> Result<usize, GroupoidError> {
    if !g.is_transitive() {
        return Err(GroupoidError::NotTransitive);
    }
    let f = Rationals;
    let orbit: Vec<ObjectId> = (0..g.object_count()).collect();
    let n = orbit.len();
    let mut equations: Vec<Vec<BigRational>> = Vec::new();
    for m in orbit_module_matrices(&f, g, &orbit) {
        // (MA − AM)[i][j] = Σ_k M[i][k] A[k][j] − A[i][k] M[k][j]
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![f.zero(); n * n];
                for k in 0..n {
                    row[k * n + j] = f.add(&row[k * n + j], m.get(i, k));
                    row[i * n + k] = f.sub(&row[i * n + k], m.get(k, j));
                }
                equations.push(row);
            }
        }
    }
    if equations.is_empty() {
        return Ok(n * n);
    }
    Ok(Matrix::from_rows(equations, n * n).nullspace(&f).len())
}

/// Whether every nonzero vector of the orbit module generates it. Enumerates
/// all vectors, so needs a finite field; `None` otherwise.
pub fn is_simple_orbit_module<F: Field>(f: &F, g: &Arc<FiniteGroupoid>, orbit: &[ObjectId]) -> Option<bool> {
    let elements = f.elements()?;
    let gens = orbit_module_matrices(f, g, orbit);
    let n = orbit.len();
    let mut v = vec![0usize; n];
    loop {
        let pos = v.iter().position(|&d| d + 1 < elements.len());
        let Some(pos) = pos else { return Some(true) };
        for d in &mut v[..pos] {
            *d = 0;
        }
        v[pos] += 1;
        let vector: Vec<F::Elem> = v.iter().map(|&d| elements[d].clone()).collect();
        let span = Subspace::spin(f, n, std::slice::from_ref(&vector), &gens);
        if span.dim() != n {
            return Some(false);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::group::Group;

    #[test]
    fn one_object_groups_have_trivial_commutant() {
        assert_eq!(endo_dim_orbit(&FiniteGroupoid::from_group(&Group::cyclic(2))).unwrap(), 1);
        let two = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(1), FiniteGroupoid::pair(1)]);
        assert_eq!(endo_dim_orbit(&two), Err(GroupoidError::NotTransitive));
    }

    #[test]
    fn support_must_lie_in_one_orbit() {
        let g = Arc::new(FiniteGroupoid::disjoint_union(&[FiniteGroupoid::pair(1), FiniteGroupoid::pair(1)]));
        let f = GaloisField::prime(3).unwrap();
        let v = ObjectVector { coeffs: vec![1, 1] };
        let unit = SteinbergElement::unit(&f, &g);
        assert_eq!(orbit_action_finite(&f, &unit, &v), Err(GroupoidError::SupportNotInOneOrbit));
    }

    #[test]
    fn pair_groupoid_module_is_simple() {
        let g = Arc::new(FiniteGroupoid::pair(3));
        let f = GaloisField::prime(3).unwrap();
        assert_eq!(is_simple_orbit_module(&f, &g, &[0, 1, 2]), Some(true));
        assert_eq!(is_simple_orbit_module(&Rationals, &g, &[0, 1, 2]), None);
    }
}
