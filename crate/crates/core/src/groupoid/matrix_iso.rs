use crate::error::GroupoidError;

use super::{ArrowId, FiniteGroupoid, ObjectId};

/// The isomorphism of a transitive groupoid's algebra with matrices over the
/// group algebra of the isotropy at `base`. Each arrow `γ: w → v` goes to
/// `(γ_v⁻¹ γ γ_w) E_{vw}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIso {
    pub base: ObjectId,
    /// `connectors[v]` is the chosen arrow `base → v`; the unit at `base`.
    pub connectors: Vec<ArrowId>,
    /// Isotropy arrows at `base`, sorted.
    pub isotropy: Vec<ArrowId>,
    /// `images[γ] = (isotropy arrow, row, column)`.
    pub images: Vec<(ArrowId, ObjectId, ObjectId)>,
}

impl MatrixIso {
    /// `Φ⁻¹(g E_{vw}) = γ_v g γ_w⁻¹`.
    pub fn preimage(&self, g: &FiniteGroupoid, iso: ArrowId, v: ObjectId, w: ObjectId) -> ArrowId {
        let left = g.compose(self.connectors[v], iso).expect("γ_v · g");
        g.compose(left, g.inverse(self.connectors[w])).expect("γ_v g · γ_w⁻¹")
    }
}

pub fn matrix_iso(g: &FiniteGroupoid, base: ObjectId) -> Result<MatrixIso, GroupoidError> {
    if !g.is_transitive() || base >= g.object_count() {
        return Err(GroupoidError::NotTransitive);
    }
    let connectors: Vec<ArrowId> = (0..g.object_count())
        .map(|v| if v == base { g.unit(base) } else { g.arrows_between(base, v).next().expect("transitive") })
        .collect();
    let images = (0..g.arrow_count())
        .map(|gamma| {
            let (w, v) = (g.src(gamma), g.rng(gamma));
            let inner = g.compose(gamma, connectors[w]).expect("γ γ_w");
            (g.compose(g.inverse(connectors[v]), inner).expect("γ_v⁻¹ γ γ_w"), v, w)
        })
        .collect();
    Ok(MatrixIso { base, connectors, isotropy: g.isotropy(base), images })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIsoReport {
    pub pairs_checked: usize,
    pub homomorphism: bool,
    pub bijective: bool,
    pub inverse_formula: bool,
}

impl MatrixIsoReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.bijective && self.inverse_formula
    }
}

/// Checks `Φ(αβ) = Φ(α)Φ(β)` on every pair of arrows (a non-composable pair
/// must map to matrix units that multiply to zero), bijectivity onto
/// `isotropy × objects × objects`, and the inverse formula.
pub fn verify_matrix_iso(g: &FiniteGroupoid, iso: &MatrixIso) -> MatrixIsoReport {
    let n = g.arrow_count();
    let mut homomorphism = true;
    for a in 0..n {
        for b in 0..n {
            let (ga, va, wa) = iso.images[a];
            let (gb, vb, wb) = iso.images[b];
            homomorphism &= match g.compose(a, b) {
                Some(ab) => wa == vb && iso.images[ab] == (g.compose(ga, gb).expect("isotropy product"), va, wb),
                None => wa != vb,
            };
        }
    }
    let mut seen = iso.images.clone();
    seen.sort_unstable();
    seen.dedup();
    let objects = g.object_count();
    let bijective = seen.len() == n
        && n == iso.isotropy.len() * objects * objects
        && seen.iter().all(|(h, _, _)| iso.isotropy.binary_search(h).is_ok());
    let inverse_formula = (0..n).all(|gamma| {
        let (h, v, w) = iso.images[gamma];
        iso.preimage(g, h, v, w) == gamma
    });
    MatrixIsoReport { pairs_checked: n * n, homomorphism, bijective, inverse_formula }
}
