//! Fiber evaluation `k_φ`, the Thurston norm of a Seifert piece, and its
//! L²-Alexander torsion.
//!
//! For a Seifert space `M` other than `S¹×S²` and `S¹×D²` with infinite
//! fundamental group, `x_M(φ) = |χ_orb(M)·k_φ|` where `k_φ = φ(h)`. When the
//! regular fiber has infinite order under `γ`, the torsion is the class of
//! `max{1, t^{x_M(φ)}}`.

use num_traits::{Signed, Zero};

use crate::algebra::AbelianPresentation;
use crate::error::{Error, Result};
use crate::rational::{int, Rat};
use crate::seifert::SeifertInvariants;
use crate::torsion::TorsionFunction;

/// A rational class in `H¹(M; ℚ) = Hom(H₁(M), ℚ)`, given by its values on
/// the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    values: Vec<Rat>,
}

impl CohomologyClass {
    /// Checks that `values` vanishes on every relation of `presentation`.
    pub fn new(presentation: &AbelianPresentation, values: Vec<Rat>) -> Result<Self> {
        let violated = presentation.violated_relations(&values)?;
        if !violated.is_empty() {
            return Err(Error::InvalidClass { violated });
        }
        Ok(CohomologyClass { values })
    }

    pub fn zero(presentation: &AbelianPresentation) -> Self {
        CohomologyClass {
            values: vec![Rat::zero(); presentation.generators().len()],
        }
    }

    pub fn from_integers(presentation: &AbelianPresentation, values: &[i64]) -> Result<Self> {
        Self::new(presentation, values.iter().map(|&v| int(v)).collect())
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, lambda: &Rat) -> Self {
        CohomologyClass {
            values: self.values.iter().map(|v| v * lambda).collect(),
        }
    }

    /// Sum of two classes on the same presentation.
    pub fn add(&self, other: &CohomologyClass) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(CohomologyClass {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    /// Values on the generator range `start..start + len`.
    pub(crate) fn slice(&self, start: usize, len: usize) -> Vec<Rat> {
        self.values[start..start + len].to_vec()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormResult {
    pub k_phi: Rat,
    pub chi_orb: Rat,
    /// `|chi_orb · k_phi|`
    pub norm: Rat,
    /// Whether the regular fiber has infinite order in `H₁`.
    pub hypothesis_fiber_infinite_order: bool,
}

/// How the "regular fiber has infinite order under γ" hypothesis is settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FiberHypothesis {
    /// Check it for `γ` the abelianization.
    #[default]
    Verify,
    /// The caller vouches for it (for some `γ` other than the abelianization).
    Assert,
}

/// `φ(h)` for a class valid on the abelianized presentation of `s`.
pub fn k_phi(s: &SeifertInvariants, phi: &CohomologyClass) -> Result<Rat> {
    let p = s.abelianized_presentation()?;
    let violated = p.violated_relations(phi.values())?;
    if !violated.is_empty() {
        return Err(Error::InvalidClass { violated });
    }
    Ok(phi.values()[s.fiber_generator_index()].clone())
}

fn check_domain(s: &SeifertInvariants) -> Result<()> {
    s.validate()?;
    if let Some(ex) = s.exclusion() {
        return Err(Error::Excluded(ex));
    }
    if !s.has_infinite_fundamental_group() {
        return Err(Error::FiniteFundamentalGroup);
    }
    Ok(())
}

pub fn thurston_norm_sfs(s: &SeifertInvariants, phi: &CohomologyClass) -> Result<NormResult> {
    check_domain(s)?;
    let k = k_phi(s, phi)?;
    let chi_orb = s.chi_orb();
    Ok(NormResult {
        norm: (&chi_orb * &k).abs(),
        k_phi: k,
        chi_orb,
        hypothesis_fiber_infinite_order: s.fiber_order()?.is_infinite(),
    })
}

/// Norm of the fiber class of a surface bundle over the circle with fiber
/// of the given genus and boundary count: `max{0, −χ(fiber)}`.
pub fn fibered_norm(genus: u32, boundary: u32) -> Rat {
    let chi = 2 - 2 * i64::from(genus) - i64::from(boundary);
    int((-chi).max(0))
}

pub fn sfs_torsion(
    s: &SeifertInvariants,
    phi: &CohomologyClass,
    hypothesis: FiberHypothesis,
) -> Result<TorsionFunction> {
    let result = thurston_norm_sfs(s, phi)?;
    if hypothesis == FiberHypothesis::Verify && !result.hypothesis_fiber_infinite_order {
        return Err(Error::FiberFiniteOrder {
            order: s.fiber_order()?,
        });
    }
    Ok(TorsionFunction::from_exponent(&result.norm, 1))
}

/// Outcome of comparing `S¹×Σ_g` with its cover `S¹×Σ_ĝ` induced by a
/// degree-`d` cover of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub genus: u32,
    pub degree: u32,
    pub cover_genus: u32,
    pub chi_orb: Rat,
    pub cover_chi_orb: Rat,
    pub norm: Rat,
    pub cover_norm: Rat,
}

impl CoveringReport {
    /// `χ_orb` and the norm both scale by the degree.
    pub fn passes(&self) -> bool {
        let d = int(i64::from(self.degree));
        self.cover_chi_orb == &self.chi_orb * &d && self.cover_norm == &self.norm * &d
    }
}

/// Checks multiplicativity of `χ_orb` and the norm under the cover of
/// `S¹×Σ_g` induced by a degree-`d` cover `Σ_ĝ → Σ_g`, `ĝ = d(g−1)+1`.
///
/// The base cover has fiber degree one, so `p*φ` has the same `k` as `φ`.
pub fn covering_check_product(genus: u32, degree: u32, phi: &CohomologyClass) -> Result<CoveringReport> {
    if genus == 0 {
        return Err(Error::InvalidArgument(
            "the sphere has no connected covers of degree > 1".into(),
        ));
    }
    if degree == 0 {
        return Err(Error::InvalidArgument("cover degree must be positive".into()));
    }
    let cover_genus = degree * (genus - 1) + 1;
    let base = SeifertInvariants::product(genus);
    let cover = SeifertInvariants::product(cover_genus);

    let k = k_phi(&base, phi)?;
    let cover_presentation = cover.abelianized_presentation()?;
    let mut pulled = vec![Rat::zero(); cover_presentation.generators().len()];
    pulled[cover.fiber_generator_index()] = k;
    let pulled = CohomologyClass::new(&cover_presentation, pulled)?;

    let norm = thurston_norm_sfs(&base, phi)?;
    let cover_norm = thurston_norm_sfs(&cover, &pulled)?;
    Ok(CoveringReport {
        genus,
        degree,
        cover_genus,
        chi_orb: norm.chi_orb,
        cover_chi_orb: cover_norm.chi_orb,
        norm: norm.norm,
        cover_norm: cover_norm.norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::seifert::ExceptionalFiber;

    fn fibers(list: &[(i64, i64)]) -> Vec<ExceptionalFiber> {
        list.iter().map(|&p| p.into()).collect()
    }

    fn trefoil() -> SeifertInvariants {
        SeifertInvariants::orientable(0, 1, fibers(&[(2, 1), (3, 1)]), None).unwrap()
    }

    fn class(s: &SeifertInvariants, v: &[i64]) -> CohomologyClass {
        CohomologyClass::from_integers(&s.abelianized_presentation().unwrap(), v).unwrap()
    }

    #[test]
    fn k_phi_trefoil() {
        let s = trefoil();
        assert_eq!(k_phi(&s, &class(&s, &[-3, -2, 5, 6])).unwrap(), int(6));
    }

    #[test]
    fn invalid_class_is_rejected() {
        let s = trefoil();
        let p = s.abelianized_presentation().unwrap();
        let err = CohomologyClass::from_integers(&p, &[0, 0, 0, 1]).unwrap_err();
        assert_eq!(err, Error::InvalidClass { violated: vec![0, 1] });
    }

    #[test]
    fn product_fibration_class() {
        let s = SeifertInvariants::product(2);
        let phi = class(&s, &[0, 0, 0, 0, 1]);
        assert_eq!(k_phi(&s, &phi).unwrap(), int(1));
        let r = thurston_norm_sfs(&s, &phi).unwrap();
        assert_eq!(r.norm, int(2));
        assert!(r.hypothesis_fiber_infinite_order);
        assert_eq!(
            sfs_torsion(&s, &phi, FiberHypothesis::Verify).unwrap(),
            TorsionFunction::from_exponent(&int(2), 1)
        );
    }

    #[test]
    fn trefoil_norm_and_torsion() {
        let s = trefoil();
        let phi = class(&s, &[-3, -2, 5, 6]);
        let r = thurston_norm_sfs(&s, &phi).unwrap();
        assert_eq!(r.chi_orb, ratio(-1, 6));
        assert_eq!(r.norm, int(1));
        assert_eq!(
            sfs_torsion(&s, &phi, FiberHypothesis::Verify).unwrap().to_string(),
            "max{1,t^{1}}"
        );
    }

    #[test]
    fn two_five_torus_knot() {
        // (2,5) with 2·q' + 5·p' = 1: p' = 1, q' = -2.
        let s = SeifertInvariants::orientable(0, 1, fibers(&[(2, 1), (5, -2)]), None).unwrap();
        let phi = class(&s, &[-5, 4, 1, 10]);
        let r = thurston_norm_sfs(&s, &phi).unwrap();
        assert_eq!(r.k_phi, int(10));
        assert_eq!(r.norm, int(3));
    }

    #[test]
    fn torus_bundle_is_zero() {
        let s = SeifertInvariants::product(1);
        for v in [[1, 0, 0], [0, 1, 3], [2, -1, 7]] {
            let phi = class(&s, &v);
            assert_eq!(thurston_norm_sfs(&s, &phi).unwrap().norm, int(0));
            assert!(sfs_torsion(&s, &phi, FiberHypothesis::Verify).unwrap().is_unit());
        }
    }

    #[test]
    fn circle_bundles_have_zero_k() {
        for g in 1..=3u32 {
            let s = SeifertInvariants::orientable(g, 0, vec![], Some(1)).unwrap();
            let p = s.abelianized_presentation().unwrap();
            for b in p.class_basis() {
                let phi = CohomologyClass::new(&p, b.into_iter().map(Rat::from_integer).collect()).unwrap();
                assert!(k_phi(&s, &phi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn domain_errors() {
        let disk = SeifertInvariants::orientable(0, 1, vec![], None).unwrap();
        let phi = CohomologyClass::zero(&disk.abelianized_presentation().unwrap());
        assert!(matches!(thurston_norm_sfs(&disk, &phi), Err(Error::Excluded(_))));

        let poincare = SeifertInvariants::orientable(0, 0, fibers(&[(2, 1), (3, 1), (5, 1)]), Some(-1)).unwrap();
        let phi = CohomologyClass::zero(&poincare.abelianized_presentation().unwrap());
        let err = thurston_norm_sfs(&poincare, &phi).unwrap_err();
        assert_eq!(err, Error::FiniteFundamentalGroup);
        assert!(err.is_hypothesis());
    }

    #[test]
    fn hypothesis_failure_and_override() {
        let s = SeifertInvariants::non_orientable(2, 1, vec![], None).unwrap();
        let phi = CohomologyClass::zero(&s.abelianized_presentation().unwrap());
        let err = sfs_torsion(&s, &phi, FiberHypothesis::Verify).unwrap_err();
        assert!(matches!(err, Error::FiberFiniteOrder { .. }));
        assert!(sfs_torsion(&s, &phi, FiberHypothesis::Assert).unwrap().is_unit());
    }

    #[test]
    fn fibered_norms() {
        assert_eq!(fibered_norm(2, 0), int(2));
        assert_eq!(fibered_norm(0, 0), int(0));
        assert_eq!(fibered_norm(1, 1), int(1));
        assert_eq!(fibered_norm(0, 2), int(0));
    }

    #[test]
    fn covering_examples() {
        let phi = class(&SeifertInvariants::product(2), &[0, 0, 0, 0, 1]);
        let r = covering_check_product(2, 2, &phi).unwrap();
        assert_eq!((r.chi_orb.clone(), r.cover_chi_orb.clone()), (int(-2), int(-4)));
        assert_eq!((r.norm.clone(), r.cover_norm.clone()), (int(2), int(4)));
        assert!(r.passes());

        let r = covering_check_product(2, 3, &phi).unwrap();
        assert_eq!(r.cover_genus, 4);
        assert_eq!(r.cover_norm, int(6));
        assert!(r.passes());

        let torus = class(&SeifertInvariants::product(1), &[0, 0, 1]);
        let r = covering_check_product(1, 5, &torus).unwrap();
        assert_eq!(r.cover_genus, 1);
        assert!(r.chi_orb.is_zero() && r.cover_norm.is_zero());
        assert!(r.passes());
    }
}
