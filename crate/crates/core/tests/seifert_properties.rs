mod common;

use common::{any_piece, bounded_piece};
use fibertorsion::norm::{k_phi, sfs_torsion, thurston_norm_sfs};
use fibertorsion::{CohomologyClass, FiberHypothesis, Rat, S1CWComplex, SeifertInvariants, TorsionFunction};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// χ_orb recomputed from the definition.
fn chi_orb_oracle(s: &SeifertInvariants) -> Rat {
    let chi_base = if s.base_orientable {
        2 - 2 * i64::from(s.genus) - i64::from(s.boundary_count)
    } else {
        2 - i64::from(s.genus) - i64::from(s.boundary_count)
    };
    s.exceptional.iter().fold(Rat::from_integer(chi_base.into()), |acc, f| {
        acc - Rat::one() + Rat::new(1.into(), f.index.into())
    })
}

/// An integer combination of the class basis.
fn class_on(s: &SeifertInvariants, coefficients: &[i64]) -> CohomologyClass {
    let p = s.abelianized_presentation().unwrap();
    let basis = p.class_basis();
    let mut values = vec![Rat::zero(); p.generators().len()];
    for (b, &c) in basis.iter().zip(coefficients.iter().cycle()) {
        for (v, x) in values.iter_mut().zip(b) {
            *v += Rat::from_integer(x * c);
        }
    }
    CohomologyClass::new(&p, values).unwrap()
}

fn coefficients() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..6)
}

fn scalar() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chi_orb_matches_definition(s in any_piece()) {
        prop_assert_eq!(s.chi_orb(), chi_orb_oracle(&s));
        prop_assert!(s.chi_orb() <= s.chi_base());
        prop_assert_eq!(s.mirror().chi_orb(), s.chi_orb());
    }

    #[test]
    fn s1cw_structure_has_same_chi(s in any_piece().prop_filter("orientable", |s| s.base_orientable)) {
        prop_assert_eq!(S1CWComplex::from_seifert(&s).unwrap().chi_orb(), s.chi_orb());
    }

    #[test]
    fn basis_classes_are_valid(s in any_piece()) {
        let p = s.abelianized_presentation().unwrap();
        for b in p.class_basis() {
            let values: Vec<Rat> = b.into_iter().map(Rat::from_integer).collect();
            prop_assert!(CohomologyClass::new(&p, values).is_ok());
        }
    }

    #[test]
    fn classes_form_a_vector_space(s in any_piece(), a in coefficients(), b in coefficients(), l in scalar()) {
        let p = s.abelianized_presentation().unwrap();
        let (x, y) = (class_on(&s, &a), class_on(&s, &b));
        let sum = x.add(&y).unwrap();
        prop_assert!(p.is_valid_class(sum.values()).unwrap());
        prop_assert!(p.is_valid_class(x.scale(&l).values()).unwrap());
        prop_assert_eq!(k_phi(&s, &sum).unwrap(), k_phi(&s, &x).unwrap() + k_phi(&s, &y).unwrap());
    }

    #[test]
    fn norm_is_homogeneous_and_subadditive(s in bounded_piece(), a in coefficients(), b in coefficients(), l in scalar()) {
        let (x, y) = (class_on(&s, &a), class_on(&s, &b));
        let n = |c: &CohomologyClass| thurston_norm_sfs(&s, c).unwrap().norm;
        prop_assert_eq!(n(&x.scale(&l)), l.abs() * n(&x));
        prop_assert!(n(&x.add(&y).unwrap()) <= n(&x) + n(&y));
        prop_assert!(!n(&x).is_negative());
    }

    #[test]
    fn torsion_degree_is_the_norm(s in bounded_piece(), a in coefficients()) {
        let x = class_on(&s, &a);
        let norm = thurston_norm_sfs(&s, &x).unwrap();
        prop_assert!(norm.hypothesis_fiber_infinite_order);
        let tau = sfs_torsion(&s, &x, FiberHypothesis::Verify).unwrap();
        prop_assert_eq!(tau.degree(), &norm.norm);
        prop_assert_eq!(tau, TorsionFunction::from_exponent(&norm.norm, 1));
    }

    #[test]
    fn mirror_negates_fiber_value(s in bounded_piece(), a in coefficients()) {
        let x = class_on(&s, &a);
        let mut mirrored = x.values().to_vec();
        let h = s.fiber_generator_index();
        mirrored[h] = -&mirrored[h];
        let m = s.mirror();
        let y = CohomologyClass::new(&m.abelianized_presentation().unwrap(), mirrored).unwrap();
        prop_assert_eq!(thurston_norm_sfs(&m, &y).unwrap().norm, thurston_norm_sfs(&s, &x).unwrap().norm);
    }
}
