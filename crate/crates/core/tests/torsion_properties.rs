use fibertorsion::{Rat, TorsionFunction};
use num_traits::Signed;
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn class() -> impl Strategy<Value = TorsionFunction> {
    prop::collection::vec((exponent(), -3i64..=3), 0..5)
        .prop_map(|fs| fs.iter().map(|(c, m)| TorsionFunction::from_exponent(c, *m)).product())
}

/// `∏ max{1, t^c}^m` evaluated literally.
fn raw(factors: &[(Rat, i64)], t: f64) -> f64 {
    factors
        .iter()
        .map(|(c, m)| 1f64.max(t.powf(fibertorsion::rational::to_f64(c))).powi(*m as i32))
        .product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn abelian_group_laws(a in class(), b in class(), c in class()) {
        let one = TorsionFunction::unit();
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a * &a.inverse()).is_unit());
        prop_assert_eq!(&a / &b, &a * &b.inverse());
        prop_assert_eq!((&a * &b).degree().clone(), a.degree() + b.degree());
    }

    #[test]
    fn display_round_trips(a in class()) {
        prop_assert_eq!(a.to_string().parse::<TorsionFunction>().unwrap(), a);
    }

    #[test]
    fn powers_multiply_degree(a in class(), n in -5i64..=5) {
        prop_assert_eq!(a.pow(n).degree().clone(), a.degree() * Rat::from_integer(n.into()));
    }

    /// Nonnegative exponents with positive multiplicities combine pointwise.
    #[test]
    fn nonnegative_products_agree_pointwise(
        factors in prop::collection::vec((exponent().prop_map(|c| c.abs()), 0i64..=3), 1..5),
        log_t in -4.0f64..4.0,
    ) {
        let t = log_t.exp();
        let class: TorsionFunction = factors.iter().map(|(c, m)| TorsionFunction::from_exponent(c, *m)).product();
        let (x, y) = (raw(&factors, t), class.evaluate_f64(t));
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{x} vs {y}");
    }
}
