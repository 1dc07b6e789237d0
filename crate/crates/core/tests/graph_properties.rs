mod common;

use common::bounded_piece;
use fibertorsion::graph::{cut_vertical, double, doubled_class, CutSide};
use fibertorsion::norm::{sfs_torsion, thurston_norm_sfs};
use fibertorsion::{CohomologyClass, FiberHypothesis, PlumbingGraph, Rat, SeifertInvariants};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn combination(basis: &[Vec<num_bigint::BigInt>], n: usize, coefficients: &[i64]) -> Vec<Rat> {
    let mut values = vec![Rat::zero(); n];
    for (b, &c) in basis.iter().zip(coefficients.iter().cycle()) {
        for (v, x) in values.iter_mut().zip(b) {
            *v += Rat::from_integer(x * c);
        }
    }
    values
}

fn class_on(s: &SeifertInvariants, coefficients: &[i64]) -> CohomologyClass {
    let p = s.abelianized_presentation().unwrap();
    let values = combination(&p.class_basis(), p.generators().len(), coefficients);
    CohomologyClass::new(&p, values).unwrap()
}

fn coefficients() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..6)
}

/// A piece together with a cut that leaves no solid torus on either side.
fn cut_piece() -> impl Strategy<Value = (SeifertInvariants, CutSide)> {
    bounded_piece()
        .prop_flat_map(|s| {
            let (g, b, n) = (s.genus, s.boundary_count, s.exceptional.len());
            (Just(s), 0..=g, 0..=b, 0..=n)
        })
        .prop_filter_map("solid torus side", |(s, genus, boundary, exceptional)| {
            let side = CutSide {
                genus,
                boundary,
                exceptional,
            };
            let left_ok = genus > 0 || boundary > 0 || exceptional >= 2;
            let right_ok =
                s.genus - genus > 0 || s.boundary_count - boundary > 0 || s.exceptional.len() - exceptional >= 2;
            (left_ok && right_ok).then_some((s, side))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn single_node_graph_is_the_piece(s in bounded_piece(), a in coefficients()) {
        let x = class_on(&s, &a);
        let assembled = PlumbingGraph::single(s.clone()).assemble().unwrap();
        let y = assembled.class(x.values().to_vec()).unwrap();
        prop_assert_eq!(assembled.norm(&y).unwrap().total, thurston_norm_sfs(&s, &x).unwrap().norm);
    }

    #[test]
    fn regluing_a_vertical_cut_changes_nothing((s, side) in cut_piece(), a in coefficients()) {
        let cut = cut_vertical(&s, side).unwrap();
        let assembled = cut.graph.assemble().unwrap();
        prop_assert_eq!(assembled.presentation().cokernel(), s.abelianized_presentation().unwrap().cokernel());
        let x = class_on(&s, &a);
        let moved = cut.transfer_class(&assembled, &x).unwrap();
        prop_assert_eq!(&assembled.norm(&moved).unwrap().total, &thurston_norm_sfs(&s, &x).unwrap().norm);
        prop_assert_eq!(
            assembled.torsion(&moved, FiberHypothesis::Verify).unwrap(),
            sfs_torsion(&s, &x, FiberHypothesis::Verify).unwrap()
        );
    }

    #[test]
    fn double_has_twice_the_norm(s in bounded_piece(), a in coefficients()) {
        let x = class_on(&s, &a);
        let (assembled, y) = doubled_class(&s, &x).unwrap();
        let n = thurston_norm_sfs(&s, &x).unwrap().norm;
        prop_assert_eq!(assembled.norm(&y).unwrap().total, &n * Rat::from_integer(2.into()));
        let chi: Rat = double(&s).unwrap().nodes.iter().map(|v| v.chi_orb()).sum();
        prop_assert_eq!(chi, s.chi_orb() * Rat::from_integer(2.into()));
    }

    #[test]
    fn graph_norm_is_a_seminorm(s in bounded_piece(), a in coefficients(), b in coefficients(), l in -6i64..=6) {
        let assembled = double(&s).unwrap().assemble().unwrap();
        let p = assembled.presentation();
        let basis = p.class_basis();
        let n = p.generators().len();
        let x = assembled.class(combination(&basis, n, &a)).unwrap();
        let y = assembled.class(combination(&basis, n, &b)).unwrap();
        let norm = |c: &CohomologyClass| assembled.norm(c).unwrap().total;
        let l = Rat::from_integer(l.into());
        prop_assert_eq!(norm(&x.scale(&l)), l.abs() * norm(&x));
        prop_assert!(norm(&x.add(&y).unwrap()) <= norm(&x) + norm(&y));
    }
}
