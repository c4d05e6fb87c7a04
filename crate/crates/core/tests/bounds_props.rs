use ballmaps_core::bounds::{build_v, pullback, Formula, PullbackInput};
use ballmaps_core::catalog::whitney_map;
use ballmaps_core::num::q;
use ballmaps_core::quadruple::{quadruple_report, MapClass, QuadrupleVerdict, SearchOptions};
use ballmaps_core::{HermForm, PolyMap};
use proptest::prelude::*;

#[test]
fn rational_general_grid() {
    for n in 2..=10usize {
        for big_n in 2..=20usize {
            let b = Formula::RationalGeneral.eval(n, big_n).unwrap();
            let (n, m) = (n as i64, big_n as i64);
            assert_eq!(b, q(m * (m - 1), 2 * (2 * n - 3)));
            if n == 2 {
                assert_eq!(b, q(m * (m - 1), 2));
            }
        }
    }
}

#[test]
fn invariant_maps_are_proper() {
    for n in 2..=8 {
        let v = build_v(n).unwrap();
        assert!(HermForm::from_real_form(&v).sub(&HermForm::one(2)).vanishes_on_sphere_by_division());
    }
}

fn pullback_corpus(n: usize) -> Vec<PolyMap> {
    let z = PolyMap::identity(n);
    let w = whitney_map(n).unwrap();
    let zz = z.tensor(&z).unwrap();
    vec![z.clone(), w.clone(), zz.clone(), w.tensor(&z).unwrap(), zz.tensor(&z).unwrap()]
}

#[test]
fn pullback_degree_is_multiplicative() {
    for n in [3, 4] {
        for g in pullback_corpus(n) {
            let rep = pullback(&PullbackInput::Map(g.clone()), 11, 16).unwrap();
            assert!(rep.degree_is_multiplicative(), "n = {n}, deg g = {}", rep.g_degree);
            assert_eq!(rep.composed_degree, (2 * n as u32 - 3) * g.degree().unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn valid_only_with_verified_witness(n in 1usize..=3, r in 1usize..=7, d in 1u32..=4, k in 0usize..=3) {
        let rep = quadruple_report(n, r, d, k, MapClass::Rational, &SearchOptions::default()).unwrap();
        match rep.verdict {
            QuadrupleVerdict::ValidByConstruction => {
                let w = rep.witness.as_ref().unwrap();
                prop_assert_eq!(w.pencil.k(), k);
                prop_assert!(w.pencil.origin_preserving());
                prop_assert!(w.pencil.generators().iter().all(|g| g.is_proper_form()));
                let fr = w.pencil.family_rank(0).unwrap();
                prop_assert_eq!((fr.rank, fr.degree), (r, d));
            }
            QuadrupleVerdict::InvalidByBound => prop_assert!(rep.witness.is_none() && !rep.reasons.is_empty()),
            QuadrupleVerdict::Unknown => prop_assert!(rep.witness.is_none()),
        }
    }
}
