mod common;

use ballmaps_core::linalg::quadratic_form;
use ballmaps_core::num::{q, qi, Cq};
use ballmaps_core::{HermForm, MultiIndex, PolyMap, RealForm, Verdict};
use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn hermitian(n: usize) -> impl Strategy<Value = HermForm> {
    proptest::collection::vec((index(n, 2), index(n, 2), complex()), 1..=8).prop_map(move |e| {
        let mut f = HermForm::zero(n);
        for (a, b, c) in e {
            f.add_entry(a, b, c);
        }
        f
    })
}

fn bihomogeneous_value(f: &HermForm, z: &[Cq]) -> Cq {
    f.entries()
        .iter()
        .map(|((a, b), c)| {
            let za = ballmaps_core::Poly::monomial(a.clone(), Cq::from(qi(1))).eval(z);
            let zb = ballmaps_core::Poly::monomial(b.clone(), Cq::from(qi(1))).eval(z);
            c.clone() * za * zb.conj()
        })
        .fold(Cq::zero(), |s, x| s + x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn squared_norms_are_positive(f in poly_map(2, 3, 3, 6)) {
        let form = HermForm::squared_norm(&f);
        let cert = form.is_psd();
        prop_assert!(cert.verdict.is_psd());
        prop_assert!(cert.verify(&form));
        prop_assert!(form.rank() <= f.target());
    }

    #[test]
    fn negative_witnesses_verify(f in hermitian(2)) {
        let cert = f.is_psd();
        prop_assert!(cert.verify(&f));
        if cert.verdict == Verdict::NotPsd {
            let w = cert.witness.clone().unwrap();
            let m = f.matrix(&cert.basis);
            prop_assert!(quadratic_form(&m, &w).re.is_negative());
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sphere_vanishing_matches_evaluation(f in poly_map(2, 2, 2, 4), pts in proptest::collection::vec(sphere_point_2(), 50)) {
        // f ⊗ z - f vanishes on the sphere, at the form level
        let g = f.tensor(&PolyMap::identity(2)).unwrap();
        let diff = HermForm::squared_norm(&g).sub(&HermForm::squared_norm(&f));
        prop_assert!(diff.vanishes_on_sphere());
        for z in &pts {
            prop_assert!(bihomogeneous_value(&diff, z).is_zero());
        }
        let other = HermForm::squared_norm(&f).sub(&HermForm::one(2));
        if other.vanishes_on_sphere() {
            for z in &pts {
                prop_assert!(bihomogeneous_value(&other, z).is_zero());
            }
        }
    }

    #[test]
    fn monomial_fast_path_agrees(coeffs in proptest::collection::vec((index(2, 3), 0i64..=4, 1i64..=4), 1..=6)) {
        let p = RealForm::from_terms(2, coeffs.into_iter().map(|(a, n, d)| (a, q(n, d))));
        let f = HermForm::from_real_form(&p).sub(&HermForm::one(2));
        prop_assert_eq!(f.vanishes_on_sphere(), f.vanishes_on_sphere_by_division());
        prop_assert_eq!(f.vanishes_on_sphere(), p.equals_one_on_hyperplane());
    }
}

#[test]
fn sphere_points_are_on_the_sphere() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..20 {
        let z = sphere_point_2().new_tree(&mut runner).unwrap().current();
        assert_eq!(ballmaps_core::num::norm2(&z), qi(1));
    }
}

#[test]
fn rotated_map_is_norm_equivalent() {
    let f = PolyMap::from_components(
        2,
        vec![
            ballmaps_core::Poly::monomial(MultiIndex::new(vec![1, 0]), Cq::from(qi(1))),
            ballmaps_core::Poly::monomial(MultiIndex::new(vec![1, 1]), Cq::from(qi(1))),
        ],
    );
    let u = vec![vec![Cq::from(q(3, 5)), Cq::from(q(4, 5))], vec![Cq::from(q(-4, 5)), Cq::from(q(3, 5))]];
    assert!(ballmaps_core::form::norm_equivalent(&f, &f.apply_linear(&u)).unwrap());
}
