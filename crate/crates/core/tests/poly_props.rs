mod common;

use ballmaps_core::num::{q, Cq};
use ballmaps_core::{HermForm, PolyMap};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneous_parts_reassemble(f in poly_map(2, 3, 4, 8)) {
        let mut sum = PolyMap::zero(2, 3);
        for (d, part) in f.homogeneous_parts() {
            prop_assert!(part.is_homogeneous());
            prop_assert_eq!(part.degree().unwrap(), d);
            sum = sum.add(&part).unwrap();
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn weighted_sum_form(f in poly_map(2, 2, 3, 5), g in poly_map(2, 3, 3, 5), a in 0i64..=5, b in 1i64..=5) {
        // squares of rationals to keep the map level exact
        let wf = q(a * a, b * b);
        let wg = q(b * b, (a + b) * (a + b));
        let j = f.juxtapose(&g, &wf, &wg).unwrap();
        let expected = HermForm::squared_norm(&f).scale(&wf).add(&HermForm::squared_norm(&g).scale(&wg));
        prop_assert_eq!(HermForm::squared_norm(&j), expected);
    }

    #[test]
    fn tensor_multiplies_forms(f in poly_map(2, 2, 2, 4), g in poly_map(2, 2, 2, 4)) {
        let t = f.tensor(&g).unwrap();
        prop_assert_eq!(HermForm::squared_norm(&t), HermForm::squared_norm(&f).mul(&HermForm::squared_norm(&g)));
        if !t.is_zero() {
            prop_assert_eq!(t.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
            prop_assert_eq!(t.vanishing_order().unwrap(), f.vanishing_order().unwrap() + g.vanishing_order().unwrap());
        }
    }

    #[test]
    fn compose_agrees_pointwise(
        g in poly_map(2, 2, 3, 5),
        v in poly_map(2, 2, 2, 4),
        pts in proptest::collection::vec(proptest::collection::vec(complex(), 2), 20),
    ) {
        let c = g.compose(&v).unwrap();
        for z in &pts {
            prop_assert_eq!(c.eval(z), g.eval(&v.eval(z)));
        }
    }
}

#[test]
fn tensor_of_identities() {
    let z = PolyMap::identity(2);
    let t = z.tensor(&z).unwrap();
    assert_eq!(t.target(), 4);
    assert_eq!(HermForm::squared_norm(&t), HermForm::norm_power(2, 2));
    let one = PolyMap::constant(2, Cq::from(ballmaps_core::num::qi(1)));
    assert_eq!(z.tensor(&one).unwrap(), z);
}
