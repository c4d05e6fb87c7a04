mod common;

use ballmaps_core::catalog::proper_map_corpus;
use ballmaps_core::num::{cr, q, qi, Cq};
use ballmaps_core::zeros::{
    candidate_check, e_op, homogenize_by_tensor, homogenize_denominator, s_of_q, zero_set_check, ZeroSet,
};
use ballmaps_core::{HermForm, MultiIndex, Poly};
use common::*;
use proptest::prelude::*;

fn denominator(n: usize) -> impl Strategy<Value = Poly<Cq>> {
    proptest::collection::vec((index(n, 2), complex()), 0..=4).prop_map(move |terms| {
        let mut p = Poly::constant(n, cr(qi(1)));
        for (a, c) in terms {
            if !a.is_zero() {
                p.add_term(a, c);
            }
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hq_is_divisible_and_homogeneous(q in denominator(2), extra in 0u32..=1) {
        let d = q.degree().unwrap() + 1 + extra;
        let h = homogenize_denominator(&q, d).unwrap();
        for a in h.terms().keys() {
            prop_assert_eq!(a.exps()[..2].iter().sum::<u32>(), d);
        }
        let pairing = Poly::var(4, 0).mul(&Poly::var(4, 2)).add(&Poly::var(4, 1).mul(&Poly::var(4, 3)));
        prop_assert!(h.is_divisible_by(&pairing));
    }

    #[test]
    fn candidates_verify(q in denominator(1)) {
        let d = q.degree().unwrap() + 1;
        let set = s_of_q(&q, d, 40).unwrap();
        for a in &set.points {
            prop_assert!(candidate_check(&q, d, a).unwrap());
        }
    }
}

#[test]
fn e_operation_invariants() {
    for (name, p) in proper_map_corpus().unwrap() {
        let d = p.degree().unwrap();
        let mut h = p.clone();
        while h.vanishing_order().unwrap() < d {
            let next = e_op(&h).unwrap();
            assert!(HermForm::squared_norm(&next).is_proper_form(), "{name}");
            assert_eq!(next.vanishing_order().unwrap(), h.vanishing_order().unwrap() + 1, "{name}");
            assert_eq!(next.degree().unwrap(), d, "{name}");
            h = next;
        }
    }
}

#[test]
fn homogenization_reaches_norm_power() {
    for (name, p) in proper_map_corpus().unwrap() {
        let (d, nu) = (p.degree().unwrap(), p.vanishing_order().unwrap());
        let (h, steps) = homogenize_by_tensor(&p).unwrap();
        assert!(steps <= d - nu, "{name}");
        assert_eq!(HermForm::squared_norm(&h), HermForm::norm_power(p.n(), d), "{name}");
        let probes: Vec<Vec<Cq>> = [q(1, 2), q(-1, 3)]
            .iter()
            .map(|t| (0..p.n()).map(|i| cr(t * qi(i as i64 + 1))).collect())
            .chain(std::iter::once(vec![cr(qi(0)); p.n()]))
            .collect();
        let rep = zero_set_check(&p, &probes).unwrap();
        let expected = if p.preserves_origin() { ZeroSet::Origin } else { ZeroSet::Empty };
        assert_eq!(rep.zero_set, expected, "{name}");
        for (a, is_zero, identity) in &rep.tested {
            assert!(identity, "{name}");
            assert_eq!(*is_zero, a.iter().all(|c| c == &cr(qi(0))) && p.preserves_origin(), "{name}");
        }
    }
}

#[test]
fn corpus_has_ten_maps_and_a_nonvanishing_one() {
    let corpus = proper_map_corpus().unwrap();
    assert!(corpus.len() >= 10);
    assert!(corpus.iter().any(|(_, p)| !p.preserves_origin()));
    assert!(corpus.iter().any(|(_, p)| p.n() == 1 && p.terms().contains_key(&MultiIndex::new(vec![3]))));
}
