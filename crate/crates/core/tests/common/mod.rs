#![allow(dead_code)]

use ballmaps_core::num::{cq, cr, q, Cq, Q};
use ballmaps_core::{MultiIndex, PolyMap};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

pub fn complex() -> impl Strategy<Value = Cq> {
    (rational(), rational()).prop_map(|(re, im)| cq(re, im))
}

pub fn index(n: usize, max_degree: u32) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(0..=max_degree, n)
        .prop_filter("degree", move |v| v.iter().sum::<u32>() <= max_degree)
        .prop_map(MultiIndex::new)
}

/// A sparse map `B_n -> C^target` with at most `terms` coefficient entries.
pub fn poly_map(n: usize, target: usize, max_degree: u32, terms: usize) -> impl Strategy<Value = PolyMap> {
    proptest::collection::vec((index(n, max_degree), 0..target, complex()), 1..=terms)
        .prop_map(move |e| PolyMap::from_entries(n, target, e).unwrap())
}

/// `((p^2 - r^2) + 2pr i) / (p^2 + r^2)`, a Gaussian rational of modulus one.
pub fn unit_complex(p: i64, r: i64) -> Cq {
    let d = p * p + r * r;
    cq(q(p * p - r * r, d), q(2 * p * r, d))
}

/// Points with `|z_1|^2 + |z_2|^2 = 1` exactly, built from Pythagorean data.
pub fn sphere_point_2() -> impl Strategy<Value = Vec<Cq>> {
    (1i64..=6, 1i64..=6, -5i64..=5, 1i64..=5, -5i64..=5, 1i64..=5).prop_map(|(s, t, p1, r1, p2, r2)| {
        let d = s * s + t * t;
        let c = q(s * s - t * t, d);
        let sn = q(2 * s * t, d);
        vec![unit_complex(p1, r1) * cr(c), unit_complex(p2, r2) * cr(sn)]
    })
}
