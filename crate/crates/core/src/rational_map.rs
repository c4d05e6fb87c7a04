//! Rational maps `p / q` and the exact ball automorphisms.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::HermForm;
use crate::map::PolyMap;
use crate::num::{cr, norm2, rational_sqrt, Cq, Q};
use crate::poly::Poly;

/// `z -> p(z) / q(z)` with a scalar denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMap {
    num: PolyMap,
    den: Poly<Cq>,
}

impl RationalMap {
    pub fn new(num: PolyMap, den: Poly<Cq>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if den.nvars() != num.n() {
            return Err(Error::DimensionMismatch {
                expected: num.n(),
                found: den.nvars(),
            });
        }
        Ok(RationalMap { num, den })
    }

    pub fn polynomial(p: PolyMap) -> Self {
        let n = p.n();
        RationalMap {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn target(&self) -> usize {
        self.num.target()
    }

    pub fn numerator(&self) -> &PolyMap {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Cq> {
        &self.den
    }

    pub fn tensor(&self, other: &RationalMap) -> Result<RationalMap> {
        Ok(RationalMap {
            num: self.num.tensor(&other.num)?,
            den: self.den.mul(&other.den),
        })
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, z: &[Cq]) -> Option<Vec<Cq>> {
        let q = self.den.eval(z);
        if q.is_zero() {
            return None;
        }
        Some(self.num.eval(z).into_iter().map(|c| c / q.clone()).collect())
    }

    /// `||p||^2 - |q|^2` vanishes on the sphere.
    pub fn maps_sphere_to_sphere(&self) -> bool {
        let q = PolyMap::from_components(self.n(), alloc::vec![self.den.clone()]);
        HermForm::squared_norm(&self.num)
            .sub(&HermForm::squared_norm(&q))
            .vanishes_on_sphere()
    }
}

/// The automorphism `φ_a(z) = (P_a z + s Q_a z - a) / (1 - <z, a>)` with
/// `s = sqrt(1 - ||a||^2)`, `P_a` the projection onto `a` and `Q_a = I - P_a`.
///
/// `φ_a(a) = 0` and `φ_0` is the identity. Returns `None` when `s` is irrational.
pub fn mobius_exact(a: &[Cq]) -> Result<Option<RationalMap>> {
    let n = a.len();
    let na = norm2(a);
    if na >= Q::one() {
        return Err(Error::OutsideBall);
    }
    let Some(s) = rational_sqrt(&(Q::one() - &na)) else {
        return Ok(None);
    };
    let mut num = PolyMap::zero(n, n);
    let mut den = Poly::one(n);
    for (j, aj) in a.iter().enumerate() {
        let zj = crate::index::MultiIndex::unit(n, j);
        den.add_term(zj.clone(), -aj.conj());
        for (i, ai) in a.iter().enumerate() {
            let mut c = if na.is_zero() {
                Cq::zero()
            } else {
                ai.clone() * aj.conj() * cr((Q::one() - &s) / &na)
            };
            if i == j {
                c += cr(s.clone());
            }
            num.add_coeff(zj.clone(), i, c);
        }
    }
    for (i, ai) in a.iter().enumerate() {
        num.add_coeff(crate::index::MultiIndex::zero(n), i, -ai.clone());
    }
    Ok(Some(RationalMap::new(num, den)?))
}

/// Tensor product of exact automorphisms vanishing at the given points;
/// `None` if some point needs an irrational square root.
pub fn automorphism_product_exact(points: &[Vec<Cq>]) -> Result<Option<RationalMap>> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("no points".into()));
    };
    let n = first.len();
    let mut out = RationalMap::polynomial(PolyMap::constant(n, Cq::one()));
    for a in points {
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        match mobius_exact(a)? {
            Some(phi) => out = out.tensor(&phi)?,
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}
