//! Sparse multivariate polynomials over an exact field.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`]; the graded order on
//! multi-indices is a monomial order, so the last key is the leading term and
//! division by a single polynomial produces a unique remainder.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::index::MultiIndex;
use crate::num::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), C::one())
    }

    pub fn monomial(alpha: MultiIndex, c: C) -> Self {
        let nvars = alpha.len();
        let mut p = Self::zero(nvars);
        p.add_term(alpha, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> C {
        self.terms.get(alpha).cloned().unwrap_or_else(C::zero)
    }

    /// Add `c * z^alpha`, deleting the entry if it cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, c: C) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.degree()).min()
    }

    pub fn leading(&self) -> Option<(&MultiIndex, &C)> {
        self.terms.iter().next_back()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.add(b), c.clone() * d.clone());
            }
        }
        out
    }

    /// Multiply by `c * z^shift`.
    pub fn mul_term(&self, shift: &MultiIndex, c: &C) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.add(shift), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        debug_assert_eq!(point.len(), self.nvars);
        let mut total = C::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(a.exps()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Substitute a polynomial (in `m` variables) for each variable.
    pub fn compose(&self, subs: &[Poly<C>]) -> Poly<C> {
        debug_assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(m);
        for (a, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (s, &e) in subs.iter().zip(a.exps()) {
                if e > 0 {
                    t = t.mul(&s.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Rename variables into a larger ring: variable `i` becomes `target[i]`.
    pub fn embed(&self, nvars: usize, target: &[usize]) -> Poly<C> {
        let terms = self.terms.iter().map(|(a, c)| {
            let mut e = alloc::vec![0u32; nvars];
            for (i, &x) in a.exps().iter().enumerate() {
                e[target[i]] += x;
            }
            (MultiIndex::new(e), c.clone())
        });
        Poly::from_terms(nvars, terms)
    }

    /// Division by a single divisor: `self = q * g + r` where no term of `r`
    /// is divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Poly<C>) -> (Poly<C>, Poly<C>) {
        let (lm, lc) = g.leading().expect("division by the zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut quot = Poly::zero(self.nvars);
        let mut rem = Poly::zero(self.nvars);
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            match m.checked_sub(&lm) {
                Some(shift) => {
                    let f = c / lc.clone();
                    p = p.sub(&g.mul_term(&shift, &f));
                    quot.add_term(shift, f);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        (quot, rem)
    }

    pub fn is_divisible_by(&self, g: &Poly<C>) -> bool {
        self.div_rem(g).1.is_zero()
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(a, c)| (a.clone(), f(c))))
    }

    /// Coefficients in the variables `split..` grouped by the monomial in the
    /// first `split` variables.
    pub fn group_by_leading_vars(&self, split: usize) -> BTreeMap<MultiIndex, Poly<C>> {
        let mut out: BTreeMap<MultiIndex, Poly<C>> = BTreeMap::new();
        let rest = self.nvars - split;
        for (a, c) in &self.terms {
            let (head, tail) = a.split_at(split);
            out.entry(head)
                .or_insert_with(|| Poly::zero(rest))
                .add_term(tail, c.clone());
        }
        out
    }
}

impl<C: Scalar> Poly<C> {
    pub fn conj_coeffs(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }
}

/// Coefficient vector of a univariate polynomial, index = power.
pub fn univariate_coeffs<C: Field>(p: &Poly<C>) -> Vec<C> {
    debug_assert_eq!(p.nvars(), 1);
    let deg = p.degree().unwrap_or(0) as usize;
    let mut v = alloc::vec![C::zero(); deg + 1];
    for (a, c) in p.terms() {
        v[a.exps()[0] as usize] = c.clone();
    }
    v
}
