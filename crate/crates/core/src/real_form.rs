//! Real forms of monomial maps: polynomials in `x_j = |z_j|^2`.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::index::MultiIndex;
use crate::num::Q;
use crate::poly::Poly;

/// `p(x_1, ..., x_n)` with `x_j` standing for `|z_j|^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealForm(Poly<Q>);

impl RealForm {
    pub fn zero(n: usize) -> Self {
        RealForm(Poly::zero(n))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        RealForm(Poly::from_terms(n, terms))
    }

    pub fn from_poly(p: Poly<Q>) -> Self {
        RealForm(p)
    }

    /// `x_1 + ... + x_n`, the real form of the identity.
    pub fn simplex_sum(n: usize) -> Self {
        RealForm((0..n).fold(Poly::zero(n), |acc, i| acc.add(&Poly::var(n, i))))
    }

    pub fn n(&self) -> usize {
        self.0.nvars()
    }

    pub fn poly(&self) -> &Poly<Q> {
        &self.0
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Q {
        self.0.coeff(alpha)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.0.terms().iter()
    }

    /// Number of terms; equals the rank of a monomial map.
    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms().all(|(_, c)| !c.is_negative())
    }

    pub fn add(&self, other: &RealForm) -> RealForm {
        RealForm(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &RealForm) -> RealForm {
        RealForm(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &RealForm) -> RealForm {
        RealForm(self.0.mul(&other.0))
    }

    pub fn scale(&self, c: &Q) -> RealForm {
        RealForm(self.0.scale(c))
    }

    /// `p(x_1, ..., x_{n-1}, 1 - x_1 - ... - x_{n-1}) - 1` in `n - 1` variables.
    pub fn hyperplane_residual(&self) -> Poly<Q> {
        let n = self.n();
        if n == 0 {
            return self.0.sub(&Poly::one(0));
        }
        let m = n - 1;
        let mut subs: Vec<Poly<Q>> = (0..m).map(|i| Poly::var(m, i)).collect();
        let last = (0..m).fold(Poly::one(m), |acc, i| acc.sub(&Poly::var(m, i)));
        subs.push(last);
        self.0.compose(&subs).sub(&Poly::one(m))
    }

    /// `p = 1` on `x_1 + ... + x_n = 1`.
    pub fn equals_one_on_hyperplane(&self) -> bool {
        self.hyperplane_residual().is_zero()
    }

    /// Proper monomial map: nonnegative coefficients, nonconstant, `p = 1` on the hyperplane.
    pub fn is_proper(&self) -> bool {
        self.has_nonnegative_coeffs()
            && self.terms().any(|(a, _)| !a.is_zero())
            && self.equals_one_on_hyperplane()
    }

    pub fn top_degree_terms(&self) -> Vec<(MultiIndex, Q)> {
        let d = self.degree().unwrap_or(0);
        self.terms()
            .filter(|(a, _)| a.degree() == d)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect()
    }

    pub fn one(n: usize) -> Self {
        RealForm(Poly::constant(n, Q::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qi;

    fn rf(n: usize, t: &[(&[u32], i64)]) -> RealForm {
        RealForm::from_terms(n, t.iter().map(|(a, c)| (MultiIndex::new(a.to_vec()), qi(*c))))
    }

    #[test]
    fn hyperplane_identity() {
        assert!(rf(2, &[(&[1, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]).is_proper());
        assert!(rf(2, &[(&[3, 0], 1), (&[1, 1], 3), (&[0, 3], 1)]).is_proper());
        let bad = rf(2, &[(&[1, 0], 1), (&[0, 2], 1)]);
        assert!(!bad.equals_one_on_hyperplane());
        assert!(RealForm::simplex_sum(4).is_proper());
        assert!(!RealForm::one(2).is_proper());
    }
}
