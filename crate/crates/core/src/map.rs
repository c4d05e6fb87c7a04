//! Vector-valued polynomial maps `f(z) = sum_alpha c_alpha z^alpha` with
//! Gaussian-rational coefficient vectors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::linalg::Matrix;
use crate::num::{abs2, cr, format_rational, rational_sqrt, Cq, Q};
use crate::poly::Poly;
use crate::real_form::RealForm;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    n: usize,
    target: usize,
    terms: BTreeMap<MultiIndex, Vec<Cq>>,
}

impl PolyMap {
    pub fn zero(n: usize, target: usize) -> Self {
        PolyMap {
            n,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let comps = (0..n).map(|i| Poly::var(n, i)).collect();
        Self::from_components(n, comps)
    }

    /// Map with a single component that is the constant `c`.
    pub fn constant(n: usize, c: Cq) -> Self {
        Self::from_components(n, vec![Poly::constant(n, c)])
    }

    pub fn from_components(n: usize, comps: Vec<Poly<Cq>>) -> Self {
        let mut f = Self::zero(n, comps.len());
        for (i, p) in comps.iter().enumerate() {
            debug_assert_eq!(p.nvars(), n);
            for (a, c) in p.terms() {
                f.add_coeff(a.clone(), i, c.clone());
            }
        }
        f
    }

    /// Build from `(alpha, component, coefficient)` triples; validates sizes.
    pub fn from_entries(
        n: usize,
        target: usize,
        entries: impl IntoIterator<Item = (MultiIndex, usize, Cq)>,
    ) -> Result<Self> {
        let mut f = Self::zero(n, target);
        for (a, i, c) in entries {
            if a.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            if i >= target {
                return Err(Error::DimensionMismatch {
                    expected: target,
                    found: i + 1,
                });
            }
            f.add_coeff(a, i, c);
        }
        Ok(f)
    }

    pub fn add_coeff(&mut self, alpha: MultiIndex, comp: usize, c: Cq) {
        if c.is_zero() {
            return;
        }
        let target = self.target;
        let v = self
            .terms
            .entry(alpha.clone())
            .or_insert_with(|| vec![Cq::zero(); target]);
        v[comp] = v[comp].clone() + c;
        if v.iter().all(|x| x.is_zero()) {
            self.terms.remove(&alpha);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Vec<Cq>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Vec<Cq> {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| vec![Cq::zero(); self.target])
    }

    pub fn component(&self, i: usize) -> Poly<Cq> {
        Poly::from_terms(
            self.n,
            self.terms.iter().map(|(a, v)| (a.clone(), v[i].clone())),
        )
    }

    pub fn components(&self) -> Vec<Poly<Cq>> {
        (0..self.target).map(|i| self.component(i)).collect()
    }

    pub fn degree(&self) -> Result<u32> {
        self.terms.keys().map(|a| a.degree()).max().ok_or(Error::ZeroMap)
    }

    pub fn vanishing_order(&self) -> Result<u32> {
        self.terms.keys().map(|a| a.degree()).min().ok_or(Error::ZeroMap)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().ok() == self.vanishing_order().ok()
    }

    pub fn preserves_origin(&self) -> bool {
        !self.terms.contains_key(&MultiIndex::zero(self.n))
    }

    pub fn part_of_degree(&self, d: u32) -> PolyMap {
        PolyMap {
            n: self.n,
            target: self.target,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == d)
                .map(|(a, v)| (a.clone(), v.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous parts, ascending by degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, PolyMap)> {
        let mut degs: Vec<u32> = self.terms.keys().map(|a| a.degree()).collect();
        degs.dedup();
        degs.into_iter()
            .map(|d| (d, self.part_of_degree(d)))
            .collect()
    }

    fn check_same_domain(&self, other: &PolyMap) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap> {
        self.check_same_domain(other)?;
        if self.target != other.target {
            return Err(Error::DimensionMismatch {
                expected: self.target,
                found: other.target,
            });
        }
        let mut out = self.clone();
        for (a, v) in &other.terms {
            for (i, c) in v.iter().enumerate() {
                out.add_coeff(a.clone(), i, c.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Cq) -> PolyMap {
        let mut out = PolyMap::zero(self.n, self.target);
        for (a, v) in &self.terms {
            for (i, c) in v.iter().enumerate() {
                out.add_coeff(a.clone(), i, c.clone() * s.clone());
            }
        }
        out
    }

    /// `f ⊕ g`, target dimension `N_f + N_g`.
    pub fn direct_sum(&self, other: &PolyMap) -> Result<PolyMap> {
        self.check_same_domain(other)?;
        let mut out = PolyMap::zero(self.n, self.target + other.target);
        for (a, v) in &self.terms {
            for (i, c) in v.iter().enumerate() {
                out.add_coeff(a.clone(), i, c.clone());
            }
        }
        for (a, v) in &other.terms {
            for (i, c) in v.iter().enumerate() {
                out.add_coeff(a.clone(), self.target + i, c.clone());
            }
        }
        Ok(out)
    }

    /// Juxtaposition `sqrt(wf) f ⊕ sqrt(wg) g` for weights that are rational squares.
    ///
    /// Its squared norm is `wf ||f||^2 + wg ||g||^2`. Non-square weights are
    /// handled at the form level (see `HermForm::affine_combination`).
    pub fn juxtapose(&self, other: &PolyMap, wf: &Q, wg: &Q) -> Result<PolyMap> {
        if wf < &Q::zero() || wg < &Q::zero() {
            return Err(Error::NegativeWeight);
        }
        let sf = rational_sqrt(wf).ok_or_else(|| Error::WeightNotSquare(format_rational(wf)))?;
        let sg = rational_sqrt(wg).ok_or_else(|| Error::WeightNotSquare(format_rational(wg)))?;
        self.scale(&cr(sf)).direct_sum(&other.scale(&cr(sg)))
    }

    /// All pairwise products `f_i g_j`, component index `i * N_g + j`.
    pub fn tensor(&self, other: &PolyMap) -> Result<PolyMap> {
        self.check_same_domain(other)?;
        let mut out = PolyMap::zero(self.n, self.target * other.target);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let ab = a.add(b);
                for (i, x) in u.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in v.iter().enumerate() {
                        out.add_coeff(ab.clone(), i * other.target + j, x.clone() * y.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`: requires `inner.target() == self.n()`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.target != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: inner.target,
            });
        }
        let subs = inner.components();
        let comps = self
            .components()
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Poly::zero(inner.n)
                } else {
                    p.compose(&subs)
                }
            })
            .collect();
        Ok(PolyMap::from_components(inner.n, comps))
    }

    pub fn eval(&self, z: &[Cq]) -> Vec<Cq> {
        self.components().iter().map(|p| p.eval(z)).collect()
    }

    /// `z -> U z` applied on the target side.
    pub fn apply_linear(&self, u: &Matrix<Cq>) -> PolyMap {
        let rows = u.len();
        let mut out = PolyMap::zero(self.n, rows);
        for (a, v) in &self.terms {
            for (r, row) in u.iter().enumerate() {
                let c = row
                    .iter()
                    .zip(v)
                    .fold(Cq::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                out.add_coeff(a.clone(), r, c);
            }
        }
        out
    }

    /// `z -> f(U z)`.
    pub fn precompose_linear(&self, u: &Matrix<Cq>) -> Result<PolyMap> {
        let lin = PolyMap::identity(self.n).apply_linear(u);
        self.compose(&lin)
    }

    /// Remove components that vanish identically (norm-equivalent result).
    pub fn drop_zero_components(&self) -> PolyMap {
        let keep: Vec<usize> = (0..self.target)
            .filter(|&i| self.terms.values().any(|v| !v[i].is_zero()))
            .collect();
        let mut out = PolyMap::zero(self.n, keep.len());
        for (a, v) in &self.terms {
            for (k, &i) in keep.iter().enumerate() {
                out.add_coeff(a.clone(), k, v[i].clone());
            }
        }
        out
    }

    /// Each component is a single scalar multiple of a monomial.
    pub fn is_monomial(&self) -> bool {
        (0..self.target).all(|i| self.terms.values().filter(|v| !v[i].is_zero()).count() <= 1)
    }

    /// `p(x)` with `x_j = |z_j|^2`; coefficient of `x^alpha` is the sum of
    /// `|coefficient|^2` over components carrying `z^alpha`.
    pub fn real_form_of_monomial(&self) -> Result<RealForm> {
        if !self.is_monomial() {
            return Err(Error::NotMonomial);
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, v)| (a.clone(), v.iter().map(abs2).fold(Q::zero(), |s, t| s + t)));
        Ok(RealForm::from_terms(self.n, terms))
    }

    /// The map `z^alpha` scaled, as a one-component map.
    pub fn scalar_monomial(alpha: MultiIndex, c: Cq) -> PolyMap {
        let n = alpha.len();
        PolyMap::from_components(n, vec![Poly::monomial(alpha, c)])
    }

    /// `z^{⊗k}` (the `k`-fold tensor power of the identity).
    pub fn tensor_power_identity(n: usize, k: u32) -> PolyMap {
        let mut out = PolyMap::constant(n, Cq::one());
        for _ in 0..k {
            out = out.tensor(&PolyMap::identity(n)).expect("same domain");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ci, cq, q, qi};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn whitney_like() -> PolyMap {
        PolyMap::from_entries(
            2,
            3,
            [
                (mi(&[1, 0]), 0, ci(1)),
                (mi(&[1, 1]), 1, ci(1)),
                (mi(&[0, 2]), 2, ci(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn degree_and_order() {
        let f = whitney_like();
        assert_eq!(f.degree(), Ok(2));
        assert_eq!(f.vanishing_order(), Ok(1));
        let id = PolyMap::identity(3);
        assert_eq!((id.degree(), id.vanishing_order()), (Ok(1), Ok(1)));
        assert_eq!(PolyMap::zero(2, 1).degree(), Err(Error::ZeroMap));
        assert_eq!(PolyMap::zero(2, 1).vanishing_order(), Err(Error::ZeroMap));
    }

    #[test]
    fn homogeneous_parts_split_by_degree() {
        let f = whitney_like();
        let parts = f.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1.coeff(&mi(&[1, 0])), vec![ci(1), ci(0), ci(0)]);
        assert_eq!(parts[1].1.terms().len(), 2);
        let id = PolyMap::identity(2);
        assert_eq!(id.homogeneous_parts(), vec![(1, id.clone())]);
        // q = 1 - z1/2
        let qmap = PolyMap::from_entries(
            2,
            1,
            [(mi(&[0, 0]), 0, ci(1)), (mi(&[1, 0]), 0, cr(q(-1, 2)))],
        )
        .unwrap();
        let parts = qmap.homogeneous_parts();
        assert_eq!(parts[0], (0, PolyMap::constant(2, ci(1))));
        assert_eq!(parts[1].1.coeff(&mi(&[1, 0])), vec![cr(q(-1, 2))]);
    }

    #[test]
    fn tensor_and_compose() {
        let z = PolyMap::identity(2);
        let zz = z.tensor(&z).unwrap();
        assert_eq!(zz.target(), 4);
        assert_eq!(zz.coeff(&mi(&[1, 1])), vec![ci(0), ci(1), ci(1), ci(0)]);
        let one = PolyMap::constant(2, ci(1));
        assert_eq!(whitney_like().tensor(&one).unwrap(), whitney_like());

        let w2 = PolyMap::scalar_monomial(mi(&[2]), ci(1));
        assert_eq!(w2.compose(&w2).unwrap(), PolyMap::scalar_monomial(mi(&[4]), ci(1)));
        assert_eq!(PolyMap::identity(2).compose(&whitney_like()), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
        assert_eq!(PolyMap::identity(3).compose(&whitney_like()).unwrap(), whitney_like());
    }

    #[test]
    fn juxtaposition_weights() {
        let f = whitney_like();
        let g = PolyMap::identity(2);
        let j = f.juxtapose(&g, &q(9, 25), &q(16, 25)).unwrap();
        assert_eq!(j.target(), 5);
        assert_eq!(j.coeff(&mi(&[1, 1]))[1], cr(q(3, 5)));
        assert!(matches!(f.juxtapose(&g, &q(1, 2), &q(1, 2)), Err(Error::WeightNotSquare(_))));
        assert_eq!(f.juxtapose(&g, &qi(1), &qi(0)).unwrap().drop_zero_components(), f);
    }

    #[test]
    fn real_form_of_monomials() {
        let rf = whitney_like().real_form_of_monomial().unwrap();
        assert_eq!(rf.term_count(), 3);
        let z = PolyMap::identity(2);
        let zz = z.tensor(&z).unwrap();
        assert_eq!(zz.real_form_of_monomial().unwrap().coeff(&mi(&[1, 1])), qi(2));
        let sum = PolyMap::from_components(2, vec![Poly::var(2, 0).add(&Poly::var(2, 1))]);
        assert_eq!(sum.real_form_of_monomial(), Err(Error::NotMonomial));
        let c = PolyMap::scalar_monomial(mi(&[1, 0]), cq(qi(3), qi(4)));
        assert_eq!(c.real_form_of_monomial().unwrap().coeff(&mi(&[1, 0])), qi(25));
    }
}
