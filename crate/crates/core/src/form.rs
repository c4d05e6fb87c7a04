//! Hermitian coefficient forms `R(z, z̄) = Σ c_{αβ} z^α z̄^β`.
//!
//! Both triangles are stored, so `entry(β, α)` is always the conjugate of
//! `entry(α, β)`. Properness is decided by exact divisibility of
//! `R(z, y) - 1` by `s(z, y) = Σ z_j y_j - 1`, with `y` in place of `z̄`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::linalg::{self, hermitian_elimination, quadratic_form, Elimination, Matrix, Pivot};
use crate::map::PolyMap;
use crate::num::{cr, inner, is_real, rational_sqrt, Cq, Q};
use crate::poly::Poly;
use crate::real_form::RealForm;

/// Polynomial in `z_1..z_n, y_1..y_n` with `y_j` standing for `z̄_j`.
pub type BiPoly = Poly<Cq>;

/// `s(z, y) = Σ z_j y_j - 1`.
pub fn sphere_generator(n: usize) -> BiPoly {
    let mut s = Poly::constant(2 * n, -Cq::one());
    for j in 0..n {
        s = s.add(&Poly::var(2 * n, j).mul(&Poly::var(2 * n, n + j)));
    }
    s
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermForm {
    n: usize,
    entries: BTreeMap<(MultiIndex, MultiIndex), Cq>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pd,
    Psd,
    NotPsd,
}

impl Verdict {
    pub fn is_psd(self) -> bool {
        self != Verdict::NotPsd
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pd => "PD",
            Verdict::Psd => "PSD",
            Verdict::NotPsd => "NOT_PSD",
        }
    }
}

/// Outcome of an exact positivity test together with data that lets anyone
/// re-check it.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdCertificate {
    pub verdict: Verdict,
    /// Row/column labels of the tested matrix.
    pub basis: Vec<MultiIndex>,
    pub pivots: Vec<Pivot>,
    /// For `NotPsd`, a vector `v` with `v* M v < 0`.
    pub witness: Option<Vec<Cq>>,
}

impl PsdCertificate {
    /// Re-check the certificate against `form` using only exact arithmetic.
    pub fn verify(&self, form: &HermForm) -> bool {
        let m = form.matrix(&self.basis);
        match (&self.verdict, &self.witness) {
            (Verdict::NotPsd, Some(v)) => quadratic_form(&m, v).re.is_negative(),
            (Verdict::NotPsd, None) => false,
            (_, _) => {
                if self.pivots.iter().any(|p| !p.value.is_positive()) {
                    return false;
                }
                let k = self.basis.len();
                let mut rebuilt = vec![vec![Cq::zero(); k]; k];
                for p in &self.pivots {
                    let d = cr(p.value.clone());
                    for (i, ri) in p.row.iter().enumerate() {
                        if ri.is_zero() {
                            continue;
                        }
                        for (j, rj) in p.row.iter().enumerate() {
                            rebuilt[i][j] = rebuilt[i][j].clone() + ri.conj() * rj.clone() / d.clone();
                        }
                    }
                }
                rebuilt == m && (self.verdict == Verdict::Psd || self.pivots.len() == k)
            }
        }
    }

    /// Factors `(d_k, l_k)` with `M = Σ d_k l_k l_k^*`, available for PSD verdicts.
    pub fn factors(&self) -> Vec<(Q, Vec<Cq>)> {
        self.pivots
            .iter()
            .map(|p| {
                let d = cr(p.value.clone());
                (p.value.clone(), p.row.iter().map(|r| r.conj() / d.clone()).collect())
            })
            .collect()
    }
}

impl HermForm {
    pub fn zero(n: usize) -> Self {
        HermForm {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// The constant form `1`.
    pub fn one(n: usize) -> Self {
        let mut f = Self::zero(n);
        f.add_entry(MultiIndex::zero(n), MultiIndex::zero(n), Cq::one());
        f
    }

    /// `(Σ |z_j|^2)^m`.
    pub fn norm_power(n: usize, m: u32) -> Self {
        Self::from_real_form(&RealForm::from_poly(RealForm::simplex_sum(n).poly().pow(m)))
    }

    /// Build from entries with `α <= β`; the other triangle is implied.
    pub fn from_upper(n: usize, entries: impl IntoIterator<Item = (MultiIndex, MultiIndex, Cq)>) -> Result<Self> {
        let mut f = Self::zero(n);
        for (a, b, c) in entries {
            for idx in [&a, &b] {
                if idx.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: idx.len(),
                    });
                }
            }
            if a == b && !is_real(&c) {
                return Err(Error::Precondition(format!("diagonal entry at {a} is not real")));
            }
            if a > b {
                return Err(Error::Precondition(format!("entry ({a}, {b}) is below the diagonal")));
            }
            f.add_entry(a, b, c);
        }
        Ok(f)
    }

    /// Add `c` at `(α, β)` and `conj(c)` at `(β, α)`.
    ///
    /// On the diagonal only the real part of `c` is used.
    pub fn add_entry(&mut self, a: MultiIndex, b: MultiIndex, c: Cq) {
        if a == b {
            let c = cr(c.re);
            Self::bump(&mut self.entries, (a.clone(), b), c);
        } else {
            Self::bump(&mut self.entries, (b.clone(), a.clone()), c.conj());
            Self::bump(&mut self.entries, (a, b), c);
        }
    }

    fn bump(map: &mut BTreeMap<(MultiIndex, MultiIndex), Cq>, key: (MultiIndex, MultiIndex), c: Cq) {
        if c.is_zero() {
            return;
        }
        let v = map.entry(key.clone()).or_insert_with(Cq::zero);
        *v = v.clone() + c;
        if v.is_zero() {
            map.remove(&key);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, a: &MultiIndex, b: &MultiIndex) -> Cq {
        self.entries
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Cq::zero)
    }

    /// All stored entries, both triangles.
    pub fn entries(&self) -> &BTreeMap<(MultiIndex, MultiIndex), Cq> {
        &self.entries
    }

    /// Entries with `α <= β`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &Cq)> {
        self.entries
            .iter()
            .filter(|((a, b), _)| a <= b)
            .map(|((a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices occurring in some stored entry, ascending.
    pub fn support(&self) -> Vec<MultiIndex> {
        let set: BTreeSet<MultiIndex> = self.entries.keys().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        set.into_iter().collect()
    }

    /// Largest `|α|` among stored entries.
    pub fn degree(&self) -> Option<u32> {
        self.entries.keys().map(|(a, _)| a.degree()).max()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(a, b)| a == b)
    }

    /// Every entry has `|α| = |β| = m` for one `m`.
    pub fn is_bihomogeneous(&self) -> bool {
        let mut degs = self.entries.keys().flat_map(|(a, b)| [a.degree(), b.degree()]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// No entry involves the constant index, i.e. the map vanishes at the origin.
    pub fn origin_preserving(&self) -> bool {
        self.entries.keys().all(|(a, b)| !a.is_zero() && !b.is_zero())
    }

    /// Some entry pairs a nonconstant index.
    pub fn is_nonconstant(&self) -> bool {
        self.entries.keys().any(|(a, b)| !a.is_zero() || !b.is_zero())
    }

    /// `||f||^2`: entry `(α, β)` is `<c_α, c_β>`.
    pub fn squared_norm(f: &PolyMap) -> Self {
        let mut out = Self::zero(f.n());
        let terms: Vec<(&MultiIndex, &Vec<Cq>)> = f.terms().iter().collect();
        for (i, (a, ca)) in terms.iter().enumerate() {
            for (b, cb) in terms.iter().skip(i) {
                out.add_entry((*a).clone(), (*b).clone(), inner(ca, cb));
            }
        }
        out
    }

    pub fn diagonal(n: usize, diag: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut out = Self::zero(n);
        for (a, c) in diag {
            out.add_entry(a.clone(), a, cr(c));
        }
        out
    }

    /// Diagonal form whose entry at `(α, α)` is the coefficient of `x^α`.
    pub fn from_real_form(p: &RealForm) -> Self {
        Self::diagonal(p.n(), p.terms().map(|(a, c)| (a.clone(), c.clone())))
    }

    /// The real form of a diagonal form.
    pub fn to_real_form(&self) -> Option<RealForm> {
        if !self.is_diagonal() {
            return None;
        }
        Some(RealForm::from_terms(
            self.n,
            self.entries.iter().map(|((a, _), c)| (a.clone(), c.re.clone())),
        ))
    }

    pub fn add(&self, other: &HermForm) -> HermForm {
        let mut out = self.clone();
        for (k, c) in &other.entries {
            Self::bump(&mut out.entries, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HermForm) -> HermForm {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> HermForm {
        let mut out = Self::zero(self.n);
        if s.is_zero() {
            return out;
        }
        let s = cr(s.clone());
        for (k, c) in &self.entries {
            out.entries.insert(k.clone(), c.clone() * s.clone());
        }
        out
    }

    /// `Σ w_i F_i` for rational weights.
    pub fn affine_combination(n: usize, terms: &[(Q, &HermForm)]) -> HermForm {
        terms
            .iter()
            .fold(Self::zero(n), |acc, (w, f)| acc.add(&f.scale(w)))
    }

    /// Form of the pointwise product `R_1 R_2`.
    pub fn mul(&self, other: &HermForm) -> HermForm {
        let mut out = Self::zero(self.n);
        for ((a1, b1), c1) in &self.entries {
            for ((a2, b2), c2) in &other.entries {
                Self::bump(&mut out.entries, (a1.add(a2), b1.add(b2)), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `R(z, y)` with `y` in variables `n..2n`.
    pub fn to_bipoly(&self) -> BiPoly {
        Poly::from_terms(
            2 * self.n,
            self.entries.iter().map(|((a, b), c)| (a.concat(b), c.clone())),
        )
    }

    /// Inverse of [`HermForm::to_bipoly`]; fails if the polynomial is not Hermitian.
    pub fn from_bipoly(n: usize, p: &BiPoly) -> Result<HermForm> {
        let mut out = Self::zero(n);
        for (ab, c) in p.terms() {
            let (a, b) = ab.split_at(n);
            out.entries.insert((a, b), c.clone());
        }
        for ((a, b), c) in &out.entries {
            if out.entry(b, a) != c.conj() {
                return Err(Error::Precondition(format!("not Hermitian at ({a}, {b})")));
            }
        }
        Ok(out)
    }

    /// Remainder of `R(z, y)` on division by `s(z, y)`; zero iff `R` vanishes on the sphere.
    pub fn sphere_remainder(&self) -> BiPoly {
        self.to_bipoly().div_rem(&sphere_generator(self.n)).1
    }

    /// `R = 0` on the unit sphere.
    pub fn vanishes_on_sphere(&self) -> bool {
        if self.is_diagonal() {
            let p = self.to_real_form().expect("diagonal");
            return p.hyperplane_residual().add(&Poly::one(self.n.saturating_sub(1))).is_zero();
        }
        self.vanishes_on_sphere_by_division()
    }

    /// The general divisibility path, also used for diagonal inputs in tests.
    pub fn vanishes_on_sphere_by_division(&self) -> bool {
        self.sphere_remainder().is_zero()
    }

    /// PSD, nonconstant, and `R - 1` vanishes on the sphere.
    pub fn is_proper_form(&self) -> bool {
        self.is_nonconstant() && self.sub(&Self::one(self.n)).vanishes_on_sphere() && self.is_psd().verdict.is_psd()
    }

    /// Dense matrix on the given labels.
    pub fn matrix(&self, basis: &[MultiIndex]) -> Matrix<Cq> {
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.entry(a, b)).collect())
            .collect()
    }

    /// Exact positivity test on the support; PD means full rank there.
    pub fn is_psd(&self) -> PsdCertificate {
        self.certificate(self.support())
    }

    /// Positivity test relative to a basis containing the support; PD means
    /// positive definite on the span of the whole basis.
    pub fn is_psd_on(&self, basis: &[MultiIndex]) -> Result<PsdCertificate> {
        let set: BTreeSet<&MultiIndex> = basis.iter().collect();
        if let Some(a) = self.support().iter().find(|a| !set.contains(a)) {
            return Err(Error::Precondition(format!("index {a} not in basis")));
        }
        Ok(self.certificate(basis.to_vec()))
    }

    fn certificate(&self, basis: Vec<MultiIndex>) -> PsdCertificate {
        let m = self.matrix(&basis);
        match hermitian_elimination(&m) {
            Elimination::Psd { pivots } => {
                let verdict = if pivots.len() == basis.len() {
                    Verdict::Pd
                } else {
                    Verdict::Psd
                };
                PsdCertificate {
                    verdict,
                    basis,
                    pivots,
                    witness: None,
                }
            }
            Elimination::Negative { pivots, witness } => PsdCertificate {
                verdict: Verdict::NotPsd,
                basis,
                pivots,
                witness: Some(witness),
            },
        }
    }

    /// Exact rank of the coefficient matrix.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix(&self.support()))
    }

    /// A map `g` with `||g||^2 = R`, when `R` is PSD and every pivot of the
    /// elimination is a rational square.
    pub fn gram_map_exact(&self) -> Result<Option<PolyMap>> {
        let cert = self.is_psd();
        if !cert.verdict.is_psd() {
            return Err(Error::NotPsd);
        }
        let factors = cert.factors();
        let mut out = PolyMap::zero(self.n, factors.len());
        for (k, (d, l)) in factors.iter().enumerate() {
            let Some(r) = rational_sqrt(d) else {
                return Ok(None);
            };
            for (a, c) in cert.basis.iter().zip(l) {
                out.add_coeff(a.clone(), k, c.clone() * cr(r.clone()));
            }
        }
        Ok(Some(out))
    }

    /// Coefficients as a vector of rationals (real and imaginary parts) on `keys`.
    pub fn coordinates(&self, keys: &[(MultiIndex, MultiIndex)]) -> Vec<Q> {
        keys.iter()
            .flat_map(|(a, b)| {
                let c = self.entry(a, b);
                [c.re, c.im]
            })
            .collect()
    }

    /// Rewrite in a larger dimension, index `i` going to slot `target[i]`.
    pub fn embed(&self, n: usize, target: &[usize]) -> HermForm {
        let lift = |a: &MultiIndex| {
            let mut e = vec![0u32; n];
            for (i, &x) in a.exps().iter().enumerate() {
                e[target[i]] += x;
            }
            MultiIndex::new(e)
        };
        let mut out = Self::zero(n);
        for ((a, b), c) in &self.entries {
            out.entries.insert((lift(a), lift(b)), c.clone());
        }
        out
    }
}

/// `||f||^2 = ||g||^2` as functions.
pub fn norm_equivalent(f: &PolyMap, g: &PolyMap) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    Ok(HermForm::squared_norm(f) == HermForm::squared_norm(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ci, q, qi};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn map(n: usize, target: usize, t: &[(&[u32], usize, Cq)]) -> PolyMap {
        PolyMap::from_entries(n, target, t.iter().map(|(a, i, c)| (mi(a), *i, c.clone()))).unwrap()
    }

    fn whitney() -> PolyMap {
        map(2, 3, &[(&[1, 0], 0, ci(1)), (&[1, 1], 1, ci(1)), (&[0, 2], 2, ci(1))])
    }

    #[test]
    fn squared_norm_of_whitney_is_diagonal() {
        let f = HermForm::squared_norm(&whitney());
        assert!(f.is_diagonal());
        assert_eq!(f.entry(&mi(&[1, 1]), &mi(&[1, 1])), ci(1));
        assert_eq!(f.rank(), 3);
        assert!(f.is_proper_form());
        assert!(HermForm::squared_norm(&PolyMap::zero(2, 1)).is_zero());
    }

    #[test]
    fn not_proper_when_residual_survives() {
        let f = HermForm::squared_norm(&map(2, 2, &[(&[1, 0], 0, ci(1)), (&[0, 2], 1, ci(1))]));
        assert!(!f.is_proper_form());
        assert!(!f.sub(&HermForm::one(2)).vanishes_on_sphere_by_division());
        assert!(!HermForm::one(2).is_proper_form());
    }

    #[test]
    fn diag_minus_one_has_witness_e2() {
        let f = HermForm::diagonal(2, [(mi(&[1, 0]), qi(1)), (mi(&[0, 1]), qi(-1))]);
        let cert = f.is_psd();
        assert_eq!(cert.verdict, Verdict::NotPsd);
        assert_eq!(cert.witness.as_ref().unwrap()[1], ci(1));
        assert!(cert.verify(&f));
    }

    #[test]
    fn rational_unitary_preserves_norm() {
        let u = vec![vec![cr(q(3, 5)), cr(q(4, 5))], vec![cr(q(-4, 5)), cr(q(3, 5))]];
        let f = map(2, 2, &[(&[1, 0], 0, ci(1)), (&[1, 1], 1, ci(2)), (&[0, 2], 0, ci(1))]);
        assert!(norm_equivalent(&f, &f.apply_linear(&u)).unwrap());
    }

    #[test]
    fn gram_factor_reconstructs() {
        let f = map(2, 2, &[(&[1, 0], 0, ci(1)), (&[0, 1], 0, ci(1)), (&[1, 1], 1, ci(2))]);
        let form = HermForm::squared_norm(&f);
        let cert = form.is_psd();
        assert!(cert.verify(&form));
        let g = form.gram_map_exact().unwrap().unwrap();
        assert_eq!(HermForm::squared_norm(&g), form);
    }

    #[test]
    fn product_of_forms_matches_tensor() {
        let f = whitney();
        let g = PolyMap::identity(2);
        let lhs = HermForm::squared_norm(&f.tensor(&g).unwrap());
        let rhs = HermForm::squared_norm(&f).mul(&HermForm::squared_norm(&g));
        assert_eq!(lhs, rhs);
    }
}
