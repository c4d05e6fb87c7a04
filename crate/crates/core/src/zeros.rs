//! Inverse images of the origin: the homogenized denominator `Hq`, the finite
//! candidate set `S(q)`, and the tensor operation `E` that turns a proper
//! polynomial map into a homogeneous one.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{BiPoly, HermForm};
use crate::index::MultiIndex;
use crate::map::PolyMap;
use crate::num::{inner, norm2, Cq, Q};
use crate::poly::Poly;
use crate::roots::{complex_roots, RootReport};

/// `<w, y> = Σ w_j y_j` in `2n` variables.
fn pairing(n: usize) -> BiPoly {
    (0..n).fold(Poly::zero(2 * n), |acc, j| {
        acc.add(&Poly::var(2 * n, j).mul(&Poly::var(2 * n, n + j)))
    })
}

fn check_denominator(q: &Poly<Cq>, d: u32) -> Result<()> {
    let Some(deg) = q.degree() else {
        return Err(Error::Precondition("q is zero".into()));
    };
    if deg >= d {
        return Err(Error::Precondition(format!("deg q = {deg} must be below d = {d}")));
    }
    if q.coeff(&MultiIndex::zero(q.nvars())).is_zero() {
        return Err(Error::Precondition("q(0) = 0".into()));
    }
    Ok(())
}

/// `Hq(w, y) = Σ_j <w, y>^{d-j} q_j(w)`, `q_j` the homogeneous parts of `q`.
pub fn homogenize_denominator(q: &Poly<Cq>, d: u32) -> Result<BiPoly> {
    check_denominator(q, d)?;
    let n = q.nvars();
    let l = pairing(n);
    let w: Vec<usize> = (0..n).collect();
    let mut h = Poly::zero(2 * n);
    for j in 0..d {
        let qj = q.homogeneous_part(j);
        if qj.is_zero() {
            continue;
        }
        h = h.add(&l.pow(d - j).mul(&qj.embed(2 * n, &w)));
    }
    if h.group_by_leading_vars(n).keys().any(|a| a.degree() != d) {
        return Err(Error::Inconsistent("Hq is not homogeneous in w".into()));
    }
    if n > 0 && !h.is_divisible_by(&l) {
        return Err(Error::Inconsistent("Hq is not divisible by <w, y>".into()));
    }
    Ok(h)
}

/// `w -> Hq(w, a)` with `y = ā`, as a polynomial in `w`.
pub fn hq_at(q: &Poly<Cq>, d: u32, a: &[Cq]) -> Result<Poly<Cq>> {
    let n = q.nvars();
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let h = homogenize_denominator(q, d)?;
    let mut subs: Vec<Poly<Cq>> = (0..n).map(|j| Poly::var(n, j)).collect();
    subs.extend(a.iter().map(|c| Poly::constant(n, c.conj())));
    Ok(h.compose(&subs))
}

/// `Hq(w, a) = 0` identically in `w`.
pub fn candidate_check(q: &Poly<Cq>, d: u32, a: &[Cq]) -> Result<bool> {
    Ok(hq_at(q, d, a)?.is_zero())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CandidateStatus {
    /// The listed points are all of `S(q)`.
    Exact,
    /// Every listed point lies in `S(q)`; some coordinates were not resolved.
    VerifiedSubset,
    /// The candidate grid was too large; only the coefficient system is returned.
    GeneratorsOnly,
}

impl CandidateStatus {
    pub fn label(self) -> &'static str {
        match self {
            CandidateStatus::Exact => "EXACT",
            CandidateStatus::VerifiedSubset => "VERIFIED_SUBSET",
            CandidateStatus::GeneratorsOnly => "GENERATORS_ONLY",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CandidateSet {
    pub status: CandidateStatus,
    /// Points `a` with `Hq(w, a) = 0` identically, verified exactly.
    pub points: Vec<Vec<Cq>>,
    /// Roots of `t -> Hq(e_k, t e_k)`; `y_k = ā_k` must be one of them.
    pub coordinates: Vec<RootReport>,
    /// Coefficients `c_α(y)` of `w^α` in `Hq`; `S(q)` is their common zero set.
    pub system: Vec<(MultiIndex, Poly<Cq>)>,
}

pub const CANDIDATE_GRID_CAP: usize = 100_000;

/// `P_k(t) = Σ_j q_j(e_k) t^{d-j}`, coefficients by power of `t`.
pub fn coordinate_polynomial(q: &Poly<Cq>, d: u32, k: usize) -> Vec<Cq> {
    let n = q.nvars();
    let mut p = vec![Cq::zero(); d as usize + 1];
    for j in 0..d {
        let mut e = vec![0u32; n];
        e[k] = j;
        p[(d - j) as usize] = q.coeff(&MultiIndex::new(e));
    }
    p
}

/// The candidate set `S(q) = { a : Hq(w, a) = 0 for all w }`.
///
/// Setting `w = e_k` shows `ā_k` is a root of `P_k`, so `S(q)` lies in the
/// grid of coordinate roots; every grid point is checked exactly.
pub fn s_of_q(q: &Poly<Cq>, d: u32, bits: u32) -> Result<CandidateSet> {
    check_denominator(q, d)?;
    let n = q.nvars();
    let h = homogenize_denominator(q, d)?;
    let system: Vec<(MultiIndex, Poly<Cq>)> = h.group_by_leading_vars(n).into_iter().collect();
    let coordinates: Vec<RootReport> = (0..n)
        .map(|k| complex_roots(&coordinate_polynomial(q, d, k), bits))
        .collect();
    let complete = coordinates.iter().all(|r| r.complete() && r.brackets.is_empty());
    let choices: Vec<Vec<Cq>> = coordinates
        .iter()
        .map(|r| r.exact.iter().map(|(y, _)| y.conj()).collect())
        .collect();
    let grid = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len().max(1)));
    let hq_vanishes = |a: &[Cq]| {
        let mut subs: Vec<Poly<Cq>> = (0..n).map(|j| Poly::var(n, j)).collect();
        subs.extend(a.iter().map(|c| Poly::constant(n, c.conj())));
        h.compose(&subs).is_zero()
    };
    let mut points = Vec::new();
    let status = match grid {
        Some(g) if g <= CANDIDATE_GRID_CAP && choices.iter().all(|c| !c.is_empty()) => {
            let mut idx = vec![0usize; n];
            loop {
                let a: Vec<Cq> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
                if hq_vanishes(&a) {
                    points.push(a);
                }
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
            if complete {
                CandidateStatus::Exact
            } else {
                CandidateStatus::VerifiedSubset
            }
        }
        _ => {
            let origin = vec![Cq::zero(); n];
            if hq_vanishes(&origin) {
                points.push(origin);
            }
            CandidateStatus::GeneratorsOnly
        }
    };
    Ok(CandidateSet {
        status,
        points,
        coordinates,
        system,
    })
}

/// Exact orthogonal projection onto the span of `vectors`, by Gram–Schmidt
/// over the Gaussian rationals.
fn projector(vectors: &[Vec<Cq>]) -> impl Fn(&[Cq]) -> Vec<Cq> {
    let mut basis: Vec<(Vec<Cq>, Cq)> = Vec::new();
    for v in vectors {
        let mut u = v.clone();
        for (b, bb) in &basis {
            let c = inner(&u, b) / bb.clone();
            for (x, y) in u.iter_mut().zip(b) {
                *x = x.clone() - c.clone() * y.clone();
            }
        }
        if u.iter().any(|x| !x.is_zero()) {
            let uu = inner(&u, &u);
            basis.push((u, uu));
        }
    }
    move |v: &[Cq]| {
        let mut out = vec![Cq::zero(); v.len()];
        for (b, bb) in &basis {
            let c = inner(v, b) / bb.clone();
            for (x, y) in out.iter_mut().zip(b) {
                *x = x.clone() + c.clone() * y.clone();
            }
        }
        out
    }
}

fn require_proper(p: &PolyMap) -> Result<()> {
    if !HermForm::squared_norm(p).is_proper_form() {
        return Err(Error::NotProper("||p||^2 - 1 does not vanish on the sphere".into()));
    }
    Ok(())
}

/// `p = A ⊕ B` with `A` the projection of `p` onto the span of the
/// coefficient vectors of its lowest-order part.
pub fn split_lowest(p: &PolyMap) -> Result<(PolyMap, PolyMap)> {
    let nu = p.vanishing_order()?;
    let d = p.degree()?;
    if nu == d {
        return Err(Error::NothingToSplit);
    }
    require_proper(p)?;
    let low: Vec<Vec<Cq>> = p
        .terms()
        .iter()
        .filter(|(a, _)| a.degree() == nu)
        .map(|(_, v)| v.clone())
        .collect();
    let proj = projector(&low);
    let mut a = PolyMap::zero(p.n(), p.target());
    let mut b = PolyMap::zero(p.n(), p.target());
    for (alpha, v) in p.terms() {
        let pv = proj(v);
        for (i, (x, y)) in pv.iter().zip(v).enumerate() {
            a.add_coeff(alpha.clone(), i, x.clone());
            b.add_coeff(alpha.clone(), i, y.clone() - x.clone());
        }
    }
    let (a, b) = (a.drop_zero_components(), b.drop_zero_components());
    if a.degree()? >= d || b.vanishing_order()? <= nu || b.degree()? != d || a.vanishing_order()? != nu {
        return Err(Error::Inconsistent("lowest and highest order parts are not orthogonal".into()));
    }
    let total = HermForm::squared_norm(&a).add(&HermForm::squared_norm(&b));
    if total != HermForm::squared_norm(p) {
        return Err(Error::Inconsistent("split does not preserve the squared norm".into()));
    }
    Ok((a, b))
}

/// `Ep = (A ⊗ z) ⊕ B`.
pub fn e_op(p: &PolyMap) -> Result<PolyMap> {
    let (a, b) = split_lowest(p)?;
    let out = a.tensor(&PolyMap::identity(p.n()))?.direct_sum(&b)?.drop_zero_components();
    if out.vanishing_order()? != p.vanishing_order()? + 1 || out.degree()? != p.degree()? {
        return Err(Error::Inconsistent("E changed the degree or did not raise the order by one".into()));
    }
    require_proper(&out)?;
    Ok(out)
}

/// Iterate `E` until the map is homogeneous; `||H||^2 = ||z||^{2d}`.
pub fn homogenize_by_tensor(p: &PolyMap) -> Result<(PolyMap, u32)> {
    require_proper(p)?;
    let d = p.degree()?;
    let mut h = p.clone();
    let mut steps = 0;
    while h.vanishing_order()? < d {
        h = e_op(&h)?;
        steps += 1;
    }
    if HermForm::squared_norm(&h) != HermForm::norm_power(p.n(), d) {
        return Err(Error::Inconsistent("homogenized map is not norm-equivalent to z^{⊗d}".into()));
    }
    Ok((h, steps))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZeroSet {
    Empty,
    Origin,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroSetReport {
    pub zero_set: ZeroSet,
    pub steps: u32,
    pub homogenized: PolyMap,
    /// For each proposed point: `p(a) = 0`, and `||H(a)||^2 = ||a||^{2d}`.
    pub tested: Vec<(Vec<Cq>, bool, bool)>,
}

/// The zero set of a proper polynomial map is empty or the origin. Each
/// proposed nonzero point is refuted through `||H(a)||^2 = ||a||^{2d} > 0`,
/// since `E` never removes zeros.
pub fn zero_set_check(p: &PolyMap, proposed: &[Vec<Cq>]) -> Result<ZeroSetReport> {
    let (h, steps) = homogenize_by_tensor(p)?;
    let d = p.degree()?;
    let zero_set = if p.preserves_origin() { ZeroSet::Origin } else { ZeroSet::Empty };
    let mut tested = Vec::new();
    for a in proposed {
        if a.len() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                found: a.len(),
            });
        }
        let is_zero = p.eval(a).iter().all(|c| c.is_zero());
        let hn = norm2(&h.eval(a));
        let identity = hn == pow_q(&norm2(a), d);
        let origin = a.iter().all(|c| c.is_zero());
        if is_zero && !origin {
            return Err(Error::Inconsistent(format!("nonzero zero of a proper map at {a:?}")));
        }
        tested.push((a.clone(), is_zero, identity));
    }
    Ok(ZeroSetReport {
        zero_set,
        steps,
        homogenized: h,
        tested,
    })
}

fn pow_q(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

/// Group the points of a candidate set by coordinate, for display.
pub fn candidate_coordinates(set: &CandidateSet) -> BTreeMap<usize, Vec<Cq>> {
    set.coordinates
        .iter()
        .enumerate()
        .map(|(k, r)| (k, r.exact.iter().map(|(y, _)| y.conj()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{cr, q, qi};

    fn lin(n: usize, c0: Q, c: &[(usize, Q)]) -> Poly<Cq> {
        let mut p = Poly::constant(n, cr(c0));
        for (i, x) in c {
            p.add_term(MultiIndex::unit(n, *i), cr(x.clone()));
        }
        p
    }

    #[test]
    fn hq_small_cases() {
        let h = homogenize_denominator(&Poly::one(2), 1).unwrap();
        assert_eq!(h, pairing(2));
        let q1 = lin(2, qi(1), &[(0, q(-1, 2))]);
        let h = homogenize_denominator(&q1, 2).unwrap();
        let l = pairing(2);
        let w1 = Poly::var(4, 0).scale(&cr(q(1, 2)));
        assert_eq!(h, l.mul(&l.sub(&w1)));
        assert!(homogenize_denominator(&q1, 1).is_err());
    }

    #[test]
    fn candidate_set_two_variables() {
        let q1 = lin(2, qi(1), &[(0, q(-1, 2))]);
        let s = s_of_q(&q1, 2, 40).unwrap();
        assert_eq!(s.status, CandidateStatus::Exact);
        assert_eq!(s.points.len(), 2);
        assert!(s.points.contains(&vec![Cq::zero(), Cq::zero()]));
        assert!(s.points.contains(&vec![cr(q(1, 2)), Cq::zero()]));
        assert!(!candidate_check(&Poly::one(2), 1, &[cr(q(1, 3)), Cq::zero()]).unwrap());
    }

    #[test]
    fn candidate_set_one_variable() {
        let q2 = lin(1, qi(1), &[(0, q(-1, 2))]).mul(&lin(1, qi(1), &[(0, q(-1, 3))]));
        let s = s_of_q(&q2, 3, 40).unwrap();
        assert_eq!(s.status, CandidateStatus::Exact);
        let mut xs: Vec<Q> = s.points.iter().map(|p| p[0].re.clone()).collect();
        xs.sort();
        assert_eq!(xs, vec![qi(0), q(1, 3), q(1, 2)]);
    }

    #[test]
    fn whitney_split_and_homogenize() {
        let e = |v: &[u32]| MultiIndex::new(v.to_vec());
        let p = PolyMap::from_entries(2, 3, [(e(&[1, 0]), 0, Cq::one()), (e(&[1, 1]), 1, Cq::one()), (e(&[0, 2]), 2, Cq::one())]).unwrap();
        let (a, b) = split_lowest(&p).unwrap();
        assert_eq!(a.target(), 1);
        assert_eq!(b.target(), 2);
        let (h, steps) = homogenize_by_tensor(&p).unwrap();
        assert_eq!(steps, 1);
        assert_eq!(h.target(), 4);
        assert!(matches!(split_lowest(&h), Err(Error::NothingToSplit)));
    }
}
