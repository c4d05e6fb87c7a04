//! Exact root finding for univariate polynomials with rational or
//! Gaussian-rational coefficients.
//!
//! Real roots are isolated with Sturm sequences and refined by bisection;
//! rational roots are recognised as the simplest fraction in the refined
//! bracket and confirmed by exact evaluation. Non-real roots are approximated
//! with Durand–Kerner iterations on dyadic rationals and kept only when they
//! round to an exact Gaussian-rational root.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::num::{cq, cr, two_pow, Cq, Field, Q};

/// Coefficients, index = power.
pub type UPoly<C> = Vec<C>;

pub fn trim<C: Field>(mut p: UPoly<C>) -> UPoly<C> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `None` for the zero polynomial.
pub fn degree<C: Field>(p: &[C]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval<C: Field>(p: &[C], x: &C) -> C {
    p.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn derivative<C: Field>(p: &[C]) -> UPoly<C> {
    let mut out = Vec::new();
    let mut k = C::zero();
    for c in p.iter().skip(1) {
        k = k + C::one();
        out.push(c.clone() * k.clone());
    }
    trim(out)
}

pub fn sub<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(C::zero);
            let y = b.get(i).cloned().unwrap_or_else(C::zero);
            x - y
        })
        .collect();
    trim(out)
}

/// Quotient and remainder; panics on division by zero.
pub fn div_rem<C: Field>(a: &[C], b: &[C]) -> (UPoly<C>, UPoly<C>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    let mut q = vec![C::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = r[dr].clone() / lead.clone();
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = r[shift + i].clone() - f.clone() * c.clone();
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic<C: Field>(p: &[C]) -> UPoly<C> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c.clone() / lead.clone()).collect()
        }
    }
}

/// Monic greatest common divisor; the gcd of two zero polynomials is zero.
pub fn gcd<C: Field>(a: &[C], b: &[C]) -> UPoly<C> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = div_rem(&x, &y).1;
        x = y;
        y = r;
    }
    monic(&x)
}

/// `p / gcd(p, p')`, monic.
pub fn square_free<C: Field>(p: &[C]) -> UPoly<C> {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return monic(p);
    }
    monic(&div_rem(p, &g).0)
}

/// Divide out `(t - r)` as many times as it divides; returns the multiplicity.
pub fn deflate<C: Field>(p: &mut UPoly<C>, r: &C) -> u32 {
    let lin = vec![-r.clone(), C::one()];
    let mut m = 0;
    while degree(p).is_some_and(|d| d > 0) && eval(p, r).is_zero() {
        *p = div_rem(p, &lin).0;
        m += 1;
    }
    m
}

pub fn sturm_sequence(p: &[Q]) -> Vec<UPoly<Q>> {
    let mut seq = vec![trim(p.to_vec())];
    let d = derivative(p);
    if degree(&d).is_none() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = div_rem(&seq[n - 2], &seq[n - 1]).1;
        if degree(&r).is_none() {
            return seq;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_changes(seq: &[UPoly<Q>], x: &Q) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct real roots in `(lo, hi]`.
pub fn count_real_roots(seq: &[UPoly<Q>], lo: &Q, hi: &Q) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Every real root has absolute value below this.
pub fn root_bound(p: &[Q]) -> Q {
    let d = degree(p).expect("nonzero polynomial");
    let lead = p[d].abs();
    let m = p[..d].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Q::zero);
    Q::one() + m
}

/// An isolated real root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RealRoot {
    Exact(Q),
    /// The unique root in `(lo, hi)`, known to be irrational or not yet identified.
    Bracket { lo: Q, hi: Q },
}

/// Disjoint brackets each holding exactly one real root, refined to width `2^-bits`.
pub fn real_roots(p: &[Q], bits: u32) -> Vec<RealRoot> {
    let sq = square_free(p);
    let Some(d) = degree(&sq) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&sq);
    let b = root_bound(&sq);
    let mut brackets = Vec::new();
    isolate(&sq, &seq, -b.clone(), b, &mut brackets);
    let width = Q::one() / two_pow(bits);
    let mut out: Vec<RealRoot> = brackets
        .into_iter()
        .map(|(lo, hi)| refine(&sq, lo, hi, &width))
        .collect();
    out.sort_by(|a, b| root_key(a).cmp(root_key(b)));
    out
}

fn root_key(r: &RealRoot) -> &Q {
    match r {
        RealRoot::Exact(x) => x,
        RealRoot::Bracket { lo, .. } => lo,
    }
}

fn isolate(p: &[Q], seq: &[UPoly<Q>], lo: Q, hi: Q, out: &mut Vec<(Q, Q)>) {
    let c = count_real_roots(seq, &lo, &hi);
    if c == 0 {
        return;
    }
    if c == 1 {
        out.push((lo, hi));
        return;
    }
    let half = (&hi - &lo) / Q::from_integer(2.into());
    let mut mid = &lo + &half;
    let mut k = 3;
    while eval(p, &mid).is_zero() {
        mid = &lo + &half + &half / two_pow(k);
        k += 1;
    }
    isolate(p, seq, lo, mid.clone(), out);
    isolate(p, seq, mid, hi, out);
}

/// Bisect a one-root bracket `(lo, hi]` of a square-free polynomial.
fn refine(p: &[Q], mut lo: Q, mut hi: Q, width: &Q) -> RealRoot {
    if eval(p, &hi).is_zero() {
        return RealRoot::Exact(hi);
    }
    let lo_pos = eval(p, &lo).is_positive();
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / Q::from_integer(2.into());
        let v = eval(p, &mid);
        if v.is_zero() {
            return RealRoot::Exact(mid);
        }
        if v.is_positive() == lo_pos {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let guess = simplest_between(&lo, &hi);
    if eval(p, &guess).is_zero() {
        RealRoot::Exact(guess)
    } else {
        RealRoot::Bracket { lo, hi }
    }
}

/// The fraction of least denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Q::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(Q::one() / (hi - &fl)), &(Q::one() / (lo - &fl)));
    fl + Q::one() / inner
}

fn round_dyadic(x: &Q, bits: u32) -> Q {
    let scale = two_pow(bits);
    let y = (x * &scale + Q::new(BigInt::one(), BigInt::from(2))).floor();
    y / scale
}

fn round_c(z: &Cq, bits: u32) -> Cq {
    cq(round_dyadic(&z.re, bits), round_dyadic(&z.im, bits))
}

/// Durand–Kerner approximations to all roots of a square-free polynomial.
pub fn approximate_roots(p: &[Cq], bits: u32, max_iter: usize) -> Vec<Cq> {
    let p = monic(p);
    let Some(d) = degree(&p) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let seed = cq(Q::new(2.into(), 5.into()), Q::new(9.into(), 10.into()));
    let mut z: Vec<Cq> = Vec::with_capacity(d);
    let mut w = Cq::one();
    for _ in 0..d {
        z.push(w.clone());
        w = round_c(&(w * seed.clone()), bits);
    }
    let tol = Q::one() / two_pow(bits.saturating_sub(8));
    for _ in 0..max_iter {
        let mut moved = Q::zero();
        for i in 0..d {
            let mut den = Cq::one();
            for (j, zj) in z.iter().enumerate() {
                if i != j {
                    den *= z[i].clone() - zj.clone();
                }
            }
            if den.is_zero() {
                continue;
            }
            let step = eval(&p, &z[i]) / den;
            let m = step.re.abs().max(step.im.abs());
            if m > moved {
                moved = m;
            }
            z[i] = round_c(&(z[i].clone() - step), bits);
        }
        if moved < tol {
            break;
        }
    }
    z
}

/// Roots of a Gaussian-rational polynomial, split into exact and unresolved parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RootReport {
    /// Exact roots with multiplicity.
    pub exact: Vec<(Cq, u32)>,
    /// Irrational real roots.
    pub brackets: Vec<(Q, Q)>,
    /// Non-real roots not confirmed as Gaussian rationals.
    pub approximate: Vec<Cq>,
    /// Degree of the factor whose roots are not exact.
    pub unresolved_degree: usize,
}

impl RootReport {
    pub fn complete(&self) -> bool {
        self.unresolved_degree == 0
    }
}

/// Exact roots of `p`, found through its real part, imaginary part and
/// numerically located Gaussian-rational candidates.
pub fn complex_roots(p: &[Cq], bits: u32) -> RootReport {
    let mut rest = trim(p.to_vec());
    let mut report = RootReport::default();
    if degree(&rest).unwrap_or(0) == 0 {
        return report;
    }
    let zero = Cq::zero();
    let m = deflate(&mut rest, &zero);
    if m > 0 {
        report.exact.push((zero, m));
    }
    let re: UPoly<Q> = rest.iter().map(|c| c.re.clone()).collect();
    let im: UPoly<Q> = rest.iter().map(|c| c.im.clone()).collect();
    let real_part = if degree(&im).is_none() { monic(&re) } else { gcd(&re, &im) };
    if degree(&real_part).unwrap_or(0) > 0 {
        for r in real_roots(&real_part, bits) {
            match r {
                RealRoot::Exact(x) => {
                    let x = cr(x);
                    let m = deflate(&mut rest, &x);
                    if m > 0 {
                        report.exact.push((x, m));
                    }
                }
                RealRoot::Bracket { lo, hi } => report.brackets.push((lo, hi)),
            }
        }
    }
    if degree(&rest).unwrap_or(0) > report.brackets.len() {
        let sq = square_free(&rest);
        let tol = Q::one() / two_pow(bits / 2);
        for z in approximate_roots(&sq, bits + 24, 400) {
            if z.im.abs() < tol {
                continue;
            }
            let lo_re = &z.re - &tol;
            let hi_re = &z.re + &tol;
            let lo_im = &z.im - &tol;
            let hi_im = &z.im + &tol;
            let cand = cq(simplest_between(&lo_re, &hi_re), simplest_between(&lo_im, &hi_im));
            let m = deflate(&mut rest, &cand);
            if m > 0 {
                report.exact.push((cand, m));
            } else {
                report.approximate.push(z);
            }
        }
    }
    report.unresolved_degree = degree(&rest).unwrap_or(0);
    report
}
