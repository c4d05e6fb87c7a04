//! Floating-point layer: maps whose coefficients need square roots.
//!
//! Everything here is checked against a tolerance, never used as an oracle
//! for the exact computations.

use std::collections::BTreeMap;

use ballmaps_core::num::{Cq, Q};
use ballmaps_core::{Error, HermForm, MultiIndex, PolyMap, Result};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &Cq) -> C64 {
    C64::new(to_f64(&z.re), to_f64(&z.im))
}

fn monomial(a: &MultiIndex, z: &[C64]) -> C64 {
    a.exps().iter().zip(z).fold(C64::new(1.0, 0.0), |acc, (&e, x)| acc * x.powu(e))
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// `z -> Σ c_α z^α` with floating coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericMap {
    pub n: usize,
    pub target: usize,
    pub terms: BTreeMap<MultiIndex, Vec<C64>>,
}

impl NumericMap {
    pub fn from_exact(f: &PolyMap) -> Self {
        NumericMap {
            n: f.n(),
            target: f.target(),
            terms: f.terms().iter().map(|(a, v)| (a.clone(), v.iter().map(to_c64).collect())).collect(),
        }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        NumericMap {
            n,
            target: 1,
            terms: BTreeMap::from([(MultiIndex::zero(n), vec![c])]),
        }
    }

    pub fn eval(&self, z: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::zero(); self.target];
        for (a, v) in &self.terms {
            let m = monomial(a, z);
            for (o, c) in out.iter_mut().zip(v) {
                *o += c * m;
            }
        }
        out
    }

    pub fn tensor(&self, other: &NumericMap) -> NumericMap {
        let mut terms: BTreeMap<MultiIndex, Vec<C64>> = BTreeMap::new();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let e = terms.entry(a.add(b)).or_insert_with(|| vec![C64::zero(); self.target * other.target]);
                for (i, x) in u.iter().enumerate() {
                    for (j, y) in v.iter().enumerate() {
                        e[i * other.target + j] += x * y;
                    }
                }
            }
        }
        NumericMap {
            n: self.n,
            target: self.target * other.target,
            terms,
        }
    }

    /// Coefficients `<c_α, c_β>` of `||f||^2`.
    pub fn squared_norm(&self) -> BTreeMap<(MultiIndex, MultiIndex), C64> {
        let mut out = BTreeMap::new();
        for (a, u) in &self.terms {
            for (b, v) in &self.terms {
                let s: C64 = u.iter().zip(v).map(|(x, y)| x * y.conj()).sum();
                out.insert((a.clone(), b.clone()), s);
            }
        }
        out
    }

    /// Largest entry of `||f||^2 - F` in absolute value.
    pub fn form_error(&self, form: &HermForm) -> f64 {
        let mine = self.squared_norm();
        let mut err: f64 = 0.0;
        for (k, c) in &mine {
            err = err.max((c - to_c64(&form.entry(&k.0, &k.1))).norm());
        }
        for ((a, b), c) in form.entries() {
            if !mine.contains_key(&(a.clone(), b.clone())) {
                err = err.max(to_c64(c).norm());
            }
        }
        err
    }
}

/// A map with `||g||^2 = F`, from the exact factorization `F = Σ d_k |l_k|^2`;
/// only the square roots `sqrt(d_k)` are inexact.
pub fn gram_map_numeric(form: &HermForm) -> Result<NumericMap> {
    let cert = form.is_psd();
    if !cert.verdict.is_psd() {
        return Err(Error::NotPsd);
    }
    let factors = cert.factors();
    let mut terms: BTreeMap<MultiIndex, Vec<C64>> = BTreeMap::new();
    for (k, (d, l)) in factors.iter().enumerate() {
        let r = to_f64(d).sqrt();
        for (a, c) in cert.basis.iter().zip(l) {
            if c.is_zero() {
                continue;
            }
            terms.entry(a.clone()).or_insert_with(|| vec![C64::zero(); factors.len()])[k] = to_c64(c) * r;
        }
    }
    Ok(NumericMap {
        n: form.n(),
        target: factors.len(),
        terms,
    })
}

/// `p(z) / q(z)` with a scalar denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericRationalMap {
    pub num: NumericMap,
    pub den: NumericMap,
}

impl NumericRationalMap {
    pub fn eval(&self, z: &[C64]) -> Vec<C64> {
        let q = self.den.eval(z)[0];
        self.num.eval(z).into_iter().map(|c| c / q).collect()
    }

    pub fn tensor(&self, other: &NumericRationalMap) -> NumericRationalMap {
        NumericRationalMap {
            num: self.num.tensor(&other.num),
            den: self.den.tensor(&other.den),
        }
    }
}

/// `φ_a(z) = (P_a z + s Q_a z - a) / (1 - <z, a>)`, `s = sqrt(1 - ||a||^2)`.
pub fn mobius(a: &[C64]) -> Result<NumericRationalMap> {
    let n = a.len();
    let na = norm2(a);
    if na >= 1.0 {
        return Err(Error::OutsideBall);
    }
    let s = (1.0 - na).sqrt();
    let mut num: BTreeMap<MultiIndex, Vec<C64>> = BTreeMap::new();
    let mut den: BTreeMap<MultiIndex, Vec<C64>> = BTreeMap::from([(MultiIndex::zero(n), vec![C64::new(1.0, 0.0)])]);
    num.insert(MultiIndex::zero(n), a.iter().map(|x| -x).collect());
    for (j, aj) in a.iter().enumerate() {
        let zj = MultiIndex::unit(n, j);
        den.insert(zj.clone(), vec![-aj.conj()]);
        let col: Vec<C64> = a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                let proj = if na == 0.0 { C64::zero() } else { ai * aj.conj() * ((1.0 - s) / na) };
                if i == j {
                    proj + s
                } else {
                    proj
                }
            })
            .collect();
        num.insert(zj, col);
    }
    Ok(NumericRationalMap {
        num: NumericMap { n, target: n, terms: num },
        den: NumericMap { n, target: 1, terms: den },
    })
}

/// The tensor product of `φ_{a_1}, ..., φ_{a_k}`; it vanishes exactly at the `a_j`.
pub fn automorphism_product(points: &[Vec<C64>]) -> Result<NumericRationalMap> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("no points".into()));
    };
    let n = first.len();
    let one = C64::new(1.0, 0.0);
    let mut out = NumericRationalMap {
        num: NumericMap::constant(n, one),
        den: NumericMap::constant(n, one),
    };
    for a in points {
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        out = out.tensor(&mobius(a)?);
    }
    Ok(out)
}

/// Uniform points on the unit sphere of `C^n`.
pub fn sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let r = norm2(&v).sqrt();
            v.into_iter().map(|c| c / r).collect()
        })
        .collect()
}

/// Largest deviation of `||f||^2` from 1 over the sample.
pub fn sphere_defect(f: &NumericRationalMap, points: &[Vec<C64>]) -> f64 {
    points.iter().map(|z| (norm2(&f.eval(z)) - 1.0).abs()).fold(0.0, f64::max)
}

/// `R(z, z̄) = Σ c_{αβ} z^α z̄^β`.
pub fn eval_form(form: &HermForm, z: &[C64]) -> f64 {
    form.entries()
        .iter()
        .map(|((a, b), c)| to_c64(c) * monomial(a, z) * monomial(b, z).conj())
        .sum::<C64>()
        .re
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub samples: usize,
    pub min: f64,
    /// Every sample is above the tolerance.
    pub positive: bool,
}

/// Sampled strict positivity of `R` on the sphere; a warning, not a proof.
pub fn sphere_positivity(form: &HermForm, samples: usize, seed: u64, tolerance: f64) -> PositivityReport {
    let min = sphere_points(form.n(), samples, seed)
        .iter()
        .map(|z| eval_form(form, z))
        .fold(f64::INFINITY, f64::min);
    PositivityReport {
        samples,
        min,
        positive: min > tolerance,
    }
}

/// Roots of `Σ c_i t^i` (given low to high) by Durand–Kerner iteration.
pub fn univariate_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<C64> = c.iter().map(|x| x / lead).collect();
    let eval = |t: C64| monic.iter().rev().fold(C64::zero(), |acc, x| acc * t + x);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..deg).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let denom = (0..deg)
                .filter(|&j| j != i)
                .fold(C64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Zeros of a one-variable numerator, as a polynomial in `z`.
pub fn numerator_roots(f: &NumericRationalMap, component: usize) -> Vec<C64> {
    let deg = f.num.terms.keys().map(|a| a.degree()).max().unwrap_or(0) as usize;
    let mut coeffs = vec![C64::zero(); deg + 1];
    for (a, v) in &f.num.terms {
        coeffs[a.degree() as usize] += v[component];
    }
    univariate_roots(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ballmaps_core::bounds::build_v_form;

    #[test]
    fn gram_of_invariant_form() {
        let f = build_v_form(3).unwrap();
        let g = gram_map_numeric(&f).unwrap();
        assert_eq!(g.target, 3);
        assert!(g.form_error(&f) <= DEFAULT_TOLERANCE);
        let c = &g.terms[&MultiIndex::new(vec![1, 1])];
        assert!(c.iter().any(|x| (x.norm() - 3f64.sqrt()).abs() < 1e-12));
    }

    #[test]
    fn automorphisms_vanish_and_preserve_the_sphere() {
        let pts = vec![vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.4)], vec![C64::new(0.0, 0.5), C64::new(0.1, 0.0)]];
        let f = automorphism_product(&pts).unwrap();
        assert_eq!(f.num.target, 4);
        assert!(sphere_defect(&f, &sphere_points(2, 50, 3)) <= DEFAULT_TOLERANCE);
        for a in &pts {
            assert!(norm2(&f.eval(a)).sqrt() <= DEFAULT_TOLERANCE);
        }
        assert!(mobius(&[C64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn durand_kerner_finds_simple_roots() {
        // (t - 1/2)(t + 1/3)
        let r = univariate_roots(&[C64::new(-1.0 / 6.0, 0.0), C64::new(-1.0 / 6.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(r.iter().any(|x| (x - 0.5).norm() < 1e-12));
        assert!(r.iter().any(|x| (x + 1.0 / 3.0).norm() < 1e-12));
    }
}
