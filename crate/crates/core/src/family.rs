//! Convex families `λ -> R_λ = Σ λ_j F_j + (1 - Σ λ_j) F_{k+1}` of proper
//! coefficient forms and their feasibility sets `K = { λ : R_λ is PSD }`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::Formula;
use crate::error::{Error, Result};
use crate::form::{HermForm, PsdCertificate};
use crate::index::MultiIndex;
use crate::linalg::{rank, solve, Matrix};
use crate::num::{two_pow, Q};
use crate::real_form::RealForm;

/// `a · λ + b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Affine {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl Affine {
    pub fn eval(&self, lambda: &[Q]) -> Q {
        self.coeffs
            .iter()
            .zip(lambda)
            .fold(self.constant.clone(), |acc, (a, l)| acc + a * l)
    }

    pub fn linear_part(&self, d: &[Q]) -> Q {
        self.coeffs.iter().zip(d).fold(Q::zero(), |acc, (a, l)| acc + a * l)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Positive rescaling with the first nonzero entry of `(coeffs, constant)` of size one.
    fn normalized(&self) -> Affine {
        let lead = self
            .coeffs
            .iter()
            .chain(core::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(Q::one);
        Affine {
            coeffs: self.coeffs.iter().map(|c| c / &lead).collect(),
            constant: &self.constant / &lead,
        }
    }
}

/// `f(λ) >= 0`, coming from the coefficients of the listed monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Halfspace {
    pub f: Affine,
    pub labels: Vec<MultiIndex>,
    /// Tight on a face of dimension `k - 1`; otherwise implied by the others.
    pub facet: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyhedron {
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<Q>>,
    pub bbox: Vec<(Q, Q)>,
}

impl Polyhedron {
    pub fn contains(&self, lambda: &[Q]) -> bool {
        self.halfspaces.iter().all(|h| !h.f.eval(lambda).is_negative())
    }
}

/// A boundary value known to lie between a feasible and an infeasible point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bracket {
    pub inside: Q,
    pub outside: Q,
}

impl Bracket {
    pub fn width(&self) -> Q {
        (&self.outside - &self.inside).abs()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FeasibleSet {
    /// A zero-dimensional family.
    Point,
    /// Exact endpoints of a one-parameter monomial family.
    Interval { lo: Q, hi: Q, halfspaces: Vec<Halfspace> },
    /// Exact description of a monomial family with `k >= 2`.
    Polyhedron(Polyhedron),
    /// Endpoints of a general one-parameter family, bracketed by bisection.
    BracketedInterval { lo: Bracket, hi: Bracket },
    /// Membership oracle only, with an inner bounding box from ray probes.
    Sampled { bbox: Vec<(Q, Q)>, rays: usize },
}

impl FeasibleSet {
    pub fn kind(&self) -> &'static str {
        match self {
            FeasibleSet::Point => "POINT",
            FeasibleSet::Interval { .. } | FeasibleSet::BracketedInterval { .. } => "INTERVAL",
            FeasibleSet::Polyhedron(_) => "POLYHEDRON",
            FeasibleSet::Sampled { .. } => "SAMPLED",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryElement {
    pub lambda: Vec<Q>,
    /// A nearby infeasible point, when the boundary was found by bisection.
    pub outside: Option<Vec<Q>>,
    pub form: HermForm,
    pub rank: usize,
    pub interior_rank: usize,
    pub exact: bool,
}

impl BoundaryElement {
    pub fn rank_drops(&self) -> bool {
        self.rank < self.interior_rank
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankSample {
    pub lambda: Vec<Q>,
    pub rank: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub degree: u32,
    /// All sampled interior points agreed on rank and degree.
    pub generic: bool,
    pub samples: Vec<RankSample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Precondition(String),
}

/// Outcome of checking an inequality `value <= bound` (or `>=`) on a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub status: CheckStatus,
    pub value: Option<Q>,
    pub bound: Option<Q>,
    pub note: String,
}

impl CheckReport {
    fn precondition(check: &'static str, why: String) -> Self {
        CheckReport {
            check,
            status: CheckStatus::Precondition(why),
            value: None,
            bound: None,
            note: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Bisection options for families without an exact description.
#[derive(Clone, Debug)]
pub struct ProbeOptions {
    /// Stop when the bracket width is at most `2^-bits`.
    pub bits: u32,
    /// Largest doubling exponent tried before giving up as non-compact.
    pub max_doublings: u32,
    /// Extra random ray directions for `k >= 2`.
    pub random_rays: usize,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            bits: 40,
            max_doublings: 40,
            random_rays: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormPencil {
    n: usize,
    generators: Vec<HermForm>,
}

impl FormPencil {
    /// Validate generators: same `n`, each proper, linearly independent.
    pub fn new(generators: Vec<HermForm>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyFamily)?;
        let n = first.n();
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
            if !g.is_proper_form() {
                return Err(Error::GeneratorNotProper(i));
            }
        }
        let keys: BTreeSet<(MultiIndex, MultiIndex)> =
            generators.iter().flat_map(|g| g.entries().keys().cloned()).collect();
        let keys: Vec<_> = keys.into_iter().collect();
        let rows: Matrix<Q> = generators.iter().map(|g| g.coordinates(&keys)).collect();
        if rank(&rows) < generators.len() {
            return Err(Error::DegenerateFamily);
        }
        Ok(FormPencil { n, generators })
    }

    /// The family `λ -> base + Σ λ_j directions_j`, with generators at `e_j` and `0`.
    pub fn from_affine(base: &HermForm, directions: &[HermForm]) -> Result<Self> {
        let mut gens: Vec<HermForm> = directions.iter().map(|d| base.add(d)).collect();
        gens.push(base.clone());
        Self::new(gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn generators(&self) -> &[HermForm] {
        &self.generators
    }

    fn check_len(&self, lambda: &[Q]) -> Result<()> {
        if lambda.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: lambda.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, lambda: &[Q]) -> Result<HermForm> {
        self.check_len(lambda)?;
        let last = self.generators.last().expect("nonempty");
        let mut out = last.clone();
        for (l, g) in lambda.iter().zip(&self.generators) {
            out = out.add(&g.sub(last).scale(l));
        }
        Ok(out)
    }

    pub fn membership(&self, lambda: &[Q]) -> Result<PsdCertificate> {
        Ok(self.eval(lambda)?.is_psd())
    }

    fn feasible(&self, lambda: &[Q]) -> bool {
        self.eval(lambda).map(|f| f.is_psd().verdict.is_psd()).unwrap_or(false)
    }

    /// Every generator is diagonal, so members are squared norms of monomial maps.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.is_diagonal())
    }

    pub fn origin_preserving(&self) -> bool {
        self.generators.iter().all(|g| g.origin_preserving())
    }

    /// `c_α(λ)` for a monomial family.
    pub fn coefficient_functions(&self) -> Result<BTreeMap<MultiIndex, Affine>> {
        if !self.is_monomial() {
            return Err(Error::NotMonomial);
        }
        let last = self.generators.last().expect("nonempty");
        let support: BTreeSet<MultiIndex> = self.generators.iter().flat_map(|g| g.support()).collect();
        Ok(support
            .into_iter()
            .map(|a| {
                let c0 = last.entry(&a, &a).re;
                let coeffs = self.generators[..self.k()]
                    .iter()
                    .map(|g| g.entry(&a, &a).re - &c0)
                    .collect();
                (a, Affine { coeffs, constant: c0 })
            })
            .collect())
    }

    /// Real form of a member of a monomial family.
    pub fn real_form_at(&self, lambda: &[Q]) -> Result<RealForm> {
        self.eval(lambda)?.to_real_form().ok_or(Error::NotMonomial)
    }

    /// Barycenter of the simplex spanned by `0, e_1, ..., e_k`.
    pub fn barycenter(&self) -> Vec<Q> {
        let w = Q::new(1.into(), ((self.k() + 1) as i64).into());
        vec![w; self.k()]
    }

    /// A random point strictly inside the simplex.
    pub fn random_interior(&self, rng: &mut impl Rng) -> Vec<Q> {
        let w: Vec<i64> = (0..=self.k()).map(|_| rng.gen_range(1..=16)).collect();
        let total: i64 = w.iter().sum();
        w[..self.k()]
            .iter()
            .map(|&x| Q::new(x.into(), total.into()))
            .collect()
    }

    /// Halfspaces `c_α(λ) >= 0`, merged when proportional.
    fn halfspaces(&self) -> Result<Vec<Halfspace>> {
        let mut merged: Vec<Halfspace> = Vec::new();
        for (a, f) in self.coefficient_functions()? {
            if f.is_constant() {
                if f.constant.is_negative() {
                    return Err(Error::Inconsistent(format!("coefficient of {} is negative everywhere", a.monomial('x'))));
                }
                continue;
            }
            let f = f.normalized();
            match merged.iter_mut().find(|h| h.f == f) {
                Some(h) => h.labels.push(a),
                None => merged.push(Halfspace {
                    f,
                    labels: vec![a],
                    facet: false,
                }),
            }
        }
        Ok(merged)
    }

    /// Exact standalone description for monomial families; bisection or
    /// sampling otherwise.
    pub fn feasible_set(&self, opts: &ProbeOptions) -> Result<FeasibleSet> {
        if self.k() == 0 {
            return Ok(FeasibleSet::Point);
        }
        if self.is_monomial() {
            let hs = self.halfspaces()?;
            if self.k() == 1 {
                return interval_from_halfspaces(hs);
            }
            return polyhedron_from_halfspaces(self.k(), hs).map(FeasibleSet::Polyhedron);
        }
        if self.k() == 1 {
            let lo = self.bisect_ray(&[Q::zero()], &[-Q::one()], opts)?;
            let hi = self.bisect_ray(&[Q::one()], &[Q::one()], opts)?;
            return Ok(FeasibleSet::BracketedInterval {
                lo: Bracket {
                    inside: -lo.inside,
                    outside: -lo.outside,
                },
                hi: Bracket {
                    inside: Q::one() + hi.inside,
                    outside: Q::one() + hi.outside,
                },
            });
        }
        let center = self.barycenter();
        let mut dirs: Vec<Vec<Q>> = Vec::new();
        for i in 0..self.k() {
            for s in [Q::one(), -Q::one()] {
                let mut d = vec![Q::zero(); self.k()];
                d[i] = s;
                dirs.push(d);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.random_rays {
            let d: Vec<Q> = (0..self.k())
                .map(|_| Q::new(rng.gen_range(-8i64..=8).into(), 8.into()))
                .collect();
            if d.iter().any(|x| !x.is_zero()) {
                dirs.push(d);
            }
        }
        let mut bbox: Vec<(Q, Q)> = center.iter().map(|c| (c.clone(), c.clone())).collect();
        for d in &dirs {
            let b = self.bisect_ray(&center, d, opts)?;
            for (i, (lo, hi)) in bbox.iter_mut().enumerate() {
                let x = &center[i] + &b.inside * &d[i];
                if x < *lo {
                    *lo = x.clone();
                }
                if x > *hi {
                    *hi = x;
                }
            }
        }
        Ok(FeasibleSet::Sampled { bbox, rays: dirs.len() })
    }

    /// Bracket `t*` with `start + t d` feasible for `t <= t*`, starting from a feasible `start`.
    fn bisect_ray(&self, start: &[Q], d: &[Q], opts: &ProbeOptions) -> Result<Bracket> {
        let at = |t: &Q| -> Vec<Q> { start.iter().zip(d).map(|(s, x)| s + t * x).collect() };
        if !self.feasible(start) {
            return Err(Error::Inconsistent("ray start is infeasible".into()));
        }
        let mut inside = Q::zero();
        let mut outside = Q::one();
        let mut doublings = 0;
        while self.feasible(&at(&outside)) {
            inside = outside.clone();
            outside = &outside * Q::from_integer(2.into());
            doublings += 1;
            if doublings > opts.max_doublings {
                return Err(Error::NonCompact);
            }
        }
        let tol = Q::one() / two_pow(opts.bits);
        while &outside - &inside > tol {
            let mid = (&inside + &outside) / Q::from_integer(2.into());
            if self.feasible(&at(&mid)) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(Bracket { inside, outside })
    }

    /// Boundary point of `K` reached from the barycenter along `direction`.
    pub fn boundary_element(&self, direction: &[Q], opts: &ProbeOptions) -> Result<BoundaryElement> {
        self.check_len(direction)?;
        if direction.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        let center = self.barycenter();
        let interior_rank = self.eval(&center)?.rank();
        if self.is_monomial() {
            let mut best: Option<Q> = None;
            for h in self.halfspaces()? {
                let slope = h.f.linear_part(direction);
                if slope.is_negative() {
                    let t = h.f.eval(&center) / -slope;
                    if best.as_ref().map(|b| t < *b).unwrap_or(true) {
                        best = Some(t);
                    }
                }
            }
            let t = best.ok_or(Error::NonCompact)?;
            let lambda: Vec<Q> = center.iter().zip(direction).map(|(c, d)| c + &t * d).collect();
            let form = self.eval(&lambda)?;
            return Ok(BoundaryElement {
                rank: form.rank(),
                lambda,
                outside: None,
                form,
                interior_rank,
                exact: true,
            });
        }
        let b = self.bisect_ray(&center, direction, opts)?;
        let lambda: Vec<Q> = center.iter().zip(direction).map(|(c, d)| c + &b.inside * d).collect();
        let outside: Vec<Q> = center.iter().zip(direction).map(|(c, d)| c + &b.outside * d).collect();
        let form = self.eval(&lambda)?;
        Ok(BoundaryElement {
            rank: form.rank(),
            lambda,
            outside: Some(outside),
            form,
            interior_rank,
            exact: false,
        })
    }

    /// Rank and degree at the barycenter and two random interior points.
    pub fn family_rank(&self, seed: u64) -> Result<RankReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = vec![self.barycenter()];
        if self.k() > 0 {
            points.push(self.random_interior(&mut rng));
            points.push(self.random_interior(&mut rng));
        }
        let mut samples = Vec::new();
        for lambda in points {
            let f = self.eval(&lambda)?;
            samples.push(RankSample {
                rank: f.rank(),
                degree: f.degree().unwrap_or(0),
                lambda,
            });
        }
        let rank = samples.iter().map(|s| s.rank).max().unwrap_or(0);
        let degree = samples.iter().map(|s| s.degree).max().unwrap_or(0);
        let generic = samples.iter().all(|s| s.rank == rank && s.degree == degree);
        Ok(RankReport {
            rank,
            degree,
            generic,
            samples,
        })
    }

    /// No positive-dimensional origin-preserving family from `B_n`, `n >= 2`,
    /// has rank below `n + 2`.
    pub fn check_gap_theorem(&self, seed: u64) -> Result<CheckReport> {
        const NAME: &str = "gap-theorem";
        if self.n < 2 {
            return Ok(CheckReport::precondition(NAME, format!("n = {} < 2", self.n)));
        }
        if self.k() < 1 {
            return Ok(CheckReport::precondition(NAME, "family is zero-dimensional".into()));
        }
        if !self.origin_preserving() {
            return Ok(CheckReport::precondition(NAME, "a generator does not preserve the origin".into()));
        }
        let r = self.family_rank(seed)?;
        let bound = self.n + 2;
        Ok(CheckReport {
            check: NAME,
            status: if r.rank >= bound { CheckStatus::Pass } else { CheckStatus::Fail },
            value: Some(Q::from_integer(r.rank.into())),
            bound: Some(Q::from_integer(bound.into())),
            note: format!("rank {} >= n + 2 = {}", r.rank, bound),
        })
    }

    /// Monomial families: generic degree at most `c(n, rank - k)`.
    pub fn check_monomial_degree(&self, c: Formula, seed: u64) -> Result<CheckReport> {
        const NAME: &str = "monomial-family-degree";
        if !self.is_monomial() {
            return Ok(CheckReport::precondition(NAME, "not a monomial family".into()));
        }
        if self.n < 2 {
            return Ok(CheckReport::precondition(NAME, format!("n = {} < 2", self.n)));
        }
        let r = self.family_rank(seed)?;
        if r.rank < self.k() {
            return Err(Error::Inconsistent("rank below family dimension".into()));
        }
        self.degree_check(NAME, c, r.rank - self.k(), r.degree)
    }

    /// Positive-dimensional families: generic degree at most `c(n, rank - 1)`.
    pub fn check_boundary_degree(&self, c: Formula, seed: u64) -> Result<CheckReport> {
        const NAME: &str = "family-boundary-degree";
        if self.k() < 1 {
            return Ok(CheckReport::precondition(NAME, "family is zero-dimensional".into()));
        }
        let r = self.family_rank(seed)?;
        self.degree_check(NAME, c, r.rank - 1, r.degree)
    }

    fn degree_check(&self, name: &'static str, c: Formula, big_n: usize, d: u32) -> Result<CheckReport> {
        let bound = match c.eval(self.n, big_n) {
            Ok(b) => b,
            Err(e) => return Ok(CheckReport::precondition(name, format!("{e}"))),
        };
        let value = Q::from_integer(d.into());
        Ok(CheckReport {
            check: name,
            status: if value <= bound { CheckStatus::Pass } else { CheckStatus::Fail },
            note: format!("degree {d} vs {}(n = {}, N = {big_n})", c.name(), self.n),
            value: Some(value),
            bound: Some(bound),
        })
    }

    /// A `dim`-dimensional subfamily through the barycenter, spanned by
    /// small steps along the first `dim` coordinate directions. The new
    /// generators lie inside the generating simplex, so they stay proper.
    pub fn restrict(&self, dim: usize) -> Result<FormPencil> {
        if dim > self.k() {
            return Err(Error::Precondition(format!("cannot restrict a {}-dimensional family to {dim}", self.k())));
        }
        let center = self.barycenter();
        let step = Q::new(1.into(), (2 * (self.k() as i64 + 1)).into());
        let mut gens = Vec::with_capacity(dim + 1);
        for j in 0..dim {
            let mut l = center.clone();
            l[j] += &step;
            gens.push(self.eval(&l)?);
        }
        gens.push(self.eval(&center)?);
        FormPencil::new(gens)
    }

    /// Replace each chosen top-degree monomial `m_i` (coefficient `c_i(λ)`)
    /// by `ν_i m_i + (x_1 + ... + x_n)(c_i(λ) - ν_i) m_i`, adding the new
    /// parameters `ν_i` after `λ`.
    pub fn extend_top(&self, chosen: &[MultiIndex]) -> Result<FormPencil> {
        let cf = self.coefficient_functions()?;
        let d = cf
            .iter()
            .filter(|(_, f)| !(f.is_constant() && f.constant.is_zero()))
            .map(|(a, _)| a.degree())
            .max()
            .ok_or(Error::ZeroMap)?;
        for m in chosen {
            match cf.get(m) {
                Some(_) if m.degree() == d => {}
                _ => return Err(Error::Precondition(format!("{} is not a top-degree term", m.monomial('x')))),
            }
        }
        let k = self.k();
        let n = self.n;
        let s = RealForm::simplex_sum(n);
        let part = |lambda: Option<usize>| -> RealForm {
            // affine part of the family evaluated at 0 (None) or its slope along e_j
            let mut out = RealForm::zero(n);
            for (a, f) in &cf {
                let c = match lambda {
                    None => f.constant.clone(),
                    Some(j) => f.coeffs[j].clone(),
                };
                let m = RealForm::from_terms(n, [(a.clone(), c)]);
                out = if chosen.contains(a) { out.add(&s.mul(&m)) } else { out.add(&m) };
            }
            out
        };
        let base = HermForm::from_real_form(&part(None));
        let mut dirs: Vec<HermForm> = (0..k).map(|j| HermForm::from_real_form(&part(Some(j)))).collect();
        for m in chosen {
            let mono = RealForm::from_terms(n, [(m.clone(), Q::one())]);
            dirs.push(HermForm::from_real_form(&mono.sub(&s.mul(&mono))));
        }
        FormPencil::from_affine(&base, &dirs)
    }
}

fn interval_from_halfspaces(mut hs: Vec<Halfspace>) -> Result<FeasibleSet> {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for h in &hs {
        let a = &h.f.coeffs[0];
        let t = -&h.f.constant / a;
        if a.is_positive() {
            if lo.as_ref().map(|l| t > *l).unwrap_or(true) {
                lo = Some(t);
            }
        } else if hi.as_ref().map(|u| t < *u).unwrap_or(true) {
            hi = Some(t);
        }
    }
    let (lo, hi) = (lo.ok_or(Error::NonCompact)?, hi.ok_or(Error::NonCompact)?);
    for h in hs.iter_mut() {
        let t = -&h.f.constant / &h.f.coeffs[0];
        h.facet = t == lo || t == hi;
    }
    Ok(FeasibleSet::Interval { lo, hi, halfspaces: hs })
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

fn polyhedron_from_halfspaces(k: usize, mut hs: Vec<Halfspace>) -> Result<Polyhedron> {
    let a: Matrix<Q> = hs.iter().map(|h| h.f.coeffs.clone()).collect();
    if rank(&a) < k {
        return Err(Error::NonCompact);
    }
    // a nonzero recession direction would be an extreme ray cut out by k-1 tight rows
    for sub in subsets(hs.len(), k - 1) {
        let rows: Matrix<Q> = sub.iter().map(|&i| a[i].clone()).collect();
        let sol = if rows.is_empty() {
            None
        } else {
            solve(&rows, &vec![Q::zero(); rows.len()], k)
        };
        let kernel = match sol {
            Some(s) => s.kernel,
            None => continue,
        };
        if kernel.len() != 1 {
            continue;
        }
        for sign in [Q::one(), -Q::one()] {
            let d: Vec<Q> = kernel[0].iter().map(|x| x * &sign).collect();
            if hs.iter().all(|h| !h.f.linear_part(&d).is_negative()) {
                return Err(Error::NonCompact);
            }
        }
    }
    let mut vertices: Vec<Vec<Q>> = Vec::new();
    for sub in subsets(hs.len(), k) {
        let rows: Matrix<Q> = sub.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vec<Q> = sub.iter().map(|&i| -hs[i].f.constant.clone()).collect();
        let Some(sol) = solve(&rows, &rhs, k) else { continue };
        if !sol.kernel.is_empty() {
            continue;
        }
        let v = sol.particular;
        if hs.iter().all(|h| !h.f.eval(&v).is_negative()) && !vertices.contains(&v) {
            vertices.push(v);
        }
    }
    for h in hs.iter_mut() {
        let tight: Vec<&Vec<Q>> = vertices.iter().filter(|v| h.f.eval(v).is_zero()).collect();
        h.facet = match tight.split_first() {
            None => false,
            Some((v0, rest)) => {
                let diffs: Matrix<Q> = rest
                    .iter()
                    .map(|v| v.iter().zip(v0.iter()).map(|(x, y)| x - y).collect())
                    .collect();
                rank(&diffs) >= k - 1
            }
        };
    }
    let bbox = (0..k)
        .map(|i| {
            let xs = vertices.iter().map(|v| v[i].clone());
            let lo = xs.clone().min().unwrap_or_else(Q::zero);
            let hi = xs.max().unwrap_or_else(Q::zero);
            (lo, hi)
        })
        .collect();
    Ok(Polyhedron {
        halfspaces: hs,
        vertices,
        bbox,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qi};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn quartic_quadratic(a: Q, b: Q) -> FormPencil {
        let f = HermForm::norm_power(2, 2)
            .scale(&a)
            .add(&HermForm::norm_power(2, 1).scale(&(Q::one() - &a)));
        let g = HermForm::norm_power(2, 2)
            .scale(&b)
            .add(&HermForm::norm_power(2, 1).scale(&(Q::one() - &b)));
        FormPencil::new(vec![f, g]).unwrap()
    }

    #[test]
    fn quartic_quadratic_interval() {
        for (a, b) in [(qi(1), qi(0)), (q(1, 2), qi(0)), (q(3, 4), q(1, 4))] {
            let p = quartic_quadratic(a.clone(), b.clone());
            match p.feasible_set(&ProbeOptions::default()).unwrap() {
                FeasibleSet::Interval { lo, hi, .. } => {
                    assert_eq!(lo, -&b / (&a - &b));
                    assert_eq!(hi, (Q::one() - &b) / (&a - &b));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn dependent_generators_rejected() {
        let f = HermForm::norm_power(2, 1);
        assert_eq!(FormPencil::new(vec![f.clone(), f]), Err(Error::DegenerateFamily));
    }

    #[test]
    fn linear_top_split() {
        let id = FormPencil::new(vec![HermForm::norm_power(2, 1)]).unwrap();
        let p = id.extend_top(&[mi(&[1, 0]), mi(&[0, 1])]).unwrap();
        assert_eq!(p.k(), 2);
        let r = p.real_form_at(&[q(1, 3), q(1, 5)]).unwrap();
        assert_eq!(r.coeff(&mi(&[1, 1])), qi(2) - q(1, 3) - q(1, 5));
        match p.feasible_set(&ProbeOptions::default()).unwrap() {
            FeasibleSet::Polyhedron(poly) => {
                assert_eq!(poly.bbox, vec![(qi(0), qi(1)), (qi(0), qi(1))]);
                assert_eq!(poly.vertices.len(), 4);
                let implied: Vec<_> = poly.halfspaces.iter().filter(|h| !h.facet).collect();
                assert_eq!(implied.len(), 1);
                assert_eq!(implied[0].labels, vec![mi(&[1, 1])]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn general_path_brackets_monomial_interval() {
        let p = quartic_quadratic(q(1, 2), qi(0));
        let set = p.feasible_set(&ProbeOptions::default()).unwrap();
        let FeasibleSet::Interval { hi, .. } = set else { panic!() };
        let b = p.bisect_ray(&[Q::one()], &[Q::one()], &ProbeOptions::default()).unwrap();
        assert!(Q::one() + &b.inside <= hi && hi <= Q::one() + &b.outside);
    }
}
