//! Completion of a low-order jet `A` to a form `C = [A B; B* D]` with
//! `C = 1` on the sphere, the spectrahedron of four-parameter quadratic
//! families, and positivity stabilization by powers of `||z||^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{sphere_generator, BiPoly, HermForm, PsdCertificate, Verdict};
use crate::index::MultiIndex;
use crate::linalg::{rank, solve, Matrix};
use crate::map::PolyMap;
use crate::num::{abs2, cr, two_pow, Cq, Q};
use crate::poly::Poly;

/// `δ(n, d)`: dimension of the polynomials of degree at most `d` in `n`
/// variables without constant term.
pub fn dim_v(n: usize, d: u32) -> usize {
    binomial(n + d as usize, d as usize) - 1
}

/// Monomials `z^α` with `1 <= |α| <= d`.
pub fn v_basis(n: usize, d: u32) -> Vec<MultiIndex> {
    MultiIndex::in_degree_range(n, 1, d)
}

/// A Hermitian form supported on `V(n, d - 1)`, to be completed to degree `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetForm {
    n: usize,
    d: u32,
    a: HermForm,
}

impl JetForm {
    pub fn new(n: usize, d: u32, a: HermForm) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Precondition("need n >= 1 and d >= 1".into()));
        }
        if a.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.n(),
            });
        }
        if let Some(bad) = a.support().into_iter().find(|x| x.is_zero() || x.degree() >= d) {
            return Err(Error::Precondition(format!("index {bad} outside V({n}, {})", d - 1)));
        }
        Ok(JetForm { n, d, a })
    }

    pub fn zero(n: usize, d: u32) -> Result<Self> {
        Self::new(n, d, HermForm::zero(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> &HermForm {
        &self.a
    }
}

/// The completed form together with the size of the solved system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompletedForm {
    pub n: usize,
    pub d: u32,
    pub form: HermForm,
    /// Number of complex unknowns `c_{αβ}` with `max(|α|, |β|) = d`.
    pub unknowns: usize,
    /// Number of independent equations in the residue system.
    pub equations: usize,
}

impl CompletedForm {
    /// Entries `c_{αβ}` with `|α| < d <= |β|`.
    pub fn b_block(&self) -> HermForm {
        self.block(|a, b| a < self.d && b == self.d || a == self.d && b < self.d)
    }

    /// Entries with `|α| = |β| = d`.
    pub fn d_block(&self) -> HermForm {
        self.block(|a, b| a == self.d && b == self.d)
    }

    fn block(&self, keep: impl Fn(u32, u32) -> bool) -> HermForm {
        let terms = self
            .form
            .upper_entries()
            .filter(|(a, b, _)| keep(a.degree(), b.degree()))
            .map(|(a, b, c)| (a.clone(), b.clone(), c.clone()));
        HermForm::from_upper(self.n, terms).expect("sub-block of a Hermitian form")
    }
}

/// Remainder of `z^α y^β` modulo `s(z, y)`, cached.
struct Residues {
    s: BiPoly,
    cache: BTreeMap<MultiIndex, BiPoly>,
}

impl Residues {
    fn new(n: usize) -> Self {
        Residues {
            s: sphere_generator(n),
            cache: BTreeMap::new(),
        }
    }

    fn of(&mut self, a: &MultiIndex, b: &MultiIndex) -> BiPoly {
        let key = a.concat(b);
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let r = Poly::monomial(key.clone(), Cq::one()).div_rem(&self.s).1;
        self.cache.insert(key, r.clone());
        r
    }

    fn of_poly(&self, p: &BiPoly) -> BiPoly {
        p.div_rem(&self.s).1
    }

    /// The matrix whose column `i` holds the coefficients of `rem(z^α_i y^β_i)`,
    /// with rows indexed by the monomials occurring in the columns or in `rhs`.
    fn system(&mut self, pairs: &[(MultiIndex, MultiIndex)], rhs: &BiPoly) -> (Matrix<Cq>, Vec<Cq>) {
        let cols: Vec<BiPoly> = pairs.iter().map(|(a, b)| self.of(a, b)).collect();
        let mut rows: BTreeMap<MultiIndex, usize> = BTreeMap::new();
        for p in cols.iter().chain(core::iter::once(rhs)) {
            for m in p.terms().keys() {
                let next = rows.len();
                rows.entry(m.clone()).or_insert(next);
            }
        }
        let mut mat = vec![vec![Cq::zero(); pairs.len()]; rows.len()];
        for (j, p) in cols.iter().enumerate() {
            for (m, c) in p.terms() {
                mat[rows[m]][j] = c.clone();
            }
        }
        let mut b = vec![Cq::zero(); rows.len()];
        for (m, c) in rhs.terms() {
            b[rows[m]] = c.clone();
        }
        (mat, b)
    }
}

/// Ordered pairs in `V(n, d) x V(n, d)` with at least one index of degree `d`.
fn completion_pairs(n: usize, d: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let basis = v_basis(n, d);
    let mut out = Vec::new();
    for a in &basis {
        for b in &basis {
            if a.degree() == d || b.degree() == d {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Solve for the entries of degree `d` so that `C - 1` vanishes on the sphere.
pub fn jet_complete(j: &JetForm) -> Result<CompletedForm> {
    let n = j.n;
    let pairs = completion_pairs(n, j.d);
    let mut res = Residues::new(n);
    let rhs = Poly::one(2 * n).sub(&res.of_poly(&j.a.to_bipoly()));
    let (mat, b) = res.system(&pairs, &rhs);
    let sol = solve(&mat, &b, pairs.len())
        .ok_or_else(|| Error::Inconsistent(format!("completion system for (n, d) = ({n}, {}) has no solution", j.d)))?;
    if !sol.kernel.is_empty() {
        return Err(Error::Inconsistent(format!(
            "completion system has a {}-dimensional kernel",
            sol.kernel.len()
        )));
    }
    let mut bi = j.a.to_bipoly();
    for ((a, bb), c) in pairs.iter().zip(&sol.particular) {
        bi.add_term(a.concat(bb), c.clone());
    }
    let form = HermForm::from_bipoly(n, &bi)?;
    if !form.sub(&HermForm::one(n)).vanishes_on_sphere_by_division() {
        return Err(Error::Inconsistent("completed form fails the sphere identity".into()));
    }
    let equations = rank(&mat);
    Ok(CompletedForm {
        n,
        d: j.d,
        form,
        unknowns: pairs.len(),
        equations,
    })
}

/// Shape of the linear system `Σ c_{αβ} rem(z^α y^β) = 1` over all of `V(n, d)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniversalSystem {
    pub unknowns: usize,
    pub rank: usize,
    /// Complex dimension of the solution space.
    pub solution_dim: usize,
    /// Rank of the solution space projected to the entries on `V(n, d - 1)`.
    pub jet_rank: usize,
}

impl UniversalSystem {
    /// Solutions are parametrized by the low-order block alone.
    pub fn jet_determines(&self) -> bool {
        self.jet_rank == self.solution_dim
    }
}

pub fn universal_system(n: usize, d: u32) -> Result<UniversalSystem> {
    let basis = v_basis(n, d);
    let pairs: Vec<(MultiIndex, MultiIndex)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let mut res = Residues::new(n);
    let (mat, b) = res.system(&pairs, &Poly::one(2 * n));
    let sol = solve(&mat, &b, pairs.len()).ok_or_else(|| Error::Inconsistent("universal system has no solution".into()))?;
    let low: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| a.degree() < d && b.degree() < d)
        .map(|(i, _)| i)
        .collect();
    let projected: Matrix<Cq> = sol
        .kernel
        .iter()
        .map(|v| low.iter().map(|&i| v[i].clone()).collect())
        .collect();
    Ok(UniversalSystem {
        unknowns: pairs.len(),
        rank: rank(&mat),
        solution_dim: sol.kernel.len(),
        jet_rank: rank(&projected),
    })
}

/// Positivity of the completion of `j`.
pub fn psd_region_membership(j: &JetForm) -> Result<PsdCertificate> {
    let c = jet_complete(j)?;
    c.form.is_psd_on(&v_basis(j.n, j.d))
}

/// `A = [[x, ζ], [ζ̄, y]]` on `{z_1, z_2}`.
pub fn demo_jet(x: &Q, y: &Q, zeta: &Cq) -> JetForm {
    let z1 = MultiIndex::unit(2, 0);
    let z2 = MultiIndex::unit(2, 1);
    let a = HermForm::from_upper(
        2,
        [
            (z1.clone(), z1.clone(), cr(x.clone())),
            (z1, z2.clone(), zeta.clone()),
            (z2.clone(), z2, cr(y.clone())),
        ],
    )
    .expect("upper triangle");
    JetForm::new(2, 2, a).expect("jet on V(2, 1)")
}

/// `0 <= x, y <= 1`, `|ζ|^2 <= xy` and `|ζ|^2 <= (1 - x)(1 - y)`.
pub fn spectrahedron_closed_form(x: &Q, y: &Q, zeta: &Cq) -> bool {
    let one = Q::one();
    let z2 = abs2(zeta);
    !x.is_negative()
        && !y.is_negative()
        && x <= &one
        && y <= &one
        && z2 <= x * y
        && z2 <= (&one - x) * (&one - y)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectrahedronPoint {
    pub closed_form: bool,
    pub solver: Verdict,
    pub completed: HermForm,
}

/// Membership by the closed form and by completing and testing the 5x5 form.
pub fn spectrahedron_demo(x: &Q, y: &Q, zeta: &Cq) -> Result<SpectrahedronPoint> {
    let j = demo_jet(x, y, zeta);
    let c = jet_complete(&j)?;
    let solver = c.form.is_psd_on(&v_basis(2, 2))?.verdict;
    let closed_form = spectrahedron_closed_form(x, y, zeta);
    if closed_form != solver.is_psd() {
        return Err(Error::Inconsistent(format!(
            "closed form says {closed_form}, solver says {}",
            solver.label()
        )));
    }
    Ok(SpectrahedronPoint {
        closed_form,
        solver,
        completed: c.form,
    })
}

/// The printed `D` block for the demo jet.
pub fn demo_d_block(x: &Q, y: &Q, zeta: &Cq) -> HermForm {
    let e = |a: u32, b: u32| MultiIndex::new(vec![a, b]);
    let one = Q::one();
    HermForm::from_upper(
        2,
        [
            (e(2, 0), e(2, 0), cr(&one - x)),
            (e(2, 0), e(1, 1), -zeta.clone()),
            (e(1, 1), e(1, 1), cr(Q::from_integer(2.into()) - x - y)),
            (e(1, 1), e(0, 2), -zeta.clone()),
            (e(0, 2), e(0, 2), cr(&one - y)),
        ],
    )
    .expect("upper triangle")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StabilizeMode {
    Psd,
    Pd,
}

impl StabilizeMode {
    fn met(self, v: Verdict) -> bool {
        match self {
            StabilizeMode::Psd => v.is_psd(),
            StabilizeMode::Pd => v == Verdict::Pd,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stabilization {
    pub m: u32,
    pub form: HermForm,
    pub verdict: Verdict,
}

pub const STABILIZE_CAP: u32 = 64;

/// Least `m <= cap` for which the form of `||z||^{2m} R` meets `mode` on all
/// monomials of degree `deg R + m`.
pub fn stabilize(r: &HermForm, mode: StabilizeMode, cap: u32) -> Result<Stabilization> {
    if !r.is_bihomogeneous() {
        return Err(Error::Precondition("form is not bihomogeneous".into()));
    }
    if r.is_zero() {
        return Err(Error::Precondition("zero form".into()));
    }
    let n = r.n();
    let deg = r.degree().unwrap_or(0);
    let step = HermForm::norm_power(n, 1);
    let mut f = r.clone();
    for m in 0..=cap {
        let basis = MultiIndex::of_degree(n, deg + m);
        let verdict = f.is_psd_on(&basis)?.verdict;
        if mode.met(verdict) {
            return Ok(Stabilization { m, form: f, verdict });
        }
        f = f.mul(&step);
    }
    Err(Error::NotStabilized(cap))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompletionPath {
    /// `R` is already PSD.
    Direct,
    /// `R` was bihomogenized with an extra variable `t`, the term
    /// `c (||z||^2 - |t|^2)^2 (||z||^2 + |t|^2)^{D-2}` added, and the result
    /// stabilized with `m` factors before setting `t = 1`.
    Stabilized { c: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProperCompletion {
    /// `||z||^{2(d-1)} - ||g||^2`.
    pub r: HermForm,
    pub path: CompletionPath,
    pub m: u32,
    /// PSD form equal to `R` on the sphere; `||p||^2 = F` for the added map.
    pub f: HermForm,
    /// `form(g) + F` is a proper form.
    pub proper: bool,
}

/// Find a PSD `F` agreeing with `||z||^{2(d-1)} - ||g||^2` on the sphere, so
/// that `g ⊕ p` is proper whenever `||p||^2 = F`.
pub fn complete_to_proper(g: &PolyMap, d: u32, cap: u32) -> Result<ProperCompletion> {
    let n = g.n();
    if d == 0 {
        return Err(Error::Precondition("need d >= 1".into()));
    }
    if !g.preserves_origin() {
        return Err(Error::Precondition("g(0) != 0".into()));
    }
    if !g.is_zero() && g.degree()? > d - 1 {
        return Err(Error::Precondition(format!("deg g exceeds {}", d - 1)));
    }
    let fg = HermForm::squared_norm(g);
    let r = HermForm::norm_power(n, d - 1).sub(&fg);
    let check = |f: &HermForm| fg.add(f).is_proper_form();
    if r.is_psd().verdict.is_psd() {
        let proper = check(&r);
        return Ok(ProperCompletion {
            f: r.clone(),
            r,
            path: CompletionPath::Direct,
            m: 0,
            proper,
        });
    }
    let top = r.degree().unwrap_or(0).max(2);
    let rh = bihomogenize(&r, top);
    let corr = sphere_correction(n, top);
    let mut last = Error::NotStabilized(cap);
    for c in [1u32, 2, 4, 8, 16] {
        let cand = rh.add(&corr.scale(&Q::from_integer(c.into())));
        match stabilize(&cand, StabilizeMode::Psd, cap) {
            Ok(st) => {
                let f = dehomogenize(&st.form).scale(&(Q::one() / two_pow(st.m)));
                let proper = check(&f);
                return Ok(ProperCompletion {
                    r,
                    path: CompletionPath::Stabilized { c },
                    m: st.m,
                    f,
                    proper,
                });
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn lift(a: &MultiIndex, top: u32) -> MultiIndex {
    let mut e = a.exps().to_vec();
    e.push(top - a.degree());
    MultiIndex::new(e)
}

/// Pad every index with a power of `t` to total degree `top`.
pub fn bihomogenize(r: &HermForm, top: u32) -> HermForm {
    let terms = r
        .upper_entries()
        .map(|(a, b, c)| (lift(a, top), lift(b, top), c.clone()));
    HermForm::from_upper(r.n() + 1, terms).expect("lifting keeps the order of equal-degree pairs")
}

/// Set the last variable to one.
pub fn dehomogenize(r: &HermForm) -> HermForm {
    let n = r.n() - 1;
    let drop = |a: &MultiIndex| MultiIndex::new(a.exps()[..n].to_vec());
    let p = Poly::from_terms(
        2 * n,
        r.entries().iter().map(|((a, b), c)| (drop(a).concat(&drop(b)), c.clone())),
    );
    HermForm::from_bipoly(n, &p).expect("dehomogenizing keeps Hermitian symmetry")
}

/// `(||z||^2 - |t|^2)^2 (||z||^2 + |t|^2)^{top-2}` in `n + 1` variables.
fn sphere_correction(n: usize, top: u32) -> HermForm {
    let t = MultiIndex::unit(n + 1, n);
    let tt = HermForm::diagonal(n + 1, [(t, Q::one())]);
    let z = HermForm::norm_power(n + 1, 1).sub(&tt).sub(&tt);
    let diff = z.mul(&z);
    diff.mul(&HermForm::norm_power(n + 1, top - 2))
}
