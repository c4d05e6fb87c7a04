//! Degree bounds for proper maps, the invariant map `V: B_2 -> B_n`, and
//! the pullback `g ∘ U ∘ V` that transports bounds from `B_2` to `B_n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::form::HermForm;
use crate::index::MultiIndex;
use crate::linalg::{solve, Matrix};
use crate::map::PolyMap;
use crate::num::{cr, qi, Cq, Q};
use crate::poly::Poly;
use crate::real_form::RealForm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sharpness {
    Sharp,
    NotSharp,
    Conjectural,
}

/// A degree bound `d <= c(n, N)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Formula {
    /// `2N - 3`, monomial maps `B_2 -> B_N`.
    MonomialN2,
    /// `(4/3)(2N - 3)/(2n - 3)`, monomial maps.
    MonomialGeneral,
    /// `floor((N - 1)/(n - 1))`, monomial maps with `n >= 3` large relative to the degree.
    LargeN,
    /// `N(N - 1)/(2(2n - 3))`, rational maps.
    RationalGeneral,
    /// `N(N - 1)/2`, rational maps `B_2 -> B_N`.
    Meylan,
}

impl Formula {
    pub const ALL: [Formula; 5] = [
        Formula::MonomialN2,
        Formula::MonomialGeneral,
        Formula::LargeN,
        Formula::RationalGeneral,
        Formula::Meylan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::MonomialN2 => "monomial-n2",
            Formula::MonomialGeneral => "monomial-general",
            Formula::LargeN => "large-n",
            Formula::RationalGeneral => "rational-general",
            Formula::Meylan => "meylan",
        }
    }

    pub fn from_name(s: &str) -> Option<Formula> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn sharpness(self) -> Sharpness {
        match self {
            Formula::MonomialN2 | Formula::LargeN => Sharpness::Sharp,
            Formula::MonomialGeneral | Formula::RationalGeneral | Formula::Meylan => Sharpness::NotSharp,
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            Formula::MonomialN2 | Formula::Meylan => "n = 2, N >= 2",
            Formula::MonomialGeneral | Formula::RationalGeneral => "n >= 2, N >= 2",
            Formula::LargeN => "n >= 3, N >= 1",
        }
    }

    pub fn eval(self, n: usize, big_n: usize) -> Result<Q> {
        let out = |msg: String| Err(Error::OutOfDomain(msg));
        let nn = qi(big_n as i64);
        let nq = qi(n as i64);
        match self {
            Formula::MonomialN2 | Formula::Meylan if n != 2 => out(format!("{} needs n = 2, got {n}", self.name())),
            Formula::LargeN if n < 3 => out(format!("large-n needs n >= 3, got {n}")),
            Formula::MonomialGeneral | Formula::RationalGeneral if n < 2 => {
                out(format!("{} needs n >= 2, got {n}", self.name()))
            }
            Formula::LargeN if big_n < 1 => out(format!("large-n needs N >= 1, got {big_n}")),
            _ if self != Formula::LargeN && big_n < 2 => out(format!("{} needs N >= 2, got {big_n}", self.name())),
            Formula::MonomialN2 => Ok(qi(2) * nn - qi(3)),
            Formula::MonomialGeneral => Ok(Q::new(4.into(), 3.into()) * (qi(2) * nn - qi(3)) / (qi(2) * nq - qi(3))),
            Formula::LargeN => Ok(Q::from_integer(BigInt::from((big_n - 1) / (n - 1)))),
            Formula::RationalGeneral => Ok(nn.clone() * (nn - qi(1)) / (qi(2) * (qi(2) * nq - qi(3)))),
            Formula::Meylan => Ok(nn.clone() * (nn - qi(1)) / qi(2)),
        }
    }
}

pub fn bound_monomial_n2(big_n: usize) -> Result<Q> {
    Formula::MonomialN2.eval(2, big_n)
}

pub fn bound_monomial_general(n: usize, big_n: usize) -> Result<Q> {
    Formula::MonomialGeneral.eval(n, big_n)
}

pub fn bound_large_n(n: usize, big_n: usize) -> Result<Q> {
    Formula::LargeN.eval(n, big_n)
}

pub fn bound_rational_general(n: usize, big_n: usize) -> Result<Q> {
    Formula::RationalGeneral.eval(n, big_n)
}

/// Exponents of the components of `V` for a given `n`: `(2n-3-2s, s)` for
/// `s = 0..n-2`, then `(0, 2n-3)`.
pub fn v_support(n: usize) -> Vec<MultiIndex> {
    let top = 2 * n as u32 - 3;
    let mut out: Vec<MultiIndex> = (0..n as u32 - 1)
        .map(|s| MultiIndex::new(vec![top - 2 * s, s]))
        .collect();
    out.push(MultiIndex::new(vec![0, top]));
    out
}

/// Real form of the invariant map `V: B_2 -> B_n` of degree `2n - 3`.
///
/// The squared constants are found by solving `p(x, 1 - x) = 1` over the
/// fixed support; the solution must be unique and positive.
pub fn build_v(n: usize) -> Result<RealForm> {
    if n < 2 {
        return Err(Error::Precondition(format!("V needs n >= 2, got {n}")));
    }
    let support = v_support(n);
    let top = 2 * n - 3;
    // p(x, 1-x) for each support monomial, as a coefficient vector in x
    let x = Poly::<Q>::var(1, 0);
    let one_minus_x = Poly::one(1).sub(&x);
    let columns: Vec<Vec<Q>> = support
        .iter()
        .map(|a| {
            let p = x.pow(a.exps()[0]).mul(&one_minus_x.pow(a.exps()[1]));
            (0..=top).map(|e| p.coeff(&MultiIndex::new(vec![e as u32]))).collect()
        })
        .collect();
    let rows: Matrix<Q> = (0..=top)
        .map(|e| columns.iter().map(|c| c[e].clone()).collect())
        .collect();
    let mut rhs = vec![Q::zero(); top + 1];
    rhs[0] = Q::one();
    let sol = solve(&rows, &rhs, support.len())
        .ok_or_else(|| Error::Inconsistent(format!("no V for n = {n}")))?;
    if !sol.kernel.is_empty() {
        return Err(Error::Inconsistent(format!("V constants not unique for n = {n}")));
    }
    if sol.particular.iter().any(|c| !c.is_positive()) {
        return Err(Error::Inconsistent(format!("V constants not positive for n = {n}")));
    }
    Ok(RealForm::from_terms(2, support.into_iter().zip(sol.particular)))
}

/// Diagonal coefficient form of `V`.
pub fn build_v_form(n: usize) -> Result<HermForm> {
    Ok(HermForm::from_real_form(&build_v(n)?))
}

/// What a pullback `g ∘ U ∘ V` produced.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackReport {
    pub n: usize,
    pub g_degree: u32,
    pub composed_degree: u32,
    pub expected_degree: u32,
    /// The rational orthogonal matrix `U` that was used.
    pub rotation: Matrix<Q>,
    pub attempts: usize,
    /// Exact real form of the pullback, available when `g` is monomial and `U = I`.
    pub real_form: Option<RealForm>,
    /// Exact coefficient form of the pullback, when it has rational entries.
    pub form: Option<HermForm>,
}

impl PullbackReport {
    pub fn degree_is_multiplicative(&self) -> bool {
        self.composed_degree == self.expected_degree
    }
}

/// The object being pulled back.
#[derive(Clone, Debug)]
pub enum PullbackInput {
    Map(PolyMap),
    /// Real form of a monomial map with these squared coefficients.
    RealForm(RealForm),
}

impl PullbackInput {
    fn n(&self) -> usize {
        match self {
            PullbackInput::Map(g) => g.n(),
            PullbackInput::RealForm(p) => p.n(),
        }
    }

    fn degree(&self) -> Result<u32> {
        match self {
            PullbackInput::Map(g) => g.degree(),
            PullbackInput::RealForm(p) => p.degree().ok_or(Error::ZeroMap),
        }
    }

    fn is_proper(&self) -> bool {
        match self {
            PullbackInput::Map(g) => HermForm::squared_norm(g).is_proper_form(),
            PullbackInput::RealForm(p) => p.is_proper(),
        }
    }
}

const TRIPLES: [(i64, i64, i64); 6] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (12, 35, 37)];

/// A rational orthogonal matrix: a product of Givens rotations with
/// Pythagorean cosines and sines.
pub fn pythagorean_rotation(n: usize, rng: &mut impl Rng) -> Matrix<Q> {
    let mut u: Matrix<Q> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    if n < 2 {
        return u;
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (a, b, c) = TRIPLES[rng.gen_range(0..TRIPLES.len())];
        let (cs, sn) = (Q::new(a.into(), c.into()), Q::new(b.into(), c.into()));
        for row in u.iter_mut() {
            let (ri, rj) = (row[i].clone(), row[j].clone());
            row[i] = &cs * &ri - &sn * &rj;
            row[j] = &sn * &ri + &cs * &rj;
        }
    }
    u
}

fn is_identity(u: &Matrix<Q>) -> bool {
    u.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Q::one() } else { Q::zero() }))
}

/// Whether the degree-`d` part of `g ∘ U` survives on the plane spanned by
/// the first and last coordinates, which is exactly when `deg(g ∘ U ∘ V) = (2n-3) d`.
fn top_survives(input: &PullbackInput, u: &Matrix<Q>, d: u32) -> bool {
    let n = input.n();
    // (U u)_i restricted to u = (s, 0, ..., 0, t)
    let lines: Vec<Poly<Cq>> = (0..n)
        .map(|i| {
            Poly::var(2, 0)
                .scale(&cr(u[i][0].clone()))
                .add(&Poly::var(2, 1).scale(&cr(u[i][n - 1].clone())))
        })
        .collect();
    match input {
        PullbackInput::Map(g) => g
            .part_of_degree(d)
            .components()
            .iter()
            .any(|c| !c.compose(&lines).is_zero()),
        PullbackInput::RealForm(p) => p
            .top_degree_terms()
            .iter()
            .any(|(a, _)| a.exps().iter().zip(&lines).all(|(&e, l)| e == 0 || !l.is_zero())),
    }
}

/// Real form of `g ∘ V` for a monomial `g` given by its real form.
pub fn pullback_real_form(p: &RealForm, v: &RealForm) -> RealForm {
    let subs: Vec<Poly<Q>> = v
        .terms()
        .map(|(a, c)| Poly::monomial(a.clone(), c.clone()))
        .collect();
    RealForm::from_poly(p.poly().compose(&subs))
}

/// Pull `g` back along `U ∘ V`, retrying random rotations until the degree
/// is exactly `(2n - 3) deg(g)`.
pub fn pullback(input: &PullbackInput, seed: u64, max_attempts: usize) -> Result<PullbackReport> {
    let n = input.n();
    if n < 2 {
        return Err(Error::Precondition(format!("pullback needs n >= 2, got {n}")));
    }
    if !input.is_proper() {
        return Err(Error::NotProper("pullback input".into()));
    }
    let d = input.degree()?;
    let expected = (2 * n as u32 - 3) * d;
    let v = build_v(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Matrix<Q> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for attempt in 0..max_attempts.max(1) {
        let u = if attempt == 0 { identity.clone() } else { pythagorean_rotation(n, &mut rng) };
        if !top_survives(input, &u, d) {
            continue;
        }
        let (real_form, form) = exact_pullback(input, &u, &v);
        let composed_degree = match &real_form {
            Some(r) => r.degree().ok_or(Error::ZeroMap)?,
            None => expected,
        };
        return Ok(PullbackReport {
            n,
            g_degree: d,
            composed_degree,
            expected_degree: expected,
            rotation: u,
            attempts: attempt + 1,
            real_form,
            form,
        });
    }
    Err(Error::RetriesExhausted(format!("no rotation kept the top degree after {max_attempts} attempts")))
}

fn exact_pullback(input: &PullbackInput, u: &Matrix<Q>, v: &RealForm) -> (Option<RealForm>, Option<HermForm>) {
    let n = input.n();
    let monomial_real_form = match input {
        PullbackInput::RealForm(p) => Some(p.clone()),
        PullbackInput::Map(g) => g.real_form_of_monomial().ok(),
    };
    if is_identity(u) {
        if let Some(p) = monomial_real_form {
            let r = pullback_real_form(&p, v);
            let f = HermForm::from_real_form(&r);
            return (Some(r), Some(f));
        }
    }
    if n == 2 {
        // V is the identity, so g ∘ U has rational coefficients
        if let PullbackInput::Map(g) = input {
            let uc: Matrix<Cq> = u.iter().map(|r| r.iter().map(|x| cr(x.clone())).collect()).collect();
            if let Ok(h) = g.precompose_linear(&uc) {
                return (None, Some(HermForm::squared_norm(&h)));
            }
        }
    }
    (None, None)
}

/// Degree of `g ∘ U ∘ V` read from its top part, exact for any rotation.
pub fn composed_degree(input: &PullbackInput, u: &Matrix<Q>) -> Result<u32> {
    let n = input.n();
    let d = input.degree()?;
    if top_survives(input, u, d) {
        return Ok((2 * n as u32 - 3) * d);
    }
    Err(Error::Precondition("top degree cancels for this rotation".into()))
}
