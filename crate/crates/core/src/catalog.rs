//! Named example maps and families, each with a list of exact checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{build_v, Formula};
use crate::error::{Error, Result};
use crate::family::{CheckReport, CheckStatus, FeasibleSet, FormPencil, ProbeOptions};
use crate::form::{norm_equivalent, HermForm};
use crate::index::MultiIndex;
use crate::jets::{dim_v, jet_complete, spectrahedron_demo, universal_system, JetForm};
use crate::map::PolyMap;
use crate::num::{cq, cr, format_rational, q, qi, Cq, Q};
use crate::poly::Poly;
use crate::quadruple::{jet_family, quadruple_report, MapClass, QuadrupleVerdict, SearchOptions};
use crate::real_form::RealForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    pub id: String,
    pub title: String,
    pub checks: Vec<Check>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

const GROUP_INVARIANT: core::ops::RangeInclusive<usize> = 2..=8;
const TOP_SPLIT: core::ops::RangeInclusive<u32> = 0..=5;
const WHITNEY: core::ops::RangeInclusive<usize> = 2..=6;

pub fn entries() -> Vec<CatalogEntry> {
    let e = |id: &str, title: &str| CatalogEntry {
        id: id.into(),
        title: title.into(),
    };
    let mut out = vec![
        e("quartic-quadratic-interval", "a||z||^4 + (1-a)||z||^2 against b||z||^4 + (1-b)||z||^2"),
        e("swapped-whitney", "(z1, z1 z2, z2^2) and (z1^2, z1 z2, z2): spherically but not norm equivalent"),
        e("tensor-powers-plane", "two-dimensional family spanned by z, z⊗z, z⊗z⊗z on B_2"),
        e("whitney-plane-pencil", "one-dimensional family through (z1, z1 z2, z2^2) and z, rank 4"),
    ];
    for m in GROUP_INVARIANT {
        out.push(e(&format!("group-invariant-{m}"), &format!("invariant monomial map B_2 -> B_{m} of degree {}", 2 * m - 3)));
    }
    for a in TOP_SPLIT {
        out.push(e(
            &format!("invariant-top-split-{a}"),
            &format!("quadruple (2, {}, {}, 1) from splitting {}", a + 4, 2 * a + 2, MultiIndex::new(vec![2 * a + 1, 0]).monomial('x')),
        ));
    }
    out.extend([
        e("linear-top-split", "quadruple (2, 5, 2, 2): both linear terms of x + y split"),
        e("quadratic-top-split", "quadruple (2, 9, 3, 5): the quadratic terms split once more"),
        e("disk-linear-quadratic", "(a z, b z^2) on B_1 with |a|^2 + |b|^2 = 1"),
        e("quadratic-jets-plane", "degree-2 maps B_2 -> B_5 parametrized by their linear part"),
        e("quadratic-jets-space", "degree-2 maps B_3 -> B_9 parametrized by their linear part"),
        e("quadratic-jets-spectrahedron", "positivity region of the 5x5 completed form"),
    ]);
    for n in WHITNEY {
        let head = if n == 2 { "z1".into() } else { format!("z1, ..., z{}", n - 1) };
        out.push(e(&format!("whitney-{n}"), &format!("Whitney map ({head}, z{n} z) from B_{n} to B_{}", 2 * n - 1)));
    }
    out
}

/// Rebuild the entry `id` and run its checks. Unknown ids are a precondition error.
pub fn verify(id: &str, seed: u64) -> Result<CatalogReport> {
    let title = entries()
        .into_iter()
        .find(|e| e.id == id)
        .map(|e| e.title)
        .ok_or_else(|| Error::Precondition(format!("unknown catalog entry {id}")))?;
    let numbered = |prefix: &str| id.strip_prefix(prefix).and_then(|s| s.parse::<u32>().ok());
    let checks = match id {
        "quartic-quadratic-interval" => verify_quartic_quadratic()?,
        "swapped-whitney" => verify_swapped_whitney()?,
        "tensor-powers-plane" => verify_tensor_powers(seed)?,
        "whitney-plane-pencil" => verify_whitney_pencil(seed)?,
        "linear-top-split" => verify_linear_top_split(seed)?,
        "quadratic-top-split" => verify_quadratic_top_split(seed)?,
        "disk-linear-quadratic" => verify_disk(seed)?,
        "quadratic-jets-plane" => verify_jets(2, seed)?,
        "quadratic-jets-space" => verify_jets(3, seed)?,
        "quadratic-jets-spectrahedron" => verify_spectrahedron()?,
        _ => {
            if let Some(m) = numbered("group-invariant-") {
                verify_group_invariant(m as usize)?
            } else if let Some(a) = numbered("invariant-top-split-") {
                verify_top_split(a, seed)?
            } else if let Some(n) = numbered("whitney-") {
                verify_whitney(n as usize, seed)?
            } else {
                return Err(Error::Inconsistent(format!("no verifier for {id}")));
            }
        }
    };
    Ok(CatalogReport {
        id: id.into(),
        title,
        checks,
    })
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn from_check(c: &CheckReport) -> Check {
    check(
        c.check,
        c.passed(),
        match &c.status {
            CheckStatus::Precondition(why) => format!("precondition: {why}"),
            _ => c.note.clone(),
        },
    )
}

fn monomial_map(n: usize, comps: &[(&[u32], Cq)]) -> PolyMap {
    PolyMap::from_components(
        n,
        comps.iter().map(|(a, c)| Poly::monomial(mi(a), c.clone())).collect(),
    )
}

pub fn quartic_quadratic_pencil(a: &Q, b: &Q) -> Result<FormPencil> {
    let mix = |t: &Q| {
        HermForm::norm_power(2, 2)
            .scale(t)
            .add(&HermForm::norm_power(2, 1).scale(&(Q::one() - t)))
    };
    FormPencil::new(vec![mix(a), mix(b)])
}

/// `(z1, z1 z2, z2^2)` and `(z1^2, z1 z2, z2)`.
pub fn swapped_whitney() -> (PolyMap, PolyMap) {
    let one = Cq::one();
    let f = monomial_map(2, &[(&[1, 0], one.clone()), (&[1, 1], one.clone()), (&[0, 2], one.clone())]);
    let g = monomial_map(2, &[(&[2, 0], one.clone()), (&[1, 1], one.clone()), (&[0, 1], one)]);
    (f, g)
}

/// Generators `z⊗z⊗z`, `z⊗z`, `z` on `B_n`.
pub fn tensor_powers_pencil(n: usize) -> Result<FormPencil> {
    FormPencil::new((1..=3).rev().map(|k| HermForm::norm_power(n, k)).collect())
}

/// `R_λ = λ ||(z1, z1 z2, z2^2)||^2 + (1 - λ) ||z||^2`.
pub fn whitney_plane_pencil() -> Result<FormPencil> {
    let w = HermForm::squared_norm(&whitney_map(2)?);
    FormPencil::new(vec![w, HermForm::norm_power(2, 1)])
}

/// `(z_1, ..., z_{n-1}, z_n z_1, ..., z_n z_n)`.
pub fn whitney_map(n: usize) -> Result<PolyMap> {
    if n == 0 {
        return Err(Error::Precondition("n = 0".into()));
    }
    let mut comps: Vec<Poly<Cq>> = (0..n - 1).map(|j| Poly::var(n, j)).collect();
    for j in 0..n {
        comps.push(Poly::var(n, n - 1).mul(&Poly::var(n, j)));
    }
    Ok(PolyMap::from_components(n, comps))
}

/// The invariant monomial map of degree `2a + 1` with its `x^{2a+1}` term split.
pub fn invariant_top_split(a: u32) -> Result<FormPencil> {
    let v = build_v(a as usize + 2)?;
    let base = FormPencil::new(vec![HermForm::from_real_form(&v)])?;
    base.extend_top(&[mi(&[2 * a + 1, 0])])
}

/// `x + y` with both linear terms split.
pub fn linear_top_split() -> Result<FormPencil> {
    let id = FormPencil::new(vec![HermForm::norm_power(2, 1)])?;
    id.extend_top(&[mi(&[1, 0]), mi(&[0, 1])])
}

/// The linear split followed by splitting `x^2`, `y^2` and `xy`.
pub fn quadratic_top_split() -> Result<FormPencil> {
    linear_top_split()?.extend_top(&[mi(&[2, 0]), mi(&[0, 2]), mi(&[1, 1])])
}

/// `λ |z|^2 + (1 - λ) |z|^4` on `B_1`.
pub fn disk_linear_quadratic() -> Result<FormPencil> {
    FormPencil::new(vec![HermForm::norm_power(1, 1), HermForm::norm_power(1, 2)])
}

/// Proper polynomial maps with Gaussian-rational coefficients, used as a
/// fixed test corpus for the zero-set and homogenization checks.
pub fn proper_map_corpus() -> Result<Vec<(String, PolyMap)>> {
    let (w2, g) = swapped_whitney();
    let z2 = PolyMap::identity(2);
    let z1 = PolyMap::identity(1);
    let zz = z2.tensor(&z2)?;
    let (a, b) = (q(9, 25), q(16, 25));
    let mut z3 = Poly::var(1, 0);
    z3 = z3.mul(&z3).mul(&Poly::var(1, 0));
    Ok(vec![
        ("identity-2".into(), z2.clone()),
        ("whitney-2".into(), w2.clone()),
        ("swapped-whitney".into(), g),
        ("whitney-3".into(), whitney_map(3)?),
        ("tensor-square-2".into(), zz.clone()),
        ("linear-quadratic-2".into(), z2.juxtapose(&zz, &a, &b)?),
        ("whitney-cubic-2".into(), w2.juxtapose(&zz.tensor(&z2)?, &b, &a)?),
        ("whitney-tensor-identity".into(), w2.tensor(&z2)?),
        ("cube-1".into(), PolyMap::from_components(1, vec![z3])),
        ("linear-quadratic-1".into(), z1.juxtapose(&z1.tensor(&z1)?, &a, &b)?),
        ("affine-1".into(), PolyMap::constant(1, Cq::one()).juxtapose(&z1, &a, &b)?),
    ])
}

fn proper_generators(p: &FormPencil) -> Check {
    let bad: Vec<usize> = (0..p.generators().len())
        .filter(|&i| !p.generators()[i].is_proper_form())
        .collect();
    check("generators-proper", bad.is_empty(), format!("{} generators, improper: {bad:?}", p.generators().len()))
}

fn random_members_proper(p: &FormPencil, count: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..count {
        let lambda = p.random_interior(&mut rng);
        let f = p.eval(&lambda)?;
        if f.is_proper_form() && p.membership(&lambda)?.verdict.is_psd() {
            ok += 1;
        }
    }
    Ok(check(
        "interior-members-proper",
        ok == count,
        format!("{ok}/{count} random interior members are proper and positive"),
    ))
}

fn shape(p: &FormPencil, k: usize, rank: usize, degree: u32, seed: u64) -> Result<Vec<Check>> {
    let r = p.family_rank(seed)?;
    Ok(vec![
        check("dimension", p.k() == k, format!("k = {} (expected {k})", p.k())),
        check(
            "family-rank",
            r.rank == rank && r.generic,
            format!("rank {} (expected {rank}), generic: {}", r.rank, r.generic),
        ),
        check("generic-degree", r.degree == degree, format!("degree {} (expected {degree})", r.degree)),
    ])
}

fn interval_is(p: &FormPencil, lo: &Q, hi: &Q) -> Result<Check> {
    Ok(match p.feasible_set(&ProbeOptions::default())? {
        FeasibleSet::Interval { lo: l, hi: h, .. } => check(
            "feasible-set",
            &l == lo && &h == hi,
            format!("K = [{}, {}]", format_rational(&l), format_rational(&h)),
        ),
        other => check("feasible-set", false, format!("expected an interval, got {}", other.kind())),
    })
}

fn verify_quartic_quadratic() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (a, b) in [(qi(1), qi(0)), (q(1, 2), qi(0)), (q(3, 4), q(1, 4))] {
        let p = quartic_quadratic_pencil(&a, &b)?;
        let lo = -&b / (&a - &b);
        let hi = (Q::one() - &b) / (&a - &b);
        let mut c = interval_is(&p, &lo, &hi)?;
        c.name = format!("interval(a = {}, b = {})", format_rational(&a), format_rational(&b));
        c.detail = format!("{}; expected [{}, {}]", c.detail, format_rational(&lo), format_rational(&hi));
        out.push(c);
    }
    Ok(out)
}

fn verify_swapped_whitney() -> Result<Vec<Check>> {
    let (f, g) = swapped_whitney();
    let swap = monomial_map(2, &[(&[0, 1], Cq::one()), (&[1, 0], Cq::one())]);
    let composed = g.compose(&swap)?;
    let ff = HermForm::squared_norm(&f);
    let fg = HermForm::squared_norm(&g);
    Ok(vec![
        check("f-proper", ff.is_proper_form(), "||f||^2 - 1 vanishes on the sphere"),
        check("g-proper", fg.is_proper_form(), "||g||^2 - 1 vanishes on the sphere"),
        check(
            "f-is-g-after-swap",
            norm_equivalent(&composed, &f)?,
            "g ∘ (z2, z1) is f with its components reversed",
        ),
        check("not-norm-equivalent", !norm_equivalent(&f, &g)?, "coefficient forms differ"),
        check("equal-ranks", ff.rank() == 3 && fg.rank() == 3, format!("ranks {} and {}", ff.rank(), fg.rank())),
    ])
}

fn verify_tensor_powers(seed: u64) -> Result<Vec<Check>> {
    let p = tensor_powers_pencil(2)?;
    let mut out = vec![proper_generators(&p)];
    out.extend(shape(&p, 2, dim_v(2, 3), 3, seed)?);
    out.push(random_members_proper(&p, 10, seed)?);
    out.push(match p.feasible_set(&ProbeOptions::default())? {
        FeasibleSet::Polyhedron(poly) => check(
            "feasible-set",
            poly.contains(&[Q::zero(), Q::zero()]) && poly.contains(&[Q::one(), Q::zero()]) && poly.contains(&[Q::zero(), Q::one()]),
            format!("polyhedron with {} vertices containing the simplex", poly.vertices.len()),
        ),
        other => check("feasible-set", false, format!("expected a polyhedron, got {}", other.kind())),
    });
    out.push(from_check(&p.check_gap_theorem(seed)?));
    Ok(out)
}

fn verify_whitney_pencil(seed: u64) -> Result<Vec<Check>> {
    let p = whitney_plane_pencil()?;
    let half = q(1, 2);
    let member = p.real_form_at(core::slice::from_ref(&half))?;
    let expected = RealForm::from_terms(
        2,
        [(mi(&[1, 0]), qi(1)), (mi(&[1, 1]), half.clone()), (mi(&[0, 2]), half.clone()), (mi(&[0, 1]), half.clone())],
    );
    // the variant whose last component is sin(t) z2^2
    let printed = RealForm::from_terms(
        2,
        [(mi(&[1, 0]), qi(1)), (mi(&[1, 1]), half.clone()), (mi(&[0, 2]), qi(1))],
    );
    let mut out = vec![
        proper_generators(&p),
        check("midpoint-member", member == expected, "x + xy/2 + y^2/2 + y/2 at λ = 1/2"),
        check("midpoint-proper", member.is_proper(), "equals 1 on x + y = 1"),
        check(
            "midpoint-rank",
            p.eval(&[half])?.rank() == 4,
            "rank 4, so the member maps B_2 into B_4",
        ),
        check("z2-squared-variant-improper", !printed.is_proper(), "x + xy/2 + y^2 is not 1 on x + y = 1"),
        interval_is(&p, &Q::zero(), &Q::one())?,
    ];
    out.extend(shape(&p, 1, 4, 2, seed)?);
    let gap = p.check_gap_theorem(seed)?;
    out.push(from_check(&gap));
    out.push(check(
        "gap-sharp",
        gap.value == Some(qi(4)),
        "family rank equals n + 2",
    ));
    Ok(out)
}

fn verify_group_invariant(m: usize) -> Result<Vec<Check>> {
    let v = build_v(m)?;
    let d = 2 * m as u32 - 3;
    let mut out = vec![
        check("proper", v.is_proper(), "equals 1 on x + y = 1"),
        check("form-proper", HermForm::from_real_form(&v).is_proper_form(), "||f||^2 - 1 vanishes on the sphere"),
        check("nonnegative", v.has_nonnegative_coeffs(), "all coefficients are squared norms"),
        check("rank", v.term_count() == m, format!("{} terms", v.term_count())),
        check("degree", v.degree() == Some(d), format!("degree {:?} = 2N - 3", v.degree())),
    ];
    let bound = Formula::MonomialN2.eval(2, m)?;
    out.push(check(
        "monomial-bound-tight",
        bound == Q::from_integer(d.into()),
        format!("2N - 3 = {}", format_rational(&bound)),
    ));
    let known: Option<RealForm> = match m {
        3 => Some(RealForm::from_terms(2, [(mi(&[3, 0]), qi(1)), (mi(&[1, 1]), qi(3)), (mi(&[0, 3]), qi(1))])),
        4 => Some(RealForm::from_terms(
            2,
            [(mi(&[5, 0]), qi(1)), (mi(&[3, 1]), qi(5)), (mi(&[1, 2]), qi(5)), (mi(&[0, 5]), qi(1))],
        )),
        _ => None,
    };
    if let Some(k) = known {
        out.push(check("known-real-form", v == k, "matches the closed form"));
    }
    Ok(out)
}

fn verify_top_split(a: u32, seed: u64) -> Result<Vec<Check>> {
    let p = invariant_top_split(a)?;
    let r = a as usize + 4;
    let mut out = vec![proper_generators(&p)];
    out.extend(shape(&p, 1, r, 2 * a + 2, seed)?);
    out.push(random_members_proper(&p, 10, seed)?);
    out.push(from_check(&p.check_monomial_degree(Formula::MonomialN2, seed)?));
    out.push(from_check(&p.check_gap_theorem(seed)?));
    Ok(out)
}

fn verify_linear_top_split(seed: u64) -> Result<Vec<Check>> {
    let p = linear_top_split()?;
    let mut out = vec![proper_generators(&p)];
    out.extend(shape(&p, 2, 5, 2, seed)?);
    out.push(random_members_proper(&p, 10, seed)?);
    out.push(match p.feasible_set(&ProbeOptions::default())? {
        FeasibleSet::Polyhedron(poly) => {
            let unit = vec![(qi(0), qi(1)), (qi(0), qi(1))];
            check(
                "feasible-set",
                poly.bbox == unit && poly.vertices.len() == 4,
                format!("square [0, 1]^2 with {} vertices", poly.vertices.len()),
            )
        }
        other => check("feasible-set", false, format!("expected a polyhedron, got {}", other.kind())),
    });
    out.push(from_check(&p.check_monomial_degree(Formula::MonomialN2, seed)?));
    out.push(from_check(&p.check_gap_theorem(seed)?));
    Ok(out)
}

fn verify_quadratic_top_split(seed: u64) -> Result<Vec<Check>> {
    let p = quadratic_top_split()?;
    let mut out = vec![proper_generators(&p)];
    out.extend(shape(&p, 5, 9, 3, seed)?);
    out.push(random_members_proper(&p, 10, seed)?);
    out.push(from_check(&p.check_monomial_degree(Formula::MonomialN2, seed)?));
    out.push(from_check(&p.check_gap_theorem(seed)?));
    Ok(out)
}

fn verify_disk(seed: u64) -> Result<Vec<Check>> {
    let p = disk_linear_quadratic()?;
    let mut out = vec![
        proper_generators(&p),
        check("origin-preserving", p.origin_preserving(), "no constant term"),
        interval_is(&p, &Q::zero(), &Q::one())?,
    ];
    out.extend(shape(&p, 1, 2, 2, seed)?);
    let gap = p.check_gap_theorem(seed)?;
    out.push(check(
        "gap-theorem-inapplicable",
        matches!(gap.status, CheckStatus::Precondition(_)),
        "one-dimensional domain: families exist in every dimension",
    ));
    Ok(out)
}

fn verify_jets(n: usize, seed: u64) -> Result<Vec<Check>> {
    let p = jet_family(n, 2)?;
    let k = dim_v(n, 1).pow(2);
    let sys = universal_system(n, 2)?;
    let mut out = vec![
        proper_generators(&p),
        check(
            "universal-kernel",
            sys.solution_dim == k && sys.jet_determines(),
            format!("solution space of dimension {} = δ({n}, 1)^2, fixed by the linear block", sys.solution_dim),
        ),
    ];
    out.extend(shape(&p, k, dim_v(n, 2), 2, seed)?);
    out.push(random_members_proper(&p, 10, seed)?);
    out.push(from_check(&p.check_gap_theorem(seed)?));
    let mono = p.check_monomial_degree(Formula::MonomialN2, seed)?;
    out.push(check(
        "monomial-bound-rejected",
        matches!(mono.status, CheckStatus::Precondition(_)),
        from_check(&mono).detail,
    ));
    let rep = quadruple_report(n, dim_v(n, 2), 2, k, MapClass::Polynomial, &SearchOptions::default())?;
    out.push(check(
        "quadruple-valid",
        rep.verdict == QuadrupleVerdict::ValidByConstruction,
        format!("({n}, {}, 2, {k}) {}", dim_v(n, 2), rep.verdict.label()),
    ));
    Ok(out)
}

fn verify_spectrahedron() -> Result<Vec<Check>> {
    let zero = jet_complete(&JetForm::zero(2, 2)?)?;
    let diag: Vec<Q> = [mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]
        .iter()
        .map(|a| zero.form.entry(a, a).re)
        .collect();
    let mut out = vec![check(
        "zero-jet-diagonal",
        diag == vec![qi(1), qi(2), qi(1)] && zero.form == HermForm::norm_power(2, 2),
        format!("D = diag({})", diag.iter().map(format_rational).collect::<Vec<_>>().join(", ")),
    )];
    let (mut agree, mut inside, mut total) = (0, 0, 0);
    let grid: Vec<Q> = (0..=4).map(|i| q(i, 4)).collect();
    for x in &grid {
        for y in &grid {
            for z in [cr(qi(0)), cr(q(1, 4)), cq(q(1, 4), q(1, 4)), cr(q(1, 2))] {
                total += 1;
                if let Ok(pt) = spectrahedron_demo(x, y, &z) {
                    agree += 1;
                    inside += usize::from(pt.closed_form);
                }
            }
        }
    }
    out.push(check(
        "closed-form-agrees",
        agree == total,
        format!("{agree}/{total} grid points agree, {inside} inside"),
    ));
    Ok(out)
}

fn verify_whitney(n: usize, seed: u64) -> Result<Vec<Check>> {
    let f = whitney_map(n)?;
    let form = HermForm::squared_norm(&f);
    let rank = 2 * n - 1;
    let fewer = quadruple_report(n, rank - 1, 2, 0, MapClass::Rational, &SearchOptions { seed, ..SearchOptions::default() })?;
    Ok(vec![
        check("proper", form.is_proper_form(), "||f||^2 - 1 vanishes on the sphere"),
        check("rank", form.rank() == rank, format!("rank {} = 2n - 1", form.rank())),
        check("degree", f.degree()? == 2, "degree 2"),
        check("origin-preserving", f.preserves_origin(), "f(0) = 0"),
        check(
            "smaller-target-excluded",
            n < 2 || fewer.verdict == QuadrupleVerdict::InvalidByBound,
            format!("({n}, {}, 2, 0) {}", rank - 1, fewer.verdict.label()),
        ),
    ])
}

impl core::fmt::Display for Check {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let tag = if self.passed { "ok" } else { "FAILED" };
        write!(f, "{tag:>6}  {}: {}", self.name, self.detail)
    }
}

impl CatalogReport {
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("{} {status}", self.id)
    }
}
