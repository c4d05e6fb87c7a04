//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::path::Path;
use std::time::{Duration, Instant};

use ballmaps::numeric::{self, C64};
use ballmaps_core::bounds::{build_v, build_v_form, pullback, Formula, PullbackInput};
use ballmaps_core::catalog::{
    invariant_top_split, linear_top_split, proper_map_corpus, quadratic_top_split, quartic_quadratic_pencil,
    swapped_whitney, tensor_powers_pencil, whitney_map, whitney_plane_pencil,
};
use ballmaps_core::family::{CheckStatus, FeasibleSet, FormPencil, ProbeOptions};
use ballmaps_core::jets::{jet_complete, spectrahedron_demo, stabilize, universal_system, JetForm, StabilizeMode};
use ballmaps_core::num::{cq, cr, q, qi, Cq, Q};
use ballmaps_core::quadruple::jet_family;
use ballmaps_core::zeros::{homogenize_by_tensor, s_of_q, zero_set_check, CandidateStatus, ZeroSet};
use ballmaps_core::{Error, HermForm, MultiIndex, Poly, PolyMap, RealForm};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const LIMIT: Duration = Duration::from_secs(10);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: ballmaps_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

fn real_form(n: usize, terms: &[(&[u32], i64)]) -> RealForm {
    RealForm::from_terms(n, terms.iter().map(|(a, c)| (mi(a), qi(*c))))
}

fn interval(a: Q, b: Q) -> Outcome {
    let p = ok(quartic_quadratic_pencil(&a, &b))?;
    let want_lo = -&b / (&a - &b);
    let want_hi = (Q::one() - &b) / (&a - &b);
    match ok(p.feasible_set(&ProbeOptions::default()))? {
        FeasibleSet::Interval { lo, hi, .. } if lo == want_lo && hi == want_hi => Ok(format!("[{lo}, {hi}]")),
        other => Err(format!("a = {a}, b = {b}: got {}", other.kind())),
    }
}

fn c1_interval() -> Outcome {
    let mut out = Vec::new();
    for (a, b) in [(qi(1), qi(0)), (q(1, 2), qi(0)), (q(3, 4), q(1, 4))] {
        out.push(interval(a, b)?);
    }
    Ok(format!("K = {}", out.join(", ")))
}

fn proper(f: &HermForm) -> bool {
    f.sub(&HermForm::one(f.n())).vanishes_on_sphere()
}

fn c2_properness() -> Outcome {
    let (f, g) = swapped_whitney();
    let mut checked = 0;
    for m in [f, g, whitney_map(2).map_err(|e| e.to_string())?] {
        ensure(proper(&HermForm::squared_norm(&m)), || "a named map is not proper".into())?;
        checked += 1;
    }
    let mut pencils: Vec<(String, FormPencil)> = vec![
        ("tensor powers".into(), ok(tensor_powers_pencil(2))?),
        ("linear split".into(), ok(linear_top_split())?),
        ("quadratic split".into(), ok(quadratic_top_split())?),
    ];
    for a in 0..=5 {
        pencils.push((format!("invariant split a = {a}"), ok(invariant_top_split(a))?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, p) in &pencils {
        for _ in 0..10 {
            let l = p.random_interior(&mut rng);
            ensure(ok(p.membership(&l))?.verdict.is_psd(), || format!("{name}: sample is not interior"))?;
            ensure(proper(&ok(p.eval(&l))?), || format!("{name}: member at {l:?} is not proper"))?;
            checked += 1;
        }
    }
    for n in 2..=8 {
        ensure(proper(&ok(build_v_form(n))?), || format!("V({n}) is not proper"))?;
        checked += 1;
    }
    Ok(format!("{checked} forms vanish exactly on the sphere after subtracting 1"))
}

/// Substitutes `y = 1 - x` at several rational `x`; independent of the hyperplane reduction.
fn one_on_line(p: &RealForm) -> bool {
    (0..=12).all(|i| {
        let x = q(i - 3, 7);
        let y = Q::one() - &x;
        p.poly().eval(&[x, y]).is_one()
    })
}

fn c3_invariant_constants() -> Outcome {
    let want3 = real_form(2, &[(&[3, 0], 1), (&[1, 1], 3), (&[0, 3], 1)]);
    let want4 = real_form(2, &[(&[5, 0], 1), (&[3, 1], 5), (&[1, 2], 5), (&[0, 5], 1)]);
    for (n, want) in [(3, want3), (4, want4)] {
        let v = ok(build_v(n))?;
        ensure(v == want, || format!("n = {n}: solver gave a different form"))?;
        ensure(one_on_line(&v), || format!("n = {n}: substitution oracle disagrees"))?;
    }
    Ok("x^3+3xy+y^3 and x^5+5x^3y+5xy^2+y^5 reproduced and equal 1 on x+y=1".into())
}

fn c4_rank() -> Outcome {
    let r = ok(ok(whitney_plane_pencil())?.family_rank(0))?;
    ensure(r.rank == 4, || format!("Whitney pencil rank {}", r.rank))?;
    let mut pencils = vec![ok(whitney_plane_pencil())?, ok(tensor_powers_pencil(2))?, ok(linear_top_split())?];
    pencils.push(ok(quadratic_top_split())?);
    pencils.extend((0..=5).map(|a| invariant_top_split(a).unwrap()));
    pencils.push(ok(jet_family(2, 2))?);
    pencils.push(ok(jet_family(3, 2))?);
    let mut count = 0;
    for p in pencils.iter().filter(|p| p.origin_preserving() && p.n() >= 2 && p.k() >= 1) {
        let r = ok(p.family_rank(0))?;
        ensure(r.rank >= p.n() + 2, || format!("rank {} < n + 2 for n = {}, k = {}", r.rank, p.n(), p.k()))?;
        count += 1;
    }
    Ok(format!("Whitney pencil rank 4 = n + 2; {count} origin-preserving pencils have rank >= n + 2"))
}

fn c5_monomial_degree() -> Outcome {
    for a in 0..=5u32 {
        let p = ok(invariant_top_split(a))?;
        let c = ok(p.check_monomial_degree(Formula::MonomialN2, 0))?;
        ensure(c.passed(), || format!("a = {a}: {}", c.note))?;
        let v = ok(build_v(a as usize + 2))?;
        let big_n = a as usize + 2;
        ensure(v.degree() == Some(2 * big_n as u32 - 3), || format!("a = {a}: k = 0 witness not tight"))?;
    }
    let c = ok(ok(jet_family(2, 2))?.check_monomial_degree(Formula::MonomialN2, 0))?;
    ensure(matches!(c.status, CheckStatus::Precondition(_)), || "non-monomial family was not rejected".into())?;
    Ok("a = 0..5 pass with tight k = 0 witnesses; the quadratic jet family is rejected as non-monomial".into())
}

fn c6_rational_bound() -> Outcome {
    let mut count = 0;
    for n in 2..=10usize {
        for big_n in 2..=20usize {
            let b = ok(Formula::RationalGeneral.eval(n, big_n))?;
            let (ni, m) = (n as i64, big_n as i64);
            ensure(b == q(m * (m - 1), 2 * (2 * ni - 3)), || format!("c({n}, {big_n}) = {b}"))?;
            if n == 2 {
                ensure(b == q(m * (m - 1), 2), || format!("c(2, {big_n}) = {b}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} grid points match N(N-1)/(2(2n-3)) exactly"))
}

fn c7_homogenization() -> Outcome {
    let corpus = ok(proper_map_corpus())?;
    ensure(corpus.len() >= 10, || format!("corpus has {} maps", corpus.len()))?;
    for (name, p) in &corpus {
        let (d, nu) = (ok(p.degree())?, ok(p.vanishing_order())?);
        let (h, steps) = ok(homogenize_by_tensor(p))?;
        ensure(steps <= d - nu, || format!("{name}: {steps} steps > d - ν = {}", d - nu))?;
        ensure(HermForm::squared_norm(&h) == HermForm::norm_power(p.n(), d), || format!("{name}: final form is not ||z||^2d"))?;
        let rep = ok(zero_set_check(p, &[]))?;
        let want = if p.preserves_origin() { ZeroSet::Origin } else { ZeroSet::Empty };
        ensure(rep.zero_set == want, || format!("{name}: wrong zero set"))?;
    }
    Ok(format!("{} maps: steps <= d - ν, ||H||^2 = ||z||^2d, zero sets {{0}} or empty", corpus.len()))
}

fn linear(n: usize, c0: Q, terms: &[(usize, Q)]) -> Poly<Cq> {
    let mut p = Poly::constant(n, cr(c0));
    for (j, c) in terms {
        p.add_term(MultiIndex::unit(n, *j), cr(c.clone()));
    }
    p
}

fn c8_candidate_sets() -> Outcome {
    let s = ok(s_of_q(&Poly::one(2), 1, 40))?;
    ensure(s.status == CandidateStatus::Exact && s.points == vec![vec![Cq::zero(), Cq::zero()]], || "S(1) is not {0}".into())?;
    let q1 = linear(2, qi(1), &[(0, q(-1, 2))]);
    let s = ok(s_of_q(&q1, 2, 40))?;
    let mut pts = s.points.clone();
    pts.sort_by(|a, b| a[0].re.cmp(&b[0].re));
    let want = vec![vec![Cq::zero(), Cq::zero()], vec![cr(q(1, 2)), Cq::zero()]];
    ensure(s.status == CandidateStatus::Exact && pts == want, || "S(1 - z1/2) is wrong".into())?;
    for roots in [vec![q(1, 2)], vec![q(1, 2), q(-1, 3)], vec![q(1, 2), q(1, 3), q(-2, 5)]] {
        let mut qp = Poly::one(1);
        for a in &roots {
            qp = qp.mul(&linear(1, qi(1), &[(0, -a.clone())]));
        }
        let d = roots.len() as u32 + 1;
        let s = ok(s_of_q(&qp, d, 40))?;
        let mut got: Vec<Q> = s.points.iter().map(|p| p[0].re.clone()).collect();
        got.sort();
        let mut want: Vec<Q> = roots.clone();
        want.push(qi(0));
        want.sort();
        ensure(s.status == CandidateStatus::Exact && got == want, || format!("product over {roots:?} gave {got:?}"))?;
    }
    Ok("S(1) = {0}, S(1 - z1/2) = {0, (1/2, 0)}, three products give the reflected roots".into())
}

fn c9_jets() -> Outcome {
    let u = ok(universal_system(2, 2))?;
    ensure(u.solution_dim == 4, || format!("solution dimension {}", u.solution_dim))?;
    let c = ok(jet_complete(&ok(JetForm::zero(2, 2))?))?;
    let want = HermForm::diagonal(2, [(mi(&[2, 0]), qi(1)), (mi(&[1, 1]), qi(2)), (mi(&[0, 2]), qi(1))]);
    ensure(c.d_block() == want, || "A = 0 completion is not diag(1, 2, 1)".into())?;
    let mut count = 0;
    for i in 0..=10 {
        for j in 0..=10 {
            for k in 0..5 {
                let (x, y) = (q(i, 10), q(j, 10));
                let zeta = cq(q(3 * k, 40), q(4 * k, 40));
                let pt = ok(spectrahedron_demo(&x, &y, &zeta))?;
                ensure(pt.closed_form == pt.solver.is_psd(), || format!("disagreement at ({x}, {y}, {k})"))?;
                count += 1;
            }
        }
    }
    Ok(format!("dim 4 = δ(2,1)^2, D0 = diag(1,2,1), closed form agrees with solver on {count} points"))
}

/// Smallest m with all coefficients of `(x + y)^m R` nonnegative (or positive on every monomial).
fn inspect_oracle(r: &RealForm, strict: bool) -> Option<u32> {
    let s = RealForm::simplex_sum(2);
    let mut cur = r.clone();
    for m in 0..=64u32 {
        let deg = cur.degree()?;
        let coeffs: Vec<Q> = (0..=deg).map(|i| cur.coeff(&mi(&[i, deg - i]))).collect();
        let good = if strict {
            coeffs.iter().all(|c| c > &Q::zero())
        } else {
            coeffs.iter().all(|c| c >= &Q::zero())
        };
        if good {
            return Some(m);
        }
        cur = cur.mul(&s);
    }
    None
}

fn c10_stabilization() -> Outcome {
    let r = real_form(2, &[(&[2, 0], 1), (&[1, 1], -1), (&[0, 2], 1)]);
    let form = HermForm::from_real_form(&r);
    let psd = ok(stabilize(&form, StabilizeMode::Psd, 64))?;
    let pd = ok(stabilize(&form, StabilizeMode::Pd, 64))?;
    ensure(Some(psd.m) == inspect_oracle(&r, false) && psd.m == 1, || format!("PSD m = {}", psd.m))?;
    ensure(Some(pd.m) == inspect_oracle(&r, true) && pd.m == 3, || format!("PD m = {}", pd.m))?;
    let bad = HermForm::from_real_form(&real_form(2, &[(&[1, 0], 1), (&[0, 1], -1)]));
    ensure(matches!(stabilize(&bad, StabilizeMode::Psd, 64), Err(Error::NotStabilized(_))), || "x - y did not hit the cap".into())?;
    Ok("x^2 - xy + y^2: m = 1 (PSD), m = 3 (PD) as the oracle; x - y hits the cap".into())
}

fn c11_pullback() -> Outcome {
    let mut count = 0;
    for n in [3usize, 4] {
        let z = PolyMap::identity(n);
        let w = ok(whitney_map(n))?;
        let zz = ok(z.tensor(&z))?;
        let corpus = vec![z.clone(), w.clone(), zz.clone(), ok(w.tensor(&z))?, ok(zz.tensor(&z))?];
        for g in corpus {
            let rep = ok(pullback(&PullbackInput::Map(g.clone()), 11, 16))?;
            let want = (2 * n as u32 - 3) * ok(g.degree())?;
            ensure(rep.composed_degree == want, || format!("n = {n}: degree {} != {want}", rep.composed_degree))?;
            count += 1;
        }
    }
    Ok(format!("{count} pullbacks have degree (2n - 3) deg g"))
}

fn float_tokens(dir: &Path, hits: &mut Vec<String>) {
    let Ok(rd) = std::fs::read_dir(dir) else { return };
    for e in rd.flatten() {
        let p = e.path();
        if p.is_dir() {
            float_tokens(&p, hits);
        } else if p.extension().is_some_and(|x| x == "rs") {
            let text = std::fs::read_to_string(&p).unwrap_or_default();
            for (i, line) in text.lines().enumerate() {
                let words = line.split(|c: char| !c.is_alphanumeric() && c != '_');
                if words.into_iter().any(|w| w == "f32" || w == "f64") {
                    hits.push(format!("{}:{}", p.display(), i + 1));
                }
            }
        }
    }
}

fn c12_exactness() -> Outcome {
    let core = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core");
    let mut hits = Vec::new();
    float_tokens(&core.join("src"), &mut hits);
    float_tokens(&core.join("tests"), &mut hits);
    ensure(hits.is_empty(), || format!("float tokens in the exact layer: {}", hits.join(", ")))?;

    let mut worst = 0.0f64;
    let mut forms: Vec<HermForm> = (2..=8).map(|n| build_v_form(n).unwrap()).collect();
    forms.extend(ok(proper_map_corpus())?.iter().map(|(_, m)| HermForm::squared_norm(m)));
    for f in &forms {
        let g = ok(numeric::gram_map_numeric(f))?;
        worst = worst.max(g.form_error(f));
    }
    ensure(worst <= 1e-9, || format!("Gram error {worst:e}"))?;

    let c = |re: f64, im: f64| C64::new(re, im);
    let sets: Vec<Vec<Vec<C64>>> = vec![
        vec![vec![c(0.5, 0.0)], vec![c(-0.2, 0.3)]],
        vec![vec![c(0.1, 0.2), c(-0.3, 0.4)], vec![c(0.0, 0.5), c(0.2, -0.1)]],
        vec![vec![c(0.3, 0.0), c(0.0, 0.2), c(-0.1, 0.1)]],
    ];
    let mut defect = 0.0f64;
    for pts in &sets {
        let f = ok(numeric::automorphism_product(pts))?;
        defect = defect.max(numeric::sphere_defect(&f, &numeric::sphere_points(pts[0].len(), 200, 3)));
        for a in pts {
            defect = defect.max(numeric::norm2(&f.eval(a)).sqrt());
        }
    }
    ensure(defect <= 1e-9, || format!("automorphism defect {defect:e}"))?;

    let exact = [cq(q(1, 2), qi(0)), cq(q(-1, 5), q(3, 10))];
    let numer: Vec<Vec<C64>> = exact.iter().map(|a| vec![numeric::to_c64(a)]).collect();
    let f = ok(numeric::automorphism_product(&numer))?;
    let mut qp = Poly::one(1);
    for a in &exact {
        let mut factor = Poly::one(1);
        factor.add_term(MultiIndex::unit(1, 0), -a.conj());
        qp = qp.mul(&factor);
    }
    let s = ok(s_of_q(&qp, 3, 48))?;
    let cands: Vec<C64> = s.points.iter().map(|p| numeric::to_c64(&p[0])).collect();
    let roots = numeric::numerator_roots(&f, 0);
    ensure(!roots.is_empty(), || "no numerator roots".into())?;
    for r in roots.iter().filter(|r| r.norm() < 1.0) {
        ensure(cands.iter().any(|x| (x - r).norm() <= 1e-6), || format!("root {r} not in S(q)"))?;
    }
    Ok(format!("no f32/f64 in the exact crate; Gram error {worst:.1e}, automorphism defect {defect:.1e}, roots within 1e-6 of S(q)"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("quartic-quadratic intervals", c1_interval),
        ("properness identities", c2_properness),
        ("invariant map constants", c3_invariant_constants),
        ("family rank gap", c4_rank),
        ("monomial degree bound", c5_monomial_degree),
        ("rational degree bound arithmetic", c6_rational_bound),
        ("homogenization by tensoring", c7_homogenization),
        ("candidate sets S(q)", c8_candidate_sets),
        ("jet completion", c9_jets),
        ("stabilization", c10_stabilization),
        ("pullback degree", c11_pullback),
        ("exactness and numeric tolerances", c12_exactness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let line = match (&result, took <= LIMIT) {
            (Ok(d), true) => format!("PASS {:>2} {name}: {d} ({took:.2?})", i + 1),
            (Ok(d), false) => format!("FAIL {:>2} {name}: {d} but took {took:.2?}", i + 1),
            (Err(e), _) => format!("FAIL {:>2} {name}: {e} ({took:.2?})", i + 1),
        };
        if !line.starts_with("PASS") {
            failed += 1;
        }
        println!("{line}");
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
