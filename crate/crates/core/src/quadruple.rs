//! Classification of quadruples `(n, r, d, k)`: a `k`-dimensional convex
//! family of proper maps from `B_n` with rank `r` and generic degree `d`.
//!
//! A quadruple is reported valid only with a constructed and re-verified
//! witness family, invalid only when a degree or rank bound excludes it, and
//! unknown otherwise. Families are taken to preserve the origin.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::bounds::{build_v, Formula};
use crate::error::{Error, Result};
use crate::family::FormPencil;
use crate::form::HermForm;
use crate::index::MultiIndex;
use crate::jets::{dim_v, jet_complete, v_basis, JetForm};
use crate::num::{cq, Cq, Q};
use crate::real_form::RealForm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapClass {
    Rational,
    Polynomial,
    Monomial,
}

impl MapClass {
    pub fn name(self) -> &'static str {
        match self {
            MapClass::Rational => "rational",
            MapClass::Polynomial => "polynomial",
            MapClass::Monomial => "monomial",
        }
    }

    pub fn from_name(s: &str) -> Option<MapClass> {
        [MapClass::Rational, MapClass::Polynomial, MapClass::Monomial]
            .into_iter()
            .find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuadrupleVerdict {
    ValidByConstruction,
    InvalidByBound,
    Unknown,
}

impl QuadrupleVerdict {
    pub fn label(self) -> &'static str {
        match self {
            QuadrupleVerdict::ValidByConstruction => "VALID_BY_CONSTRUCTION",
            QuadrupleVerdict::InvalidByBound => "INVALID_BY_BOUND",
            QuadrupleVerdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub construction: String,
    pub pencil: FormPencil,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadrupleReport {
    pub n: usize,
    pub r: usize,
    pub d: u32,
    pub k: usize,
    pub class: MapClass,
    pub verdict: QuadrupleVerdict,
    pub reasons: Vec<String>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Distinct proper real forms visited by the splitting search.
    pub max_forms: usize,
    /// Top-term extensions tried.
    pub max_extensions: usize,
    /// Largest jet family dimension built.
    pub max_jet_dim: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_forms: 5_000,
            max_extensions: 2_000,
            max_jet_dim: 36,
            seed: 0,
        }
    }
}

/// Bounds that exclude the quadruple, as human-readable reasons.
pub fn violated_bounds(n: usize, r: usize, d: u32, k: usize, class: MapClass) -> Vec<String> {
    let mut out = Vec::new();
    let dq = Q::from_integer(d.into());
    if n == 0 {
        out.push("n must be positive".into());
        return out;
    }
    if d == 0 {
        out.push("constant maps are not proper".into());
    }
    if r < n {
        out.push(format!("a proper map from B_{n} has rank at least {n}"));
    }
    if n >= 2 && d >= 2 && r <= 2 * n - 2 {
        out.push(format!("rank {r} <= 2n - 2 forces degree at most one"));
    }
    if n >= 2 && k >= 1 && r < n + 2 {
        out.push(format!("positive-dimensional families from B_{n} have rank at least n + 2 = {}", n + 2));
    }
    if n >= 2 && r >= 2 {
        if let Ok(b) = Formula::RationalGeneral.eval(n, r) {
            if dq > b {
                out.push(format!("degree {d} exceeds the rational bound {b} at N = {r}"));
            }
        }
    }
    if n >= 2 && k >= 1 && r >= 3 {
        if let Ok(b) = Formula::RationalGeneral.eval(n, r - 1) {
            if dq > b {
                out.push(format!("degree {d} exceeds the rational bound {b} at boundary rank {}", r - 1));
            }
        }
    }
    if class != MapClass::Rational {
        if d == 1 && (r != n || k != 0) {
            out.push(format!("degree-one polynomial proper maps are isometries of rank {n} with no family"));
        }
        if d >= 1 {
            let delta = dim_v(n, d);
            if r > delta {
                out.push(format!("rank {r} exceeds dim V({n}, {d}) = {delta}"));
            }
            let max_k = dim_v(n, d - 1).pow(2);
            if k > max_k {
                out.push(format!("dimension {k} exceeds dim V({n}, {})^2 = {max_k}", d - 1));
            }
        }
    }
    if class == MapClass::Monomial && n >= 2 && r > k {
        let formula = if n == 2 { Formula::MonomialN2 } else { Formula::MonomialGeneral };
        if let Ok(b) = formula.eval(n, r - k) {
            if dq > b {
                out.push(format!("degree {d} exceeds the monomial bound {b} at N = r - k = {}", r - k));
            }
        }
    }
    out
}

type FormKey = Vec<(MultiIndex, Q)>;

fn key(p: &RealForm) -> FormKey {
    p.terms().map(|(a, c)| (a.clone(), c.clone())).collect()
}

/// Proper monomial real forms reachable from the seeds by at most `max_depth`
/// replacements of a term `c x^α` by `t c x^α + (1 - t) c x^α (x_1 + ... + x_n)`,
/// `t ∈ {0, 1/2}`. Stops early at the first form satisfying `stop`.
pub fn split_closure(
    seeds: &[RealForm],
    max_degree: u32,
    max_terms: usize,
    max_depth: usize,
    max_forms: usize,
    stop: impl Fn(&RealForm) -> bool,
) -> Vec<RealForm> {
    let mut seen: BTreeSet<FormKey> = BTreeSet::new();
    let mut queue: VecDeque<(RealForm, usize)> = VecDeque::new();
    let mut out = Vec::new();
    for s in seeds {
        if s.degree().unwrap_or(0) <= max_degree && s.term_count() <= max_terms && seen.insert(key(s)) {
            queue.push_back((s.clone(), 0));
        }
    }
    let half = Q::new(1.into(), 2.into());
    while let Some((p, depth)) = queue.pop_front() {
        let done = stop(&p);
        out.push(p.clone());
        if done || out.len() >= max_forms {
            break;
        }
        if depth >= max_depth {
            continue;
        }
        let n = p.n();
        let sum = RealForm::simplex_sum(n);
        for (a, c) in p.terms() {
            if a.degree() >= max_degree {
                continue;
            }
            let mono = RealForm::from_terms(n, [(a.clone(), c.clone())]);
            let moved = sum.mul(&mono).sub(&mono);
            for t in [Q::one(), half.clone()] {
                let next = p.add(&moved.scale(&t));
                if next.term_count() <= max_terms && seen.insert(key(&next)) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    out
}

fn seeds(n: usize, d: u32) -> Vec<RealForm> {
    let mut s = vec![RealForm::simplex_sum(n)];
    if n == 2 {
        let mut m = 3;
        while 2 * m - 3 <= d as usize {
            if let Ok(v) = build_v(m) {
                s.push(v);
            }
            m += 1;
        }
    }
    s
}

fn matches(p: &FormPencil, r: usize, d: u32, k: usize, seed: u64) -> Result<bool> {
    if p.k() < k || !p.origin_preserving() {
        return Ok(false);
    }
    let rep = p.family_rank(seed)?;
    Ok(rep.generic && rep.rank == r && rep.degree == d)
}

fn finish(p: FormPencil, k: usize, construction: String, r: usize, d: u32, seed: u64) -> Result<Option<Witness>> {
    let p = if p.k() > k { p.restrict(k)? } else { p };
    if !matches(&p, r, d, k, seed)? || p.k() != k {
        return Err(Error::Inconsistent(format!("witness from {construction} failed re-verification")));
    }
    Ok(Some(Witness { construction, pencil: p }))
}

fn monomial_witness(n: usize, r: usize, d: u32, k: usize, opts: &SearchOptions) -> Result<Option<Witness>> {
    let target = |p: &RealForm| p.degree() == Some(d) && p.term_count() == r;
    if k == 0 {
        let forms = split_closure(&seeds(n, d), d, r + 1, r, opts.max_forms, target);
        if let Some(p) = forms.last().filter(|p| target(p)) {
            let pencil = FormPencil::new(vec![HermForm::from_real_form(p)])?;
            return finish(pencil, 0, format!("split monomial map {}", describe(p)), r, d, opts.seed);
        }
        return Ok(None);
    }
    // one or two rounds of top-term extension, ending at degree d
    let Some(base_terms) = r.checked_sub(k).filter(|&t| t > 0) else {
        return Ok(None);
    };
    let mut budget = opts.max_extensions;
    let forms = split_closure(&seeds(n, d), d - 1, base_terms, r, opts.max_forms, |_| false);
    let mut level: Vec<(FormPencil, String)> = Vec::new();
    for p in forms.iter().filter(|p| p.degree().is_some_and(|e| e + 2 == d || e + 1 == d)) {
        level.push((FormPencil::new(vec![HermForm::from_real_form(p)])?, describe(p)));
    }
    for round in 0..2 {
        let mut next = Vec::new();
        for (base, name) in &level {
            let rf = base.real_form_at(&base.barycenter())?;
            let Some(top) = rf.degree() else { continue };
            if top >= d {
                continue;
            }
            let tops: Vec<MultiIndex> = rf.top_degree_terms().into_iter().map(|(a, _)| a).collect();
            for mask in 1u64..(1u64 << tops.len().min(12)) {
                if budget == 0 {
                    return Ok(None);
                }
                budget -= 1;
                let chosen: Vec<MultiIndex> = tops
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, a)| a.clone())
                    .collect();
                if base.k() + chosen.len() < k {
                    continue;
                }
                let Ok(ext) = base.extend_top(&chosen) else { continue };
                let label = format!("{name} with top terms {} split", list(&chosen));
                if top + 1 == d {
                    if matches(&ext, r, d, k, opts.seed)? {
                        return finish(ext, k, label, r, d, opts.seed);
                    }
                } else if round == 0 {
                    next.push((ext, label));
                }
            }
        }
        level = next;
    }
    Ok(None)
}

/// `[A B; B* D]` completions around `ε I` spanning every Hermitian direction on `V(n, d - 1)`.
pub fn jet_family(n: usize, d: u32) -> Result<FormPencil> {
    let low = v_basis(n, d - 1);
    let mut directions: Vec<HermForm> = Vec::new();
    for (i, a) in low.iter().enumerate() {
        for b in &low[i..] {
            if a == b {
                directions.push(HermForm::diagonal(n, [(a.clone(), Q::one())]));
            } else {
                directions.push(HermForm::from_upper(n, [(a.clone(), b.clone(), Cq::one())])?);
                directions.push(HermForm::from_upper(n, [(a.clone(), b.clone(), cq(Q::zero(), Q::one()))])?);
            }
        }
    }
    let mut eps = Q::new(1.into(), 4.into());
    for _ in 0..12 {
        let base = HermForm::diagonal(n, low.iter().map(|a| (a.clone(), eps.clone())));
        let step = &eps / Q::from_integer(4.into());
        let mut gens = Vec::new();
        let mut ok = true;
        for a in directions.iter().map(|dir| base.add(&dir.scale(&step))).chain(core::iter::once(base.clone())) {
            let c = jet_complete(&JetForm::new(n, d, a)?)?.form;
            if c.is_psd_on(&v_basis(n, d))?.verdict != crate::form::Verdict::Pd {
                ok = false;
                break;
            }
            gens.push(c);
        }
        if ok {
            return FormPencil::new(gens);
        }
        eps /= Q::from_integer(2.into());
    }
    Err(Error::Inconsistent("no positive definite jet family found".into()))
}

fn jet_witness(n: usize, r: usize, d: u32, k: usize, opts: &SearchOptions) -> Result<Option<Witness>> {
    if d < 2 || r != dim_v(n, d) {
        return Ok(None);
    }
    let full = dim_v(n, d - 1).pow(2);
    if k > full || full > opts.max_jet_dim {
        return Ok(None);
    }
    let p = jet_family(n, d)?;
    finish(p, k, format!("jet completions on V({n}, {})", d - 1), r, d, opts.seed)
}

fn describe(p: &RealForm) -> String {
    let parts: Vec<String> = p.terms().map(|(a, c)| format!("{c}·{}", a.monomial('x'))).collect();
    parts.join(" + ")
}

fn list(v: &[MultiIndex]) -> String {
    let parts: Vec<String> = v.iter().map(|a| a.monomial('x')).collect();
    parts.join(", ")
}

pub fn quadruple_report(n: usize, r: usize, d: u32, k: usize, class: MapClass, opts: &SearchOptions) -> Result<QuadrupleReport> {
    let reasons = violated_bounds(n, r, d, k, class);
    let mut report = QuadrupleReport {
        n,
        r,
        d,
        k,
        class,
        verdict: QuadrupleVerdict::Unknown,
        reasons,
        witness: None,
    };
    if !report.reasons.is_empty() {
        report.verdict = QuadrupleVerdict::InvalidByBound;
        return Ok(report);
    }
    let mut witness = monomial_witness(n, r, d, k, opts)?;
    if witness.is_none() && class != MapClass::Monomial {
        witness = jet_witness(n, r, d, k, opts)?;
    }
    if let Some(w) = witness {
        report.reasons.push(w.construction.clone());
        report.witness = Some(w);
        report.verdict = QuadrupleVerdict::ValidByConstruction;
    } else {
        report.reasons.push("no bound applies and no witness was constructed".into());
    }
    Ok(report)
}
