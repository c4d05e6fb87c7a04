//! JSON file formats. Rationals are strings `"p/q"` in lowest terms.

use std::path::Path;

use ballmaps_core::family::FormPencil;
use ballmaps_core::num::{cq, format_rational, parse_rational, Cq, Q};
use ballmaps_core::{HermForm, MultiIndex, PolyMap};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {msg}")]
    Json { path: String, line: usize, column: usize, msg: String },
    #[error("{path}: {at}: {msg}")]
    Invalid { path: String, at: String, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapTerm {
    pub alpha: Vec<u32>,
    pub component: usize,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub n: usize,
    #[serde(rename = "N")]
    pub target: usize,
    pub terms: Vec<MapTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n: usize,
    pub entries: Vec<FormEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<FormFile>,
}

/// A coordinate: `"p/q"` for a real value or `{"re": .., "im": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Real(String),
    Complex { re: String, im: String },
}

pub fn rational_string(x: &Q) -> String {
    format_rational(x)
}

pub fn coord_of(c: &Cq) -> Coord {
    Coord::Complex {
        re: format_rational(&c.re),
        im: format_rational(&c.im),
    }
}

struct Ctx<'a> {
    path: &'a str,
}

impl Ctx<'_> {
    fn invalid(&self, at: impl Into<String>, msg: impl Into<String>) -> IoError {
        IoError::Invalid {
            path: self.path.into(),
            at: at.into(),
            msg: msg.into(),
        }
    }

    fn rational(&self, at: &str, s: &str) -> Result<Q, IoError> {
        parse_rational(s).ok_or_else(|| self.invalid(at, format!("{s:?} is not a rational p/q")))
    }

    fn complex(&self, at: &str, re: &str, im: &str) -> Result<Cq, IoError> {
        Ok(cq(self.rational(&format!("{at}.re"), re)?, self.rational(&format!("{at}.im"), im)?))
    }

    fn index(&self, at: &str, n: usize, v: &[u32]) -> Result<MultiIndex, IoError> {
        if v.len() != n {
            return Err(self.invalid(at, format!("has {} exponents, expected n = {n}", v.len())));
        }
        Ok(MultiIndex::new(v.to_vec()))
    }
}

pub fn map_to_file(f: &PolyMap) -> MapFile {
    let mut terms = Vec::new();
    for (a, v) in f.terms() {
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                terms.push(MapTerm {
                    alpha: a.exps().to_vec(),
                    component: i,
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                });
            }
        }
    }
    MapFile {
        n: f.n(),
        target: f.target(),
        terms,
    }
}

pub fn map_from_file(m: &MapFile, path: &str) -> Result<PolyMap, IoError> {
    let ctx = Ctx { path };
    let mut out = Vec::with_capacity(m.terms.len());
    for (i, t) in m.terms.iter().enumerate() {
        let at = format!("terms[{i}]");
        let a = ctx.index(&format!("{at}.alpha"), m.n, &t.alpha)?;
        if t.component >= m.target {
            return Err(ctx.invalid(format!("{at}.component"), format!("{} is not below N = {}", t.component, m.target)));
        }
        out.push((a, t.component, ctx.complex(&at, &t.re, &t.im)?));
    }
    PolyMap::from_entries(m.n, m.target, out).map_err(|e| ctx.invalid("terms", e.to_string()))
}

pub fn form_to_file(f: &HermForm) -> FormFile {
    FormFile {
        n: f.n(),
        entries: f
            .upper_entries()
            .map(|(a, b, c)| FormEntry {
                alpha: a.exps().to_vec(),
                beta: b.exps().to_vec(),
                re: format_rational(&c.re),
                im: format_rational(&c.im),
            })
            .collect(),
    }
}

fn form_from_file_at(f: &FormFile, ctx: &Ctx, prefix: &str) -> Result<HermForm, IoError> {
    let mut entries = Vec::with_capacity(f.entries.len());
    for (i, e) in f.entries.iter().enumerate() {
        let at = format!("{prefix}entries[{i}]");
        let a = ctx.index(&format!("{at}.alpha"), f.n, &e.alpha)?;
        let b = ctx.index(&format!("{at}.beta"), f.n, &e.beta)?;
        let c = ctx.complex(&at, &e.re, &e.im)?;
        if a == b && !c.im.is_zero() {
            return Err(ctx.invalid(format!("{at}.im"), "diagonal entries must be real"));
        }
        entries.push((a, b, c));
    }
    HermForm::from_upper(f.n, entries).map_err(|e| ctx.invalid(format!("{prefix}entries"), e.to_string()))
}

pub fn form_from_file(f: &FormFile, path: &str) -> Result<HermForm, IoError> {
    form_from_file_at(f, &Ctx { path }, "")
}

pub fn pencil_to_file(p: &FormPencil) -> PencilFile {
    PencilFile {
        n: p.n(),
        k: p.k(),
        generators: p.generators().iter().map(form_to_file).collect(),
    }
}

pub fn pencil_from_file(p: &PencilFile, path: &str) -> Result<FormPencil, IoError> {
    let ctx = Ctx { path };
    if p.generators.len() != p.k + 1 {
        return Err(ctx.invalid("generators", format!("{} generators for k = {}", p.generators.len(), p.k)));
    }
    let mut gens = Vec::with_capacity(p.generators.len());
    for (i, g) in p.generators.iter().enumerate() {
        if g.n != p.n {
            return Err(ctx.invalid(format!("generators[{i}].n"), format!("{} differs from n = {}", g.n, p.n)));
        }
        gens.push(form_from_file_at(g, &ctx, &format!("generators[{i}]."))?);
    }
    FormPencil::new(gens).map_err(|e| ctx.invalid("generators", e.to_string()))
}

pub fn point_from_coords(coords: &[Coord], path: &str, at: &str) -> Result<Vec<Cq>, IoError> {
    let ctx = Ctx { path };
    coords
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Coord::Real(s) => Ok(cq(ctx.rational(&format!("{at}[{i}]"), s)?, Q::zero())),
            Coord::Complex { re, im } => ctx.complex(&format!("{at}[{i}]"), re, im),
        })
        .collect()
}

/// Parse JSON text, reporting line and column on failure.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: name.clone(), source })?;
    parse_json(&text, &name)
}

pub fn read_map(path: &Path) -> Result<PolyMap, IoError> {
    map_from_file(&read_json(path)?, &path.display().to_string())
}

pub fn read_form(path: &Path) -> Result<HermForm, IoError> {
    form_from_file(&read_json(path)?, &path.display().to_string())
}

pub fn read_pencil(path: &Path) -> Result<FormPencil, IoError> {
    pencil_from_file(&read_json(path)?, &path.display().to_string())
}

/// Inline JSON when the argument starts with `[` or `{`, otherwise a file path.
pub fn read_points(arg: &str) -> Result<Vec<Vec<Cq>>, IoError> {
    let (text, name) = inline_or_file(arg)?;
    let raw: Vec<Vec<Coord>> = parse_json(&text, &name)?;
    raw.iter()
        .enumerate()
        .map(|(i, p)| point_from_coords(p, &name, &format!("[{i}]")))
        .collect()
}

pub fn read_point(arg: &str) -> Result<Vec<Cq>, IoError> {
    let (text, name) = inline_or_file(arg)?;
    let raw: Vec<Coord> = parse_json(&text, &name)?;
    point_from_coords(&raw, &name, "")
}

fn inline_or_file(arg: &str) -> Result<(String, String), IoError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok((arg.to_string(), "<inline>".into()))
    } else {
        let text = std::fs::read_to_string(arg).map_err(|source| IoError::Read {
            path: arg.into(),
            source,
        })?;
        Ok((text, arg.into()))
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}
