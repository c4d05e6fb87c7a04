//! Serializable reports for catalog checks and quadruple classification.

use ballmaps_core::catalog::CatalogReport;
use ballmaps_core::quadruple::QuadrupleReport;
use serde::{Deserialize, Serialize};

use crate::io::{pencil_to_file, PencilFile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub id: String,
    pub title: String,
    pub verdict: String,
    pub checks: Vec<CheckJson>,
}

impl From<&CatalogReport> for CatalogJson {
    fn from(r: &CatalogReport) -> Self {
        CatalogJson {
            id: r.id.clone(),
            title: r.title.clone(),
            verdict: if r.passed() { "PASS" } else { "FAIL" }.into(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub construction: String,
    pub pencil: PencilFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleJson {
    pub n: usize,
    pub r: usize,
    pub d: u32,
    pub k: usize,
    pub class: String,
    pub verdict: String,
    pub reasons: Vec<String>,
    pub witness: Option<WitnessJson>,
}

impl From<&QuadrupleReport> for QuadrupleJson {
    fn from(r: &QuadrupleReport) -> Self {
        QuadrupleJson {
            n: r.n,
            r: r.r,
            d: r.d,
            k: r.k,
            class: r.class.name().into(),
            verdict: r.verdict.label().into(),
            reasons: r.reasons.clone(),
            witness: r.witness.as_ref().map(|w| WitnessJson {
                construction: w.construction.clone(),
                pencil: pencil_to_file(&w.pencil),
            }),
        }
    }
}
