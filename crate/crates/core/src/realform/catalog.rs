//! Catalog of real forms given by Satake data in Bourbaki numbering.
//!
//! JSON schema (version 1):
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "catalog_version": "1.0.0",
//!   "forms": [
//!     {"id": "sp(1,1)", "cartan_type": "C2", "involution": [1, 2],
//!      "signs": {"1": 1, "2": -1}, "real_rank": 1, "n_g": 3, "slow": false}
//!   ]
//! }
//! ```
//!
//! `involution` is the diagram involution as a 1-based permutation, `signs`
//! marks each simple root as compact (`+1`, black node) or noncompact (`-1`,
//! white node). `n_g` is either an integer or the string `"n_gc"`, meaning
//! equal to the complex value. `slow` entries are skipped unless requested.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ExpectedNg, RealFormError, RealFormSpec};
use crate::rootsys::CartanType;

pub const SCHEMA_VERSION: u32 = 1;

static DEFAULT_CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawNg {
    Value(usize),
    Keyword(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawForm {
    id: String,
    cartan_type: CartanType,
    involution: Vec<usize>,
    signs: BTreeMap<String, i8>,
    real_rank: usize,
    n_g: RawNg,
    #[serde(default)]
    slow: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawCatalog {
    schema_version: u32,
    catalog_version: String,
    forms: Vec<RawForm>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub catalog_version: String,
    pub forms: Vec<RealFormSpec>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_CATALOG).expect("builtin catalog is valid")
    }

    pub fn load(path: &Path) -> Result<Self, RealFormError> {
        let text = std::fs::read_to_string(path).map_err(|e| RealFormError::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, RealFormError> {
        let raw: RawCatalog = serde_json::from_str(text).map_err(|e| RealFormError::Catalog(e.to_string()))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(RealFormError::Catalog(format!("unsupported schema version {}", raw.schema_version)));
        }
        let mut forms = Vec::with_capacity(raw.forms.len());
        for f in raw.forms {
            forms.push(convert(f)?);
        }
        Ok(Catalog {
            catalog_version: raw.catalog_version,
            forms,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawCatalog {
            schema_version: SCHEMA_VERSION,
            catalog_version: self.catalog_version.clone(),
            forms: self.forms.iter().map(unconvert).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn get(&self, id: &str) -> Option<&RealFormSpec> {
        self.forms.iter().find(|f| f.id == id)
    }

    /// Entries in the default scope, or all of them with `slow`.
    pub fn scope(&self, slow: bool) -> Vec<&RealFormSpec> {
        self.forms.iter().filter(|f| slow || !f.slow).collect()
    }
}

fn convert(f: RawForm) -> Result<RealFormSpec, RealFormError> {
    let n = f.cartan_type.rank();
    let bad = |msg: String| RealFormError::InvalidSpec {
        id: f.id.clone(),
        reason: msg,
    };
    if f.involution.len() != n {
        return Err(bad(format!("involution has length {}, rank is {n}", f.involution.len())));
    }
    let involution: Vec<usize> = f
        .involution
        .iter()
        .map(|&k| if (1..=n).contains(&k) { Ok(k - 1) } else { Err(bad(format!("node {k} out of range"))) })
        .collect::<Result<_, _>>()?;
    let mut signs = vec![0i8; n];
    for (k, v) in &f.signs {
        let idx: usize = k.parse().map_err(|_| bad(format!("bad node label `{k}`")))?;
        if !(1..=n).contains(&idx) {
            return Err(bad(format!("node {idx} out of range")));
        }
        if *v != 1 && *v != -1 {
            return Err(bad(format!("sign {v} is not ±1")));
        }
        signs[idx - 1] = *v;
    }
    if signs.contains(&0) {
        return Err(bad("every node needs a sign".into()));
    }
    let expected_n_g = match f.n_g {
        RawNg::Value(v) => ExpectedNg::Value(v),
        RawNg::Keyword(ref s) if s == "n_gc" => ExpectedNg::EqualsComplex,
        RawNg::Keyword(s) => return Err(bad(format!("unknown n_g keyword `{s}`"))),
    };
    let spec = RealFormSpec {
        id: f.id.clone(),
        cartan_type: f.cartan_type,
        diagram_involution: involution,
        generator_signs: signs,
        expected_real_rank: f.real_rank,
        expected_n_g,
        slow: f.slow,
    };
    spec.validate()?;
    Ok(spec)
}

fn unconvert(s: &RealFormSpec) -> RawForm {
    RawForm {
        id: s.id.clone(),
        cartan_type: s.cartan_type,
        involution: s.diagram_involution.iter().map(|k| k + 1).collect(),
        signs: s.generator_signs.iter().enumerate().map(|(i, v)| ((i + 1).to_string(), *v)).collect(),
        real_rank: s.expected_real_rank,
        n_g: match s.expected_n_g {
            ExpectedNg::Value(v) => RawNg::Value(v),
            ExpectedNg::EqualsComplex => RawNg::Keyword("n_gc".into()),
        },
        slow: s.slow,
    }
}
