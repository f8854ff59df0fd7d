//! Classification tables, the equivalence audit for real forms with
//! `n(g) > n(g_C)`, and verdicts on bounded multiplicity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coiso::{self, CoisoError, CoisotropicCertificate};
use crate::lie::LieError;
use crate::orbits::{self, OrbitError};
use crate::realform::{Catalog, RealForm, RealFormError, RealFormSpec};
use crate::rootsys::{CartanType, Family};

static DEFAULT_TABLE: &str = include_str!("../data/classification.json");

pub const TABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("unknown pair: {0}")]
    UnknownPair(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("equivalence violated for {id}: {detail}")]
    EquivalenceViolation { id: String, detail: String },
    #[error("classification table: {0}")]
    Table(String),
    #[error("cannot parse real algebra name `{0}`")]
    BadName(String),
    #[error(transparent)]
    RealForm(#[from] RealFormError),
    #[error(transparent)]
    Coiso(#[from] CoisoError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

// ---------------------------------------------------------------------------
// Real algebra names

/// A real simple Lie algebra name, normalized so that `p ≥ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealName {
    Compact(String),
    SlR(usize),
    SlC(usize),
    Su(usize, usize),
    /// `su*(2n)`, stored with `2n`.
    SuStar(usize),
    So(usize, usize),
    /// `so*(2n)`, stored with `2n`.
    SoStar(usize),
    SpR(usize),
    Sp(usize, usize),
    /// Noncompact exceptional form such as `f4(-20)`.
    Exceptional(String),
}

impl FromStr for RealName {
    type Err = CriteriaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CriteriaError::BadName(s.to_string());
        let t = s.trim().to_ascii_lowercase().replace(' ', "");
        for e in ["g2", "f4", "e6", "e7", "e8"] {
            if t == e {
                return Ok(RealName::Compact(t));
            }
            if let Some(rest) = t.strip_prefix(e) {
                let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                inner.parse::<i64>().map_err(|_| bad())?;
                return Ok(RealName::Exceptional(t));
            }
        }
        let open = t.find('(').ok_or_else(bad)?;
        let base = &t[..open];
        let args: Vec<&str> = t[open + 1..].strip_suffix(')').ok_or_else(bad)?.split(',').collect();
        let num = |a: &str| a.parse::<usize>().map_err(|_| bad());
        let pq = |a: &[&str]| -> Result<(usize, usize), CriteriaError> {
            let (p, q) = (num(a[0])?, num(a[1])?);
            Ok((p.max(q), p.min(q)))
        };
        let name = match (base, args.as_slice()) {
            ("sl", [n, "r"]) => RealName::SlR(num(n)?),
            ("sl", [n, "c"]) => RealName::SlC(num(n)?),
            ("su", [n]) | ("so", [n]) | ("sp", [n]) => {
                num(n)?;
                RealName::Compact(t.clone())
            }
            ("su", a @ [_, _]) => {
                let (p, q) = pq(a)?;
                if q == 0 {
                    RealName::Compact(format!("su({p})"))
                } else {
                    RealName::Su(p, q)
                }
            }
            ("so", a @ [_, _]) => {
                let (p, q) = pq(a)?;
                if q == 0 {
                    RealName::Compact(format!("so({p})"))
                } else {
                    RealName::So(p, q)
                }
            }
            ("sp", [n, "r"]) => RealName::SpR(num(n)?),
            ("sp", a @ [_, _]) => {
                let (p, q) = pq(a)?;
                if q == 0 {
                    RealName::Compact(format!("sp({p})"))
                } else {
                    RealName::Sp(p, q)
                }
            }
            ("su*", [n]) => RealName::SuStar(num(n)?),
            ("so*", [n]) => RealName::SoStar(num(n)?),
            _ => return Err(bad()),
        };
        Ok(name)
    }
}

// ---------------------------------------------------------------------------
// Complexified symmetric pairs

/// Isomorphism-class signature of `(g_C, k_C)`: the Cartan type of `g_C`
/// up to low-rank coincidences, `dim k_C` and the dimension of its centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairSignature {
    pub cartan_type: CartanType,
    pub dim_k: usize,
    pub center_dim: usize,
}

/// Identifies `D3` with `A3` and `B2` with `C2`.
pub fn canonical_type(t: CartanType) -> CartanType {
    match (t.family(), t.rank()) {
        (Family::D, 3) => "A3".parse().expect("valid"),
        (Family::B, 2) => "C2".parse().expect("valid"),
        _ => t,
    }
}

/// Classical models `(sl|so|sp, n)` of a simple type.
fn classical_models(t: CartanType) -> Vec<(&'static str, usize)> {
    let r = t.rank();
    let mut out = Vec::new();
    match t.family() {
        Family::A => {
            out.push(("sl", r + 1));
            if r == 1 {
                out.extend([("sp", 1), ("so", 3)]);
            }
            if r == 3 {
                out.push(("so", 6));
            }
        }
        Family::B => {
            out.push(("so", 2 * r + 1));
            if r == 2 {
                out.push(("sp", 2));
            }
        }
        Family::C => {
            out.push(("sp", r));
            if r == 2 {
                out.push(("so", 5));
            }
        }
        Family::D => {
            out.push(("so", 2 * r));
            if r == 3 {
                out.push(("sl", 4));
            }
        }
        _ => {}
    }
    out
}

pub fn pair_signature(rf: &RealForm) -> PairSignature {
    let kc = rf.k_complex();
    let z = rf.complex().centralizer_of(kc).expect("same algebra");
    let center = z.intersect(kc).expect("same ambient");
    PairSignature {
        cartan_type: canonical_type(rf.spec().cartan_type),
        dim_k: kc.dim(),
        center_dim: center.dim(),
    }
}

fn sp_dim(n: usize) -> usize {
    n * (2 * n + 1)
}

fn vi_kind_matches(kind: &str, sig: &PairSignature) -> bool {
    let t = sig.cartan_type;
    if kind == "compact" {
        return sig.dim_k == t.algebra_dim();
    }
    if sig.center_dim != 0 {
        return false;
    }
    let models = classical_models(t);
    match kind {
        "sl_sp" => models.iter().any(|&(m, n)| m == "sl" && n % 2 == 0 && sig.dim_k == sp_dim(n / 2)),
        "so_so" => models.iter().any(|&(m, n)| m == "so" && n >= 5 && sig.dim_k == (n - 1) * (n - 2) / 2),
        "sp_spsp" => models
            .iter()
            .any(|&(m, r)| m == "sp" && (1..r).any(|a| sig.dim_k == sp_dim(a) + sp_dim(r - a))),
        "f4_so9" => t.family() == Family::F && sig.dim_k == 36,
        "e6_f4" => t.family() == Family::E && t.rank() == 6 && sig.dim_k == 52,
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Tables

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BbPair {
    pub citation: String,
    pub pair: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormEntry {
    pub citation: String,
    pub name: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViEntry {
    pub citation: String,
    pub pair: String,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrEntry {
    pub citation: String,
    pub pair: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FmultEntry {
    pub citation: String,
    pub id: String,
    pub pair: String,
    pub params: Vec<String>,
    pub condition: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub schema_version: u32,
    pub table_version: String,
    pub bb_pairs: Vec<BbPair>,
    pub oko_v_forms: Vec<FormEntry>,
    pub oko_vi_pairs: Vec<ViEntry>,
    pub irr_pairs: Vec<IrrEntry>,
    pub fmult_examples: Vec<FmultEntry>,
}

impl ClassificationTable {
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_TABLE).expect("builtin table is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, CriteriaError> {
        let t: ClassificationTable = serde_json::from_str(text).map_err(|e| CriteriaError::Table(e.to_string()))?;
        if t.schema_version != TABLE_SCHEMA_VERSION {
            return Err(CriteriaError::Table(format!("unsupported schema version {}", t.schema_version)));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The entry of the real-form list matching `name`, if any.
    pub fn v_entry(&self, name: &RealName) -> Option<&FormEntry> {
        self.oko_v_forms.iter().find(|e| match (e.family.as_str(), name) {
            ("compact", RealName::Compact(_)) => true,
            ("su_star", RealName::SuStar(_)) => true,
            ("so_n1", RealName::So(p, 1)) => p + 1 >= e.min_n.unwrap_or(0),
            ("sp_pq", RealName::Sp(_, _)) => true,
            ("exceptional", RealName::Exceptional(id)) => e.id.as_deref() == Some(id.as_str()),
            _ => false,
        })
    }

    pub fn vi_entry(&self, sig: &PairSignature) -> Option<&ViEntry> {
        self.oko_vi_pairs.iter().find(|e| vi_kind_matches(&e.kind, sig))
    }

    /// The almost-irreducible example matching `g` and the complexified
    /// pair signature of `(g_C, g'_C)`.
    pub fn irr_entry(&self, g: &RealName, sig: &PairSignature) -> Option<&IrrEntry> {
        if sig.center_dim != 0 {
            return None;
        }
        self.irr_pairs.iter().find(|e| match (e.rule.as_str(), g) {
            ("sp_split", RealName::SpR(n)) => (1..*n).any(|p| sig.dim_k == sp_dim(p) + sp_dim(n - p)),
            ("so_drop_one", RealName::So(p, q)) => {
                let (p, q) = (*p, *q);
                let n = p + q;
                sig.dim_k == (n - 1) * (n - 2) / 2 && ((q >= 4 && p % 2 == q % 2) || (p >= 5 && q == 2) || (p >= 4 && q == 3))
            }
            ("exceptional", RealName::Exceptional(x)) => {
                e.g.as_deref() == Some(x.as_str())
                    && match e.involution.as_deref() {
                        Some("f4(-20)") => sig.dim_k == 36,
                        Some("e6(-26)") => sig.dim_k == 52,
                        _ => false,
                    }
            }
            _ => false,
        })
    }
}

/// `(dim, centre dim)` of the complexification of a sum of real algebras
/// such as `sp(1,R)+sp(2,R)` or `so(4)+so(2)`.
pub fn complexified_dims(names: &str) -> Result<(usize, usize), CriteriaError> {
    let mut dim = 0;
    let mut center = 0;
    for part in names.split('+') {
        let part = part.trim().to_ascii_lowercase();
        if matches!(part.as_str(), "u(1)" | "r" | "ir" | "gl(1,r)" | "so(2)" | "so(1,1)") {
            dim += 1;
            center += 1;
            continue;
        }
        let so = |n: usize| n * (n - 1) / 2;
        let exceptional = |id: &str| match &id[..2] {
            "g2" => 14,
            "f4" => 52,
            "e6" => 78,
            "e7" => 133,
            _ => 248,
        };
        dim += match part.parse::<RealName>()? {
            RealName::Compact(c) => {
                if c.len() == 2 {
                    exceptional(&c)
                } else {
                    let n: usize = c[3..c.len() - 1].parse().map_err(|_| CriteriaError::BadName(c.clone()))?;
                    match &c[..2] {
                        "su" => n * n - 1,
                        "so" => so(n),
                        _ => sp_dim(n),
                    }
                }
            }
            RealName::SlR(n) | RealName::SuStar(n) => n * n - 1,
            RealName::SlC(n) => 2 * (n * n - 1),
            RealName::Su(p, q) => (p + q) * (p + q) - 1,
            RealName::So(p, q) => so(p + q),
            RealName::SoStar(n) => so(n),
            RealName::SpR(n) => sp_dim(n),
            RealName::Sp(p, q) => sp_dim(p + q),
            RealName::Exceptional(id) => exceptional(&id),
        };
    }
    Ok((dim, center))
}

// ---------------------------------------------------------------------------
// Audit

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub label: String,
    pub value: Option<bool>,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub id: String,
    pub conditions: Vec<ConditionResult>,
    /// The common value of every computed condition.
    pub value: bool,
}

pub fn audit_prop_oko(rf: &RealForm, table: &ClassificationTable) -> Result<AuditReport, CriteriaError> {
    let nc = orbits::n_complex_of(rf.complex())?;
    let cx = orbits::complexified_real_minimal_orbit(rf)?;
    let nr = rf.n_real()?;
    let name: RealName = rf.id().parse()?;
    let sig = pair_signature(rf);
    let cond = |label: &str, value: Option<bool>, method: &str| ConditionResult {
        label: label.into(),
        value,
        method: method.into(),
    };
    let conditions = vec![
        cond("i", None, "implied by the others; not computed"),
        cond("ii", Some(cx.dim != 2 * nc), "dimension of Ad(G_C)X for X in g(a;mu) against 2 n(g_C)"),
        cond("iii", Some(!rf.theta_beta_test()), "theta X_beta not proportional to X_-beta"),
        cond("iv", Some(nr > nc), "n(g) > n(g_C)"),
        cond("v", Some(table.v_entry(&name).is_some()), "name in the real-form list"),
        cond("vi", Some(table.vi_entry(&sig).is_some()), "signature of (g_C, k_C) in the pair list"),
    ];
    let computed: Vec<bool> = conditions.iter().filter_map(|c| c.value).collect();
    if computed.iter().any(|&v| v != computed[0]) {
        let detail = conditions
            .iter()
            .filter_map(|c| c.value.map(|v| format!("({})={v}", c.label)))
            .collect::<Vec<_>>()
            .join(" ");
        return Err(CriteriaError::EquivalenceViolation {
            id: rf.id().to_string(),
            detail,
        });
    }
    Ok(AuditReport {
        id: rf.id().to_string(),
        conditions,
        value: computed[0],
    })
}

// ---------------------------------------------------------------------------
// Verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepClass {
    MinimalRep,
    #[serde(rename = "SmallestGK_nC")]
    SmallestGkNc,
    #[serde(rename = "SmallestGK_nR")]
    SmallestGkNr,
    TensorOfMinimals,
}

impl RepClass {
    pub const ALL: [RepClass; 4] = [RepClass::MinimalRep, RepClass::SmallestGkNc, RepClass::SmallestGkNr, RepClass::TensorOfMinimals];
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RepClass::MinimalRep => "MinimalRep",
            RepClass::SmallestGkNc => "SmallestGK_nC",
            RepClass::SmallestGkNr => "SmallestGK_nR",
            RepClass::TensorOfMinimals => "TensorOfMinimals",
        };
        f.write_str(s)
    }
}

impl FromStr for RepClass {
    type Err = CriteriaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "minimalrep" | "minimal" => Ok(RepClass::MinimalRep),
            "smallestgknc" | "nc" | "ngc" => Ok(RepClass::SmallestGkNc),
            "smallestgknr" | "nr" | "ng" => Ok(RepClass::SmallestGkNr),
            "tensorofminimals" | "tensor" => Ok(RepClass::TensorOfMinimals),
            _ => Err(CriteriaError::BadParams(format!("unknown representation class `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conclusion {
    BoundedMultiplicity,
    AlmostIrreducible,
    NotCovered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Diag,
    /// The fixed subalgebra of the involution whose complexification is the
    /// Cartan involution of the named real form.
    Symmetric(String),
    /// The fixed subalgebra named as a sum of real algebras, resolved by the
    /// signature of its complexification.
    Named(String),
}

impl FromStr for SubgroupSpec {
    type Err = CriteriaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "diag" {
            Ok(SubgroupSpec::Diag)
        } else if let Some(id) = s.strip_prefix("symmetric:") {
            Ok(SubgroupSpec::Symmetric(id.to_string()))
        } else if s.is_empty() {
            Err(CriteriaError::UnknownPair("empty subgroup".into()))
        } else {
            Ok(SubgroupSpec::Named(s.to_string()))
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Diag => f.write_str("diag"),
            SubgroupSpec::Symmetric(id) => write!(f, "symmetric:{id}"),
            SubgroupSpec::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pair_id: String,
    pub representation_class: RepClass,
    pub conclusion: Conclusion,
    pub theorem_used: Option<String>,
    pub certificate: Option<CoisotropicCertificate>,
    pub notes: Vec<String>,
}

pub mod theorem {
    pub const GK_NC_SYMMETRIC: &str = "bounded-gk-nc-symmetric";
    pub const MINIMAL_SYMMETRIC: &str = "bounded-minimal-symmetric";
    pub const TENSOR_MINIMAL: &str = "bounded-tensor-minimal";
    pub const ALMOST_IRREDUCIBLE: &str = "almost-irreducible-minimal";
    pub const GK_NR_K_CONJUGATE: &str = "bounded-gk-nr-k-conjugate";
}

const BOUND_NOTE: &str = "the bound is finite but may exceed 1";
const CONJUGACY_NOTE: &str = "g'_C matched to k_C by isomorphism class of the complexified pair";

/// Decides the verdict for `(g, g')` and a class of representations of `G`.
pub fn verdict(
    catalog: &Catalog,
    table: &ClassificationTable,
    g_id: &str,
    g_prime: &SubgroupSpec,
    rep: RepClass,
) -> Result<Verdict, CriteriaError> {
    let spec = catalog.get(g_id).ok_or_else(|| CriteriaError::UnknownPair(format!("`{g_id}` is not in the catalog")))?;
    let same_type = |id: &str| -> Result<&RealFormSpec, CriteriaError> {
        let s = catalog.get(id).ok_or_else(|| CriteriaError::UnknownPair(format!("`{id}` is not in the catalog")))?;
        if canonical_type(s.cartan_type) != canonical_type(spec.cartan_type) {
            return Err(CriteriaError::UnknownPair(format!("`{id}` is not a real form of the same complex algebra as `{g_id}`")));
        }
        Ok(s)
    };
    let inv_spec = match g_prime {
        SubgroupSpec::Diag => None,
        SubgroupSpec::Symmetric(id) => Some(same_type(id)?),
        SubgroupSpec::Named(names) => Some(resolve_subalgebra(catalog, spec, names)?),
    };
    let mut out = Verdict {
        pair_id: format!("{g_id}|{g_prime}"),
        representation_class: rep,
        conclusion: Conclusion::NotCovered,
        theorem_used: None,
        certificate: None,
        notes: Vec::new(),
    };
    let rf = RealForm::realize(spec)?;
    let nc = orbits::n_complex_of(rf.complex())?;
    let nr = rf.n_real()?;
    let t = spec.cartan_type;
    let needs_nc = matches!(rep, RepClass::MinimalRep | RepClass::SmallestGkNc | RepClass::TensorOfMinimals);
    if needs_nc && nr > nc {
        out.notes.push(format!("no irreducible representation has GK dimension n(g_C) = {nc}, since n(g) = {nr}"));
        return Ok(out);
    }
    if matches!(rep, RepClass::MinimalRep | RepClass::TensorOfMinimals) && t.family() == Family::A && t.rank() >= 2 {
        out.notes.push("the Joseph ideal is not defined in type A, so there is no minimal representation".into());
        return Ok(out);
    }
    match (rep, inv_spec) {
        (RepClass::TensorOfMinimals, None) => {
            out.certificate = Some(coiso::certify_diag_tensor(t)?);
            out.conclusion = Conclusion::BoundedMultiplicity;
            out.theorem_used = Some(theorem::TENSOR_MINIMAL.into());
            out.notes.push(BOUND_NOTE.into());
        }
        (RepClass::MinimalRep, Some(inv)) => {
            let inv_rf = RealForm::realize(inv)?;
            out.certificate = Some(coiso::certify_complex_symmetric(&inv_rf)?);
            let irr = table.irr_entry(&spec.id.parse()?, &pair_signature(&inv_rf));
            if irr.is_some() {
                out.conclusion = Conclusion::AlmostIrreducible;
                out.theorem_used = Some(theorem::ALMOST_IRREDUCIBLE.into());
            } else {
                out.conclusion = Conclusion::BoundedMultiplicity;
                out.theorem_used = Some(theorem::MINIMAL_SYMMETRIC.into());
                out.notes.push(BOUND_NOTE.into());
            }
        }
        (RepClass::SmallestGkNc, Some(inv)) => {
            let inv_rf = RealForm::realize(inv)?;
            out.certificate = Some(coiso::certify_complex_symmetric(&inv_rf)?);
            out.conclusion = Conclusion::BoundedMultiplicity;
            out.theorem_used = Some(theorem::GK_NC_SYMMETRIC.into());
            out.notes.push(BOUND_NOTE.into());
        }
        (RepClass::SmallestGkNr, Some(inv)) => {
            let inv_rf = RealForm::realize(inv)?;
            if pair_signature(&inv_rf) == pair_signature(&rf) {
                out.certificate = Some(coiso::certify_complexified_real(&rf)?);
                out.conclusion = Conclusion::BoundedMultiplicity;
                out.theorem_used = Some(theorem::GK_NR_K_CONJUGATE.into());
                out.notes.push(BOUND_NOTE.into());
                out.notes.push(CONJUGACY_NOTE.into());
            } else {
                out.notes.push("g'_C is not conjugate to k_C; only that case is covered".into());
            }
        }
        (_, None) => out.notes.push("the diagonal subgroup is covered only for tensor products".into()),
        (RepClass::TensorOfMinimals, Some(_)) => out.notes.push("tensor products are covered only for the diagonal subgroup".into()),
    }
    Ok(out)
}

/// The catalog real form whose complexified fixed algebra matches the named
/// subalgebra of `g`.
pub fn resolve_subalgebra<'a>(catalog: &'a Catalog, g: &RealFormSpec, names: &str) -> Result<&'a RealFormSpec, CriteriaError> {
    let (dim, center) = complexified_dims(names)?;
    let t = canonical_type(g.cartan_type);
    for s in catalog.forms.iter().filter(|s| canonical_type(s.cartan_type) == t) {
        let sig = pair_signature(&RealForm::realize(s)?);
        if sig.dim_k == dim && sig.center_dim == center {
            return Ok(s);
        }
    }
    Err(CriteriaError::UnknownPair(format!("`{names}` is not a symmetric subalgebra of `{}` in the catalog", g.id)))
}

// ---------------------------------------------------------------------------
// Stored tables of n(g_C) and n(g)

/// `n(g_C)` as tabulated by type.
pub fn tabulated_n_complex(t: CartanType) -> usize {
    let n = t.rank();
    match t.family() {
        Family::A | Family::C => n,
        Family::B => 2 * n - 2,
        Family::D => 2 * n - 3,
        Family::G => 3,
        Family::F => 8,
        Family::E => match n {
            6 => 11,
            7 => 17,
            _ => 29,
        },
    }
}

/// Row label and formula of the `n(g_C)` table for a type.
pub fn n_complex_row(t: CartanType) -> (&'static str, &'static str) {
    match t.family() {
        Family::A => ("A_n", "n"),
        Family::B => ("B_n", "2n-2"),
        Family::C => ("C_n", "n"),
        Family::D => ("D_n", "2n-3"),
        Family::G => ("G2", "3"),
        Family::F => ("F4", "8"),
        Family::E => match t.rank() {
            6 => ("E6", "11"),
            7 => ("E7", "17"),
            _ => ("E8", "29"),
        },
    }
}

/// `n(g)` as tabulated for the real forms with `n(g) > n(g_C)`, with the row
/// label and formula.
pub fn tabulated_n_real(name: &RealName) -> Option<(&'static str, &'static str, usize)> {
    match name {
        RealName::SuStar(two_n) if two_n % 2 == 0 => Some(("su*(2n)", "4n-4", 2 * two_n - 4)),
        RealName::So(p, 1) if p + 1 >= 5 => Some(("so(n-1,1)", "n-2", p - 1)),
        RealName::Sp(p, q) => Some(("sp(m,n)", "2(m+n)-1", 2 * (p + q) - 1)),
        RealName::Exceptional(id) if id == "f4(-20)" => Some(("f4(-20)", "11", 11)),
        RealName::Exceptional(id) if id == "e6(-26)" => Some(("e6(-26)", "16", 16)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Finite multiplicity examples

/// Evaluates the stated finite-multiplicity conditions as predicates.
pub fn query_fmult(example_id: &str, params: &[String]) -> Result<bool, CriteriaError> {
    let ints = |k: usize| -> Result<Vec<i64>, CriteriaError> {
        if params.len() != k {
            return Err(CriteriaError::BadParams(format!("`{example_id}` takes {k} parameters")));
        }
        params
            .iter()
            .map(|p| p.trim().parse::<i64>().map_err(|_| CriteriaError::BadParams(format!("`{p}` is not an integer"))))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|v| {
                if v.iter().any(|&x| x < 0) {
                    Err(CriteriaError::BadParams("parameters must be non-negative".into()))
                } else {
                    Ok(v)
                }
            })
    };
    match example_id {
        "sl_so" => {
            let v = ints(2)?;
            let (p, q) = (v[0], v[1]);
            Ok(p == 0 || q == 0 || (p == 1 && q == 1))
        }
        "o_oo" => {
            let v = ints(4)?;
            let (p1, q1, p2, q2) = (v[0], v[1], v[2], v[3]);
            Ok(p1 + q1 == 1 || p2 + q2 == 1 || p1 + p2 == 1 || q1 + q2 == 1)
        }
        "group_manifold" => {
            if params.len() != 1 {
                return Err(CriteriaError::BadParams("`group_manifold` takes one algebra name".into()));
            }
            let name: RealName = params[0].parse()?;
            Ok(matches!(
                name,
                RealName::Compact(_)
                    | RealName::So(_, 1)
                    | RealName::SlR(2)
                    | RealName::Su(1, 1)
                    | RealName::SpR(1)
                    | RealName::SlC(2)
                    | RealName::SuStar(4)
                    | RealName::Sp(1, 1)
            ))
        }
        other => Err(CriteriaError::UnknownExample(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!("sl(3,R)".parse::<RealName>().unwrap(), RealName::SlR(3));
        assert_eq!("so(1,4)".parse::<RealName>().unwrap(), RealName::So(4, 1));
        assert_eq!("su*(6)".parse::<RealName>().unwrap(), RealName::SuStar(6));
        assert_eq!("e6(-26)".parse::<RealName>().unwrap(), RealName::Exceptional("e6(-26)".into()));
        assert_eq!("so(7)".parse::<RealName>().unwrap(), RealName::Compact("so(7)".into()));
        assert_eq!("so(5,0)".parse::<RealName>().unwrap(), RealName::Compact("so(5)".into()));
        assert_eq!("f4".parse::<RealName>().unwrap(), RealName::Compact("f4".into()));
        assert!("xy(3)".parse::<RealName>().is_err());
        assert!("e6(x)".parse::<RealName>().is_err());
    }

    #[test]
    fn real_form_list() {
        let t = ClassificationTable::builtin();
        let inv = |s: &str| t.v_entry(&s.parse().unwrap()).is_some();
        assert!(inv("so(4,1)"));
        assert!(!inv("so(3,1)"));
        assert!(inv("sp(2,3)"));
        assert!(inv("e6(-26)"));
        assert!(!inv("e6(-14)"));
        assert!(!inv("sl(4,R)"));
        assert!(inv("su(5)"));
    }

    #[test]
    fn fmult_conditions() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(query_fmult("sl_so", &s(&["1", "1"])).unwrap());
        assert!(query_fmult("sl_so", &s(&["0", "4"])).unwrap());
        assert!(!query_fmult("sl_so", &s(&["2", "1"])).unwrap());
        assert!(query_fmult("o_oo", &s(&["2", "2", "1", "0"])).unwrap());
        assert!(!query_fmult("o_oo", &s(&["2", "2", "2", "2"])).unwrap());
        assert!(query_fmult("group_manifold", &s(&["so(5,1)"])).unwrap());
        assert!(!query_fmult("group_manifold", &s(&["sl(3,R)"])).unwrap());
        assert!(query_fmult("nope", &s(&[])).is_err());
    }

    #[test]
    fn tabulated_values() {
        let t = |s: &str| tabulated_n_complex(s.parse().unwrap());
        assert_eq!((t("A1"), t("B3"), t("C5"), t("D4"), t("E7")), (1, 4, 5, 5, 17));
        let r = |s: &str| tabulated_n_real(&s.parse().unwrap()).map(|x| x.2);
        assert_eq!(r("su*(6)"), Some(8));
        assert_eq!(r("so(4,1)"), Some(3));
        assert_eq!(r("sp(1,1)"), Some(3));
        assert_eq!(r("so(3,1)"), None);
        assert_eq!(r("sl(3,R)"), None);
    }

    #[test]
    fn table_round_trip() {
        let t = ClassificationTable::builtin();
        let back = ClassificationTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.to_json(), t.to_json());
        assert_eq!(t.oko_v_forms.len(), 6);
        assert_eq!(t.bb_pairs.len(), 3);
    }
}
