use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use glob::{MatchOptions, Pattern};
use orbitkit::chevalley::ChevalleyAlgebra;
use orbitkit::coiso::{certify_complex_symmetric, certify_diag_tensor, certify_real_symmetric, CoisotropicCertificate};
use orbitkit::criteria::{
    audit_prop_oko, n_complex_row, query_fmult, tabulated_n_complex, tabulated_n_real, verdict, ClassificationTable, Conclusion,
    RealName, RepClass, SubgroupSpec,
};
use orbitkit::orbits::{complex_minimal_orbit, real_minimal_orbit};
use orbitkit::realform::{Catalog, ExpectedNg, RealForm, RealFormSpec};
use orbitkit::rootsys::{CartanType, Family, RootSystem};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{render_table, RunReport, Status};

pub struct Ctx {
    pub catalog: Catalog,
    pub table: ClassificationTable,
    pub filter: Option<Pattern>,
    pub slow: bool,
    pub timing: bool,
}

impl Ctx {
    fn selected(&self, id: &str) -> bool {
        let opts = MatchOptions {
            case_sensitive: false,
            require_literal_separator: false,
            require_literal_leading_dot: false,
        };
        self.filter.as_ref().is_none_or(|p| p.matches_with(id, opts))
    }
}

pub fn parse_filter(s: &str) -> Result<Pattern> {
    Pattern::new(s).with_context(|| format!("invalid filter glob `{s}`"))
}

/// One unit of independent work. `Err` carries a diagnostic and whatever
/// detail was produced before the failure.
type Job<'a> = (String, Box<dyn Fn() -> std::result::Result<Value, (String, Value)> + Send + Sync + 'a>);

fn run_jobs(jobs: Vec<Job<'_>>, timing: bool, report: &mut RunReport) {
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(_, f)| {
            let t = Instant::now();
            let r = f();
            (r, t.elapsed().as_millis() as u64)
        })
        .collect();
    for ((id, _), (r, ms)) in jobs.iter().zip(results) {
        let ms = timing.then_some(ms);
        match r {
            Ok(detail) => report.pass(id, ms, detail),
            Err((diag, detail)) => report.fail(id, ms, diag, detail),
        }
    }
}

// ---------------------------------------------------------------------------
// table

pub const NGC_TYPES: &[(Family, &[usize])] = &[
    (Family::A, &[1, 2, 3, 4, 5, 6, 7, 8]),
    (Family::B, &[2, 3, 4, 5, 6, 7, 8]),
    (Family::C, &[2, 3, 4, 5, 6, 7, 8]),
    (Family::D, &[4, 5, 6, 7, 8]),
    (Family::G, &[2]),
    (Family::F, &[4]),
    (Family::E, &[6]),
    (Family::E, &[7]),
    (Family::E, &[8]),
];

pub const NG_ROWS: &[(&str, &str)] = &[
    ("su*(2n)", "4n-4"),
    ("so(n-1,1)", "n-2"),
    ("sp(m,n)", "2(m+n)-1"),
    ("f4(-20)", "11"),
    ("e6(-26)", "16"),
];

fn ngc_instance(t: CartanType) -> std::result::Result<Value, String> {
    let tab = tabulated_n_complex(t);
    let coxeter = RootSystem::new(t).dual_coxeter_number() - 1;
    let alg = ChevalleyAlgebra::new(t);
    let orbit = complex_minimal_orbit(&alg).map_err(|e| format!("{t}: {e}"))?.half_dim;
    let v = json!({"type": t.to_string(), "tabulated": tab, "dual_coxeter": coxeter, "orbit_kernel": orbit});
    if coxeter == tab && orbit == tab {
        Ok(v)
    } else {
        Err(format!("{t}: tabulated {tab}, dual Coxeter channel {coxeter}, orbit channel {orbit}"))
    }
}

pub fn table_ngc(ctx: &Ctx, report: &mut RunReport) -> Result<String> {
    let mut jobs: Vec<Job> = Vec::new();
    for &(family, ranks) in NGC_TYPES {
        let types: Vec<CartanType> = ranks
            .iter()
            .map(|&r| CartanType::new(family, r))
            .collect::<std::result::Result<_, _>>()?;
        let types: Vec<CartanType> = types.into_iter().filter(|t| ctx.selected(&t.to_string())).collect();
        if types.is_empty() {
            continue;
        }
        let (label, formula) = n_complex_row(types[0]);
        jobs.push((
            label.to_string(),
            Box::new(move || {
                let rows: Vec<_> = types.par_iter().map(|&t| ngc_instance(t)).collect();
                let mut instances = Vec::new();
                let mut errors = Vec::new();
                for r in rows {
                    match r {
                        Ok(v) => instances.push(v),
                        Err(e) => errors.push(e),
                    }
                }
                let detail = json!({"row": label, "formula": formula, "source": "n-complex-table", "instances": instances});
                if errors.is_empty() {
                    Ok(detail)
                } else {
                    Err((errors.join("; "), detail))
                }
            }),
        ));
    }
    run_jobs(jobs, ctx.timing, report);
    let rows: Vec<Vec<String>> = report
        .outcomes
        .iter()
        .map(|o| {
            let values: Vec<String> = o.detail["instances"]
                .as_array()
                .map(|a| a.iter().map(|i| format!("{}={}", i["type"].as_str().unwrap_or("?"), i["tabulated"])).collect())
                .unwrap_or_default();
            vec![o.id.clone(), o.detail["formula"].as_str().unwrap_or("").to_string(), values.join(" "), status_word(o.status)]
        })
        .collect();
    Ok(render_table(&["row", "n(g_C)", "values", "status"], &rows))
}

fn ng_instance(spec: &RealFormSpec, tab: usize) -> std::result::Result<Value, String> {
    let rf = RealForm::realize(spec).map_err(|e| e.to_string())?;
    let orbit = real_minimal_orbit(&rf).map_err(|e| e.to_string())?.half_dim;
    let catalog = match spec.expected_n_g {
        ExpectedNg::Value(v) => Some(v),
        ExpectedNg::EqualsComplex => None,
    };
    let v = json!({"id": spec.id, "tabulated": tab, "orbit_kernel": orbit, "catalog": catalog});
    if orbit == tab && catalog == Some(tab) {
        Ok(v)
    } else {
        Err(format!("{}: tabulated {tab}, orbit channel {orbit}, catalog {catalog:?}", spec.id))
    }
}

pub fn table_ng(ctx: &Ctx, report: &mut RunReport) -> Result<String> {
    let mut groups: BTreeMap<&str, Vec<(&RealFormSpec, usize)>> = BTreeMap::new();
    for spec in ctx.catalog.scope(ctx.slow) {
        let Ok(name) = spec.id.parse::<RealName>() else { continue };
        if let Some((label, _, value)) = tabulated_n_real(&name) {
            if ctx.selected(&spec.id) {
                groups.entry(label).or_default().push((spec, value));
            }
        }
    }
    let mut jobs: Vec<Job> = Vec::new();
    for &(label, formula) in NG_ROWS {
        let members = groups.remove(label).unwrap_or_default();
        if members.is_empty() && ctx.filter.is_some() {
            continue;
        }
        jobs.push((
            label.to_string(),
            Box::new(move || {
                let rows: Vec<_> = members.par_iter().map(|(s, v)| ng_instance(s, *v)).collect();
                let mut instances = Vec::new();
                let mut errors = Vec::new();
                for r in rows {
                    match r {
                        Ok(v) => instances.push(v),
                        Err(e) => errors.push(e),
                    }
                }
                if members.is_empty() {
                    errors.push("no catalog entry instantiates this row".to_string());
                }
                let detail = json!({"row": label, "formula": formula, "source": "n-real-table", "instances": instances});
                if errors.is_empty() {
                    Ok(detail)
                } else {
                    Err((errors.join("; "), detail))
                }
            }),
        ));
    }
    run_jobs(jobs, ctx.timing, report);
    let rows: Vec<Vec<String>> = report
        .outcomes
        .iter()
        .map(|o| {
            let values: Vec<String> = o.detail["instances"]
                .as_array()
                .map(|a| a.iter().map(|i| format!("{}={}", i["id"].as_str().unwrap_or("?"), i["tabulated"])).collect())
                .unwrap_or_default();
            vec![o.id.clone(), o.detail["formula"].as_str().unwrap_or("").to_string(), values.join(" "), status_word(o.status)]
        })
        .collect();
    Ok(render_table(&["row", "n(g)", "values", "status"], &rows))
}

// ---------------------------------------------------------------------------
// certify

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Real,
    Diag,
    Symmetric,
    All,
}

pub const DIAG_DEFAULT: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "F4"];
pub const DIAG_SLOW: &[&str] = &["E6", "E7", "E8"];

fn certificate_outcome(cert: CoisotropicCertificate) -> std::result::Result<Value, (String, Value)> {
    let detail = serde_json::to_value(&cert).expect("serializable");
    let failed: Vec<&str> = cert.auxiliary_checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if !cert.containment_verified {
        Err((format!("{}: containment fails (lhs {}, rhs {})", cert.algebra_id, cert.lhs_dim, cert.rhs_dim), detail))
    } else if !failed.is_empty() {
        Err((format!("{}: failed checks {}", cert.algebra_id, failed.join(", ")), detail))
    } else {
        Ok(detail)
    }
}

fn certify_form(spec: &RealFormSpec, symmetric: bool) -> std::result::Result<Value, (String, Value)> {
    let rf = RealForm::realize(spec).map_err(|e| (e.to_string(), Value::Null))?;
    let cert = if symmetric {
        certify_complex_symmetric(&rf)
    } else {
        certify_real_symmetric(&rf)
    };
    certificate_outcome(cert.map_err(|e| (e.to_string(), Value::Null))?)
}

fn form_selected(ctx: &Ctx, spec: &RealFormSpec) -> bool {
    (ctx.slow || spec.cartan_type.family() != Family::E) && ctx.selected(&spec.id)
}

pub fn certify(ctx: &Ctx, scope: Scope, report: &mut RunReport) -> Result<String> {
    let forms: Vec<&RealFormSpec> = ctx.catalog.scope(ctx.slow).into_iter().filter(|s| form_selected(ctx, s)).collect();
    let mut jobs: Vec<Job> = Vec::new();
    if matches!(scope, Scope::Real | Scope::All) {
        for &spec in &forms {
            jobs.push((format!("real:{}", spec.id), Box::new(move || certify_form(spec, false))));
        }
    }
    if matches!(scope, Scope::Diag | Scope::All) {
        let slow: &[&str] = if ctx.slow { DIAG_SLOW } else { &[] };
        for &name in DIAG_DEFAULT.iter().chain(slow) {
            if !ctx.selected(name) {
                continue;
            }
            let t: CartanType = name.parse().map_err(|e| anyhow!("{e}"))?;
            jobs.push((
                format!("diag:{name}"),
                Box::new(move || certificate_outcome(certify_diag_tensor(t).map_err(|e| (e.to_string(), Value::Null))?)),
            ));
        }
    }
    if matches!(scope, Scope::Symmetric | Scope::All) {
        for &spec in &forms {
            jobs.push((format!("symmetric:{}", spec.id), Box::new(move || certify_form(spec, true))));
        }
    }
    run_jobs(jobs, ctx.timing, report);
    let rows: Vec<Vec<String>> = report
        .outcomes
        .iter()
        .map(|o| {
            let d = &o.detail;
            let dims = if d.is_null() { String::new() } else { format!("{} <= {}", d["lhs_dim"], d["rhs_dim"]) };
            vec![o.id.clone(), dims, status_word(o.status), timing(o.timing_ms)]
        })
        .collect();
    Ok(render_table(&["certificate", "lhs <= rhs", "status", "ms"], &rows))
}

// ---------------------------------------------------------------------------
// audit

pub fn audit(ctx: &Ctx, report: &mut RunReport) -> Result<String> {
    let table = &ctx.table;
    let jobs: Vec<Job> = ctx
        .catalog
        .scope(ctx.slow)
        .into_iter()
        .filter(|s| ctx.selected(&s.id))
        .map(|spec| -> Job {
            (
                spec.id.clone(),
                Box::new(move || {
                    let rf = RealForm::realize(spec).map_err(|e| (e.to_string(), Value::Null))?;
                    let r = audit_prop_oko(&rf, table).map_err(|e| (e.to_string(), Value::Null))?;
                    Ok(serde_json::to_value(&r).expect("serializable"))
                }),
            )
        })
        .collect();
    run_jobs(jobs, ctx.timing, report);
    let rows: Vec<Vec<String>> = report
        .outcomes
        .iter()
        .map(|o| {
            let conds: Vec<String> = o.detail["conditions"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|c| match c["value"].as_bool() {
                            Some(true) => "T".to_string(),
                            Some(false) => "F".to_string(),
                            None => "-".to_string(),
                        })
                        .collect()
                })
                .unwrap_or_default();
            vec![o.id.clone(), conds.join(" "), status_word(o.status)]
        })
        .collect();
    Ok(render_table(&["form", "(i)..(vi)", "status"], &rows))
}

// ---------------------------------------------------------------------------
// verdict

/// Splits `g|spec` or `g:spec` at the first separator.
pub fn parse_pair(pair: &str) -> Result<(String, SubgroupSpec)> {
    let (g, sub) = pair
        .split_once('|')
        .or_else(|| pair.split_once(':'))
        .ok_or_else(|| anyhow!("pair `{pair}` must have the form G:SUBGROUP"))?;
    let sub: SubgroupSpec = sub.trim().parse().map_err(|e| anyhow!("{e}"))?;
    Ok((g.trim().to_string(), sub))
}

pub fn certificate_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.certificate.json"))
}

pub fn verdict_cmd(ctx: &Ctx, pair: &str, rep: RepClass, out: Option<&Path>, report: &mut RunReport) -> Result<String> {
    let id = format!("{pair}|{rep}");
    let t = Instant::now();
    let result = parse_pair(pair).and_then(|(g, sub)| verdict(&ctx.catalog, &ctx.table, &g, &sub, rep).map_err(|e| anyhow!("{e}")));
    let ms = ctx.timing.then(|| t.elapsed().as_millis() as u64);
    let v = match result {
        Ok(v) => v,
        Err(e) => {
            report.fail(&id, ms, e.to_string(), Value::Null);
            return Ok(format!("{id}: error: {e}\n"));
        }
    };
    let mut detail = serde_json::to_value(&v).expect("serializable");
    let mut cert_line = "certificate: none".to_string();
    if let Some(cert) = &v.certificate {
        match out {
            Some(out) => {
                let path = certificate_path(out);
                std::fs::write(&path, cert.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
                detail["certificate_path"] = json!(path.display().to_string());
                cert_line = format!("certificate: {}", path.display());
            }
            None => {
                cert_line = format!(
                    "certificate: {:?} on {} (lhs {} <= rhs {}, inline in --json)",
                    cert.theorem_tag, cert.algebra_id, cert.lhs_dim, cert.rhs_dim
                );
            }
        }
    }
    report.pass(&id, ms, detail);
    let conclusion = match v.conclusion {
        Conclusion::BoundedMultiplicity => "BoundedMultiplicity",
        Conclusion::AlmostIrreducible => "AlmostIrreducible",
        Conclusion::NotCovered => "NotCovered",
    };
    let mut text = format!("{}  {}  {}\n", v.pair_id, v.representation_class, conclusion);
    if let Some(th) = &v.theorem_used {
        text.push_str(&format!("theorem: {th}\n"));
    }
    text.push_str(&cert_line);
    text.push('\n');
    for n in &v.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Ok(text)
}

// ---------------------------------------------------------------------------
// fmult

pub fn fmult(ctx: &Ctx, example: &str, params: &[String], report: &mut RunReport) -> Result<String> {
    let id = format!("{example}({})", params.join(","));
    let entry = ctx.table.fmult_examples.iter().find(|e| e.id == example);
    match query_fmult(example, params) {
        Ok(holds) => {
            let mut detail = json!({"example": example, "params": params, "finite_multiplicity": holds});
            if let Some(e) = entry {
                detail["pair"] = json!(e.pair);
                detail["condition"] = json!(e.condition);
                detail["source"] = json!(e.citation);
            }
            report.pass(&id, None, detail);
            Ok(format!("{id}: finite multiplicity {}\n", if holds { "holds" } else { "fails" }))
        }
        Err(e) => {
            report.fail(&id, None, e.to_string(), Value::Null);
            Ok(format!("{id}: error: {e}\n"))
        }
    }
}

fn status_word(s: Status) -> String {
    match s {
        Status::Pass => "ok".into(),
        Status::Fail => "FAIL".into(),
    }
}

fn timing(ms: Option<u64>) -> String {
    ms.map(|m| m.to_string()).unwrap_or_default()
}
