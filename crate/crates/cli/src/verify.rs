//! Table and lemma suites behind `cis verify`.

use cis_core::chevalley::{check_antisymmetry, check_h6, check_h7};
use cis_core::parabolic::supported_cases;
use cis_core::{AlgebraType, CaseReport, Family, LieAlgebraModel, ParabolicSpec, QuadExt};
use rayon::prelude::*;
use serde::Serialize;

use crate::tables::expected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Tables,
    Lemmas,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub scope: Scope,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// Three ranks per classical family, the exceptional algebras once each.
fn algebra_types() -> Vec<AlgebraType> {
    let ranks = [(Family::B, [5, 6, 7]), (Family::C, [4, 5, 6]), (Family::D, [6, 7, 8])];
    let mut v: Vec<AlgebraType> =
        ranks.iter().flat_map(|(f, rs)| rs.iter().map(|&r| AlgebraType::new(*f, r).expect("valid rank"))).collect();
    for (f, r) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4)] {
        v.push(AlgebraType::new(f, r).expect("valid rank"));
    }
    v
}

fn specs() -> Vec<ParabolicSpec> {
    algebra_types().into_iter().flat_map(|t| supported_cases(t).expect("supported family")).collect()
}

fn table_checks(spec: &ParabolicSpec) -> Vec<Check> {
    let label = spec.to_string();
    let report = match CaseReport::build(spec) {
        Ok(r) => r,
        Err(e) => return vec![check(format!("{label}: report"), false, e.to_string())],
    };
    let Some(exp) = expected(spec) else {
        return vec![check(format!("{label}: reference row"), false, "no reference row")];
    };
    let mut out = Vec::new();
    let kinds: Vec<&str> = report.special_constituents.iter().map(|c| c.kind.trim_start_matches("type ")).collect();
    out.push(check(format!("{label}: constituent types"), kinds == exp.kinds, format!("{kinds:?}")));
    let o1 = &report.omega1;
    out.push(check(
        format!("{label}: omega1 special value"),
        o1.s_value == QuadExt::from_int(0).to_string() && o1.certificate && o1.anomalies.is_empty(),
        format!("s = {}", o1.s_value),
    ));
    for (r, want) in report.omega2.iter().zip(&exp.values) {
        let (ok, detail) = match want {
            Some(v) => {
                let want = QuadExt::from_rational(v.clone()).to_string();
                let got = r.s_value.clone().unwrap_or_default();
                (got == want && r.certificate == Some(true), format!("s = {got}, expected {want}"))
            }
            None => (r.s_value.is_none(), "no closed form".to_string()),
        };
        out.push(check(format!("{label}: omega2 {} ({})", r.source, r.kind), ok, detail));
    }
    out
}

fn lemma_checks(spec: &ParabolicSpec) -> Vec<Check> {
    let label = spec.to_string();
    let case = match cis_core::build_case(spec) {
        Ok(c) => c,
        Err(e) => return vec![check(format!("{label}: case"), false, e.to_string())],
    };
    match cis_core::tensor::verify_case_lemmas(&case) {
        Ok(ls) => {
            let failed: Vec<String> = ls.iter().filter(|l| !l.holds).map(|l| l.name.clone()).collect();
            vec![check(
                format!("{label}: lemmas"),
                failed.is_empty(),
                format!("{} checked, failed {failed:?}", ls.len()),
            )]
        }
        Err(e) => vec![check(format!("{label}: lemmas"), false, e.to_string())],
    }
}

fn normalisation_checks(t: AlgebraType) -> Check {
    let res = LieAlgebraModel::new(t).and_then(|m| {
        check_antisymmetry(m.rs(), &m.constants)?;
        check_h6(m.rs(), &m.constants)?;
        check_h7(m.rs(), &m.constants)
    });
    match res {
        Ok(()) => check(format!("{t}: normalisation"), true, "ok"),
        Err(e) => check(format!("{t}: normalisation"), false, e.to_string()),
    }
}

pub fn run(scope: Scope) -> Summary {
    let specs = specs();
    let mut checks = Vec::new();
    if matches!(scope, Scope::Tables | Scope::All) {
        checks.extend(specs.par_iter().map(table_checks).collect::<Vec<_>>().into_iter().flatten());
    }
    if matches!(scope, Scope::Lemmas | Scope::All) {
        checks.extend(algebra_types().par_iter().map(|&t| normalisation_checks(t)).collect::<Vec<_>>());
        checks.extend(specs.par_iter().map(lemma_checks).collect::<Vec<_>>().into_iter().flatten());
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    Summary { scope, passed, failed: checks.len() - passed, checks }
}
