//! Standard parabolic subalgebras: nilpotency class, the 2-grading of a
//! maximal quasi-Heisenberg parabolic and its Levi data.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chevalley::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::rootsys::{AlgebraType, Family, RootSystem};
use crate::scalars::{ri, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub algebra_type: AlgebraType,
    /// One-based simple-root indices, sorted and distinct.
    pub subset: Vec<usize>,
}

impl ParabolicSpec {
    pub fn new(algebra_type: AlgebraType, subset: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::InvalidSpec("empty subset".into()));
        }
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > algebra_type.rank) {
            return Err(Error::InvalidSpec(format!("index {bad} outside 1..={}", algebra_type.rank)));
        }
        Ok(ParabolicSpec { algebra_type, subset: set.into_iter().collect() })
    }

    pub fn maximal(algebra_type: AlgebraType, i: usize) -> Result<Self> {
        Self::new(algebra_type, &[i])
    }

    pub fn is_maximal(&self) -> bool {
        self.subset.len() == 1
    }

    /// `S`-grade of a root: the sum of its multiplicities at `S`.
    pub fn grade(&self, coords: &[i64]) -> i64 {
        self.subset.iter().map(|&i| coords[i - 1]).sum()
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        write!(f, "{}({})", self.algebra_type, s.join(","))
    }
}

impl FromStr for ParabolicSpec {
    type Err = Error;
    /// Parses case labels such as `B7(3)` or `A5(2,4)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::Parse(s.to_string());
        let open = t.find('(').ok_or_else(err)?;
        let body = t[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let ty: AlgebraType = t[..open].parse().map_err(|e| match e {
            Error::InvalidType(m) => Error::InvalidType(m),
            _ => err(),
        })?;
        let idx: Vec<usize> = body.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect::<Result<_>>()?;
        ParabolicSpec::new(ty, &idx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Abelian,
    Heisenberg,
    QuasiHeisenberg,
    KStep,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Abelian => "abelian",
            StepKind::Heisenberg => "Heisenberg",
            StepKind::QuasiHeisenberg => "quasi-Heisenberg",
            StepKind::KStep => "higher-step",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepClassification {
    pub k: usize,
    pub kind: StepKind,
    /// `dim [n, n]`.
    pub dim_derived: usize,
}

impl fmt::Display for StepClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StepKind::KStep => write!(f, "{}-step", self.k),
            kind => write!(f, "{}-step, {}", self.k, kind),
        }
    }
}

fn kind_of(k: usize, dim_derived: usize) -> StepKind {
    match (k, dim_derived) {
        (1, _) => StepKind::Abelian,
        (2, 1) => StepKind::Heisenberg,
        (2, _) => StepKind::QuasiHeisenberg,
        _ => StepKind::KStep,
    }
}

/// Step from the multiplicities of `S` in the highest root.
pub fn classify_step(spec: &ParabolicSpec) -> Result<StepClassification> {
    let rs = RootSystem::new(spec.algebra_type)?;
    Ok(classify_with(&rs, spec))
}

pub fn classify_with(rs: &RootSystem, spec: &ParabolicSpec) -> StepClassification {
    let k = spec.grade(rs.root(rs.highest_root())) as usize;
    let dim_derived = rs.positive_roots().filter(|&r| spec.grade(rs.root(r)) >= 2).count();
    StepClassification { k, kind: kind_of(k, dim_derived), dim_derived }
}

/// Brute-force nilpotency class from the lower central series of `n`,
/// computed with the structure constants of `model`.
pub fn classify_by_brackets(model: &LieAlgebraModel, spec: &ParabolicSpec) -> StepClassification {
    let rs = model.rs();
    let n: Vec<usize> = rs.positive_roots().filter(|&r| spec.grade(rs.root(r)) >= 1).collect();
    let mut term: BTreeSet<usize> = n.iter().copied().collect();
    let mut k = 0;
    let mut dim_derived = 0;
    while !term.is_empty() {
        k += 1;
        let mut next = BTreeSet::new();
        for &a in &n {
            for &b in &term {
                if let Some(c) = rs.sum(a, b) {
                    if !model.n(a, b).is_zero() {
                        next.insert(c);
                    }
                }
            }
        }
        if k == 1 {
            dim_derived = next.len();
        }
        term = next;
    }
    StepClassification { k, kind: kind_of(k, dim_derived), dim_derived }
}

/// Connected components of the Dynkin diagram restricted to `nodes` (zero-based).
pub fn components(rs: &RootSystem, nodes: &[usize]) -> Vec<Vec<usize>> {
    let c = rs.cartan_matrix();
    let mut left: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = vec![start];
        left.remove(&start);
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            let nb: Vec<usize> = left.iter().copied().filter(|&v| c[u][v] != 0).collect();
            for v in nb {
                left.remove(&v);
                comp.push(v);
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// One maximal parabolic of quasi-Heisenberg type with its 2-grading.
#[derive(Clone, Debug)]
pub struct ParabolicCase {
    pub spec: ParabolicSpec,
    pub model: Arc<LieAlgebraModel>,
    /// Zero-based index of `α_q`.
    pub q: usize,
    /// `H_q` over the basis `H_{α_i}`; `β(H_q)` is the `α_q`-multiplicity of `β`.
    pub h_q: Vec<Rational>,
    pub lambda_q: Vec<Rational>,
    pub delta_g1: Vec<usize>,
    pub delta_zn: Vec<usize>,
    pub delta_l_plus: Vec<usize>,
    /// Zero-based index of the unique simple root not orthogonal to `γ`.
    pub alpha_gamma: usize,
    pub mu: usize,
    pub gamma: usize,
    pub xi_gamma: usize,
    pub xi_ngamma: Option<usize>,
    pub lgamma_simples: Vec<usize>,
    pub lngamma_simples: Vec<usize>,
}

pub fn build_case(spec: &ParabolicSpec) -> Result<ParabolicCase> {
    let cls = classify_step(spec)?;
    if !spec.is_maximal() {
        return Err(Error::InvalidSpec(format!("{spec} is not maximal")));
    }
    if cls.kind != StepKind::QuasiHeisenberg {
        return Err(Error::NotQuasiHeisenberg(format!("{spec} is {cls}")));
    }
    let model = Arc::new(LieAlgebraModel::new(spec.algebra_type)?);
    build_case_with(model, spec)
}

pub fn build_case_with(model: Arc<LieAlgebraModel>, spec: &ParabolicSpec) -> Result<ParabolicCase> {
    let rs = model.rs();
    if rs.algebra_type() != spec.algebra_type {
        return Err(Error::InvalidSpec(format!("{spec} does not match {}", rs.algebra_type())));
    }
    if !spec.is_maximal() {
        return Err(Error::InvalidSpec(format!("{spec} is not maximal")));
    }
    let cls = classify_with(rs, spec);
    if cls.kind != StepKind::QuasiHeisenberg {
        return Err(Error::NotQuasiHeisenberg(format!("{spec} is {cls}")));
    }
    let q = spec.subset[0] - 1;
    let n = rs.rank();
    let levi: Vec<usize> = (0..n).filter(|&i| i != q).collect();
    let comps = components(rs, &levi);
    if comps.len() >= 3 {
        return Err(Error::Excluded(spec.to_string()));
    }

    let lambda_q = rs.fundamental_weight(q + 1)?;
    let aq2 = rs.norm2(rs.simple(q));
    let h_q: Vec<Rational> = lambda_q.iter().map(|x| x * ri(2) / &aq2).collect();

    let grade = |r: usize| rs.root(r)[q];
    let delta_g1: Vec<usize> = rs.positive_roots().filter(|&r| grade(r) == 1).collect();
    let delta_zn: Vec<usize> = rs.positive_roots().filter(|&r| grade(r) == 2).collect();
    let delta_l_plus: Vec<usize> = rs.positive_roots().filter(|&r| grade(r) == 0).collect();

    let gamma = rs.highest_root();
    let non_orth: Vec<usize> = (0..n).filter(|&i| !rs.inner_roots(gamma, rs.simple(i)).is_zero()).collect();
    let [alpha_gamma] = non_orth[..] else {
        return Err(Error::Internal(format!("{} simple roots not orthogonal to γ", non_orth.len())));
    };
    let mu = *delta_g1.last().ok_or_else(|| Error::Internal("empty g(1)".into()))?;

    let highest_on = |comp: &[usize]| -> Result<usize> {
        rs.positive_roots_in(comp).last().copied().ok_or_else(|| Error::Internal("empty component".into()))
    };
    let lgamma = comps
        .iter()
        .find(|c| c.contains(&alpha_gamma))
        .cloned()
        .ok_or_else(|| Error::Internal("α_γ lies outside the Levi factor".into()))?;
    let lngamma: Vec<usize> = comps.iter().find(|c| !c.contains(&alpha_gamma)).cloned().unwrap_or_default();
    let xi_gamma = highest_on(&lgamma)?;
    let xi_ngamma = if lngamma.is_empty() { None } else { Some(highest_on(&lngamma)?) };

    Ok(ParabolicCase {
        spec: spec.clone(),
        q,
        h_q,
        lambda_q,
        delta_g1,
        delta_zn,
        delta_l_plus,
        alpha_gamma,
        mu,
        gamma,
        xi_gamma,
        xi_ngamma,
        lgamma_simples: lgamma,
        lngamma_simples: lngamma,
        model,
    })
}

/// All maximal parabolics of quasi-Heisenberg type in `t` that admit a case
/// build, i.e. excluding `D_n(n−2)`.
pub fn supported_cases(t: AlgebraType) -> Result<Vec<ParabolicSpec>> {
    let rs = RootSystem::new(t)?;
    let mut out = Vec::new();
    for i in 1..=t.rank {
        let spec = ParabolicSpec::maximal(t, i)?;
        if classify_with(&rs, &spec).kind != StepKind::QuasiHeisenberg {
            continue;
        }
        let levi: Vec<usize> = (0..t.rank).filter(|&j| j + 1 != i).collect();
        if components(&rs, &levi).len() < 3 {
            out.push(spec);
        }
    }
    Ok(out)
}

impl ParabolicCase {
    pub fn rs(&self) -> &RootSystem {
        self.model.rs()
    }

    pub fn label(&self) -> String {
        self.spec.to_string()
    }

    pub fn family(&self) -> Family {
        self.spec.algebra_type.family
    }

    /// Grade of any root index (`±2, ±1, 0`).
    pub fn grade(&self, r: usize) -> i64 {
        self.rs().root(r)[self.q]
    }

    /// `β(H_q)` computed from `H_q`, for cross-checks against [`ParabolicCase::grade`].
    pub fn h_q_eigenvalue(&self, r: usize) -> Rational {
        let rs = self.rs();
        rs.inner(&self.h_q, &crate::rootsys::to_q(rs.root(r)))
    }

    /// `λ_q` evaluated on a Cartan element given over the basis `H_{α_i}`.
    pub fn lambda_on(&self, h: &[Rational]) -> Rational {
        self.rs().inner(&self.lambda_q, h)
    }

    pub fn levi_simples(&self) -> Vec<usize> {
        (0..self.rs().rank()).filter(|&i| i != self.q).collect()
    }

    /// Positive roots of `l_γ`.
    pub fn lgamma_positive(&self) -> Vec<usize> {
        self.rs().positive_roots_in(&self.lgamma_simples)
    }

    pub fn lngamma_positive(&self) -> Vec<usize> {
        if self.lngamma_simples.is_empty() {
            return Vec::new();
        }
        self.rs().positive_roots_in(&self.lngamma_simples)
    }

    pub fn is_root_coords(&self, v: &[i64]) -> bool {
        self.rs().index_of(v).is_some()
    }

    /// `Σ c_i·root(r_i)` as a coordinate vector.
    pub fn combo(&self, terms: &[(i64, usize)]) -> Vec<i64> {
        let rs = self.rs();
        let mut v = vec![0i64; rs.rank()];
        for &(c, r) in terms {
            for (x, y) in v.iter_mut().zip(rs.root(r)) {
                *x += c * y;
            }
        }
        v
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: String,
    pub holds: bool,
}

/// Root-membership identities relating `γ`, `μ`, `ξ_γ`, `ξ_nγ`, `α_q`.
pub fn verify_weight_lemmas(case: &ParabolicCase) -> Vec<LemmaCheck> {
    let rs = case.rs();
    let (g, mu, xg) = (case.gamma, case.mu, case.xi_gamma);
    let aq = rs.simple(case.q);
    let root = |t: &[(i64, usize)]| case.is_root_coords(&case.combo(t));
    let mut out = Vec::new();
    let mut push = |name: &str, holds: bool| out.push(LemmaCheck { name: name.into(), holds });

    push("xi_gamma_plus_alpha_q_is_root", root(&[(1, xg), (1, aq)]));
    push("gamma_minus_xi_gamma_is_root", root(&[(1, g), (-1, xg)]));
    push("gamma_minus_mu_is_root", root(&[(1, g), (-1, mu)]));
    push("mu_minus_xi_gamma_is_root", root(&[(1, mu), (-1, xg)]));
    if let Some(xn) = case.xi_ngamma {
        push("xi_ngamma_plus_alpha_q_is_root", root(&[(1, xn), (1, aq)]));
        push("gamma_minus_xi_ngamma_is_not_root", !root(&[(1, g), (-1, xn)]));
        push("mu_minus_xi_ngamma_is_root", root(&[(1, mu), (-1, xn)]));
        push("gamma_minus_mu_plus_xi_ngamma_is_root", root(&[(1, g), (-1, mu), (1, xn)]));
        push("gamma_minus_mu_minus_xi_ngamma_is_not_root", !root(&[(1, g), (-1, mu), (-1, xn)]));
    }
    let plus = root(&[(1, g), (-1, mu), (1, xg)]);
    let minus = root(&[(1, g), (-1, mu), (-1, xg)]);
    if case.family() == Family::C {
        push("xi_gamma_is_short_in_type_c", !rs.is_long(xg));
        push("gamma_minus_mu_plus_xi_gamma_is_not_root", !plus);
        push("gamma_minus_mu_minus_xi_gamma_is_root", minus);
    } else {
        push("xi_gamma_is_long", rs.is_long(xg));
        push("gamma_minus_mu_pm_xi_gamma_are_not_roots", !plus && !minus);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::parse_epsilon;
    use crate::scalars::rat;

    fn spec(s: &str) -> ParabolicSpec {
        s.parse().unwrap()
    }

    #[test]
    fn label_grammar() {
        assert_eq!(spec("B7(3)").to_string(), "B7(3)");
        assert_eq!(spec("A5(4,2)").subset, vec![2, 4]);
        assert!("B7".parse::<ParabolicSpec>().is_err());
        assert!("B7(9)".parse::<ParabolicSpec>().is_err());
        assert!("Q7(1)".parse::<ParabolicSpec>().is_err());
        assert!(matches!("E9(1)".parse::<ParabolicSpec>(), Err(Error::InvalidType(_))));
    }

    #[test]
    fn classification_examples() {
        let a5 = classify_step(&spec("A5(2,4)")).unwrap();
        assert_eq!((a5.k, a5.dim_derived), (2, 4));
        assert_eq!(classify_step(&spec("B6(4)")).unwrap().kind, StepKind::QuasiHeisenberg);
        let c1 = classify_step(&spec("C5(1)")).unwrap();
        assert_eq!((c1.kind, c1.dim_derived), (StepKind::Heisenberg, 1));
        assert_eq!(classify_step(&spec("B4(1)")).unwrap().kind, StepKind::Abelian);
        assert_eq!(classify_step(&spec("E8(4)")).unwrap().k, 6);
    }

    #[test]
    fn formula_matches_lower_central_series() {
        for t in ["B5", "C5", "D6", "F4", "A4"] {
            let ty: AlgebraType = t.parse().unwrap();
            let m = LieAlgebraModel::new(ty).unwrap();
            for i in 1..=ty.rank {
                let s = ParabolicSpec::maximal(ty, i).unwrap();
                assert_eq!(classify_with(m.rs(), &s), classify_by_brackets(&m, &s), "{s}");
            }
        }
    }

    #[test]
    fn b5_3_levi_ideals() {
        let c = build_case(&spec("B5(3)")).unwrap();
        assert_eq!(c.alpha_gamma, 1);
        assert_eq!(c.lgamma_simples, vec![0, 1]);
        assert_eq!(c.lngamma_simples, vec![3, 4]);
    }

    #[test]
    fn b_series_distinguished_roots() {
        for n in 5..=7 {
            for i in 3..=n - 2 {
                let c = build_case(&spec(&format!("B{n}({i})"))).unwrap();
                let rs = c.rs();
                let eps = |s: &str| rs.from_epsilon(&parse_epsilon(s, n).unwrap()).unwrap();
                let as_q = |r: usize| crate::rootsys::to_q(rs.root(r));
                assert_eq!(as_q(c.mu), eps(&format!("e1+e{}", i + 1)));
                assert_eq!(as_q(c.gamma), eps("e1+e2"));
                assert_eq!(as_q(c.xi_gamma), eps(&format!("e1-e{i}")));
                assert_eq!(as_q(c.xi_ngamma.unwrap()), eps(&format!("e{}+e{}", i + 1, i + 2)));
                assert_eq!(c.delta_zn.len(), i * (i - 1) / 2);
            }
        }
    }

    #[test]
    fn grade_matches_h_q() {
        let c = build_case(&spec("C6(3)")).unwrap();
        for r in 0..c.rs().num_roots() {
            assert_eq!(c.h_q_eigenvalue(r), ri(c.grade(r)));
            assert!(c.grade(r).abs() <= 2);
        }
        // λ_q(H_β) = ‖α_q‖²/2 on g(1) for B_n(i).
        let b = build_case(&spec("B6(3)")).unwrap();
        for &r in &b.delta_g1 {
            let hb = crate::rootsys::to_q(b.rs().root(r));
            assert_eq!(b.lambda_on(&hb), ri(1));
        }
        let b = build_case(&spec("B6(6)")).unwrap();
        for &r in &b.delta_g1 {
            let hb = crate::rootsys::to_q(b.rs().root(r));
            assert_eq!(b.lambda_on(&hb), rat(1, 2));
        }
    }

    #[test]
    fn d_n_minus_2_refused_and_a_n_not_quasi() {
        assert!(matches!(build_case(&spec("D9(7)")), Err(Error::Excluded(_))));
        assert_eq!(classify_step(&spec("D9(7)")).unwrap().kind, StepKind::QuasiHeisenberg);
        assert!(matches!(build_case(&spec("A5(2)")), Err(Error::NotQuasiHeisenberg(_))));
        assert!(matches!(build_case(&spec("A5(2,4)")), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn supported_lists() {
        let labels = |t: &str| -> Vec<String> {
            supported_cases(t.parse().unwrap()).unwrap().iter().map(|s| s.to_string()).collect()
        };
        assert_eq!(labels("B7"), ["B7(3)", "B7(4)", "B7(5)", "B7(6)", "B7(7)"]);
        assert_eq!(labels("C6"), ["C6(2)", "C6(3)", "C6(4)", "C6(5)"]);
        assert_eq!(labels("D8"), ["D8(3)", "D8(4)", "D8(5)"]);
        assert_eq!(labels("E6"), ["E6(3)", "E6(5)"]);
        assert_eq!(labels("E7"), ["E7(2)", "E7(6)"]);
        assert_eq!(labels("E8"), ["E8(1)"]);
        assert_eq!(labels("F4"), ["F4(4)"]);
        assert!(labels("G2").is_empty());
        assert!(labels("A6").is_empty());
    }

    #[test]
    fn weight_lemmas_hold() {
        for s in ["B7(3)", "B7(6)", "B7(7)", "C6(2)", "C5(2)", "D6(3)", "E6(5)", "F4(4)"] {
            let c = build_case(&spec(s)).unwrap();
            for chk in verify_weight_lemmas(&c) {
                assert!(chk.holds, "{s}: {}", chk.name);
            }
        }
    }

    #[test]
    fn grading_is_compatible_with_brackets() {
        let c = build_case(&spec("D6(3)")).unwrap();
        let rs = c.rs();
        for a in 0..rs.num_roots() {
            for b in 0..rs.num_roots() {
                if let Some(s) = rs.sum(a, b) {
                    assert_eq!(c.grade(s), c.grade(a) + c.grade(b));
                }
            }
        }
    }
}
