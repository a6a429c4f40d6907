//! Levi-module tensor products: Klimyk decomposition, Freudenthal weight
//! systems, special constituents of `l ⊗ z(n)` and the root data feeding the
//! second-order systems.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chevalley::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::parabolic::{LemmaCheck, ParabolicCase};
use crate::rootsys::{to_q, RootSystem};
use crate::scalars::{ri, QuadExt, Rational};

/// A weight in simple-root coordinates of the ambient algebra.
pub type Weight = Vec<Rational>;

/// Character of a finite-dimensional Levi module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub highest_weight: Weight,
    pub weights: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    /// The weights of an `h`-stable span of root vectors, each of multiplicity one.
    /// The highest weight is the root of largest height.
    pub fn from_roots(rs: &RootSystem, roots: &[usize]) -> Result<Self> {
        let top = roots
            .iter()
            .copied()
            .max_by_key(|&r| (rs.height(r), rs.root(r).to_vec()))
            .ok_or_else(|| Error::InvalidSpec("empty root set".into()))?;
        let weights = roots.iter().map(|&r| (to_q(rs.root(r)), 1)).collect();
        Ok(WeightSystem { highest_weight: to_q(rs.root(top)), weights })
    }

    /// The trivial one-dimensional module.
    pub fn trivial(rank: usize) -> Self {
        let zero = vec![Rational::zero(); rank];
        WeightSystem { highest_weight: zero.clone(), weights: [(zero, 1)].into_iter().collect() }
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn multiplicity(&self, w: &[Rational]) -> u64 {
        self.weights.get(w).copied().unwrap_or(0)
    }
}

/// Irreducible constituents with multiplicities, ordered by highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub constituents: Vec<(Weight, u64)>,
}

impl Decomposition {
    pub fn contains(&self, w: &[Rational]) -> bool {
        self.constituents.iter().any(|(v, _)| v.as_slice() == w)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.constituents.iter().all(|(_, m)| *m == 1)
    }

    pub fn highest_weights(&self) -> impl Iterator<Item = &Weight> {
        self.constituents.iter().map(|(w, _)| w)
    }

    /// Total dimension by the Weyl dimension formula over `levi`.
    pub fn total_dim(&self, rs: &RootSystem, levi: &[usize]) -> u64 {
        self.constituents
            .iter()
            .map(|(w, m)| m * rs.weyl_dimension(w, levi).to_u64().expect("dimension fits in u64"))
            .sum()
    }
}

fn check_dominant(rs: &RootSystem, levi: &[usize], hw: &[Rational]) -> Result<()> {
    for &i in levi {
        let c = rs.pair_simple_coroot(hw, i);
        if c.is_negative() || !c.is_integer() {
            return Err(Error::NonDominant(format!("{} against α{}∨", rs.fmt_weight(hw), i + 1)));
        }
    }
    Ok(())
}

/// `V(λ) ⊗ W` for the reductive subalgebra spanned by `h` and the roots on
/// `levi`, via ρ-shifted dominant conjugation with signs.
pub fn klimyk_decompose(
    m: &LieAlgebraModel,
    levi: &[usize],
    hw_left: &[Rational],
    weights_right: &WeightSystem,
) -> Result<Decomposition> {
    let rs = m.rs();
    check_dominant(rs, levi, hw_left)?;
    let rho = rs.rho(levi);
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, &mult) in &weights_right.weights {
        let mut x: Weight = hw_left.iter().zip(nu).zip(&rho).map(|((a, b), c)| a + b + c).collect();
        let mut sign = 1i64;
        while let Some(&i) = levi.iter().find(|&&i| rs.pair_simple_coroot(&x, i).is_negative()) {
            rs.reflect(&mut x, i);
            sign = -sign;
        }
        if levi.iter().any(|&i| rs.pair_simple_coroot(&x, i).is_zero()) {
            continue;
        }
        let w: Weight = x.iter().zip(&rho).map(|(a, b)| a - b).collect();
        *acc.entry(w).or_insert(0) += sign * mult as i64;
    }
    let mut constituents = Vec::new();
    for (w, c) in acc {
        match c.signum() {
            0 => {}
            1 => constituents.push((w, c as u64)),
            _ => return Err(Error::Internal(format!("negative multiplicity {c} at {}", rs.fmt_weight(&w)))),
        }
    }
    Ok(Decomposition { constituents })
}

/// Full weight system of the irreducible module `V(hw)` over `levi` by
/// Freudenthal's recursion, processed by depth below `hw`.
pub fn freudenthal(rs: &RootSystem, levi: &[usize], hw: &[Rational]) -> Result<WeightSystem> {
    check_dominant(rs, levi, hw)?;
    let n = rs.rank();
    let rho = rs.rho(levi);
    let den = hw.iter().chain(&rho).fold(num_bigint::BigInt::one(), |d, x| d.lcm(x.denom()));
    let d = den.to_i64().ok_or_else(|| Error::Internal("weight denominators too large".into()))?;
    let scale = |w: &[Rational]| -> Vec<i64> {
        w.iter().map(|x| (x * ri(d)).to_integer().to_i64().expect("scaled weight fits in i64")).collect()
    };
    let g6 = rs.gram6();
    let ip = |a: &[i64], b: &[i64]| -> i128 {
        let mut s = 0i128;
        for i in 0..n {
            if a[i] != 0 {
                for j in 0..n {
                    s += a[i] as i128 * g6[i][j] as i128 * b[j] as i128;
                }
            }
        }
        s
    };
    let add = |a: &[i64], b: &[i64], k: i64| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + k * y).collect() };

    let pos: Vec<Vec<i64>> =
        rs.positive_roots_in(levi).iter().map(|&r| rs.root(r).iter().map(|c| c * d).collect()).collect();
    let simples: Vec<Vec<i64>> = levi.iter().map(|&i| rs.root(rs.simple(i)).iter().map(|c| c * d).collect()).collect();
    let lam = scale(hw);
    let rho_s = scale(&rho);
    let lr = add(&lam, &rho_s, 1);
    let lr2 = ip(&lr, &lr);

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(lam.clone(), 1);
    let mut level = vec![lam];
    while !level.is_empty() {
        let mut cands: Vec<Vec<i64>> = level.iter().flat_map(|w| simples.iter().map(move |a| add(w, a, -1))).collect();
        cands.sort();
        cands.dedup();
        let mut next = Vec::new();
        for mu in cands {
            let mr = add(&mu, &rho_s, 1);
            let denom = lr2 - ip(&mr, &mr);
            if denom == 0 {
                continue;
            }
            let mut num = 0i128;
            for a in &pos {
                let mut k = 1;
                loop {
                    let up = add(&mu, a, k);
                    let Some(&m) = mult.get(&up) else { break };
                    num += 2 * m as i128 * ip(&up, a);
                    k += 1;
                }
            }
            if num == 0 {
                continue;
            }
            if num % denom != 0 || num / denom < 0 {
                return Err(Error::Internal(format!("Freudenthal quotient {num}/{denom} is not a multiplicity")));
            }
            mult.insert(mu.clone(), (num / denom) as u64);
            next.push(mu);
        }
        level = next;
    }
    let weights =
        mult.into_iter().map(|(w, m)| (w.iter().map(|&c| Rational::new(c.into(), den.clone())).collect(), m)).collect();
    Ok(WeightSystem { highest_weight: hw.to_vec(), weights })
}

/// `l_γ ⊗ z(n)` as a Levi module.
pub fn lgamma_tensor_decomposition(case: &ParabolicCase) -> Result<Decomposition> {
    let rs = case.rs();
    let right = WeightSystem::from_roots(rs, &case.delta_zn)?;
    klimyk_decompose(&case.model, &case.levi_simples(), &to_q(rs.root(case.xi_gamma)), &right)
}

/// `l_nγ ⊗ z(n)`, when `l_nγ ≠ 0`.
pub fn lngamma_tensor_decomposition(case: &ParabolicCase) -> Result<Option<Decomposition>> {
    let Some(xn) = case.xi_ngamma else { return Ok(None) };
    let rs = case.rs();
    let right = WeightSystem::from_roots(rs, &case.delta_zn)?;
    klimyk_decompose(&case.model, &case.levi_simples(), &to_q(rs.root(xn)), &right).map(Some)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstituentKind {
    #[serde(rename = "1a")]
    Type1a,
    #[serde(rename = "1b")]
    Type1b,
    #[serde(rename = "2")]
    Type2,
    #[serde(rename = "3")]
    Type3,
}

impl ConstituentKind {
    /// Kinds whose special value has a closed form.
    pub fn has_closed_form(self) -> bool {
        matches!(self, ConstituentKind::Type1a | ConstituentKind::Type2)
    }
}

impl fmt::Display for ConstituentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstituentKind::Type1a => "type 1a",
            ConstituentKind::Type1b => "type 1b",
            ConstituentKind::Type2 => "type 2",
            ConstituentKind::Type3 => "type 3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstituentSource {
    LgammaTensor,
    LngammaTensor,
}

impl fmt::Display for ConstituentSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstituentSource::LgammaTensor => "l_gamma",
            ConstituentSource::LngammaTensor => "l_ngamma",
        })
    }
}

/// `V(μ+ε) ⊂ l ⊗ z(n)` with `ε ∈ Δ(g(1))` and `μ+ε ≠ γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialConstituent {
    pub nu: Vec<i64>,
    /// Root index of `ε`.
    pub epsilon: usize,
    pub kind: ConstituentKind,
    pub source: ConstituentSource,
}

/// Type of `V(μ+ε)` from root data alone.
pub fn constituent_kind(rs: &RootSystem, mu: usize, eps: usize) -> ConstituentKind {
    if rs.sum(mu, eps).is_some() {
        ConstituentKind::Type3
    } else if mu == eps {
        ConstituentKind::Type2
    } else if rs.is_long(mu) && rs.is_long(eps) {
        ConstituentKind::Type1a
    } else {
        ConstituentKind::Type1b
    }
}

fn as_int(w: &[Rational]) -> Option<Vec<i64>> {
    w.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

fn g1_offset(case: &ParabolicCase, nu: &[i64]) -> Option<usize> {
    let rs = case.rs();
    let diff: Vec<i64> = nu.iter().zip(rs.root(case.mu)).map(|(a, b)| a - b).collect();
    rs.index_of(&diff).filter(|&e| rs.is_positive(e) && case.grade(e) == 1)
}

/// The special constituents of `l_γ ⊗ z(n)` and `l_nγ ⊗ z(n)`; `CH_q ⊗ z(n)`
/// contributes none.
pub fn special_constituents(case: &ParabolicCase) -> Result<Vec<SpecialConstituent>> {
    let rs = case.rs();
    let gamma = rs.root(case.gamma).to_vec();
    let dec = lgamma_tensor_decomposition(case)?;
    let mut found: Vec<(Vec<i64>, usize)> = Vec::new();
    for w in dec.highest_weights() {
        let nu = as_int(w).ok_or_else(|| Error::Internal(format!("non-integral constituent {}", rs.fmt_weight(w))))?;
        if nu == gamma {
            continue;
        }
        if let Some(e) = g1_offset(case, &nu) {
            found.push((nu, e));
        }
    }
    let [(nu, eps)] = &found[..] else {
        return Err(Error::Internal(format!("{}: {} special constituents in l_γ ⊗ z(n)", case.label(), found.len())));
    };
    let mut out = vec![SpecialConstituent {
        nu: nu.clone(),
        epsilon: *eps,
        kind: constituent_kind(rs, case.mu, *eps),
        source: ConstituentSource::LgammaTensor,
    }];
    if let Some(xn) = case.xi_ngamma {
        let nu: Vec<i64> = rs.root(xn).iter().zip(&gamma).map(|(a, b)| a + b).collect();
        let eps = g1_offset(case, &nu)
            .ok_or_else(|| Error::Internal(format!("{}: ξ_nγ+γ−μ is not a root of g(1)", case.label())))?;
        out.push(SpecialConstituent {
            nu,
            epsilon: eps,
            kind: constituent_kind(rs, case.mu, eps),
            source: ConstituentSource::LngammaTensor,
        });
    }
    Ok(out)
}

/// Roots `α` of `set` with `ν − α ∈ Δ`.
pub fn support(rs: &RootSystem, nu: &[i64], set: impl IntoIterator<Item = usize>) -> Vec<usize> {
    set.into_iter()
        .filter(|&a| {
            let d: Vec<i64> = nu.iter().zip(rs.root(a)).map(|(x, y)| x - y).collect();
            rs.index_of(&d).is_some()
        })
        .collect()
}

/// `β ↦ ν − β` as a root index.
pub fn theta(rs: &RootSystem, nu: &[i64], b: usize) -> Option<usize> {
    let d: Vec<i64> = nu.iter().zip(rs.root(b)).map(|(x, y)| x - y).collect();
    rs.index_of(&d)
}

/// Root sets and the constant `C(μ,ε)` for a constituent of type 1a or 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRootData {
    pub delta_mue_g1: Vec<usize>,
    pub delta_mue_zn: Vec<usize>,
    pub theta: BTreeMap<usize, usize>,
    /// One summand of `C(μ,ε)` per root of `delta_mue_zn`.
    pub c_summands: Vec<QuadExt>,
    pub c_mue: QuadExt,
}

/// `N_{μ,ε−γ}·N_{−μ,γ−ε}·N_{ε,−γ}·N_{−ε,γ}`, zero when `ε−γ ∉ Δ`.
pub fn c_summand(m: &LieAlgebraModel, mu: usize, eps: usize, g: usize) -> QuadExt {
    let rs = m.rs();
    let Some(eg) = rs.diff(eps, g) else { return QuadExt::zero() };
    let (nmu, neps, ng, neg) = (rs.neg(mu), rs.neg(eps), rs.neg(g), rs.neg(eg));
    m.n(mu, eg) * m.n(nmu, neg) * m.n(eps, ng) * m.n(neps, g)
}

pub fn omega_root_data(case: &ParabolicCase, sc: &SpecialConstituent) -> Result<OmegaRootData> {
    if !sc.kind.has_closed_form() {
        return Err(Error::Unsupported(format!("{} constituent: no closed-form support", sc.kind)));
    }
    let rs = case.rs();
    let delta_mue_g1 = support(rs, &sc.nu, case.delta_g1.iter().copied());
    let delta_mue_zn = support(rs, &sc.nu, case.delta_zn.iter().copied());
    let theta_map = delta_mue_g1
        .iter()
        .chain(&delta_mue_zn)
        .map(|&b| (b, theta(rs, &sc.nu, b).expect("support elements have θ")))
        .collect();
    let c_summands: Vec<QuadExt> =
        delta_mue_zn.iter().map(|&g| c_summand(&case.model, case.mu, sc.epsilon, g)).collect();
    let c_mue = c_summands.iter().fold(QuadExt::zero(), |a, b| &a + b);
    if c_mue.is_zero() {
        return Err(Error::Internal(format!("{}: C(μ,ε) vanishes", case.label())));
    }
    Ok(OmegaRootData { delta_mue_g1, delta_mue_zn, theta: theta_map, c_summands, c_mue })
}

/// Root-combinatorial and structure-constant identities attached to one
/// special constituent. Checks are emitted only for the types they concern.
pub fn verify_constituent_lemmas(case: &ParabolicCase, sc: &SpecialConstituent) -> Vec<LemmaCheck> {
    use ConstituentKind::*;
    let m = &*case.model;
    let rs = case.rs();
    let (mu, eps, nu) = (case.mu, sc.epsilon, &sc.nu);
    let kind = sc.kind;
    let mut out = Vec::new();
    let mut push = |name: &str, holds: bool| out.push(LemmaCheck { name: format!("{}:{name}", sc.source), holds });
    let n = |a: usize, b: usize| m.n(a, b).clone();
    let neg = |a: usize| rs.neg(a);
    let diff = |a: usize, b: usize| rs.diff(a, b);

    let g1 = support(rs, nu, case.delta_g1.iter().copied());
    let zn = support(rs, nu, case.delta_zn.iter().copied());
    let all = support(rs, nu, 0..rs.num_roots());

    push("nu_differs_from_gamma", nu.as_slice() != rs.root(case.gamma));
    push("z_support_of_nu_is_nonempty", !zn.is_empty());
    push("kind_matches_root_data", constituent_kind(rs, mu, eps) == kind);
    push(
        "mu_pm_epsilon_not_roots_unless_type_3",
        kind == Type3 || (rs.sum(mu, eps).is_none() && (mu == eps || diff(mu, eps).is_none())),
    );
    if kind == Type1a {
        push("mu_orthogonal_to_epsilon", rs.inner_roots(mu, eps).is_zero());
        push(
            "alpha_q_and_z_roots_are_long",
            rs.is_long(rs.simple(case.q)) && case.delta_zn.iter().all(|&g| rs.is_long(g)),
        );
    }
    if kind == Type2 {
        push("g1_support_of_two_mu_is_mu_alone", g1 == [mu]);
        push("mu_has_length_of_alpha_q", rs.norm2(mu) == rs.norm2(rs.simple(case.q)));
    }
    if kind != Type3 {
        let ok = all.iter().filter(|&&d| d != mu && d != eps).all(|&d| diff(d, mu).is_some() && diff(d, eps).is_some());
        push("support_minus_mu_and_minus_epsilon_are_roots", ok);
        let ok = zn.iter().all(|&g| {
            let (Some(a), Some(b)) = (diff(mu, g), diff(eps, g)) else { return false };
            &n(eps, a) * &n(mu, neg(g)) == &n(mu, b) * &n(eps, neg(g))
        });
        push("mu_epsilon_exchange_through_z_support", ok);
    }
    if !kind.has_closed_form() {
        return out;
    }

    let others: Vec<usize> = g1.iter().copied().filter(|&a| a != mu && a != eps).collect();
    if kind == Type1a {
        push("g1_support_has_roots_besides_mu_and_epsilon", !others.is_empty());
        push("z_support_minus_g1_support_are_roots", zn.iter().all(|&g| g1.iter().all(|&a| diff(g, a).is_some())));
    }
    let nested = zn.iter().all(|&g| {
        let sub = support(rs, rs.root(g), case.delta_g1.iter().copied());
        g1.iter().all(|a| sub.contains(a))
    });
    push("g1_support_of_nu_lies_in_g1_support_of_each_z_support_root", nested);
    push(
        "g1_support_of_theta_of_z_support_is_nonempty",
        zn.iter().all(|&g| {
            theta(rs, nu, g).is_some_and(|t| !support(rs, rs.root(t), case.delta_g1.iter().copied()).is_empty())
        }),
    );
    let summands: Vec<QuadExt> = zn.iter().map(|&g| c_summand(m, mu, eps, g)).collect();
    push("constant_summands_are_positive", summands.iter().all(|s| s.is_positive()));
    push("constant_is_positive", summands.iter().fold(QuadExt::zero(), |a, b| &a + b).is_positive());

    if kind != Type1a {
        return out;
    }
    let aq2 = QuadExt::from_rational(rs.norm2(rs.simple(case.q)) / ri(2));
    let th = |b: usize| theta(rs, nu, b).expect("θ of a support root");
    let is_root_or_zero = |v: Vec<i64>| v.iter().all(|&c| c == 0) || rs.index_of(&v).is_some();
    let coords = |terms: &[(i64, usize)]| case.combo(terms);
    let (mut vanish, mut norm, mut ex1, mut ex2, mut prod) = (true, true, true, true, true);
    for &a in &others {
        let am = diff(a, mu).expect("α−μ is a root");
        for &g in &zn {
            let tg = th(g);
            vanish &= !is_root_or_zero(coords(&[(-1, g), (1, am)])) && !is_root_or_zero(coords(&[(1, tg), (1, am)]));
            let Some(mg) = diff(mu, g) else {
                norm = false;
                continue;
            };
            let half = QuadExt::from_rational(-rs.norm2(mg) / ri(2));
            norm &= &n(mg, am) * &n(neg(mg), neg(am)) == half;
            let lhs1 = &n(a, neg(g)) * &n(mu, neg(a));
            ex1 &= lhs1 == &n(mu, neg(g)) * &n(am, mg);
            let lhs2 = &n(neg(tg), th(a)) * &n(neg(th(a)), th(mu));
            ex2 &= lhs2 == &n(neg(tg), th(mu)) * &n(neg(mg), neg(am));
            let rhs = match diff(eps, g) {
                Some(eg) => &(&n(mu, eg) * &n(eps, neg(g))) * &aq2,
                None => QuadExt::zero(),
            };
            prod &= &lhs1 * &lhs2 == rhs;
        }
    }
    push("alpha_minus_mu_brackets_with_minus_gamma_and_theta_vanish", vanish);
    push("alpha_minus_mu_constant_product_is_minus_half_norm", norm);
    push("alpha_minus_gamma_constant_exchange", ex1);
    push("theta_constant_exchange", ex2);
    push("four_constant_product_matches_constant_summand", prod);

    let (mut mu_minus, mut kills) = (true, true);
    for &a in &case.delta_l_plus {
        let Some(ae) = rs.sum(a, eps) else { continue };
        mu_minus &= diff(mu, a).is_some();
        for &g in &case.delta_zn {
            // ad(X_μ) ad(X_{α+ε}) X_{−γ}
            let Some(x) = rs.sum(ae, neg(g)) else { continue };
            kills &= rs.sum(mu, x).is_none() && x != neg(mu);
        }
    }
    push("epsilon_plus_levi_root_forces_mu_minus_levi_root", mu_minus);
    push("ad_mu_ad_epsilon_plus_levi_root_kills_negative_z", kills);
    out
}

/// Every lemma check for a case: weight identities, long-root strings and the
/// per-constituent identities.
pub fn verify_case_lemmas(case: &ParabolicCase) -> Result<Vec<LemmaCheck>> {
    let mut out = crate::parabolic::verify_weight_lemmas(case);
    out.extend(long_root_string_checks(case.rs()));
    for sc in special_constituents(case)? {
        out.extend(verify_constituent_lemmas(case, &sc));
    }
    Ok(out)
}

/// String properties of long roots against every root.
pub fn long_root_string_checks(rs: &RootSystem) -> Vec<LemmaCheck> {
    let (mut minus, mut plus, mut exclusive, mut no_double) = (true, true, true, true);
    for a in (0..rs.num_roots()).filter(|&a| rs.is_long(a)) {
        for b in 0..rs.num_roots() {
            if b == a || b == rs.neg(a) {
                continue;
            }
            let c = rs.pair_coroot(b, a);
            let (dm, dp) = (rs.diff(b, a).is_some(), rs.sum(b, a).is_some());
            minus &= !dm || c == 1;
            plus &= !dp || c == -1;
            exclusive &= !(dm && dp);
            let twice = |k: i64| {
                let v: Vec<i64> = rs.root(b).iter().zip(rs.root(a)).map(|(x, y)| x + k * y).collect();
                rs.index_of(&v).is_some()
            };
            no_double &= !twice(2) && !twice(-2);
        }
    }
    [
        ("beta_minus_long_root_forces_pairing_one", minus),
        ("beta_plus_long_root_forces_pairing_minus_one", plus),
        ("beta_plus_and_minus_long_root_exclusive", exclusive),
        ("beta_pm_twice_long_root_not_roots", no_double),
    ]
    .into_iter()
    .map(|(name, holds)| LemmaCheck { name: name.into(), holds })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::{build_case, ParabolicSpec};
    use crate::rootsys::parse_epsilon;
    use num_traits::ToPrimitive;

    fn case(s: &str) -> ParabolicCase {
        build_case(&s.parse::<ParabolicSpec>().unwrap()).unwrap()
    }

    fn eps(c: &ParabolicCase, s: &str) -> Weight {
        let rs = c.rs();
        rs.from_epsilon(&parse_epsilon(s, rs.rank()).unwrap()).unwrap()
    }

    fn plus(a: &[Rational], b: &[Rational]) -> Weight {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    #[test]
    fn trivial_factor_is_unit() {
        let c = case("B6(3)");
        let rs = c.rs();
        let hw = to_q(rs.root(c.xi_gamma));
        let d = klimyk_decompose(&c.model, &c.levi_simples(), &hw, &WeightSystem::trivial(rs.rank())).unwrap();
        assert_eq!(d.constituents, vec![(hw, 1)]);
    }

    #[test]
    fn non_dominant_is_refused() {
        let c = case("B6(3)");
        let low = to_q(c.rs().root(c.rs().neg(c.xi_gamma)));
        let r = klimyk_decompose(&c.model, &c.levi_simples(), &low, &WeightSystem::trivial(6));
        assert!(matches!(r, Err(Error::NonDominant(_))));
    }

    #[test]
    fn b_series_split_at_i_equal_three() {
        let c = case("B7(3)");
        let xg = to_q(c.rs().root(c.xi_gamma));
        let d = lgamma_tensor_decomposition(&c).unwrap();
        let g = eps(&c, "e1+e2");
        let want = [plus(&xg, &g), g.clone(), plus(&xg, &eps(&c, "e1+e3"))];
        assert_eq!(d.constituents.len(), 3);
        assert!(want.iter().all(|w| d.contains(w)));

        let c = case("B7(5)");
        let xg = to_q(c.rs().root(c.xi_gamma));
        let d = lgamma_tensor_decomposition(&c).unwrap();
        let want = [plus(&xg, &g), g, plus(&xg, &eps(&c, "e1+e5")), plus(&xg, &eps(&c, "e2+e3"))];
        assert_eq!(d.constituents.len(), 4);
        assert!(want.iter().all(|w| d.contains(w)));
        assert!(d.is_multiplicity_free());
    }

    #[test]
    fn e7_6_extra_constituent() {
        let c = case("E7(6)");
        let rs = c.rs();
        let d = lgamma_tensor_decomposition(&c).unwrap();
        let xg = to_q(rs.root(c.xi_gamma));
        let g0 = to_q(&[1, 2, 2, 4, 3, 2, 1]);
        let g = to_q(rs.root(c.gamma));
        assert_eq!(d.constituents.len(), 3);
        for w in [plus(&xg, &g), g.clone(), plus(&xg, &g0)] {
            assert!(d.contains(&w), "{}", rs.fmt_weight(&w));
        }
        let levi = c.levi_simples();
        let dim_l = rs.weyl_dimension(&xg, &levi).to_u64().unwrap();
        assert_eq!(d.total_dim(rs, &levi), dim_l * c.delta_zn.len() as u64);
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        let c = case("D6(3)");
        let rs = c.rs();
        let levi = c.levi_simples();
        for (w, _) in lgamma_tensor_decomposition(&c).unwrap().constituents {
            let ws = freudenthal(rs, &levi, &w).unwrap();
            assert_eq!(ws.dim(), rs.weyl_dimension(&w, &levi).to_u64().unwrap());
            assert_eq!(ws.multiplicity(&w), 1);
        }
        // The adjoint module of A3 has zero weight of multiplicity 3.
        let a3 = crate::rootsys::RootSystem::new("A3".parse().unwrap()).unwrap();
        let ws = freudenthal(&a3, &[0, 1, 2], &to_q(a3.root(a3.highest_root()))).unwrap();
        assert_eq!(ws.multiplicity(&to_q(&[0, 0, 0])), 3);
        assert_eq!(ws.dim(), 15);
    }

    #[test]
    fn freudenthal_weights_are_weyl_symmetric() {
        let rs = crate::rootsys::RootSystem::new("B3".parse().unwrap()).unwrap();
        let hw = plus(&rs.fundamental_weight(1).unwrap(), &rs.fundamental_weight(3).unwrap());
        let ws = freudenthal(&rs, &[0, 1, 2], &hw).unwrap();
        for (w, &m) in &ws.weights {
            for i in 0..3 {
                let mut r = w.clone();
                rs.reflect(&mut r, i);
                assert_eq!(ws.multiplicity(&r), m);
            }
        }
    }

    fn kinds(s: &str) -> Vec<(Weight, ConstituentKind)> {
        let c = case(s);
        special_constituents(&c).unwrap().into_iter().map(|sc| (to_q(&sc.nu), sc.kind)).collect()
    }

    #[test]
    fn classical_special_constituents() {
        let c = case("B7(4)");
        let e = |s: &str| eps(&c, s);
        assert_eq!(
            kinds("B7(4)"),
            vec![(e("2e1"), ConstituentKind::Type1a), (e("e1+e2+e5+e6"), ConstituentKind::Type1a)]
        );
        let c = case("B7(6)");
        let e = |s: &str| eps(&c, s);
        assert_eq!(kinds("B7(6)"), vec![(e("2e1"), ConstituentKind::Type1a), (e("e1+e2+e7"), ConstituentKind::Type1b)]);
        let c = case("B7(7)");
        assert_eq!(kinds("B7(7)"), vec![(eps(&c, "2e1"), ConstituentKind::Type2)]);
        let c = case("C6(3)");
        let e = |s: &str| eps(&c, s);
        assert_eq!(kinds("C6(3)"), vec![(e("e1+e2"), ConstituentKind::Type3), (e("2e1+2e4"), ConstituentKind::Type2)]);
    }

    #[test]
    fn f4_is_type_two_with_epsilon_mu() {
        let c = case("F4(4)");
        let sc = special_constituents(&c).unwrap();
        assert_eq!(sc.len(), 1);
        assert_eq!(sc[0].epsilon, c.mu);
        assert_eq!(sc[0].nu, vec![2, 4, 6, 2]);
        let d = omega_root_data(&c, &sc[0]).unwrap();
        assert_eq!(d.delta_mue_g1, vec![c.mu]);
    }

    #[test]
    fn root_data_counts() {
        let c = case("D7(3)");
        let sc = special_constituents(&c).unwrap();
        let d = omega_root_data(&c, &sc[0]).unwrap();
        assert_eq!(to_q(&sc[0].nu), eps(&c, "2e1"));
        assert_eq!(d.delta_mue_g1.len(), 2 * (7 - 3));
        assert_eq!(omega_root_data(&c, &sc[1]).unwrap().delta_mue_g1.len(), 4);
        let c = case("C6(3)");
        let sc = special_constituents(&c).unwrap();
        assert!(matches!(omega_root_data(&c, &sc[0]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn lemma_suite_on_small_cases() {
        for s in ["B6(3)", "B6(5)", "B6(6)", "C5(2)", "C5(3)", "D7(4)", "E6(3)", "F4(4)"] {
            let c = case(s);
            for chk in verify_case_lemmas(&c).unwrap() {
                assert!(chk.holds, "{s}: {}", chk.name);
            }
        }
    }
}
