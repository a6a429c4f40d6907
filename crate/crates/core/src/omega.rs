//! Covariant maps `τ_k`, the Ω₁ and Ω₂ operator systems as elements of
//! `U(n̄)`, and their brackets with `π_s(g)` evaluated at the identity.
//!
//! Operators are right-invariant differential operators `R(u)`, stored as
//! PBW-normalised words in negative root vectors. Only values at the identity
//! are ever formed, so `Ad(n̄⁻¹)` is the identity throughout.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{AlgebraElement, Label, LieAlgebraModel};
use crate::error::{Error, Result};
use crate::linalg::{axpy, SparseEchelon, SparseVec};
use crate::parabolic::ParabolicCase;
use crate::rootsys::{to_q, RootSystem};
use crate::scalars::{rat, QuadExt, Rational, SPoly};
use crate::tensor::{omega_root_data, ConstituentKind, SpecialConstituent};

fn one() -> QuadExt {
    QuadExt::from_int(1)
}

fn add_label(n: &mut AlgebraElement, l: Label, c: &QuadExt) {
    if !c.is_zero() {
        n.add_term(l, c);
    }
}

/// `Σ c·X_a ⊗ X_b` in `g ⊗ g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Label, Label), QuadExt>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Label, b: Label, c: &QuadExt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(QuadExt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add_scaled(&mut self, k: &QuadExt, o: &TensorElement) {
        for (&(a, b), c) in &o.terms {
            self.add_term(a, b, &(k * c));
        }
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        let mut t = Self::zero();
        t.add_scaled(k, self);
        t
    }

    pub fn coeff(&self, a: Label, b: Label) -> QuadExt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Label, Label), &QuadExt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(ad x ⊗ Id)`.
    pub fn apply_left(&self, m: &LieAlgebraModel, x: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let br = m.bracket_raw(x, &AlgebraElement::basis(a));
            for (l, k) in br.iter() {
                out.add_term(*l, b, &(c * k));
            }
        }
        out
    }

    /// `(Id ⊗ ad x)`.
    pub fn apply_right(&self, m: &LieAlgebraModel, x: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let br = m.bracket_raw(x, &AlgebraElement::basis(b));
            for (l, k) in br.iter() {
                out.add_term(a, *l, &(c * k));
            }
        }
        out
    }

    /// Diagonal adjoint action `ad x ⊗ Id + Id ⊗ ad x`.
    pub fn act(&self, m: &LieAlgebraModel, x: &AlgebraElement) -> Self {
        let mut out = self.apply_left(m, x);
        out.add_scaled(&one(), &self.apply_right(m, x));
        out
    }

    fn weights(&self, m: &LieAlgebraModel) -> BTreeSet<Vec<i64>> {
        self.terms
            .keys()
            .map(|&(a, b)| m.weight_of(a).iter().zip(m.weight_of(b)).map(|(x, y)| x + y).collect())
            .collect()
    }

    fn to_sparse(&self) -> SparseVec<(Label, Label)> {
        self.terms.clone()
    }
}

/// `(κ ⊗ κ)(y, t)`.
pub fn pair_tensors(m: &LieAlgebraModel, y: &TensorElement, t: &TensorElement) -> QuadExt {
    let mut by_right: BTreeMap<Label, Vec<(Label, &QuadExt)>> = BTreeMap::new();
    for (&(a, b), c) in &y.terms {
        by_right.entry(b).or_default().push((a, c));
    }
    let mut s = QuadExt::zero();
    for (&(c, d), tc) in &t.terms {
        for (b, ys) in &by_right {
            let kd = m.killing_labels(*b, d);
            if kd.is_zero() {
                continue;
            }
            for (a, yc) in ys {
                let kc = m.killing_labels(*a, c);
                if !kc.is_zero() {
                    s += &(&(&kc * &kd) * &(*yc * tc));
                }
            }
        }
    }
    s
}

/// `ω = Σ X_{−γ_j} ⊗ X_{γ_j}` over `Δ(z(n))`.
pub fn omega(case: &ParabolicCase) -> TensorElement {
    let rs = case.rs();
    let mut t = TensorElement::zero();
    for &g in &case.delta_zn {
        t.add_term(Label::Root(rs.neg(g)), Label::Root(g), &one());
    }
    t
}

/// `ω̄ = Σ X_{γ_j} ⊗ X_{−γ_j}`, the dual-side counterpart of [`omega`].
pub fn omega_bar(case: &ParabolicCase) -> TensorElement {
    let rs = case.rs();
    let mut t = TensorElement::zero();
    for &g in &case.delta_zn {
        t.add_term(Label::Root(g), Label::Root(rs.neg(g)), &one());
    }
    t
}

fn check_k(k: usize) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("τ_k for k = {k}; only k = 1, 2 are implemented")))
    }
}

/// `τ_k(X) = (1/k!)(ad(X)^k ⊗ Id)ω` for `X ∈ g(1)`.
pub fn tau_k(case: &ParabolicCase, k: usize, x: &AlgebraElement) -> Result<TensorElement> {
    check_k(k)?;
    for (l, _) in x.iter() {
        let ok = matches!(*l, Label::Root(r) if r < case.rs().num_roots() && case.grade(r) == 1);
        if !ok {
            return Err(Error::InvalidSpec(format!("τ_k argument has a component {l:?} outside g(1)")));
        }
    }
    let mut t = omega(case);
    for _ in 0..k {
        t = t.apply_left(&case.model, x);
    }
    Ok(if k == 2 { t.scale(&QuadExt::from_rational(rat(1, 2))) } else { t })
}

/// Homogeneous polynomial on `g(1)` in the coordinates `η_α` of
/// `X = Σ η_α X_α`. Monomials are sorted lists of root indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOnG1 {
    degree: usize,
    terms: BTreeMap<Vec<usize>, QuadExt>,
}

impl PolyOnG1 {
    pub fn new(degree: usize) -> Self {
        PolyOnG1 { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, monomial: &[usize], c: &QuadExt) {
        assert_eq!(monomial.len(), self.degree, "monomial degree mismatch");
        if c.is_zero() {
            return;
        }
        let mut key = monomial.to_vec();
        key.sort_unstable();
        let e = self.terms.entry(key.clone()).or_insert_with(QuadExt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, monomial: &[usize]) -> QuadExt {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &QuadExt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `X = Σ η_α X_α`; absent coordinates are zero.
    pub fn eval(&self, eta: &BTreeMap<usize, QuadExt>) -> QuadExt {
        let mut s = QuadExt::zero();
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for a in mono {
                v *= &eta.get(a).cloned().unwrap_or_default();
            }
            s += &v;
        }
        s
    }
}

fn check_dual_ambient(case: &ParabolicCase, k: usize, y: &TensorElement) -> Result<()> {
    let n = case.rs().num_roots();
    for &(a, b) in y.terms.keys() {
        let right_ok = matches!(b, Label::Root(r) if r < n && case.grade(r) == -2);
        let left_ok = match a {
            Label::Root(r) => r < n && case.grade(r) == 2 - k as i64,
            Label::Cartan(i) => k == 2 && i < case.rs().rank(),
        };
        if !(left_ok && right_ok) {
            return Err(Error::InvalidSpec(format!(
                "dual tensor term ({a:?}, {b:?}) lies outside g({}) ⊗ z(n̄)",
                2 - k as i64
            )));
        }
    }
    Ok(())
}

/// `τ̃_k(Y*)(X) = Y*(τ_k(X))`, with `Y*` given in `g(2−k) ⊗ z(n̄)` and paired
/// through `κ ⊗ κ`.
pub fn tau_tilde(case: &ParabolicCase, k: usize, ystar: &TensorElement) -> Result<PolyOnG1> {
    check_k(k)?;
    check_dual_ambient(case, k, ystar)?;
    let m = &case.model;
    let weights = ystar.weights(m);
    let wanted = |roots: &[usize]| -> bool {
        let rs = case.rs();
        let mut w = vec![0i64; rs.rank()];
        for &r in roots {
            for (x, y) in w.iter_mut().zip(rs.root(r)) {
                *x -= y;
            }
        }
        weights.contains(&w)
    };
    let g1 = &case.delta_g1;
    let mut p = PolyOnG1::new(k);
    if k == 1 {
        let om = omega(case);
        for &a in g1 {
            if wanted(&[a]) {
                let t = om.apply_left(m, &AlgebraElement::root(a));
                p.add_term(&[a], &pair_tensors(m, ystar, &t));
            }
        }
        return Ok(p);
    }
    let om = omega(case);
    let first: BTreeMap<usize, TensorElement> =
        g1.iter().map(|&b| (b, om.apply_left(m, &AlgebraElement::root(b)))).collect();
    let half = QuadExt::from_rational(rat(1, 2));
    for (i, &a) in g1.iter().enumerate() {
        for &b in &g1[i..] {
            if !wanted(&[a, b]) {
                continue;
            }
            let tab = pair_tensors(m, ystar, &first[&b].apply_left(m, &AlgebraElement::root(a)));
            let c = if a == b {
                &half * &tab
            } else {
                let tba = pair_tensors(m, ystar, &first[&a].apply_left(m, &AlgebraElement::root(b)));
                &half * &(&tab + &tba)
            };
            p.add_term(&[a, b], &c);
        }
    }
    Ok(p)
}

/// PBW word: negative root indices in nonincreasing order, length ≤ 2.
/// Longer words sort first, so echelon pivots prefer top-degree terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word(Vec<usize>);

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: usize) -> Self {
        Word(vec![a])
    }

    /// The ordered monomial `X_a X_b`, requiring `a ≥ b`.
    pub fn ordered(a: usize, b: usize) -> Self {
        assert!(a >= b, "PBW word must be nonincreasing");
        Word(vec![a, b])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `X_a X_b` in PBW form. Any bracket of two elements of `n̄` is central.
fn mul_letters(m: &LieAlgebraModel, a: usize, b: usize) -> Vec<(Word, QuadExt)> {
    if a >= b {
        return vec![(Word::ordered(a, b), one())];
    }
    let mut v = vec![(Word::ordered(b, a), one())];
    if let Some(c) = m.rs().sum(a, b) {
        v.push((Word::letter(c), m.n(a, b).clone()));
    }
    v
}

/// `R(u)R(v)` for `u, v ∈ n̄`.
fn r_product(m: &LieAlgebraModel, u: &AlgebraElement, v: &AlgebraElement) -> SparseVec<Word> {
    let mut out = SparseVec::new();
    for (lu, cu) in u.iter() {
        let Label::Root(a) = *lu else { unreachable!("n̄ has no Cartan part") };
        for (lv, cv) in v.iter() {
            let Label::Root(b) = *lv else { unreachable!("n̄ has no Cartan part") };
            let k = cu * cv;
            for (w, c) in mul_letters(m, a, b) {
                axpy(&mut out, &k, &[(w, c)].into_iter().collect());
            }
        }
    }
    out
}

fn letters_of(u: &AlgebraElement) -> SparseVec<Word> {
    u.iter()
        .map(|(l, c)| match *l {
            Label::Root(a) => (Word::letter(a), c.clone()),
            Label::Cartan(_) => unreachable!("n̄ has no Cartan part"),
        })
        .collect()
}

/// Element of `U(n̄)` with coefficients in `ℚ(√2)[s]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UEAElement {
    terms: BTreeMap<Word, SPoly>,
}

impl UEAElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word, c: SPoly) -> Self {
        let mut u = Self::zero();
        u.add_term(w, &c);
        u
    }

    /// `R(X_{a})` for a negative root index `a`.
    pub fn generator(a: usize) -> Self {
        Self::from_word(Word::letter(a), SPoly::constant(one()))
    }

    /// `R(X_a)R(X_b)` in PBW form.
    pub fn product(m: &LieAlgebraModel, a: usize, b: usize) -> Self {
        let mut u = Self::zero();
        for (w, c) in mul_letters(m, a, b) {
            u.add_term(w, &SPoly::constant(c));
        }
        u
    }

    pub fn from_sparse(v: &SparseVec<Word>) -> Self {
        let mut u = Self::zero();
        for (w, c) in v {
            u.add_term(w.clone(), &SPoly::constant(c.clone()));
        }
        u
    }

    pub fn add_term(&mut self, w: Word, c: &SPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(SPoly::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, k: &SPoly, o: &UEAElement) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), &(k * c));
        }
    }

    pub fn scale(&self, k: &SPoly) -> Self {
        let mut u = Self::zero();
        u.add_scaled(k, self);
        u
    }

    pub fn coeff(&self, w: &Word) -> SPoly {
        self.terms.get(w).cloned().unwrap_or_else(SPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &SPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn s_degree(&self) -> usize {
        self.terms.values().map(SPoly::degree).max().unwrap_or(0)
    }

    /// Coefficient of `s^k` as a scalar vector over words.
    pub fn slice(&self, k: usize) -> SparseVec<Word> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.coeff(k))).filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn eval(&self, s: &QuadExt) -> SparseVec<Word> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.eval(s))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Common `h`-weight of all words, `None` if mixed or empty.
    pub fn weight(&self, rs: &RootSystem) -> Option<Vec<i64>> {
        let mut ws = self.terms.keys().map(|w| {
            let mut v = vec![0i64; rs.rank()];
            for &a in w.letters() {
                for (x, y) in v.iter_mut().zip(rs.root(a)) {
                    *x += y;
                }
            }
            v
        });
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Words as lists of root coordinate tuples, coefficients as strings.
    pub fn to_records(&self, rs: &RootSystem) -> Vec<(Vec<Vec<i64>>, String)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.letters().iter().map(|&a| rs.root(a).to_vec()).collect(), c.to_string()))
            .collect()
    }

    pub fn display<'a>(&'a self, rs: &'a RootSystem) -> impl fmt::Display + 'a {
        UEADisplay { u: self, rs }
    }
}

struct UEADisplay<'a> {
    u: &'a UEAElement,
    rs: &'a RootSystem,
}

impl fmt::Display for UEADisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.u.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if w.is_empty() {
                write!(f, "·1")?;
            }
            for &a in w.letters() {
                write!(f, "·R({})", self.rs.fmt_root(a))?;
            }
        }
        Ok(())
    }
}

/// `σ` followed by `R`: `η_α ↦ R(X_{−α})`, and degree-2 monomials go to the
/// symmetrised product.
pub fn sigma(case: &ParabolicCase, p: &PolyOnG1) -> UEAElement {
    let rs = case.rs();
    let m = &case.model;
    let half = SPoly::constant(QuadExt::from_rational(rat(1, 2)));
    let mut u = UEAElement::zero();
    for (mono, c) in p.iter() {
        let c = SPoly::constant(c.clone());
        match mono.as_slice() {
            [a] => u.add_term(Word::letter(rs.neg(*a)), &c),
            [a, b] => {
                let (x, y) = (rs.neg(*a), rs.neg(*b));
                let mut sym = UEAElement::product(m, x, y);
                sym.add_scaled(&SPoly::constant(one()), &UEAElement::product(m, y, x));
                u.add_scaled(&(&c * &half), &sym);
            }
            _ => unreachable!("PolyOnG1 has degree 1 or 2"),
        }
    }
    u
}

/// `Ω_k(Y*) = R ∘ σ ∘ τ̃_k(Y*)`.
pub fn omega_k(case: &ParabolicCase, k: usize, ystar: &TensorElement) -> Result<UEAElement> {
    Ok(sigma(case, &tau_tilde(case, k, ystar)?))
}

/// Bracket engine with `λ_q` on the Cartan basis cached.
struct Engine<'a> {
    case: &'a ParabolicCase,
    lam: Vec<QuadExt>,
}

impl<'a> Engine<'a> {
    fn new(case: &'a ParabolicCase) -> Self {
        let n = case.rs().rank();
        let lam = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::from_integer(BigInt::from(1));
                QuadExt::from_rational(case.lambda_on(&e))
            })
            .collect();
        Engine { case, lam }
    }

    fn m(&self) -> &LieAlgebraModel {
        &self.case.model
    }

    fn split(&self, x: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
        let mut q = AlgebraElement::zero();
        let mut n = AlgebraElement::zero();
        for (l, c) in x.iter() {
            match *l {
                Label::Root(r) if self.case.grade(r) < 0 => add_label(&mut n, *l, c),
                _ => add_label(&mut q, *l, c),
            }
        }
        (q, n)
    }

    fn nbar(&self, x: &AlgebraElement) -> AlgebraElement {
        self.split(x).1
    }

    /// `λ_q` of the `q`-component; only the Cartan part contributes.
    fn lambda(&self, x: &AlgebraElement) -> QuadExt {
        let mut s = QuadExt::zero();
        for (l, c) in x.iter() {
            if let Label::Cartan(i) = *l {
                s += &(c * &self.lam[i]);
            }
        }
        s
    }

    /// Constant and `s`-linear parts of `[π_s(Y), w]_e`.
    fn word_bracket(&self, y: &AlgebraElement, yq: &AlgebraElement, w: &Word) -> (SparseVec<Word>, SparseVec<Word>) {
        let m = self.m();
        let mut c0 = SparseVec::new();
        let mut c1 = SparseVec::new();
        let o = one();
        match *w.letters() {
            [] => {}
            [a] => {
                let xa = AlgebraElement::root(a);
                axpy(&mut c0, &o, &letters_of(&self.nbar(&m.bracket_raw(yq, &xa))));
                let l = self.lambda(&m.bracket_raw(y, &xa));
                if !l.is_zero() {
                    c1.insert(Word::unit(), -l);
                }
            }
            [a, b] => {
                let (xa, xb) = (AlgebraElement::root(a), AlgebraElement::root(b));
                axpy(&mut c0, &o, &r_product(m, &self.nbar(&m.bracket_raw(yq, &xa)), &xb));
                axpy(&mut c0, &o, &r_product(m, &xa, &self.nbar(&m.bracket_raw(yq, &xb))));
                let ya = m.bracket_raw(y, &xa);
                let (ya_q, _) = self.split(&ya);
                axpy(&mut c0, &o, &letters_of(&self.nbar(&m.bracket_raw(&ya_q, &xb))));
                let l1 = self.lambda(&ya);
                let l2 = self.lambda(&m.bracket_raw(y, &xb));
                let l3 = self.lambda(&m.bracket_raw(&ya, &xb));
                axpy(&mut c1, &-l1, &[(Word::letter(b), o.clone())].into_iter().collect());
                axpy(&mut c1, &-l2, &[(Word::letter(a), o.clone())].into_iter().collect());
                axpy(&mut c1, &-l3, &[(Word::unit(), o.clone())].into_iter().collect());
            }
            _ => unreachable!("words are checked to have length ≤ 2"),
        }
        (c0, c1)
    }

    fn bracket(&self, y: &AlgebraElement, d: &UEAElement) -> UEAElement {
        let (yq, _) = self.split(y);
        let mut out = UEAElement::zero();
        let s = SPoly::s();
        for (w, c) in d.iter() {
            let (c0, c1) = self.word_bracket(y, &yq, w);
            out.add_scaled(c, &UEAElement::from_sparse(&c0));
            out.add_scaled(&(c * &s), &UEAElement::from_sparse(&c1));
        }
        out
    }
}

/// `[π_s(Y), D]_e` for `D ∈ U(n̄)` of PBW degree at most 2.
pub fn bracket_at_identity(case: &ParabolicCase, y: &AlgebraElement, d: &UEAElement) -> Result<UEAElement> {
    if d.max_word_len() > 2 {
        return Err(Error::Unsupported(format!("bracket with an operator of PBW degree {}", d.max_word_len())));
    }
    Ok(Engine::new(case).bracket(y, d))
}

/// `Y*_l = (ad X_{−μ} ad X_{−ε} ⊗ Id) ω̄ ∈ l ⊗ z(n̄)`.
pub fn lowest_vector(case: &ParabolicCase, sc: &SpecialConstituent) -> TensorElement {
    let rs = case.rs();
    let m = &case.model;
    omega_bar(case)
        .apply_left(m, &AlgebraElement::root(rs.neg(sc.epsilon)))
        .apply_left(m, &AlgebraElement::root(rs.neg(case.mu)))
}

/// `Ω₂(Y*_l)` from the closed root sum over `Δ_{μ+ε}(g(1)) × Δ_{μ+ε}(z(n))`.
pub fn build_omega2_lowest(case: &ParabolicCase, sc: &SpecialConstituent) -> Result<UEAElement> {
    let data = omega_root_data(case, sc)?;
    let rs = case.rs();
    let m = &case.model;
    let (mu, eps) = (case.mu, sc.epsilon);
    let half = QuadExt::from_rational(rat(1, 2));
    let mut u = UEAElement::zero();
    for &a in &data.delta_mue_g1 {
        let ta = data.theta[&a];
        for &g in &data.delta_mue_zn {
            let Some(ge) = rs.diff(g, eps) else { continue };
            if rs.diff(a, g).is_none() {
                continue;
            }
            let tg = data.theta[&g];
            let left = m.n(rs.neg(mu), ge) * m.n(rs.neg(eps), g);
            let right = m.n(a, rs.neg(g)) * m.n(rs.neg(tg), ta);
            let c = &half * &(&left * &right);
            if c.is_zero() {
                continue;
            }
            u.add_scaled(&SPoly::constant(c), &UEAElement::product(m, rs.neg(a), rs.neg(ta)));
        }
    }
    Ok(u)
}

/// A generated Ω₂ system and the echelon basis of its values at `e`.
#[derive(Clone, Debug)]
pub struct Omega2System {
    pub constituent: SpecialConstituent,
    pub duals: Vec<TensorElement>,
    pub operators: Vec<UEAElement>,
    pub expected_dim: u64,
    pub span: SparseEchelon<Word>,
}

fn constituent_dim(case: &ParabolicCase, sc: &SpecialConstituent) -> u64 {
    case.rs().weyl_dimension(&to_q(&sc.nu), &case.levi_simples()).to_u64().expect("dimension fits in u64")
}

/// Raises `ystar` by the simple root vectors of `l` until the span closes.
fn raise(case: &ParabolicCase, ystar: TensorElement) -> Vec<TensorElement> {
    let m = &case.model;
    let raising: Vec<AlgebraElement> =
        case.levi_simples().iter().map(|&i| AlgebraElement::root(case.rs().simple(i))).collect();
    let mut ech = SparseEchelon::new();
    ech.insert(&ystar.to_sparse());
    let mut out = vec![ystar];
    let mut next = 0;
    while next < out.len() {
        let v = out[next].clone();
        next += 1;
        for z in &raising {
            let w = v.act(m, z);
            if !w.is_zero() && ech.insert(&w.to_sparse()) {
                out.push(w);
            }
        }
    }
    out
}

fn span_of(ops: &[UEAElement]) -> (SparseEchelon<Word>, usize) {
    let mut ech = SparseEchelon::new();
    let mut rank = 0;
    for op in ops {
        if ech.insert(&op.slice(0)) {
            rank += 1;
        }
    }
    (ech, rank)
}

/// Ω₂ system spanned by `U(u_l)·Y*_l`; `lowest` must equal `Ω₂(Y*_l)`.
pub fn generate_system(case: &ParabolicCase, sc: &SpecialConstituent, lowest: &UEAElement) -> Result<Omega2System> {
    if !sc.kind.has_closed_form() {
        return Err(Error::Unsupported(format!("{} constituent: no closed-form system", sc.kind)));
    }
    let ystar = lowest_vector(case, sc);
    let generic = omega_k(case, 2, &ystar)?;
    if &generic != lowest {
        return Err(Error::Internal(format!("{}: Ω₂(Y*_l) disagrees with the closed root sum", case.label())));
    }
    let duals = raise(case, ystar);
    let expected_dim = constituent_dim(case, sc);
    if duals.len() as u64 != expected_dim {
        return Err(Error::Internal(format!(
            "{}: raised {} dual vectors, expected dim V(μ+ε) = {expected_dim}",
            case.label(),
            duals.len()
        )));
    }
    let operators = duals.par_iter().map(|y| omega_k(case, 2, y)).collect::<Result<Vec<_>>>()?;
    if operators.iter().any(|o| o.s_degree() > 0) {
        return Err(Error::Internal("Ω₂ operators must not depend on s".into()));
    }
    let (span, rank) = span_of(&operators);
    if rank != operators.len() {
        return Err(Error::Internal(format!("{}: Ω₂ system has rank {rank} < {}", case.label(), operators.len())));
    }
    Ok(Omega2System { constituent: sc.clone(), duals, operators, expected_dim, span })
}

/// Outcome of the Ω₂ special-value computation.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialValueResult {
    pub constituent: SpecialConstituent,
    pub s_value: QuadExt,
    /// `−‖α_q‖²/2 · C(μ,ε)`.
    pub prefactor: QuadExt,
    /// Root index of `−ε`.
    pub residual_direction: usize,
    pub c_mue: QuadExt,
    pub g1_support_size: usize,
    pub system_size: usize,
    #[serde(skip)]
    pub bracket: UEAElement,
}

/// `s₂` predicted from the support size: `|Δ_{μ+ε}(g(1))|/2 − 1` for type 1a,
/// `−1` for type 2.
pub fn predicted_special_value(kind: ConstituentKind, g1_support: usize) -> Option<QuadExt> {
    match kind {
        ConstituentKind::Type1a => Some(QuadExt::from_rational(rat(g1_support as i64, 2) - rat(1, 1))),
        ConstituentKind::Type2 => Some(QuadExt::from_int(-1)),
        _ => None,
    }
}

/// `−(‖α_q‖²/2)·C(μ,ε)·(s − s₂)·R(X_{−ε})`.
pub fn closed_form_bracket(case: &ParabolicCase, sc: &SpecialConstituent) -> Result<UEAElement> {
    let data = omega_root_data(case, sc)?;
    let rs = case.rs();
    let s2 = predicted_special_value(sc.kind, data.delta_mue_g1.len()).expect("closed-form kinds");
    let pre = prefactor(case, &data.c_mue);
    let poly = SPoly::affine(-(&pre * &s2), pre);
    Ok(UEAElement::from_word(Word::letter(rs.neg(sc.epsilon)), poly))
}

fn prefactor(case: &ParabolicCase, c_mue: &QuadExt) -> QuadExt {
    let rs = case.rs();
    let aq = QuadExt::from_rational(rs.norm2(rs.simple(case.q)) / rat(2, 1));
    -(&aq * c_mue)
}

fn residual(span: &SparseEchelon<Word>, b: &UEAElement) -> (SparseVec<Word>, SparseVec<Word>) {
    (span.reduce(&b.slice(0)), span.reduce(&b.slice(1)))
}

/// Solves `[π_s(X_μ), Ω₂(Y*_l)]_e ∈ span{Ω₂(Y*_j)_e}` for `s`, and checks the
/// bracket against [`closed_form_bracket`].
pub fn solve_special_value(case: &ParabolicCase, sc: &SpecialConstituent) -> Result<SpecialValueResult> {
    let data = omega_root_data(case, sc)?;
    let lowest = build_omega2_lowest(case, sc)?;
    let system = generate_system(case, sc, &lowest)?;
    let rs = case.rs();
    let label = case.label();
    let b = Engine::new(case).bracket(&AlgebraElement::root(case.mu), &lowest);
    if b.s_degree() > 1 {
        return Err(Error::Internal(format!("{label}: bracket is not affine in s")));
    }
    let (r0, r1) = residual(&system.span, &b);
    let dir = Word::letter(rs.neg(sc.epsilon));
    if r0.keys().chain(r1.keys()).any(|w| *w != dir) {
        return Err(Error::Internal(format!("{label}: residual is not proportional to R(X_{{−ε}})")));
    }
    let c1 = r1.get(&dir).cloned().unwrap_or_default();
    if c1.is_zero() {
        return Err(Error::Internal(format!("{label}: residual has no s-dependence")));
    }
    let c0 = r0.get(&dir).cloned().unwrap_or_default();
    let s_value = -(&c0.checked_div(&c1).map_err(Error::Scalar)?);
    let expected = closed_form_bracket(case, sc)?;
    if b != expected {
        return Err(Error::Internal(format!(
            "{label}: bracket {} differs from the closed form {}",
            b.display(rs),
            expected.display(rs)
        )));
    }
    Ok(SpecialValueResult {
        constituent: sc.clone(),
        s_value,
        prefactor: prefactor(case, &data.c_mue),
        residual_direction: rs.neg(sc.epsilon),
        c_mue: data.c_mue,
        g1_support_size: data.delta_mue_g1.len(),
        system_size: system.operators.len(),
        bracket: b,
    })
}

/// Result of checking `[π_s(Y), D]_e ∈ span` over sets of `Y` and `D`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Certificate {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

fn certify(
    case: &ParabolicCase,
    span: &SparseEchelon<Word>,
    operators: &[UEAElement],
    ys: &[Label],
    s: &QuadExt,
) -> Certificate {
    let engine = Engine::new(case);
    let failures: Vec<String> = ys
        .par_iter()
        .flat_map_iter(|&y| {
            let ye = AlgebraElement::basis(y);
            let engine = &engine;
            operators.iter().enumerate().filter_map(move |(j, d)| {
                let r = span.reduce(&engine.bracket(&ye, d).eval(s));
                (!r.is_empty()).then(|| format!("Y = {y:?}, operator {j}"))
            })
        })
        .collect();
    Certificate { checked: ys.len() * operators.len(), failures }
}

/// Basis of `q = l ⊕ g(1) ⊕ z(n)`: nonnegatively graded root vectors and the
/// Cartan basis.
pub fn q_basis(case: &ParabolicCase) -> Vec<Label> {
    case.model
        .labels()
        .filter(|l| match *l {
            Label::Root(r) => case.grade(r) >= 0,
            Label::Cartan(_) => true,
        })
        .collect()
}

/// At `s`, every `[π_s(Y), D_i]_e` with `Y ∈ q_basis` lies in the system span.
pub fn omega2_certificate(case: &ParabolicCase, system: &Omega2System, s: &QuadExt) -> Certificate {
    certify(case, &system.span, &system.operators, &q_basis(case), s)
}

/// The Ω₁ system `{R(X_{−α})}` together with the constants `c_α` of
/// `Ω₁(τ̄₁(X_{−α})) = c_α R(X_{−α})`.
#[derive(Clone, Debug)]
pub struct Omega1System {
    pub constants: Vec<(usize, QuadExt)>,
    /// Roots of `g(1)` with `c_α = 0`.
    pub anomalies: Vec<usize>,
    pub operators: Vec<UEAElement>,
    pub span: SparseEchelon<Word>,
}

pub fn omega1_system(case: &ParabolicCase) -> Result<Omega1System> {
    let rs = case.rs();
    let m = &case.model;
    let wbar = omega_bar(case);
    let mut constants = Vec::new();
    let mut anomalies = Vec::new();
    let mut operators = Vec::new();
    for &a in &case.delta_g1 {
        let y = wbar.apply_left(m, &AlgebraElement::root(rs.neg(a)));
        let p = tau_tilde(case, 1, &y)?;
        let c = p.coeff(&[a]);
        if p.iter().any(|(mono, _)| mono[0] != a) {
            return Err(Error::Internal(format!("{}: τ̃₁(Y_{{−α}}) is not a multiple of η_α", case.label())));
        }
        if c.is_zero() {
            anomalies.push(a);
        }
        constants.push((a, c));
        operators.push(UEAElement::generator(rs.neg(a)));
    }
    let (span, _) = span_of(&operators);
    Ok(Omega1System { constants, anomalies, operators, span })
}

/// The unique `s` making every `[π_s(Y), R(X_{−α})]_e`, `Y` in a basis of
/// `g`, lie in the Ω₁ span.
pub fn omega1_special_value(case: &ParabolicCase) -> Result<QuadExt> {
    let sys = omega1_system(case)?;
    let engine = Engine::new(case);
    let ys: Vec<Label> = case.model.labels().collect();
    let residuals: Vec<(SparseVec<Word>, SparseVec<Word>)> = ys
        .par_iter()
        .flat_map_iter(|&y| {
            let ye = AlgebraElement::basis(y);
            let engine = &engine;
            let span = &sys.span;
            sys.operators.iter().map(move |d| residual(span, &engine.bracket(&ye, d)))
        })
        .collect();
    solve_affine(&residuals).map_err(|e| Error::Internal(format!("{}: Ω₁ {e}", case.label())))
}

/// Common root of the affine vector equations `r0 + s·r1 = 0`.
fn solve_affine(res: &[(SparseVec<Word>, SparseVec<Word>)]) -> std::result::Result<QuadExt, String> {
    let pivot = res
        .iter()
        .find_map(|(r0, r1)| r1.iter().next().map(|(w, c1)| (r0.get(w).cloned().unwrap_or_default(), c1.clone())));
    let Some((c0, c1)) = pivot else {
        return Err(if res.iter().all(|(r0, _)| r0.is_empty()) {
            "special value is not determined".into()
        } else {
            "no value of s is admissible".into()
        });
    };
    let s = -(&c0 / &c1);
    for (r0, r1) in res {
        let mut v = r0.clone();
        axpy(&mut v, &s, r1);
        if !v.is_empty() {
            return Err("no value of s is admissible".into());
        }
    }
    Ok(s)
}

pub fn omega1_certificate(case: &ParabolicCase, s: &QuadExt) -> Result<Certificate> {
    let sys = omega1_system(case)?;
    let ys: Vec<Label> = case.model.labels().collect();
    Ok(certify(case, &sys.span, &sys.operators, &ys, s))
}

/// Raw output for constituents without a closed form. Nothing is asserted.
#[derive(Clone, Debug)]
pub struct ExploratoryResult {
    pub constituent: SpecialConstituent,
    pub lowest: UEAElement,
    /// Whether every lowering operator of `l` annihilates `Y*_l`.
    pub is_lowest_weight: bool,
    pub system_size: usize,
    pub expected_dim: u64,
    pub rank: usize,
    /// Out-of-span part of `[π_s(X_μ), Ω₂(Y*_l)]_e`.
    pub residual: UEAElement,
}

pub fn explore_special_value(case: &ParabolicCase, sc: &SpecialConstituent) -> Result<ExploratoryResult> {
    let m = &case.model;
    let rs = case.rs();
    let ystar = lowest_vector(case, sc);
    let is_lowest_weight =
        case.levi_simples().iter().all(|&i| ystar.act(m, &AlgebraElement::root(rs.neg(rs.simple(i)))).is_zero());
    let lowest = omega_k(case, 2, &ystar)?;
    let duals = if ystar.is_zero() { Vec::new() } else { raise(case, ystar) };
    let operators = duals.par_iter().map(|y| omega_k(case, 2, y)).collect::<Result<Vec<_>>>()?;
    let (span, rank) = span_of(&operators);
    let b = Engine::new(case).bracket(&AlgebraElement::root(case.mu), &lowest);
    let (r0, r1) = residual(&span, &b);
    let mut res = UEAElement::from_sparse(&r0);
    res.add_scaled(&SPoly::s(), &UEAElement::from_sparse(&r1));
    Ok(ExploratoryResult {
        constituent: sc.clone(),
        lowest,
        is_lowest_weight,
        system_size: operators.len(),
        expected_dim: constituent_dim(case, sc),
        rank,
        residual: res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::{build_case, ParabolicSpec};
    use crate::tensor::special_constituents;

    fn case(s: &str) -> ParabolicCase {
        build_case(&s.parse::<ParabolicSpec>().unwrap()).unwrap()
    }

    fn closed_form_constituents(c: &ParabolicCase) -> Vec<SpecialConstituent> {
        special_constituents(c).unwrap().into_iter().filter(|sc| sc.kind.has_closed_form()).collect()
    }

    #[test]
    fn word_order_puts_longer_words_first() {
        let mut ws = vec![Word::unit(), Word::letter(3), Word::ordered(5, 2), Word::ordered(4, 4)];
        ws.sort();
        assert_eq!(ws, vec![Word::ordered(4, 4), Word::ordered(5, 2), Word::letter(3), Word::unit()]);
    }

    #[test]
    fn reordering_adds_central_correction() {
        let c = case("B7(3)");
        let rs = c.rs();
        let m = &c.model;
        let (a, b) = (c.delta_g1[0], c.delta_g1[1]);
        let (x, y) = (rs.neg(a), rs.neg(b));
        let mut comm = UEAElement::product(m, x, y);
        comm.add_scaled(&SPoly::constant(QuadExt::from_int(-1)), &UEAElement::product(m, y, x));
        let br = m.bracket_raw(&AlgebraElement::root(x), &AlgebraElement::root(y));
        assert_eq!(comm, UEAElement::from_sparse(&letters_of(&br)));
    }

    #[test]
    fn tau_one_of_mu_matches_root_sum() {
        let c = case("D8(3)");
        let rs = c.rs();
        let t = tau_k(&c, 1, &AlgebraElement::root(c.mu)).unwrap();
        let mut expect = TensorElement::zero();
        for &g in &c.delta_zn {
            if let Some(d) = rs.diff(c.mu, g) {
                expect.add_term(Label::Root(d), Label::Root(g), c.model.n(c.mu, rs.neg(g)));
            }
        }
        assert!(!t.is_zero());
        assert_eq!(t, expect);
        assert!(tau_k(&c, 2, &AlgebraElement::zero()).unwrap().is_zero());
        assert!(tau_k(&c, 3, &AlgebraElement::root(c.mu)).is_err());
        assert!(tau_k(&c, 1, &AlgebraElement::root(rs.neg(c.mu))).is_err());
    }

    #[test]
    fn tilde_rejects_wrong_ambient() {
        let c = case("D8(3)");
        let y = lowest_vector(&c, &closed_form_constituents(&c)[0]);
        assert!(tau_tilde(&c, 1, &y).is_err());
        assert!(tau_tilde(&c, 2, &omega(&c)).is_err());
    }

    #[test]
    fn lowest_vector_matches_explicit_sum() {
        for label in ["B7(3)", "C6(3)", "E6(3)", "F4(4)"] {
            let c = case(label);
            let rs = c.rs();
            let m = &c.model;
            for sc in closed_form_constituents(&c) {
                let data = omega_root_data(&c, &sc).unwrap();
                let mut expect = TensorElement::zero();
                for &g in &data.delta_mue_zn {
                    let Some(ge) = rs.diff(g, sc.epsilon) else { continue };
                    let k = m.n(rs.neg(c.mu), ge) * m.n(rs.neg(sc.epsilon), g);
                    expect.add_term(Label::Root(rs.neg(data.theta[&g])), Label::Root(rs.neg(g)), &k);
                }
                assert_eq!(lowest_vector(&c, &sc), expect, "{label}");
            }
        }
    }

    #[test]
    fn lowest_vector_is_killed_by_lowering() {
        for label in ["B7(3)", "D8(4)", "E7(6)", "F4(4)"] {
            let c = case(label);
            let rs = c.rs();
            for sc in closed_form_constituents(&c) {
                let y = lowest_vector(&c, &sc);
                for i in c.levi_simples() {
                    assert!(y.act(&c.model, &AlgebraElement::root(rs.neg(rs.simple(i)))).is_zero(), "{label}");
                }
            }
        }
    }

    #[test]
    fn closed_sum_agrees_with_generic_map() {
        for label in ["B7(3)", "B7(6)", "B7(7)", "C6(4)", "D8(5)", "E6(5)", "F4(4)"] {
            let c = case(label);
            for sc in closed_form_constituents(&c) {
                let closed = build_omega2_lowest(&c, &sc).unwrap();
                let generic = omega_k(&c, 2, &lowest_vector(&c, &sc)).unwrap();
                assert!(!closed.is_zero());
                assert_eq!(closed, generic, "{label}");
                let nu: Vec<i64> = sc.nu.iter().map(|x| -x).collect();
                assert_eq!(closed.weight(c.rs()), Some(nu));
            }
        }
    }

    #[test]
    fn d6_three_has_three_words() {
        let c = case("D6(3)");
        let sc = closed_form_constituents(&c)
            .into_iter()
            .find(|sc| sc.source == crate::tensor::ConstituentSource::LgammaTensor)
            .unwrap();
        assert_eq!(omega_root_data(&c, &sc).unwrap().delta_mue_g1.len(), 6);
        assert_eq!(build_omega2_lowest(&c, &sc).unwrap().len(), 3);
    }

    #[test]
    fn type_two_is_one_square() {
        for label in ["B7(7)", "C6(3)", "F4(4)"] {
            let c = case(label);
            let rs = c.rs();
            let sc = closed_form_constituents(&c).into_iter().find(|s| s.kind == ConstituentKind::Type2).unwrap();
            let data = omega_root_data(&c, &sc).unwrap();
            let u = build_omega2_lowest(&c, &sc).unwrap();
            let nm = rs.neg(c.mu);
            let half = QuadExt::from_rational(rat(1, 2));
            assert_eq!(u, UEAElement::from_word(Word::ordered(nm, nm), SPoly::constant(&half * &data.c_mue)));
            assert_eq!(rs.norm2(c.mu), rs.norm2(rs.simple(c.q)), "{label}");
        }
    }

    #[test]
    fn type_two_square_bracket() {
        for label in ["B7(7)", "C6(2)", "F4(4)"] {
            let c = case(label);
            let rs = c.rs();
            let nm = rs.neg(c.mu);
            let d = UEAElement::from_word(Word::ordered(nm, nm), SPoly::constant(one()));
            let b = bracket_at_identity(&c, &AlgebraElement::root(c.mu), &d).unwrap();
            let aq = QuadExt::from_rational(rs.norm2(rs.simple(c.q)));
            let expect = UEAElement::from_word(Word::letter(nm), SPoly::affine(-aq.clone(), -aq));
            assert_eq!(b, expect, "{label}");
        }
    }

    #[test]
    fn degree_one_lambda_term() {
        let c = case("E6(3)");
        let rs = c.rs();
        let b = bracket_at_identity(&c, &AlgebraElement::root(c.mu), &UEAElement::generator(rs.neg(c.mu))).unwrap();
        let aq = rs.norm2(rs.simple(c.q)) / rat(2, 1);
        assert_eq!(b.coeff(&Word::unit()), SPoly::affine(QuadExt::zero(), -QuadExt::from_rational(aq)));
    }

    #[test]
    fn nbar_brackets_vanish() {
        let c = case("B7(4)");
        let rs = c.rs();
        let sc = &closed_form_constituents(&c)[0];
        let d = build_omega2_lowest(&c, sc).unwrap();
        for &a in c.delta_g1.iter().chain(&c.delta_zn) {
            assert!(bracket_at_identity(&c, &AlgebraElement::root(rs.neg(a)), &d).unwrap().is_zero());
        }
    }

    #[test]
    fn omega_is_levi_invariant() {
        for label in ["B7(5)", "C6(4)", "E7(2)"] {
            let c = case(label);
            let om = omega(&c);
            for l in q_basis(&c) {
                if matches!(l, Label::Root(r) if c.grade(r) != 0) {
                    continue;
                }
                assert!(om.act(&c.model, &AlgebraElement::basis(l)).is_zero(), "{label} {l:?}");
                let rs = c.rs();
                if let Label::Root(r) = l {
                    assert!(om.act(&c.model, &AlgebraElement::root(rs.neg(r))).is_zero());
                }
            }
        }
    }

    #[test]
    fn tau_two_of_mu_plus_epsilon_is_highest() {
        for label in ["B7(3)", "D8(3)", "E6(5)", "F4(4)"] {
            let c = case(label);
            for sc in closed_form_constituents(&c) {
                let mut x = AlgebraElement::root(c.mu);
                x.add_term(Label::Root(sc.epsilon), &one());
                let t = tau_k(&c, 2, &x).unwrap();
                assert!(!t.is_zero());
                for a in c.rs().positive_roots().filter(|&a| c.grade(a) == 0) {
                    assert!(t.act(&c.model, &AlgebraElement::root(a)).is_zero(), "{label}");
                }
            }
        }
    }

    #[test]
    fn system_sizes() {
        let c = case("B7(4)");
        let sc = closed_form_constituents(&c)
            .into_iter()
            .find(|s| s.source == crate::tensor::ConstituentSource::LgammaTensor)
            .unwrap();
        let lowest = build_omega2_lowest(&c, &sc).unwrap();
        let sys = generate_system(&c, &sc, &lowest).unwrap();
        assert_eq!(sys.operators.len(), 4 * 5 / 2);
        assert_eq!(sys.operators[0], lowest);
    }

    #[test]
    fn omega1_constants_and_value() {
        for label in ["B7(3)", "C6(5)", "F4(4)"] {
            let c = case(label);
            let sys = omega1_system(&c).unwrap();
            assert_eq!(sys.operators.len(), c.delta_g1.len());
            assert!(sys.anomalies.is_empty());
            assert!(sys.constants.iter().all(|(_, k)| k.is_negative()));
            assert!(omega1_special_value(&c).unwrap().is_zero());
            assert!(omega1_certificate(&c, &QuadExt::zero()).unwrap().passed());
            assert!(!omega1_certificate(&c, &QuadExt::from_int(1)).unwrap().passed());
        }
    }

    #[test]
    fn small_special_values() {
        let expect =
            [("B7(3)", vec![rat(7, 2), rat(1, 1)]), ("C6(3)", vec![rat(-1, 1)]), ("D8(5)", vec![rat(2, 1), rat(1, 1)])];
        for (label, values) in expect {
            let c = case(label);
            let got: Vec<QuadExt> =
                closed_form_constituents(&c).iter().map(|sc| solve_special_value(&c, sc).unwrap().s_value).collect();
            let values: Vec<QuadExt> = values.into_iter().map(QuadExt::from_rational).collect();
            assert_eq!(got, values, "{label}");
        }
    }

    #[test]
    fn certificate_at_special_value_only() {
        let c = case("B7(5)");
        let sc = &closed_form_constituents(&c)[0];
        let r = solve_special_value(&c, sc).unwrap();
        let sys = generate_system(&c, sc, &build_omega2_lowest(&c, sc).unwrap()).unwrap();
        assert!(omega2_certificate(&c, &sys, &r.s_value).passed());
        let off = &r.s_value + &QuadExt::from_int(1);
        assert!(!omega2_certificate(&c, &sys, &off).passed());
    }

    #[test]
    fn exploratory_mode_reports_raw_residual() {
        let c = case("C6(3)");
        let sc = special_constituents(&c).unwrap().into_iter().find(|s| s.kind == ConstituentKind::Type3).unwrap();
        assert!(solve_special_value(&c, &sc).is_err());
        let e = explore_special_value(&c, &sc).unwrap();
        assert_eq!(e.rank, e.system_size);
    }
}
