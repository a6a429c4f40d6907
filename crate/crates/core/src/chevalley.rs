//! Structure constants in the normalisation `[X_α, X_{−α}] = H_α`,
//! `κ(X_α, X_{−α}) = 1`, `β(H_α) = ⟨α, β⟩`.
//!
//! Integral Chevalley constants are fixed by extraspecial pairs, then each
//! root vector is rescaled by `t_α = √(‖α‖²/2)`.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{AlgebraType, Family, RootSystem};
use crate::scalars::{ri, QuadExt, Rational};

/// Basis label: a root vector `X_α` or the Cartan element `H_{α_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Root(usize),
    Cartan(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Label, QuadExt>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(l: Label) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(l, QuadExt::from_int(1));
        AlgebraElement { terms }
    }

    pub fn root(i: usize) -> Self {
        Self::basis(Label::Root(i))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Label, QuadExt)>) -> Self {
        let mut e = Self::zero();
        for (l, c) in it {
            e.add_term(l, &c);
        }
        e
    }

    pub fn add_term(&mut self, l: Label, c: &QuadExt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn add_scaled(&mut self, k: &QuadExt, o: &AlgebraElement) {
        for (l, c) in &o.terms {
            self.add_term(*l, &(k * c));
        }
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        let mut e = Self::zero();
        e.add_scaled(k, self);
        e
    }

    pub fn coeff(&self, l: Label) -> QuadExt {
        self.terms.get(&l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &QuadExt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        let mut e = self.clone();
        e.add_scaled(&QuadExt::from_int(1), o);
        e
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        let mut e = self.clone();
        e.add_scaled(&QuadExt::from_int(-1), o);
        e
    }
}

#[derive(Clone, Debug)]
pub struct StructureConstants {
    m: usize,
    /// Integral Chevalley constants `N^c_{α,β}`, zero when `α+β ∉ Δ`.
    chevalley: Vec<i64>,
    /// Rescaled constants `N_{α,β}`.
    table: Vec<QuadExt>,
}

impl StructureConstants {
    pub fn get(&self, a: usize, b: usize) -> &QuadExt {
        &self.table[a * self.m + b]
    }

    pub fn chevalley(&self, a: usize, b: usize) -> i64 {
        self.chevalley[a * self.m + b]
    }
}

/// Square root inside Q(√2) of a positive rational of the form `k²` or `2k²`.
fn qsqrt(r: &Rational) -> Option<QuadExt> {
    let exact = |x: &Rational| -> Option<Rational> {
        let n = x.numer().sqrt();
        let d = x.denom().sqrt();
        (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
    };
    if r.is_negative() {
        return None;
    }
    if let Some(q) = exact(r) {
        return Some(QuadExt::from_rational(q));
    }
    exact(&(r / ri(2))).map(|k| QuadExt::new(Rational::zero(), k))
}

pub fn build_constants(rs: &RootSystem) -> Result<StructureConstants> {
    if rs.algebra_type().family == Family::G {
        return Err(Error::Unsupported("G2 root vectors would need √3 rescaling".into()));
    }
    let m = rs.num_roots();
    let npos = rs.num_positive();
    let mut pos_table = vec![0i64; npos * npos];

    // N^c for an arbitrary pair, derived from the positive table.
    fn nc(rs: &RootSystem, pos: &[i64], a: usize, b: usize) -> i64 {
        let npos = rs.num_positive();
        let Some(c) = rs.sum(a, b) else { return 0 };
        let n6 = |i: usize| {
            let n = rs.norm2(i) * ri(6);
            n.to_integer().try_into().unwrap_or(0i64)
        };
        match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) => pos[a * npos + b],
            (false, false) => -nc(rs, pos, rs.neg(a), rs.neg(b)),
            (false, true) => -nc(rs, pos, b, a),
            (true, false) => {
                if rs.is_positive(c) {
                    -(n6(c) * nc(rs, pos, rs.neg(b), c)) / n6(a)
                } else {
                    (n6(c) * nc(rs, pos, rs.neg(c), a)) / n6(b)
                }
            }
        }
    }

    for xi in rs.positive_roots() {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..xi {
            if let Some(b) = rs.diff(xi, a) {
                if rs.is_positive(b) && a < b {
                    pairs.push((a, b));
                }
            }
        }
        let Some(&(al, be)) = pairs.first() else { continue };
        let (p, _) = rs.root_string(al, be)?;
        let e = p as i64 + 1;
        pos_table[al * npos + be] = e;
        pos_table[be * npos + al] = -e;
        let n_neg = QuadExt::from_int(-e);
        let xi2 = rs.norm2(xi);
        for &(g, d) in &pairs[1..] {
            let mut acc = Rational::zero();
            if let Some(da) = rs.diff(d, al) {
                let t = nc(rs, &pos_table, d, rs.neg(al)) * nc(rs, &pos_table, g, rs.neg(be));
                acc -= ri(t) / rs.norm2(da);
            }
            if let Some(ga) = rs.diff(g, al) {
                let t = nc(rs, &pos_table, rs.neg(al), g) * nc(rs, &pos_table, d, rs.neg(be));
                acc -= ri(t) / rs.norm2(ga);
            }
            let v = &xi2 * acc / n_neg.a.clone();
            if !v.is_integer() {
                return Err(Error::Axiom {
                    axiom: "H7",
                    detail: format!("non-integral Chevalley constant at {}", rs.fmt_root(xi)),
                });
            }
            let v: i64 = v.to_integer().try_into().map_err(|_| Error::Internal("overflow".into()))?;
            pos_table[g * npos + d] = v;
            pos_table[d * npos + g] = -v;
        }
    }

    let mut chevalley = vec![0i64; m * m];
    let mut table = vec![QuadExt::zero(); m * m];
    for a in 0..m {
        for b in 0..m {
            let Some(c) = rs.sum(a, b) else { continue };
            let v = nc(rs, &pos_table, a, b);
            chevalley[a * m + b] = v;
            let r2 = rs.norm2(a) * rs.norm2(b) / (ri(2) * rs.norm2(c));
            let r = qsqrt(&r2).ok_or_else(|| Error::Internal("rescale factor outside Q(√2)".into()))?;
            table[a * m + b] = r.scale(&ri(v));
        }
    }
    let sc = StructureConstants { m, chevalley, table };
    check_antisymmetry(rs, &sc)?;
    check_h7(rs, &sc)?;
    check_h6(rs, &sc)?;
    Ok(sc)
}

/// `N_{α,β} = −N_{β,α}`, nonzero exactly when `α+β ∈ Δ`.
pub fn check_antisymmetry(rs: &RootSystem, sc: &StructureConstants) -> Result<()> {
    let m = rs.num_roots();
    for a in 0..m {
        for b in 0..m {
            let n = sc.get(a, b);
            if *n != -sc.get(b, a) {
                return Err(Error::Axiom {
                    axiom: "antisymmetry",
                    detail: format!("{} {}", rs.fmt_root(a), rs.fmt_root(b)),
                });
            }
            if rs.sum(a, b).is_some() == n.is_zero() {
                return Err(Error::Axiom { axiom: "H5", detail: format!("{} {}", rs.fmt_root(a), rs.fmt_root(b)) });
            }
        }
    }
    Ok(())
}

/// `N_{α,β} N_{−α,−β} = −q(1+p)‖α‖²/2` whenever `α+β ∈ Δ`.
pub fn check_h7(rs: &RootSystem, sc: &StructureConstants) -> Result<()> {
    let m = rs.num_roots();
    for a in 0..m {
        for b in 0..m {
            if rs.sum(a, b).is_none() {
                continue;
            }
            let (p, q) = rs.root_string(a, b)?;
            let lhs = sc.get(a, b) * sc.get(rs.neg(a), rs.neg(b));
            let rhs = QuadExt::from_rational(-ri((q * (1 + p)) as i64) * rs.norm2(a) / ri(2));
            if lhs != rhs {
                return Err(Error::Axiom { axiom: "H7", detail: format!("{} {}", rs.fmt_root(a), rs.fmt_root(b)) });
            }
        }
    }
    Ok(())
}

/// `α+β+γ = 0 ⇒ N_{α,β} = N_{β,γ} = N_{γ,α}`.
pub fn check_h6(rs: &RootSystem, sc: &StructureConstants) -> Result<()> {
    let m = rs.num_roots();
    for a in 0..m {
        for b in 0..m {
            let Some(s) = rs.sum(a, b) else { continue };
            let c = rs.neg(s);
            let x = sc.get(a, b);
            if x != sc.get(b, c) || x != sc.get(c, a) {
                return Err(Error::Axiom { axiom: "H6", detail: format!("{} {}", rs.fmt_root(a), rs.fmt_root(b)) });
            }
        }
    }
    Ok(())
}

/// The ambient simple Lie algebra with its normalised basis.
#[derive(Clone, Debug)]
pub struct LieAlgebraModel {
    pub root_system: RootSystem,
    pub constants: StructureConstants,
}

impl LieAlgebraModel {
    pub fn new(t: AlgebraType) -> Result<Self> {
        let rs = RootSystem::new(t)?;
        let constants = build_constants(&rs)?;
        Ok(LieAlgebraModel { root_system: rs, constants })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn dim(&self) -> usize {
        self.root_system.num_roots() + self.rank()
    }

    pub fn n(&self, a: usize, b: usize) -> &QuadExt {
        self.constants.get(a, b)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        let m = self.root_system.num_roots();
        (0..m).map(Label::Root).chain((0..self.rank()).map(Label::Cartan))
    }

    /// `H_α` expanded over the `H_{α_i}`.
    pub fn coroot_element(&self, a: usize) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.root_system.root(a).iter().enumerate().map(|(i, &c)| (Label::Cartan(i), QuadExt::from_int(c))),
        )
    }

    /// `⟨α_i, β⟩`, the eigenvalue of `ad H_{α_i}` on `X_β`.
    fn cartan_eigen(&self, i: usize, b: usize) -> QuadExt {
        let rs = &self.root_system;
        let g = &rs.gram()[i];
        let s: Rational = rs.root(b).iter().zip(g).map(|(&c, x)| ri(c) * x).sum();
        QuadExt::from_rational(s)
    }

    /// Bracket of two basis vectors.
    pub fn bracket_labels(&self, x: Label, y: Label) -> AlgebraElement {
        let rs = &self.root_system;
        match (x, y) {
            (Label::Root(a), Label::Root(b)) => {
                if a == rs.neg(b) {
                    self.coroot_element(a)
                } else if let Some(c) = rs.sum(a, b) {
                    AlgebraElement::from_terms([(Label::Root(c), self.n(a, b).clone())])
                } else {
                    AlgebraElement::zero()
                }
            }
            (Label::Cartan(i), Label::Root(b)) => {
                AlgebraElement::from_terms([(Label::Root(b), self.cartan_eigen(i, b))])
            }
            (Label::Root(b), Label::Cartan(i)) => {
                AlgebraElement::from_terms([(Label::Root(b), -self.cartan_eigen(i, b))])
            }
            (Label::Cartan(_), Label::Cartan(_)) => AlgebraElement::zero(),
        }
    }

    fn check_label(&self, l: &Label) -> Result<()> {
        let ok = match *l {
            Label::Root(a) => a < self.root_system.num_roots(),
            Label::Cartan(i) => i < self.rank(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!("label {l:?} does not belong to {}", self.root_system.algebra_type())))
        }
    }

    /// Bracket without label validation.
    pub fn bracket_raw(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (lx, cx) in x.iter() {
            for (ly, cy) in y.iter() {
                let b = self.bracket_labels(*lx, *ly);
                if !b.is_zero() {
                    out.add_scaled(&(cx * cy), &b);
                }
            }
        }
        out
    }

    /// Invariant normalised pairing: `κ(X_α, X_β) = δ_{α,−β}`, `κ(H_i, H_j) = ⟨α_i, α_j⟩`.
    pub fn killing_labels(&self, x: Label, y: Label) -> QuadExt {
        let rs = &self.root_system;
        match (x, y) {
            (Label::Root(a), Label::Root(b)) if a == rs.neg(b) => QuadExt::from_int(1),
            (Label::Cartan(i), Label::Cartan(j)) => QuadExt::from_rational(rs.gram()[i][j].clone()),
            _ => QuadExt::zero(),
        }
    }

    pub fn killing_raw(&self, x: &AlgebraElement, y: &AlgebraElement) -> QuadExt {
        let mut s = QuadExt::zero();
        for (lx, cx) in x.iter() {
            for (ly, cy) in y.iter() {
                let k = self.killing_labels(*lx, *ly);
                if !k.is_zero() {
                    s += &(&k * &(cx * cy));
                }
            }
        }
        s
    }

    /// `ad X_α` eigen-weight of a basis label, in simple-root coordinates.
    pub fn weight_of(&self, l: Label) -> Vec<i64> {
        match l {
            Label::Root(a) => self.root_system.root(a).to_vec(),
            Label::Cartan(_) => vec![0; self.rank()],
        }
    }

    /// Jacobi identity on one basis triple.
    pub fn jacobi_holds(&self, x: Label, y: Label, z: Label) -> bool {
        let (x, y, z) = (AlgebraElement::basis(x), AlgebraElement::basis(y), AlgebraElement::basis(z));
        let mut s = self.bracket_raw(&x, &self.bracket_raw(&y, &z));
        s = &s + &self.bracket_raw(&y, &self.bracket_raw(&z, &x));
        s = &s + &self.bracket_raw(&z, &self.bracket_raw(&x, &y));
        s.is_zero()
    }

    /// Writes `alpha,beta,a,b` rows for every nonzero `N_{α,β} = a + b√2`.
    pub fn write_constants_csv<W: Write>(&self, w: W) -> Result<()> {
        let rs = &self.root_system;
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Internal(e.to_string());
        wr.write_record(["alpha", "beta", "a", "b"]).map_err(io)?;
        let m = rs.num_roots();
        for a in 0..m {
            for b in 0..m {
                let n = self.n(a, b);
                if n.is_zero() {
                    continue;
                }
                let fmt = |i: usize| rs.root(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                wr.write_record([fmt(a), fmt(b), n.a.to_string(), n.b.to_string()]).map_err(io)?;
            }
        }
        wr.flush().map_err(|e| Error::Internal(e.to_string()))?;
        Ok(())
    }
}

pub fn bracket(m: &LieAlgebraModel, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    for (l, _) in x.iter().chain(y.iter()) {
        m.check_label(l)?;
    }
    Ok(m.bracket_raw(x, y))
}

pub fn killing_pair(m: &LieAlgebraModel, x: &AlgebraElement, y: &AlgebraElement) -> Result<QuadExt> {
    for (l, _) in x.iter().chain(y.iter()) {
        m.check_label(l)?;
    }
    Ok(m.killing_raw(x, y))
}

/// Convenience for tests: `N_{α,β}` between root coordinate vectors.
pub fn constant_between(m: &LieAlgebraModel, a: &[i64], b: &[i64]) -> Option<QuadExt> {
    let rs = m.rs();
    Some(m.n(rs.index_of(a)?, rs.index_of(b)?).clone())
}
