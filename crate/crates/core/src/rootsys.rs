//! Root systems of the complex simple Lie algebras in Bourbaki numbering.
//!
//! Roots are integer vectors over the simple roots. The inner product is
//! scaled so that long roots have squared length 2.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::invert;
use crate::scalars::{rat, ri, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        let mut it = s.trim().chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Family::from_letter(c).ok_or_else(|| Error::Parse(s.into())),
            _ => Err(Error::Parse(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraType {
    pub family: Family,
    pub rank: usize,
}

impl AlgebraType {
    pub fn new(family: Family, rank: usize) -> Result<AlgebraType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(AlgebraType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", family, rank)))
        }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;
    fn from_str(s: &str) -> Result<AlgebraType> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::Parse(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(s.into()))?;
        AlgebraType::new(family, rank)
    }
}

/// Gram matrix `⟨α_i, α_j⟩` with long roots of squared length 2.
fn gram_matrix(t: AlgebraType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let mut g = vec![vec![Rational::zero(); n]; n];
    let edge = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        g[i - 1][j - 1] = v.clone();
        g[j - 1][i - 1] = v;
    };
    for i in 0..n {
        g[i][i] = ri(2);
    }
    match t.family {
        Family::A => {
            for i in 1..n {
                edge(&mut g, i, i + 1, ri(-1));
            }
        }
        Family::B => {
            for i in 1..n {
                edge(&mut g, i, i + 1, ri(-1));
            }
            g[n - 1][n - 1] = ri(1);
        }
        Family::C => {
            for i in 1..n - 1 {
                edge(&mut g, i, i + 1, rat(-1, 2));
            }
            edge(&mut g, n - 1, n, ri(-1));
            for row in g.iter_mut().enumerate().take(n - 1) {
                row.1[row.0] = ri(1);
            }
        }
        Family::D => {
            for i in 1..n - 1 {
                edge(&mut g, i, i + 1, ri(-1));
            }
            edge(&mut g, n - 2, n, ri(-1));
        }
        Family::E => {
            for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
                if j <= n {
                    edge(&mut g, i, j, ri(-1));
                }
            }
        }
        Family::F => {
            edge(&mut g, 1, 2, ri(-1));
            edge(&mut g, 2, 3, ri(-1));
            edge(&mut g, 3, 4, rat(-1, 2));
            g[2][2] = ri(1);
            g[3][3] = ri(1);
        }
        Family::G => {
            edge(&mut g, 1, 2, ri(-1));
            g[0][0] = rat(2, 3);
        }
    }
    g
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: AlgebraType,
    gram: Vec<Vec<Rational>>,
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// Gram matrix times 6, integral for every family.
    gram6: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_pos: usize,
    simple: Vec<usize>,
    norms6: Vec<i64>,
    sums: Vec<u32>,
    fund: Vec<Vec<Rational>>,
}

pub fn build_root_system(t: AlgebraType) -> Result<RootSystem> {
    RootSystem::new(t)
}

impl RootSystem {
    pub fn new(t: AlgebraType) -> Result<RootSystem> {
        let t = AlgebraType::new(t.family, t.rank)?;
        let n = t.rank;
        let gram = gram_matrix(t);
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = ri(2) * &gram[i][j] / &gram[j][j];
                if !v.is_integer() {
                    return Err(Error::Internal(format!("non-integral Cartan entry for {t}")));
                }
                cartan[i][j] = v.to_integer().to_i64().unwrap();
            }
        }
        let gram6: Vec<Vec<i64>> =
            gram.iter().map(|r| r.iter().map(|x| (x * ri(6)).to_integer().to_i64().unwrap()).collect()).collect();

        // Layered closure: β + α_i is a root iff q = p − ⟨β, α_i∨⟩ ≥ 1.
        let mut pos: Vec<Vec<i64>> = Vec::new();
        let mut known: std::collections::HashSet<Vec<i64>> = Default::default();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while !layer.is_empty() {
            for r in &layer {
                known.insert(r.clone());
            }
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let mut p = 0;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if known.contains(&cur) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
                    if p - pair >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            pos.extend(layer);
            layer = next;
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let simple: Vec<usize> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                index[&e]
            })
            .collect();

        let ip6 = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += a[i] * gram6[i][j] * b[j];
                }
            }
            s
        };
        let norms6: Vec<i64> = roots.iter().map(|r| ip6(r, r)).collect();
        let m = roots.len();
        let mut sums = vec![NONE; m * m];
        for a in 0..m {
            for b in 0..m {
                let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(&s) {
                    sums[a * m + b] = k as u32;
                }
            }
        }
        let cq: Vec<Vec<Rational>> = cartan.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect();
        let fund = invert(&cq).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;

        Ok(RootSystem { ty: t, gram, cartan, gram6, roots, index, n_pos, simple, norms6, sums, fund })
    }

    pub fn algebra_type(&self) -> AlgebraType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Six times the Gram matrix.
    pub fn gram6(&self) -> &[Vec<i64>] {
        &self.gram6
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Coordinates of root `i`. Indices below `num_positive()` are positive
    /// roots by height then lexicographic order; index `i + N` is `−root(i)`.
    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> {
        0..self.n_pos
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn index_of_q(&self, w: &[Rational]) -> Option<usize> {
        let c: Option<Vec<i64>> =
            w.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect();
        c.and_then(|c| self.index_of(&c))
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    /// Index of the root `α_{i+1}` (zero-based `i`).
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn highest_root(&self) -> usize {
        self.n_pos - 1
    }

    /// Index of `root(a) + root(b)` when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let k = self.sums[a * self.roots.len() + b];
        (k != NONE).then_some(k as usize)
    }

    pub fn diff(&self, a: usize, b: usize) -> Option<usize> {
        self.sum(a, self.neg(b))
    }

    pub fn norm2(&self, i: usize) -> Rational {
        Rational::new(BigInt::from(self.norms6[i]), BigInt::from(6))
    }

    pub fn max_norm2(&self) -> Rational {
        ri(2)
    }

    /// Long-root test; in simply-laced types every root is long.
    pub fn is_long(&self, i: usize) -> bool {
        self.norms6[i] == 12
    }

    pub fn inner_int(&self, a: &[i64], b: &[i64]) -> Rational {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a[i] != 0 {
                for j in 0..n {
                    s += a[i] * self.gram6[i][j] * b[j];
                }
            }
        }
        Rational::new(BigInt::from(s), BigInt::from(6))
    }

    pub fn inner_roots(&self, a: usize, b: usize) -> Rational {
        self.inner_int(&self.roots[a], &self.roots[b])
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let n = self.rank();
        let mut s = Rational::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[j].is_zero() && !self.gram[i][j].is_zero() {
                    s += &a[i] * &self.gram[i][j] * &b[j];
                }
            }
        }
        s
    }

    /// `⟨β, α∨⟩ = 2⟨β,α⟩/⟨α,α⟩` for roots `β = root(b)`, `α = root(a)`.
    pub fn pair_coroot(&self, b: usize, a: usize) -> i64 {
        let num: i64 = 2 * {
            let (x, y) = (&self.roots[b], &self.roots[a]);
            let n = self.rank();
            let mut s = 0;
            for i in 0..n {
                if x[i] != 0 {
                    for j in 0..n {
                        s += x[i] * self.gram6[i][j] * y[j];
                    }
                }
            }
            s
        };
        num / self.norms6[a]
    }

    /// `⟨w, α_i∨⟩` for a rational weight in simple-root coordinates.
    pub fn pair_simple_coroot(&self, w: &[Rational], i: usize) -> Rational {
        let mut s = Rational::zero();
        for (k, x) in w.iter().enumerate() {
            if !x.is_zero() && self.cartan[k][i] != 0 {
                s += x * ri(self.cartan[k][i]);
            }
        }
        s
    }

    /// Simple reflection `s_i` applied in place.
    pub fn reflect(&self, w: &mut [Rational], i: usize) {
        let c = self.pair_simple_coroot(w, i);
        if !c.is_zero() {
            w[i] -= c;
        }
    }

    /// `(p, q)`: largest `j` with `β − jα ∈ Δ`, largest `j` with `β + jα ∈ Δ`.
    pub fn root_string(&self, a: usize, b: usize) -> Result<(usize, usize)> {
        if a >= self.num_roots() || b >= self.num_roots() {
            return Err(Error::NotARoot(format!("index {a} or {b}")));
        }
        if a == b || a == self.neg(b) {
            return Err(Error::NotARoot("β = ±α has no root string".into()));
        }
        let walk = |step: i64| {
            let mut cur = self.roots[b].clone();
            let mut j = 0;
            loop {
                for (c, x) in cur.iter_mut().zip(&self.roots[a]) {
                    *c += step * x;
                }
                if self.index.contains_key(&cur) {
                    j += 1;
                } else {
                    return j;
                }
            }
        };
        Ok((walk(-1), walk(1)))
    }

    /// Fundamental weight `λ_i` (one-based `i`) in simple-root coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Result<Vec<Rational>> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(self.fund[i - 1].clone())
    }

    /// Positive roots supported on the simple roots in `subset` (zero-based).
    pub fn positive_roots_in(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n_pos)
            .filter(|&r| self.roots[r].iter().enumerate().all(|(k, &c)| c == 0 || subset.contains(&k)))
            .collect()
    }

    /// Half-sum of the positive roots supported on `subset`.
    pub fn rho(&self, subset: &[usize]) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); self.rank()];
        for r in self.positive_roots_in(subset) {
            for (x, &c) in w.iter_mut().zip(&self.roots[r]) {
                *x += ri(c);
            }
        }
        w.iter().map(|x| x / ri(2)).collect()
    }

    /// Weyl dimension of the irreducible module of the subsystem spanned by
    /// `subset` with highest weight `hw`.
    pub fn weyl_dimension(&self, hw: &[Rational], subset: &[usize]) -> BigInt {
        let rho = self.rho(subset);
        let shifted: Vec<Rational> = hw.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut num = Rational::one();
        for r in self.positive_roots_in(subset) {
            let a = to_q(&self.roots[r]);
            num *= self.inner(&shifted, &a) / self.inner(&rho, &a);
        }
        debug_assert!(num.is_integer());
        num.to_integer()
    }

    /// `ε`-coordinates of a weight for classical families.
    pub fn to_epsilon(&self, w: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.rank();
        let fam = self.ty.family;
        let dim = if fam == Family::A { n + 1 } else { n };
        let mut v = vec![Rational::zero(); dim];
        for (i, c) in w.iter().enumerate() {
            let last = i == n - 1;
            match fam {
                Family::A => {
                    v[i] += c;
                    v[i + 1] -= c;
                }
                Family::B | Family::C if last => {
                    v[i] += if fam == Family::C { c * ri(2) } else { c.clone() };
                }
                Family::D if last => {
                    v[i - 1] += c;
                    v[i] += c;
                }
                Family::B | Family::C | Family::D => {
                    v[i] += c;
                    v[i + 1] -= c;
                }
                _ => return None,
            }
        }
        Some(v)
    }

    /// Inverse of [`RootSystem::to_epsilon`], `None` outside the weight span.
    pub fn from_epsilon(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.rank();
        let fam = self.ty.family;
        if !fam.is_classical() || v.len() != if fam == Family::A { n + 1 } else { n } {
            return None;
        }
        let prefix = |k: usize| v[..k].iter().fold(Rational::zero(), |a, x| a + x);
        let mut c: Vec<Rational> = (1..=n).map(prefix).collect();
        match fam {
            Family::C => c[n - 1] = prefix(n) / ri(2),
            Family::D => {
                let p = prefix(n - 2);
                c[n - 1] = (&v[n - 2] + &v[n - 1] + &p) / ri(2);
                c[n - 2] = (&v[n - 2] - &v[n - 1] + &p) / ri(2);
            }
            _ => {}
        }
        (self.to_epsilon(&c)? == v).then_some(c)
    }

    /// Human-readable form in simple-root coordinates, e.g. `α1+2α2`.
    pub fn fmt_simple(&self, w: &[Rational]) -> String {
        fmt_linear(w, "α", 1)
    }

    /// Human-readable `ε` form for classical families, e.g. `ε1+ε2`.
    pub fn fmt_epsilon(&self, w: &[Rational]) -> Option<String> {
        self.to_epsilon(w).map(|v| fmt_linear(&v, "ε", 1))
    }

    /// `ε` form when available, simple-root form otherwise.
    pub fn fmt_weight(&self, w: &[Rational]) -> String {
        self.fmt_epsilon(w).unwrap_or_else(|| self.fmt_simple(w))
    }

    pub fn fmt_root(&self, i: usize) -> String {
        self.fmt_weight(&to_q(&self.roots[i]))
    }
}

pub fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| ri(x)).collect()
}

fn fmt_linear(w: &[Rational], sym: &str, base: usize) -> String {
    let mut out = String::new();
    for (i, c) in w.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            if a.is_integer() {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("({a})"));
            }
        }
        out.push_str(&format!("{sym}{}", i + base));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `ε`-notation like `ε1+ε3`, `2e1-e4`, `(1/2)ε2` into a vector of length `dim`.
pub fn parse_epsilon(s: &str, dim: usize) -> Result<Vec<Rational>> {
    let err = || Error::Parse(s.to_string());
    let t: String = s.replace('ε', "e").chars().filter(|c| !c.is_whitespace()).collect();
    let mut v = vec![Rational::zero(); dim];
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let neg = rest.starts_with('-');
        if rest.starts_with('-') || rest.starts_with('+') {
            rest = &rest[1..];
        }
        let epos = rest.find('e').ok_or_else(err)?;
        let coef = rest[..epos].trim_start_matches('(').trim_end_matches(')');
        let mut c = if coef.is_empty() {
            Rational::one()
        } else if let Some((a, b)) = coef.split_once('/') {
            Rational::new(a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?)
        } else {
            Rational::from_integer(coef.parse().map_err(|_| err())?)
        };
        if neg {
            c = -c;
        }
        rest = &rest[epos + 1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let k: usize = rest[..end].parse().map_err(|_| err())?;
        if k == 0 || k > dim {
            return Err(err());
        }
        v[k - 1] += c;
        rest = &rest[end..];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn rank_restrictions() {
        assert!(AlgebraType::new(Family::E, 5).is_err());
        assert!(AlgebraType::new(Family::D, 2).is_err());
        assert!(AlgebraType::new(Family::G, 2).is_ok());
        assert!("F5".parse::<AlgebraType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            ("A5", 15),
            ("B4", 16),
            ("C6", 36),
            ("D8", 56),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (t, n) in cases {
            assert_eq!(rs(t).num_positive(), n, "{t}");
        }
    }

    #[test]
    fn highest_root_b4_and_a5() {
        let b4 = rs("B4");
        assert_eq!(b4.root(b4.highest_root()), &[1, 2, 2, 2]);
        let a5 = rs("A5");
        assert_eq!(a5.root(a5.highest_root()), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn root_string_a2_and_b2() {
        let a2 = rs("A2");
        assert_eq!(a2.root_string(a2.simple(0), a2.simple(1)).unwrap(), (0, 1));
        let b2 = rs("B2");
        // α2 short, α1 long: α1 + α2, α1 + 2α2 are roots.
        assert_eq!(b2.root_string(b2.simple(1), b2.simple(0)).unwrap(), (0, 2));
        assert!(b2.root_string(0, 0).is_err());
    }

    #[test]
    fn string_length_matches_coroot_pairing() {
        for t in ["B5", "C4", "D5", "E6", "F4", "G2"] {
            let r = rs(t);
            for a in 0..r.num_roots() {
                for b in 0..r.num_roots() {
                    if a == b || a == r.neg(b) {
                        continue;
                    }
                    let (p, q) = r.root_string(a, b).unwrap();
                    assert_eq!(p as i64 - q as i64, r.pair_coroot(b, a), "{t}");
                }
            }
        }
    }

    #[test]
    fn long_root_string_lemma() {
        for t in ["B6", "C5", "D6", "E7", "F4"] {
            let r = rs(t);
            for a in (0..r.num_roots()).filter(|&a| r.is_long(a)) {
                for b in 0..r.num_roots() {
                    if a == b || a == r.neg(b) {
                        continue;
                    }
                    let plus = r.sum(b, a).is_some();
                    let minus = r.diff(b, a).is_some();
                    if minus {
                        assert_eq!(r.pair_coroot(b, a), 1);
                    }
                    if plus {
                        assert_eq!(r.pair_coroot(b, a), -1);
                    }
                    assert!(!(plus && minus));
                    let (p, q) = r.root_string(a, b).unwrap();
                    assert!(p <= 1 && q <= 1);
                }
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for t in ["B3", "C4", "E8", "F4", "G2"] {
            let r = rs(t);
            for i in 1..=r.rank() {
                let l = r.fundamental_weight(i).unwrap();
                for j in 0..r.rank() {
                    let expect = if j + 1 == i { ri(1) } else { ri(0) };
                    assert_eq!(r.pair_simple_coroot(&l, j), expect);
                }
            }
            assert!(r.fundamental_weight(0).is_err());
            assert!(r.fundamental_weight(r.rank() + 1).is_err());
        }
        let b3 = rs("B3");
        assert_eq!(b3.pair_simple_coroot(&b3.fundamental_weight(3).unwrap(), 0), ri(0));
    }

    #[test]
    fn adjoint_dimension_from_weyl_formula() {
        for t in ["A4", "B5", "C4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(t);
            let all: Vec<usize> = (0..r.rank()).collect();
            let hw = to_q(r.root(r.highest_root()));
            let d = r.weyl_dimension(&hw, &all);
            assert_eq!(d, BigInt::from(r.num_roots() + r.rank()), "{t}");
        }
    }

    #[test]
    fn normalisation() {
        for t in ["B5", "C5", "F4"] {
            let r = rs(t);
            let norms: std::collections::BTreeSet<Rational> = (0..r.num_roots()).map(|i| r.norm2(i)).collect();
            assert_eq!(norms.into_iter().collect::<Vec<_>>(), vec![ri(1), ri(2)]);
        }
    }

    #[test]
    fn epsilon_round_trip() {
        for t in ["A4", "B6", "C5", "D7"] {
            let r = rs(t);
            for i in 0..r.num_roots() {
                let w = to_q(r.root(i));
                let e = r.to_epsilon(&w).unwrap();
                assert_eq!(r.from_epsilon(&e).unwrap(), w);
            }
        }
        let b5 = rs("B5");
        let hw = to_q(b5.root(b5.highest_root()));
        assert_eq!(b5.fmt_epsilon(&hw).unwrap(), "ε1+ε2");
        let c5 = rs("C5");
        assert_eq!(c5.fmt_root(c5.highest_root()), "2ε1");
        assert_eq!(parse_epsilon("2ε1-e3", 4).unwrap(), vec![ri(2), ri(0), ri(-1), ri(0)]);
    }
}
