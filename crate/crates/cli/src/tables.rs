//! Reference special values and constituent types used by `verify`.

use cis_core::scalars::rat;
use cis_core::{Family, ParabolicSpec, Rational};

/// Expected constituent types and `s`-values, `l_γ` source first.
/// `None` marks a value without a closed form.
pub struct Expected {
    pub kinds: Vec<&'static str>,
    pub values: Vec<Option<Rational>>,
}

fn exp(kinds: &[&'static str], values: &[Option<(i64, i64)>]) -> Expected {
    Expected { kinds: kinds.to_vec(), values: values.iter().map(|v| v.map(|(a, b)| rat(a, b))).collect() }
}

pub fn expected(spec: &ParabolicSpec) -> Option<Expected> {
    if !spec.is_maximal() {
        return None;
    }
    let n = spec.algebra_type.rank as i64;
    let i = spec.subset[0] as i64;
    let e = match (spec.algebra_type.family, n, i) {
        (Family::B, _, _) if i == n => exp(&["2"], &[Some((-1, 1))]),
        (Family::B, _, _) if i == n - 1 => exp(&["1a", "1b"], &[Some((1, 2)), None]),
        (Family::B, _, _) if (3..=n - 2).contains(&i) => {
            exp(&["1a", "1a"], &[Some((2 * (n - i) - 1, 2)), Some((1, 1))])
        }
        (Family::C, _, _) if (2..=n - 1).contains(&i) => exp(&["3", "2"], &[None, Some((-1, 1))]),
        (Family::D, _, _) if (3..=n - 3).contains(&i) => exp(&["1a", "1a"], &[Some((n - i - 1, 1)), Some((1, 1))]),
        (Family::E, 6, 3) | (Family::E, 6, 5) => exp(&["1a", "1a"], &[Some((1, 1)), Some((2, 1))]),
        (Family::E, 7, 2) => exp(&["1a"], &[Some((2, 1))]),
        (Family::E, 7, 6) => exp(&["1a", "1a"], &[Some((1, 1)), Some((3, 1))]),
        (Family::E, 8, 1) => exp(&["1a"], &[Some((3, 1))]),
        (Family::F, 4, 4) => exp(&["2"], &[Some((-1, 1))]),
        _ => return None,
    };
    Some(e)
}
