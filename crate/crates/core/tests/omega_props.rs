use cis_core::omega::{
    bracket_at_identity, build_omega2_lowest, generate_system, lowest_vector, omega, q_basis, tau_k, tau_tilde,
    TensorElement,
};
use cis_core::parabolic::{build_case, ParabolicCase, ParabolicSpec};
use cis_core::tensor::special_constituents;
use cis_core::{AlgebraElement, Label, QuadExt, SPoly};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn case(s: &str) -> ParabolicCase {
    build_case(&s.parse::<ParabolicSpec>().unwrap()).unwrap()
}

fn b7_4() -> &'static ParabolicCase {
    static C: OnceLock<ParabolicCase> = OnceLock::new();
    C.get_or_init(|| case("B7(4)"))
}

fn e6_3() -> &'static ParabolicCase {
    static C: OnceLock<ParabolicCase> = OnceLock::new();
    C.get_or_init(|| case("E6(3)"))
}

/// `X_{±α_i}` for the simple roots of `l`.
fn levi_generators(c: &ParabolicCase) -> Vec<AlgebraElement> {
    let rs = c.rs();
    c.levi_simples()
        .iter()
        .flat_map(|&i| [AlgebraElement::root(rs.simple(i)), AlgebraElement::root(rs.neg(rs.simple(i)))])
        .collect()
}

fn g1_element(c: &ParabolicCase, coeffs: &[i64]) -> AlgebraElement {
    AlgebraElement::from_terms(
        c.delta_g1.iter().zip(coeffs).filter(|(_, &k)| k != 0).map(|(&a, &k)| (Label::Root(a), QuadExt::from_int(k))),
    )
}

fn check_equivariance(c: &ParabolicCase, coeffs: &[i64], z_idx: usize, k: usize) -> Result<(), TestCaseError> {
    let m = &c.model;
    let zs = levi_generators(c);
    let z = &zs[z_idx % zs.len()];
    let x = g1_element(c, coeffs);
    let zx = m.bracket_raw(z, &x);
    let lhs = tau_k(c, k, &x).unwrap().act(m, z);
    let om = omega(c);
    let rhs = if k == 1 {
        om.apply_left(m, &zx)
    } else {
        let mut t = om.apply_left(m, &x).apply_left(m, &zx);
        t.add_scaled(&QuadExt::from_int(1), &om.apply_left(m, &zx).apply_left(m, &x));
        t.scale(&QuadExt::from_rational(cis_core::scalars::rat(1, 2)))
    };
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn tau_is_levi_equivariant_b(coeffs in proptest::collection::vec(-3i64..4, 24), z in 0usize..64, k in 1usize..3) {
        check_equivariance(b7_4(), &coeffs, z, k)?;
    }

    #[test]
    fn tau_is_levi_equivariant_e(coeffs in proptest::collection::vec(-3i64..4, 20), z in 0usize..64, k in 1usize..3) {
        check_equivariance(e6_3(), &coeffs, z, k)?;
    }

    #[test]
    fn bracket_engine_respects_jacobi(zi in 0usize..1000, yi in 0usize..1000, di in 0usize..1000) {
        let c = b7_4();
        let m = &c.model;
        let sc = special_constituents(c).unwrap().remove(0);
        let lowest = build_omega2_lowest(c, &sc).unwrap();
        let sys = generate_system(c, &sc, &lowest).unwrap();
        let levi: Vec<Label> = q_basis(c)
            .into_iter()
            .filter(|l| !matches!(*l, Label::Root(r) if c.grade(r) != 0))
            .collect();
        let all: Vec<Label> = m.labels().collect();
        let z = AlgebraElement::basis(levi[zi % levi.len()]);
        let y = AlgebraElement::basis(all[yi % all.len()]);
        let d = &sys.operators[di % sys.operators.len()];
        let direct = bracket_at_identity(c, &m.bracket_raw(&z, &y), d).unwrap();
        let mut nested = bracket_at_identity(c, &z, &bracket_at_identity(c, &y, d).unwrap()).unwrap();
        let other = bracket_at_identity(c, &y, &bracket_at_identity(c, &z, d).unwrap()).unwrap();
        nested.add_scaled(&SPoly::constant(QuadExt::from_int(-1)), &other);
        prop_assert_eq!(direct, nested);
    }
}

#[test]
fn tau_of_mu_plus_epsilon_is_multiple_of_double_bracket() {
    for label in ["B7(3)", "D8(4)", "E7(6)", "F4(4)"] {
        let c = case(label);
        let m = &c.model;
        for sc in special_constituents(&c).unwrap().into_iter().filter(|s| s.kind.has_closed_form()) {
            let mut x = AlgebraElement::root(c.mu);
            x.add_term(Label::Root(sc.epsilon), &QuadExt::from_int(1));
            let t = tau_k(&c, 2, &x).unwrap();
            let d =
                omega(&c).apply_left(m, &AlgebraElement::root(sc.epsilon)).apply_left(m, &AlgebraElement::root(c.mu));
            let (key, dv) = d.iter().next().map(|(k, v)| (*k, v.clone())).unwrap();
            let a = &t.coeff(key.0, key.1) / &dv;
            assert!(!a.is_zero());
            assert_eq!(t, d.scale(&a), "{label}");
        }
    }
}

/// Kernel of a dense matrix over `ℚ(√2)` given by columns.
#[allow(clippy::needless_range_loop)]
fn kernel(cols: &[Vec<QuadExt>]) -> Vec<Vec<QuadExt>> {
    let n = cols.len();
    let rows = cols.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<QuadExt>> = (0..rows).map(|r| (0..n).map(|j| cols[j][r].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let d = &f * &a[r][j];
                    a[i][j] -= &d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut v = vec![QuadExt::zero(); n];
            v[free] = QuadExt::from_int(1);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][free].clone();
            }
            v
        })
        .collect()
}

#[test]
fn tau_two_vanishes_on_the_gamma_constituent() {
    for label in ["B7(4)", "D8(4)", "E6(3)", "F4(4)"] {
        let c = case(label);
        let rs = c.rs();
        let m = &c.model;
        let gamma = c.gamma;
        let mut basis: Vec<(Label, Label)> =
            (0..rs.rank()).map(|i| (Label::Cartan(i), Label::Root(rs.neg(gamma)))).collect();
        for &g in &c.delta_zn {
            if let Some(a) = rs.diff(g, gamma) {
                basis.push((Label::Root(a), Label::Root(rs.neg(g))));
            }
        }
        let lowering: Vec<AlgebraElement> =
            c.levi_simples().iter().map(|&i| AlgebraElement::root(rs.neg(rs.simple(i)))).collect();
        let images: Vec<Vec<TensorElement>> = basis
            .iter()
            .map(|&(a, b)| {
                let mut t = TensorElement::zero();
                t.add_term(a, b, &QuadExt::from_int(1));
                lowering.iter().map(|z| t.act(m, z)).collect()
            })
            .collect();
        let mut keys = std::collections::BTreeSet::new();
        for img in &images {
            for (i, t) in img.iter().enumerate() {
                for (k, _) in t.iter() {
                    keys.insert((i, *k));
                }
            }
        }
        let cols: Vec<Vec<QuadExt>> =
            images.iter().map(|img| keys.iter().map(|(i, (a, b))| img[*i].coeff(*a, *b)).collect()).collect();
        let ker = kernel(&cols);
        // One copy of V(γ)* from the centre of l, one from its derived part.
        assert_eq!(ker.len(), 2, "{label}: lowest vectors of weight −γ");
        for v in &ker {
            let mut y = TensorElement::zero();
            for (&(a, b), k) in basis.iter().zip(v) {
                y.add_term(a, b, k);
            }
            assert!(tau_tilde(&c, 2, &y).unwrap().is_zero(), "{label}");
        }
        for sc in special_constituents(&c).unwrap().into_iter().filter(|s| s.kind.has_closed_form()) {
            assert!(!tau_tilde(&c, 2, &lowest_vector(&c, &sc)).unwrap().is_zero());
        }
    }
}

#[test]
fn operator_weights_follow_the_raising_roots() {
    let c = case("D8(3)");
    let rs = c.rs();
    let sc = special_constituents(&c).unwrap().remove(0);
    let sys = generate_system(&c, &sc, &build_omega2_lowest(&c, &sc).unwrap()).unwrap();
    let lowest: Vec<i64> = sc.nu.iter().map(|x| -x).collect();
    for (y, op) in sys.duals.iter().zip(&sys.operators) {
        let (&(a, b), _) = y.iter().next().unwrap();
        let w: Vec<i64> = c.model.weight_of(a).iter().zip(c.model.weight_of(b)).map(|(x, y)| x + y).collect();
        assert_eq!(op.weight(rs).unwrap(), w);
        let lifted: Vec<i64> = w.iter().zip(&lowest).map(|(x, l)| x - l).collect();
        assert!(lifted.iter().all(|&x| x >= 0));
        assert!(lifted[c.q] == 0);
    }
}
