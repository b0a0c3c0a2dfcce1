use proptest::prelude::*;
use qvertex_fock::{heisenberg_scalar, vacuum, FockKey, FockVector};
use qvertex_scalar::{sym_q_int, FieldElem, Module};
use qvertex_series::CoeffSeries;
use qvertex_vertexops::{
    apply_truncated, make_operator, normal_ordered_apply, normal_ordered_table, product_apply,
    OperatorExpr, ShiftPoly, Table,
};
use std::collections::BTreeMap;

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn key(parts: &[u32], j: i64) -> FockVector {
    FockVector::basis(FockKey::new(parts.to_vec(), j))
}

fn probes() -> Vec<FockVector> {
    vec![vacuum(0), key(&[1], 0), vacuum(2)]
}

/// `exp(sum_r c_r a(sign r) z^(sign r))` applied by summing powers of the
/// exponent, each power computed with single-mode actions.
fn brute_exp(
    v: &FockVector,
    c: impl Fn(u32) -> FieldElem,
    annihilate: bool,
    max_r: u32,
) -> BTreeMap<i64, FockVector> {
    let mut total: BTreeMap<i64, FockVector> = BTreeMap::from([(0, v.clone())]);
    let mut power: BTreeMap<i64, FockVector> = BTreeMap::from([(0, v.clone())]);
    for n in 1..=max_r {
        let mut next: BTreeMap<i64, FockVector> = BTreeMap::new();
        for (e, w) in &power {
            for r in 1..=max_r {
                let mode = if annihilate { r as i64 } else { -(r as i64) };
                let a = w.heis_act(mode).unwrap().scale(&c(r));
                if a.is_zero() {
                    continue;
                }
                let e2 = if annihilate {
                    e - r as i64
                } else {
                    e + r as i64
                };
                if e2.abs() > max_r as i64 {
                    continue;
                }
                next.entry(e2)
                    .or_insert_with(FockVector::zero)
                    .add_assign_ref(&a);
            }
        }
        for w in next.values_mut() {
            *w = w.scale(&FieldElem::ratio(1, n as i64));
        }
        for (e, w) in &next {
            total
                .entry(*e)
                .or_insert_with(FockVector::zero)
                .add_assign_ref(w);
        }
        power = next;
    }
    total
}

/// `x(z) v` through degree `max_r`, by the brute-force exponentials.
fn brute_x(v: &FockVector, max_r: u32) -> BTreeMap<i64, FockVector> {
    let c = |r: u32| &FieldElem::v_pow(-(r as i64)) / &sym_q_int(r as i64);
    let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
    for (k, x) in v.iter() {
        let ann = brute_exp(
            &FockVector::term(k.clone(), x.clone()),
            |r| -c(r),
            true,
            max_r,
        );
        for (e, w) in ann {
            let w = w.lattice_translate(2);
            let shift = 2 * e + 2 * k.label();
            let cre = brute_exp(&w, c, false, max_r);
            for (e2, w2) in cre {
                out.entry(shift + 2 * e2)
                    .or_insert_with(FockVector::zero)
                    .add_assign_ref(&w2);
            }
        }
    }
    out
}

#[test]
fn x_matches_brute_force_expansion() {
    let x = make_operator("x").unwrap();
    for v in [vacuum(0), key(&[1], 0), key(&[2, 1], 2), key(&[1, 1], -2)] {
        let s = apply_truncated(&x, &v, -8, 4).unwrap();
        let b = brute_x(&v, 6);
        for e in (-8..=4).step_by(2) {
            let want = b.get(&e).cloned().unwrap_or_else(FockVector::zero);
            assert_eq!(s.coeff(e), want, "v = {v}, exponent {e}");
        }
    }
}

#[test]
fn scale_substitution_rescales_coefficients() {
    let x = make_operator("x").unwrap();
    let xs = x.scale_subst(4);
    for v in probes() {
        let a = apply_truncated(&x, &v, -6, 8).unwrap();
        let b = apply_truncated(&xs, &v, -6, 8).unwrap();
        for e in (-6..=8).step_by(2) {
            assert_eq!(b.coeff(e), a.coeff(e).scale(&FieldElem::v_pow(2 * e)));
        }
    }
}

#[test]
fn x_hat_equals_x_times_k_hat() {
    let xh = make_operator("x_hat").unwrap();
    let xk = make_operator("x")
        .unwrap()
        .mul(&make_operator("k_hat").unwrap());
    for v in probes() {
        let a = apply_truncated(&xh, &v, -6, 8).unwrap();
        let b = apply_truncated(&xk, &v, -6, 8).unwrap();
        assert!(a.agrees_with(&b));
    }
}

fn check_relation(lhs: &Table, rhs: &Table) {
    if let Some((k, a, b)) = lhs.first_difference(rhs) {
        panic!("differ at {k:?}: {a} vs {b}");
    }
}

fn poly(ts: &[((i64, i64), FieldElem)]) -> ShiftPoly {
    ShiftPoly::from_terms(2, ts.iter().map(|((a, b), c)| (vec![*a, *b], c.clone())))
}

#[test]
fn x_x_reordering_factor() {
    let x = make_operator("x").unwrap();
    let w = [(-10, 10), (-10, 10)];
    let q2 = FieldElem::q_pow(-2);
    let f = poly(&[
        ((4, 0), fe(1)),
        ((2, 2), -(&fe(1) + &q2)),
        ((0, 4), q2.clone()),
    ]);
    for v in probes() {
        let lhs = product_apply(&[(x.clone(), 0), (x.clone(), 1)], &v, &w).unwrap();
        let n = normal_ordered_table(
            &[(x.clone(), 0), (x.clone(), 1)],
            &v,
            &[(-14, 10), (-14, 10)],
        )
        .unwrap();
        let rhs = n.mul_poly(&f, w.to_vec());
        assert!(!lhs.is_zero());
        check_relation(&lhs, &rhs);
    }
}

#[test]
fn x_y_commute_with_linear_factor() {
    let x = make_operator("x").unwrap();
    let y = make_operator("Y").unwrap();
    let w = [(-10, 10), (-10, 10)];
    let f = poly(&[((2, 0), fe(1)), ((0, 2), fe(-1))]);
    for v in probes() {
        let a = product_apply(&[(x.clone(), 0), (y.clone(), 1)], &v, &w).unwrap();
        let b = product_apply(&[(y.clone(), 1), (x.clone(), 0)], &v, &w).unwrap();
        let n = normal_ordered_table(
            &[(x.clone(), 0), (y.clone(), 1)],
            &v,
            &[(-12, 10), (-12, 10)],
        )
        .unwrap();
        check_relation(&a, &b);
        check_relation(&a, &n.mul_poly(&f, w.to_vec()));
    }
}

#[test]
fn same_variable_products_vanish() {
    let x = make_operator("x").unwrap();
    let xx = x.mul(&x);
    let xxq = x.mul(&x.scale_subst(4));
    let xh = make_operator("x_hat").unwrap();
    for v in probes() {
        assert!(apply_truncated(&xx, &v, -10, 10).unwrap().is_zero());
        assert!(apply_truncated(&xxq, &v, -10, 10).unwrap().is_zero());
        assert!(apply_truncated(&xh.mul(&xh), &v, -10, 10)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn normal_ordered_products_survive() {
    let x = make_operator("x").unwrap();
    let s = normal_ordered_apply(&[(x.clone(), 0), (x.clone(), 4)], &vacuum(0), 0, 8).unwrap();
    assert!(!s.coeff(4).is_zero());
    let xh = make_operator("x_hat").unwrap();
    let s = normal_ordered_apply(&[(xh.clone(), 0), (xh, 0)], &vacuum(0), 0, 8).unwrap();
    assert!(!s.is_zero());
    let one = normal_ordered_apply(&[(x.clone(), 0)], &vacuum(0), -4, 8).unwrap();
    assert!(one.agrees_with(&apply_truncated(&x, &vacuum(0), -4, 8).unwrap()));
}

fn coefficient_derivative(
    s: &CoeffSeries<FockVector>,
    lo: i64,
    hi: i64,
) -> CoeffSeries<FockVector> {
    let mut out = CoeffSeries::new(lo, hi);
    for e in (lo..=hi).step_by(2) {
        let c = s.coeff(e + 2).scale(&FieldElem::ratio(e + 2, 2));
        out.add_at(e, &c);
    }
    out
}

#[test]
fn leibniz_derivative_matches_coefficients() {
    let x = make_operator("x").unwrap();
    let p = x.mul(&x.scale_subst(8));
    let d = p.classical_derive_n(1);
    for v in probes() {
        let s = apply_truncated(&p, &v, -10, 12).unwrap();
        let ds = apply_truncated(&d, &v, -10, 10).unwrap();
        assert!(!s.is_zero());
        assert!(ds.agrees_with(&coefficient_derivative(&s, -10, 10)), "{v}");
    }
}

#[test]
fn q_derivative_of_operator_matches_coefficients() {
    let x = make_operator("x").unwrap();
    let d = x.qderive();
    for v in probes() {
        let s = apply_truncated(&x, &v, -8, 10).unwrap();
        let ds = apply_truncated(&d, &v, -8, 8).unwrap();
        for e in (-8..=8).step_by(2) {
            let want = s.coeff(e + 2).scale(&qvertex_scalar::qq_int_half(e + 2));
            assert_eq!(ds.coeff(e), want);
        }
    }
}

#[test]
fn heisenberg_scalar_values() {
    assert_eq!(
        heisenberg_scalar(1),
        &FieldElem::q() + &FieldElem::q_pow(-1)
    );
}

#[test]
fn unit_operator_is_identity() {
    let v = key(&[2, 1], 1);
    let s = apply_truncated(&OperatorExpr::unit(), &v, -4, 4).unwrap();
    assert_eq!(s.coeff(0), v);
    assert_eq!(s.len(), 1);
}

fn small_vector() -> impl Strategy<Value = FockVector> {
    proptest::collection::vec((0u32..3, 0u32..3, -2i64..3, -3i64..4), 1..4).prop_map(|ts| {
        let mut v = FockVector::zero();
        for (a, b, j, c) in ts {
            let parts: Vec<u32> = [a, b].into_iter().filter(|&p| p > 0).collect();
            v.add_term(FockKey::new(parts, j), &fe(c));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_linear(a in small_vector(), b in small_vector(), c in -3i64..4) {
        let y = make_operator("Y_hat").unwrap();
        let sum = a.add(&b.scale(&fe(c)));
        let lhs = apply_truncated(&y, &sum, -9, 7).unwrap();
        let rhs = apply_truncated(&y, &a, -9, 7).unwrap()
            .add(&apply_truncated(&y, &b, -9, 7).unwrap().scale(&fe(c)));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn scale_substitution_composes(u1 in -2i64..3, u2 in -2i64..3) {
        let x = make_operator("x").unwrap();
        prop_assert_eq!(x.scale_subst(4 * u1).scale_subst(4 * u2), x.scale_subst(4 * (u1 + u2)));
    }
}
