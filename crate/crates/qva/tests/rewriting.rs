use proptest::prelude::*;
use qvertex_fock::{vacuum, FockKey};
use qvertex_qva::*;
use qvertex_scalar::{qq_int, FieldElem};
use qvertex_vertexops::{apply_truncated, make_operator, OperatorExpr};

fn x(idx: &[i64]) -> QVAMonomial {
    QVAMonomial::x(idx, Tail::Unit)
}

fn xh(idx: &[i64]) -> QVAMonomial {
    QVAMonomial::x_hat(idx, Tail::Unit)
}

fn agrees(m: &QVAMonomial, comb: &LinComb) {
    let mut ev = Evaluator::new(default_probes(), -12, 12);
    assert_eq!(evaluation_agrees(m, comb, &mut ev).unwrap(), None, "{m}");
}

#[test]
fn creation_on_vacuum() {
    let s = eval_monomial(&x(&[-1]), &vacuum(0), -4, 4).unwrap();
    assert_eq!(s.valuation(), Some(0));
    let c0 = s.coeff(0);
    assert_eq!(c0.len(), 1);
    assert_eq!(c0.coeff(&FockKey::new(vec![], 2)), Some(&FieldElem::one()));
}

#[test]
fn square_vanishes() {
    assert!(eval_monomial(&x(&[-1, -1]), &vacuum(0), -16, 16).unwrap().is_zero());
}

#[test]
fn proportionality_constant_value() {
    // n = 2 in both rewriting relations: subtracting them isolates x_(-2)x_(-2)
    let two = qq_int(2);
    let want = -(&two / &(&two - &FieldElem::one()));
    assert_eq!(want, -(&(FieldElem::one() + FieldElem::qq()) / &FieldElem::qq()));
    let c = proportionality_constant().unwrap();
    assert_eq!(c, want);
    for v in default_probes() {
        let a = eval_monomial(&x(&[-2, -2]), &v, -12, 12).unwrap();
        let b = eval_monomial(&x(&[-3, -1]), &v, -12, 12).unwrap();
        assert!(a.agrees_with(&b.scale(&c)));
    }
}

#[test]
fn commutative_straightening_examples() {
    let straight = xh(&[-4, -1]);
    let out = straighten_commutative(&straight).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out.get(&straight), Some(&FieldElem::one()));
    assert!(straighten_commutative(&xh(&[-1, -1])).unwrap().is_empty());
    let out = straighten_commutative(&xh(&[-2, -2])).unwrap();
    assert_eq!(out.keys().collect::<Vec<_>>(), vec![&xh(&[-3, -1])]);
    agrees(&xh(&[-2, -2]), &out);
    assert!(straighten_commutative(&x(&[-1])).is_err());
}

#[test]
fn noncommutative_reduction_examples() {
    let basic = x(&[-3, -1]);
    let out = reduce_noncommutative(&basic).unwrap();
    assert_eq!(out.get(&basic), Some(&FieldElem::one()));
    assert_eq!(out.len(), 1);
    assert!(reduce_noncommutative(&x(&[-1, -2])).unwrap().is_empty());

    let m = x(&[-1, -3]);
    let out = reduce_noncommutative(&m).unwrap();
    assert!(!out.is_empty());
    for t in out.keys() {
        assert!(t.is_gap_basic(), "{t}");
        assert_eq!(t.indices.iter().sum::<i64>(), -4);
    }
    // x_(-1)x_(-3) = qq^-1 x_(-3)x_(-1)
    assert_eq!(out.get(&x(&[-3, -1])), Some(&FieldElem::qq_pow(-1)));
    agrees(&m, &out);
    assert!(reduce_noncommutative(&xh(&[-1])).is_err());
}

#[test]
fn nonnegative_index_is_zero() {
    assert!(rewrite(&x(&[0, -1])).unwrap().is_empty());
    assert!(rewrite(&xh(&[-2, 3])).unwrap().is_empty());
    let a = make_operator("x").unwrap();
    assert!(rth_product(&a, &a, 0).is_zero());
    assert!(rth_product_classical(&a, &a, 2).is_zero());
}

#[test]
fn tail_zeroes() {
    assert!(rewrite(&QVAMonomial::x(&[-1], Tail::Y)).unwrap().is_empty());
    assert!(rewrite(&QVAMonomial::x_hat(&[-1], Tail::YHat)).unwrap().is_empty());
    let e = eval_monomial(&QVAMonomial::x(&[-1], Tail::Y), &vacuum(0), -12, 12).unwrap();
    assert!(e.is_zero());
}

#[test]
fn ymap_low_orders() {
    let a = make_operator("x").unwrap();
    let ys = ymap(&a, 2);
    assert_eq!(ys.len(), 3);
    let unit = ymap(&OperatorExpr::unit(), 2);
    for v in default_probes() {
        let lhs = apply_truncated(&ys[0], &v, -10, 10).unwrap();
        assert!(lhs.agrees_with(&apply_truncated(&a, &v, -10, 10).unwrap()));
        let d = apply_truncated(&a.qderive(), &v, -10, 10).unwrap();
        assert!(apply_truncated(&ys[1], &v, -10, 10).unwrap().agrees_with(&d));
        assert!(apply_truncated(&unit[0], &v, -10, 10).unwrap().agrees_with(
            &apply_truncated(&OperatorExpr::unit(), &v, -10, 10).unwrap()
        ));
        assert!(apply_truncated(&unit[1], &v, -10, 10).unwrap().is_zero());
    }
}

#[test]
fn scalar_substitution_identity() {
    // sum over r,s <= 4 of (s + 1) choices of l
    assert_eq!(last_identity_check(4).unwrap(), 5 * (1 + 2 + 3 + 4 + 5));
}

#[test]
fn monomial_grammar() {
    let m: QVAMonomial = "x:[-4,-3,-5,-2]:Y".parse().unwrap();
    assert_eq!(m, QVAMonomial::x(&[-4, -3, -5, -2], Tail::Y));
    assert_eq!(m.to_string(), "x:[-4,-3,-5,-2]:Y");
    assert_eq!(m.l(1), -2);
    assert!("x:[-1]:Yhat".parse::<QVAMonomial>().is_err());
    assert!("x:[-1,]:unit".parse::<QVAMonomial>().is_err());
    assert!("xhat:[]:Yhat".parse::<QVAMonomial>().is_ok());
}

#[test]
fn small_soundness_sweep() {
    let r = straightening_soundness(2, 5, default_probes(), (-12, 12)).unwrap();
    assert!(r.passed, "{r}");
    assert_eq!(r.checks, 4 * index_lists(2, 5).len());
}

fn shape() -> impl Strategy<Value = QVAMonomial> {
    (
        prop::collection::vec(-7i64..=-1, 0..4),
        0usize..4,
    )
        .prop_map(|(idx, s)| {
            let (flavor, tail) = [
                (Flavor::Noncommutative, Tail::Unit),
                (Flavor::Noncommutative, Tail::Y),
                (Flavor::Commutative, Tail::Unit),
                (Flavor::Commutative, Tail::YHat),
            ][s];
            QVAMonomial::new(flavor, idx, tail).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewriting_lands_in_spanning_set(m in shape()) {
        let out = rewrite(&m).unwrap();
        for (t, c) in &out {
            prop_assert!(t.is_basic(), "{} -> {}", m, t);
            prop_assert!(!c.is_zero());
            prop_assert_eq!(t.flavor, m.flavor);
            prop_assert_eq!(t.tail, m.tail);
            prop_assert_eq!(t.len(), m.len());
            prop_assert_eq!(t.weight(), m.weight());
        }
    }

    #[test]
    fn rewriting_fixes_basic_monomials(m in shape()) {
        if m.is_basic() && !(m.tail != Tail::Unit && m.len() > 0 && m.l(1) == -1) {
            let out = rewrite(&m).unwrap();
            prop_assert_eq!(out.len(), 1);
            prop_assert_eq!(out.get(&m), Some(&FieldElem::one()));
        }
    }
}
