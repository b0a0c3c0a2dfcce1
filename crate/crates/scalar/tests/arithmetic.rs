use proptest::prelude::*;
use qvertex_scalar::{qq_binom, qq_factorial, qq_int, sym_q_int, FieldElem, Poly};

fn qq() -> FieldElem {
    FieldElem::qq()
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| Poly::from_i64s(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn field_strategy() -> impl Strategy<Value = FieldElem> {
    (poly_strategy(4), nonzero_poly(3), -6i64..=6)
        .prop_map(|(n, d, s)| &FieldElem::new(n, d).unwrap() * &FieldElem::v_pow(s))
}

#[test]
fn q_integers() {
    assert_eq!(qq_int(3), &(&FieldElem::one() + &qq()) + &qq().pow(2));
    assert!(qq_int(0).is_zero());
    assert_eq!(qq_int(-1), -FieldElem::qq_pow(-1));
    assert_eq!(qq_factorial(0).unwrap(), FieldElem::one());
    assert_eq!(qq_factorial(2).unwrap(), &FieldElem::one() + &qq());
    // direct product of (qq^k - 1)/(qq - 1)
    let direct: FieldElem = (1..=3)
        .map(|k| &(&qq().pow(k) - &FieldElem::one()) / &(&qq() - &FieldElem::one()))
        .product();
    assert_eq!(qq_factorial(3).unwrap(), direct);
    assert!(qq_factorial(-1).is_err());
    assert_eq!(qq_binom(2, 1), &FieldElem::one() + &qq());
    assert_eq!(qq_binom(-1, 2), FieldElem::qq_pow(-3));
    assert_eq!(qq_binom(3, 3), FieldElem::one());
    assert_eq!(sym_q_int(2), &FieldElem::q() + &FieldElem::q_pow(-1));
    assert!(sym_q_int(0).is_zero());
    assert!(sym_q_int(1).is_one());
}

#[test]
fn binomial_times_factorial_is_falling_product() {
    for m in -6..=6 {
        for l in 0..=6u32 {
            let falling: FieldElem = (0..l as i64).map(|i| qq_int(m - i)).product();
            assert_eq!(&qq_binom(m, l) * &qq_factorial(l as i64).unwrap(), falling, "m={m} l={l}");
        }
    }
}

#[test]
fn pascal_identity() {
    for m in -6..=6 {
        for l in 1..=6u32 {
            let rhs = &qq_binom(m - 1, l)
                + &(&FieldElem::qq_pow(m - l as i64) * &qq_binom(m - 1, l - 1));
            assert_eq!(qq_binom(m, l), rhs, "m={m} l={l}");
        }
    }
}

#[test]
fn normal_form() {
    let a: FieldElem = "(2*v^2-2)/(4*v-4)".parse().unwrap();
    assert_eq!(a, "(v+1)/(2)".parse().unwrap());
    let d = a.denominator();
    assert!(d.lead().unwrap() > &0.into());
    let b: FieldElem = "(1)/(-v)".parse().unwrap();
    assert!(b.denominator().lead().unwrap() > &0.into());
    assert_eq!(b, -FieldElem::v_pow(-1));
}

#[test]
fn render_and_parse_round_trip() {
    for x in [
        qq_int(-3),
        qq_binom(-2, 3),
        &sym_q_int(3) / &qq_int(4),
        FieldElem::ratio(-7, 12),
        FieldElem::zero(),
    ] {
        let back: FieldElem = x.to_string().parse().unwrap();
        assert_eq!(back, x, "{x}");
    }
}

#[test]
fn large_factorials_stay_exact() {
    let f = qq_factorial(30).unwrap();
    let g = &f / &qq_factorial(29).unwrap();
    assert_eq!(g, qq_int(30));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_is_greatest(a in nonzero_poly(6), b in nonzero_poly(6), c in nonzero_poly(4)) {
        let (x, y) = (a.mul(&c), b.mul(&c));
        let g = x.gcd(&y);
        prop_assert!(x.prem(&g).is_zero());
        prop_assert!(y.prem(&g).is_zero());
        prop_assert!(g.prem(&c.primitive()).is_zero());
        let h = x.div_exact(&g).gcd(&y.div_exact(&g));
        prop_assert!(h.is_constant());
    }

    #[test]
    fn gcd_with_sparse_factors(a in nonzero_poly(3), b in nonzero_poly(3), s in 1usize..4, t in 0usize..6) {
        // factors in v^s exercise the stride path; the v^t shift exercises the v-power strip
        let spread = |p: &Poly| {
            let mut c = vec![0i64; p.degree().unwrap() * s + 1];
            for (i, k) in p.coeffs().iter().enumerate() {
                c[i * s] = i64::try_from(k).unwrap();
            }
            Poly::from_i64s(&c)
        };
        let common = Poly::from_i64s(&[1, 0, 0, 1]);
        let x = spread(&a).mul(&common).shl(t);
        let y = spread(&b).mul(&common);
        let g = x.gcd(&y);
        prop_assert!(x.prem(&g).is_zero());
        prop_assert!(y.prem(&g).is_zero());
        prop_assert!(g.prem(&common).is_zero());
    }

    #[test]
    fn field_axioms(a in field_strategy(), b in field_strategy(), c in field_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn equality_matches_cross_multiplication(a in field_strategy(), b in field_strategy()) {
        let cross = a.numerator().mul(&b.denominator()) == b.numerator().mul(&a.denominator());
        prop_assert_eq!(a == b, cross);
    }
}
