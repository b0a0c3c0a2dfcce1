use proptest::prelude::*;
use qvertex_basis::*;
use qvertex_qva::{QVAMonomial, Tail};

/// Partitions of `n` into parts `>= min_part` differing pairwise by at least 2.
fn brute_force_count(n: i64, min_part: i64) -> u64 {
    fn go(rest: i64, smallest: i64) -> u64 {
        if rest == 0 {
            return 1;
        }
        (smallest..=rest).map(|p| go(rest - p, p + 2)).sum()
    }
    go(n, min_part)
}

fn oracle(i: u32, n: u32) -> Vec<u64> {
    (0..=n as i64).map(|d| brute_force_count(d, 1 + i as i64)).collect()
}

fn counts(id: &str, n: u32) -> Vec<usize> {
    enum_family(family(id).unwrap(), n).iter().map(Vec::len).collect()
}

#[test]
fn enumeration_examples() {
    assert_eq!(counts("hat-L0", 4), vec![1, 1, 1, 1, 2]);
    assert_eq!(counts("hat-L1", 1)[1], 0);
    let deg6 = &enum_family(family("W0qq").unwrap(), 6)[6];
    let m = QVAMonomial::x(&[-3, -2], Tail::Unit);
    assert!(deg6.iter().any(|e| e.monomial() == Some(&m)));
}

#[test]
fn enumeration_respects_membership() {
    for f in registry() {
        for (d, g) in enum_family(f, 14).iter().enumerate() {
            for e in g {
                assert!(f.admits(e.indices()), "{e}");
                assert_eq!(f.degree(e.indices()), d as i64);
            }
        }
    }
}

#[test]
fn d_statistics() {
    let m = QVAMonomial::x(&[-3, -2], Tail::Unit);
    assert_eq!(d_k(&m, 2).unwrap(), -4);
    assert_eq!(d_k(&m, 1).unwrap(), -2);
    assert!(d_k(&m, 3).is_err());
    assert!(d_k(&m, 0).is_err());
    assert_eq!(deg_qq(&m), 6);
    let fig = QVAMonomial::x(&[-4, -3, -5, -2], Tail::Y);
    assert_eq!(d_k(&fig, 4).unwrap(), -11);
    assert_eq!(deg_qq(&fig), 27);
    assert_eq!(deg_qq(&QVAMonomial::x(&[], Tail::Unit)), 0);
}

#[test]
fn completion_examples() {
    let fig = QVAMonomial::x(&[-4, -3, -5, -2], Tail::Y);
    let img = complete_diagram(&fig).unwrap();
    assert_eq!(img, Element::Modes { indices: vec![-11, -8, -6, -2], level: 1 });
    assert_eq!(img.to_string(), "xhat(-11)xhat(-8)xhat(-6)xhat(-2)v_L1");

    let m = QVAMonomial::x(&[-3, -1], Tail::Unit);
    assert_eq!(
        complete_diagram(&m).unwrap(),
        Element::Modes { indices: vec![-3, -1], level: 0 }
    );
    assert_eq!(Diagram::of(&m).added_boxes(), 0);

    let empty = QVAMonomial::x(&[], Tail::Y);
    assert_eq!(complete_diagram(&empty).unwrap().to_string(), "v_L1");
    assert!(complete_diagram(&QVAMonomial::x_hat(&[-1], Tail::Unit)).is_err());
}

#[test]
fn diagrams_render() {
    let d = Diagram::of(&QVAMonomial::x(&[-3, -3], Tail::Unit));
    assert_eq!(d.added_boxes(), 2);
    let art = d.to_string();
    let lines: Vec<&str> = art.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "[   ][  4]");
    assert_eq!(lines[4], "[  0]");
}

#[test]
fn bijection_through_thirty() {
    for i in [0, 1] {
        let r = bijection_check(i, 30).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.source_counts, r.target_counts);
    }
    let r = bijection_check(0, 0).unwrap();
    assert_eq!((r.source_counts.clone(), r.passed()), (vec![1], true));
}

#[test]
fn characters_match_oracle_and_products() {
    assert_eq!(rr_sum_side(0, 8), vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
    assert_eq!(rr_sum_side(1, 8), vec![1, 0, 1, 1, 1, 1, 2, 2, 3]);
    for i in [0u32, 1] {
        let want = oracle(i, 30);
        let q = family(if i == 0 { "W0qq" } else { "W1qq" }).unwrap();
        let h = family(if i == 0 { "hat-L0" } else { "hat-L1" }).unwrap();
        assert_eq!(character(q, 30), want);
        assert_eq!(character(h, 30), want);
        assert_eq!(rr_sum_side(i, 30), want);
        assert_eq!(rr_product_side(i, 30), want);
        assert_eq!(character(q, 0), vec![1]);
    }
}

#[test]
fn duplicate_rows_lose_rank() {
    let f = family("W0qq").unwrap();
    let mut els: Vec<Element> = enum_family(f, 5).into_iter().flatten().collect();
    let n = els.len();
    assert_eq!(independence_rank(&els, &f.probes(false), (-4, 8)).unwrap(), n);
    els.push(els[3].clone());
    assert_eq!(independence_rank(&els, &f.probes(false), (-4, 8)).unwrap(), n);
}

#[test]
fn principal_relations_vanish() {
    let f = family("hat-L0").unwrap();
    let p = f.probes(false);
    let zero = Element::Modes { indices: vec![-1, -1], level: 0 };
    assert_eq!(independence_rank(&[zero], &p, (0, 0)).unwrap(), 0);
    let low = Element::Modes { indices: vec![-1], level: 1 };
    assert_eq!(independence_rank(&[low], &p, (0, 0)).unwrap(), 0);
}

#[test]
fn ranks_small_degree() {
    for f in registry() {
        let r = family_rank(f, 8, (-4, 8)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.probes, 1);
    }
}

#[test]
fn lemmas() {
    let r = zeroth_lemma_check(3).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.checked, 9);
}

#[test]
fn lowest_power_examples() {
    let r = lowest_power_check(&QVAMonomial::x(&[-1], Tail::Unit)).unwrap();
    assert_eq!((r.measured, r.predicted), (Some(0), 0));
    let r = lowest_power_check(&QVAMonomial::x(&[-3, -1], Tail::Unit)).unwrap();
    assert_eq!((r.measured, r.predicted), (Some(0), 0));
    let r = lowest_power_check(&QVAMonomial::x(&[-3, -3, -1], Tail::Unit)).unwrap();
    assert_eq!((r.measured, r.predicted), (Some(4), 4));
}

#[test]
fn lowest_power_is_bounded_below() {
    for e in enum_family(family("W0qq").unwrap(), 9).iter().flatten() {
        let m = e.monomial().unwrap();
        if m.is_empty() {
            continue;
        }
        let r = lowest_power_check(m).unwrap();
        assert!(r.measured.unwrap() >= r.predicted, "{r}");
    }
}

fn quantum_indices(level: i64) -> impl Strategy<Value = Vec<i64>> {
    (prop::collection::vec(-6i64..=-3, 0..4), -5i64..=-1 - level).prop_map(|(mut v, l1)| {
        v.push(l1);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completion_matches_difference_conditions(level in 0i64..=1, seed in quantum_indices(1)) {
        let tail = if level == 0 { Tail::Unit } else { Tail::Y };
        let m = QVAMonomial::x(&seed, tail);
        let img = complete_diagram(&m).unwrap();
        let target = family(if level == 0 { "hat-L0" } else { "hat-L1" }).unwrap();
        prop_assert!(target.admits(img.indices()));
        prop_assert_eq!(target.degree(img.indices()), deg_qq(&m));
        let d = Diagram::of(&m);
        prop_assert!(d.is_young());
        let mut ds = img.indices().to_vec();
        ds.reverse();
        prop_assert_eq!(d.d_values(), ds.clone());
        // l_1 = D_1, l_(k+1) = D_(k+1) - D_k - 1
        let mut back: Vec<i64> = ds.iter().enumerate()
            .map(|(k, &dk)| if k == 0 { dk } else { dk - ds[k - 1] - 1 })
            .collect();
        back.reverse();
        prop_assert_eq!(back, seed);
    }

    #[test]
    fn admits_is_prefix_closed(id in 0usize..6, seed in prop::collection::vec(-9i64..=-1, 0..5)) {
        let f = registry().nth(id).unwrap();
        if f.admits(&seed) && !seed.is_empty() {
            prop_assert!(f.admits(&seed[1..]));
        }
    }
}
