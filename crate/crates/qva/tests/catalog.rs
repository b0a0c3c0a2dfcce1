use qvertex_qva::{default_probes, relation_ids, verify_relation};
use std::time::Instant;

fn run(id: &str) {
    let t = Instant::now();
    let r = verify_relation(id, &default_probes(), None).unwrap();
    println!("{r} time={:.1?}", t.elapsed());
    assert!(r.passed, "{r}");
    assert!(r.checks > 0);
}

macro_rules! relation_tests {
    ($($name:ident => $id:literal),* $(,)?) => {
        $(#[test] fn $name() { run($id); })*

        #[test]
        fn catalog_is_covered() {
            let mut ids = vec![$($id),*];
            ids.sort();
            let mut all = relation_ids();
            all.sort();
            assert_eq!(ids, all);
        }
    };
}

relation_tests! {
    r1_x_x => "R1", r2_x_y => "R2", r3_x_e_minus => "R3", r4_e_plus_y => "R4",
    c1_hat_commutativity => "C1", c2_hat_integrability => "C2", c3_hat_x_y => "C3",
    c4_hat_x_e => "C4", c5_hat_derivatives => "C5",
    q1_square => "Q1", q2_first_derivative => "Q2", q3_shifted => "Q3",
    q4_derived => "Q4", q5_derived_weighted => "Q5", q6_rewriting => "Q6", q7_rewriting_weighted => "Q7",
    h1_heisenberg => "H1", d6_charge => "D6", d7_heisenberg_current => "D7", d8_current_exchange => "D8",
    v2_vacuum => "V2", v3_creation => "V3", nl_derivative => "NL", v4_associativity => "V4",
    y1_half_power => "Y1", l0_vanishing => "L0", l1_nonvanishing => "L1",
}

#[test]
fn unknown_relation_is_an_error() {
    assert!(verify_relation("BOGUS", &default_probes(), None).is_err());
}
