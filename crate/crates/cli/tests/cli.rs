use std::process::{Command, Output};

fn qvertex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvertex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn characters_match() {
    let o = qvertex(&["characters", "--i", "0", "--max-deg", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("MATCH"), "{s}");
    assert!(!s.contains("MISMATCH"), "{s}");
}

#[test]
fn characters_degree_zero_json() {
    let o = qvertex(&["characters", "--max-deg", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = v.to_string();
    assert!(text.contains("[1]"), "{text}");
}

#[test]
fn reduce_prints_zero() {
    let o = qvertex(&["reduce", "x:[-1,-2]:unit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("x:[-1,-2]:unit = 0\n"), "{}", stdout(&o));
}

#[test]
fn bijection_and_rank_pass() {
    assert_eq!(qvertex(&["bijection", "--i", "1", "--max-deg", "20"]).status.code(), Some(0));
    let o = qvertex(&["rank", "--family", "W0qq", "--max-deg", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn diagram_completion() {
    let o = qvertex(&["diagram", "x:[-4,-3,-5,-2]:Y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("xhat(-11)xhat(-8)xhat(-6)xhat(-2)v_L1"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--relation", "BOGUS"],
        vec!["verify"],
        vec!["characters", "--max-deg", "50"],
        vec!["characters", "--i", "2"],
        vec!["reduce", "x:[-1,]:unit"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qvertex(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_json_is_reproducible() {
    let args = [
        "verify", "--relation", "Q1", "--relation", "H1", "--probes", "4", "--seed", "7",
        "--format", "json",
    ];
    let a = qvertex(&args);
    let b = qvertex(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    serde_json::from_slice::<serde_json::Value>(&a.stdout).unwrap();
}

#[test]
fn list_names_relations_and_families() {
    let s = stdout(&qvertex(&["list"]));
    for id in ["R1", "Q5", "D8", "W1qq", "hat-L0"] {
        assert!(s.contains(id), "{id}");
    }
}
