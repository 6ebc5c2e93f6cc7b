use std::process::{Command, Output};

use zetaquant::report::Report;

const BIN: &str = env!("CARGO_BIN_EXE_zetaquant");

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn regdet_example() {
    let o = run(&["regdet", "--diag", "0.5", "--order", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(rep.command, "regdet");
    assert_eq!(rep.rows[0].value.re, 0.5);
    assert!(rep.runtime_ms.is_some());
}

#[test]
fn gamma_example() {
    let o = run(&["gamma", "--points", "0.5", "--terms", "1000000", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(rep.rows.len(), 1);
    assert_eq!(rep.rows[0].label, "Gamma(0.5)");
    assert!(rep.pass);
}

#[test]
fn curve_zeta_example() {
    let o = run(&["curve-zeta", "--curve", &fixture("e_f3.curve"), "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = Report::from_json(&stdout(&o)).unwrap();
    let coeff = |i: usize| {
        rep.rows
            .iter()
            .find(|r| r.label == format!("P coefficient T^{i}"))
            .map(|r| r.value.re)
    };
    assert_eq!((coeff(0), coeff(1), coeff(2), coeff(3)), (Some(1.0), Some(0.0), Some(3.0), None));
    assert!(rep.rows.iter().any(|r| r.label.starts_with("|alpha_") && r.pass));
}

#[test]
fn json_output_round_trips_byte_for_byte() {
    for args in [
        vec!["euler", "--no-timing"],
        vec!["bergman", "--alpha", "0.5", "--terms", "200", "--order", "5"],
        vec!["hadamard", "--function", "exp-one-minus-z", "--points", "0.5,-1+i,1"],
    ] {
        let text = stdout(&run(&args));
        let again = Report::from_json(&text).unwrap().to_json();
        assert_eq!(text, again, "{args:?}");
    }
}

#[test]
fn seed_fixes_randomized_inputs() {
    let args = |seed: &'static str| {
        vec!["regdet", "--diag", "0.5,0.25+0.1i", "--order", "2", "--z", "0.3", "--random-matrices", "6", "--seed", seed, "--no-timing"]
    };
    let a = stdout(&run(&args("7")));
    let b = stdout(&run(&args("7")));
    let c = stdout(&run(&args("8")));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn csv_columns() {
    let o = run(&["euler", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("label,re,im,oracle_re,oracle_im,disc"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--no-such-flag"]).status.code(), Some(2));
    let usage = run(&["gamma", "--no-such-flag"]);
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
    assert_eq!(run(&["xi", "--zeros", "/nonexistent/zeros.txt"]).status.code(), Some(2));
    // a tolerance no reconstruction can meet is a failed check
    let fail = run(&["gamma", "--points", "0.5", "--terms", "1000", "--tol", "1e-12"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(!Report::from_json(&stdout(&fail)).unwrap().pass);
    // a pole is a computation error, not a usage error
    assert_eq!(run(&["gamma", "--points", "-2", "--terms", "10"]).status.code(), Some(1));
}

#[test]
fn verify_all_subset() {
    let o = run(&["verify-all", "--criteria", "4,8", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = Report::from_json(&stdout(&o)).unwrap();
    assert!(rep.rows.iter().all(|r| r.label.starts_with("c4/") || r.label.starts_with("c8/")));
    assert_eq!(run(&["verify-all", "--criteria", "11"]).status.code(), Some(2));
}

#[test]
fn xi_and_zeta_on_the_fixture() {
    let z = fixture("zeros_100k.txt");
    let o = run(&["xi", "--zeros", &z, "--terms", "1000", "--points", "2,0.5+1i"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["zeta", "--zeros", &z, "--terms", "1000", "--gamma-terms", "10000", "--points", "2,-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(rep.rows[1].value.re, 0.0);
}
