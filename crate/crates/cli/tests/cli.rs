use std::path::PathBuf;
use std::process::{Command, Output};

use folaut::{Form, Local, Map};
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fol")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

const FORMS: [&str; 5] = ["example.json", "radial.json", "swap_invariant.json", "cyclic.json", "two_web.json"];
const MAPS: [&str; 4] = ["swap.json", "cycle.json", "diag.json", "infinite.json"];
const LOCALS: [&str; 3] = ["local_regular.json", "local_saddle.json", "local_radial.json"];

#[test]
fn fixtures_round_trip() {
    for name in FORMS {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let form: Form = serde_json::from_str(&text).unwrap();
        form.validate().unwrap();
        let once = serde_json::to_string(&form).unwrap();
        let again: Form = serde_json::from_str(&once).unwrap();
        assert_eq!(again, form);
        assert_eq!(serde_json::to_string(&again).unwrap(), once);
    }
    for name in MAPS {
        let map: Map = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let once = serde_json::to_string(&map).unwrap();
        assert_eq!(serde_json::from_str::<Map>(&once).unwrap(), map);
    }
    for name in LOCALS {
        let local: Local = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let once = serde_json::to_string(&local).unwrap();
        assert_eq!(serde_json::from_str::<Local>(&once).unwrap(), local);
    }
}

#[test]
fn cli_output_feeds_back() {
    // pullback by the identity is the canonical serialization of the form
    let out = run(&["pullback", "--form", &fixture("example.json"), "--map", r#"["1","0","0","0","1","0","0","0","1"]"#]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let again = run(&["pullback", "--form", &text, "--map", &fixture("cycle.json")]);
    let direct = run(&["pullback", "--form", &fixture("example.json"), "--map", &fixture("cycle.json")]);
    assert_eq!(again.stdout, direct.stdout);
}

#[test]
fn outputs_are_deterministic() {
    let commands: Vec<Vec<String>> = vec![
        vec!["degree".into(), "--form".into(), fixture("example.json")],
        vec!["hij".into(), "--form".into(), fixture("cyclic.json")],
        vec!["closure".into(), "--form".into(), fixture("cyclic.json")],
        vec!["squarefree".into(), "--form".into(), fixture("two_web.json"), "--table".into()],
        vec!["blowup".into(), "--form".into(), fixture("local_saddle.json")],
        vec!["bounds".into(), "--kf2".into(), "1".into(), "--kfkx".into(), "-3".into(), "--full-digits".into()],
    ];
    for args in commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn boolean_commands_never_succeed_on_false() {
    let example = fixture("example.json");
    assert_eq!(code(&["preserves", "--form", &fixture("swap_invariant.json"), "--map", &fixture("swap.json")]), 0);
    assert_eq!(code(&["preserves", "--form", &example, "--map", &fixture("swap.json")]), 1);
    assert_eq!(code(&["lie", "--form", &example, "--field", "x d/dy"]), 1);
    assert_eq!(code(&["integrable", "--form", &example]), 0);
    assert_eq!(code(&["euler", "--form", &fixture("bad_euler.json")]), 1);
    assert_eq!(code(&["euler", "--form", &example]), 0);
    assert_eq!(code(&["validate", "--form", &fixture("bad_degree.json")]), 1);
    assert_eq!(code(&["reduced", "--map", &fixture("linear_node.json")]), 1);
    assert_eq!(code(&["bounds", "--d", "2", "--k", "1", "--n", "2", "--order", "65536"]), 0);
    assert_eq!(code(&["bounds", "--d", "2", "--k", "1", "--n", "2", "--order", "65537"]), 1);
    let square = r#"{"N":2,"k":2,"coeffs":[{"dmono":[2,0,0],"poly":"y^2"},{"dmono":[1,1,0],"poly":"-2*x*y"},{"dmono":[0,2,0],"poly":"x^2"}]}"#;
    assert_eq!(code(&["squarefree", "--form", square]), 1);
    assert_eq!(code(&["squarefree", "--form", &fixture("two_web.json"), "--points", "1,2,3;2,3,5"]), 0);
}

#[test]
fn invariant_violations_are_named() {
    for (file, name) in [("bad_euler.json", "euler_contraction_nonzero"), ("bad_degree.json", "coefficient_degree_mismatch")] {
        let out = run(&["degree", "--form", &fixture(file)]);
        assert_eq!(out.status.code(), Some(2));
        assert_eq!(json_of(&out)["error"], json!(name));
    }
    let out = run(&["blowup", "--form", &fixture("local_common_factor.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], json!("common_factor"));
    let out = run(&["degree", "--form", "{\"N\": 2,"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], json!("malformed_json"));
    let out = run(&["degree", "--form", &fixture("missing.json")]);
    assert_eq!((out.status.code(), json_of(&out)["error"].clone()), (Some(2), json!("io")));
    let out = run(&["preserves", "--form", &fixture("example.json"), "--map", r#"["1","2","2","4"]"#]);
    assert_eq!(json_of(&out)["error"], json!("singular_matrix"));
    let out = run(&["bounds", "--kf2", "0", "--kfkx", "1"]);
    assert_eq!((out.status.code(), json_of(&out)["error"].clone()), (Some(2), json!("kf2_not_positive")));
}

#[test]
fn computation_errors_exit_three() {
    let out = run(&["closure", "--form", &fixture("radial.json"), "--map", &fixture("infinite.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"], json!("cap_exceeded"));
    let out = run(&["closure", "--form", &fixture("cyclic.json"), "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["restrict", "--form", &fixture("radial.json"), "--line", "0,0,1;1,2,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"], json!("non_generic_line"));
    assert_eq!(code(&["bounds", "--kf2", "2", "--kfkx", "0", "--full-digits"]), 3);
    assert_eq!(code(&["bounds", "--kf2", "2", "--kfkx", "0"]), 0);
}

#[test]
fn closure_reports_group_and_bound() {
    let v = json_of(&run(&["closure", "--form", &fixture("cyclic.json"), "--map", &fixture("cycle.json")]));
    assert_eq!(v["order"], json!(3));
    assert_eq!(v["bound"], json!("65536"));
    let out = run(&["closure", "--form", &fixture("example.json"), "--map", &fixture("swap.json")]);
    assert_eq!(json_of(&out)["error"], json!("generator_not_preserving"));
}

#[test]
fn pullback_keeps_the_representative() {
    let v = json_of(&run(&["pullback", "--form", &fixture("radial.json"), "--map", &fixture("diag.json")]));
    let pulled: Form = serde_json::from_value(v).unwrap();
    assert_eq!(pulled, Form::parse(2, "3*x*dy - 3*y*dx").unwrap());
    let out = run(&["preserves", "--form", &fixture("radial.json"), "--map", &fixture("diag.json")]);
    assert_eq!(json_of(&out), json!({"preserves": true, "factor": "3"}));
}

#[test]
fn table_output() {
    let out = run(&["hij", "--form", &fixture("radial.json"), "--points", "1,1,1", "--table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("ring R = 0,(a00,a01,a02,a10,a11,a12,a20,a21,a22),dp;\nideal I =\n"));
    assert!(text.ends_with(";\n"));
    let out = run(&["degree", "--form", &fixture("example.json"), "--table"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "d          2\nk          1\nN          2\nKF_degree  1\n");
}

#[test]
fn fields_in_every_syntax() {
    let example = fixture("example.json");
    for field in ["y d/dx", r#"["y", "0", "0"]"#] {
        let v = json_of(&run(&["lie", "--form", &example, "--field", field]));
        assert_eq!(v, json!({"lie_derivative": "0", "preserved": true}));
    }
    let v = json_of(&run(&["lie", "--form", &fixture("radial.json"), "--field", "x d/dx + y d/dy + z d/dz"]));
    assert_eq!(v["preserved"], json!(true));
    assert_eq!(v["lie_derivative"], json!("-2*y*dx + 2*x*dy"));
}

#[test]
fn duality_and_ktransform() {
    let v = json_of(&run(&["duality", "3,5"]));
    assert_eq!(v, json!({"N": 2, "values": ["3", "5"], "dual": ["5", "3"]}));
    let v = json_of(&run(&["ktransform", "--kf2", "1", "--kfkx", "-3", "--form", &fixture("local_radial.json")]));
    assert_eq!(v, json!({"l": 2, "KF2": 0, "KFKX": -2, "ample_necessary": false}));
    assert_eq!(code(&["ktransform", "--kf2", "1", "--kfkx", "-3"]), 2);
}
