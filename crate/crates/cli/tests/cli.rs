use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

use bsroots_cli::{parse_problem, run_json, Options, ProblemSpec};

fn bin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bsroots"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(src: &Value) -> Value {
    run_json(&src.to_string(), &Options::default())
        .unwrap()
        .value
}

const X2Y3: &str = r#"{"divisors":[
    {"label":"x","a":2,"k":0,"b":0,"exceptional":false},
    {"label":"y","a":3,"k":0,"b":0,"exceptional":false}],
    "reduced":false,"strict_transform_smooth":true}"#;

fn x2y3() -> Value {
    serde_json::from_str(X2Y3).unwrap()
}

#[test]
fn solve_b_cusp() {
    let r = report(&json!({"command":"solve-b","payload":{"vars":2,"f":"x^2+y^3","g":"1"}}));
    assert_eq!(r["b"]["factored"], "(s+5/6)(s+1)(s+7/6)");
    assert_eq!(r["b"]["roots"], json!(["-5/6", "-1", "-7/6"]));
    assert_eq!(
        r["bounds"],
        json!({"order":4,"coeff_degree":6,"s_degree":3,"b_degree":8})
    );
}

#[test]
fn term_list_input() {
    let r = report(&json!({"command":"solve-b","payload":{"vars":1,"f":[["1",[2]]]}}));
    assert_eq!(r["b"]["factored"], "(s+1/2)(s+1)");
}

#[test]
fn lct_of_normal_crossing_table() {
    let r = report(&json!({"command":"lct","payload":{"resolution": x2y3()}}));
    assert_eq!(r["lct"], "1/3");
}

#[test]
fn membership_and_jumps() {
    let mut res = x2y3();
    res["divisors"][0]["b"] = json!(1);
    res["divisors"][1]["b"] = json!(2);
    let r = report(&json!({"command":"membership","payload":{"resolution":res,"lambda":"9/10"}}));
    assert_eq!(r["member"], true);
    let r = report(&json!({"command":"jumps","payload":{"a":[2,3],"t":"1"}}));
    assert_eq!(r["jumping_numbers"], json!(["1/3", "1/2", "2/3", "1"]));
    let r = report(&json!({"command":"jumps","payload":{"resolution":x2y3(),"t":"1/2"}}));
    assert_eq!(r["candidates"], json!(["1/3", "1/2"]));
}

#[test]
fn snc_bound_with_verification() {
    let r = report(&json!({"command":"snc-bound","payload":{
        "a":[2,3],"b":[0,1],"variant":"unshifted","verify":true,"bounds":"5,2,1,8"}}));
    assert_eq!(r["divides"], true);
    assert_eq!(r["bound"]["roots"].as_array().unwrap().len(), 5);
}

#[test]
fn candidates_report() {
    let cusp = report(&json!({"command":"newton-resolve","payload":{"f":"x^2+y^3"}}));
    let r = report(&json!({"command":"candidates","payload":{
        "resolution": cusp["resolution"], "ell_max": 2, "exceptional_only": true}}));
    let values: Vec<&str> = r["shifted_candidates"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    for root in ["-5/6", "-1", "-7/6", "-4/3", "-5/3", "-3/2", "-2"] {
        assert!(values.contains(&root), "{root}");
    }
    assert_eq!(r["twisted_root_bound"], "-5/6");
}

#[test]
fn newton_and_min_exponent() {
    let r = report(&json!({"command":"newton-resolve","payload":{"f":"x^2+y^3","g":[1,0]}}));
    assert_eq!(r["lct"], "1");
    assert_eq!(r["fan"], json!([[1, 0], [2, 1], [3, 2], [1, 1], [0, 1]]));
    let r = report(&json!({"command":"min-exponent","payload":{"vars":2,"f":"x^2+y^3"}}));
    assert_eq!(
        r["minimal_exponent"],
        json!({"kind":"finite","value":"5/6"})
    );
    assert_eq!(r["lower_bound"], json!({"kind":"finite","value":"5/6"}));
    assert_eq!(r["saito_check"]["confirmed"], true);
}

#[test]
fn budur_saito_report() {
    let r = report(
        &json!({"command":"budur-saito","payload":{"a":[2,3],"alpha":"1/2","cap":2,"bounds":"5,2,1,8"}}),
    );
    assert_eq!(r["agrees"], true);
    assert_eq!(
        r["side_b"],
        json!([[0, 1], [0, 2], [1, 1], [1, 2], [2, 1], [2, 2]])
    );
}

#[test]
fn payloads_round_trip() {
    let sources = [
        json!({"command":"solve-b","payload":{"vars":2,"f":"x^2+y^3","g":"x","bounds":"4,6,3,8"}}),
        json!({"command":"lct","payload":{"resolution": x2y3()}}),
        json!({"command":"jumps","payload":{"a":[2,3],"t":"1"}}),
        json!({"command":"budur-saito","payload":{"a":[2,3],"alpha":"1/6","cap":3}}),
        json!({"command":"newton-resolve","payload":{"f":[["1",[2,0]],["1",[0,3]]],"g":[0,1]}}),
        json!({"command":"candidates","payload":{"resolution": x2y3(),"m":1,"ell_max":3}}),
    ];
    for src in sources {
        let spec: ProblemSpec = parse_problem(&src.to_string()).unwrap();
        let again = parse_problem(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again);
    }
}

#[test]
fn exit_codes() {
    let (code, out, _) = bin(&[], r#"{"command":"lct","payload":{"resolution":"#);
    assert_eq!(code, 2);
    assert!(out.is_empty());

    let (code, _, err) = bin(
        &[],
        r#"{"command":"lct","payload":{"resolution":{"divisors":[{"label":"x","a":-1,"k":0,"exceptional":false}]}}}"#,
    );
    assert_eq!(code, 2);
    let err: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(err["error"]["path"], "payload.resolution.divisors[0].a");

    let (code, _, err) = bin(
        &[],
        r#"{"command":"solve-b","payload":{"vars":1,"f":"x^5"}}"#,
    );
    assert_eq!(code, 3, "{err}");

    let (code, _, _) = bin(
        &[],
        r#"{"command":"newton-resolve","payload":{"f":"x^2*y+x^3"}}"#,
    );
    assert_eq!(code, 4);

    let (code, _, err) = bin(
        &["--bounds", "1,2"],
        r#"{"command":"jumps","payload":{"a":[1],"t":"1"}}"#,
    );
    assert_eq!(code, 2);
    assert!(err.contains("--bounds"));
}

#[test]
fn flags_and_text_output() {
    let src = r#"{"command":"solve-b","payload":{"vars":1,"f":"x^5"}}"#;
    let (code, out, _) = bin(&["--bounds", "5,0,0,8", "--format", "text"], src);
    assert_eq!(code, 0);
    assert!(
        out.contains("factored: (s+1/5)(s+2/5)(s+3/5)(s+4/5)(s+1)"),
        "{out}"
    );
    assert!(out.contains("order: 5"));

    let dir = std::env::temp_dir().join(format!("bsroots-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"command":"candidates","payload":{"resolution":{"divisors":[{"label":"E","a":2,"k":1,"exceptional":true}],"reduced":true,"strict_transform_smooth":true}}}"#).unwrap();
    let (code, _, _) = bin(
        &[
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
            "--ell-max",
            "1",
        ],
        "",
    );
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(r["ell_max"], 1);
    assert_eq!(r["candidate_roots"], json!(["-3/2", "-1"]));
    std::fs::remove_dir_all(&dir).unwrap();
}
