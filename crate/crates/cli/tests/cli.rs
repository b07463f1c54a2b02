use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn gpm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpm")).args(args).output().expect("gpm runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = gpm(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("gpm-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_interval_on_the_diamond() {
    let v = json_ok(&["analyze", &data("diamond.gpm")]);
    assert_eq!(v["births"], json!(["b", "c"]));
    // (I ∩ ↓d) ∖ {d} = {b, c} is disconnected.
    assert_eq!(v["deaths"], json!(["d"]));
    assert_eq!(v["generated"], json!(true));
    assert_eq!(v["presented"], json!(true));
    assert_eq!(v["xi0"], json!({"b": 1, "c": 1}));
    assert_eq!(v["xi1"], json!({"d": 1}));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn analyze_zero_module() {
    let f = temp_file("zero.gpm", "chain C 3\nmodule Z over C\n");
    let v = json_ok(&["analyze", &f]);
    assert_eq!(v["births"], json!([]));
    assert_eq!(v["deaths"], json!([]));
    assert_eq!(v["xi0"], json!({}));
}

#[test]
fn unknown_set_element_is_a_usage_error() {
    let out = gpm(&["analyze", &data("diamond.gpm"), "--set", "b,q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('q'));
    assert!(out.stdout.is_empty());
}

#[test]
fn koszul_presentation() {
    let v = json_ok(&["present", &data("koszul.gpm")]);
    assert_eq!(v["generators"], json!({"(1,0)": 1, "(0,1)": 1}));
    assert_eq!(v["relations"], json!({"(1,1)": 1}));
    assert_eq!(v["minimal"], json!(true));
    assert_eq!(v["exact"], json!(true));
}

#[test]
fn free_module_has_no_relations() {
    let v = json_ok(&["present", &data("free.gpm")]);
    assert_eq!(v["generators"], json!({"a": 1}));
    assert_eq!(v["relations"], json!({}));
}

#[test]
fn present_names_the_missing_death() {
    let out = gpm(&["present", &data("chain.gpm"), "--set", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"1\""), "{}", stderr(&out));
    let v = json_ok(&["present", &data("chain.gpm"), "--set", "0,1,2"]);
    assert_eq!(v["relations"], json!({"1": 1}));
}

#[test]
fn fsp_from_a_determining_set() {
    let v = json_ok(&["fsp", &data("diamond.gpm"), "--set", "b,c"]);
    assert_eq!(v["fsp"], json!(["b", "c", "d"]));
    let v = json_ok(&["fsp", &data("diamond.gpm")]);
    assert_eq!(v["presenting_set"], json!(["b", "c", "d"]));
    assert_eq!(v["property_m"], json!(true));
}

#[test]
fn colimit_windows() {
    let v = json_ok(&["colim", &data("diamond.gpm"), "--at", "d", "--set", "b,c"]);
    assert_eq!(v["window"], json!(["b", "c"]));
    assert_eq!(v["dim"], json!(2));
    assert_eq!(v["lambda"]["rank"], json!(1));
    let v = json_ok(&["colim", &data("diamond.gpm"), "--at", "d", "--inclusive"]);
    assert_eq!(v["dim"], json!(1));
    assert!(v.get("lambda").is_none());
}

#[test]
fn mu_of_a_dying_bar() {
    let v = json_ok(&["mu", &data("chain.gpm"), "--set", "0"]);
    assert_eq!(v["epi"], json!(true));
    assert_eq!(v["iso"], json!(false));
    assert_eq!(v["induced_dims"], json!({"0": 1, "1": 1, "2": 1}));
}

#[test]
fn poset_queries() {
    let v = json_ok(&["poset", "mub", &data("diamond.gpm"), "--set", "b,c"]);
    assert_eq!(v["mub"], json!(["d"]));
    let v = json_ok(&["poset", "hat", &data("diamond.gpm"), "--set", "b"]);
    assert_eq!(v["hat"], json!(["b"]));
    let v = json_ok(&["poset", "propm", &data("koszul.gpm")]);
    assert_eq!(v["weakly_bounded"], json!(true));
    assert_eq!(v["mub_complete"], json!(true));
    assert_eq!(gpm(&["poset", "mub", &data("diamond.gpm")]).status.code(), Some(2));
}

#[test]
fn graded_queries() {
    let z2 = data("z2.gpm");
    for q in ["phi-psi", "gamma-lambda", "smash"] {
        for seed in ["0", "1", "9"] {
            let v = json_ok(&["graded", q, &z2, "--seed", seed]);
            assert_eq!(v["algebra"], json!("S"));
        }
    }
    let v = json_ok(&["graded", "smash", &z2]);
    assert_eq!(v["category_algebra"], json!({"bijective": true, "dim": 4, "multiplicative": true, "unital": true}));
    let v = json_ok(&["graded", "local-unit", &z2, "--set", "e_g:x"]);
    assert_eq!(v["points"], json!(["x", "y"]));
    assert_eq!(v["w"], json!({"e_1:x": 1, "e_1:y": 1}));
    assert_eq!(gpm(&["graded", "local-unit", &z2, "--set", "e_h:x"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let v = json_ok(&["verify", "--suite", "verho", "--cases", "200", "--seed", "7"]);
    assert_eq!(v, json!({"suite": "verho", "cases": 200, "failures": []}));
    assert_eq!(gpm(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gpm(&["verify", "--suite", "verho", "--cases", "0"]).status.code(), Some(2));
    assert_eq!(gpm(&["verify", "--suite", "verho", "--max-elements", "40"]).status.code(), Some(2));
}

#[test]
fn failing_seeds_replay() {
    let out = gpm(&["verify", "--suite", "interval-ex", "--cases", "40"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let seeds = v["failures"].as_array().unwrap().clone();
    assert!(!seeds.is_empty());
    assert!(stderr(&out).starts_with("seed "));
    for s in seeds {
        let s = s.as_u64().unwrap().to_string();
        let out = gpm(&["verify", "--suite", "interval-ex", "--cases", "1", "--seed", &s]);
        assert_eq!(out.status.code(), Some(1));
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = temp_file("bad.gpm", "chain C 2\nmodule M over C\nspace 0 1\nspace 1 1\nmap 0 1 [1 2]\n");
    let out = gpm(&["check", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 5"), "{}", stderr(&out));
    let f = temp_file("unknown.gpm", "module M over Q\n");
    assert_eq!(gpm(&["check", &f]).status.code(), Some(2));
    assert_eq!(gpm(&["check", "/nonexistent/file.gpm"]).status.code(), Some(2));
}

#[test]
fn normalization_is_idempotent() {
    let once = gpm(&["check", "--normalize", &data("diamond.gpm"), &data("z2.gpm")]);
    assert_eq!(once.status.code(), Some(0));
    let f = temp_file("norm.gpm", &String::from_utf8(once.stdout.clone()).unwrap());
    let twice = gpm(&["check", "--normalize", &f]);
    assert_eq!(once.stdout, twice.stdout);
}

#[test]
fn text_output() {
    let out = gpm(&["--text", "poset", "mub", &data("diamond.gpm"), "--set", "b,c"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "S: [\"b\",\"c\"]\nmub: [\"d\"]\n");
}

#[test]
fn field_flag_reaches_the_modules() {
    let v = json_ok(&["--field", "7", "check", &data("chain.gpm")]);
    assert_eq!(v["modules"]["M"]["field"], json!(7));
    assert_eq!(gpm(&["--field", "8", "check", &data("chain.gpm")]).status.code(), Some(2));
}
