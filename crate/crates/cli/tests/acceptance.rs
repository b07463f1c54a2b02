//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false`. The process fails if a criterion fails,
//! unless that criterion is listed in `KNOWN_FALSE` together with a
//! reproducible counterexample.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use gpm_core::births::{koszul_fixture, minimal_presentation};
use gpm_core::verify::{self, VerifyConfig, VerifyReport};
use gpm_core::FieldSpec;

/// Criteria whose statement does not hold for every instance. The suite
/// still runs and still prints FAIL.
const KNOWN_FALSE: &[(u32, &str)] = &[(
    5,
    "a non-minimal element of (up I) minus I is a death whenever a component of I below it \
     is not below any smaller element of that set; e.g. a < x < c, b < c, I = {a, b} has deaths {x, c}",
)];

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

fn suite(name: &str, seed: u64, cases: usize, max_elements: usize) -> VerifyReport {
    let mut config = VerifyConfig::new(name, seed, cases);
    config.max_elements = max_elements;
    verify::run(&config).expect("valid config")
}

fn summarize(reports: &[VerifyReport]) -> (bool, String) {
    let pass = reports.iter().all(VerifyReport::passed);
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            if r.passed() {
                format!("{} {} cases", r.suite, r.cases)
            } else {
                format!("{} {} cases, failing seeds {:?}", r.suite, r.cases, r.failures)
            }
        })
        .collect();
    (pass, parts.join("; "))
}

fn criterion(id: u32, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (pass, detail) = f();
    Line {
        id,
        pass,
        detail: format!("{detail} ({:.1}s)", start.elapsed().as_secs_f64()),
    }
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn gpm(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpm")).args(args).output().expect("gpm runs")
}

fn determinism() -> (bool, String) {
    let d = |n: &str| data(n);
    let commands: Vec<Vec<String>> = [
        vec!["check".into(), d("diamond.gpm"), d("koszul.gpm"), d("z2.gpm")],
        vec!["check".into(), "--normalize".into(), d("koszul.gpm"), d("z2.gpm")],
        vec!["analyze".into(), d("diamond.gpm")],
        vec!["analyze".into(), d("koszul.gpm"), "--set".into(), "(1,0),(0,1),(1,1)".into()],
        vec!["--text".into(), "analyze".into(), d("chain.gpm"), "--set".into(), "0".into()],
        vec!["present".into(), d("koszul.gpm")],
        vec!["present".into(), d("chain.gpm"), "--set".into(), "0".into()],
        vec!["fsp".into(), d("diamond.gpm")],
        vec!["fsp".into(), d("diamond.gpm"), "--set".into(), "b,c".into()],
        vec!["colim".into(), d("diamond.gpm"), "--at".into(), "d".into(), "--set".into(), "b,c".into()],
        vec!["colim".into(), d("diamond.gpm"), "--at".into(), "d".into(), "--inclusive".into()],
        vec!["mu".into(), d("chain.gpm"), "--set".into(), "0".into()],
        vec!["poset".into(), "mub".into(), d("diamond.gpm"), "--set".into(), "b,c".into()],
        vec!["poset".into(), "hat".into(), d("diamond.gpm"), "--set".into(), "b,c".into()],
        vec!["poset".into(), "propm".into(), d("koszul.gpm")],
        vec!["graded".into(), "phi-psi".into(), d("z2.gpm"), "--seed".into(), "5".into()],
        vec!["graded".into(), "gamma-lambda".into(), d("z2.gpm"), "--seed".into(), "5".into()],
        vec!["graded".into(), "smash".into(), d("z2.gpm")],
        vec!["graded".into(), "local-unit".into(), d("z2.gpm"), "--set".into(), "e_g:x".into()],
        vec!["verify".into(), "--suite".into(), "verho".into(), "--cases".into(), "40".into(), "--seed".into(), "7".into()],
        vec!["verify".into(), "--suite".into(), "interval-ex".into(), "--cases".into(), "40".into()],
        vec!["verify".into(), "--suite".into(), "phi-psi".into(), "--cases".into(), "20".into(), "--seed".into(), "3".into()],
        vec!["verify".into(), "--suite".into(), "nope".into()],
    ]
    .into_iter()
    .collect();
    let mut differing = Vec::new();
    for args in &commands {
        let (a, b) = (gpm(args), gpm(args));
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            differing.push(args.join(" "));
        }
    }
    if differing.is_empty() {
        (true, format!("{} commands byte-identical across two runs", commands.len()))
    } else {
        (false, format!("outputs differ for: {}", differing.join(" | ")))
    }
}

fn main() {
    let lines = vec![
        criterion(1, || summarize(&[suite("fsp-apu", 0, 200, 6)])),
        criterion(2, || summarize(&[suite("syntyma-minimi", 0, 100, 5), suite("esitys-minimi", 0, 100, 5)])),
        criterion(3, || {
            let (pass, detail) = summarize(&[suite("verho", 0, 200, 6)]);
            let m = koszul_fixture(FieldSpec::default());
            let p = m.poset().clone();
            let pres = minimal_presentation(&m, &p.full_set()).expect("whole poset presents");
            let named = |v: &[(usize, usize)]| {
                let mut out: Vec<(String, usize)> = v.iter().map(|&(c, k)| (p.name(c).to_string(), k)).collect();
                out.sort();
                out
            };
            let xi0 = named(&pres.gens);
            let xi1 = named(&pres.rels);
            let koszul = xi0 == [("(0,1)".to_string(), 1), ("(1,0)".to_string(), 1)] && xi1 == [("(1,1)".to_string(), 1)];
            (pass && koszul, format!("{detail}; koszul xi0 {xi0:?} xi1 {xi1:?}"))
        }),
        criterion(4, || summarize(&[suite("tuplahattu", 0, 200, 6)])),
        criterion(5, || summarize(&[suite("interval-ex", 0, 100, 6)])),
        criterion(6, || summarize(&[suite("split-esim", 0, 50, 6)])),
        criterion(7, || {
            let smash = suite("smash-iso", 0, 1, 6);
            summarize(&[suite("phi-psi", 0, 100, 6), suite("gamma-lambda", 0, 100, 6), smash])
        }),
        criterion(8, || summarize(&[suite("induktio-apu", 0, 100, 6), suite("adjunction", 0, 50, 6)])),
        criterion(9, determinism),
    ];

    let mut unexpected = 0;
    for l in &lines {
        let known = KNOWN_FALSE.iter().find(|(id, _)| *id == l.id);
        println!("{} criterion {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.detail);
        match (l.pass, known) {
            (false, Some((_, why))) => println!("     known false in general: {why}"),
            (false, None) => unexpected += 1,
            _ => {}
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("{passed}/{} criteria pass", lines.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
