use qdt::cli::{run_with, EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use qdt::fixtures;
use qdt::qp::{find_quiver_isomorphism, load_qp, qp_to_json};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("qdt").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run(&a);
    assert!(!out.is_empty(), "no output, stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("qdt-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate() {
    let (code, v) = run_json(&["validate", &fixture("conifold")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["valid"], true);
    let bad = r#"{"vertices": ["1", "2", "3"],
        "arrows": [{"id": "a", "from": "1", "to": "2"}, {"id": "b", "from": "2", "to": "3"},
                   {"id": "c", "from": "3", "to": "1"}],
        "potential": [{"coeff": "1", "cycle": ["a", "c", "b"]}]}"#;
    let path = temp("bad.json", &bad);
    let (code, v) = run_json(&["validate", &path]);
    assert_eq!(code, EXIT_FAIL);
    assert!(v["issues"][0]["location"].as_str().unwrap().starts_with("potential[0].cycle"));
    let path = temp("garbage.json", "{ \"vertices\": [");
    let (code, _, err) = run(&["validate", &path]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn cuts() {
    let (code, v) = run_json(&["cuts", &fixture("conifold")]);
    assert_eq!(code, EXIT_OK);
    let rows = v.as_array().unwrap();
    let main = rows.iter().find(|r| r["cut"] == serde_json::json!(["a1", "a2"])).unwrap();
    assert_eq!(main["strict_sources"], serde_json::json!(["2"]));
    let (_, v) = run_json(&["cuts", &fixture("three_cycle")]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r["strict_sources"].as_array().unwrap().len(), 1);
        assert_eq!(r["strict_sinks"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn mutate_round_trips() {
    let (code, out, _) = run(&["mutate", &fixture("conifold"), "--vertex", "2"]);
    assert_eq!(code, EXIT_OK);
    let m = load_qp(&out).unwrap();
    assert_eq!(m.qp.quiver.n_arrows(), 12);
    assert_eq!(m.cut.as_ref().unwrap().len(), 4);
    assert!(m.qp.is_cut(m.cut.as_ref().unwrap()));
    let again = load_qp(&qp_to_json(&m.qp, m.cut.as_ref(), m.grading.as_ref())).unwrap();
    assert_eq!(again, m);

    let (code, out, _) = run(&["mutate", &fixture("a2"), "--vertex", "1"]);
    assert_eq!(code, EXIT_OK);
    let m = load_qp(&out).unwrap();
    let a = &m.qp.quiver.arrows()[0];
    assert_eq!((a.tail, a.head), (1, 0));

    let (code, _, err) = run(&["mutate", &fixture("conifold"), "--vertex", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("mutation"), "{err}");
}

#[test]
fn from_dimer() {
    let (code, out, _) = run(&["from-dimer", &fixture("square_torus_dimer")]);
    assert_eq!(code, EXIT_OK);
    let qp = load_qp(&out).unwrap();
    assert_eq!(qp.qp.quiver.n_vertices(), 4);
    assert!(find_quiver_isomorphism(&qp.qp.quiver, &fixtures::conifold().qp.quiver).is_some());
    let (_, v) = run_json(&["from-dimer", &fixture("square_torus_dimer"), "--matchings"]);
    assert_eq!(v["matchings"].as_array().unwrap().len(), 8);
}

#[test]
fn dilog_table() {
    let (code, out, _) = run(&["dilog", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "0\t1");
    assert_eq!(lines[1], "1\tt/(t^2 - 1)");
}

#[test]
fn dt_and_determinism() {
    let args = ["dt", &fixture("three_cycle"), "--box", "1,1,1", "--json"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    let (code, _, err) = run(&["dt", &fixture("three_cycle"), "--box", "1,1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("box"));
}

#[test]
fn wallcross() {
    let (code, v) = run_json(&["wallcross", &fixture("a2"), "--vertex", "1", "--box", "4,4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["pass"], true);
    let (code, out, _) = run(&["wallcross", &fixture("conifold"), "--vertex", "2", "--degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PASS"));
    let (code, _, err) = run(&[
        "wallcross", &fixture("conifold"), "--vertex", "2", "--box", "2,2,2,2", "--budget", "100",
    ]);
    assert_eq!(code, EXIT_BUDGET);
    let diag: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(diag["error"], "budget");
    assert!(diag["hint"].as_str().unwrap().contains("smaller box"));
}

#[test]
fn factorize() {
    let (code, v) = run_json(&["factorize", &fixture("a2"), "--charge", "-1+i, 1+i", "--box", "4,4"]);
    assert_eq!(code, EXIT_OK);
    let rays: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["terms"].as_array().unwrap().is_empty())
        .map(|r| r["ray"].as_str().unwrap())
        .collect();
    assert_eq!(rays, ["(-1,1)", "(0,1)", "(1,1)"]);
    let (code, _, _) = run(&["factorize", &fixture("a2"), "--charge", "1-i, 1+i", "--box", "1,1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["dt", &fixture("a2"), "--box", "1,1", "--primes", "2,2,3"]).0, EXIT_USAGE);
    assert_eq!(run(&["dt", &fixture("a2"), "--box", "1,1", "--budget", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}
