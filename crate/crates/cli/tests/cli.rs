use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn factorcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn bundled_product_ofs_counts() {
    let file = data("product_ofs_1_1.json");
    let o = factorcat(&["show", "ofs", p(&file), "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["objects"].as_array().unwrap().len(), 4);
    assert_eq!(v["morphisms"].as_array().unwrap().len(), 9);
    assert_eq!(v["egressive"].as_array().unwrap().len(), 6);
    assert_eq!(v["ingressive"].as_array().unwrap().len(), 6);
}

#[test]
fn canonical_file_round_trips_byte_identically() {
    let file = data("product_ofs_1_1.json");
    let o = factorcat(&["show", "ofs", p(&file), "--json"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn dclr_of_product_ofs_has_nine_squares() {
    let o = factorcat(&["construct", "dclr", "catalog:product-ofs-1-1"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["squares"].as_array().unwrap().len(), 9);
}

#[test]
fn span_of_all_isos_reverses_the_chain() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ai.json");
    assert!(
        factorcat(&["construct", "all-isos", "2", "--out", p(&input)])
            .status
            .success()
    );
    let v = json(&factorcat(&["construct", "span", p(&input)]));
    let objects = v["objects"].as_array().unwrap().len();
    assert_eq!(objects, 3);
    let morphisms = v["morphisms"].as_array().unwrap();
    assert_eq!(morphisms.len(), 6);
    // Every non-identity arrow runs from a larger object to a smaller one.
    for m in morphisms {
        assert!(m["src"].as_u64() >= m["tgt"].as_u64());
    }
    assert_eq!(v["egressive"].as_array().unwrap().len(), 6);
    assert_eq!(v["ingressive"].as_array().unwrap().len(), 3);
}

#[test]
fn poset_zero_is_terminal() {
    let v = json(&factorcat(&["construct", "poset", "0"]));
    assert_eq!(v["objects"].as_array().unwrap().len(), 1);
    assert_eq!(v["morphisms"].as_array().unwrap().len(), 1);
}

#[test]
fn dangling_id_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        "{\n\"objects\": [\"a\"],\n\"morphisms\": [\n{\"name\": \"i\", \"src\": 0, \"tgt\": 3}\n],\n\"identities\": {\"0\": 0},\n\"composition\": [[0, 0, 0]]\n}\n",
    )
    .unwrap();
    let o = factorcat(&["validate", "category", p(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn failed_axiom_exits_with_verdict_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let o = factorcat(&["construct", "poset", "1"]);
    let mut v = json(&o);
    v["composition"].as_array_mut().unwrap().pop();
    std::fs::write(&file, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(
        factorcat(&["validate", "category", p(&file)]).status.code(),
        Some(1)
    );
}

#[test]
fn controls_report_schema() {
    let o = factorcat(&["run", "--suite", "controls", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["suite"], "controls");
    assert!(v["budget_used"].is_u64());
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["verdict"], "pass");
        assert!(e["name"].is_string() && e["check"].is_string());
    }
}

#[test]
fn tiny_budget_exits_with_budget_code() {
    let o = factorcat(&["run", "--suite", "ofs", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_catalog_passes_vacuously() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("catalog.json"), "{\"entries\": []}").unwrap();
    let o = factorcat(&[
        "run",
        "--suite",
        "all",
        "--catalog",
        p(dir.path()),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["entries"].as_array().unwrap().is_empty());
}

#[test]
fn exported_catalog_runs_like_the_bundled_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(factorcat(&["catalog", "--out", p(dir.path())])
        .status
        .success());
    let from_disk = factorcat(&[
        "run",
        "--suite",
        "span",
        "--catalog",
        p(dir.path()),
        "--json",
    ]);
    let bundled = factorcat(&["run", "--suite", "span", "--json"]);
    assert!(bundled.status.success());
    assert_eq!(stdout(&from_disk), stdout(&bundled));
}

#[test]
fn runs_are_deterministic() {
    let a = factorcat(&["run", "--suite", "dclr-roundtrip", "--json"]);
    let b = factorcat(&["run", "--suite", "dclr-roundtrip", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn straightening_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let total = dir.path().join("total.json");
    let x = dir.path().join("x.json");
    assert!(factorcat(&[
        "construct",
        "unstraighten",
        "catalog:const-z2-over-box-1-1",
        "--out",
        p(&total)
    ])
    .status
    .success());
    assert!(factorcat(&["validate", "dblfunctor", p(&total)])
        .status
        .success());
    assert!(
        factorcat(&["construct", "straighten", p(&total), "--out", p(&x)])
            .status
            .success()
    );
    let v = json(&factorcat(&["show", "indexing", p(&x), "--json"]));
    assert_eq!(v["fibers"].as_array().unwrap().len(), 4);
}

#[test]
fn unknown_suite_is_an_error() {
    assert_ne!(
        factorcat(&["run", "--suite", "nope"]).status.code(),
        Some(0)
    );
}
