use std::path::PathBuf;

use assert_cmd::Command;
use jsonschema::JSONSchema;
use serde_json::Value;

use qgor::fixtures::corpus;
use qgor::SimplicialComplex;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture_path(file: &str) -> PathBuf {
    root().join("fixtures").join(file)
}

fn schema(command: &str) -> JSONSchema {
    let path = root().join("schemas").join(format!("{command}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn qgor() -> Command {
    Command::cargo_bin("qgor").unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = qgor().args(args).arg("--json").output().unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_valid(schema: &JSONSchema, value: &Value, what: &str) {
    if let Err(errors) = schema.validate(value) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what} violates its schema: {msgs:?}");
    }
}

fn facets_from_json(value: &Value) -> Vec<Vec<i64>> {
    value
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect())
        .collect()
}

#[test]
fn every_command_validates_on_every_fixture() {
    let schemas: Vec<(&str, JSONSchema)> = ["classify", "homology", "hochster", "liaison", "graph", "collapse"]
        .into_iter()
        .map(|c| (c, schema(c)))
        .collect();
    let get = |name: &str| &schemas.iter().find(|(c, _)| *c == name).unwrap().1;

    for fx in corpus() {
        let path = fixture_path(&fx.file);
        let p = path.to_str().unwrap();
        for field in ["q", "2", "3"] {
            let v = run_json(&["classify", p, "--field", field]);
            assert_valid(get("classify"), &v, &format!("classify {}", fx.name));
            let v = run_json(&["homology", p, "--field", field]);
            assert_valid(get("homology"), &v, &format!("homology {}", fx.name));
            let v = run_json(&["hochster", p, "--field", field, "--serre", "3"]);
            assert_valid(get("hochster"), &v, &format!("hochster {}", fx.name));
        }
        let c = &fx.complex;
        if c.is_pure() {
            let v = run_json(&["graph", p, "--t", "1", "--remove", "1"]);
            assert_valid(get("graph"), &v, &format!("graph {}", fx.name));
            if c.facets().len() >= 2 {
                let v = run_json(&["liaison", p, "--facets-a", "1", "--check", "all"]);
                assert_valid(get("liaison"), &v, &format!("liaison {}", fx.name));
            }
        }
        let first = c.vertex_set().into_iter().next().unwrap().to_string();
        let v = run_json(&["collapse", p, "--forbid", &first]);
        assert_valid(get("collapse"), &v, &format!("collapse {}", fx.name));
    }
}

#[test]
fn emitted_facets_round_trip() {
    for fx in corpus() {
        let v = run_json(&["classify", fixture_path(&fx.file).to_str().unwrap()]);
        let n = v["n"].as_u64().unwrap() as u32;
        let again = SimplicialComplex::from_facets(facets_from_json(&v["facets"]).into_iter(), n).unwrap();
        assert_eq!(again, fx.complex, "{}", fx.name);
    }
}

#[test]
fn classify_boundary_of_the_tetrahedron() {
    let v = run_json(&["classify", fixture_path("boundary-3-simplex.cplx").to_str().unwrap(), "--field", "2"]);
    assert_eq!(v["quasi_gorenstein"], true);
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["field"], "GF(2)");
}

#[test]
fn liaison_on_the_torus() {
    let v = run_json(&["liaison", fixture_path("csaszar-torus.cplx").to_str().unwrap(), "--facets-a", "1", "--field", "q"]);
    assert_eq!(v["alternating_sum"], 0);
    assert_eq!(v["hypotheses"]["quasi_gorenstein"], true);
    assert_eq!(v["hypotheses"]["buchsbaum_a"], true);
    assert_eq!(v["terms"][0]["label"], "H~^0(Delta_B)");
}

#[test]
fn collapse_counterexample_reports_failure() {
    let out = qgor()
        .args(["collapse", fixture_path("homotopy-cex1-A.cplx").to_str().unwrap(), "--forbid", "1,2,5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAILURE"), "{text}");
    assert!(text.contains("partial trace"), "{text}");
}

#[test]
fn list_facets_is_one_based() {
    let out = qgor()
        .args(["classify", fixture_path("four-cycle.cplx").to_str().unwrap(), "--list-facets"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("   1  {1,2}"), "{text}");
    assert!(text.contains("   4  {3,4}"), "{text}");
}

#[test]
fn dot_output() {
    let out = qgor()
        .args(["graph", fixture_path("boundary-2-simplex.cplx").to_str().unwrap(), "--dot"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph gamma_1 {"));
    assert!(text.contains("1 -- 2;"));
}

#[test]
fn tconn_hypotheses_are_in_band() {
    let v = run_json(&["liaison", fixture_path("two-triangles.cplx").to_str().unwrap(), "--facets-a", "1", "--check", "tconn"]);
    assert_eq!(v["tconn"]["hypotheses_met"], false);
}

#[test]
fn parse_errors_exit_one_with_line_numbers() {
    let dir = std::env::temp_dir().join(format!("qgor-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cplx");
    std::fs::write(&bad, "1 2 3\n1 0 2\n").unwrap();
    let out = qgor().args(["homology", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = qgor().args(["homology", dir.join("missing.cplx").to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let big = dir.join("big.cplx");
    let facet: Vec<String> = (1..=30).map(|v| v.to_string()).collect();
    std::fs::write(&big, format!("n=30\n{}\n", facet.join(" "))).unwrap();
    let out = qgor().args(["homology", big.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_flags_exit_one() {
    let p = fixture_path("four-cycle.cplx");
    let p = p.to_str().unwrap();
    assert_eq!(qgor().args(["homology", p, "--field", "4"]).output().unwrap().status.code(), Some(1));
    assert_eq!(qgor().args(["liaison", p, "--facets-a", "9"]).output().unwrap().status.code(), Some(1));
    assert_eq!(qgor().args(["graph", p, "--t", "7"]).output().unwrap().status.code(), Some(1));
}

#[test]
fn schemas_reject_malformed_reports() {
    let mut v = run_json(&["classify", fixture_path("four-cycle.cplx").to_str().unwrap()]);
    assert!(schema("classify").is_valid(&v));
    v.as_object_mut().unwrap().remove("gorenstein");
    assert!(!schema("classify").is_valid(&v));
    let mut v = run_json(&["liaison", fixture_path("four-cycle.cplx").to_str().unwrap(), "--facets-a", "1"]);
    v["terms"][0]["label"] = "H^0(B)".into();
    assert!(!schema("liaison").is_valid(&v));
}
