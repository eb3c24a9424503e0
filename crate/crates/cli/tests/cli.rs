use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn qgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgrass")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

fn check<'a>(recs: &'a [Value], name: &str) -> &'a Value {
    recs.iter()
        .find(|r| r["record"] == "check" && r["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn write_instance(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("inst.toml");
    std::fs::write(&path, body).unwrap();
    path
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn bijection_on_the_conic() {
    let out = qgrass(&["verify-bijection", data("conic-f3.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = records(&out);
    assert_eq!(recs[0]["schema"], "qgrass-report/1");
    assert_eq!(recs[0]["args"]["instance"]["monomial_order"], "desc-lex");
    let r = &check(&recs, "bijection")["result"];
    assert_eq!((r["grass_count"].as_u64(), r["variety_count"].as_u64()), (Some(4), Some(4)));
    assert_eq!(r["matched"], true);
    let summary = recs.last().unwrap();
    assert_eq!((summary["record"].as_str(), summary["passed"].as_bool()), (Some("summary"), Some(true)));
}

#[test]
fn quasi_and_lemma_on_the_conic_over_f5() {
    let path = data("conic-f5.toml");
    let out = qgrass(&["verify-quasi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let r = &check(&recs, "quasi-projective")["result"];
    assert_eq!((r["e_grass_count"].as_u64(), r["open_count"].as_u64()), (Some(5), Some(5)));
    let out = qgrass(&["verify-lemma", path.to_str().unwrap()]);
    let recs = records(&out);
    let t = &check(&recs, "lemma-hom")["result"]["truth_table"];
    assert_eq!(t["hom_zero_h_nonzero"], 5);
    assert_eq!(t["hom_nonzero_h_zero"], 1);
}

#[test]
fn reports_are_deterministic() {
    let path = data("conic-f3.toml");
    let run = || qgrass(&["report", path.to_str().unwrap(), "--seed", "7"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let recs = records(&a);
    for name in ["lemma-hom", "bijection", "quasi-projective", "extension-closure"] {
        assert_eq!(check(&recs, name)["passed"], true, "{name}");
    }
    assert!(recs.iter().all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.jsonl");
    let out = qgrass(&["encode", data("quadric-f2.toml").to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let header: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["args"]["instance"]["dims_v"], serde_json::json!([1, 10, 4]));
}

#[test]
fn grass_with_the_perp_predicate() {
    let out = qgrass(&["grass", data("conic-f3.toml").to_str().unwrap(), "--pred", "perp:W"]);
    let recs = records(&out);
    let points: Vec<_> = recs.iter().filter(|r| r["kind"] == "grassmannian-point").collect();
    assert_eq!(points.len(), 3);
    assert!(points.iter().all(|p| p["value"]["point"][0] != "0"));
    let out = qgrass(&["grass", data("conic-f3.toml").to_str().unwrap()]);
    let count = records(&out).into_iter().find(|r| r["kind"] == "count").unwrap();
    assert_eq!(count["value"]["count"], 4);
}

#[test]
fn representation_commands() {
    let reps = data("kronecker.json");
    let reps = reps.to_str().unwrap();
    let out = qgrass(&["ext", reps, "B", "S1"]);
    let v = &records(&out)[1]["value"];
    assert_eq!((v["hom"].as_i64(), v["ext1"].as_i64(), v["euler"].as_i64()), (Some(0), Some(1), Some(-1)));
    let out = qgrass(&["filtcheck", reps, "B", "S1", "S0"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qgrass(&["filtcheck", reps, "B", "S0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(check(&records(&out), "filtered")["result"]["outcome"], "no");
    let out = qgrass(&["semicont", data("pencil.json").to_str().unwrap(), "M0", "M1", "X"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = qgrass(&["semicont", data("pencil.json").to_str().unwrap(), "M0", "M1", "X", "--samples", "1,1,2"]);
    assert_eq!(out.status.code(), Some(9));
}

#[test]
fn scalar_multiple_guard() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_instance(
        dir.path(),
        "field = \"Fp:5\"\nn = 2\nequations = [\"T0*T2 - T1^2\"]\ninequations = [\"3*T0*T2 - 3*T1^2\"]\n",
    );
    let out = qgrass(&["verify-quasi", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(7));
    let err = stderr(&out);
    assert!(err.contains("scalar multiple of equation 0"), "{err}");
    assert!(err.contains("no h_j may be a scalar multiple of any f_i"), "{err}");
}

#[test]
fn malformed_polynomial_reports_its_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_instance(dir.path(), "field = \"Q\"\nn = 2\nequations = [\"T0*T2 - T1^\"]\ninequations = [\"T0\"]\n");
    let out = qgrass(&["encode", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
    assert!(stderr(&out).contains("at byte 11"), "{}", stderr(&out));
}

#[test]
fn distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let conic = data("conic-f3.toml");
    let conic = conic.to_str().unwrap();
    assert_eq!(qgrass(&["encode", "/nonexistent.toml"]).status.code(), Some(3));
    let p = write_instance(dir.path(), "field = \"Fp:3\"\nn = 2\n");
    assert_eq!(qgrass(&["encode", p.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(qgrass(&["encode", conic, "--field", "Fp:9"]).status.code(), Some(2));
    let p = write_instance(dir.path(), "field = \"Fp:3\"\nn = 2\nequations = [\"T0*T2 - T1^2\"]\n");
    let out = qgrass(&["verify-quasi", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(8));
    assert_eq!(qgrass(&["verify-quasi", p.to_str().unwrap(), "--projective"]).status.code(), Some(0));
    assert_eq!(qgrass(&["verify-bijection", conic, "--field", "Q"]).status.code(), Some(9));
    assert_eq!(qgrass(&["verify-bijection", conic, "--cap", "2"]).status.code(), Some(10));
    assert_eq!(qgrass(&["grass", conic, "--pred", "left:W"]).status.code(), Some(4));
    assert_eq!(qgrass(&["extension-sample", conic, "--dims", "1,0,0", "--retries", "1", "--pred", "perp:W"]).status.code(), Some(11));
}

#[test]
fn projective_instance_file() {
    let out = qgrass(&["verify-quasi", data("conic-projective.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["args"]["instance"]["projective_fill"], true);
    assert_eq!(check(&recs, "quasi-projective")["result"]["open_count"], 6);
}

#[test]
fn perp_from_a_representation_file() {
    let dir = tempfile::tempdir().unwrap();
    let reps = dir.path().join("w.json");
    std::fs::write(
        &reps,
        r#"{"quiver": "instance", "representations": {"Z": {"dims": [0, 0, 0], "maps": [[], [], [], []]}}}"#,
    )
    .unwrap();
    let pred = format!("perp:{}#Z", reps.display());
    let out = qgrass(&["grass", data("conic-f3.toml").to_str().unwrap(), "--pred", &pred]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let count = records(&out).into_iter().find(|r| r["kind"] == "count").unwrap();
    assert_eq!(count["value"]["count"], 4);
}
