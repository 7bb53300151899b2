use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bigalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigalg"))
        .args(args)
        .env_remove("BIGALG_CACHE")
        .output()
        .expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn pairs(v: &Value) -> Vec<(i64, i64)> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn qanalogue_of_the_octet_zero_weight() {
    let out = bigalg(&["qanalogue", "--n", "3", "--mu", "1,1", "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(pairs(&v["m"]), vec![(1, 1), (2, 1)]);
    assert_eq!(v["config"]["command"], "qanalogue");
    assert_eq!(v["config"]["seed"], 0);
}

#[test]
fn hilbert_of_the_decuplet() {
    let v = json(&bigalg(&["hilbert", "--n", "3", "--mu", "3,0"]));
    assert_eq!(v["pass"], true);
    // (1 - q^4)/(1 - q^2) * (1 - q^5)/(1 - q)
    let a = [1i64, 0, 1];
    let b = [1i64, 1, 1, 1, 1];
    let mut expect = vec![0i64; 7];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            expect[i + j] += x * y;
        }
    }
    let expect: Vec<(i64, i64)> = expect
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as i64, c))
        .collect();
    assert_eq!(pairs(&v["report"]["fiber"]["numerator"]), expect);
    assert_eq!(pairs(&v["report"]["closed_form"]), expect);
}

#[test]
fn exit_codes() {
    assert_eq!(bigalg(&["--bogus"]).status.code(), Some(2));
    assert_eq!(
        bigalg(&["rep", "--n", "3", "--mu", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["rep", "--n", "3", "--mu", "-1,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["qanalogue", "--n", "3", "--mu", "1,1", "--lambda", "1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["spectrum", "--n", "2", "--mu", "2", "--grid", "0:1:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["spectrum", "--n", "2", "--mu", "2", "--grid", "2:1:2", "--out", "x.csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["twining", "--n", "2", "--mu", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bigalg(&["verify-all", "--criteria", "13"]).status.code(),
        Some(2)
    );
    assert_eq!(bigalg(&["--help"]).status.code(), Some(0));
    let ok = bigalg(&["verify-all", "--criteria", "2,10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["pass"], true);
    let bad = bigalg(&["verify-all", "--criteria", "4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["criteria"][0]["pass"], false);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let out = bigalg(&[
            "spectrum",
            "--n",
            "3",
            "--mu",
            "1,0",
            "--grid",
            "-3:0:6",
            "--out",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let rel = bigalg(&["relations", "--n", "3", "--mu", "2,0", "--seed", "5"]);
        (std::fs::read(&csv).unwrap(), rel.stdout)
    };
    let (a_csv, a_rel) = run("a");
    let (b_csv, b_rel) = run("b");
    assert_eq!(a_csv, b_csv);
    assert_eq!(a_rel, b_rel);
    assert!(String::from_utf8(a_csv)
        .unwrap()
        .starts_with("param,generator,branch,value\n"));
}

#[test]
fn relation_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = bigalg(&[
        "relations",
        "--n",
        "3",
        "--mu",
        "3,0",
        "--generators",
        "M1,M2",
        "--max-degree",
        "6",
    ]);
    let v = json(&out);
    let file = dir.path().join("rels.json");
    std::fs::write(&file, serde_json::to_string(&v["relations"]).unwrap()).unwrap();
    let check = bigalg(&[
        "relations",
        "--n",
        "3",
        "--mu",
        "3,0",
        "--generators",
        "M1,M2",
        "--max-degree",
        "6",
        "--verify",
        file.to_str().unwrap(),
    ]);
    assert_eq!(json(&check)["verification"]["pass"], true);
    std::fs::write(&file, "{not json").unwrap();
    let bad = bigalg(&[
        "relations",
        "--n",
        "3",
        "--mu",
        "3,0",
        "--verify",
        file.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cache_environment_overrides_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bigalg"))
        .args([
            "rep",
            "--n",
            "3",
            "--mu",
            "1,1",
            "--cache",
            flag_dir.path().to_str().unwrap(),
        ])
        .env("BIGALG_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let count = |p: &Path| std::fs::read_dir(p).unwrap().count();
    assert_eq!(count(env_dir.path()), 1);
    assert_eq!(count(flag_dir.path()), 0);
    let v = json(&out);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["bracket_fidelity"], true);
}

#[test]
fn json_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    let out = bigalg(&[
        "multalg",
        "--n",
        "3",
        "--mu",
        "1,1",
        "--lambda",
        "0,0",
        "--json",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["algebra_dim"], 2);
    assert_eq!(pairs(&v["hilbert"]), vec![(1, 1), (2, 1)]);
}
