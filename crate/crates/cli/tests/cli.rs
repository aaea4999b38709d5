use std::process::{Command, Output};

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(ringlab(&["classify", "Z2"]).status.code(), Some(0));
    assert_eq!(ringlab(&["classify", "M(2,Q4)"]).status.code(), Some(1));
    assert_eq!(ringlab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ringlab(&["classify", "M(2,Z4)", "--max-size", "100"]).status.code(), Some(2));
    assert_eq!(ringlab(&["witness", "Z4", "--element", "2", "--property", "nope"]).status.code(), Some(1));
    assert_eq!(ringlab(&["endo-idempotent", "--matrix", "1,0;0,1", "--mod", "4"]).status.code(), Some(1));
}

#[test]
fn classify_json_schema() {
    let o = ringlab(&["classify", "Z2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ring"], "Z2");
    assert_eq!(v["size"], 2);
    assert_eq!(v["properties"]["drnc"]["verdict"], "holds");
    assert_eq!(v["drnc_index"], 1);
    assert!(v["caveats"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn witness_then_verify() {
    let dir = std::env::temp_dir().join(format!("ringlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let o = ringlab(&["witness", "M(2,Z2)", "--element", "[0,1;0,0]", "--property", "drnc"]);
    assert!(o.status.success());
    let good = dir.join("good.json");
    std::fs::write(&good, &o.stdout).unwrap();
    let v = ringlab(&["verify", good.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));

    let tampered = stdout(&o).replace("\"k\": 2", "\"k\": 1");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, tampered).unwrap();
    let v = ringlab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(3));
    assert!(stdout(&v).contains("FAIL"));

    let report = ringlab(&["classify", "prod(Z2,Z3)", "--json"]);
    let path = dir.join("report.json");
    std::fs::write(&path, &report.stdout).unwrap();
    assert_eq!(ringlab(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_and_endo_output() {
    let o = ringlab(&["scan", "--family", "M(n,Z2)", "--range", "n=1..2", "--property", "drnc"]);
    let text = stdout(&o);
    assert!(text.contains("M(1,Z2)") && text.contains("2 of 2 instances"));

    let o = ringlab(&["scan", "--family", "Zm", "--range", "m=2..4", "--property", "regular", "--mode", "fails", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let matches: Vec<bool> = v.as_array().unwrap().iter().map(|e| e["matches"].as_bool().unwrap()).collect();
    assert_eq!(matches, [false, false, true]);

    let o = ringlab(&["endo-idempotent", "--matrix", "0,1;0,0", "--mod", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e"], "[0,0;0,0]");
    assert_eq!(v["index"], 2);

    let o = ringlab(&["endo-idempotent", "--matrix", "2,0;0,2", "--mod", "2", "--lift", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e_prime"], "[0,0;0,0]");
    assert_eq!(v["index"], 2);
}
