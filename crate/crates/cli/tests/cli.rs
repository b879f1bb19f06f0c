use std::path::PathBuf;
use std::process::{Command, Output};

const TREFOIL: &str = "n=5; O=[0,1,2,3,4]; X=[2,3,4,0,1]";
const FIGURE_EIGHT: &str = "n=6; O=[0,2,1,4,3,5]; X=[4,5,3,2,0,1]";
const UNKNOT: &str = "n=2;O=[0,1];X=[1,0]";

fn gridfloer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridfloer")).args(args).env_remove("GRIDFLOER_MAX_N").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn hfk_of_the_unknot() {
    let o = gridfloer(&["hfk", "--grid", UNKNOT, "--format", "structured"]);
    let v = json(&o);
    assert_eq!(v["genus"], 0);
    assert_eq!(v["tau"], 0);
    assert_eq!(v["unknot"], true);
    assert_eq!(v["hfk_hat"], serde_json::json!([[0, 0, 1]]));
    let table = stdout(&gridfloer(&["hfk", "--grid", UNKNOT]));
    assert!(table.contains("unknot        yes"));
}

#[test]
fn hfk_of_the_trefoil_and_its_mirror() {
    let v = json(&gridfloer(&["hfk", "--grid", TREFOIL, "--format", "structured"]));
    assert_eq!(v["genus"], 1);
    assert_eq!(v["fibered"], true);
    assert_eq!(v["tau"], -1);
    assert_eq!(v["hfk_hat"], serde_json::json!([[0, -1, 1], [1, 0, 1], [2, 1, 1]]));
    let mirror = "n=5; O=[4,3,2,1,0]; X=[2,1,0,4,3]";
    let m = json(&gridfloer(&["hfk", "--grid", mirror, "--format", "structured"]));
    assert_eq!(m["tau"], 1);
    assert_eq!(m["hfk_hat"], serde_json::json!([[-2, -1, 1], [-1, 0, 1], [0, 1, 1]]));
}

#[test]
fn hfk_of_the_figure_eight() {
    let v = json(&gridfloer(&["hfk", "--grid", FIGURE_EIGHT, "--format", "structured"]));
    assert_eq!(v["hfk_hat"], serde_json::json!([[-1, -1, 1], [0, 0, 3], [1, 1, 1]]));
    assert_eq!(v["genus"], 1);
    assert_eq!(v["fibered"], true);
    assert_eq!(v["tau"], 0);
}

#[test]
fn oracle_polynomials() {
    for (grid, expected) in [(UNKNOT, "1"), (TREFOIL, "q^-1 - 1 + q"), (FIGURE_EIGHT, "-q^-1 + 3 - q")] {
        let v = json(&gridfloer(&["oracle", "--grid", grid, "--format", "structured"]));
        assert_eq!(v["alexander"], expected);
        assert_eq!(v["chain_euler_check"], true);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(gridfloer(&["hfk", "--grid", "n=3; O=[0,1]; X=[1,0]"]).status.code(), Some(2));
    assert_eq!(gridfloer(&["hfk", "--grid", "n=4;O=[0,1,2,3];X=[1,0,3,2]"]).status.code(), Some(2));
    let nine = "n=9;O=[0,1,2,3,4,5,6,7,8];X=[1,2,3,4,5,6,7,8,0]";
    assert_eq!(gridfloer(&["hfk", "--grid", nine]).status.code(), Some(3));
    let ten = "n=10;O=[0,1,2,3,4,5,6,7,8,9];X=[1,2,3,4,5,6,7,8,9,0]";
    assert_eq!(gridfloer(&["--allow-large", "hfk", "--grid", ten]).status.code(), Some(3));
    assert_eq!(gridfloer(&["--allow-large", "--max-n", "10", "hfk", "--grid", UNKNOT]).status.code(), Some(2));
    assert_eq!(gridfloer(&["--max-n", "9", "hfk", "--grid", UNKNOT]).status.code(), Some(2));
    assert_eq!(gridfloer(&["surgery", "--model", "trefoil-left", "--p", "0"]).status.code(), Some(2));
    assert_eq!(gridfloer(&["surgery", "--model", "trefoil-left", "--p", "1", "--smax", "1"]).status.code(), Some(2));
    assert_eq!(gridfloer(&["surgery", "--model", "nope", "--p", "1"]).status.code(), Some(2));
}

#[test]
fn cap_from_the_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_gridfloer")).args(["hfk", "--grid", TREFOIL]).env("GRIDFLOER_MAX_N", cap).output().unwrap()
    };
    assert_eq!(run("4").status.code(), Some(3));
    assert_eq!(run("5").status.code(), Some(0));
    assert_eq!(run("x").status.code(), Some(2));
}

#[test]
fn progress_stays_off_stdout() {
    let o = gridfloer(&["hfk", "--grid", TREFOIL, "--format", "structured"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("computing"));
    json(&o);
}

#[test]
fn structured_output_is_deterministic() {
    for args in [
        vec!["hfk", "--grid", FIGURE_EIGHT, "--format", "structured"],
        vec!["moves", "--grid", TREFOIL, "--count", "20", "--seed", "7", "--format", "structured"],
        vec!["surgery", "--model", "trefoil-left", "--p", "3", "--format", "structured"],
    ] {
        let a = gridfloer(&args);
        let mut sequential = vec!["--jobs", "1"];
        sequential.extend(&args);
        let b = gridfloer(&sequential);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, gridfloer(&args).stdout);
    }
}

#[test]
fn moves_and_invariance() {
    let v = json(&gridfloer(&["moves", "--grid", TREFOIL, "--count", "15", "--seed", "3", "--format", "structured"]));
    assert_eq!(v["moves"].as_array().unwrap().len(), 15);
    assert!(v["n"].as_u64().unwrap() <= 8);
    let simplified = json(&gridfloer(&["moves", "--grid", "n=3;O=[0,1,2];X=[1,2,0]", "--simplify", "2", "--format", "structured"]));
    assert_eq!(simplified["n"], 2);
    let pass = json(&gridfloer(&["invariance", "--grid", TREFOIL, "--moves", "50", "--seed", "1", "--max-n", "7", "--format", "structured"]));
    assert_eq!(pass["pass"], true);
    let unknot = gridfloer(&["invariance", "--grid", UNKNOT, "--moves", "100", "--seed", "2", "--max-n", "6"]);
    assert!(stdout(&unknot).starts_with("pass"));
    let broken = gridfloer(&["invariance", "--grid", TREFOIL, "--moves", "5", "--corrupt"]);
    assert_eq!(broken.status.code(), Some(4));
    assert!(stdout(&broken).starts_with("FAIL"));
}

#[test]
fn surgery_examples() {
    let shape = |args: &[&str]| -> Vec<(u64, u64)> {
        let mut full = vec!["surgery", "--format", "structured"];
        full.extend(args);
        let v = json(&gridfloer(&full));
        v["classes"].as_array().unwrap().iter().map(|c| (c["plus"]["towers"].as_u64().unwrap(), c["plus"]["finite_rank"].as_u64().unwrap())).collect()
    };
    assert_eq!(shape(&["--model", "trefoil-left", "--p", "1"]), vec![(1, 1)]);
    assert_eq!(shape(&["--model", "trefoil-left", "--p", "-1"]), vec![(1, 0)]);
    assert_eq!(shape(&["--model", "unknot", "--p", "5"]), vec![(1, 0); 5]);
    assert_eq!(shape(&["--staircase", "q^-1 - 1 + q", "--p", "-1"]), vec![(1, 1)]);
    let hat = json(&gridfloer(&["surgery", "--model", "trefoil-left", "--p", "1", "--flavor", "hat", "--format", "structured"]));
    assert_eq!(hat["classes"][0]["hat_rank"], 3);
    assert!(hat["classes"][0]["plus"].is_null());
}

#[test]
fn model_check_reports_every_violation() {
    let good = r#"{"generators":[{"id":"a","M":2,"A":1},{"id":"b","M":1,"A":0},{"id":"c","M":0,"A":-1}],
        "arrows":[{"from":"a","to":"b","nw":0,"nz":1},{"from":"c","to":"b","nw":1,"nz":0}],"flip":[["a","c"],["b","b"]]}"#;
    let path = scratch("trefoil-model.json", good);
    let v = json(&gridfloer(&["model-check", "--model-file", path.to_str().unwrap(), "--format", "structured"]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["hat"], serde_json::json!([[0, -1, 1], [1, 0, 1], [2, 1, 1]]));
    let bad = good.replace(r#""nw":0,"nz":1"#, r#""nw":1,"nz":1"#);
    let path = scratch("bad-model.json", &bad);
    let o = gridfloer(&["model-check", "--model-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("Maslov") && err.contains("Alexander") && err.contains("flip"), "{err}");
    let v = json(&gridfloer(&["model-check", "--staircase", "q^-1 - 1 + q", "--format", "structured"]));
    assert_eq!(v["hat"], serde_json::json!([[-2, -1, 1], [-1, 0, 1], [0, 1, 1]]));
}

#[test]
fn validate_and_info() {
    let v = json(&gridfloer(&["validate", "--grid", "n=4;O=[0,1,2,3];X=[1,0,3,2]", "--format", "structured"]));
    assert_eq!(v["components"], 2);
    let path = scratch("trefoil.grid", "# left trefoil\nn=5; O=[0,1,2,3,4]; X=[2,3,4,0,1]\n");
    let v = json(&gridfloer(&["info", "--file", path.to_str().unwrap(), "--format", "structured"]));
    assert_eq!(v["crossings"], 3);
    assert_eq!(v["generators"], 120);
    assert_eq!(v["alexander"], "q^-1 - 1 + q");
    assert_eq!(gridfloer(&["validate", "--grid", "n=2;O=[0,1];X=[0,1]"]).status.code(), Some(2));
}
