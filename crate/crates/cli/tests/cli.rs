use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn modknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modknot"))
        .args(args)
        .env_remove("MODKNOT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn stderr_json(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().next().expect("an error line")).unwrap()
}

#[test]
fn lk_all_methods() {
    let o = modknot(&["lk", "RLL", "RRL", "--method", "all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"shift\":1,\"slp\":1,\"oracle\":1}\n");
    let o = modknot(&["lk", "RLL", "RLL"]);
    assert_eq!(stdout(&o), "{\"lk\":2}\n");
    let o = modknot(&["lk", "RLL", "RLL", "--method", "shift"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "not_coprime");
}

#[test]
fn reduce_matrix() {
    let o = modknot(&["reduce", "--matrix", "3,-1,1,0"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["class"], "RL");
    let o = modknot(&["reduce", "--matrix", "-1,0,0,-1"]);
    assert_eq!(json_lines(&o)[0]["class"], "id");
}

#[test]
fn scalar_commands() {
    assert_eq!(
        json_lines(&modknot(&["intersection", "RLL", "RLL"]))[0]["intersection"],
        6
    );
    assert_eq!(json_lines(&modknot(&["rad", "LLR"]))[0]["rad"], -1);
    assert_eq!(json_lines(&modknot(&["cosa", "R", "RRL"]))[0]["cos_a"], 1);
    let a = json_lines(&modknot(&["alexander", "RL", "--check"]));
    assert_eq!(a[0]["alexander"], "1");
    assert_eq!(a[0]["check"], true);
    let f = json_lines(&modknot(&["fricke", "RL"]));
    assert_eq!(f[0]["coeffs"], "1:2 1:0 1:-2");
    assert_eq!(f[0]["trace_at_1"], "3");
}

#[test]
fn parse_errors_exit_two_with_error_objects() {
    for args in [
        &["lk", "RLX", "RL"][..],
        &["reduce", "--matrix", "1,2,3"],
        &["frobnicate"],
        &["corpus", "--max-len", "13"],
        &["selfcheck", "--tolerance", "0"],
        &["lk", "RL", "RLL", "--method", "bogus"],
        &["linkq", "RL", "RLL", "--q", "x"],
    ] {
        let o = modknot(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr_json(&o);
        assert!(err["error"].is_string() && err["message"].is_string(), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn selfcheck_passes() {
    let o = modknot(&["selfcheck", "--max-len", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["suite"], "summary");
    assert_eq!(summary["status"], "pass");
    assert!(lines.len() > 5);
}

#[test]
fn corpus_output_is_independent_of_thread_count() {
    let one = modknot(&["corpus", "--max-len", "5", "--emit", "pairs", "--threads", "1"]);
    let four = modknot(&["corpus", "--max-len", "5", "--emit", "pairs", "--threads", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let from_env = Command::new(env!("CARGO_BIN_EXE_modknot"))
        .args(["corpus", "--max-len", "5", "--emit", "pairs"])
        .env("MODKNOT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, from_env.stdout);
    let lines = json_lines(&one);
    assert_eq!(lines.len(), 12 * 12);
    assert_eq!(lines[0]["a"], "RL");
}

#[test]
fn corpus_csv_table() {
    let o = modknot(&["corpus", "--max-len", "3", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "class,len,rad,trace,symmetric\nRL,2,0,3,true\nRLL,3,-1,4,false\nRRL,3,1,4,false\n"
    );
}

#[test]
fn linkq_values_and_symbolic_form() {
    let at = json_lines(&modknot(&["linkq", "RLL", "RRL", "--q", "1"]));
    let lk = at[0]["link_re"].as_f64().unwrap();
    let sym = json_lines(&modknot(&["linkq", "RLL", "RRL", "--symbolic"]));
    assert_eq!(sym[0]["crossings"], 6);
    assert!(lk.is_finite());
    let neg = modknot(&["linkq", "RLL", "RRL", "--q", "-2,0.5"]);
    assert!(neg.status.success());
    assert_eq!(json_lines(&neg)[0]["q_im"], 0.5);
}

#[test]
fn grid_writes_a_deterministic_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.ppm");
    let p = path.to_str().unwrap();
    let args = ["linkq", "RRL", "RRRLL", "--grid", "0,0,2,40", "--out", p];
    let o = modknot(&args);
    assert!(o.status.success());
    let first = fs::read(&path).unwrap();
    let header = b"P6\n40 40\n255\n";
    assert_eq!(&first[..header.len()], header);
    assert_eq!(first.len(), header.len() + 3 * 40 * 40);
    assert!(modknot(&args).status.success());
    assert_eq!(fs::read(&path).unwrap(), first);
    let info = json_lines(&o);
    assert_eq!(info[0]["width"], 40);

    let csv = dir.path().join("plot.csv");
    let o = modknot(&[
        "linkq",
        "RRL",
        "RRRLL",
        "--grid",
        "0,0,2,16",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 16 * 16);
    assert!(text.starts_with("q_re,q_im,val_re,val_im\n"));
}

#[test]
fn roots_go_to_stdout_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.csv");
    let o = modknot(&["linkq", "RRL", "RRRLL", "--roots", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let lines = json_lines(&o);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), lines.len() + 1);
    assert!(lines.iter().any(|r| r["kind"] == "zero"));
    assert!(lines.iter().any(|r| r["kind"] == "pole"));
    let o = modknot(&["linkq", "RL", "RLL", "--roots"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "numerator_zero");
}

#[test]
fn qm_defect_and_decompose() {
    let d = json_lines(&modknot(&[
        "qm",
        "--defect",
        "mas:RRL",
        "--samples",
        "300",
        "--max-len",
        "10",
        "--seed",
        "3",
    ]));
    assert!(d[0]["max_defect"].as_i64().unwrap() <= 6);
    let again = json_lines(&modknot(&[
        "qm",
        "--defect",
        "mas:RRL",
        "--samples",
        "300",
        "--max-len",
        "10",
        "--seed",
        "3",
    ]));
    assert_eq!(d, again);

    let dir = tempfile::tempdir().unwrap();
    let values = dir.path().join("rad.csv");
    fs::write(&values, "class,value\nR,1\nRRL,1\nRRRL,2\n").unwrap();
    let v = values.to_str().unwrap();
    let o = modknot(&[
        "qm",
        "--decompose",
        "4",
        "--basis",
        "cos",
        "--values",
        v,
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "class,coeff\nR,1/1\nRRL,0/1\nRRRL,0/1\n");

    fs::write(&values, "R,1\nRRL,1/2\nRRRL,2\nRRLRL,1\nRRRLL,1\nRRRRL,3\n").unwrap();
    let o = modknot(&["qm", "--decompose", "5", "--basis", "mas", "--values", v]);
    assert!(o.status.success());
    let o = modknot(&["qm", "--decompose", "5", "--basis", "cos", "--values", v]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "singular");
    let o = modknot(&["qm", "--decompose", "4", "--basis", "cos", "--values", v]);
    assert_eq!(o.status.code(), Some(2));
}
