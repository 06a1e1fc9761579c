use std::process::{Command, Output};

fn descartes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descartes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn inspect_examples() {
    let o = descartes(&["inspect", "x^3+1/2x^2-11/2x-5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["blocks"], "S2,2");
    assert_eq!(v["order"], "NNP");
    assert_eq!(v["code"], "(2,0)");
    assert_eq!(v["hyperbolic"], true);

    let o = descartes(&["inspect", "x^2+1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["hyperbolic"], false);
    assert!(v["diagnostics"].to_string().contains("NotHyperbolic"));

    let o = descartes(&["inspect", "x^3-7x-6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ZeroCoefficient"));
}

#[test]
fn inspect_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("p.txt");
    std::fs::write(&text, "x^2 - 3x + 2\n").unwrap();
    let v = json(&descartes(&["inspect", text.to_str().unwrap(), "--json"]));
    assert_eq!(v["order"], "PP");
    let arr = dir.path().join("p.json");
    std::fs::write(&arr, r#"["-6/1", "-5/1", "2/1", "1/1"]"#).unwrap();
    let v = json(&descartes(&["inspect", arr.to_str().unwrap(), "--json"]));
    assert_eq!(v["polynomial"], "x^3 + 2x^2 - 5x - 6");
}

#[test]
fn realize_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = descartes(&["realize", "S2,4,2 (2,1,2)", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "Realizable");
    assert_eq!(v["witness"]["verified"], true);
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["couple"]["code"], "(2,1,2)");

    let v = json(&descartes(&["realize", "S2,4,2 (3,1,1)", "--json"]));
    assert_eq!(v["status"], "NonRealizable");
    assert_eq!(v["rule"], "T2P2");
    assert!(v["witness"].is_null());

    let v = json(&descartes(&["realize", "S4,2,2 (1,1,3)", "--json"]));
    assert_eq!(v["status"], "Realizable");
    assert_eq!(v["couple"]["order"], "NPNPNNN");
}

#[test]
fn word_form_couples() {
    let v = json(&descartes(&["realize", "pattern=++----++ order=NPNNNNP", "--json"]));
    assert_eq!(v["couple"]["code"], "(1,4,0)");
    assert_eq!(v["status"], "Realizable");
}

#[test]
fn orbit_example() {
    let o = descartes(&["orbit", "S2,4,2 (1,0,4)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(stdout(&descartes(&["orbit", "S2,4,2 (1,0,4)"])).contains("4 couples"));
    let v = json(&descartes(&["orbit", "S2,4,2 (1,3,1)", "--json"]));
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn classify_table() {
    let o = descartes(&["classify", "S3,2,2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    assert!(lines[0].starts_with("pattern,order,u,v,w,status,rule,witness_file"));
    assert_eq!(text.matches(",Realizable,").count(), 11);
    assert_eq!(text.matches(",NonRealizable,").count(), 4);
}

#[test]
fn classify_writes_table_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.json");
    let wdir = dir.path().join("w");
    let o = descartes(&[
        "classify",
        "S2,4,2",
        "--format",
        "json",
        "--out",
        table.to_str().unwrap(),
        "--witness-dir",
        wdir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("9 Realizable"));
    assert_eq!(std::fs::read_dir(&wdir).unwrap().count(), 9);
    assert!(wdir.join("S2-4-2_2-1-2.json").is_file());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 21);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, args: &[&str]| {
        let path = dir.path().join(name);
        let mut a: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        a.extend(["--out", &p]);
        let o = descartes(&a);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(&path).unwrap()
    };
    for args in [
        &["classify", "S2,2,4", "--format", "json"][..],
        &["certify", "--id", "RHO_DOMAIN_D", "--trials", "300", "--seed", "5"][..],
        &["realize", "S3,2,2 (0,4,0)"][..],
    ] {
        assert_eq!(run("a", args), run("b", args), "{args:?}");
    }
    let a = descartes(&["classify", "S2,2,2", "--restarts", "4", "--iters", "200", "--format", "csv"]);
    let b = descartes(&["classify", "S2,2,2", "--restarts", "4", "--iters", "200", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn certify_reports() {
    let o = descartes(&["certify", "--id", "RHO_DOMAIN_D", "--trials", "200", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["kind"], "sampled");
    assert!(v["min_margin"].as_str().unwrap().contains('/'));

    let v = json(&descartes(&["certify", "--id", "B12_GAP", "--id", "P6_A", "--json"]));
    assert_eq!(v.as_array().unwrap().len(), 2);

    // a deliberately false constant makes the check fail
    let o = descartes(&[
        "certify", "--id", "NEWTON_PRODUCT", "--trials", "200", "--set", "h_star=3/1", "--set",
        "d_min=12/1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(descartes(&["inspect", "x^"]).status.code(), Some(4));
    assert_eq!(descartes(&["realize", "S2,4,2 (9,9,9)"]).status.code(), Some(4));
    assert_eq!(descartes(&["certify", "--id", "NOPE"]).status.code(), Some(4));
    assert_eq!(descartes(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(descartes(&["classify", "S8,3,3"]).status.code(), Some(4));
    assert_eq!(descartes(&["--help"]).status.code(), Some(0));
    // Σ_{2,2,2} has no construction beyond its canonical couple, and one
    // single-iteration restart cannot find this one
    let o = descartes(&["realize", "S2,2,2 (0,0,3)", "--restarts", "1", "--iters", "1", "--den-bound", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn bases_regenerate_the_committed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bases.json");
    let o = descartes(&["bases", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let committed = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/bases/degree6_sigma322.json");
    assert_eq!(std::fs::read(path).unwrap(), std::fs::read(committed).unwrap());
}
