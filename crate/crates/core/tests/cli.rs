use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use treelabel::toy::toy_corpus;

fn testdata(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treelabel"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fixture.lab");
    let fixture = testdata("fixture.mrg");
    let o = run(&["encode", path_str(&fixture), "-o", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        fs::read_to_string(testdata("fixture.rel-root.lab")).unwrap()
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("fixture.lab.psi")).unwrap(),
        fs::read_to_string(testdata("fixture.rel-root.lab.psi")).unwrap()
    );

    let o = run(&["encode", path_str(&fixture), "--scale", "abs", "--unaries", "extended"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        fs::read_to_string(testdata("fixture.abs-extended.lab")).unwrap()
    );
}

#[test]
fn decode_golden_files() {
    let trees = fs::read_to_string(testdata("fixture.mrg")).unwrap();
    let o = run(&["decode", path_str(&testdata("fixture.rel-root.lab"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), trees);
    let o = run(&[
        "decode",
        path_str(&testdata("fixture.abs-extended.lab")),
        "--scale",
        "abs",
        "--unaries",
        "extended",
    ]);
    assert_eq!(stdout(&o), trees);

    let o = run(&["decode", path_str(&testdata("fuzz.lab")), "--scale", "rel"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    fs::write(&empty, "").unwrap();
    for cmd in ["encode", "decode"] {
        let o = run(&[cmd, path_str(&empty)]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "");
    }
}

#[test]
fn kary_needs_binary_trees() {
    let fixture = testdata("fixture.mrg");
    let o = run(&["encode", path_str(&fixture), "--scale", "kary"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not strictly 2-ary"), "{}", stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kary.lab");
    let o = run(&[
        "encode",
        path_str(&fixture),
        "--scale",
        "kary",
        "--binarize",
        "-o",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(fs::read_to_string(&out).unwrap().contains("NEG|"));
    let o = run(&["decode", path_str(&out), "--scale", "kary"]);
    assert_eq!(stdout(&o), fs::read_to_string(&fixture).unwrap());
}

#[test]
fn roundtrip_command() {
    let fixture = testdata("fixture.mrg");
    for scale in ["abs", "rel", "rel-root", "kary"] {
        for unaries in ["two-pass", "extended"] {
            let o = run(&["roundtrip", path_str(&fixture), "--scale", scale, "--unaries", unaries]);
            assert!(o.status.success(), "{scale} {unaries}: {}", stderr(&o));
        }
    }
    let o = run(&[
        "roundtrip",
        path_str(&fixture),
        "--labels",
        path_str(&testdata("fixture.rel-root.lab")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));

    // line 7 (`dog`) changed from ROOT|S to +1|S
    let golden = fs::read_to_string(testdata("fixture.rel-root.lab")).unwrap();
    let corrupted = golden.replacen("dog\tNN\tROOT|S", "dog\tNN\t+1|S", 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lab");
    fs::write(&bad, corrupted).unwrap();
    let o = run(&["roundtrip", path_str(&fixture), "--labels", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 7:"), "{}", stderr(&o));
}

#[test]
fn eval_command() {
    let fixture = testdata("fixture.mrg");
    let o = run(&["eval", path_str(&fixture), path_str(&fixture)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("P=1.0000 R=1.0000 F1=1.0000 ACC=1.0000 EXACT=1.0000"));

    let o = run(&[
        "eval",
        "--machine",
        path_str(&testdata("eval_gold.mrg")),
        path_str(&testdata("eval_pred.mrg")),
    ]);
    assert!(
        stdout(&o).starts_with("P=0.7000 R=0.7000 F1=0.7000 ACC="),
        "{}",
        stdout(&o)
    );
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&[
        "eval",
        "--machine",
        "--delete-labels",
        "",
        path_str(&testdata("eval_gold.mrg")),
        path_str(&testdata("eval_pred.mrg")),
    ]);
    assert!(stdout(&o).starts_with("P=0.6364 R=0.6364 F1=0.6364"), "{}", stdout(&o));

    let o = run(&["eval", path_str(&fixture), path_str(&testdata("eval_gold.mrg"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn errors_and_usage() {
    let o = run(&[
        "parse",
        "--model",
        "/nonexistent/model",
        path_str(&testdata("fixture.mrg")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read model"));
    assert_eq!(run(&["encode"]).status.code(), Some(2));
    assert_eq!(run(&["encode", "x", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["encode", "x", "--scale", "rel", "--k", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["encode", "/nonexistent/trees"]).status.code(), Some(1));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn train_parse_eval_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let (train, test) = toy_corpus(9, 300, 40);
    let lines = |trees: &[treelabel::Tree]| trees.iter().map(|t| format!("{t}\n")).collect::<String>();
    fs::write(p("train.mrg"), lines(&train)).unwrap();
    fs::write(p("test.mrg"), lines(&test)).unwrap();

    assert!(
        run(&["encode", path_str(&p("train.mrg")), "-o", path_str(&p("train.lab"))])
            .status
            .success()
    );
    assert!(
        run(&["encode", path_str(&p("test.mrg")), "-o", path_str(&p("test.lab"))])
            .status
            .success()
    );
    // word<TAB>pos input from the PSI companion file
    let tagged: String = fs::read_to_string(p("test.lab.psi"))
        .unwrap()
        .lines()
        .map(|l| l.split('\t').take(2).collect::<Vec<_>>().join("\t") + "\n")
        .collect();
    fs::write(p("test.tag"), tagged).unwrap();

    for run_id in ["a", "b"] {
        let o = run(&[
            "train",
            path_str(&p("train.lab")),
            "--pass",
            "phi",
            "--epochs",
            "5",
            "--model",
            path_str(&p(&format!("phi.{run_id}"))),
            "--psi-model",
            path_str(&p(&format!("psi.{run_id}"))),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(fs::read(p("phi.a")).unwrap(), fs::read(p("phi.b")).unwrap());
    assert_eq!(fs::read(p("psi.a")).unwrap(), fs::read(p("psi.b")).unwrap());

    // the PSI model can also be trained on its own from the companion file
    let o = run(&[
        "train",
        path_str(&p("train.lab.psi")),
        "--pass",
        "psi",
        "--epochs",
        "5",
        "--model",
        path_str(&p("psi.c")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(p("psi.a")).unwrap(), fs::read(p("psi.c")).unwrap());

    let parse = |out: &str| {
        let o = run(&[
            "parse",
            "--model",
            path_str(&p("psi.a")),
            "--model",
            path_str(&p("phi.a")),
            path_str(&p("test.tag")),
            "-o",
            path_str(&p(out)),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read_to_string(p(out)).unwrap()
    };
    let parsed = parse("pred.mrg");
    assert_eq!(parsed, parse("pred2.mrg"));
    assert_eq!(parsed.lines().count(), test.len());

    let o = run(&[
        "predict",
        "--model",
        path_str(&p("psi.a")),
        "--model",
        path_str(&p("phi.a")),
        path_str(&p("test.tag")),
    ]);
    assert!(o.status.success());
    let predicted = stdout(&o);
    assert_eq!(
        predicted.split("\n\n").filter(|b| !b.trim().is_empty()).count(),
        test.len()
    );

    let o = run(&["eval", "--machine", path_str(&p("test.mrg")), path_str(&p("pred.mrg"))]);
    let line = stdout(&o);
    let f1: f64 = line
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("F1="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(f1 > 0.8, "{line}");
}
