use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodsets"))
        .args(args)
        .env_remove("PERIODSETS_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn enum_prints_kappa_and_dying() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enum", "--to", "12", "--out", path_str(dir.path())]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let kappa: Vec<&str> = text.lines().take(5).map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(kappa, ["kappa=1", "kappa=2", "kappa=3", "kappa=4", "kappa=6"]);
    let dying: Vec<&str> = text.lines().map(|l| l.rsplit('=').next().unwrap()).collect();
    assert_eq!(dying, ["0", "0", "0", "0", "0", "1", "1", "2", "1", "3", "2", "8"]);
    assert!(dir.path().join("12.gamma").is_file());
}

#[test]
fn certifier_choice_does_not_change_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(&["enum", "--to", "10", "--out", path_str(a.path()), "--certifier", "constructive"]);
    run(&["enum", "--to", "10", "--out", path_str(b.path()), "--certifier", "rules"]);
    for n in 1..=10 {
        let f = format!("{n}.gamma");
        assert_eq!(fs::read(a.path().join(&f)).unwrap(), fs::read(b.path().join(&f)).unwrap());
    }
}

#[test]
fn jobs_from_environment_and_flag_agree() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let env = Command::new(env!("CARGO_BIN_EXE_periodsets"))
        .args(["enum", "--to", "14", "--out", path_str(a.path())])
        .env("PERIODSETS_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&env), 0);
    run(&["enum", "--to", "14", "--out", path_str(b.path()), "--jobs", "1"]);
    assert_eq!(fs::read(a.path().join("14.gamma")).unwrap(), fs::read(b.path().join("14.gamma")).unwrap());
}

#[test]
fn resume_and_corrupt_resume() {
    let dir = tempfile::tempdir().unwrap();
    let d = path_str(dir.path());
    run(&["enum", "--to", "6", "--out", d]);
    let out = run(&["enum", "--to", "8", "--out", d, "--from-dir", d]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n=7 kappa=10 dying=1\nn=8 kappa=13 dying=2\n");

    fs::write(dir.path().join("8.gamma"), "# gamma v1\nn=8\ncount=1\n0,x\n").unwrap();
    let out = run(&["enum", "--to", "9", "--out", d, "--from-dir", d]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("8.gamma"));
}

#[test]
fn certify_verdicts_and_exit_codes() {
    let out = run(&["certify", "--n", "7", "--set", "0,4,6"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "VALID"));
    let out = run(&["certify", "--n", "8", "--set", "0,4,6"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("INVALID bpr"), "{}", stdout(&out));
    let out = run(&["certify", "--n", "8", "--set", "0,5,7"]);
    assert_eq!(stdout(&out).trim(), "VALID");
    for method in ["lothaire", "constructive"] {
        let out = run(&["certify", "--n", "8", "--set", "0,4,6", "--method", method]);
        assert_eq!(code(&out), 1, "{method}");
    }
}

#[test]
fn set_literals_are_normalized_with_a_warning() {
    let out = run(&["certify", "--n", "7", "--set", "6,0,4"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("warning"));
    let out = run(&["certify", "--n", "7", "--set", "0,4,6"]);
    assert!(stderr(&out).is_empty());
}

#[test]
fn usage_and_format_errors_exit_2() {
    assert_eq!(code(&run(&["certify", "--n", "7", "--set", "1,4"])), 2);
    assert_eq!(code(&run(&["certify", "--n", "7", "--set", "0,9"])), 2);
    assert_eq!(code(&run(&["certify", "--n", "7", "--set", "0,a"])), 2);
    assert_eq!(code(&run(&["certify", "--n", "7"])), 2);
    assert_eq!(code(&run(&["enum", "--to", "3", "--out", "/proc/nope"])), 2);
    assert_eq!(code(&run(&["oracle", "--n", "29"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
}

#[test]
fn realize_outputs() {
    let out = run(&["realize", "--n", "9", "--set", "0,3,6,8"]);
    assert_eq!((code(&out), stdout(&out)), (0, "abaabaaba\n".into()));
    let out = run(&["realize", "--n", "10", "--set", "0,3,6,8"]);
    assert_eq!((code(&out), stdout(&out)), (1, "EPSILON\n".into()));
    let out = run(&["realize", "--n", "6", "--set", "0"]);
    assert_eq!(stdout(&out), "abbbbb\n");
    let out = run(&["realize", "--n", "6", "--set", "0", "--multi"]);
    assert_eq!(stdout(&out), "abcdef\n");

    let out = run(&["realize", "--n", "10", "--set", "0,3,6,8", "--trace"]);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].contains(" ab ") && lines[2].contains(" abab "));
    assert!(lines[3].contains("false"));
}

#[test]
fn fate_outputs() {
    let out = run(&["fate", "--set", "0,4,6", "--at", "8"]);
    assert_eq!(stdout(&out), "birth=7 e=8 rfw=8 dies_at=8\nn=8 fate=dies\n");
    let out = run(&["fate", "--set", "0,2,4,6"]);
    assert_eq!(stdout(&out), "birth=7 e=8 rfw=inf dies_at=inf\n");
    let out = run(&["fate", "--set", "0"]);
    assert_eq!(stdout(&out), "birth=1 e=inf rfw=inf dies_at=inf\n");
    let out = run(&["fate", "--set", "0,3,6", "--at", "8"]);
    assert!(stdout(&out).ends_with("n=8 fate=both\n"));
}

#[test]
fn fate_annotation_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    run(&["enum", "--to", "7", "--out", path_str(dir.path())]);
    let csv = dir.path().join("fate.csv");
    let out = run(&["fate", "--in", path_str(&dir.path().join("7.gamma")), "--csv", path_str(&csv)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("\"0,4,6\",7,8,8,7,8\n"));
}

#[test]
fn stats_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    run(&["enum", "--to", "3", "--out", path_str(dir.path())]);
    let input = dir.path().join("3.gamma");
    let out = run(&["stats", "--in", path_str(&input), "--by", "weight"]);
    assert_eq!(stdout(&out), "weight,count\n1,1\n2,1\n3,1\n");

    let csv = dir.path().join("bp.csv");
    let svg = dir.path().join("bp.svg");
    let out = run(&["stats", "--in", path_str(&input), "--by", "basic-period", "--csv", path_str(&csv), "--plot", path_str(&svg)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(csv).unwrap(), "basic_period,count\n1,1\n2,1\n3,1\n");
    assert!(fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn oracle_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = path_str(dir.path());
    run(&["enum", "--to", "12", "--out", d]);
    let from_oracle = dir.path().join("oracle12.gamma");
    assert_eq!(code(&run(&["oracle", "--n", "12", "--out", path_str(&from_oracle)])), 0);
    assert_eq!(fs::read(&from_oracle).unwrap(), fs::read(dir.path().join("12.gamma")).unwrap());

    let twelve = dir.path().join("12.gamma");
    let out = run(&["verify", "--n", "12", "--in", path_str(&twelve), "--mode", "oracle"]);
    assert_eq!((code(&out), stdout(&out)), (0, "VERIFY PASS n=12 checked=30\n".into()));
    let out = run(&["verify", "--n", "12", "--in", path_str(&twelve), "--mode", "witness"]);
    assert_eq!(code(&out), 0);

    let text = fs::read_to_string(&twelve).unwrap().replace("count=30\n", "count=31\n0,4,6,11\n");
    let bad = dir.path().join("bad.gamma");
    fs::write(&bad, text).unwrap();
    let out = run(&["verify", "--n", "12", "--in", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("0,4,6,11"));
    assert!(stdout(&out).ends_with("VERIFY FAIL n=12 checked=31\n"));

    let text = fs::read_to_string(&twelve).unwrap().replace("\n0,11\n", "\n11,0\n");
    fs::write(&bad, text).unwrap();
    assert_eq!(code(&run(&["verify", "--n", "12", "--in", path_str(&bad)])), 2);

    let out = run(&["oracle", "--n", "3", "--population"]);
    assert_eq!(stdout(&out), "set,words\n\"0\",4\n\"0,2\",2\n\"0,1,2\",2\n");
}

#[test]
fn verify_finds_the_previous_file_itself() {
    let dir = tempfile::tempdir().unwrap();
    run(&["enum", "--to", "9", "--out", path_str(dir.path())]);
    // drop a parent from Γ8 so the projection check has something to find
    let eight = dir.path().join("8.gamma");
    let text = fs::read_to_string(&eight).unwrap().replace("count=13", "count=12").replace("\n0,5,7\n", "\n");
    fs::write(&eight, text).unwrap();
    let nine = dir.path().join("9.gamma");
    let out = run(&["verify", "--n", "9", "--in", path_str(&nine), "--mode", "witness"]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("projection 0,5,7"));
}

#[test]
fn tree_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let out = run(&["tree", "--to", "8", "--dot", path_str(&dot)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "layers=8 sizes=1,2,3,4,6,8,10,13\ndead_ends=4\n");
    let text = fs::read_to_string(dot).unwrap();
    assert_eq!(text.matches("subgraph cluster_").count(), 8);
    assert_eq!(text.matches("peripheries=2").count(), 4);
    assert_eq!(text.matches(" -> ").count(), 1 + 2 + 3 + 4 + 6 + 8 + 10 + 13 - 1);
}
